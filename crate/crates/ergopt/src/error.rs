use thiserror::Error;

/// Crate-wide error type.
///
/// Variants map one-to-one onto the failure modes of the public operations;
/// the CLI additionally maps them onto its exit-code contract (usage/parse
/// errors exit 2, degenerate dynamical input exits 3).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The graph has no cycle, so it carries no invariant measure.
    #[error("graph has no cycle: the recurrent part is empty")]
    EmptyRecurrentPart,

    /// The simple-cycle oracle was asked to enumerate more cycles than its cap.
    #[error("simple-cycle enumeration exceeded cap of {cap} (found at least {found})")]
    CapExceeded { cap: usize, found: usize },

    /// A cycle refers to edges that do not exist in the graph, or is not
    /// actually a cycle of the graph.
    #[error("cycle does not match graph: {0}")]
    EdgeMismatch(String),

    /// Two weightings were expected to share one underlying edge set.
    #[error("edge sets differ: {0}")]
    EdgeSetMismatch(String),

    /// A vertex id lies outside `[0, vertex_count)`.
    #[error("edge endpoint {vertex} out of range for {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    /// An empty or reversed parameter interval was supplied.
    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    /// A curve was queried outside its domain.
    #[error("parameter {0} is outside the curve domain")]
    OutOfDomain(String),

    /// A potential does not assign values to exactly the admissible words.
    #[error("potential is not admissible for the system: {0}")]
    InadmissiblePotential(String),

    /// The transition structure admits no valid symbolic dynamics.
    #[error("degenerate system: {0}")]
    DegenerateSystem(String),

    /// A refinement target window smaller than the current window.
    #[error("invalid window: cannot refine window {from} to {to}")]
    InvalidWindow { from: usize, to: usize },

    /// A non-positive grid denominator was supplied to a sampling experiment.
    #[error("invalid sampling grid: {0}")]
    InvalidGrid(String),

    /// Malformed input document (rational syntax, schema, or reference).
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
