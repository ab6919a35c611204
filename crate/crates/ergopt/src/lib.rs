//! Exact ergodic optimisation over subshifts of finite type.
//!
//! The toolkit models a symbolic dynamical system with a locally constant
//! potential as a weighted directed graph and computes, with exact rational
//! arithmetic throughout:
//!
//! * the maximum ergodic average (maximum cycle mean) and a periodic-orbit
//!   certificate — [`maxmean`];
//! * the critical structure carrying all maximising measures (max-plus
//!   eigenvector, tight subgraph, recurrent critical graph), a uniqueness
//!   decision with certificate, and the interval of directional averages
//!   over maximising measures — [`critical`];
//! * the convex piecewise-linear map `t -> max ergodic average of f + t*g`
//!   with exact breakpoints, one-sided derivatives and differentiability
//!   classification — [`curve`];
//! * symbolic systems and potentials with window refinement and lifting to
//!   graphs — [`symbolic`];
//! * executable verification of the convexity/Lipschitz, difference-quotient
//!   sandwich, semicontinuity and derivative-interval laws, plus a seeded
//!   line-sampling experiment over a rational grid — [`experiments`].
//!
//! Core algorithms are generic over the scalar: any exact ordered field
//! implementing the [`weight::Weight`] bound works (arbitrary precision
//! [`Rational`] by default, `Rational64` for small inputs). Floating point
//! never enters a comparison; it appears only in human-readable rendering.

pub mod critical;
pub mod curve;
pub mod cycles;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod maxmean;
pub mod report;
pub mod scc;
pub mod symbolic;
pub mod weight;

/// Default exact scalar: arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Fixed-width exact scalar for small hand computations.
pub type Rational64 = num_rational::Rational64;

pub use error::{Error, Result};
