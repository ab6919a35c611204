//! Weighted directed graphs as finite models of a dynamical system.
//!
//! A [`TransitionGraph`] is the lifted picture of a subshift with a locally
//! constant potential: vertices are states, edges are transitions, the edge
//! weight is the potential evaluated on the transition. Invariant probability
//! measures of the shift correspond to invariant edge-measures, and the
//! ergodic average of the potential against a periodic-orbit measure is the
//! mean weight of the corresponding cycle.
//!
//! Edges are stored in a canonical order (sorted by source, then target, then
//! insertion index) fixed at construction, so every downstream computation is
//! deterministic and golden-file testable. Parallel edges are allowed; lifted
//! symbolic systems never produce them, hand-built graphs may.

use crate::error::{Error, Result};
use crate::weight::Weight;

/// A weighted directed edge. `source` and `target` index into `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<T> {
    pub source: usize,
    pub target: usize,
    pub weight: T,
}

/// Immutable weighted digraph with canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph<T> {
    vertex_count: usize,
    edges: Vec<Edge<T>>,
}

impl<T: Weight> TransitionGraph<T> {
    /// Builds a graph, validating vertex ids and fixing the canonical edge
    /// order. The input order only matters as a tie-break among parallel
    /// edges.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, T)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::DegenerateSystem("graph needs at least one vertex".into()));
        }
        for &(s, t, _) in &edges {
            for v in [s, t] {
                if v >= vertex_count {
                    return Err(Error::InvalidVertex { vertex: v, vertex_count });
                }
            }
        }
        let mut edges: Vec<Edge<T>> = edges
            .into_iter()
            .map(|(source, target, weight)| Edge { source, target, weight })
            .collect();
        // Stable sort: insertion order is the tie-break for parallel edges.
        edges.sort_by_key(|e| (e.source, e.target));
        Ok(Self { vertex_count, edges })
    }

    /// Internal constructor for edge lists already in canonical order
    /// (subgraph extraction preserves it). Keeps edge-id maps meaningful.
    pub(crate) fn from_canonical(vertex_count: usize, edges: Vec<Edge<T>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| (w[0].source, w[0].target) <= (w[1].source, w[1].target)));
        debug_assert!(edges.iter().all(|e| e.source < vertex_count && e.target < vertex_count));
        Self { vertex_count, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge<T> {
        &self.edges[id]
    }

    pub fn weights(&self) -> impl Iterator<Item = &T> {
        self.edges.iter().map(|e| &e.weight)
    }

    /// Same vertices and same (source, target) edge list; weights may differ.
    /// This is the precondition for treating two graphs as two weightings of
    /// one transition structure.
    pub fn same_structure<U: Weight>(&self, other: &TransitionGraph<U>) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(other.edges.iter())
                .all(|(a, b)| a.source == b.source && a.target == b.target)
    }

    /// Reweights the structure, edge by edge in canonical order.
    pub fn with_weights<U: Weight>(&self, weights: Vec<U>) -> Result<TransitionGraph<U>> {
        if weights.len() != self.edges.len() {
            return Err(Error::EdgeSetMismatch(format!(
                "{} weights for {} edges",
                weights.len(),
                self.edges.len()
            )));
        }
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(e, weight)| Edge { source: e.source, target: e.target, weight })
            .collect();
        Ok(TransitionGraph::from_canonical(self.vertex_count, edges))
    }

    /// Edge-wise combination `self + t * dir`, the lifted form of a perturbed
    /// potential.
    pub fn combine(&self, dir: &TransitionGraph<T>, t: &T) -> Result<TransitionGraph<T>> {
        if !self.same_structure(dir) {
            return Err(Error::EdgeSetMismatch("combine requires a common edge set".into()));
        }
        let weights = self
            .edges
            .iter()
            .zip(dir.edges.iter())
            .map(|(f, g)| f.weight.clone() + t.clone() * g.weight.clone())
            .collect();
        self.with_weights(weights)
    }

    /// Out-edges per vertex, as edge ids in canonical order.
    pub(crate) fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.source].push(id);
        }
        adj
    }

    /// Subgraph induced by `keep` (ascending vertex ids): all edges between
    /// kept vertices survive. Returns the subgraph, a new-to-old vertex map
    /// and a new-to-old edge-id map. Monotone relabelling preserves the
    /// canonical edge order.
    pub(crate) fn induced_subgraph(&self, keep: &[usize]) -> (TransitionGraph<T>, Vec<usize>, Vec<usize>) {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut old_to_new = vec![usize::MAX; self.vertex_count];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            let (s, t) = (old_to_new[e.source], old_to_new[e.target]);
            if s != usize::MAX && t != usize::MAX {
                edges.push(Edge { source: s, target: t, weight: e.weight.clone() });
                edge_map.push(id);
            }
        }
        (TransitionGraph::from_canonical(keep.len(), edges), keep.to_vec(), edge_map)
    }
}

/// A simple cycle, i.e. the support of a periodic-orbit measure.
///
/// Stored as a list of edge ids in traversal order, rotated so the sequence
/// is lexicographically least (edge ids within a simple cycle are distinct,
/// so this normal form is unique). The induced invariant measure puts mass
/// `1/len` on each edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleMeasure {
    edges: Vec<usize>,
}

impl CycleMeasure {
    /// Wraps an edge-id sequence, applying the canonical rotation. The caller
    /// asserts that consecutive edges are incident and no vertex repeats;
    /// [`cycle_mean`] re-validates against a concrete graph.
    pub fn new(mut edges: Vec<usize>) -> Self {
        assert!(!edges.is_empty(), "a cycle has at least one edge");
        let min_pos = edges
            .iter()
            .enumerate()
            .min_by_key(|(_, id)| **id)
            .map(|(pos, _)| pos)
            .unwrap();
        edges.rotate_left(min_pos);
        Self { edges }
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Checks the cycle against a graph: ids in range, consecutive edges
    /// incident, vertices pairwise distinct.
    pub fn validate<T: Weight>(&self, g: &TransitionGraph<T>) -> Result<()> {
        for &id in &self.edges {
            if id >= g.edge_count() {
                return Err(Error::EdgeMismatch(format!("edge id {id} out of range")));
            }
        }
        let mut seen = vec![false; g.vertex_count()];
        for pair in 0..self.edges.len() {
            let cur = g.edge(self.edges[pair]);
            let next = g.edge(self.edges[(pair + 1) % self.edges.len()]);
            if cur.target != next.source {
                return Err(Error::EdgeMismatch(format!(
                    "edges {} and {} are not incident",
                    self.edges[pair],
                    self.edges[(pair + 1) % self.edges.len()]
                )));
            }
            if seen[cur.source] {
                return Err(Error::EdgeMismatch(format!("vertex {} repeats", cur.source)));
            }
            seen[cur.source] = true;
        }
        Ok(())
    }

    /// Vertex sequence along the cycle (sources of the stored edges).
    pub fn vertices<T: Weight>(&self, g: &TransitionGraph<T>) -> Vec<usize> {
        self.edges.iter().map(|&id| g.edge(id).source).collect()
    }
}

/// The ergodic average of the weighting against the cycle's periodic-orbit
/// measure: total weight over length, exactly.
pub fn cycle_mean<T: Weight>(cycle: &CycleMeasure, g: &TransitionGraph<T>) -> Result<T> {
    cycle.validate(g)?;
    let total = cycle
        .edge_ids()
        .iter()
        .fold(T::zero(), |acc, &id| acc + g.edge(id).weight.clone());
    Ok(total / T::from_count(cycle.len()))
}

/// Result of restricting a graph to its recurrent part.
#[derive(Debug, Clone)]
pub struct PrunedGraph<T> {
    pub graph: TransitionGraph<T>,
    /// new vertex id -> original vertex id (ascending)
    pub vertex_map: Vec<usize>,
    /// new edge id -> original edge id
    pub edge_map: Vec<usize>,
}

/// Restricts to the vertices lying on at least one cycle (where all invariant
/// measures live) and the edges between them. Idempotent; errors with
/// [`Error::EmptyRecurrentPart`] on acyclic graphs.
pub fn prune_to_recurrent<T: Weight>(g: &TransitionGraph<T>) -> Result<PrunedGraph<T>> {
    let partition = crate::scc::strongly_connected_components(g);
    let mut cyclic = vec![false; g.vertex_count()];
    for component in &partition.components {
        if component.len() > 1 {
            for &v in component {
                cyclic[v] = true;
            }
        }
    }
    for e in g.edges() {
        if e.source == e.target {
            cyclic[e.source] = true;
        }
    }
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| cyclic[v]).collect();
    if keep.is_empty() {
        return Err(Error::EmptyRecurrentPart);
    }
    let (graph, vertex_map, edge_map) = g.induced_subgraph(&keep);
    Ok(PrunedGraph { graph, vertex_map, edge_map })
}
