//! The critical structure: where the maximising measures live.
//!
//! For a weighting `f` with maximum cycle mean `lambda`, reweight every edge
//! to `w - lambda`; no cycle then has positive mean. A max-plus eigenvector
//! (subaction) is a vertex potential `v` with
//!
//! ```text
//! slack(i -> j) = v[i] + w(i,j) - lambda - v[j] <= 0       for every edge,
//! ```
//!
//! and the *tight* edges are those with zero slack. Every cycle of mean
//! `lambda` telescopes to zero slack, so it lies in the tight subgraph; every
//! cycle of the tight subgraph has mean exactly `lambda`. The recurrent part
//! of the tight subgraph — the *critical graph* — therefore carries exactly
//! the invariant measures attaining the maximum ergodic average.
//!
//! The maximising-measure set is the convex hull of the periodic-orbit
//! measures on critical cycles. It is a singleton iff the critical graph is
//! one simple cycle, and the set of directional averages
//! `{ mean of g against mu : mu maximising for f }` is the exact interval
//! between the minimum and maximum `g`-mean over critical cycles.

use crate::cycles::first_cycles;
use crate::error::{Error, Result};
use crate::graph::{prune_to_recurrent, CycleMeasure, TransitionGraph};
use crate::maxmean::max_cycle_mean_karp;
use crate::scc::strongly_connected_components;
use crate::weight::Weight;

/// Which vertex of the per-component witness cycle anchors the eigenvector.
///
/// The eigenvector is not unique; any anchor yields the same tight recurrent
/// graph. Exposing the choice lets tests assert exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaseVertexRule {
    /// Least vertex id on the witness cycle (the default).
    #[default]
    LeastOnWitness,
    /// Greatest vertex id on the witness cycle.
    GreatestOnWitness,
}

/// Maximum mean, eigenvector, tight subgraph and critical graph of a
/// weighting, with embeddings back into the ambient graph.
#[derive(Debug, Clone)]
pub struct CriticalStructure<T> {
    ambient: TransitionGraph<T>,
    lambda: T,
    pruned: TransitionGraph<T>,
    pruned_vertex_to_ambient: Vec<usize>,
    pruned_edge_to_ambient: Vec<usize>,
    eigenvector: Vec<T>,
    tight_edges: Vec<usize>,
    critical: TransitionGraph<T>,
    critical_vertex_to_ambient: Vec<usize>,
    critical_edge_to_ambient: Vec<usize>,
}

/// Exact interval of `g`-averages over the maximising measures of `f`:
/// `[inf, sup]` of the integral of `g` as the measure ranges over the
/// maximising set. Both endpoints are attained on critical cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionalInterval<T> {
    pub lower: T,
    pub upper: T,
}

impl<T: Weight> DirectionalInterval<T> {
    pub fn diameter(&self) -> T {
        self.upper.clone() - self.lower.clone()
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }
}

/// Uniqueness decision for the maximising-measure set, with certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    /// The critical graph is a single simple cycle; its periodic-orbit
    /// measure is the unique maximising measure.
    Unique(CycleMeasure),
    /// Two distinct critical cycles (two distinct maximising measures).
    Multiple(CycleMeasure, CycleMeasure),
}

impl Uniqueness {
    pub fn is_unique(&self) -> bool {
        matches!(self, Uniqueness::Unique(_))
    }
}

/// Computes the critical structure with the default eigenvector anchor.
pub fn critical_structure<T: Weight>(g: &TransitionGraph<T>) -> Result<CriticalStructure<T>> {
    critical_structure_with_base(g, BaseVertexRule::default())
}

/// Computes the critical structure, anchoring each component's eigenvector
/// per `rule`.
///
/// Non-strongly-connected input is handled per component of the recurrent
/// part: each component gets its own maximum mean and eigenvector; component
/// potentials are then shifted (in topological order of the condensation) so
/// the slack inequality holds with the *global* maximum across every edge of
/// the pruned graph. Tight edges inside components below the global maximum
/// are impossible; the critical graph is the union over maximising
/// components.
pub fn critical_structure_with_base<T: Weight>(
    g: &TransitionGraph<T>,
    rule: BaseVertexRule,
) -> Result<CriticalStructure<T>> {
    let pruned = prune_to_recurrent(g)?;
    let p = &pruned.graph;
    let partition = strongly_connected_components(p);
    let n = p.vertex_count();

    // Per-component maximum mean and anchored eigenvector.
    let mut component_lambda: Vec<T> = Vec::with_capacity(partition.len());
    let mut eigenvector: Vec<Option<T>> = vec![None; n];
    for component in &partition.components {
        let (sub, vertex_map, _) = p.induced_subgraph(component);
        let result = max_cycle_mean_karp(&sub).expect("pruned component is recurrent");
        let lambda = result.lambda;
        let witness_vertices = result.witness_cycle.vertices(&sub);
        let base = match rule {
            BaseVertexRule::LeastOnWitness => *witness_vertices.iter().min().unwrap(),
            BaseVertexRule::GreatestOnWitness => *witness_vertices.iter().max().unwrap(),
        };
        // longest reweighted walk from the base; no positive cycles remain,
        // so |S| - 1 relaxation rounds reach the fixpoint
        let m = sub.vertex_count();
        let mut value: Vec<Option<T>> = vec![None; m];
        value[base] = Some(T::zero());
        for round in 0..=m {
            let mut changed = false;
            for e in sub.edges() {
                if let Some(vi) = value[e.source].clone() {
                    let cand = vi + e.weight.clone() - lambda.clone();
                    if value[e.target].as_ref().is_none_or(|cur| cand > *cur) {
                        value[e.target] = Some(cand);
                        changed = true;
                    }
                }
            }
            debug_assert!(round < m || !changed, "positive cycle survived reweighting");
            if !changed {
                break;
            }
        }
        for (local, global) in vertex_map.iter().enumerate() {
            eigenvector[*global] =
                Some(value[local].clone().expect("strongly connected: all vertices reached"));
        }
        component_lambda.push(lambda);
    }

    let lambda = component_lambda.iter().max().cloned().expect("at least one component");

    // Shift component potentials so cross-component edges also satisfy the
    // slack inequality at the global maximum. Components are emitted in
    // reverse topological order, so the reversed list is topological and
    // every cross edge arrives from an already-shifted component.
    let mut offsets: Vec<Option<T>> = vec![None; partition.len()];
    let cross_edges: Vec<(usize, usize, T)> = p
        .edges()
        .iter()
        .map(|e| (e.source, e.target, e.weight.clone()))
        .filter(|(s, t, _)| partition.component_of[*s] != partition.component_of[*t])
        .collect();
    for comp in (0..partition.len()).rev() {
        let mut off = T::zero();
        for (s, t, w) in &cross_edges {
            if partition.component_of[*t] != comp {
                continue;
            }
            let source_comp = partition.component_of[*s];
            let source_offset = offsets[source_comp].clone().expect("topological order");
            let need = eigenvector[*s].clone().unwrap() + source_offset + w.clone()
                - lambda.clone()
                - eigenvector[*t].clone().unwrap();
            if need > off {
                off = need;
            }
        }
        offsets[comp] = Some(off);
    }
    let eigenvector: Vec<T> = eigenvector
        .into_iter()
        .enumerate()
        .map(|(v, val)| val.unwrap() + offsets[partition.component_of[v]].clone().unwrap())
        .collect();

    // tight edges: zero slack at the global maximum
    let mut tight_edges = Vec::new();
    for (id, e) in p.edges().iter().enumerate() {
        let slack = eigenvector[e.source].clone() + e.weight.clone()
            - lambda.clone()
            - eigenvector[e.target].clone();
        debug_assert!(slack <= T::zero(), "eigenvector violates the slack inequality");
        if slack.is_zero() {
            tight_edges.push(id);
        }
    }

    // critical graph: recurrent part of the tight subgraph
    let tight_graph = TransitionGraph::from_canonical(
        n,
        tight_edges.iter().map(|&id| p.edge(id).clone()).collect(),
    );
    let critical_part =
        prune_to_recurrent(&tight_graph).expect("a maximising cycle is always tight");
    let critical_vertex_to_ambient: Vec<usize> = critical_part
        .vertex_map
        .iter()
        .map(|&v| pruned.vertex_map[v])
        .collect();
    let critical_edge_to_ambient: Vec<usize> = critical_part
        .edge_map
        .iter()
        .map(|&e| pruned.edge_map[tight_edges[e]])
        .collect();

    Ok(CriticalStructure {
        ambient: g.clone(),
        lambda,
        pruned: pruned.graph,
        pruned_vertex_to_ambient: pruned.vertex_map,
        pruned_edge_to_ambient: pruned.edge_map,
        eigenvector,
        tight_edges,
        critical: critical_part.graph,
        critical_vertex_to_ambient,
        critical_edge_to_ambient,
    })
}

impl<T: Weight> CriticalStructure<T> {
    /// The maximum ergodic average of the weighting.
    pub fn lambda(&self) -> &T {
        &self.lambda
    }

    /// The ambient graph the structure was computed from.
    pub fn ambient(&self) -> &TransitionGraph<T> {
        &self.ambient
    }

    /// Recurrent part of the ambient graph.
    pub fn pruned_graph(&self) -> &TransitionGraph<T> {
        &self.pruned
    }

    pub fn pruned_vertex_to_ambient(&self) -> &[usize] {
        &self.pruned_vertex_to_ambient
    }

    pub fn pruned_edge_to_ambient(&self) -> &[usize] {
        &self.pruned_edge_to_ambient
    }

    /// Max-plus eigenvector on the pruned graph's vertices.
    pub fn eigenvector(&self) -> &[T] {
        &self.eigenvector
    }

    /// Zero-slack edges of the pruned graph (pruned edge ids, ascending).
    pub fn tight_edges(&self) -> &[usize] {
        &self.tight_edges
    }

    /// `eigenvector[i] + w - lambda - eigenvector[j]` for a pruned edge.
    pub fn slack(&self, pruned_edge: usize) -> T {
        let e = self.pruned.edge(pruned_edge);
        self.eigenvector[e.source].clone() + e.weight.clone()
            - self.lambda.clone()
            - self.eigenvector[e.target].clone()
    }

    /// The critical graph (recurrent part of the tight subgraph), carrying
    /// the original weights.
    pub fn critical_graph(&self) -> &TransitionGraph<T> {
        &self.critical
    }

    pub fn critical_vertex_to_ambient(&self) -> &[usize] {
        &self.critical_vertex_to_ambient
    }

    pub fn critical_edge_to_ambient(&self) -> &[usize] {
        &self.critical_edge_to_ambient
    }

    /// Lifts a cycle of the critical graph to ambient edge ids.
    fn lift_cycle(&self, local: &CycleMeasure) -> CycleMeasure {
        CycleMeasure::new(
            local
                .edge_ids()
                .iter()
                .map(|&e| self.critical_edge_to_ambient[e])
                .collect(),
        )
    }

    /// Decides whether the maximising measure is unique: true iff the
    /// critical graph is exactly one simple cycle. The certificate is that
    /// cycle, or two distinct critical cycles otherwise. Purely structural —
    /// no arithmetic involved.
    pub fn is_unique_maximising(&self) -> Uniqueness {
        let partition = strongly_connected_components(&self.critical);
        if partition.len() == 1 && self.critical.edge_count() == self.critical.vertex_count() {
            // one out-edge per vertex: walk the unique cycle
            let adjacency = self.critical.out_adjacency();
            let mut edges = Vec::with_capacity(self.critical.vertex_count());
            let mut at = 0usize;
            loop {
                let e = adjacency[at][0];
                edges.push(e);
                at = self.critical.edge(e).target;
                if at == 0 {
                    break;
                }
            }
            return Uniqueness::Unique(self.lift_cycle(&CycleMeasure::new(edges)));
        }
        if partition.len() >= 2 {
            let mut cycles = partition.components.iter().take(2).map(|component| {
                let (sub, _, edge_map) = self.critical.induced_subgraph(component);
                let local = first_cycles(&sub, 1).into_iter().next().expect("recurrent component");
                CycleMeasure::new(local.edge_ids().iter().map(|&e| edge_map[e]).collect())
            });
            let first = cycles.next().unwrap();
            let second = cycles.next().unwrap();
            return Uniqueness::Multiple(self.lift_cycle(&first), self.lift_cycle(&second));
        }
        // single component with more edges than vertices: at least two cycles
        let mut found = first_cycles(&self.critical, 2).into_iter();
        let first = found.next().expect("recurrent graph has a cycle");
        let second = found.next().expect("component with surplus edges has a second cycle");
        Uniqueness::Multiple(self.lift_cycle(&first), self.lift_cycle(&second))
    }

    /// The exact interval `[inf, sup]` of `direction`-averages over the
    /// maximising measures: max/min cycle mean of the direction weights
    /// restricted to the critical graph.
    pub fn directional_interval(
        &self,
        direction: &TransitionGraph<T>,
    ) -> Result<DirectionalInterval<T>> {
        if !self.ambient.same_structure(direction) {
            return Err(Error::EdgeSetMismatch(
                "direction must weight the ambient edge set".into(),
            ));
        }
        let weights: Vec<T> = self
            .critical_edge_to_ambient
            .iter()
            .map(|&e| direction.edge(e).weight.clone())
            .collect();
        let on_critical = self.critical.with_weights(weights)?;
        let upper = max_cycle_mean_karp(&on_critical)
            .expect("critical graph is recurrent")
            .lambda;
        let negated = on_critical
            .with_weights(on_critical.weights().map(|w| -w.clone()).collect())
            .expect("same structure");
        let lower = -max_cycle_mean_karp(&negated)
            .expect("critical graph is recurrent")
            .lambda;
        debug_assert!(lower <= upper);
        Ok(DirectionalInterval { lower, upper })
    }

    /// Width of the directional interval; zero iff every maximising measure
    /// assigns the direction the same average.
    pub fn diameter(&self, direction: &TransitionGraph<T>) -> Result<T> {
        Ok(self.directional_interval(direction)?.diameter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::enumerate_simple_cycles;
    use crate::graph::cycle_mean;
    use crate::Rational;
    use proptest::prelude::*;

    fn qi(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    /// the worked two-vertex graph: loops of weight 1 and 2, zero connectors
    fn two_loops_f() -> TransitionGraph<Rational> {
        TransitionGraph::new(
            2,
            vec![(0, 0, qi(1)), (0, 1, qi(0)), (1, 0, qi(0)), (1, 1, qi(2))],
        )
        .unwrap()
    }

    /// matching direction weights: 1 on the loop at 0, zero elsewhere
    fn two_loops_g() -> TransitionGraph<Rational> {
        TransitionGraph::new(
            2,
            vec![(0, 0, qi(1)), (0, 1, qi(0)), (1, 0, qi(0)), (1, 1, qi(0))],
        )
        .unwrap()
    }

    #[test]
    fn self_loop_critical_graph_is_the_loop() {
        let g = TransitionGraph::new(1, vec![(0, 0, qi(3))]).unwrap();
        let cs = critical_structure(&g).unwrap();
        assert_eq!(*cs.lambda(), qi(3));
        assert_eq!(cs.critical_graph().edge_count(), 1);
        assert_eq!(cs.critical_edge_to_ambient(), &[0]);
    }

    #[test]
    fn worked_example_critical_graph_is_heavier_loop() {
        let cs = critical_structure(&two_loops_f()).unwrap();
        assert_eq!(*cs.lambda(), qi(2));
        assert_eq!(cs.critical_graph().vertex_count(), 1);
        assert_eq!(cs.critical_graph().edge_count(), 1);
        assert_eq!(cs.critical_vertex_to_ambient(), &[1]);
        assert_eq!(cs.critical_edge_to_ambient(), &[3]);
    }

    #[test]
    fn tied_loop_and_triangle_are_both_critical() {
        // 3-cycle of weight-1 edges plus a weight-1 self-loop at vertex 0
        let g = TransitionGraph::new(
            3,
            vec![(0, 0, qi(1)), (0, 1, qi(1)), (1, 2, qi(1)), (2, 0, qi(1))],
        )
        .unwrap();
        let cs = critical_structure(&g).unwrap();
        assert_eq!(*cs.lambda(), qi(1));
        assert_eq!(cs.critical_graph().edge_count(), 4);
        assert_eq!(cs.critical_graph().vertex_count(), 3);
        assert!(!cs.is_unique_maximising().is_unique());
    }

    #[test]
    fn slack_nonpositive_and_tight_exactly_on_maximal_cycles() {
        let cs = critical_structure(&two_loops_f()).unwrap();
        for e in 0..cs.pruned_graph().edge_count() {
            assert!(cs.slack(e) <= qi(0));
        }
        // cycles of mean lambda have every edge tight
        let cycles = enumerate_simple_cycles(cs.pruned_graph(), 100).unwrap();
        for c in cycles {
            if cycle_mean(&c, cs.pruned_graph()).unwrap() == *cs.lambda() {
                for id in c.edge_ids() {
                    assert!(cs.tight_edges().contains(id));
                }
            }
        }
    }

    #[test]
    fn anchor_rule_does_not_change_critical_graph() {
        for g in [
            two_loops_f(),
            TransitionGraph::new(
                3,
                vec![(0, 0, qi(1)), (0, 1, qi(1)), (1, 2, qi(1)), (2, 0, qi(1))],
            )
            .unwrap(),
        ] {
            let a = critical_structure_with_base(&g, BaseVertexRule::LeastOnWitness).unwrap();
            let b = critical_structure_with_base(&g, BaseVertexRule::GreatestOnWitness).unwrap();
            assert_eq!(a.critical_edge_to_ambient(), b.critical_edge_to_ambient());
            assert_eq!(a.lambda(), b.lambda());
        }
    }

    #[test]
    fn uniqueness_single_loop() {
        let g = TransitionGraph::new(1, vec![(0, 0, qi(5))]).unwrap();
        let cs = critical_structure(&g).unwrap();
        match cs.is_unique_maximising() {
            Uniqueness::Unique(c) => assert_eq!(c.edge_ids(), &[0]),
            other => panic!("expected unique, got {other:?}"),
        }
    }

    #[test]
    fn uniqueness_fails_for_two_disjoint_loops() {
        // disconnected: two equal self-loops
        let g = TransitionGraph::new(2, vec![(0, 0, qi(1)), (1, 1, qi(1))]).unwrap();
        let cs = critical_structure(&g).unwrap();
        match cs.is_unique_maximising() {
            Uniqueness::Multiple(a, b) => {
                assert_ne!(a, b);
                assert_eq!(cycle_mean(&a, &g).unwrap(), qi(1));
                assert_eq!(cycle_mean(&b, &g).unwrap(), qi(1));
            }
            other => panic!("expected multiple, got {other:?}"),
        }
    }

    #[test]
    fn uniqueness_fails_for_figure_eight() {
        // two triangles sharing vertex 0, all weights equal
        let g = TransitionGraph::new(
            5,
            vec![
                (0, 1, qi(1)),
                (1, 2, qi(1)),
                (2, 0, qi(1)),
                (0, 3, qi(1)),
                (3, 4, qi(1)),
                (4, 0, qi(1)),
            ],
        )
        .unwrap();
        let cs = critical_structure(&g).unwrap();
        assert_eq!(cs.critical_graph().edge_count(), 6);
        assert_eq!(cs.critical_graph().vertex_count(), 5);
        assert!(!cs.is_unique_maximising().is_unique());
    }

    #[test]
    fn directional_interval_worked_example() {
        let cs = critical_structure(&two_loops_f()).unwrap();
        let interval = cs.directional_interval(&two_loops_g()).unwrap();
        // critical graph is the loop at vertex 1 where g vanishes
        assert_eq!(interval, DirectionalInterval { lower: qi(0), upper: qi(0) });
        assert_eq!(cs.diameter(&two_loops_g()).unwrap(), qi(0));
    }

    #[test]
    fn directional_interval_two_critical_loops() {
        // both loops critical for f; direction separates them
        let f = TransitionGraph::new(
            2,
            vec![(0, 0, qi(2)), (0, 1, qi(0)), (1, 0, qi(0)), (1, 1, qi(2))],
        )
        .unwrap();
        let cs = critical_structure(&f).unwrap();
        let interval = cs.directional_interval(&two_loops_g()).unwrap();
        assert_eq!(interval, DirectionalInterval { lower: qi(0), upper: qi(1) });
        assert_eq!(cs.diameter(&two_loops_g()).unwrap(), qi(1));
    }

    #[test]
    fn zero_direction_gives_zero_interval() {
        let f = two_loops_f();
        let zero = f.with_weights(vec![qi(0); f.edge_count()]).unwrap();
        let cs = critical_structure(&f).unwrap();
        assert_eq!(
            cs.directional_interval(&zero).unwrap(),
            DirectionalInterval { lower: qi(0), upper: qi(0) }
        );
    }

    #[test]
    fn diameter_in_own_direction_is_zero() {
        // even with several critical cycles, all maximising measures give f
        // the same average
        let f = TransitionGraph::new(
            2,
            vec![(0, 0, qi(2)), (0, 1, qi(0)), (1, 0, qi(0)), (1, 1, qi(2))],
        )
        .unwrap();
        let cs = critical_structure(&f).unwrap();
        assert_eq!(cs.diameter(&f).unwrap(), qi(0));
    }

    #[test]
    fn direction_on_wrong_structure_is_rejected() {
        let cs = critical_structure(&two_loops_f()).unwrap();
        let other = TransitionGraph::new(2, vec![(0, 1, qi(1)), (1, 0, qi(1))]).unwrap();
        assert!(matches!(
            cs.directional_interval(&other),
            Err(Error::EdgeSetMismatch(_))
        ));
    }

    fn arb_cyclic_graph() -> impl Strategy<Value = TransitionGraph<Rational>> {
        (1usize..=5)
            .prop_flat_map(|n| {
                let targets = proptest::collection::vec(0usize..n, n);
                let extra = proptest::collection::vec((0usize..n, 0usize..n, -4i64..=4), 0..6);
                (Just(n), targets, extra)
            })
            .prop_map(|(n, targets, extra)| {
                let mut arcs: Vec<(usize, usize, Rational)> = targets
                    .into_iter()
                    .enumerate()
                    .map(|(s, t)| (s, t, qi(((s * t) % 3) as i64)))
                    .collect();
                arcs.extend(extra.into_iter().map(|(s, t, w)| (s, t, qi(w))));
                TransitionGraph::new(n, arcs).unwrap()
            })
    }

    proptest! {
        /// Brute-force law: the directional interval equals [min, max] of
        /// direction means over exactly the f-maximal simple cycles.
        #[test]
        fn interval_matches_bruteforce_over_maximal_cycles(
            g in arb_cyclic_graph(),
            dirs in proptest::collection::vec(-3i64..=3, 30),
        ) {
            let cs = critical_structure(&g).unwrap();
            let direction = g
                .with_weights((0..g.edge_count()).map(|i| qi(dirs[i % dirs.len()])).collect())
                .unwrap();
            let interval = cs.directional_interval(&direction).unwrap();
            let cycles = enumerate_simple_cycles(&g, 100_000).unwrap();
            let mut best: Option<(Rational, Rational)> = None;
            for c in &cycles {
                if cycle_mean(c, &g).unwrap() != *cs.lambda() {
                    continue;
                }
                let gm = cycle_mean(c, &direction).unwrap();
                best = Some(match best {
                    None => (gm.clone(), gm),
                    Some((lo, hi)) => (lo.min(gm.clone()), hi.max(gm)),
                });
            }
            let (lo, hi) = best.expect("lambda is attained on some cycle");
            prop_assert_eq!(interval.lower, lo);
            prop_assert_eq!(interval.upper, hi);
        }

        /// Structural uniqueness agrees with "zero diameter in every
        /// edge-indicator direction" — the finite basis of directions.
        #[test]
        fn uniqueness_iff_degenerate_in_every_indicator_direction(g in arb_cyclic_graph()) {
            let cs = critical_structure(&g).unwrap();
            let unique = cs.is_unique_maximising().is_unique();
            let mut all_degenerate = true;
            for e in 0..g.edge_count() {
                let mut w = vec![qi(0); g.edge_count()];
                w[e] = qi(1);
                let indicator = g.with_weights(w).unwrap();
                if !cs.directional_interval(&indicator).unwrap().is_degenerate() {
                    all_degenerate = false;
                    break;
                }
            }
            prop_assert_eq!(unique, all_degenerate);
        }

        /// Every cycle of the critical graph attains lambda; every
        /// lambda-attaining cycle of the ambient graph lies inside it.
        #[test]
        fn critical_graph_carries_exactly_the_maximal_cycles(g in arb_cyclic_graph()) {
            let cs = critical_structure(&g).unwrap();
            let critical_edges: std::collections::HashSet<usize> =
                cs.critical_edge_to_ambient().iter().copied().collect();
            for c in enumerate_simple_cycles(&g, 100_000).unwrap() {
                let is_max = cycle_mean(&c, &g).unwrap() == *cs.lambda();
                let inside = c.edge_ids().iter().all(|id| critical_edges.contains(id));
                if is_max {
                    prop_assert!(inside, "maximal cycle must be critical");
                }
            }
            for c in enumerate_simple_cycles(cs.critical_graph(), 100_000).unwrap() {
                prop_assert_eq!(
                    cycle_mean(&c, cs.critical_graph()).unwrap(),
                    cs.lambda().clone()
                );
            }
        }
    }
}
