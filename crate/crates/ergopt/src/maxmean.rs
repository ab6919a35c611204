//! Maximum cycle mean: the maximum ergodic average over invariant measures
//! of the finite model.
//!
//! Two independent algorithms are shipped and cross-checked against each
//! other (and against the brute-force cycle oracle) in the test suite:
//!
//! * [`max_cycle_mean_karp`] — Karp's dynamic program, the reference
//!   implementation;
//! * [`max_cycle_mean_howard`] — policy iteration over out-edge choices, the
//!   fast path for parameter sweeps.
//!
//! Both decompose into strongly connected components first and return the
//! maximum over components together with a witness cycle attaining it. All
//! arithmetic is exact; ties are broken by canonical edge order, so results
//! are deterministic (the witness is a certificate, not a claim of
//! uniqueness, and the two algorithms may certify different cycles of equal
//! mean).

use crate::error::{Error, Result};
use crate::graph::{CycleMeasure, TransitionGraph};
use crate::scc::strongly_connected_components;
use crate::weight::Weight;

/// Maximum cycle mean with certificate and per-component breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxMeanResult<T> {
    /// The maximum ergodic average: `max` over cycles of the mean weight.
    pub lambda: T,
    /// A cycle attaining `lambda`, in ambient edge ids.
    pub witness_cycle: CycleMeasure,
    /// `(component index, maximum mean within it)` for every strongly
    /// connected component that carries a cycle, in the component order of
    /// [`strongly_connected_components`].
    pub per_scc_lambda: Vec<(usize, T)>,
}

/// Karp's algorithm, per strongly connected component.
pub fn max_cycle_mean_karp<T: Weight>(g: &TransitionGraph<T>) -> Result<MaxMeanResult<T>> {
    per_component(g, karp_component)
}

/// Howard policy iteration, per strongly connected component.
pub fn max_cycle_mean_howard<T: Weight>(g: &TransitionGraph<T>) -> Result<MaxMeanResult<T>> {
    per_component(g, howard_component)
}

/// The maximum ergodic average of the weighting; convenience wrapper around
/// [`max_cycle_mean_karp`].
pub fn beta<T: Weight>(g: &TransitionGraph<T>) -> Result<T> {
    max_cycle_mean_karp(g).map(|r| r.lambda)
}

/// Runs `algo` on every component that carries a cycle and takes the
/// maximum. `algo` receives a strongly connected graph in which every vertex
/// has an out-edge and returns the component's maximum mean plus a witness
/// cycle as local edge ids in traversal order.
fn per_component<T: Weight>(
    g: &TransitionGraph<T>,
    algo: fn(&TransitionGraph<T>) -> (T, Vec<usize>),
) -> Result<MaxMeanResult<T>> {
    let partition = strongly_connected_components(g);
    let mut per_scc_lambda = Vec::new();
    let mut best: Option<(T, CycleMeasure)> = None;

    for (scc_id, component) in partition.components.iter().enumerate() {
        let has_cycle = component.len() > 1
            || g.edges()
                .iter()
                .any(|e| e.source == component[0] && e.target == component[0]);
        if !has_cycle {
            continue;
        }
        let (sub, _, edge_map) = g.induced_subgraph(component);
        // cross-component edges never enter an induced single component
        let (lambda, local_cycle) = algo(&sub);
        let witness = CycleMeasure::new(local_cycle.into_iter().map(|e| edge_map[e]).collect());
        debug_assert_eq!(crate::graph::cycle_mean(&witness, g).unwrap(), lambda);
        per_scc_lambda.push((scc_id, lambda.clone()));
        let better = match &best {
            None => true,
            Some((cur, _)) => lambda > *cur,
        };
        if better {
            best = Some((lambda, witness));
        }
    }

    match best {
        Some((lambda, witness_cycle)) => Ok(MaxMeanResult { lambda, witness_cycle, per_scc_lambda }),
        None => Err(Error::EmptyRecurrentPart),
    }
}

/// Karp on one strongly connected component.
///
/// `dist[k][v]` is the maximum weight of a walk with exactly `k` edges from
/// vertex 0 to `v` (`None` when no such walk exists). The component's
/// maximum mean is `max_v min_k (dist[n][v] - dist[k][v]) / (n - k)`, and a
/// witness cycle is recovered from the predecessor table: walking the
/// optimal n-edge walk backwards, the first repeated vertex closes a simple
/// cycle whose mean is exactly the maximum.
fn karp_component<T: Weight>(g: &TransitionGraph<T>) -> (T, Vec<usize>) {
    let n = g.vertex_count();
    let mut dist: Vec<Vec<Option<T>>> = vec![vec![None; n]; n + 1];
    let mut pred: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n + 1];
    dist[0][0] = Some(T::zero());

    for k in 1..=n {
        for (id, e) in g.edges().iter().enumerate() {
            if let Some(du) = dist[k - 1][e.source].clone() {
                let cand = du + e.weight.clone();
                let improves = match &dist[k][e.target] {
                    None => true,
                    Some(cur) => cand > *cur,
                };
                if improves {
                    dist[k][e.target] = Some(cand);
                    pred[k][e.target] = Some(id);
                }
            }
        }
    }

    let mut best: Option<(T, usize)> = None;
    for v in 0..n {
        let Some(dn) = dist[n][v].clone() else { continue };
        let mut lam_v: Option<T> = None;
        for (k, dk_row) in dist.iter().enumerate().take(n) {
            let Some(dk) = dk_row[v].clone() else { continue };
            let quotient = (dn.clone() - dk) / T::from_count(n - k);
            if lam_v.as_ref().is_none_or(|cur| quotient < *cur) {
                lam_v = Some(quotient);
            }
        }
        let lam_v = lam_v.expect("k = 0 or smaller always contributes for reachable v");
        if best.as_ref().is_none_or(|(cur, _)| lam_v > *cur) {
            best = Some((lam_v, v));
        }
    }
    let (lambda, target) = best.expect("strongly connected component has walks of length n");

    // Reconstruct the optimal n-edge walk and cut out the first simple cycle
    // encountered while walking backwards.
    let mut vertex_at = vec![0usize; n + 1];
    let mut edge_at = vec![0usize; n + 1]; // edge_at[k] leads into vertex_at[k], k >= 1
    vertex_at[n] = target;
    for k in (1..=n).rev() {
        let e = pred[k][vertex_at[k]].expect("predecessor exists on optimal walk");
        edge_at[k] = e;
        vertex_at[k - 1] = g.edge(e).source;
    }
    let mut seen_at: Vec<Option<usize>> = vec![None; n];
    let mut cycle_span = None;
    for k in (0..=n).rev() {
        match seen_at[vertex_at[k]] {
            Some(j) => {
                cycle_span = Some((k, j));
                break;
            }
            None => seen_at[vertex_at[k]] = Some(k),
        }
    }
    let (lo, hi) = cycle_span.expect("pigeonhole: n+1 positions over n vertices");
    let cycle: Vec<usize> = ((lo + 1)..=hi).map(|k| edge_at[k]).collect();
    (lambda, cycle)
}

/// Howard policy iteration on one strongly connected component.
///
/// A policy picks one out-edge per vertex; its functional graph decomposes
/// into cycles with trees hanging off them. Evaluation assigns every vertex
/// the mean (`gain`) of the cycle it reaches and a relative value (`bias`)
/// anchored at the least vertex of each cycle. Improvement switches a vertex
/// to an out-edge with strictly larger successor gain, or — among edges tied
/// at the current gain — strictly larger `weight - gain + bias`; keeping the
/// incumbent on ties guarantees termination with exact arithmetic.
fn howard_component<T: Weight>(g: &TransitionGraph<T>) -> (T, Vec<usize>) {
    let n = g.vertex_count();
    let adj = g.out_adjacency();
    debug_assert!(adj.iter().all(|a| !a.is_empty()), "every vertex needs an out-edge");

    // initial policy: heaviest out-edge, first on ties
    let mut policy: Vec<usize> = adj
        .iter()
        .map(|edges| {
            let mut best = edges[0];
            for &e in &edges[1..] {
                if g.edge(e).weight > g.edge(best).weight {
                    best = e;
                }
            }
            best
        })
        .collect();

    // generous safety net; policy iteration terminates long before this
    let max_rounds = 64 + 4 * n * g.edge_count();
    for _ in 0..max_rounds {
        let eval = evaluate_policy(g, &policy);
        let mut changed = false;
        for u in 0..n {
            let gain_u = &eval.gain[u];
            let mut best_gain = eval.gain[g.edge(adj[u][0]).target].clone();
            for &e in &adj[u][1..] {
                let cand = &eval.gain[g.edge(e).target];
                if *cand > best_gain {
                    best_gain = cand.clone();
                }
            }
            let mut best_edge = None;
            let mut best_val: Option<T> = None;
            for &e in &adj[u] {
                let edge = g.edge(e);
                if eval.gain[edge.target] != best_gain {
                    continue;
                }
                let val = edge.weight.clone() - best_gain.clone() + eval.bias[edge.target].clone();
                if best_val.as_ref().is_none_or(|cur| val > *cur) {
                    best_val = Some(val);
                    best_edge = Some(e);
                }
            }
            let best_val = best_val.expect("at least one gain-maximising edge");
            let best_edge = best_edge.expect("at least one gain-maximising edge");
            let switch = best_gain > *gain_u || (best_gain == *gain_u && best_val > eval.bias[u]);
            if switch && policy[u] != best_edge {
                policy[u] = best_edge;
                changed = true;
            }
        }
        if !changed {
            // converged: in a strongly connected graph the optimal gain is
            // constant and every policy cycle attains it
            let lambda = eval.gain[0].clone();
            debug_assert!(eval.gain.iter().all(|gv| *gv == lambda));
            let cycle_vertices = &eval.cycles[0];
            let cycle = cycle_vertices.iter().map(|&v| policy[v]).collect();
            return (lambda, cycle);
        }
    }
    unreachable!("policy iteration failed to terminate; this is a bug");
}

struct PolicyEvaluation<T> {
    gain: Vec<T>,
    bias: Vec<T>,
    /// policy cycles in discovery order, each rotated to start at its least
    /// vertex
    cycles: Vec<Vec<usize>>,
}

fn evaluate_policy<T: Weight>(g: &TransitionGraph<T>, policy: &[usize]) -> PolicyEvaluation<T> {
    let n = g.vertex_count();
    let mut gain: Vec<Option<T>> = vec![None; n];
    let mut bias: Vec<Option<T>> = vec![None; n];
    let mut cycles = Vec::new();
    let step = |u: usize| g.edge(policy[u]).target;

    for start in 0..n {
        if gain[start].is_some() {
            continue;
        }
        let mut path = vec![start];
        let mut on_path = std::collections::HashMap::new();
        on_path.insert(start, 0usize);
        let split = loop {
            let tail = *path.last().unwrap();
            let next = step(tail);
            if gain[next].is_some() {
                break path.len(); // whole path is a tree hanging onto known values
            }
            if let Some(&at) = on_path.get(&next) {
                // vertices path[at..] form a policy cycle
                let cycle: Vec<usize> = path[at..].to_vec();
                let least = cycle
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, v)| **v)
                    .map(|(i, _)| i)
                    .unwrap();
                let mut rotated = cycle.clone();
                rotated.rotate_left(least);
                let total = rotated
                    .iter()
                    .fold(T::zero(), |acc, &v| acc + g.edge(policy[v]).weight.clone());
                let mean = total / T::from_count(rotated.len());
                // bias anchored at the least vertex, unrolled backwards
                let len = rotated.len();
                gain[rotated[0]] = Some(mean.clone());
                bias[rotated[0]] = Some(T::zero());
                for idx in (1..len).rev() {
                    let v = rotated[idx];
                    let succ = rotated[(idx + 1) % len];
                    let b = g.edge(policy[v]).weight.clone() - mean.clone()
                        + bias[succ].clone().expect("successor bias set");
                    gain[v] = Some(mean.clone());
                    bias[v] = Some(b);
                }
                cycles.push(rotated);
                break at;
            }
            on_path.insert(next, path.len());
            path.push(next);
        };
        // unwind the tree prefix path[..split] back to front
        for &v in path[..split].iter().rev() {
            let succ = step(v);
            let gv = gain[succ].clone().expect("successor resolved");
            let bv = g.edge(policy[v]).weight.clone() - gv.clone()
                + bias[succ].clone().expect("successor resolved");
            gain[v] = Some(gv);
            bias[v] = Some(bv);
        }
    }

    PolicyEvaluation {
        gain: gain.into_iter().map(|x| x.unwrap()).collect(),
        bias: bias.into_iter().map(|x| x.unwrap()).collect(),
        cycles,
    }
}
