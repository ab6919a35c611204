//! Brute-force enumeration of simple cycles.
//!
//! This is the ground-truth oracle the optimisation layers are tested
//! against: the maximum ergodic average over invariant measures equals the
//! maximum cycle mean over simple cycles, so on small graphs everything can
//! be checked by exhaustion. Callers must respect the cap; the oracle is not
//! meant for graphs with many cycles.
//!
//! Each cycle is reported once, in the canonical rotation (lexicographically
//! least edge-id sequence), and the output list is sorted.

use crate::error::{Error, Result};
use crate::graph::{CycleMeasure, TransitionGraph};
use crate::weight::Weight;

/// All simple cycles of `g`, up to rotation, provided there are at most
/// `cap` of them; otherwise [`Error::CapExceeded`].
pub fn enumerate_simple_cycles<T: Weight>(
    g: &TransitionGraph<T>,
    cap: usize,
) -> Result<Vec<CycleMeasure>> {
    let mut found = Vec::new();
    let complete = collect_cycles(g, cap, &mut found);
    if !complete {
        return Err(Error::CapExceeded { cap, found: found.len() });
    }
    found.sort();
    Ok(found)
}

/// First `k` simple cycles in discovery order (discovery is deterministic:
/// root vertices ascending, edges canonical). Used to certify non-uniqueness
/// without enumerating a possibly huge cycle set.
pub(crate) fn first_cycles<T: Weight>(g: &TransitionGraph<T>, k: usize) -> Vec<CycleMeasure> {
    let mut found = Vec::new();
    collect_cycles(g, k, &mut found);
    found.truncate(k);
    found
}

/// DFS rooted at each vertex `root`, visiting only vertices `>= root`, so
/// each simple cycle is found exactly once: at its least vertex. Returns
/// false if more than `cap` cycles exist (collection stops at cap + 1).
fn collect_cycles<T: Weight>(
    g: &TransitionGraph<T>,
    cap: usize,
    out: &mut Vec<CycleMeasure>,
) -> bool {
    let adj = g.out_adjacency();
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    for root in 0..n {
        // path of (edge id, position in adj[target] to try next)
        let mut path_edges: Vec<usize> = Vec::new();
        let mut cursors: Vec<usize> = vec![0];
        on_path[root] = true;
        while let Some(cursor) = cursors.last_mut() {
            let at = match path_edges.last() {
                Some(&e) => g.edge(e).target,
                None => root,
            };
            if let Some(&edge_id) = adj[at].get(*cursor) {
                *cursor += 1;
                let next = g.edge(edge_id).target;
                if next == root {
                    let mut cycle = path_edges.clone();
                    cycle.push(edge_id);
                    out.push(CycleMeasure::new(cycle));
                    if out.len() > cap {
                        return false;
                    }
                } else if next > root && !on_path[next] {
                    on_path[next] = true;
                    path_edges.push(edge_id);
                    cursors.push(0);
                }
            } else {
                cursors.pop();
                if let Some(e) = path_edges.pop() {
                    on_path[g.edge(e).target] = false;
                }
            }
        }
        on_path[root] = false;
    }
    true
}
