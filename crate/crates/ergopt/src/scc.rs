//! Strongly connected components via iterative Tarjan.
//!
//! Output is deterministic for equal inputs: start vertices are scanned in
//! ascending order, out-edges in canonical order, and each component's vertex
//! list is sorted. Components come out in reverse topological order of the
//! condensation (a component is emitted only after every component it can
//! reach), which the critical-structure layer relies on.

use crate::graph::TransitionGraph;
use crate::weight::Weight;

/// Partition of the vertex set into strongly connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    /// Components in reverse topological order of the condensation; vertices
    /// ascending within each component.
    pub components: Vec<Vec<usize>>,
    /// vertex id -> index into `components`
    pub component_of: Vec<usize>,
}

impl SccPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn strongly_connected_components<T: Weight>(g: &TransitionGraph<T>) -> SccPartition {
    let n = g.vertex_count();
    let adj = g.out_adjacency();

    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut component_of = vec![usize::MAX; n];

    struct Frame {
        vertex: usize,
        next_edge: usize,
    }

    for start in 0..n {
        if index[start] != UNVISITED {
            continue;
        }
        let mut frames = vec![Frame { vertex: start, next_edge: 0 }];
        index[start] = next_index;
        lowlink[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;

        while let Some(frame) = frames.last_mut() {
            let v = frame.vertex;
            if frame.next_edge < adj[v].len() {
                let edge_id = adj[v][frame.next_edge];
                frame.next_edge += 1;
                let w = g.edge(edge_id).target;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push(Frame { vertex: w, next_edge: 0 });
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(parent) = frames.last() {
                    let p = parent.vertex;
                    lowlink[p] = lowlink[p].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        component_of[w] = components.len();
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    component.sort_unstable();
                    components.push(component);
                }
            }
        }
    }

    SccPartition { components, component_of }
}
