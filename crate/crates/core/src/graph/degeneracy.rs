use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Graph, Vertex};

/// Degeneracy ordering: repeatedly remove a minimum-degree vertex, smallest
/// id first among ties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    pub order: Vec<Vertex>,
    pub position: Vec<u32>,
    /// Degree of `v` in the subgraph induced by `v` and everything after it.
    pub suffix_degree: Vec<u32>,
    /// k-core number (running maximum of `suffix_degree` along the order).
    pub core: Vec<u32>,
    pub alpha: u32,
}

impl DegeneracyOrder {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn is_before(&self, u: Vertex, v: Vertex) -> bool {
        self.position[u as usize] < self.position[v as usize]
    }
}

pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    let n = g.n();
    let mut degree: Vec<u32> = g.vertices().map(|v| g.degree(v) as u32).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(u32, Vertex)>> = g
        .vertices()
        .map(|v| Reverse((degree[v as usize], v)))
        .collect();

    let mut order = Vec::with_capacity(n);
    let mut suffix_degree = vec![0u32; n];
    let mut core = vec![0u32; n];
    let mut running = 0u32;
    while let Some(Reverse((d, v))) = heap.pop() {
        let vi = v as usize;
        // stale entry
        if removed[vi] || d != degree[vi] {
            continue;
        }
        removed[vi] = true;
        running = running.max(d);
        suffix_degree[vi] = d;
        core[vi] = running;
        order.push(v);
        for &w in g.neighbors(v) {
            let wi = w as usize;
            if !removed[wi] {
                degree[wi] -= 1;
                heap.push(Reverse((degree[wi], w)));
            }
        }
    }

    let mut position = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i as u32;
    }
    DegeneracyOrder {
        order,
        position,
        suffix_degree,
        core,
        alpha: running,
    }
}
