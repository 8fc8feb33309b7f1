use super::{DegeneracyOrder, Graph, Vertex};
use crate::error::{Error, Result};

/// Every edge directed toward its endpoint that is later in the ordering.
/// Both neighbor lists stay sorted by vertex id.
#[derive(Debug, Clone)]
pub struct DirectedView {
    out_offsets: Vec<usize>,
    out_targets: Vec<Vertex>,
    in_offsets: Vec<usize>,
    in_targets: Vec<Vertex>,
}

impl DirectedView {
    #[inline]
    pub fn out(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    #[inline]
    pub fn incoming(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.in_targets[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    pub fn n(&self) -> usize {
        self.out_offsets.len() - 1
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.n() as Vertex)
            .map(|v| self.out(v).len())
            .max()
            .unwrap_or(0)
    }
}

pub fn orient(g: &Graph, ord: &DegeneracyOrder) -> Result<DirectedView> {
    if ord.position.len() != g.n() || ord.order.len() != g.n() {
        return Err(Error::Contract(format!(
            "ordering covers {} vertices but the graph has {}",
            ord.order.len(),
            g.n()
        )));
    }
    let n = g.n();
    let mut out_offsets = Vec::with_capacity(n + 1);
    let mut in_offsets = Vec::with_capacity(n + 1);
    let mut out_targets = Vec::with_capacity(g.m());
    let mut in_targets = Vec::with_capacity(g.m());
    out_offsets.push(0);
    in_offsets.push(0);
    for v in g.vertices() {
        for &w in g.neighbors(v) {
            if ord.is_before(v, w) {
                out_targets.push(w);
            } else {
                in_targets.push(w);
            }
        }
        out_offsets.push(out_targets.len());
        in_offsets.push(in_targets.len());
    }
    Ok(DirectedView {
        out_offsets,
        out_targets,
        in_offsets,
        in_targets,
    })
}
