//! Graph ingestion and the representations used by the recursion.
//!
//! [`Graph`] is the immutable global input in compressed adjacency-array
//! form. Recursive calls work on [`LocalGraph`]s, small induced subgraphs
//! with a local-to-global id map, stored either as packed bit rows
//! ([`BitGraph`]) or as sorted index lists ([`ListGraph`]).

mod degeneracy;
mod density;
mod directed;
mod io;
pub(crate) mod local;
mod set;

pub use degeneracy::{degeneracy_order, DegeneracyOrder};
pub use density::{density, Rho};
pub use directed::{orient, DirectedView};
pub use io::{load_edge_list, parse_edge_list, write_edge_list, write_id_map, IdMap};
pub use local::{induced_bitgraph, induced_listgraph, BitGraph, ListGraph, LocalGraph};
pub use set::{BitSet, SortedSet, VertexSet};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// Undirected simple graph with sorted adjacency arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Graph {
    /// Builds a simple graph on `n` vertices. Self-loops and repeated edges
    /// are dropped; orientation of the input pairs is irrelevant.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for (u, v) in edges {
            let (ui, vi) = (u as usize, v as usize);
            if ui >= n || vi >= n {
                return Err(Error::Contract(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                continue;
            }
            lists[ui].push(v);
            lists[vi].push(u);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Ok(Graph { offsets, targets })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        0..self.n() as Vertex
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Number of edges of `G[set]`. `set` must hold distinct valid ids.
    pub fn induced_edge_count(&self, set: &[Vertex]) -> Result<u64> {
        let mut mark = vec![false; self.n()];
        for &v in set {
            let slot = mark.get_mut(v as usize).ok_or_else(|| {
                Error::Contract(format!("vertex {v} out of range for {} vertices", self.n()))
            })?;
            *slot = true;
        }
        let mut twice = 0u64;
        for &v in set {
            twice += self
                .neighbors(v)
                .iter()
                .filter(|&&w| mark[w as usize])
                .count() as u64;
        }
        Ok(twice / 2)
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(Error::Contract(format!(
                "vertex {v} out of range for {} vertices",
                self.n()
            )))
        }
    }
}
