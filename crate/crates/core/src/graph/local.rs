use super::{BitSet, Graph, SortedSet, Vertex, VertexSet};
use crate::error::Result;

pub(crate) const UNRANKED: u32 = u32::MAX;

/// Small induced subgraph over local ids `0..k`, with `idmap[i]` the global
/// id of local vertex `i`. `idmap` is ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGraph<S> {
    rows: Vec<S>,
    idmap: Vec<Vertex>,
    edges: u64,
}

/// Dense bit-matrix form: row `i` holds bit `j` iff `i ~ j`.
pub type BitGraph = LocalGraph<BitSet>;
/// Compressed sparse row form with sorted neighbor lists.
pub type ListGraph = LocalGraph<SortedSet>;

impl<S: VertexSet> LocalGraph<S> {
    pub fn empty() -> Self {
        LocalGraph {
            rows: Vec::new(),
            idmap: Vec::new(),
            edges: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.idmap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idmap.is_empty()
    }

    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    #[inline]
    pub fn row(&self, i: usize) -> &S {
        &self.rows[i]
    }

    pub fn idmap(&self) -> &[Vertex] {
        &self.idmap
    }

    #[inline]
    pub fn global(&self, i: usize) -> Vertex {
        self.idmap[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Edges in global ids, `(u, v)` with `u < v`.
    pub fn global_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edges as usize);
        for i in 0..self.len() {
            for j in self.rows[i].iter().filter(|&j| j > i) {
                out.push((self.idmap[i], self.idmap[j]));
            }
        }
        out
    }

    /// Induced subgraph on sorted global `members`. `neighbors(u)` must list
    /// at least one endpoint's view of every edge among the members (a full
    /// adjacency list or an out-list of an orientation both work).
    /// `rank` maps global ids to local ones: `rank[members[i]] == i` and
    /// [`UNRANKED`] for every other vertex.
    pub(crate) fn from_global<'g, F>(members: &[Vertex], neighbors: F, rank: &[u32]) -> Self
    where
        F: Fn(Vertex) -> &'g [Vertex],
    {
        let k = members.len();
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (i, &u) in members.iter().enumerate() {
            for &w in neighbors(u) {
                let j = rank[w as usize];
                if j != UNRANKED {
                    lists[i].push(j);
                    lists[j as usize].push(i as u32);
                }
            }
        }
        let mut edges = 0u64;
        let rows = lists
            .into_iter()
            .map(|mut list| {
                list.sort_unstable();
                list.dedup();
                edges += list.len() as u64;
                S::from_sorted(k, list.into_iter().map(|j| j as usize))
            })
            .collect();
        LocalGraph {
            rows,
            idmap: members.to_vec(),
            edges: edges / 2,
        }
    }

    /// Induced subgraph on a subset of the local vertices. On return
    /// `rank[u]` holds the child id of each member `u`, which is what
    /// [`LocalGraph::translate`] needs.
    pub(crate) fn induce(&self, members: &S, rank: &mut [u32]) -> Self {
        let k = members.len();
        let mut idmap = Vec::with_capacity(k);
        for (child, u) in members.iter().enumerate() {
            rank[u] = child as u32;
            idmap.push(self.idmap[u]);
        }
        let mut twice = 0u64;
        let rows = members
            .iter()
            .map(|u| {
                let row = Self::translate(&self.rows[u].intersection(members), k, rank);
                twice += row.len() as u64;
                row
            })
            .collect();
        LocalGraph {
            rows,
            idmap,
            edges: twice / 2,
        }
    }

    /// Maps a set of parent-local ids (all ranked by the last [`induce`])
    /// into the child's id space.
    ///
    /// [`induce`]: LocalGraph::induce
    #[inline]
    pub(crate) fn translate(set: &S, child_len: usize, rank: &[u32]) -> S {
        S::from_sorted(child_len, set.iter().map(|u| rank[u] as usize))
    }

    /// Minimum-degree removal order over local ids, smallest id on ties.
    /// Quadratic in `k`, which is bounded by the degeneracy of the input.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let k = self.len();
        let mut degree: Vec<usize> = self.rows.iter().map(|r| r.len()).collect();
        let mut removed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        for _ in 0..k {
            let mut best = usize::MAX;
            let mut best_degree = usize::MAX;
            for i in 0..k {
                if !removed[i] && degree[i] < best_degree {
                    best = i;
                    best_degree = degree[i];
                }
            }
            removed[best] = true;
            order.push(best);
            for w in self.rows[best].iter() {
                if !removed[w] {
                    degree[w] -= 1;
                }
            }
        }
        order
    }
}

fn induced<S: VertexSet>(g: &Graph, vertices: &[Vertex]) -> Result<LocalGraph<S>> {
    let mut members = vertices.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut rank = vec![UNRANKED; g.n()];
    for (i, &v) in members.iter().enumerate() {
        g.check_vertex(v)?;
        rank[v as usize] = i as u32;
    }
    Ok(LocalGraph::from_global(&members, |u| g.neighbors(u), &rank))
}

/// `G[vertices]` as a bit matrix, local ids in ascending global order.
pub fn induced_bitgraph(g: &Graph, vertices: &[Vertex]) -> Result<BitGraph> {
    induced(g, vertices)
}

/// `G[vertices]` with sorted neighbor lists.
pub fn induced_listgraph(g: &Graph, vertices: &[Vertex]) -> Result<ListGraph> {
    induced(g, vertices)
}
