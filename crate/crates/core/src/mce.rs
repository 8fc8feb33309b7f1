//! Maximal clique enumeration.
//!
//! [`enumerate_maximal_cliques`] is Bron–Kerbosch with pivoting, run once per
//! vertex in degeneracy order on a bit-matrix of that vertex's later neighbors.
//! [`brute_force_maximal_cliques`] checks every subset and exists only as an
//! independent oracle for small graphs.

use crate::error::{Error, Result};
use crate::graph::local::UNRANKED;
use crate::graph::{degeneracy_order, orient, BitGraph, BitSet, Graph, Vertex, VertexSet};

pub const DEFAULT_CLIQUE_CAP: u64 = 1_000_000_000;
pub const BRUTE_FORCE_MAX_N: usize = 30;

/// Vertex sets, each ascending, the list in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliqueList {
    cliques: Vec<Vec<Vertex>>,
}

impl CliqueList {
    pub fn from_sets(mut cliques: Vec<Vec<Vertex>>) -> CliqueList {
        for c in &mut cliques {
            c.sort_unstable();
        }
        cliques.sort();
        CliqueList { cliques }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Vertex]> {
        self.cliques.iter().map(Vec::as_slice)
    }

    pub fn as_slice(&self) -> &[Vec<Vertex>] {
        &self.cliques
    }

    pub fn into_inner(self) -> Vec<Vec<Vertex>> {
        self.cliques
    }
}

pub fn enumerate_maximal_cliques(g: &Graph) -> Result<CliqueList> {
    enumerate_maximal_cliques_capped(g, DEFAULT_CLIQUE_CAP)
}

pub fn enumerate_maximal_cliques_capped(g: &Graph, cap: u64) -> Result<CliqueList> {
    let mut cliques = Vec::new();
    for_each_maximal_clique(g, cap, |c| {
        cliques.push(c.to_vec());
        Ok(())
    })?;
    Ok(CliqueList::from_sets(cliques))
}

/// Streams maximal cliques (ascending vertex ids each) in discovery order.
/// Fails with a resource error once more than `cap` cliques are found.
pub fn for_each_maximal_clique<F>(g: &Graph, cap: u64, mut f: F) -> Result<u64>
where
    F: FnMut(&[Vertex]) -> Result<()>,
{
    let ord = degeneracy_order(g);
    let dv = orient(g, &ord)?;
    let mut rank = vec![UNRANKED; g.n()];
    let mut bk = Pivoter {
        cap,
        found: 0,
        clique: Vec::new(),
        scratch: Vec::new(),
        f: &mut f,
    };
    for &v in &ord.order {
        // P lives in the id space of v's later neighbors; each earlier
        // neighbor x is kept as N(x) restricted to that space.
        let later = dv.out(v);
        let k = later.len();
        for (i, &u) in later.iter().enumerate() {
            rank[u as usize] = i as u32;
        }
        let local = BitGraph::from_global(later, |u| dv.out(u), &rank);
        let ranked = |list: &[Vertex]| {
            BitSet::from_sorted(
                k,
                list.iter()
                    .map(|&u| rank[u as usize])
                    .filter(|&r| r != UNRANKED)
                    .map(|r| r as usize),
            )
        };
        let x: Vec<(Vertex, BitSet)> = dv
            .incoming(v)
            .iter()
            .map(|&w| (w, ranked(g.neighbors(w))))
            .collect();
        for &u in later {
            rank[u as usize] = UNRANKED;
        }
        bk.clique.push(v);
        bk.expand(&local, BitSet::full(k), x)?;
        bk.clique.pop();
    }
    Ok(bk.found)
}

struct Pivoter<'f, F> {
    cap: u64,
    found: u64,
    clique: Vec<Vertex>,
    scratch: Vec<Vertex>,
    f: &'f mut F,
}

impl<F: FnMut(&[Vertex]) -> Result<()>> Pivoter<'_, F> {
    /// `x` holds `(global id, neighbors within the local space)` for every
    /// excluded vertex adjacent to the whole current clique.
    fn expand(&mut self, g: &BitGraph, mut p: BitSet, mut x: Vec<(Vertex, BitSet)>) -> Result<()> {
        if p.is_empty() {
            if x.is_empty() {
                self.found += 1;
                if self.found > self.cap {
                    return Err(Error::Resource(format!(
                        "more than {} maximal cliques",
                        self.cap
                    )));
                }
                self.scratch.clear();
                self.scratch.extend_from_slice(&self.clique);
                self.scratch.sort_unstable();
                (self.f)(&self.scratch)?;
            }
            return Ok(());
        }

        // pivot maximizing |P ∩ N(u)| over P ∪ X, smallest id on ties
        let mut pivot: Option<(usize, Vertex, &BitSet)> = None;
        let scored = p
            .iter()
            .map(|u| (g.global(u), g.row(u)))
            .chain(x.iter().map(|(id, row)| (*id, row)));
        for (id, row) in scored {
            let score = p.intersection_len(row);
            let better = match pivot {
                None => true,
                Some((best, best_id, _)) => score > best || (score == best && id < best_id),
            };
            if better {
                pivot = Some((score, id, row));
            }
        }
        let (_, _, pivot_row) = pivot.expect("P is non-empty");
        let candidates: Vec<usize> = p.iter().filter(|&w| !pivot_row.contains(w)).collect();
        for w in candidates {
            let row = g.row(w);
            let child_x = x
                .iter()
                .filter(|(_, nbrs)| nbrs.contains(w))
                .cloned()
                .collect();
            self.clique.push(g.global(w));
            let result = self.expand(g, p.intersection(row), child_x);
            self.clique.pop();
            result?;
            p.remove(w);
            x.push((g.global(w), row.clone()));
        }
        Ok(())
    }
}

/// Tests every vertex subset; `n` is limited to 30.
pub fn brute_force_maximal_cliques(g: &Graph) -> Result<CliqueList> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Argument(format!(
            "brute force handles at most {BRUTE_FORCE_MAX_N} vertices, got {n}"
        )));
    }
    let adj: Vec<u32> = (0..n as Vertex)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let everyone: u64 = (1u64 << n) - 1;
    let mut cliques = Vec::new();
    for mask in 1..=everyone {
        let mask = mask as u32;
        let mut common = everyone as u32;
        let mut is_clique = true;
        for (v, &row) in adj.iter().enumerate() {
            if mask & (1 << v) != 0 {
                if mask & !row & !(1 << v) != 0 {
                    is_clique = false;
                    break;
                }
                common &= row;
            }
        }
        // maximal: no outside vertex adjacent to all members
        if is_clique && common & !mask == 0 {
            cliques.push((0..n as Vertex).filter(|&v| mask & (1 << v) != 0).collect());
        }
    }
    Ok(CliqueList::from_sets(cliques))
}
