//! Dense clique aggregation.
//!
//! The top-level call walks the input in degeneracy order on adjacency
//! arrays. For each vertex `v` it recurses into the subgraph induced by
//! `v`'s later neighbors, growing the clique `C` by `v`. A recursive call
//! accepts `C ∪ V(G)` as soon as that set is dense enough, and otherwise
//! repeats the same degeneracy-ordered split on its own, smaller graph.
//!
//! With pruning on, every call also carries X-sets: neighborhoods of
//! already-processed vertices restricted to the current graph. A call whose
//! whole vertex set lies inside one of them has nothing left to acquire.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::local::UNRANKED;
use crate::graph::{
    degeneracy_order, orient, BitSet, DirectedView, Graph, LocalGraph, Rho, SortedSet, Vertex,
    VertexSet,
};

pub const DEFAULT_MAX_DEPTH: usize = 10_000;

/// A non-empty vertex set, ascending, in the global id space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cluster(Vec<Vertex>);

impl Cluster {
    /// Sorts and deduplicates. Panics on an empty set.
    pub fn new(mut vertices: Vec<Vertex>) -> Cluster {
        vertices.sort_unstable();
        vertices.dedup();
        assert!(!vertices.is_empty(), "clusters are non-empty");
        Cluster(vertices)
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Cluster) -> bool {
        is_sorted_subset(&self.0, &other.0)
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

pub(crate) fn is_sorted_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AggOptions {
    /// X-set pruning; guarantees no emitted cluster is inside another.
    pub pruning: bool,
    /// Bit-matrix subgraphs in recursive calls instead of sorted lists.
    pub bitmap: bool,
    pub max_depth: usize,
    pub deadline: Option<Instant>,
}

impl Default for AggOptions {
    fn default() -> Self {
        AggOptions {
            pruning: true,
            bitmap: true,
            max_depth: DEFAULT_MAX_DEPTH,
            deadline: None,
        }
    }
}

/// Call accounting. `pruned_calls + density_stops + explored_calls == total_calls`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    pub total_calls: u64,
    /// Calls past both the X-set prune and the immediate density check.
    pub explored_calls: u64,
    pub pruned_calls: u64,
    pub density_stops: u64,
    pub clusters: u64,
    /// Ordering and orientation of the input graph.
    pub setup: Duration,
    pub recursion: Duration,
}

impl RunStats {
    pub fn elapsed(&self) -> Duration {
        self.setup + self.recursion
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CallCounts {
    pub total: u64,
    pub explored_fraction: f64,
}

pub fn count_calls(stats: &RunStats) -> CallCounts {
    CallCounts {
        total: stats.total_calls,
        explored_fraction: if stats.total_calls == 0 {
            0.0
        } else {
            stats.explored_calls as f64 / stats.total_calls as f64
        },
    }
}

#[derive(Debug, Clone)]
pub struct Aggregator {
    pub clusters: Vec<Cluster>,
    pub rho: Rho,
    pub pruning: bool,
    pub bitmap: bool,
    pub stats: RunStats,
}

/// Receives clusters as they are produced; emitted clusters are final.
pub trait ClusterSink {
    fn emit(&mut self, cluster: Cluster) -> Result<()>;
}

impl ClusterSink for Vec<Cluster> {
    fn emit(&mut self, cluster: Cluster) -> Result<()> {
        self.push(cluster);
        Ok(())
    }
}

/// Adapts a closure into a [`ClusterSink`].
pub struct FnSink<F>(pub F);

impl<F: FnMut(Cluster) -> Result<()>> ClusterSink for FnSink<F> {
    fn emit(&mut self, cluster: Cluster) -> Result<()> {
        (self.0)(cluster)
    }
}

/// Computes a `rho`-dense aggregator of `g`: every maximal clique lies in
/// some cluster and every cluster has density at least `rho`.
pub fn clique_agg(g: &Graph, rho: Rho, opts: AggOptions) -> Result<Aggregator> {
    let mut clusters = Vec::new();
    let stats = clique_agg_into(g, rho, opts, &mut clusters)?;
    Ok(Aggregator {
        clusters,
        rho,
        pruning: opts.pruning,
        bitmap: opts.bitmap,
        stats,
    })
}

/// Streaming form of [`clique_agg`].
pub fn clique_agg_into<K: ClusterSink>(
    g: &Graph,
    rho: Rho,
    opts: AggOptions,
    sink: &mut K,
) -> Result<RunStats> {
    let mut run = Run {
        rho,
        opts,
        sink,
        stats: RunStats::default(),
        clique: Vec::new(),
    };
    run.top(g)?;
    Ok(run.stats)
}

/// Drops every cluster contained in another one (keeping the first of
/// duplicates), preserving the order of the survivors.
pub fn remove_subsets(clusters: &[Cluster]) -> Vec<Cluster> {
    let mut by_size: Vec<usize> = (0..clusters.len()).collect();
    by_size.sort_by(|&a, &b| clusters[b].len().cmp(&clusters[a].len()).then(a.cmp(&b)));
    let n = clusters
        .iter()
        .filter_map(|c| c.as_slice().last())
        .max()
        .map_or(0, |&v| v as usize + 1);
    let mut kept_by_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut keep = vec![false; clusters.len()];
    for &i in &by_size {
        let c = &clusters[i];
        let first = c.as_slice()[0] as usize;
        let covered = kept_by_vertex[first]
            .iter()
            .any(|&j| c.is_subset(&clusters[j]));
        if !covered {
            keep[i] = true;
            for &v in c.as_slice() {
                kept_by_vertex[v as usize].push(i);
            }
        }
    }
    clusters
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(c, _)| c.clone())
        .collect()
}

/// Degeneracy order and orientation of a recursion-level subgraph.
#[derive(Debug, Clone)]
pub struct LocalDirected<S> {
    pub order: Vec<usize>,
    pub position: Vec<usize>,
    /// Neighbors later in `order`.
    pub outs: Vec<S>,
    /// Neighbors earlier in `order`.
    pub ins: Vec<S>,
}

impl<S: VertexSet> LocalDirected<S> {
    pub fn new(g: &LocalGraph<S>) -> Self {
        let k = g.len();
        let order = g.degeneracy_order();
        let mut position = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut later = S::full(k);
        let mut outs = vec![S::empty(k); k];
        let mut ins = vec![S::empty(k); k];
        for &v in &order {
            later.remove(v);
            let out = g.row(v).intersection(&later);
            let mut earlier = g.row(v).clone();
            for w in out.iter() {
                earlier.remove(w);
            }
            outs[v] = out;
            ins[v] = earlier;
        }
        LocalDirected {
            order,
            position,
            outs,
            ins,
        }
    }
}

/// X-sets for the child call on `v`: every inherited set and the out-set of
/// every earlier neighbor of `v`, each intersected with `v`'s out-set and
/// renumbered into the child's id space. Empty sets are dropped unless the
/// child is empty, where an empty X-set is what prunes it.
pub fn rec_x<S: VertexSet>(xsets: &[S], v: usize, dg: &LocalDirected<S>) -> Vec<S> {
    let k = dg.order.len();
    let mut rank = vec![UNRANKED; k];
    for (child, u) in dg.outs[v].iter().enumerate() {
        rank[u] = child as u32;
    }
    rec_x_ranked(xsets, v, dg, &rank)
}

fn rec_x_ranked<S: VertexSet>(
    xsets: &[S],
    v: usize,
    dg: &LocalDirected<S>,
    rank: &[u32],
) -> Vec<S> {
    let out_v = &dg.outs[v];
    let child_len = out_v.len();
    let mut next = Vec::with_capacity(xsets.len() + dg.ins[v].len());
    // an inherited set X = N(x) ∩ V(G) carries over only when x ~ v,
    // which is exactly v ∈ X
    let inherited = xsets.iter().filter(|x| x.contains(v));
    let earlier = dg.ins[v].iter().map(|w| &dg.outs[w]);
    for x in inherited.chain(earlier) {
        let restricted = LocalGraph::<S>::translate(&x.intersection(out_v), child_len, rank);
        if child_len == 0 || !restricted.is_empty() {
            next.push(restricted);
        }
    }
    next
}

struct Run<'s, K> {
    rho: Rho,
    opts: AggOptions,
    sink: &'s mut K,
    stats: RunStats,
    /// Clique being grown, global ids.
    clique: Vec<Vertex>,
}

impl<K: ClusterSink> Run<'_, K> {
    fn emit(&mut self, rest: impl IntoIterator<Item = Vertex>) -> Result<()> {
        let mut vertices = self.clique.clone();
        vertices.extend(rest);
        self.stats.clusters += 1;
        self.sink.emit(Cluster::new(vertices))
    }

    fn enter(&mut self) -> Result<()> {
        self.stats.total_calls += 1;
        if self.clique.len() > self.opts.max_depth {
            return Err(Error::Resource(format!(
                "recursion depth {} exceeds the limit of {}",
                self.clique.len(),
                self.opts.max_depth
            )));
        }
        if let Some(deadline) = self.opts.deadline {
            if self.stats.total_calls.is_multiple_of(1024) && Instant::now() >= deadline {
                return Err(Error::Timeout {
                    calls: self.stats.total_calls,
                });
            }
        }
        Ok(())
    }

    fn top(&mut self, g: &Graph) -> Result<()> {
        let n = g.n();
        if n == 0 {
            return Ok(());
        }
        if let Some(deadline) = self.opts.deadline {
            if Instant::now() >= deadline {
                return Err(Error::Timeout { calls: 0 });
            }
        }
        self.enter()?;
        if self.rho.admits(g.m() as u64, n as u64) {
            self.stats.density_stops += 1;
            return self.emit(g.vertices());
        }
        self.stats.explored_calls += 1;

        let started = Instant::now();
        let ord = degeneracy_order(g);
        let dv = orient(g, &ord)?;
        self.stats.setup = started.elapsed();

        let started = Instant::now();
        let result = self.top_loop(&ord.order, &dv, g.m() as u64);
        self.stats.recursion = started.elapsed();
        result
    }

    fn top_loop(&mut self, order: &[Vertex], dv: &DirectedView, m: u64) -> Result<()> {
        let n = order.len();
        let mut rank = vec![UNRANKED; n];
        let mut rem_edges = m;
        for (i, &v) in order.iter().enumerate() {
            if self.opts.bitmap {
                self.descend_from_top::<BitSet>(v, dv, &mut rank)?;
            } else {
                self.descend_from_top::<SortedSet>(v, dv, &mut rank)?;
            }
            rem_edges -= dv.out(v).len() as u64;
            let rem_n = (n - i - 1) as u64;
            if rem_n > 0 && self.rho.admits(rem_edges, rem_n) {
                let suffix = &order[i + 1..];
                if self.opts.pruning {
                    let mut mark = vec![false; n];
                    for &x in suffix {
                        mark[x as usize] = true;
                    }
                    let dominated = order[..=i].iter().any(|&w| {
                        dv.out(w).iter().filter(|&&x| mark[x as usize]).count() == suffix.len()
                    });
                    if dominated {
                        return Ok(());
                    }
                }
                return self.emit(suffix.iter().copied());
            }
        }
        Ok(())
    }

    fn descend_from_top<S: VertexSet>(
        &mut self,
        v: Vertex,
        dv: &DirectedView,
        rank: &mut [u32],
    ) -> Result<()> {
        let out_v = dv.out(v);
        let k = out_v.len();
        for (i, &u) in out_v.iter().enumerate() {
            rank[u as usize] = i as u32;
        }
        let child = LocalGraph::<S>::from_global(out_v, |u| dv.out(u), rank);
        let mut xsets = Vec::new();
        if self.opts.pruning {
            for &w in dv.incoming(v) {
                let x = S::from_sorted(
                    k,
                    dv.out(w)
                        .iter()
                        .map(|&x| rank[x as usize])
                        .filter(|&r| r != UNRANKED)
                        .map(|r| r as usize),
                );
                if k == 0 || !x.is_empty() {
                    xsets.push(x);
                }
            }
        }
        for &u in out_v {
            rank[u as usize] = UNRANKED;
        }
        self.clique.push(v);
        let result = self.recurse(&child, &xsets);
        self.clique.pop();
        result
    }

    fn recurse<S: VertexSet>(&mut self, g: &LocalGraph<S>, xsets: &[S]) -> Result<()> {
        self.enter()?;
        let k = g.len();
        // X ⊆ V(G) always holds, so equality is a size check
        if self.opts.pruning && xsets.iter().any(|x| x.len() == k) {
            self.stats.pruned_calls += 1;
            return Ok(());
        }
        let c = self.clique.len() as u64;
        if self.rho.admits_extension(g.edge_count(), k as u64, c) {
            self.stats.density_stops += 1;
            return self.emit(g.idmap().iter().copied());
        }
        self.stats.explored_calls += 1;

        let dg = LocalDirected::new(g);
        let mut remaining = S::full(k);
        let mut rem_edges = g.edge_count();
        let mut rank = vec![UNRANKED; k];
        for (i, &v) in dg.order.iter().enumerate() {
            let out_v = &dg.outs[v];
            let child = g.induce(out_v, &mut rank);
            let child_x = if self.opts.pruning {
                rec_x_ranked(xsets, v, &dg, &rank)
            } else {
                Vec::new()
            };
            self.clique.push(g.global(v));
            let result = self.recurse(&child, &child_x);
            self.clique.pop();
            result?;

            remaining.remove(v);
            rem_edges -= out_v.len() as u64;
            let rem_k = (k - i - 1) as u64;
            if self.rho.admits_extension(rem_edges, rem_k, c) {
                if self.opts.pruning {
                    if xsets.iter().any(|x| remaining.is_subset(x)) {
                        return Ok(());
                    }
                    if dg.order[..=i]
                        .iter()
                        .any(|&w| remaining.is_subset(&dg.outs[w]))
                    {
                        return Ok(());
                    }
                }
                let rest: Vec<Vertex> = remaining.iter().map(|u| g.global(u)).collect();
                return self.emit(rest);
            }
        }
        Ok(())
    }
}

/// Runs one recursive call directly, for tests of the recursion in isolation.
#[cfg(test)]
pub(crate) fn clique_agg_rec<S: VertexSet>(
    g: &LocalGraph<S>,
    rho: Rho,
    clique: &[Vertex],
    xsets: &[S],
    opts: AggOptions,
) -> Result<(Vec<Cluster>, RunStats)> {
    let mut clusters = Vec::new();
    let mut run = Run {
        rho,
        opts,
        sink: &mut clusters,
        stats: RunStats::default(),
        clique: clique.to_vec(),
    };
    run.recurse(g, xsets)?;
    let stats = run.stats;
    Ok((clusters, stats))
}
