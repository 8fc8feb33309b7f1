//! Seeded graph families.
//!
//! Every generator is a pure function of its parameters and seed. Randomness
//! comes from ChaCha8 seeded with [`SeedableRng::seed_from_u64`].

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complete multipartite graph with `parts` independent triples; part `i`
/// is `{3i, 3i+1, 3i+2}`.
pub fn gen_moon_moser(parts: usize) -> Result<Graph> {
    if parts == 0 {
        return Err(Error::Argument("moon-moser needs at least one part".into()));
    }
    let n = 3 * parts;
    let n32 = checked_n(n)?;
    Graph::from_edges(
        n,
        (0..n32).flat_map(|u| {
            (u + 1..n32)
                .filter(move |v| v / 3 != u / 3)
                .map(move |v| (u, v))
        }),
    )
}

fn checked_n(n: usize) -> Result<Vertex> {
    Vertex::try_from(n).map_err(|_| Error::Argument(format!("{n} vertices exceed the id range")))
}

/// Erdős–Rényi `G(n, p)`: pairs visited in lexicographic order, each kept
/// when a uniform draw in `[0, 1)` is below `p`.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Argument(format!(
            "edge probability {p} is not in [0, 1]"
        )));
    }
    let n32 = checked_n(n)?;
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n32 {
        for v in u + 1..n32 {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Shape of the random multipartite family for a requested size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipartiteShape {
    pub n: usize,
    pub parts: usize,
    pub p: f64,
}

impl MultipartiteShape {
    pub fn part_of(&self, v: Vertex) -> usize {
        v as usize / (self.n / self.parts)
    }
}

pub fn theorem4_shape(n: usize) -> Result<MultipartiteShape> {
    if n < 16 {
        return Err(Error::Argument(format!(
            "random multipartite family needs n >= 16, got {n}"
        )));
    }
    let log_n = (n as f64).log2();
    let parts = ((0.5 * log_n / log_n.log2()).round() as usize).max(2);
    Ok(MultipartiteShape {
        n: n - n % parts,
        parts,
        p: 1.0 / log_n,
    })
}

/// `k` independent parts of equal size, cross-part pairs joined with
/// probability `1 / log2 n`. `n` is rounded down to a multiple of `k`.
pub fn gen_theorem4(n: usize, seed: u64) -> Result<Graph> {
    let shape = theorem4_shape(n)?;
    let n32 = checked_n(shape.n)?;
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n32 {
        for v in u + 1..n32 {
            if shape.part_of(u) != shape.part_of(v) && rng.gen::<f64>() < shape.p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(shape.n, edges)
}

/// Greedy graph with no cycle of length at most 8 and `t·n` edges.
///
/// Each step takes a minimum-degree vertex `v` and joins it to a
/// minimum-degree vertex at distance at least 8 from `v`. Ties in both
/// choices go to the vertex with the smallest seeded priority, so with a
/// fixed seed the construction is the smallest-id rule on a relabeled
/// vertex set.
pub fn gen_girth8(n: usize, t: usize, seed: u64) -> Result<Graph> {
    if t == 0 || (t as f64) > (n as f64).powf(0.1) {
        return Err(Error::Argument(format!(
            "girth-8 construction needs 1 <= t <= n^0.1, got t = {t}, n = {n}"
        )));
    }
    let n32 = checked_n(n)?;
    let mut priority: Vec<Vertex> = (0..n32).collect();
    priority.shuffle(&mut rng(seed));

    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut dist = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    let mut touched = Vec::new();
    let key = |adj: &[Vec<Vertex>], v: usize| (adj[v].len(), priority[v]);

    for step in 0..t * n {
        let v = (0..n).min_by_key(|&u| key(&adj, u)).expect("n >= 1");

        // mark everything within distance 7 of v
        dist[v] = 0;
        touched.push(v);
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            if dist[u] == 7 {
                continue;
            }
            for &w in &adj[u] {
                let w = w as usize;
                if dist[w] == u8::MAX {
                    dist[w] = dist[u] + 1;
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }
        let target = (0..n)
            .filter(|&u| dist[u] == u8::MAX)
            .min_by_key(|&u| key(&adj, u));
        for u in touched.drain(..) {
            dist[u] = u8::MAX;
        }
        let Some(w) = target else {
            return Err(Error::Generation(format!(
                "no vertex at distance >= 8 from {v} at step {step} of {}; try a larger n",
                t * n
            )));
        };
        adj[v].push(w as Vertex);
        adj[w].push(v as Vertex);
    }

    Graph::from_edges(
        n,
        adj.iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&w| (u as Vertex, w))),
    )
}

/// Pairs joined by a path of length exactly 2. Edges of `g` are kept only
/// when they also close such a path.
pub fn square(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for w in g.vertices() {
        let nbrs = g.neighbors(w);
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(g.n(), edges).expect("square keeps the vertex set")
}

/// `count` Moon–Moser blocks of `parts` triples each. Block `i > 0` gets
/// `bridges` edges to uniformly chosen vertices of uniformly chosen earlier
/// blocks, so the result is connected.
pub fn gen_gadgets(count: usize, parts: usize, bridges: usize, seed: u64) -> Result<Graph> {
    if count == 0 {
        return Err(Error::Argument(
            "gadget union needs at least one gadget".into(),
        ));
    }
    let gadget = gen_moon_moser(parts)?;
    let size = gadget.n();
    let n = count
        .checked_mul(size)
        .ok_or_else(|| Error::Argument("gadget union is too large".into()))?;
    checked_n(n)?;
    let mut rng = rng(seed);
    let mut edges = Vec::with_capacity(count * (gadget.m() + bridges));
    for i in 0..count {
        let base = (i * size) as Vertex;
        edges.extend(gadget.edges().map(|(u, v)| (base + u, base + v)));
        if i == 0 {
            continue;
        }
        for _ in 0..bridges {
            let j = rng.gen_range(0..i);
            let u = base + rng.gen_range(0..size) as Vertex;
            let w = (j * size + rng.gen_range(0..size)) as Vertex;
            edges.push((u, w));
        }
    }
    Graph::from_edges(n, edges)
}

/// Length of a shortest cycle, `None` for forests. BFS from every vertex.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![Vertex::MAX; n];
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s as usize] = 0;
        parent[s as usize] = Vertex::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if best.is_some_and(|b| 2 * du + 1 >= b) {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w as usize] == usize::MAX {
                    dist[w as usize] = du + 1;
                    parent[w as usize] = u;
                    queue.push_back(w);
                } else if parent[u as usize] != w {
                    let cycle = du + dist[w as usize] + 1;
                    best = Some(best.map_or(cycle, |b| b.min(cycle)));
                }
            }
        }
    }
    best
}
