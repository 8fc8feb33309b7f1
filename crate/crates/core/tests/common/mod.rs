#![allow(dead_code)]

use std::collections::BTreeSet;

use clique_agg::graph::{parse_edge_list, IdMap};
use clique_agg::{Cluster, Graph, Vertex};

/// The 8-vertex, 15-edge example graph, vertices labeled 1..8.
pub const EXAMPLE: &str = "\
# example graph
1 7
7 6
6 1
1 2
6 5
2 8
7 2
7 5
2 5
5 8
8 3
3 2
5 4
4 3
8 4
";

pub const S1: [u64; 5] = [1, 2, 5, 6, 7];
pub const S2: [u64; 5] = [2, 3, 4, 5, 8];

pub fn example_graph() -> (Graph, IdMap) {
    parse_edge_list(EXAMPLE.as_bytes()).unwrap()
}

pub fn compact(ids: &IdMap, originals: &[u64]) -> Vec<Vertex> {
    originals.iter().map(|&o| ids.compact(o).unwrap()).collect()
}

pub fn as_set(clusters: &[Cluster]) -> BTreeSet<Vec<Vertex>> {
    clusters.iter().map(|c| c.as_slice().to_vec()).collect()
}

/// Exact density test by cross-multiplication, independent of the library.
pub fn dense_enough(g: &Graph, set: &[Vertex], num: u64, den: u64) -> bool {
    let k = set.len() as u64;
    if k <= 1 {
        return true;
    }
    let mut e = 0u64;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if g.neighbors(u).contains(&v) {
                e += 1;
            }
        }
    }
    2 * e * den >= num * k * (k - 1)
}

pub fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|v| b.contains(v))
}
