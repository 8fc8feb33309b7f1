//! Aggregator validation and evaluation metrics.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::aggregator::{is_sorted_subset, Cluster};
use crate::error::{Error, Result};
use crate::graph::{density, Graph, Rho, Vertex};
use crate::mce::CliqueList;

/// Outcome of checking a cluster list against the aggregator definition.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// Per oracle clique: contained in some cluster.
    pub covered: Vec<bool>,
    /// Per cluster: density at least `rho`.
    pub density_ok: Vec<bool>,
    pub densities: Vec<Ratio<u64>>,
    pub inclusion_maximal: bool,
    pub first_uncovered: Option<usize>,
    pub first_sparse: Option<usize>,
    /// `(inner, outer)` cluster indices with `inner ⊆ outer`.
    pub first_nested: Option<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.first_uncovered.is_none() && self.first_sparse.is_none()
    }
}

/// Clusters containing each vertex.
fn membership_index(clusters: &[Cluster], n: usize) -> Result<Vec<Vec<usize>>> {
    let mut index = vec![Vec::new(); n];
    for (i, c) in clusters.iter().enumerate() {
        for &v in c.as_slice() {
            index
                .get_mut(v as usize)
                .ok_or_else(|| {
                    Error::Contract(format!("cluster {i} has vertex {v} outside [0, {n})"))
                })?
                .push(i);
        }
    }
    Ok(index)
}

pub fn cluster_density(g: &Graph, cluster: &Cluster) -> Result<Ratio<u64>> {
    let edges = g.induced_edge_count(cluster.as_slice())?;
    density(edges, cluster.len() as u64)
}

pub fn validate_aggregator(
    g: &Graph,
    rho: Rho,
    clusters: &[Cluster],
    oracle: &CliqueList,
) -> Result<ValidationReport> {
    let index = membership_index(clusters, g.n())?;

    let covered: Vec<bool> = oracle
        .iter()
        .map(|clique| {
            let Some(&pivot) = clique
                .iter()
                .min_by_key(|&&v| index.get(v as usize).map_or(0, Vec::len))
            else {
                return true;
            };
            index.get(pivot as usize).is_some_and(|holders| {
                holders
                    .iter()
                    .any(|&i| is_sorted_subset(clique, clusters[i].as_slice()))
            })
        })
        .collect();

    let mut densities = Vec::with_capacity(clusters.len());
    let mut density_ok = Vec::with_capacity(clusters.len());
    for c in clusters {
        let d = cluster_density(g, c)?;
        density_ok.push(d >= rho.as_ratio());
        densities.push(d);
    }

    let first_nested = clusters.iter().enumerate().find_map(|(i, c)| {
        index[c.as_slice()[0] as usize]
            .iter()
            .find(|&&j| j != i && c.is_subset(&clusters[j]))
            .map(|&j| (i, j))
    });

    Ok(ValidationReport {
        first_uncovered: covered.iter().position(|&c| !c),
        first_sparse: density_ok.iter().position(|&d| !d),
        inclusion_maximal: first_nested.is_none(),
        first_nested,
        covered,
        density_ok,
        densities,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipHistogram {
    /// `counts[x]`: vertices in exactly `x` clusters.
    pub counts: Vec<u64>,
    /// Fraction of vertices in at most `x` clusters.
    pub cumulative: Vec<f64>,
}

impl MembershipHistogram {
    pub fn max_membership(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }
}

fn memberships(clusters: &[Cluster], n: usize) -> Result<Vec<u64>> {
    let mut per_vertex = vec![0u64; n];
    for (i, c) in clusters.iter().enumerate() {
        for &v in c.as_slice() {
            *per_vertex.get_mut(v as usize).ok_or_else(|| {
                Error::Contract(format!("cluster {i} has vertex {v} outside [0, {n})"))
            })? += 1;
        }
    }
    Ok(per_vertex)
}

pub fn membership_histogram(clusters: &[Cluster], n: usize) -> Result<MembershipHistogram> {
    let per_vertex = memberships(clusters, n)?;
    let top = per_vertex.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; top + 1];
    for m in per_vertex {
        counts[m as usize] += 1;
    }
    let mut running = 0u64;
    let cumulative = counts
        .iter()
        .map(|&c| {
            running += c;
            if n == 0 {
                1.0
            } else {
                running as f64 / n as f64
            }
        })
        .collect();
    Ok(MembershipHistogram { counts, cumulative })
}

/// Largest number of clusters sharing one vertex; 0 without clusters.
pub fn max_membership(clusters: &[Cluster], n: usize) -> Result<u64> {
    Ok(memberships(clusters, n)?.into_iter().max().unwrap_or(0))
}

fn cliques_as_clusters(cliques: &CliqueList) -> Vec<Cluster> {
    cliques.iter().map(|c| Cluster::new(c.to_vec())).collect()
}

/// `max_membership(clusters) / max_membership(cliques)`.
pub fn relative_max_membership(
    clusters: &[Cluster],
    cliques: &CliqueList,
    n: usize,
) -> Result<Ratio<u64>> {
    if cliques.is_empty() {
        return Err(Error::Argument(
            "relative membership needs a non-empty clique list".into(),
        ));
    }
    let base = max_membership(&cliques_as_clusters(cliques), n)?;
    Ok(Ratio::new(max_membership(clusters, n)?, base))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageMode {
    /// The clique lies entirely inside one cluster.
    Full,
    /// Some cluster holds at least a `theta` fraction of the clique.
    Partial(Ratio<u64>),
}

impl CoverageMode {
    pub fn partial(theta: Ratio<u64>) -> Result<CoverageMode> {
        if theta.is_zero() || theta > Ratio::from_integer(1) {
            return Err(Error::Argument(format!("theta {theta} is not in (0, 1]")));
        }
        Ok(CoverageMode::Partial(theta))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub covered: usize,
    pub total: usize,
}

impl Coverage {
    /// 1 when there is nothing to cover.
    pub fn fraction(&self) -> Ratio<u64> {
        if self.total == 0 {
            Ratio::from_integer(1)
        } else {
            Ratio::new(self.covered as u64, self.total as u64)
        }
    }
}

pub fn clustering_coverage(
    g: &Graph,
    clustering: &[Cluster],
    cliques: &CliqueList,
    mode: CoverageMode,
) -> Result<Coverage> {
    let index = membership_index(clustering, g.n())?;
    let mut hits = vec![0usize; clustering.len()];
    let mut touched = Vec::new();
    let mut covered = 0;
    for clique in cliques.iter() {
        for &v in clique {
            for &i in index.get(v as usize).map_or(&[][..], Vec::as_slice) {
                if hits[i] == 0 {
                    touched.push(i);
                }
                hits[i] += 1;
            }
        }
        let best = touched.iter().map(|&i| hits[i]).max().unwrap_or(0) as u64;
        let size = clique.len() as u64;
        let ok = match mode {
            CoverageMode::Full => best == size,
            CoverageMode::Partial(theta) => best * theta.denom() >= theta.numer() * size,
        };
        if ok {
            covered += 1;
        }
        for i in touched.drain(..) {
            hits[i] = 0;
        }
    }
    Ok(Coverage {
        covered,
        total: cliques.len(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AvgDensity {
    pub mean: BigRational,
    pub qualifying: usize,
    /// No cluster met the size bound; `mean` is reported as 1.
    pub empty: bool,
}

impl AvgDensity {
    pub fn to_f64(&self) -> f64 {
        self.mean.to_f64().unwrap_or(f64::NAN)
    }
}

/// Arithmetic mean of exact densities over clusters with at least `min_size` vertices.
pub fn avg_cluster_density(g: &Graph, clusters: &[Cluster], min_size: usize) -> Result<AvgDensity> {
    if min_size == 0 {
        return Err(Error::Argument("min_size must be at least 1".into()));
    }
    let mut sum = BigRational::zero();
    let mut qualifying = 0usize;
    for c in clusters.iter().filter(|c| c.len() >= min_size) {
        let d = cluster_density(g, c)?;
        sum += BigRational::new(BigInt::from(*d.numer()), BigInt::from(*d.denom()));
        qualifying += 1;
    }
    if qualifying == 0 {
        return Ok(AvgDensity {
            mean: BigRational::from_integer(1.into()),
            qualifying,
            empty: true,
        });
    }
    Ok(AvgDensity {
        mean: sum / BigRational::from_integer(BigInt::from(qualifying)),
        qualifying,
        empty: false,
    })
}

/// Sorted vertex list of clusters, for diagnostics.
pub fn describe(cluster: &[Vertex], names: impl Fn(Vertex) -> u64) -> String {
    let ids: Vec<String> = cluster.iter().map(|&v| names(v).to_string()).collect();
    format!("{{{}}}", ids.join(" "))
}
