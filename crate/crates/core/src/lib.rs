//! Dense clique aggregators.
//!
//! A `rho`-dense aggregator of a graph is a collection of vertex clusters,
//! each with edge density at least `rho`, such that every maximal clique lies
//! inside some cluster. At `rho = 1` the clusters are exactly the maximal
//! cliques; lower thresholds trade exactness for far fewer, larger clusters.
//!
//! - [`graph`]: ingestion, degeneracy ordering, orientation, bit-matrix subgraphs
//! - [`aggregator`]: the recursive aggregator
//! - [`mce`]: maximal clique enumeration, plus a brute-force oracle
//! - [`metrics`]: validation and membership/coverage/density metrics
//! - [`generators`]: seeded graph families
//! - [`cli`]: the `cliqueagg` command-line front end

pub mod aggregator;
pub mod cli;
pub mod error;
pub mod generators;
pub mod graph;
pub mod mce;
pub mod metrics;

pub use aggregator::{clique_agg, AggOptions, Aggregator, Cluster, RunStats};
pub use error::{Error, Result};
pub use graph::{Graph, Rho, Vertex};
pub use mce::{brute_force_maximal_cliques, enumerate_maximal_cliques, CliqueList};
