//! The `cliqueagg` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 timeout, 3 resource
//! limit, 4 failed validation.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;

use crate::aggregator::{clique_agg, count_calls, remove_subsets, AggOptions, Cluster};
use crate::error::{Error, Result};
use crate::generators;
use crate::graph::{load_edge_list, write_edge_list, Graph, IdMap, Rho, Vertex};
use crate::mce::{for_each_maximal_clique, CliqueList, DEFAULT_CLIQUE_CAP};
use crate::metrics::{self, CoverageMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_TIMEOUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

/// Five hours.
pub const DEFAULT_TIMEOUT_S: u64 = 18_000;

/// Minimum cluster size for the reported average density.
const AVG_DENSITY_MIN_SIZE: usize = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cliqueagg",
    version,
    about = "Dense clique aggregators and maximal clique tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a rho-dense clique aggregator.
    Aggregate(AggregateArgs),
    /// Enumerate maximal cliques.
    Cliques(CliquesArgs),
    /// Check a cluster file against the aggregator definition.
    Validate(ValidateArgs),
    /// Fraction of maximal cliques covered by a clustering.
    Coverage(CoverageArgs),
    /// Generate a graph family.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a grid of aggregations and emit one JSON line per cell.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Switch {
    On,
    Off,
}

impl Switch {
    fn on(self) -> bool {
        self == Switch::On
    }
}

fn parse_rho(s: &str) -> std::result::Result<Rho, String> {
    s.parse::<Rho>().map_err(|e| e.to_string())
}

fn parse_timeout(s: &str) -> std::result::Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("timeout must be positive".into()),
        Ok(t) => Ok(t),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
struct AggregateArgs {
    input: PathBuf,
    #[arg(long, value_parser = parse_rho)]
    rho: Rho,
    #[arg(long, value_enum, default_value = "on")]
    pruning: Switch,
    #[arg(long, value_enum, default_value = "on")]
    bitmap: Switch,
    /// Cluster file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stats JSON file.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TIMEOUT_S, value_parser = parse_timeout)]
    timeout_s: u64,
    /// Drop clusters contained in other clusters.
    #[arg(long)]
    dedupe_subsets: bool,
}

#[derive(Debug, Args)]
struct CliquesArgs {
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TIMEOUT_S, value_parser = parse_timeout)]
    timeout_s: u64,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    input: PathBuf,
    #[arg(long, value_parser = parse_rho)]
    rho: Rho,
    #[arg(long)]
    clusters: PathBuf,
    /// Maximal cliques of the input; enumerated when omitted.
    #[arg(long)]
    cliques: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Partial,
}

#[derive(Debug, Args)]
struct CoverageArgs {
    input: PathBuf,
    #[arg(long)]
    clusters: PathBuf,
    #[arg(long)]
    cliques: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "full")]
    mode: Mode,
    /// Fraction of a clique one cluster must hold in partial mode.
    #[arg(long, value_parser = parse_rho, default_value = "0.5")]
    theta: Rho,
}

#[derive(Debug, Args)]
struct GenOut {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Complete multipartite graph with parts of size 3.
    Moonmoser {
        #[arg(long)]
        parts: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Random multipartite graph with k ~ log n / (2 log log n) parts.
    Theorem4 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Greedy graph without cycles of length at most 8.
    Girth8 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Square of an input graph: endpoints of 2-paths joined.
    Square {
        input: PathBuf,
        #[command(flatten)]
        out: GenOut,
    },
    /// Erdős–Rényi G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Moon–Moser blocks glued by random bridge edges.
    Gadgets {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        parts: usize,
        #[arg(long, default_value_t = 1)]
        bridges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', required = true)]
    rho: Vec<String>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "on")]
    pruning: Vec<Switch>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "on")]
    bitmap: Vec<Switch>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Per-cell limit.
    #[arg(long, default_value_t = DEFAULT_TIMEOUT_S, value_parser = parse_timeout)]
    timeout_s: u64,
    #[arg(long)]
    dedupe_subsets: bool,
    /// JSON-lines file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Aggregate(a) => cmd_aggregate(a),
        Command::Cliques(a) => cmd_cliques(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Coverage(a) => cmd_coverage(a),
        Command::Gen(g) => cmd_gen(g),
        Command::Bench(a) => cmd_bench(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("cliqueagg: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Timeout { .. } => EXIT_TIMEOUT,
        Error::Resource(_) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_sets<'a, W, I>(out: &mut W, sets: I, ids: &IdMap) -> Result<()>
where
    W: Write + ?Sized,
    I: IntoIterator<Item = &'a [Vertex]>,
{
    for set in sets {
        let mut first = true;
        for &v in set {
            if !first {
                out.write_all(b" ")?;
            }
            write!(out, "{}", ids.original(v))?;
            first = false;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// One set per non-blank line, original ids separated by whitespace.
pub fn read_sets(path: &Path, ids: &IdMap) -> Result<Vec<Vec<Vertex>>> {
    let reader = BufReader::new(File::open(path)?);
    let mut sets = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut set = Vec::new();
        for token in line.split_whitespace() {
            let original: u64 = token.parse().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("{}: bad vertex id {token:?}", path.display()),
            })?;
            let v = ids.compact(original).ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("{}: vertex {original} is not in the graph", path.display()),
            })?;
            set.push(v);
        }
        set.sort_unstable();
        set.dedup();
        sets.push(set);
    }
    Ok(sets)
}

fn read_clusters(path: &Path, ids: &IdMap) -> Result<Vec<Cluster>> {
    Ok(read_sets(path, ids)?
        .into_iter()
        .map(Cluster::new)
        .collect())
}

fn load_or_enumerate(g: &Graph, path: Option<&Path>, ids: &IdMap) -> Result<CliqueList> {
    match path {
        Some(p) => Ok(CliqueList::from_sets(read_sets(p, ids)?)),
        None => crate::mce::enumerate_maximal_cliques(g),
    }
}

fn show(set: &[Vertex], ids: &IdMap) -> String {
    metrics::describe(set, |v| ids.original(v))
}

/// Keys and order of the stats object are fixed.
#[derive(Debug, Serialize)]
struct StatsJson {
    rho: f64,
    pruning: bool,
    bitmap: bool,
    clusters: usize,
    total_calls: u64,
    explored_calls: u64,
    wall_ms: f64,
    max_membership: u64,
    avg_density: f64,
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn cmd_aggregate(a: AggregateArgs) -> Result<i32> {
    let (g, ids) = load_edge_list(&a.input)?;
    let opts = AggOptions {
        pruning: a.pruning.on(),
        bitmap: a.bitmap.on(),
        deadline: Some(Instant::now() + Duration::from_secs(a.timeout_s)),
        ..AggOptions::default()
    };
    let mut agg = clique_agg(&g, a.rho, opts)?;
    if a.dedupe_subsets {
        agg.clusters = remove_subsets(&agg.clusters);
    }

    let mut out = open_out(a.out.as_deref())?;
    write_sets(&mut out, agg.clusters.iter().map(Cluster::as_slice), &ids)?;
    out.flush()?;

    if let Some(path) = &a.stats {
        let stats = StatsJson {
            rho: a.rho.to_f64(),
            pruning: agg.pruning,
            bitmap: agg.bitmap,
            clusters: agg.clusters.len(),
            total_calls: agg.stats.total_calls,
            explored_calls: agg.stats.explored_calls,
            wall_ms: millis(agg.stats.elapsed()),
            max_membership: metrics::max_membership(&agg.clusters, g.n())?,
            avg_density: metrics::avg_cluster_density(&g, &agg.clusters, AVG_DENSITY_MIN_SIZE)?
                .to_f64(),
        };
        let mut f = BufWriter::new(File::create(path)?);
        serde_json::to_writer(&mut f, &stats).map_err(io::Error::from)?;
        f.write_all(b"\n")?;
        f.flush()?;
    }
    Ok(EXIT_OK)
}

fn cmd_cliques(a: CliquesArgs) -> Result<i32> {
    let (g, ids) = load_edge_list(&a.input)?;
    let deadline = Instant::now() + Duration::from_secs(a.timeout_s);
    let mut cliques = Vec::new();
    for_each_maximal_clique(&g, DEFAULT_CLIQUE_CAP, |c| {
        cliques.push(c.to_vec());
        if cliques.len().is_multiple_of(1024) && Instant::now() >= deadline {
            return Err(Error::Timeout {
                calls: cliques.len() as u64,
            });
        }
        Ok(())
    })?;
    let cliques = CliqueList::from_sets(cliques);
    let mut out = open_out(a.out.as_deref())?;
    write_sets(&mut out, cliques.iter(), &ids)?;
    out.flush()?;
    Ok(EXIT_OK)
}

/// Witness lines printed for at most this many failures of each kind.
const MAX_WITNESSES: usize = 20;

fn cmd_validate(a: ValidateArgs) -> Result<i32> {
    let (g, ids) = load_edge_list(&a.input)?;
    let clusters = read_clusters(&a.clusters, &ids)?;
    let oracle = load_or_enumerate(&g, a.cliques.as_deref(), &ids)?;
    let report = metrics::validate_aggregator(&g, a.rho, &clusters, &oracle)?;

    let mut stdout = io::stdout().lock();
    let sparse: Vec<usize> = (0..clusters.len())
        .filter(|&i| !report.density_ok[i])
        .collect();
    for &i in sparse.iter().take(MAX_WITNESSES) {
        let d = report.densities[i];
        writeln!(
            stdout,
            "cluster {} {} density {} < {}",
            i + 1,
            show(clusters[i].as_slice(), &ids),
            *d.numer() as f64 / *d.denom() as f64,
            a.rho
        )?;
    }
    let uncovered: Vec<&[Vertex]> = oracle
        .iter()
        .zip(&report.covered)
        .filter(|(_, &ok)| !ok)
        .map(|(c, _)| c)
        .collect();
    for c in uncovered.iter().take(MAX_WITNESSES) {
        writeln!(stdout, "uncovered clique {}", show(c, &ids))?;
    }
    if report.is_valid() {
        writeln!(
            stdout,
            "valid: {} clusters cover {} maximal cliques at rho {}{}",
            clusters.len(),
            oracle.len(),
            a.rho,
            if report.inclusion_maximal {
                ""
            } else {
                " (not inclusion-maximal)"
            }
        )?;
        Ok(EXIT_OK)
    } else {
        writeln!(
            stdout,
            "invalid: {} sparse clusters, {} uncovered cliques",
            sparse.len(),
            uncovered.len()
        )?;
        Ok(EXIT_INVALID)
    }
}

#[derive(Debug, Serialize)]
struct CoverageJson {
    mode: &'static str,
    theta: Option<f64>,
    covered: usize,
    total: usize,
    fraction: f64,
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn cmd_coverage(a: CoverageArgs) -> Result<i32> {
    let (g, ids) = load_edge_list(&a.input)?;
    let clustering = read_clusters(&a.clusters, &ids)?;
    let cliques = load_or_enumerate(&g, a.cliques.as_deref(), &ids)?;
    let (mode, name, theta) = match a.mode {
        Mode::Full => (CoverageMode::Full, "full", None),
        Mode::Partial => (
            CoverageMode::partial(a.theta.as_ratio())?,
            "partial",
            Some(a.theta.to_f64()),
        ),
    };
    let cov = metrics::clustering_coverage(&g, &clustering, &cliques, mode)?;
    let report = CoverageJson {
        mode: name,
        theta,
        covered: cov.covered,
        total: cov.total,
        fraction: ratio_f64(cov.fraction()),
    };
    println!(
        "{}",
        serde_json::to_string(&report).map_err(io::Error::from)?
    );
    Ok(EXIT_OK)
}

fn cmd_gen(cmd: GenCommand) -> Result<i32> {
    let (g, ids, out) = match cmd {
        GenCommand::Moonmoser { parts, out } => (generators::gen_moon_moser(parts)?, None, out),
        GenCommand::Theorem4 { n, seed, out } => (generators::gen_theorem4(n, seed)?, None, out),
        GenCommand::Girth8 { n, t, seed, out } => (generators::gen_girth8(n, t, seed)?, None, out),
        GenCommand::Square { input, out } => {
            let (h, ids) = load_edge_list(&input)?;
            (generators::square(&h), Some(ids), out)
        }
        GenCommand::Er { n, p, seed, out } => (generators::gen_er(n, p, seed)?, None, out),
        GenCommand::Gadgets {
            count,
            parts,
            bridges,
            seed,
            out,
        } => (
            generators::gen_gadgets(count, parts, bridges, seed)?,
            None,
            out,
        ),
    };
    let ids = ids.unwrap_or_else(|| IdMap::identity(g.n()));
    let mut w = open_out(out.out.as_deref())?;
    write_edge_list(&g, &ids, &mut w)?;
    w.flush()?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
struct BenchRecord {
    graph: String,
    rho: String,
    pruning: Switch,
    bitmap: Switch,
    dedupe_subsets: bool,
    timeout_s: u64,
    status: &'static str,
    error: Option<String>,
    wall_ms: Option<f64>,
    setup_ms: Option<f64>,
    recursion_ms: Option<f64>,
    clusters: Option<usize>,
    total_calls: Option<u64>,
    explored_calls: Option<u64>,
    explored_fraction: Option<f64>,
    max_membership: Option<u64>,
    avg_density: Option<f64>,
}

struct Cell {
    graph: usize,
    rho: Rho,
    rho_text: String,
    pruning: Switch,
    bitmap: Switch,
}

fn run_cell(g: &Graph, name: &str, cell: &Cell, a: &BenchArgs) -> BenchRecord {
    let mut rec = BenchRecord {
        graph: name.to_string(),
        rho: cell.rho_text.clone(),
        pruning: cell.pruning,
        bitmap: cell.bitmap,
        dedupe_subsets: a.dedupe_subsets,
        timeout_s: a.timeout_s,
        status: "ok",
        error: None,
        wall_ms: None,
        setup_ms: None,
        recursion_ms: None,
        clusters: None,
        total_calls: None,
        explored_calls: None,
        explored_fraction: None,
        max_membership: None,
        avg_density: None,
    };
    let opts = AggOptions {
        pruning: cell.pruning.on(),
        bitmap: cell.bitmap.on(),
        deadline: Some(Instant::now() + Duration::from_secs(a.timeout_s)),
        ..AggOptions::default()
    };
    let measured = clique_agg(g, cell.rho, opts).and_then(|mut agg| {
        if a.dedupe_subsets {
            agg.clusters = remove_subsets(&agg.clusters);
        }
        let mm = metrics::max_membership(&agg.clusters, g.n())?;
        let avg = metrics::avg_cluster_density(g, &agg.clusters, AVG_DENSITY_MIN_SIZE)?;
        Ok((agg, mm, avg.to_f64()))
    });
    match measured {
        Ok((agg, mm, avg)) => {
            let calls = count_calls(&agg.stats);
            rec.wall_ms = Some(millis(agg.stats.elapsed()));
            rec.setup_ms = Some(millis(agg.stats.setup));
            rec.recursion_ms = Some(millis(agg.stats.recursion));
            rec.clusters = Some(agg.clusters.len());
            rec.total_calls = Some(calls.total);
            rec.explored_calls = Some(agg.stats.explored_calls);
            rec.explored_fraction = Some(calls.explored_fraction);
            rec.max_membership = Some(mm);
            rec.avg_density = Some(avg);
        }
        Err(e) => {
            rec.status = match e {
                Error::Timeout { .. } => "timeout",
                Error::Resource(_) => "resource",
                _ => "error",
            };
            rec.error = Some(e.to_string());
        }
    }
    rec
}

fn cmd_bench(a: BenchArgs) -> Result<i32> {
    let mut rhos = Vec::with_capacity(a.rho.len());
    for text in &a.rho {
        rhos.push((text.parse::<Rho>()?, text.clone()));
    }
    if a.workers == 0 {
        return Err(Error::Argument("--workers must be at least 1".into()));
    }
    let mut graphs = Vec::with_capacity(a.inputs.len());
    for path in &a.inputs {
        graphs.push((load_edge_list(path)?.0, path.display().to_string()));
    }

    let mut cells = Vec::new();
    for graph in 0..graphs.len() {
        for (rho, rho_text) in &rhos {
            for &pruning in &a.pruning {
                for &bitmap in &a.bitmap {
                    cells.push(Cell {
                        graph,
                        rho: *rho,
                        rho_text: rho_text.clone(),
                        pruning,
                        bitmap,
                    });
                }
            }
        }
    }

    let mut out = open_out(a.out.as_deref())?;
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, BenchRecord)>();
    let written = std::thread::scope(|scope| -> Result<usize> {
        for _ in 0..a.workers.min(cells.len().max(1)) {
            let tx = tx.clone();
            let (next, cells, graphs, a) = (&next, &cells, &graphs, &a);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(cell) = cells.get(i) else { break };
                let (g, name) = &graphs[cell.graph];
                if tx.send((i, run_cell(g, name, cell, a))).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        // emit in cell order as soon as each prefix is complete
        let mut pending: Vec<Option<BenchRecord>> = vec![None; cells.len()];
        let mut emitted = 0;
        for (i, rec) in rx {
            pending[i] = Some(rec);
            while let Some(rec) = pending.get_mut(emitted).and_then(Option::take) {
                serde_json::to_writer(&mut out, &rec).map_err(io::Error::from)?;
                out.write_all(b"\n")?;
                out.flush()?;
                emitted += 1;
            }
        }
        Ok(emitted)
    })?;
    debug_assert_eq!(written, cells.len());
    Ok(EXIT_OK)
}
