//! Command-line front end: `preprocess`, `query`, `score`, `gen`, `perturb`,
//! `extract`, and `bench` subcommands over the library pipeline.
//!
//! Exit codes: 0 success, 2 malformed input (parse errors, bad arguments,
//! corrupt index files), 3 I/O failure, 4 index/parameter mismatch,
//! 5 disconnected query graph. Wall-clock timings and warnings go to stderr;
//! stdout and output files are deterministic for fixed inputs and seeds.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::graph::{induced_subgraph, parse_edge_list, Graph, IdMap, VertexSet};
use crate::graphlet::{kernel, Catalog};
use crate::kdtree::KdIndex;
use crate::label::{label_all, LabelParams, LabelSet};
use crate::matcher::MatchParams;
use crate::pipeline::{run_query, BenchConfig, RunConfig, SuiteKind};
use crate::synth::{gnp, random_connected_subgraph, remove_edges};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "graphsim",
    version,
    about = "Subgraph similarity search in large graphs via graphlet kernels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute vertex labels for a target graph and write an index file
    Preprocess {
        /// Edge-list file of the target graph
        #[arg(long)]
        graph: PathBuf,
        /// BFS depth t for neighborhood labels
        #[arg(long, default_value_t = 2)]
        depth: u32,
        /// Graphlet size l (3, 4, or 5)
        #[arg(long = "graphlet-size", default_value_t = 4)]
        graphlet_size: u8,
        /// Labeling worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Output index file
        #[arg(long)]
        out: PathBuf,
    },
    /// Search a query graph against a preprocessed target
    Query {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        query: PathBuf,
        /// Nearest neighbors per query vertex
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Seed-weight scale factor
        #[arg(long, default_value_t = 0.3)]
        alpha: f64,
        /// Growth-phase similarity threshold
        #[arg(long, default_value_t = 0.4)]
        h1: f64,
        /// Completion-phase Jaccard threshold
        #[arg(long, default_value_t = 0.95)]
        h2: f64,
        /// Expected BFS depth of the index (checked when given)
        #[arg(long)]
        depth: Option<u32>,
        /// Expected graphlet size of the index (checked when given)
        #[arg(long = "graphlet-size")]
        graphlet_size: Option<u8>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Write the match here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Graphlet kernel between a query graph and a listed target vertex set
    Score {
        #[arg(long)]
        graph: PathBuf,
        /// File with one target vertex id per line
        #[arg(long)]
        vertices: PathBuf,
        #[arg(long)]
        query: PathBuf,
        #[arg(long = "graphlet-size", default_value_t = 4)]
        graphlet_size: u8,
    },
    /// Generate synthetic graphs
    Gen {
        #[command(subcommand)]
        model: GenModel,
    },
    /// Randomly delete a fraction of edges
    Perturb {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "remove-frac")]
        remove_frac: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract a random connected induced subgraph, writing its vertex ids
    Extract {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a benchmark suite and print its report
    Bench {
        /// planted | noise | dense
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "target-n", default_value_t = 300)]
        target_n: usize,
        #[arg(long = "avg-degree", default_value_t = 8.0)]
        avg_degree: f64,
        #[arg(long = "query-min", default_value_t = 25)]
        query_min: usize,
        #[arg(long = "query-max", default_value_t = 40)]
        query_max: usize,
        #[arg(long = "between-degree", default_value_t = 0.04)]
        between_degree: f64,
        #[arg(long = "noise-frac", default_value_t = 0.05)]
        noise_frac: f64,
        /// Dense suite: planted block size
        #[arg(long = "dense-n", default_value_t = 60)]
        dense_n: usize,
        /// Dense suite: planted block edge probability
        #[arg(long = "dense-p", default_value_t = 0.9)]
        dense_p: f64,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Subcommand)]
enum GenModel {
    /// Erdos-Renyi G(n, p)
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 2)]
    depth: u32,
    #[arg(long = "graphlet-size", default_value_t = 4)]
    graphlet_size: u8,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, default_value_t = 0.3)]
    alpha: f64,
    #[arg(long, default_value_t = 0.4)]
    h1: f64,
    #[arg(long, default_value_t = 0.95)]
    h2: f64,
}

/// Entry point for the `graphsim` binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::InvalidArgument(_) | Error::Format(_) => 2,
        Error::Io(_) => 3,
        Error::ParamMismatch { .. } => 4,
        Error::DisconnectedQuery => 5,
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Preprocess {
            graph,
            depth,
            graphlet_size,
            threads,
            out,
        } => cmd_preprocess(&graph, depth, graphlet_size, threads, &out),
        Command::Query {
            graph,
            index,
            query,
            k,
            alpha,
            h1,
            h2,
            depth,
            graphlet_size,
            threads,
            output,
        } => cmd_query(QueryArgs {
            graph,
            index,
            query,
            k,
            alpha,
            h1,
            h2,
            depth,
            graphlet_size,
            threads,
            output,
        }),
        Command::Score {
            graph,
            vertices,
            query,
            graphlet_size,
        } => cmd_score(&graph, &vertices, &query, graphlet_size),
        Command::Gen { model } => match model {
            GenModel::Gnp { n, p, seed, out } => cmd_gen_gnp(n, p, seed, &out),
        },
        Command::Perturb {
            graph,
            remove_frac,
            seed,
            out,
        } => cmd_perturb(&graph, remove_frac, seed, &out),
        Command::Extract {
            graph,
            size,
            seed,
            out,
        } => cmd_extract(&graph, size, seed, &out),
        Command::Bench {
            suite,
            repeats,
            seed,
            target_n,
            avg_degree,
            query_min,
            query_max,
            between_degree,
            noise_frac,
            dense_n,
            dense_p,
            params,
            threads,
        } => {
            let mut cfg = BenchConfig::new(SuiteKind::parse(&suite)?, repeats, resolve_seed(seed));
            cfg.target_n = target_n;
            cfg.avg_degree = avg_degree;
            cfg.query_min = query_min;
            cfg.query_max = query_max;
            cfg.between_degree = between_degree;
            cfg.noise_fraction = noise_frac;
            cfg.dense_block = dense_n;
            cfg.dense_p = dense_p;
            cfg.run = RunConfig {
                label: LabelParams::new(params.depth, params.graphlet_size)?,
                match_params: MatchParams::new(params.k, params.alpha, params.h1, params.h2)?,
                workers: resolve_threads(threads),
                seed: cfg.seed,
            };
            cmd_bench(&cfg)
        }
    }
}

fn resolve_threads(threads: usize) -> usize {
    if threads == 0 {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    } else {
        threads
    }
}

/// Missing seeds fall back to clock entropy; the chosen value is printed so
/// the run can be reproduced.
fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            let now = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .unwrap_or_default();
            let s = now.as_secs() ^ ((now.subsec_nanos() as u64) << 17) ^ std::process::id() as u64;
            eprintln!("# seed={s}");
            s
        }
    }
}

fn load_graph(path: &Path) -> Result<(Graph, IdMap)> {
    let file = File::open(path)?;
    parse_edge_list(BufReader::new(file))
}

fn cmd_preprocess(graph: &Path, depth: u32, l: u8, threads: usize, out: &Path) -> Result<()> {
    let params = LabelParams::new(depth, l)?;
    let start = Instant::now();
    let (g, _) = load_graph(graph)?;
    let labels = label_all(&g, params, resolve_threads(threads));
    labels.save(out)?;
    println!(
        "n={} m={} l={} t={} dim={} out={}",
        g.vertex_count(),
        g.edge_count(),
        params.l,
        params.t,
        labels.dimension(),
        out.display()
    );
    eprintln!("# elapsed={:.6}s", start.elapsed().as_secs_f64());
    Ok(())
}

struct QueryArgs {
    graph: PathBuf,
    index: PathBuf,
    query: PathBuf,
    k: usize,
    alpha: f64,
    h1: f64,
    h2: f64,
    depth: Option<u32>,
    graphlet_size: Option<u8>,
    threads: usize,
    output: Option<PathBuf>,
}

fn cmd_query(args: QueryArgs) -> Result<()> {
    let (g, g_ids) = load_graph(&args.graph)?;
    let labels = LabelSet::load(&args.index)?;
    let want_t = args.depth.unwrap_or(labels.params.t);
    let want_l = args.graphlet_size.unwrap_or(labels.params.l);
    if want_t != labels.params.t || want_l != labels.params.l || labels.len() != g.vertex_count()
    {
        return Err(Error::ParamMismatch {
            index_l: labels.params.l,
            index_t: labels.params.t,
            want_l,
            want_t,
        });
    }
    if !labels.matches_graph(&g) {
        eprintln!("warning: index fingerprint does not match the graph; labels may be stale");
    }
    let (q, q_ids) = load_graph(&args.query)?;
    if args.k > g.vertex_count() {
        eprintln!(
            "warning: k={} exceeds target size n={}; clamping",
            args.k,
            g.vertex_count()
        );
    }
    let cfg = RunConfig {
        label: labels.params,
        match_params: MatchParams::new(
            args.k.min(g.vertex_count().max(1)),
            args.alpha,
            args.h1,
            args.h2,
        )?,
        workers: resolve_threads(args.threads),
        seed: 0,
    };
    let index = KdIndex::build(&labels);
    let (result, timings) = run_query(&g, &labels, &index, &q, &cfg)?;

    let mut rendered = String::new();
    use std::fmt::Write as _;
    let _ = writeln!(rendered, "# graphsim {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        rendered,
        "# params l={} t={} k={} alpha={} h1={} h2={}",
        labels.params.l, labels.params.t, args.k, args.alpha, args.h1, args.h2
    );
    let _ = writeln!(
        rendered,
        "# query n={} m={} target n={} m={}",
        q.vertex_count(),
        q.edge_count(),
        g.vertex_count(),
        g.edge_count()
    );
    for &(qv, tv) in &result.mapping {
        let _ = writeln!(rendered, "{}\t{}", q_ids.external(qv), g_ids.external(tv));
    }
    let _ = writeln!(
        rendered,
        "# score={:.6} matched={} of={}",
        result.score,
        result.mapping.len(),
        q.vertex_count()
    );
    match &args.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(rendered.as_bytes())?;
            w.flush()?;
        }
        None => print!("{rendered}"),
    }
    eprintln!(
        "# delta={:.6}s tau={:.6}s",
        timings.label_seconds, timings.total_seconds
    );
    Ok(())
}

fn parse_vertex_list(path: &Path, ids: &IdMap) -> Result<VertexSet> {
    let file = File::open(path)?;
    let mut members = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let ext: u64 = trimmed.parse().map_err(|_| Error::Parse {
            line: lineno + 1,
            msg: format!("not a non-negative integer: {trimmed:?}"),
        })?;
        let internal = ids.internal(ext).ok_or_else(|| Error::Parse {
            line: lineno + 1,
            msg: format!("vertex {ext} not present in the graph"),
        })?;
        members.push(internal);
    }
    if members.is_empty() {
        return Err(Error::InvalidArgument("vertex list is empty".into()));
    }
    Ok(VertexSet::new(members))
}

fn cmd_score(graph: &Path, vertices: &Path, query: &Path, l: u8) -> Result<()> {
    let params = LabelParams::new(1, l)?; // validates l
    let (g, g_ids) = load_graph(graph)?;
    let set = parse_vertex_list(vertices, &g_ids)?;
    let (q, _) = load_graph(query)?;
    let (sub, _) = induced_subgraph(&g, &set)?;
    let catalog = Catalog::new(params.l as usize)?;
    let score = kernel(&catalog.vector(&q), &catalog.vector(&sub))?;
    println!("{score:.6}");
    Ok(())
}

fn write_edge_file(path: &Path, g: &Graph, ids: Option<&IdMap>, header: &str) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "# {header}")?;
    g.write_edge_list(&mut w, ids)?;
    w.flush()?;
    Ok(())
}

fn cmd_gen_gnp(n: usize, p: f64, seed: Option<u64>, out: &Path) -> Result<()> {
    let seed = resolve_seed(seed);
    let g = gnp(n, p, seed)?;
    write_edge_file(out, &g, None, &format!("gnp n={n} p={p} seed={seed}"))?;
    println!(
        "n={} m={} out={}",
        g.vertex_count(),
        g.edge_count(),
        out.display()
    );
    Ok(())
}

fn cmd_perturb(graph: &Path, remove_frac: f64, seed: Option<u64>, out: &Path) -> Result<()> {
    let seed = resolve_seed(seed);
    let (g, ids) = load_graph(graph)?;
    let pruned = remove_edges(&g, remove_frac, seed)?;
    write_edge_file(
        out,
        &pruned,
        Some(&ids),
        &format!("perturb remove_frac={remove_frac} seed={seed}"),
    )?;
    println!(
        "n={} m={} removed={} out={}",
        pruned.vertex_count(),
        pruned.edge_count(),
        g.edge_count() - pruned.edge_count(),
        out.display()
    );
    Ok(())
}

fn cmd_extract(graph: &Path, size: usize, seed: Option<u64>, out: &Path) -> Result<()> {
    let seed = resolve_seed(seed);
    let (g, ids) = load_graph(graph)?;
    let set = random_connected_subgraph(&g, size, seed)?;
    let mut w = BufWriter::new(File::create(out)?);
    writeln!(w, "# extract size={size} seed={seed}")?;
    for v in set.iter() {
        writeln!(w, "{}", ids.external(v))?;
    }
    w.flush()?;
    println!("size={} out={}", set.len(), out.display());
    Ok(())
}

fn cmd_bench(cfg: &BenchConfig) -> Result<()> {
    let report = crate::pipeline::run_bench(cfg)?;
    print!("{}", report.render_report());
    eprint!("{}", report.render_timings());
    Ok(())
}
