//! End-to-end search orchestration (label, select, seed, grow, complete,
//! score) and the benchmark harness built on top of it: planted-subgraph
//! recovery, noisy-target recovery, and dense-block search.

use std::fmt::Write as _;
use std::time::Instant;

use crate::graph::{induced_subgraph, Graph, VertexSet};
use crate::graphlet::{kernel, Catalog};
use crate::kdtree::KdIndex;
use crate::label::{label_all, LabelParams, LabelSet};
use crate::matcher::{
    complete_match, grow_match, score_match, seed_match, select_candidates, Candidates,
    MatchParams, MatchResult, MatchStats,
};
use crate::synth::{
    density, gnp, modular_graph, random_connected_subgraph, remove_edges, BlockSpec, SplitMix64,
};
use crate::{Error, Result};

/// Everything a single search run depends on; identical configuration and
/// inputs produce identical outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub label: LabelParams,
    pub match_params: MatchParams,
    pub workers: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            label: LabelParams::default(),
            match_params: MatchParams::default(),
            workers: std::thread::available_parallelism().map_or(1, |p| p.get()),
            seed: 0,
        }
    }
}

/// Wall-clock timings of one query: `label_seconds` covers query labeling
/// only, `total_seconds` the whole matching phase including labeling.
#[derive(Debug, Clone, Copy, Default)]
pub struct Timings {
    pub label_seconds: f64,
    pub total_seconds: f64,
}

/// One-time preprocessing of a target graph: vertex labels plus the k-NN
/// index over them.
pub fn preprocess(g: &Graph, params: LabelParams, workers: usize) -> (LabelSet, KdIndex) {
    let labels = label_all(g, params, workers);
    let index = KdIndex::build(&labels);
    (labels, index)
}

/// Runs the full matching phase of `query` against a preprocessed target.
pub fn run_query(
    g: &Graph,
    labels: &LabelSet,
    index: &KdIndex,
    query: &Graph,
    cfg: &RunConfig,
) -> Result<(MatchResult, Timings)> {
    let (result, timings, _) = run_query_detailed(g, labels, index, query, cfg)?;
    Ok((result, timings))
}

/// Like [`run_query`], additionally exposing the selection-phase candidates
/// for experiment accounting.
pub fn run_query_detailed(
    g: &Graph,
    labels: &LabelSet,
    index: &KdIndex,
    query: &Graph,
    cfg: &RunConfig,
) -> Result<(MatchResult, Timings, Candidates)> {
    if labels.params != cfg.label {
        return Err(Error::ParamMismatch {
            index_l: labels.params.l,
            index_t: labels.params.t,
            want_l: cfg.label.l,
            want_t: cfg.label.t,
        });
    }
    if query.vertex_count() == 0 || !query.is_connected() {
        return Err(Error::DisconnectedQuery);
    }

    let start = Instant::now();
    let query_labels = label_all(query, cfg.label, cfg.workers);
    let label_seconds = start.elapsed().as_secs_f64();

    let cands = select_candidates(index, &query_labels, cfg.match_params.k)?;
    let seed = seed_match(g, labels, &query_labels, &cands, cfg.match_params.alpha);
    let grown = grow_match(g, query, labels, &query_labels, &seed, cfg.match_params.h1);
    let stats_grown = grown.len();
    let completed = complete_match(g, query, grown, cfg.match_params.h2);
    let stats = MatchStats {
        candidates: cands.union.len(),
        seed: seed.pairs.len(),
        grown: stats_grown,
        completed: completed.len(),
    };
    let result = score_match(g, query, &completed, cfg.label.l, stats);
    let timings = Timings {
        label_seconds,
        total_seconds: start.elapsed().as_secs_f64(),
    };
    Ok((result, timings, cands))
}

/// A query graph optionally paired with the target vertex set it was
/// extracted from, enabling exact-match accounting.
#[derive(Debug, Clone)]
pub struct PlantedQuery {
    pub graph: Graph,
    pub planted: Option<VertexSet>,
}

/// Per-query outcome of an experiment run.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub query_size: usize,
    pub score: f64,
    pub matched: usize,
    pub exact_match: Option<bool>,
    pub in_pruned: Option<bool>,
    pub baseline: Option<f64>,
    pub match_density: Option<f64>,
    pub label_seconds: f64,
    pub total_seconds: f64,
}

/// Means and counts over an experiment run.
#[derive(Debug, Clone, Default)]
pub struct SuiteAggregate {
    pub queries: usize,
    pub mean_score: f64,
    pub mean_baseline: Option<f64>,
    pub exact_matches: usize,
    pub in_pruned: usize,
    pub mean_density: Option<f64>,
    pub mean_label_seconds: f64,
    pub mean_total_seconds: f64,
}

/// Runs each planted query against the target and aggregates scores, exact
/// match counts, pruning containment, and a random-subgraph baseline score
/// per query (seeded by `baseline_seed`).
pub fn run_experiment_suite(
    g: &Graph,
    labels: &LabelSet,
    index: &KdIndex,
    queries: &[PlantedQuery],
    cfg: &RunConfig,
    baseline_seed: u64,
) -> Result<(Vec<ExperimentReport>, SuiteAggregate)> {
    let catalog = Catalog::new(cfg.label.l as usize)?;
    let mut rng = SplitMix64::new(baseline_seed);
    let mut reports = Vec::with_capacity(queries.len());
    for pq in queries {
        let (result, timings, cands) = run_query_detailed(g, labels, index, &pq.graph, cfg)?;
        let exact_match = pq
            .planted
            .as_ref()
            .map(|planted| result.target_set == *planted);
        let in_pruned = pq
            .planted
            .as_ref()
            .map(|planted| planted.is_subset_of(&cands.union));
        let baseline_draw = rng.next_u64();
        let baseline = random_connected_subgraph(g, pq.graph.vertex_count(), baseline_draw)
            .ok()
            .map(|set| {
                let (sub, _) = induced_subgraph(g, &set).expect("ids in range");
                kernel(&catalog.vector(&pq.graph), &catalog.vector(&sub)).expect("same catalog")
            });
        let match_density = if result.target_set.len() >= 2 {
            let (g_star, _) = induced_subgraph(g, &result.target_set).expect("ids in range");
            density(&g_star).ok()
        } else {
            None
        };
        reports.push(ExperimentReport {
            query_size: pq.graph.vertex_count(),
            score: result.score,
            matched: result.target_set.len(),
            exact_match,
            in_pruned,
            baseline,
            match_density,
            label_seconds: timings.label_seconds,
            total_seconds: timings.total_seconds,
        });
    }
    let agg = aggregate(&reports);
    Ok((reports, agg))
}

fn aggregate(reports: &[ExperimentReport]) -> SuiteAggregate {
    let n = reports.len();
    if n == 0 {
        return SuiteAggregate::default();
    }
    let mean_opt = |vals: Vec<f64>| -> Option<f64> {
        if vals.is_empty() {
            None
        } else {
            Some(vals.iter().sum::<f64>() / vals.len() as f64)
        }
    };
    SuiteAggregate {
        queries: n,
        mean_score: reports.iter().map(|r| r.score).sum::<f64>() / n as f64,
        mean_baseline: mean_opt(reports.iter().filter_map(|r| r.baseline).collect()),
        exact_matches: reports
            .iter()
            .filter(|r| r.exact_match == Some(true))
            .count(),
        in_pruned: reports.iter().filter(|r| r.in_pruned == Some(true)).count(),
        mean_density: mean_opt(reports.iter().filter_map(|r| r.match_density).collect()),
        mean_label_seconds: reports.iter().map(|r| r.label_seconds).sum::<f64>() / n as f64,
        mean_total_seconds: reports.iter().map(|r| r.total_seconds).sum::<f64>() / n as f64,
    }
}

/// Benchmark suite family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    /// Queries are genuine induced connected subgraphs of a synthetic target.
    Planted,
    /// Like `Planted`, but a fraction of target edges is removed after the
    /// queries are extracted.
    Noise,
    /// A dense random block is embedded in a sparse target and used as the
    /// query.
    Dense,
}

impl SuiteKind {
    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Planted => "planted",
            SuiteKind::Noise => "noise",
            SuiteKind::Dense => "dense",
        }
    }

    pub fn parse(s: &str) -> Result<SuiteKind> {
        match s {
            "planted" => Ok(SuiteKind::Planted),
            "noise" => Ok(SuiteKind::Noise),
            "dense" => Ok(SuiteKind::Dense),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

/// Full parameterization of a benchmark run.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub suite: SuiteKind,
    pub repeats: usize,
    pub seed: u64,
    pub target_n: usize,
    /// Sparse-region degree; also the dense suite's background degree.
    pub avg_degree: f64,
    pub query_min: usize,
    pub query_max: usize,
    /// Expected cross-community degree in planted and noise targets.
    pub between_degree: f64,
    pub noise_fraction: f64,
    pub dense_block: usize,
    pub dense_p: f64,
    pub run: RunConfig,
}

impl BenchConfig {
    pub fn new(suite: SuiteKind, repeats: usize, seed: u64) -> BenchConfig {
        BenchConfig {
            suite,
            repeats,
            seed,
            target_n: 300,
            avg_degree: 8.0,
            query_min: 25,
            query_max: 40,
            between_degree: 0.04,
            noise_fraction: 0.05,
            dense_block: 60,
            dense_p: 0.9,
            run: RunConfig::default(),
        }
    }
}

/// Outcome of a benchmark run, with deterministic and timing renderings kept
/// separate so reports can be compared byte-for-byte across runs.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub reports: Vec<ExperimentReport>,
    pub aggregate: SuiteAggregate,
}

/// Runs one benchmark suite. Every artifact (targets, queries, noise,
/// baselines) derives from `cfg.seed`, so a rerun reproduces the report
/// exactly.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.query_min < 1 || cfg.query_min > cfg.query_max {
        return Err(Error::InvalidArgument(format!(
            "query size range {}..{} is empty",
            cfg.query_min, cfg.query_max
        )));
    }
    let mut seeds = SplitMix64::new(cfg.seed);
    let mut reports = Vec::with_capacity(cfg.repeats);
    for _ in 0..cfg.repeats {
        let report = match cfg.suite {
            SuiteKind::Planted => run_planted_repeat(cfg, &mut seeds, None)?,
            SuiteKind::Noise => run_planted_repeat(cfg, &mut seeds, Some(cfg.noise_fraction))?,
            SuiteKind::Dense => run_dense_repeat(cfg, &mut seeds)?,
        };
        reports.push(report);
    }
    let agg = aggregate(&reports);
    Ok(BenchReport {
        config: cfg.clone(),
        reports,
        aggregate: agg,
    })
}

/// Community layout backing the planted and noise suites: a handful of
/// internally heterogeneous sparse blocks sized across the query range
/// (queries are whole such communities), up to two dense contrast blocks,
/// and a sparse background filling the rest of the target. Returns the
/// blocks and how many of them are query-eligible.
fn planted_layout(cfg: &BenchConfig) -> Result<(Vec<BlockSpec>, usize)> {
    let mut sizes = Vec::new();
    let span = cfg.query_max - cfg.query_min;
    let count = 5.min(span + 1);
    for i in 0..count {
        let size = if count == 1 {
            cfg.query_min
        } else {
            cfg.query_min + span * i / (count - 1)
        };
        sizes.push(size);
    }
    sizes.dedup();
    let eligible: usize = sizes.iter().sum();
    if eligible + 2 > cfg.target_n {
        return Err(Error::InvalidArgument(format!(
            "target_n={} too small for query communities totalling {}",
            cfg.target_n, eligible
        )));
    }
    let mut blocks: Vec<BlockSpec> = sizes
        .iter()
        .enumerate()
        .map(|(i, &size)| BlockSpec {
            size,
            within_degree: 5.0 + 0.5 * i as f64,
            degree_ramp: true,
        })
        .collect();
    let query_blocks = blocks.len();
    let mut rest = cfg.target_n - eligible;
    for _ in 0..2 {
        if rest >= 32 {
            blocks.push(BlockSpec {
                size: 30,
                within_degree: 20.3,
                degree_ramp: false,
            });
            rest -= 30;
        }
    }
    if rest == 1 {
        blocks.last_mut().expect("nonempty").size += 1;
    } else if rest >= 2 {
        blocks.push(BlockSpec {
            size: rest,
            within_degree: (cfg.avg_degree - 5.0).clamp(2.0, 4.0),
            degree_ramp: false,
        });
    }
    Ok((blocks, query_blocks))
}

fn run_planted_repeat(
    cfg: &BenchConfig,
    seeds: &mut SplitMix64,
    noise: Option<f64>,
) -> Result<ExperimentReport> {
    // Draw order is fixed so the noise suite sees the same targets and
    // queries as the clean suite under the same seed.
    let target_seed = seeds.next_u64();
    let choice_seed = seeds.next_u64();
    let baseline_seed = seeds.next_u64();
    let noise_seed = seeds.next_u64();

    let (mut blocks, query_blocks) = planted_layout(cfg)?;
    let mut choice = SplitMix64::new(choice_seed);
    // Vary which community gets which internal density, and which one is
    // queried.
    let rot = choice.next_below(query_blocks);
    let degrees: Vec<f64> = (0..query_blocks)
        .map(|i| blocks[(i + rot) % query_blocks].within_degree)
        .collect();
    for (i, d) in degrees.into_iter().enumerate() {
        blocks[i].within_degree = d;
    }
    let first_choice = choice.next_below(query_blocks);

    // Sparse random communities occasionally come out disconnected; try the
    // other communities, then fresh target draws.
    for salt in 0..32u64 {
        let (clean, spans) = modular_graph(&blocks, cfg.between_degree, target_seed ^ salt)?;
        for offset in 0..query_blocks {
            let qb = (first_choice + offset) % query_blocks;
            let planted = spans[qb].clone();
            let (query, _) = induced_subgraph(&clean, &planted)?;
            if !query.is_connected() {
                continue;
            }
            let target = match noise {
                Some(fraction) => remove_edges(&clean, fraction, noise_seed)?,
                None => clean.clone(),
            };
            let (labels, index) = preprocess(&target, cfg.run.label, cfg.run.workers);
            let queries = [PlantedQuery {
                graph: query,
                planted: Some(planted),
            }];
            let (mut reports, _) = run_experiment_suite(
                &target,
                &labels,
                &index,
                &queries,
                &cfg.run,
                baseline_seed,
            )?;
            return Ok(reports.pop().expect("one query"));
        }
    }
    Err(Error::InvalidArgument(
        "could not draw a connected query community".into(),
    ))
}

fn run_dense_repeat(cfg: &BenchConfig, seeds: &mut SplitMix64) -> Result<ExperimentReport> {
    let background_seed = seeds.next_u64();
    let block_seed = seeds.next_u64();
    let bridge_seed = seeds.next_u64();
    let baseline_seed = seeds.next_u64();

    let p = (cfg.avg_degree / (cfg.target_n - 1) as f64).clamp(0.0, 1.0);
    let background = gnp(cfg.target_n, p, background_seed)?;
    let block = gnp(cfg.dense_block, cfg.dense_p, block_seed)?;

    // Target = background + block, joined by a handful of bridge edges so
    // the block is embedded rather than floating free.
    let offset = cfg.target_n as u32;
    let mut edges: Vec<(u32, u32)> = background.edges().collect();
    edges.extend(block.edges().map(|(u, v)| (u + offset, v + offset)));
    let mut bridge_rng = SplitMix64::new(bridge_seed);
    for _ in 0..5 {
        let bg = bridge_rng.next_below(cfg.target_n) as u32;
        let bl = offset + bridge_rng.next_below(cfg.dense_block) as u32;
        edges.push((bg, bl));
    }
    let target = Graph::from_edges(cfg.target_n + cfg.dense_block, edges);
    let planted: VertexSet = (offset..offset + cfg.dense_block as u32).collect();

    let (labels, index) = preprocess(&target, cfg.run.label, cfg.run.workers);
    let queries = [PlantedQuery {
        graph: block,
        planted: Some(planted),
    }];
    let (mut reports, _) =
        run_experiment_suite(&target, &labels, &index, &queries, &cfg.run, baseline_seed)?;
    Ok(reports.pop().expect("one query"))
}

impl BenchReport {
    /// Deterministic report: same configuration and seed render to identical
    /// bytes. Timings are deliberately excluded; see
    /// [`BenchReport::render_timings`].
    pub fn render_report(&self) -> String {
        let cfg = &self.config;
        let mut out = String::new();
        let _ = write!(
            out,
            "# graphsim bench suite={} repeats={} seed={} target_n={} avg_degree={} query={}..{}",
            cfg.suite.name(),
            cfg.repeats,
            cfg.seed,
            cfg.target_n,
            cfg.avg_degree,
            cfg.query_min,
            cfg.query_max,
        );
        if cfg.suite == SuiteKind::Noise {
            let _ = write!(out, " noise_frac={}", cfg.noise_fraction);
        }
        if cfg.suite == SuiteKind::Dense {
            let _ = write!(
                out,
                " dense_block={} dense_p={}",
                cfg.dense_block, cfg.dense_p
            );
        }
        let _ = writeln!(
            out,
            " l={} t={} k={} alpha={} h1={} h2={}",
            cfg.run.label.l,
            cfg.run.label.t,
            cfg.run.match_params.k,
            cfg.run.match_params.alpha,
            cfg.run.match_params.h1,
            cfg.run.match_params.h2,
        );
        for (i, r) in self.reports.iter().enumerate() {
            let _ = write!(
                out,
                "query={} size={} score={:.6} matched={}",
                i, r.query_size, r.score, r.matched
            );
            if let Some(exact) = r.exact_match {
                let _ = write!(out, " exact={}", exact as u8);
            }
            if let Some(in_pruned) = r.in_pruned {
                let _ = write!(out, " in_pruned={}", in_pruned as u8);
            }
            if let Some(baseline) = r.baseline {
                let _ = write!(out, " baseline={baseline:.6}");
            }
            if let Some(rho) = r.match_density {
                let _ = write!(out, " density={rho:.6}");
            }
            out.push('\n');
        }
        let a = &self.aggregate;
        let _ = write!(
            out,
            "# aggregate queries={} mean_score={:.6} exact_matches={} in_pruned={}",
            a.queries, a.mean_score, a.exact_matches, a.in_pruned
        );
        if let Some(b) = a.mean_baseline {
            let _ = write!(out, " mean_baseline={b:.6}");
        }
        if let Some(d) = a.mean_density {
            let _ = write!(out, " mean_density={d:.6}");
        }
        out.push('\n');
        out
    }

    /// Wall-clock summary, kept out of the deterministic report.
    pub fn render_timings(&self) -> String {
        format!(
            "# timings mean_delta={:.6}s mean_tau={:.6}s\n",
            self.aggregate.mean_label_seconds, self.aggregate.mean_total_seconds
        )
    }
}
