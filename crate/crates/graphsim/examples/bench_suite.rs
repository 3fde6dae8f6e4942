//! Aggregate benchmark over repeated planted searches, printing the same
//! deterministic report as `graphsim bench`.
//!
//! ```bash
//! cargo run --release --example bench_suite
//! ```

use graphsim::pipeline::{run_bench, BenchConfig, SuiteKind};

fn main() {
    let mut cfg = BenchConfig::new(SuiteKind::Planted, 5, 42);
    cfg.target_n = 150;
    cfg.query_min = 15;
    cfg.query_max = 25;
    let report = run_bench(&cfg).unwrap();
    print!("{}", report.render_report());
    eprint!("{}", report.render_timings());

    let agg = &report.aggregate;
    println!(
        "summary: mean score {:.4} vs random baseline {:.4}; {} exact, {} fully retrieved",
        agg.mean_score,
        agg.mean_baseline.unwrap_or(0.0),
        agg.exact_matches,
        agg.in_pruned
    );
}
