//! Search robustness under noise: query a community of the original target
//! after 5% of the target's edges were deleted.
//!
//! ```bash
//! cargo run --release --example search_noisy
//! ```

use graphsim::graph::induced_subgraph;
use graphsim::pipeline::{preprocess, run_query, RunConfig};
use graphsim::synth::{modular_graph, remove_edges, BlockSpec};

fn main() {
    let blocks = [
        BlockSpec {
            size: 35,
            within_degree: 6.5,
            degree_ramp: true,
        },
        BlockSpec {
            size: 45,
            within_degree: 10.0,
            degree_ramp: false,
        },
        BlockSpec {
            size: 40,
            within_degree: 3.0,
            degree_ramp: false,
        },
    ];
    let (clean, spans) = modular_graph(&blocks, 0.1, 21).unwrap();
    let planted = spans[0].clone();
    let (query, _) = induced_subgraph(&clean, &planted).unwrap();

    let cfg = RunConfig::default();
    for fraction in [0.0, 0.05, 0.10] {
        let target = remove_edges(&clean, fraction, 99).unwrap();
        let (labels, index) = preprocess(&target, cfg.label, cfg.workers);
        let (result, _) = run_query(&target, &labels, &index, &query, &cfg).unwrap();
        println!(
            "removed {:>4.0}% of edges (m={}): score={:.6} matched={}/{}",
            fraction * 100.0,
            target.edge_count(),
            result.score,
            result.mapping.len(),
            query.vertex_count()
        );
    }
}
