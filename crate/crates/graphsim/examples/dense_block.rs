//! Dense-subgraph search: plant a dense random block inside a sparse target
//! and recover a match of comparable density.
//!
//! ```bash
//! cargo run --release --example dense_block
//! ```

use graphsim::graph::{induced_subgraph, Graph};
use graphsim::pipeline::{preprocess, run_query, RunConfig};
use graphsim::synth::{density, gnp, SplitMix64};

fn main() {
    let background = gnp(200, 8.0 / 199.0, 5).unwrap();
    let block = gnp(40, 0.9, 6).unwrap();
    println!("query block: density {:.3}", density(&block).unwrap());

    // Embed the block after the background ids and bridge it in.
    let offset = background.vertex_count() as u32;
    let mut edges: Vec<(u32, u32)> = background.edges().collect();
    edges.extend(block.edges().map(|(u, v)| (u + offset, v + offset)));
    let mut rng = SplitMix64::new(7);
    for _ in 0..5 {
        edges.push((
            rng.next_below(200) as u32,
            offset + rng.next_below(40) as u32,
        ));
    }
    let target = Graph::from_edges(240, edges);

    let cfg = RunConfig::default();
    let (labels, index) = preprocess(&target, cfg.label, cfg.workers);
    let (result, _) = run_query(&target, &labels, &index, &block, &cfg).unwrap();
    let (matched, _) = induced_subgraph(&target, &result.target_set).unwrap();
    println!(
        "match: score={:.6} matched={}/{} density {:.3}",
        result.score,
        result.mapping.len(),
        block.vertex_count(),
        density(&matched).unwrap()
    );
}
