//! Vertex labels (graphlet vectors of BFS neighborhoods) and nearest-neighbor
//! retrieval over them.
//!
//! ```bash
//! cargo run --example vertex_labels
//! ```

use graphsim::graph::Graph;
use graphsim::kdtree::KdIndex;
use graphsim::label::{label_all, LabelParams};
use graphsim::matcher::similarity;

fn main() {
    // A graph with a clique end, a path middle, and a star end: three very
    // different kinds of neighborhoods.
    let g = Graph::from_edges(
        12,
        [
            // clique on 0..4
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            // path 3 - 4 - 5 - 6
            (3, 4),
            (4, 5),
            (5, 6),
            // star centered at 6
            (6, 7),
            (6, 8),
            (6, 9),
            (6, 10),
            (6, 11),
        ],
    );
    let params = LabelParams::default(); // t=2, l=4
    let labels = label_all(&g, params, 2);
    for v in g.vertices() {
        let rounded: Vec<f64> = labels
            .label(v)
            .values()
            .iter()
            .map(|x| (x * 100.0).round() / 100.0)
            .collect();
        println!("label[{v:2}] = {rounded:?}");
    }

    println!(
        "s(clique vertex 0, clique vertex 1) = {:.4}",
        similarity(labels.label(0), labels.label(1))
    );
    println!(
        "s(clique vertex 0, star leaf 7)     = {:.4}",
        similarity(labels.label(0), labels.label(7))
    );

    let index = KdIndex::build(&labels);
    let hits = index.knn(labels.label(7), 4).unwrap();
    println!("4 nearest neighbors of star leaf 7: {hits:?}");
}
