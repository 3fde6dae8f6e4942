//! Graphlet kernel values between pairs of graphs, including a pair that is
//! indistinguishable at l=3 and a fully orthogonal pair.
//!
//! ```bash
//! cargo run --example kernel_similarity
//! ```

use graphsim::graph::{Graph, VertexId};
use graphsim::graphlet::{kernel, Catalog};
use graphsim::synth::gnp;

fn path(n: usize) -> Graph {
    Graph::from_edges(n, (0..n as VertexId - 1).map(|i| (i, i + 1)))
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n as VertexId).map(|i| (i, (i + 1) % n as VertexId)))
}

fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges)
}

fn main() {
    let pairs: Vec<(&str, Graph, &str, Graph)> = vec![
        ("C5", cycle(5), "P5", path(5)),
        ("K4", complete(4), "P4", path(4)),
        ("C6", cycle(6), "C6", cycle(6)),
        ("K6", complete(6), "C6", cycle(6)),
    ];
    for l in [3usize, 4] {
        let catalog = Catalog::new(l).unwrap();
        println!("--- graphlet size l={l} ---");
        for (na, a, nb, b) in &pairs {
            let k = kernel(&catalog.vector(a), &catalog.vector(b)).unwrap();
            println!("K({na}, {nb}) = {k:.6}");
        }
    }

    // Random sparse graphs of the same density score high against each
    // other; a clique scores near zero against them.
    let catalog = Catalog::new(4).unwrap();
    let a = gnp(40, 0.1, 1).unwrap();
    let b = gnp(40, 0.1, 2).unwrap();
    println!(
        "K(gnp, gnp)  = {:.6}",
        kernel(&catalog.vector(&a), &catalog.vector(&b)).unwrap()
    );
    println!(
        "K(gnp, K12)  = {:.6}",
        kernel(&catalog.vector(&a), &catalog.vector(&complete(12))).unwrap()
    );
}
