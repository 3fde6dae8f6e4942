//! Exact graphlet counts and normalized graphlet vectors for small graphs.
//!
//! ```bash
//! cargo run --example graphlet_census
//! ```

use graphsim::graph::{Graph, VertexId};
use graphsim::graphlet::Catalog;

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

fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves as VertexId).map(|i| (0, i)))
}

fn main() {
    for l in [3usize, 4, 5] {
        let catalog = Catalog::new(l).unwrap();
        println!(
            "catalog l={l}: {} connected classes, edge counts {:?}",
            catalog.dimension(),
            catalog
                .classes()
                .iter()
                .map(|c| c.edge_count)
                .collect::<Vec<_>>()
        );
    }

    let catalog = Catalog::new(4).unwrap();
    for (name, g) in [
        ("C5", cycle(5)),
        ("K5", complete(5)),
        ("star-6", star(5)),
        ("C8", cycle(8)),
    ] {
        let counts = catalog.count(&g);
        let vector = catalog.vector(&g);
        println!(
            "{name}: raw counts {:?} -> vector {:?}",
            counts,
            vector
                .values()
                .iter()
                .map(|x| (x * 1000.0).round() / 1000.0)
                .collect::<Vec<_>>()
        );
    }

    // The exhaustive reference counter agrees with the enumeration.
    let g = cycle(8);
    assert_eq!(catalog.count(&g), catalog.count_exhaustive(&g).unwrap());
    println!("enumeration matches the exhaustive subset scan on C8");
}
