//! Parse an edge list, inspect the resulting graph, and write it back out.
//!
//! ```bash
//! cargo run --example parse_graph
//! ```

use std::io::Cursor;

use graphsim::graph::{bfs_neighborhood, connected_components, parse_edge_list};
use graphsim::synth::density;

const EDGE_LIST: &str = "\
# a small two-community network with arbitrary external ids
10 20
10 30
20 30
20 40
30 40
40 50
50 60
60 70
50 70
60 80
70 80
";

fn main() {
    let (graph, ids) = parse_edge_list(Cursor::new(EDGE_LIST)).expect("well-formed edge list");
    println!(
        "parsed n={} m={} density={:.3}",
        graph.vertex_count(),
        graph.edge_count(),
        density(&graph).unwrap()
    );

    for comp in connected_components(&graph) {
        let members: Vec<u64> = comp.iter().map(|v| ids.external(v)).collect();
        println!("component of {} vertices: {:?}", comp.len(), members);
    }

    let center = ids.internal(40).unwrap();
    for depth in 1..=2 {
        let hood = bfs_neighborhood(&graph, center, depth).unwrap();
        let members: Vec<u64> = hood.iter().map(|v| ids.external(v)).collect();
        println!("depth-{depth} neighborhood of 40: {:?}", members);
    }

    let mut buf = Vec::new();
    graph.write_edge_list(&mut buf, Some(&ids)).unwrap();
    println!("--- re-serialized ---\n{}", String::from_utf8(buf).unwrap());
}
