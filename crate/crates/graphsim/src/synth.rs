//! Seeded synthetic-graph utilities for benchmarks and tests: G(n,p)
//! generation, random edge removal, connected-subgraph extraction, and the
//! density measure.

use crate::graph::{connected_components, Graph, VertexId, VertexSet};
use crate::{Error, Result};

/// SplitMix64 generator. Chosen over an external RNG so that every sampled
/// artifact can be reproduced from its seed in any language: the update is
/// `state += 0x9e3779b97f4a7c15` followed by two xor-shift-multiply mixing
/// steps (Steele et al.'s finalizer).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, n)` by modulo reduction (`n` must be positive; the
    /// bias is negligible for the ranges used here).
    pub fn next_below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }
}

/// Erdos-Renyi G(n,p): each unordered pair `(u, v)` with `u < v`, visited in
/// lexicographic order, becomes an edge with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p={p} outside [0, 1]")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

/// One community block of a [`modular_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockSpec {
    pub size: usize,
    /// Expected internal degree of a block vertex.
    pub within_degree: f64,
    /// When set, expected internal degrees ramp linearly from 0.6x to 1.4x
    /// of `within_degree` across the block, giving it internal hubs and
    /// leaves instead of a near-regular profile.
    pub degree_ramp: bool,
}

/// Random modular graph: consecutive id ranges form community blocks with
/// the given sizes and internal degrees; every cross-block pair is an edge
/// with probability `between_degree / n`, so a vertex has `between_degree`
/// expected neighbors outside its block. Pairs are visited in the same
/// lexicographic order as [`gnp`]. Returns the graph and the vertex set of
/// each block.
pub fn modular_graph(
    blocks: &[BlockSpec],
    between_degree: f64,
    seed: u64,
) -> Result<(Graph, Vec<VertexSet>)> {
    if blocks.is_empty() {
        return Err(Error::InvalidArgument("no blocks given".into()));
    }
    if let Some(bad) = blocks.iter().find(|b| b.size < 2) {
        return Err(Error::InvalidArgument(format!(
            "block size {} must be >= 2",
            bad.size
        )));
    }
    let n: usize = blocks.iter().map(|b| b.size).sum();
    let mut block_of = Vec::with_capacity(n);
    let mut ramp = Vec::with_capacity(n);
    let mut spans = Vec::new();
    let mut start = 0u32;
    for (bi, b) in blocks.iter().enumerate() {
        spans.push((start..start + b.size as u32).collect::<VertexSet>());
        start += b.size as u32;
        for i in 0..b.size {
            block_of.push(bi);
            ramp.push(if b.degree_ramp {
                0.6 + 0.8 * i as f64 / (b.size - 1) as f64
            } else {
                1.0
            });
        }
    }
    let p_out = (between_degree / n as f64).clamp(0.0, 1.0);
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            let (bu, bv) = (block_of[u as usize], block_of[v as usize]);
            let p = if bu == bv {
                let base = blocks[bu].within_degree / (blocks[bu].size - 1) as f64;
                (base * ramp[u as usize] * ramp[v as usize]).clamp(0.0, 1.0)
            } else {
                p_out
            };
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::from_edges(n, edges), spans))
}

/// Deletes `floor(fraction * m)` uniformly chosen edges; the vertex set is
/// unchanged.
pub fn remove_edges(g: &Graph, fraction: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::InvalidArgument(format!(
            "fraction={fraction} outside [0, 1]"
        )));
    }
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    let remove = (fraction * edges.len() as f64).floor() as usize;
    let mut rng = SplitMix64::new(seed);
    // Partial Fisher-Yates: the first `remove` slots end up holding the
    // sampled edges.
    for i in 0..remove {
        let j = i + rng.next_below(edges.len() - i);
        edges.swap(i, j);
    }
    Ok(Graph::from_edges(g.vertex_count(), edges.split_off(remove)))
}

/// Vertex set of the requested size whose induced subgraph is connected,
/// grown by uniform sampling from the frontier of a random start vertex.
pub fn random_connected_subgraph(g: &Graph, size: usize, seed: u64) -> Result<VertexSet> {
    if size == 0 || size > g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "size={} not in [1, {}]",
            size,
            g.vertex_count()
        )));
    }
    let eligible: Vec<VertexId> = connected_components(g)
        .into_iter()
        .filter(|c| c.len() >= size)
        .flat_map(|c| c.iter().collect::<Vec<_>>())
        .collect();
    if eligible.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no connected component with at least {size} vertices"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let start = eligible[rng.next_below(eligible.len())];

    let mut chosen = vec![false; g.vertex_count()];
    let mut queued = vec![false; g.vertex_count()];
    let mut members = Vec::with_capacity(size);
    let mut frontier: Vec<VertexId> = Vec::new();

    chosen[start as usize] = true;
    members.push(start);
    for &nb in g.neighbors(start) {
        queued[nb as usize] = true;
        frontier.push(nb);
    }
    while members.len() < size {
        let v = frontier.swap_remove(rng.next_below(frontier.len()));
        chosen[v as usize] = true;
        members.push(v);
        for &nb in g.neighbors(v) {
            if !chosen[nb as usize] && !queued[nb as usize] {
                queued[nb as usize] = true;
                frontier.push(nb);
            }
        }
    }
    Ok(VertexSet::new(members))
}

/// Density `2m / (n (n-1))` of a graph with at least two vertices.
pub fn density(g: &Graph) -> Result<f64> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "density undefined for n={n} < 2"
        )));
    }
    Ok(2.0 * g.edge_count() as f64 / (n as f64 * (n - 1) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::induced_subgraph;

    #[test]
    fn gnp_extremes() {
        let empty = gnp(10, 0.0, 1).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = gnp(10, 1.0, 1).unwrap();
        assert_eq!(full.edge_count(), 45);
    }

    #[test]
    fn gnp_rejects_bad_probability() {
        assert!(gnp(5, -0.1, 0).is_err());
        assert!(gnp(5, 1.5, 0).is_err());
    }

    #[test]
    fn gnp_is_seed_deterministic() {
        let a = gnp(50, 0.2, 99).unwrap();
        let b = gnp(50, 0.2, 99).unwrap();
        assert_eq!(a, b);
        let c = gnp(50, 0.2, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gnp_dense_density_near_p() {
        let g = gnp(500, 0.9, 4242).unwrap();
        let rho = density(&g).unwrap();
        assert!((rho - 0.9).abs() < 0.01, "rho={rho}");
    }

    #[test]
    fn gnp_edge_count_within_three_standard_errors() {
        let n = 200usize;
        let p = 0.1;
        let seeds = 30;
        let pairs = (n * (n - 1) / 2) as f64;
        let mean_m: f64 = (0..seeds)
            .map(|s| gnp(n, p, 1000 + s as u64).unwrap().edge_count() as f64)
            .sum::<f64>()
            / seeds as f64;
        let expected = pairs * p;
        let se = (pairs * p * (1.0 - p)).sqrt() / (seeds as f64).sqrt();
        assert!(
            (mean_m - expected).abs() < 3.0 * se,
            "mean={mean_m} expected={expected} se={se}"
        );
    }

    #[test]
    fn remove_edges_counts() {
        let g = gnp(30, 0.25, 7).unwrap();
        let m = g.edge_count();
        let pruned = remove_edges(&g, 0.05, 3).unwrap();
        assert_eq!(pruned.edge_count(), m - (0.05 * m as f64).floor() as usize);
        assert_eq!(pruned.vertex_count(), g.vertex_count());
    }

    #[test]
    fn remove_edges_extremes() {
        let g = gnp(20, 0.3, 11).unwrap();
        assert_eq!(remove_edges(&g, 0.0, 5).unwrap(), g);
        assert_eq!(remove_edges(&g, 1.0, 5).unwrap().edge_count(), 0);
    }

    #[test]
    fn remove_edges_output_is_subgraph() {
        let g = gnp(40, 0.2, 13).unwrap();
        let pruned = remove_edges(&g, 0.3, 17).unwrap();
        for (u, v) in pruned.edges() {
            assert!(g.has_edge(u, v));
        }
    }

    #[test]
    fn exact_fraction_of_one_hundred_edges() {
        // m=100, fraction=0.05 -> 95 surviving edges
        let mut edges = Vec::new();
        'outer: for u in 0..100u32 {
            for v in u + 1..100 {
                edges.push((u, v));
                if edges.len() == 100 {
                    break 'outer;
                }
            }
        }
        let g = Graph::from_edges(100, edges);
        assert_eq!(g.edge_count(), 100);
        assert_eq!(remove_edges(&g, 0.05, 1).unwrap().edge_count(), 95);
    }

    #[test]
    fn connected_subgraph_single_vertex() {
        let g = gnp(10, 0.3, 3).unwrap();
        assert_eq!(random_connected_subgraph(&g, 1, 9).unwrap().len(), 1);
    }

    #[test]
    fn connected_subgraph_whole_graph() {
        let g = gnp(12, 0.8, 21).unwrap();
        assert!(g.is_connected());
        let s = random_connected_subgraph(&g, 12, 5).unwrap();
        assert_eq!(s.len(), 12);
    }

    #[test]
    fn connected_subgraph_induces_connected_graph() {
        let g = gnp(80, 0.08, 31).unwrap();
        for seed in 0..10 {
            let s = random_connected_subgraph(&g, 15, seed).unwrap();
            let (sub, _) = induced_subgraph(&g, &s).unwrap();
            assert!(sub.is_connected(), "seed={seed}");
        }
    }

    #[test]
    fn connected_subgraph_requires_large_component() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]);
        assert!(random_connected_subgraph(&g, 3, 0).is_err());
        assert!(random_connected_subgraph(&g, 2, 0).is_ok());
    }

    #[test]
    fn modular_graph_block_structure() {
        let blocks = [
            BlockSpec {
                size: 20,
                within_degree: 6.0,
                degree_ramp: true,
            },
            BlockSpec {
                size: 15,
                within_degree: 10.0,
                degree_ramp: false,
            },
        ];
        let (g, spans) = modular_graph(&blocks, 0.5, 9).unwrap();
        assert_eq!(g.vertex_count(), 35);
        assert_eq!(spans.len(), 2);
        assert_eq!(spans[0].len(), 20);
        assert!(spans[1].contains(20) && spans[1].contains(34));
        // Internal density should dwarf the cross-block density.
        let internal = g
            .edges()
            .filter(|&(u, v)| (u < 20) == (v < 20))
            .count();
        let external = g.edge_count() - internal;
        assert!(internal > 10 * external.max(1) / 2, "internal={internal} external={external}");
        // Determinism
        let (g2, _) = modular_graph(&blocks, 0.5, 9).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn modular_graph_rejects_bad_blocks() {
        assert!(modular_graph(&[], 0.1, 0).is_err());
        let tiny = [BlockSpec {
            size: 1,
            within_degree: 1.0,
            degree_ramp: false,
        }];
        assert!(modular_graph(&tiny, 0.1, 0).is_err());
    }

    #[test]
    fn density_examples() {
        let k4 = gnp(4, 1.0, 0).unwrap();
        assert_eq!(density(&k4).unwrap(), 1.0);
        let empty = Graph::from_edges(10, []);
        assert_eq!(density(&empty).unwrap(), 0.0);
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(density(&c5).unwrap(), 0.5);
        let single = Graph::from_edges(1, []);
        assert!(density(&single).is_err());
    }
}
