//! Exact maximum-weight bipartite matching.
//!
//! The solver pads the instance to a square cost matrix and runs the O(n^3)
//! shortest-augmenting-path assignment algorithm (Jonker-Volgenant style
//! potentials). Weights are nonnegative, so the maximum-weight assignment of
//! the padded matrix restricted to real edges is a maximum-weight matching:
//! matchings need not be perfect.

/// Weighted bipartite graph between dense left ids `[0, n_left)` and dense
/// right ids `[0, n_right)`. Duplicate `(left, right)` pairs are not allowed;
/// weights must be finite and nonnegative.
#[derive(Debug, Clone, Default)]
pub struct BipartiteInstance {
    n_left: usize,
    n_right: usize,
    edges: Vec<(u32, u32, f64)>,
}

impl BipartiteInstance {
    pub fn new(n_left: usize, n_right: usize) -> BipartiteInstance {
        BipartiteInstance {
            n_left,
            n_right,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, left: u32, right: u32, weight: f64) {
        assert!((left as usize) < self.n_left && (right as usize) < self.n_right);
        assert!(weight.is_finite() && weight >= 0.0, "weight {weight}");
        self.edges.push((left, right, weight));
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// One-to-one pairing of left and right ids with its total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<(u32, u32)>,
    pub weight: f64,
}

/// Exact maximum-weight matching; `pairs` are sorted by left id.
pub fn max_weight_matching(inst: &BipartiteInstance) -> Matching {
    if inst.edges.is_empty() {
        return Matching {
            pairs: Vec::new(),
            weight: 0.0,
        };
    }
    let n = inst.n_left.max(inst.n_right);
    let mut weight = vec![f64::NEG_INFINITY; n * n];
    let mut max_w = 0.0f64;
    for &(l, r, w) in &inst.edges {
        weight[l as usize * n + r as usize] = w;
        max_w = max_w.max(w);
    }
    // Minimization matrix: real edges cost (max_w - w), padding costs max_w,
    // so padding is never preferred over a positive-weight edge.
    let cost: Vec<f64> = weight
        .iter()
        .map(|&w| if w.is_finite() { max_w - w } else { max_w })
        .collect();
    let row_to_col = assign_min_cost(n, &cost);

    let mut pairs = Vec::new();
    let mut total = 0.0;
    for (l, r) in row_to_col.into_iter().enumerate() {
        if l < inst.n_left && r < inst.n_right && weight[l * n + r].is_finite() {
            pairs.push((l as u32, r as u32));
            total += weight[l * n + r];
        }
    }
    pairs.sort_unstable();
    Matching {
        pairs,
        weight: total,
    }
}

/// Minimum-cost perfect assignment on a dense square matrix via successive
/// shortest augmenting paths with dual potentials.
fn assign_min_cost(n: usize, cost: &[f64]) -> Vec<usize> {
    let none = n;
    let mut u = vec![0.0f64; n + 1]; // row potentials (index n = virtual row)
    let mut v = vec![0.0f64; n + 1]; // column potentials (index n = virtual col)
    let mut col_row = vec![none; n + 1]; // row matched to each column
    let mut way = vec![0usize; n + 1];

    for i in 0..n {
        col_row[n] = i;
        let mut j0 = n;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_row[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = n;
            for j in 0..n {
                if !used[j] {
                    let cur = cost[i0 * n + j] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_row[j0] == none {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
            if j0 == n {
                break;
            }
        }
    }

    let mut row_to_col = vec![none; n];
    for j in 0..n {
        if col_row[j] != none {
            row_to_col[col_row[j]] = j;
        }
    }
    row_to_col
}

/// Exhaustive maximum-weight matching by recursion over left vertices; the
/// independent oracle for the solver. Right side must have at most 31 ids.
pub fn brute_force_max_weight(inst: &BipartiteInstance) -> f64 {
    assert!(inst.n_right <= 31);
    let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); inst.n_left];
    for &(l, r, w) in &inst.edges {
        adj[l as usize].push((r, w));
    }
    fn rec(adj: &[Vec<(u32, f64)>], i: usize, used: u32) -> f64 {
        if i == adj.len() {
            return 0.0;
        }
        let mut best = rec(adj, i + 1, used); // leave left vertex i unmatched
        for &(r, w) in &adj[i] {
            if used & (1 << r) == 0 {
                best = best.max(w + rec(adj, i + 1, used | (1 << r)));
            }
        }
        best
    }
    rec(&adj, 0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::SplitMix64;

    #[test]
    fn single_edge() {
        let mut inst = BipartiteInstance::new(1, 1);
        inst.add_edge(0, 0, 0.5);
        let m = max_weight_matching(&inst);
        assert_eq!(m.pairs, vec![(0, 0)]);
        assert_eq!(m.weight, 0.5);
    }

    #[test]
    fn two_by_two_prefers_split() {
        // (a,x,1), (a,y,2), (b,x,2): best is {(a,y), (b,x)} = 4
        let mut inst = BipartiteInstance::new(2, 2);
        inst.add_edge(0, 0, 1.0);
        inst.add_edge(0, 1, 2.0);
        inst.add_edge(1, 0, 2.0);
        let m = max_weight_matching(&inst);
        assert_eq!(m.weight, 4.0);
        assert_eq!(m.pairs, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn empty_instance() {
        let inst = BipartiteInstance::new(3, 2);
        let m = max_weight_matching(&inst);
        assert!(m.pairs.is_empty());
        assert_eq!(m.weight, 0.0);
    }

    #[test]
    fn matching_is_one_to_one() {
        let mut rng = SplitMix64::new(60);
        for round in 0..50 {
            let nl = 1 + rng.next_below(8);
            let nr = 1 + rng.next_below(8);
            let mut inst = BipartiteInstance::new(nl, nr);
            for l in 0..nl as u32 {
                for r in 0..nr as u32 {
                    if rng.next_f64() < 0.6 {
                        inst.add_edge(l, r, (rng.next_below(101) as f64) / 16.0);
                    }
                }
            }
            let m = max_weight_matching(&inst);
            let mut lefts: Vec<u32> = m.pairs.iter().map(|p| p.0).collect();
            let mut rights: Vec<u32> = m.pairs.iter().map(|p| p.1).collect();
            lefts.dedup();
            rights.sort_unstable();
            rights.dedup();
            assert_eq!(lefts.len(), m.pairs.len(), "round {round}");
            assert_eq!(rights.len(), m.pairs.len(), "round {round}");
        }
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        // Dyadic weights keep every partial sum exact, so optimal weights
        // compare bit-for-bit.
        let mut rng = SplitMix64::new(41);
        for round in 0..120 {
            let nl = 1 + rng.next_below(6);
            let nr = 1 + rng.next_below(6);
            let mut inst = BipartiteInstance::new(nl, nr);
            for l in 0..nl as u32 {
                for r in 0..nr as u32 {
                    if rng.next_f64() < 0.7 {
                        inst.add_edge(l, r, (rng.next_below(129) as f64) / 32.0);
                    }
                }
            }
            let m = max_weight_matching(&inst);
            let best = brute_force_max_weight(&inst);
            assert_eq!(m.weight, best, "round {round}");
        }
    }

    #[test]
    fn rectangular_instances() {
        let mut inst = BipartiteInstance::new(1, 4);
        inst.add_edge(0, 2, 3.0);
        inst.add_edge(0, 3, 5.0);
        let m = max_weight_matching(&inst);
        assert_eq!(m.pairs, vec![(0, 3)]);

        let mut tall = BipartiteInstance::new(4, 1);
        tall.add_edge(1, 0, 2.0);
        tall.add_edge(3, 0, 7.0);
        let m = max_weight_matching(&tall);
        assert_eq!(m.pairs, vec![(3, 0)]);
        assert_eq!(m.weight, 7.0);
    }

    #[test]
    fn zero_weight_edges_do_not_inflate_weight() {
        let mut inst = BipartiteInstance::new(2, 2);
        inst.add_edge(0, 0, 0.0);
        inst.add_edge(1, 1, 1.0);
        let m = max_weight_matching(&inst);
        assert_eq!(m.weight, 1.0);
        assert!(m.pairs.contains(&(1, 1)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_instance() -> impl Strategy<Value = BipartiteInstance> {
            (1usize..8, 1usize..8).prop_flat_map(|(nl, nr)| {
                // Dyadic weights so optima compare exactly.
                proptest::collection::vec((0..nl as u32, 0..nr as u32, 0u32..512), 0..24)
                    .prop_map(move |edges| {
                        let mut inst = BipartiteInstance::new(nl, nr);
                        let mut seen = std::collections::HashSet::new();
                        for (l, r, w) in edges {
                            if seen.insert((l, r)) {
                                inst.add_edge(l, r, w as f64 / 64.0);
                            }
                        }
                        inst
                    })
            })
        }

        proptest! {
            #[test]
            fn optimal_weight_matches_brute_force(inst in arb_instance()) {
                let solved = max_weight_matching(&inst);
                prop_assert_eq!(solved.weight, brute_force_max_weight(&inst));
                let mut lefts: Vec<u32> = solved.pairs.iter().map(|p| p.0).collect();
                let mut rights: Vec<u32> = solved.pairs.iter().map(|p| p.1).collect();
                lefts.dedup();
                rights.sort_unstable();
                rights.dedup();
                prop_assert_eq!(lefts.len(), solved.pairs.len());
                prop_assert_eq!(rights.len(), solved.pairs.len());
            }
        }
    }
}
