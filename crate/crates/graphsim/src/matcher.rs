//! The four matching subphases: candidate selection by k-NN over vertex
//! labels, seed matching by maximum-weight bipartite matching under the
//! neighborhood-aware weight, heap-driven incremental growth along graph
//! edges, and Jaccard-based completion of boundary vertices.
//!
//! Conventions fixed here and used everywhere: partial matches map query id
//! to target id, and all ties (heap keys, best-candidate scans) break toward
//! smaller query id first, then smaller target id, so a full match run is a
//! deterministic function of its inputs.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::bipartite::{max_weight_matching, BipartiteInstance};
use crate::graph::{connected_components, induced_subgraph, Graph, VertexId, VertexSet};
use crate::graphlet::{kernel, Catalog, GraphletVector};
use crate::kdtree::KdIndex;
use crate::label::LabelSet;
use crate::{Error, Result};

/// Matching-phase parameters: `k` nearest neighbors per query vertex,
/// scale factor `alpha` of the seed weight, growth threshold `h1`, and
/// completion threshold `h2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchParams {
    pub k: usize,
    pub alpha: f64,
    pub h1: f64,
    pub h2: f64,
}

impl MatchParams {
    pub fn new(k: usize, alpha: f64, h1: f64, h2: f64) -> Result<MatchParams> {
        if k < 1 {
            return Err(Error::InvalidArgument("k must be >= 1".into()));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha={alpha} outside (0, 1)"
            )));
        }
        for (name, h) in [("h1", h1), ("h2", h2)] {
            if !(0.0..=1.0).contains(&h) {
                return Err(Error::InvalidArgument(format!("{name}={h} outside [0, 1]")));
            }
        }
        Ok(MatchParams { k, alpha, h1, h2 })
    }
}

impl Default for MatchParams {
    fn default() -> MatchParams {
        MatchParams {
            k: 10,
            alpha: 0.3,
            h1: 0.4,
            h2: 0.95,
        }
    }
}

/// Label similarity `s(u, v)`: dot product of two label vectors.
pub fn similarity(a: &GraphletVector, b: &GraphletVector) -> f64 {
    a.dot(b)
}

/// Selection-phase output: the k-NN list per query vertex and their union R.
#[derive(Debug, Clone)]
pub struct Candidates {
    pub per_query: Vec<Vec<VertexId>>,
    pub union: VertexSet,
}

/// Retrieves the `k` target vertices closest to each query vertex label.
pub fn select_candidates(
    index: &KdIndex,
    query_labels: &LabelSet,
    k: usize,
) -> Result<Candidates> {
    let mut per_query = Vec::with_capacity(query_labels.len());
    let mut union = Vec::new();
    for label in query_labels.labels() {
        let hits = index.knn(label, k)?;
        let ids: Vec<VertexId> = hits.into_iter().map(|(id, _)| id).collect();
        union.extend_from_slice(&ids);
        per_query.push(ids);
    }
    Ok(Candidates {
        per_query,
        union: VertexSet::new(union),
    })
}

/// Seed edge weight for the pair `(v, w)`: combines `s(v, w)` with the best
/// similarities between `w`'s closed neighborhood in the target and the other
/// query vertices connected to it in the bipartite candidate graph, under a
/// power mean with exponent `1/alpha`:
///
/// `lambda = (s(v,w)^alpha + sum_u s(u)^alpha)^(1/alpha) / (|Q'| + 1)`
///
/// The value can exceed 1; it is only compared within one matching instance.
pub fn lambda_weight(
    v: u32,
    w: VertexId,
    cands: &Candidates,
    g: &Graph,
    target_labels: &LabelSet,
    query_labels: &LabelSet,
    alpha: f64,
) -> f64 {
    let s_vw = similarity(query_labels.label(v), target_labels.label(w));
    let in_closed_hood = |z: VertexId| z == w || g.has_edge(w, z);
    let mut sum = s_vw.powf(alpha);
    let mut parties = 1.0f64;
    for u in 0..cands.per_query.len() as u32 {
        if u == v {
            continue;
        }
        let mut best: f64 = -1.0;
        for &z in &cands.per_query[u as usize] {
            if in_closed_hood(z) {
                best = best.max(similarity(query_labels.label(u), target_labels.label(z)));
            }
        }
        if best >= 0.0 {
            sum += best.powf(alpha);
            parties += 1.0;
        }
    }
    sum.powf(1.0 / alpha) / parties
}

/// Seed match: the pairs of the optimal bipartite matching whose target
/// vertices lie in the largest connected component of the matched target
/// subgraph.
#[derive(Debug, Clone, Default)]
pub struct SeedMatch {
    /// (query id, target id), sorted by query id.
    pub pairs: Vec<(u32, VertexId)>,
    /// S_G: matched target vertices kept for growth.
    pub target_component: VertexSet,
    /// S_Q: their query partners.
    pub query_vertices: VertexSet,
}

impl SeedMatch {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Solves the lambda-weighted bipartite matching between query vertices and
/// the candidate set, then restricts to the largest connected component of
/// the matched target subgraph.
pub fn seed_match(
    g: &Graph,
    target_labels: &LabelSet,
    query_labels: &LabelSet,
    cands: &Candidates,
    alpha: f64,
) -> SeedMatch {
    let n_q = cands.per_query.len();
    let right_ids = cands.union.as_slice();
    if right_ids.is_empty() {
        return SeedMatch::default();
    }
    let mut inst = BipartiteInstance::new(n_q, right_ids.len());
    for v in 0..n_q as u32 {
        for &w in &cands.per_query[v as usize] {
            let weight = lambda_weight(v, w, cands, g, target_labels, query_labels, alpha);
            let pos = right_ids.binary_search(&w).expect("candidate in union");
            inst.add_edge(v, pos as u32, weight);
        }
    }
    let matching = max_weight_matching(&inst);
    if matching.pairs.is_empty() {
        return SeedMatch::default();
    }

    let matched_targets: VertexSet = matching
        .pairs
        .iter()
        .map(|&(_, pos)| right_ids[pos as usize])
        .collect();
    let (matched_subgraph, ids) = induced_subgraph(g, &matched_targets).expect("ids in range");
    let largest = &connected_components(&matched_subgraph)[0];
    let target_component: VertexSet = largest
        .iter()
        .map(|local| ids.external(local) as VertexId)
        .collect();

    let mut pairs: Vec<(u32, VertexId)> = matching
        .pairs
        .iter()
        .map(|&(v, pos)| (v, right_ids[pos as usize]))
        .filter(|&(_, w)| target_component.contains(w))
        .collect();
    pairs.sort_unstable();
    let query_vertices: VertexSet = pairs.iter().map(|&(v, _)| v).collect();
    SeedMatch {
        pairs,
        target_component,
        query_vertices,
    }
}

/// Growing one-to-one mapping from query vertices to target vertices.
#[derive(Debug, Clone)]
pub struct PartialMatch {
    query_to_target: Vec<Option<VertexId>>,
    target_matched: Vec<bool>,
    len: usize,
}

impl PartialMatch {
    pub fn new(query_n: usize, target_n: usize) -> PartialMatch {
        PartialMatch {
            query_to_target: vec![None; query_n],
            target_matched: vec![false; target_n],
            len: 0,
        }
    }

    pub fn insert(&mut self, query: u32, target: VertexId) {
        debug_assert!(self.query_to_target[query as usize].is_none());
        debug_assert!(!self.target_matched[target as usize]);
        self.query_to_target[query as usize] = Some(target);
        self.target_matched[target as usize] = true;
        self.len += 1;
    }

    pub fn target_of(&self, query: u32) -> Option<VertexId> {
        self.query_to_target[query as usize]
    }

    pub fn is_target_matched(&self, target: VertexId) -> bool {
        self.target_matched[target as usize]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// (query, target) pairs sorted by query id.
    pub fn pairs(&self) -> Vec<(u32, VertexId)> {
        self.query_to_target
            .iter()
            .enumerate()
            .filter_map(|(q, t)| t.map(|t| (q as u32, t)))
            .collect()
    }

    /// V*: the image of the mapping.
    pub fn target_set(&self) -> VertexSet {
        self.query_to_target.iter().flatten().copied().collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    s: f64,
    query: u32,
    target: VertexId,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap: highest similarity first, ties to the smallest query id,
        // then smallest target id.
        self.s
            .total_cmp(&other.s)
            .then_with(|| other.query.cmp(&self.query))
            .then_with(|| other.target.cmp(&self.target))
    }
}

/// Candidate list of the growth phase: a max-heap with lazy deletion. Live
/// entries are one-to-one on query and target ids; superseded heap elements
/// are recognized and dropped at pop time.
#[derive(Debug, Default)]
pub(crate) struct CandidateHeap {
    heap: BinaryHeap<HeapEntry>,
    live_query: HashMap<u32, (VertexId, f64)>,
    live_target: HashSet<VertexId>,
}

impl CandidateHeap {
    pub(crate) fn new() -> CandidateHeap {
        CandidateHeap::default()
    }

    pub(crate) fn query_entry(&self, query: u32) -> Option<(VertexId, f64)> {
        self.live_query.get(&query).copied()
    }

    pub(crate) fn contains_target(&self, target: VertexId) -> bool {
        self.live_target.contains(&target)
    }

    pub(crate) fn insert(&mut self, query: u32, target: VertexId, s: f64) {
        debug_assert!(!self.live_query.contains_key(&query));
        debug_assert!(!self.live_target.contains(&target));
        self.live_query.insert(query, (target, s));
        self.live_target.insert(target);
        self.heap.push(HeapEntry { s, query, target });
    }

    /// Repoints `query`'s live entry at a better partner. The old heap
    /// element stays behind as garbage and is skipped when popped.
    pub(crate) fn replace(&mut self, query: u32, target: VertexId, s: f64) {
        let (old_target, _) = self
            .live_query
            .insert(query, (target, s))
            .expect("replace requires a live entry");
        self.live_target.remove(&old_target);
        self.live_target.insert(target);
        self.heap.push(HeapEntry { s, query, target });
    }

    pub(crate) fn pop(&mut self) -> Option<(u32, VertexId, f64)> {
        while let Some(entry) = self.heap.pop() {
            match self.live_query.get(&entry.query) {
                Some(&(target, s)) if target == entry.target && s == entry.s => {
                    self.live_query.remove(&entry.query);
                    self.live_target.remove(&entry.target);
                    return Some((entry.query, entry.target, entry.s));
                }
                _ => continue, // stale
            }
        }
        None
    }
}

/// Growth phase: pops the best live pair, commits it, and feeds the heap
/// from the unmatched neighborhoods of the committed pair. Only pairs with
/// `s >= h1` ever enter the heap; a query vertex already in the heap has its
/// partner upgraded when a strictly better one appears.
pub fn grow_match(
    g: &Graph,
    q: &Graph,
    target_labels: &LabelSet,
    query_labels: &LabelSet,
    seed: &SeedMatch,
    h1: f64,
) -> PartialMatch {
    let mut f = PartialMatch::new(q.vertex_count(), g.vertex_count());
    let mut heap = CandidateHeap::new();
    for &(v, w) in &seed.pairs {
        let s = similarity(query_labels.label(v), target_labels.label(w));
        if s >= h1 {
            heap.insert(v, w, s);
        }
    }

    while let Some((query, target, _s)) = heap.pop() {
        f.insert(query, target);

        // Alg. 4: try to pair each unmatched query neighbor of the committed
        // query vertex with the best free target neighbor of the committed
        // target vertex.
        let mut free_targets: Vec<VertexId> = g
            .neighbors(target)
            .iter()
            .copied()
            .filter(|&x| !f.is_target_matched(x) && !heap.contains_target(x))
            .collect();
        for &y in q.neighbors(query) {
            if f.target_of(y).is_some() || free_targets.is_empty() {
                continue;
            }
            let mut best_idx = 0;
            let mut best_s = f64::NEG_INFINITY;
            for (i, &x) in free_targets.iter().enumerate() {
                let s = similarity(target_labels.label(x), query_labels.label(y));
                if s > best_s || (s == best_s && x < free_targets[best_idx]) {
                    best_s = s;
                    best_idx = i;
                }
            }
            let best_x = free_targets[best_idx];
            match heap.query_entry(y) {
                None => {
                    if best_s >= h1 {
                        heap.insert(y, best_x, best_s);
                        free_targets.swap_remove(best_idx);
                    }
                }
                Some((_, current_s)) => {
                    if best_s > current_s {
                        heap.replace(y, best_x, best_s);
                        free_targets.swap_remove(best_idx);
                    }
                }
            }
        }
    }
    f
}

/// Jaccard coefficient of two sorted id slices; 0 when both are empty.
pub(crate) fn jaccard(a: &[u32], b: &[u32]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut i = 0;
    let mut j = 0;
    let mut inter = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Equal => {
                inter += 1;
                i += 1;
                j += 1;
            }
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
        }
    }
    let union = a.len() + b.len() - inter;
    inter as f64 / union as f64
}

/// Completion phase: matches still-unmatched query vertices to unmatched
/// target vertices on the boundary of the current match, by maximum-weight
/// matching over Jaccard coefficients of matched neighborhoods at threshold
/// `h2`.
pub fn complete_match(
    g: &Graph,
    q: &Graph,
    mut f: PartialMatch,
    h2: f64,
) -> PartialMatch {
    let matched_targets = f.target_set();
    let mut boundary: Vec<VertexId> = Vec::new();
    for w in matched_targets.iter() {
        for &x in g.neighbors(w) {
            if !f.is_target_matched(x) {
                boundary.push(x);
            }
        }
    }
    boundary.sort_unstable();
    boundary.dedup();
    let unmatched_query: Vec<u32> = (0..q.vertex_count() as u32)
        .filter(|&y| f.target_of(y).is_none())
        .collect();
    if boundary.is_empty() || unmatched_query.is_empty() {
        return f;
    }

    let mut target_to_query: HashMap<VertexId, u32> = HashMap::new();
    for (query, target) in f.pairs() {
        target_to_query.insert(target, query);
    }

    // Z'_v per boundary target: query partners of its matched neighbors.
    let matched_partner_sets: Vec<Vec<u32>> = boundary
        .iter()
        .map(|&x| {
            let mut partners: Vec<u32> = g
                .neighbors(x)
                .iter()
                .filter_map(|z| target_to_query.get(z).copied())
                .collect();
            partners.sort_unstable();
            partners
        })
        .collect();

    let mut inst = BipartiteInstance::new(boundary.len(), unmatched_query.len());
    for (yi, &y) in unmatched_query.iter().enumerate() {
        let mut matched_query_nbrs: Vec<u32> = q
            .neighbors(y)
            .iter()
            .copied()
            .filter(|&z| f.target_of(z).is_some())
            .collect();
        matched_query_nbrs.sort_unstable();
        for (xi, partners) in matched_partner_sets.iter().enumerate() {
            let c = jaccard(partners, &matched_query_nbrs);
            if c >= h2 {
                inst.add_edge(xi as u32, yi as u32, c);
            }
        }
    }
    let matching = max_weight_matching(&inst);
    for &(xi, yi) in &matching.pairs {
        f.insert(unmatched_query[yi as usize], boundary[xi as usize]);
    }
    f
}

/// Per-phase accounting of one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatchStats {
    /// |R|: distinct candidate target vertices after selection.
    pub candidates: usize,
    /// |S_G|: seed pairs surviving the largest-component restriction.
    pub seed: usize,
    /// Mapping size after the growth phase.
    pub grown: usize,
    /// Final mapping size after completion.
    pub completed: usize,
}

/// Final match: the mapping, its target vertex set V*, the kernel score
/// K(Q, G*), and per-phase statistics.
#[derive(Debug, Clone)]
pub struct MatchResult {
    pub mapping: Vec<(u32, VertexId)>,
    pub target_set: VertexSet,
    pub score: f64,
    pub stats: MatchStats,
}

/// Scores a finished mapping: K(Q, G*) where G* is the subgraph induced by
/// the mapped target vertices.
pub fn score_match(
    g: &Graph,
    q: &Graph,
    f: &PartialMatch,
    l: u8,
    stats: MatchStats,
) -> MatchResult {
    let target_set = f.target_set();
    let (g_star, _) = induced_subgraph(g, &target_set).expect("mapped ids in range");
    let catalog = Catalog::new(l as usize).expect("validated graphlet size");
    let score = kernel(&catalog.vector(q), &catalog.vector(&g_star)).expect("same catalog");
    MatchResult {
        mapping: f.pairs(),
        target_set,
        score,
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{label_all, LabelParams};

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as VertexId {
            for v in u + 1..n as VertexId {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges)
    }

    /// Connected 8-vertex graph whose vertex labels at t=2, l=4 are all
    /// distinct, so self-search exercises exact retrieval and matching.
    fn asymmetric8() -> Graph {
        Graph::from_edges(
            8,
            [
                (0, 1),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 6),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 7),
                (6, 7),
            ],
        )
    }

    fn unit(values: &[f64]) -> GraphletVector {
        GraphletVector::from_values(4, values.to_vec())
    }

    #[test]
    fn params_validation() {
        assert!(MatchParams::new(0, 0.3, 0.4, 0.95).is_err());
        assert!(MatchParams::new(10, 0.0, 0.4, 0.95).is_err());
        assert!(MatchParams::new(10, 1.0, 0.4, 0.95).is_err());
        assert!(MatchParams::new(10, 0.3, 1.5, 0.95).is_err());
        assert!(MatchParams::new(10, 0.3, 0.4, -0.1).is_err());
        let p = MatchParams::default();
        assert_eq!((p.k, p.alpha, p.h1, p.h2), (10, 0.3, 0.4, 0.95));
    }

    #[test]
    fn similarity_examples() {
        let a = unit(&[1.0, 0.0, 0.0]);
        assert_eq!(similarity(&a, &a), 1.0);
        let b = unit(&[0.0, 1.0, 0.0]);
        assert_eq!(similarity(&a, &b), 0.0);
        let half = 0.5f64.sqrt();
        let c = unit(&[half, half, 0.0]);
        assert!((similarity(&a, &c) - half).abs() < 1e-12);
        assert_eq!(similarity(&a, &c), similarity(&c, &a));
    }

    #[test]
    fn asymmetric8_has_distinct_labels() {
        let g = asymmetric8();
        let labels = label_all(&g, LabelParams::default(), 1);
        for u in 0..8u32 {
            for v in u + 1..8 {
                assert_ne!(labels.label(u), labels.label(v), "labels {u} and {v}");
            }
        }
    }

    #[test]
    fn select_candidates_retrieves_self_at_distance_zero() {
        let g = asymmetric8();
        let labels = label_all(&g, LabelParams::default(), 1);
        let index = KdIndex::build(&labels);
        let cands = select_candidates(&index, &labels, 1).unwrap();
        for v in 0..8u32 {
            assert_eq!(cands.per_query[v as usize], vec![v]);
        }
        assert_eq!(cands.union.len(), 8);
    }

    #[test]
    fn candidate_union_capped_by_target_size() {
        let g = complete(5);
        let labels = label_all(&g, LabelParams::default(), 1);
        let index = KdIndex::build(&labels);
        let q = complete(4);
        let q_labels = label_all(&q, LabelParams::default(), 1);
        let cands = select_candidates(&index, &q_labels, 10).unwrap();
        assert!(cands.union.len() <= 5);
        for list in &cands.per_query {
            assert_eq!(list.len(), 5); // k clamped to n
        }
    }

    #[test]
    fn lambda_equals_similarity_without_context() {
        // Isolated target vertex: V_w = {w}, and no other query vertex has w
        // in its candidate list.
        let g = Graph::from_edges(3, [(1, 2)]);
        let labels = label_all(&g, LabelParams::new(1, 3).unwrap(), 1);
        let q = Graph::from_edges(2, [(0, 1)]);
        let q_labels = label_all(&q, LabelParams::new(1, 3).unwrap(), 1);
        let cands = Candidates {
            per_query: vec![vec![0], vec![1]],
            union: VertexSet::new(vec![0, 1]),
        };
        let s = similarity(q_labels.label(0), labels.label(0));
        let lambda = lambda_weight(0, 0, &cands, &g, &labels, &q_labels, 0.3);
        assert!((lambda - s).abs() <= 1e-12, "lambda={lambda} s={s}");
    }

    #[test]
    fn lambda_with_one_unit_context_vertex() {
        // Triangle labels are identical and unit-similar; one extra query
        // vertex contributes s(u)=1 through the closed neighborhood of w=0,
        // the other points at an isolated target vertex outside it.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0)]);
        let labels = label_all(&g, LabelParams::new(1, 3).unwrap(), 1);
        let q = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        let q_labels = label_all(&q, LabelParams::new(1, 3).unwrap(), 1);
        let cands = Candidates {
            per_query: vec![vec![0], vec![1], vec![3]],
            union: VertexSet::new(vec![0, 1, 3]),
        };
        let lambda = lambda_weight(0, 0, &cands, &g, &labels, &q_labels, 0.3);
        let expected = 2f64.powf(1.0 / 0.3) / 2.0;
        assert!((lambda - expected).abs() < 1e-9, "lambda={lambda}");
        assert!((lambda - 5.0397).abs() < 1e-3);
    }

    #[test]
    fn lambda_zero_similarity_is_zero() {
        let g = Graph::from_edges(2, []);
        let labels = label_all(&g, LabelParams::new(1, 3).unwrap(), 1);
        let q = Graph::from_edges(2, [(0, 1)]);
        let q_labels = label_all(&q, LabelParams::new(1, 3).unwrap(), 1);
        let cands = Candidates {
            per_query: vec![vec![0], vec![1]],
            union: VertexSet::new(vec![0, 1]),
        };
        let lambda = lambda_weight(0, 0, &cands, &g, &labels, &q_labels, 0.3);
        assert_eq!(lambda, 0.0);
    }

    #[test]
    fn seed_match_on_identical_graph_is_identity() {
        let g = asymmetric8();
        let labels = label_all(&g, LabelParams::default(), 1);
        let index = KdIndex::build(&labels);
        let cands = select_candidates(&index, &labels, 3).unwrap();
        let seed = seed_match(&g, &labels, &labels, &cands, 0.3);
        assert_eq!(
            seed.pairs,
            (0..8u32).map(|v| (v, v)).collect::<Vec<_>>()
        );
        assert_eq!(seed.target_component.len(), 8);
        assert_eq!(seed.query_vertices.len(), 8);
    }

    #[test]
    fn seed_match_keeps_largest_component() {
        // Target: triangle {0,1,2} plus disjoint edge {3,4}. Matching covers
        // both; the seed keeps only the triangle side.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (3, 4)]);
        let labels = label_all(&g, LabelParams::new(1, 3).unwrap(), 1);
        let index = KdIndex::build(&labels);
        let q_labels = labels.clone();
        let cands = select_candidates(&index, &q_labels, 5).unwrap();
        let seed = seed_match(&g, &labels, &q_labels, &cands, 0.3);
        assert_eq!(seed.target_component.as_slice(), &[0, 1, 2]);
        assert!(seed.pairs.iter().all(|&(_, w)| w <= 2));
    }

    #[test]
    fn empty_candidates_give_empty_seed() {
        let g = Graph::from_edges(3, [(0, 1)]);
        let labels = label_all(&g, LabelParams::default(), 1);
        let q_labels = labels.clone();
        let cands = Candidates {
            per_query: vec![vec![]; 3],
            union: VertexSet::default(),
        };
        let seed = seed_match(&g, &labels, &q_labels, &cands, 0.3);
        assert!(seed.is_empty());
    }

    #[test]
    fn candidate_heap_orders_and_replaces() {
        let mut heap = CandidateHeap::new();
        heap.insert(3, 30, 0.5);
        heap.insert(1, 10, 0.5);
        heap.insert(2, 20, 0.9);
        assert!(heap.contains_target(30));
        // Replacement per the update rule: same query, better partner.
        heap.replace(3, 31, 0.95);
        assert!(!heap.contains_target(30));
        assert!(heap.contains_target(31));

        assert_eq!(heap.pop(), Some((3, 31, 0.95)));
        assert_eq!(heap.pop(), Some((2, 20, 0.9)));
        // Equal keys pop in ascending query id order.
        assert_eq!(heap.pop(), Some((1, 10, 0.5)));
        assert_eq!(heap.pop(), None);
    }

    #[test]
    fn grow_skips_seeds_below_threshold() {
        // Query path vs target star: labels differ, similarity is low.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]);
        let labels = label_all(&g, LabelParams::default(), 1);
        let q = Graph::from_edges(5, (0..4).map(|i| (i, i + 1)));
        let q_labels = label_all(&q, LabelParams::default(), 1);
        let seed = SeedMatch {
            pairs: vec![(0, 0), (1, 1)],
            target_component: VertexSet::new(vec![0, 1]),
            query_vertices: VertexSet::new(vec![0, 1]),
        };
        let f = grow_match(&g, &q, &labels, &q_labels, &seed, 0.9999);
        assert!(f.is_empty());
    }

    #[test]
    fn grow_reaches_identity_fixpoint_on_identical_graph() {
        let g = asymmetric8();
        let labels = label_all(&g, LabelParams::default(), 1);
        let seed = SeedMatch {
            pairs: vec![(0, 0)],
            target_component: VertexSet::new(vec![0]),
            query_vertices: VertexSet::new(vec![0]),
        };
        let f = grow_match(&g, &g, &labels, &labels, &seed, 0.0);
        assert_eq!(f.len(), 8);
        for v in 0..8u32 {
            assert_eq!(f.target_of(v), Some(v));
        }
    }

    #[test]
    fn grow_extends_contiguously_from_seed() {
        let g = asymmetric8();
        let labels = label_all(&g, LabelParams::default(), 1);
        let seed = SeedMatch {
            pairs: vec![(4, 4)],
            target_component: VertexSet::new(vec![4]),
            query_vertices: VertexSet::new(vec![4]),
        };
        let f = grow_match(&g, &g, &labels, &labels, &seed, 0.0);
        // Every matched target must be reachable inside the matched set.
        let (sub, _) = induced_subgraph(&g, &f.target_set()).unwrap();
        assert!(sub.is_connected());
        assert_eq!(f.len(), 8);
    }

    #[test]
    fn jaccard_cases() {
        assert_eq!(jaccard(&[1, 2, 3], &[1, 2, 3]), 1.0);
        assert_eq!(jaccard(&[1, 2], &[3, 4]), 0.0);
        assert!((jaccard(&[1, 2], &[1, 2, 5]) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(jaccard(&[], &[]), 0.0);
        assert_eq!(jaccard(&[], &[1]), 0.0);
    }

    #[test]
    fn completion_fills_boundary_vertex() {
        // C4 with vertex 3 left unmatched: its matched neighborhoods agree
        // exactly, so completion pairs (3, 3).
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        let mut f = PartialMatch::new(4, 4);
        f.insert(0, 0);
        f.insert(1, 1);
        f.insert(2, 2);
        let f = complete_match(&c4, &c4, f, 0.95);
        assert_eq!(f.target_of(3), Some(3));
        let result = score_match(&c4, &c4, &f, 4, MatchStats::default());
        assert_eq!(result.score, 1.0);
        assert_eq!(result.target_set.len(), 4);
    }

    #[test]
    fn completion_respects_threshold() {
        // Query vertex 3's only matched neighbor is 2, but target boundary
        // vertex 4 hangs off target 0: Jaccard = 0 < h2, nothing added.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 4)]);
        let q = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let mut f = PartialMatch::new(4, 5);
        f.insert(0, 0);
        f.insert(1, 1);
        f.insert(2, 2);
        let f = complete_match(&g, &q, f, 0.95);
        assert_eq!(f.target_of(3), None);
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn score_of_disjoint_profiles_is_zero() {
        // Mapping K4 onto a path fragment: P4 vs K4 graphlet vectors are
        // orthogonal at l=4.
        let g = Graph::from_edges(6, (0..5).map(|i| (i, i + 1)));
        let q = complete(4);
        let mut f = PartialMatch::new(4, 6);
        for v in 0..4 {
            f.insert(v, v);
        }
        let result = score_match(&g, &q, &f, 4, MatchStats::default());
        assert_eq!(result.score, 0.0);
    }
}
