//! Connected-graphlet catalogs for sizes 3-5, exact induced-subgraph
//! counting, and the graphlet kernel.
//!
//! A graphlet class is identified by a canonical edge bitmask: the maximum,
//! over all vertex permutations, of the upper-triangular adjacency bitmask.
//! Classes are ordered by (edge count, canonical mask), which for size 4
//! yields (path, star, cycle, paw, diamond, clique).

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

const NO_CLASS: u8 = u8::MAX;

/// Catalog of all connected non-isomorphic graphs on `l` vertices
/// (2 classes for l=3, 6 for l=4, 21 for l=5), with an O(1) lookup from any
/// edge bitmask to its class.
#[derive(Debug, Clone)]
pub struct Catalog {
    l: usize,
    pair_of_bit: Vec<(usize, usize)>,
    classes: Vec<ClassInfo>,
    mask_to_class: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassInfo {
    pub canonical_mask: u16,
    pub edge_count: u32,
}

impl Catalog {
    pub fn new(l: usize) -> Result<Catalog> {
        if !(3..=5).contains(&l) {
            return Err(Error::InvalidArgument(format!(
                "graphlet size {l} not in {{3, 4, 5}}"
            )));
        }
        let nbits = l * (l - 1) / 2;
        let mut pair_of_bit = Vec::with_capacity(nbits);
        for i in 0..l {
            for j in i + 1..l {
                pair_of_bit.push((i, j));
            }
        }
        let perms = permutations(l);

        let mut canon_of_mask = vec![0u16; 1 << nbits];
        let mut classes: Vec<ClassInfo> = Vec::new();
        for mask in 0..(1u32 << nbits) as u16 {
            if !mask_connected(mask, l, &pair_of_bit) {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| permute_mask(mask, p, &pair_of_bit, l))
                .max()
                .unwrap();
            canon_of_mask[mask as usize] = canon;
            let info = ClassInfo {
                canonical_mask: canon,
                edge_count: mask.count_ones(),
            };
            if !classes.contains(&info) {
                classes.push(info);
            }
        }
        classes.sort_by_key(|c| (c.edge_count, c.canonical_mask));
        let expected = match l {
            3 => 2,
            4 => 6,
            _ => 21,
        };
        assert_eq!(classes.len(), expected, "connected graphlet census for l={l}");

        let mut mask_to_class = vec![NO_CLASS; 1 << nbits];
        for mask in 0..(1u32 << nbits) as u16 {
            if mask_connected(mask, l, &pair_of_bit) {
                let canon = canon_of_mask[mask as usize];
                let idx = classes
                    .iter()
                    .position(|c| c.canonical_mask == canon)
                    .unwrap();
                mask_to_class[mask as usize] = idx as u8;
            }
        }
        Ok(Catalog {
            l,
            pair_of_bit,
            classes,
            mask_to_class,
        })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of graphlet classes, `|D_l|`.
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    /// Class index of a connected graph on exactly `l` vertices.
    pub fn classify(&self, g: &Graph) -> Result<usize> {
        if g.vertex_count() != self.l {
            return Err(Error::InvalidArgument(format!(
                "classify expects exactly {} vertices, got {}",
                self.l,
                g.vertex_count()
            )));
        }
        let mut mask = 0u16;
        for (bit, &(i, j)) in self.pair_of_bit.iter().enumerate() {
            if g.has_edge(i as VertexId, j as VertexId) {
                mask |= 1 << bit;
            }
        }
        match self.mask_to_class[mask as usize] {
            NO_CLASS => Err(Error::InvalidArgument(
                "classify expects a connected graph".into(),
            )),
            idx => Ok(idx as usize),
        }
    }

    /// Exact counts of connected induced size-`l` subgraphs per class, via
    /// ESU enumeration (each connected subset visited exactly once by
    /// extending along edges with id-ordering and exclusive-neighborhood
    /// pruning). Graphs with fewer than `l` vertices yield the zero vector.
    pub fn count(&self, g: &Graph) -> Vec<u64> {
        let mut counts = vec![0u64; self.dimension()];
        if g.vertex_count() < self.l {
            return counts;
        }
        let mut sub: Vec<VertexId> = Vec::with_capacity(self.l);
        for root in g.vertices() {
            sub.push(root);
            let ext: Vec<VertexId> = g
                .neighbors(root)
                .iter()
                .copied()
                .filter(|&u| u > root)
                .collect();
            self.extend(g, root, &mut sub, ext, &mut counts);
            sub.pop();
        }
        counts
    }

    fn extend(
        &self,
        g: &Graph,
        root: VertexId,
        sub: &mut Vec<VertexId>,
        mut ext: Vec<VertexId>,
        counts: &mut [u64],
    ) {
        if sub.len() == self.l {
            counts[self.class_of_subset(g, sub)] += 1;
            return;
        }
        while let Some(w) = ext.pop() {
            let mut ext2 = ext.clone();
            for &u in g.neighbors(w) {
                if u > root && !sub.contains(&u) && !sub.iter().any(|&s| g.has_edge(s, u)) {
                    ext2.push(u);
                }
            }
            sub.push(w);
            self.extend(g, root, sub, ext2, counts);
            sub.pop();
        }
    }

    fn class_of_subset(&self, g: &Graph, sub: &[VertexId]) -> usize {
        let mut mask = 0u16;
        for (bit, &(i, j)) in self.pair_of_bit.iter().enumerate() {
            if g.has_edge(sub[i], sub[j]) {
                mask |= 1 << bit;
            }
        }
        let class = self.mask_to_class[mask as usize];
        debug_assert_ne!(class, NO_CLASS, "ESU produced a disconnected subset");
        class as usize
    }

    /// Reference counter that scans every `C(n, l)` vertex subset. Same
    /// contract as [`Catalog::count`]; kept deliberately naive so it can
    /// serve as an independent oracle in tests.
    pub fn count_exhaustive(&self, g: &Graph) -> Result<Vec<u64>> {
        let n = g.vertex_count();
        if n > 14 {
            return Err(Error::InvalidArgument(format!(
                "exhaustive count limited to n <= 14, got {n}"
            )));
        }
        let mut counts = vec![0u64; self.dimension()];
        let mut subset = vec![0 as VertexId; self.l];
        if n >= self.l {
            self.subsets_rec(g, 0, 0, &mut subset, &mut counts);
        }
        Ok(counts)
    }

    fn subsets_rec(
        &self,
        g: &Graph,
        depth: usize,
        first: VertexId,
        subset: &mut Vec<VertexId>,
        counts: &mut [u64],
    ) {
        if depth == self.l {
            let mut mask = 0u16;
            for (bit, &(i, j)) in self.pair_of_bit.iter().enumerate() {
                if g.has_edge(subset[i], subset[j]) {
                    mask |= 1 << bit;
                }
            }
            if self.mask_to_class[mask as usize] != NO_CLASS {
                counts[self.mask_to_class[mask as usize] as usize] += 1;
            }
            return;
        }
        let remaining = (self.l - depth - 1) as VertexId;
        for v in first..g.vertex_count() as VertexId - remaining {
            subset[depth] = v;
            self.subsets_rec(g, depth + 1, v + 1, subset, counts);
        }
    }

    /// L2-normalized graphlet frequency vector; the zero vector when the
    /// graph contains no connected size-`l` induced subgraph.
    pub fn vector(&self, g: &Graph) -> GraphletVector {
        GraphletVector::from_counts(self.l as u8, &self.count(g))
    }
}

/// L2-normalized (or exactly zero) frequency vector over the connected
/// graphlets of one size.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphletVector {
    l: u8,
    values: Vec<f64>,
}

impl GraphletVector {
    pub fn from_counts(l: u8, counts: &[u64]) -> GraphletVector {
        let norm = counts
            .iter()
            .map(|&c| (c as f64) * (c as f64))
            .sum::<f64>()
            .sqrt();
        let values = if norm == 0.0 {
            vec![0.0; counts.len()]
        } else {
            counts.iter().map(|&c| c as f64 / norm).collect()
        };
        GraphletVector { l, values }
    }

    pub fn from_values(l: u8, values: Vec<f64>) -> GraphletVector {
        GraphletVector { l, values }
    }

    pub fn l(&self) -> u8 {
        self.l
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0.0)
    }

    /// Plain dot product; panics on dimension mismatch.
    pub fn dot(&self, other: &GraphletVector) -> f64 {
        assert_eq!(self.values.len(), other.values.len(), "dimension mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Graphlet kernel `K = f1 . f2`, in `[0, 1]` for unit (or zero) vectors.
/// Identical nonzero vectors score exactly 1.
pub fn kernel(f1: &GraphletVector, f2: &GraphletVector) -> Result<f64> {
    if f1.l != f2.l || f1.values.len() != f2.values.len() {
        return Err(Error::InvalidArgument(format!(
            "kernel dimension mismatch: l={}/{} dim={}/{}",
            f1.l,
            f2.l,
            f1.values.len(),
            f2.values.len()
        )));
    }
    if f1.values == f2.values {
        return Ok(if f1.is_zero() { 0.0 } else { 1.0 });
    }
    Ok(f1.dot(f2).clamp(0.0, 1.0))
}

fn permutations(l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..l).collect();
    permute_rec(&mut items, 0, &mut out);
    out
}

fn permute_rec(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_rec(items, k + 1, out);
        items.swap(k, i);
    }
}

fn permute_mask(mask: u16, perm: &[usize], pair_of_bit: &[(usize, usize)], l: usize) -> u16 {
    let mut out = 0u16;
    for (bit, &(i, j)) in pair_of_bit.iter().enumerate() {
        if mask & (1 << bit) != 0 {
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            out |= 1 << bit_of_pair(a, b, l);
        }
    }
    out
}

fn bit_of_pair(i: usize, j: usize, l: usize) -> usize {
    debug_assert!(i < j);
    i * (2 * l - i - 1) / 2 + (j - i - 1)
}

fn mask_connected(mask: u16, l: usize, pair_of_bit: &[(usize, usize)]) -> bool {
    let mut reached = 1usize; // bit set of visited vertices, start at 0
    loop {
        let mut grew = false;
        for (bit, &(i, j)) in pair_of_bit.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                let has_i = reached & (1 << i) != 0;
                let has_j = reached & (1 << j) != 0;
                if has_i != has_j {
                    reached |= (1 << i) | (1 << j);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    reached == (1 << l) - 1
}
