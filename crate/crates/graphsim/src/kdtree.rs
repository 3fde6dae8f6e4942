//! Exact k-nearest-neighbor search over label vectors.
//!
//! Splits on the dimension of maximum spread with the median point as pivot
//! and falls back to exhaustive scans in small leaves. Labels are
//! low-dimensional and heavily duplicated, so ties are everywhere; every
//! query resolves them by vertex id, which makes results identical to a
//! linear scan.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::graph::VertexId;
use crate::graphlet::GraphletVector;
use crate::label::LabelSet;
use crate::{Error, Result};

const LEAF_SIZE: usize = 16;

#[derive(Debug)]
enum Node {
    Split {
        axis: usize,
        value: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        start: usize,
        end: usize,
    },
}

/// Immutable spatial index over the points of a [`LabelSet`].
#[derive(Debug)]
pub struct KdIndex {
    dim: usize,
    points: Vec<f64>,
    order: Vec<VertexId>,
    nodes: Vec<Node>,
    root: usize,
}

impl KdIndex {
    pub fn build(labels: &LabelSet) -> KdIndex {
        let dim = labels.dimension();
        let mut points = Vec::with_capacity(labels.len() * dim);
        for label in labels.labels() {
            points.extend_from_slice(label.values());
        }
        KdIndex::from_flat(points, dim)
    }

    /// Builds from `n * dim` row-major coordinates; row index is the id.
    pub fn from_flat(points: Vec<f64>, dim: usize) -> KdIndex {
        assert!(dim > 0 || points.is_empty());
        let n = points.len().checked_div(dim).unwrap_or(0);
        let mut index = KdIndex {
            dim,
            points,
            order: (0..n as VertexId).collect(),
            nodes: Vec::new(),
            root: 0,
        };
        if n > 0 {
            index.root = index.build_rec(0, n);
        }
        index
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    fn coord(&self, id: VertexId, axis: usize) -> f64 {
        self.points[id as usize * self.dim + axis]
    }

    fn build_rec(&mut self, start: usize, end: usize) -> usize {
        let len = end - start;
        if len <= LEAF_SIZE {
            self.nodes.push(Node::Leaf { start, end });
            return self.nodes.len() - 1;
        }
        // Axis of maximum spread; identical points collapse into one leaf.
        let mut best_axis = 0;
        let mut best_spread = 0.0f64;
        for axis in 0..self.dim {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &id in &self.order[start..end] {
                let x = self.coord(id, axis);
                lo = lo.min(x);
                hi = hi.max(x);
            }
            let spread = hi - lo;
            if spread > best_spread {
                best_spread = spread;
                best_axis = axis;
            }
        }
        if best_spread == 0.0 {
            self.nodes.push(Node::Leaf { start, end });
            return self.nodes.len() - 1;
        }
        let mid = len / 2;
        let (points, dim) = (&self.points, self.dim);
        let key = |id: VertexId| (points[id as usize * dim + best_axis], id);
        self.order[start..end]
            .select_nth_unstable_by(mid, |&a, &b| key(a).partial_cmp(&key(b)).unwrap());
        let value = self.coord(self.order[start + mid], best_axis);
        let left = self.build_rec(start, start + mid);
        let right = self.build_rec(start + mid, end);
        self.nodes.push(Node::Split {
            axis: best_axis,
            value,
            left,
            right,
        });
        self.nodes.len() - 1
    }

    /// The exact `k` nearest indexed points to `q` under Euclidean distance,
    /// ascending by distance with ties broken by smaller vertex id. Returns
    /// all points when `k` exceeds the index size.
    pub fn knn(&self, q: &GraphletVector, k: usize) -> Result<Vec<(VertexId, f64)>> {
        if q.dimension() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "query dimension {} does not match index dimension {}",
                q.dimension(),
                self.dim
            )));
        }
        if k == 0 || self.is_empty() {
            return Ok(Vec::new());
        }
        let mut best = Best {
            k,
            heap: BinaryHeap::with_capacity(k + 1),
        };
        self.search(self.root, q.values(), &mut best);
        let mut out: Vec<(f64, VertexId)> = best.heap.into_iter().map(|c| (c.d2, c.id)).collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        Ok(out.into_iter().map(|(d2, id)| (id, d2.sqrt())).collect())
    }

    fn search(&self, node: usize, q: &[f64], best: &mut Best) {
        match self.nodes[node] {
            Node::Leaf { start, end } => {
                for &id in &self.order[start..end] {
                    let d2 = self.dist2(id, q);
                    best.consider(d2, id);
                }
            }
            Node::Split {
                axis,
                value,
                left,
                right,
            } => {
                let diff = q[axis] - value;
                let (near, far) = if diff < 0.0 { (left, right) } else { (right, left) };
                self.search(near, q, best);
                // Equal plane distance can still hide an id tie, so the far
                // side is pruned only on a strict excess.
                if !best.full() || diff * diff <= best.worst_d2() {
                    self.search(far, q, best);
                }
            }
        }
    }

    fn dist2(&self, id: VertexId, q: &[f64]) -> f64 {
        let base = id as usize * self.dim;
        let mut acc = 0.0;
        for (i, &x) in q.iter().enumerate() {
            let d = self.points[base + i] - x;
            acc += d * d;
        }
        acc
    }
}

#[derive(Debug)]
struct Candidate {
    d2: f64,
    id: VertexId,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d2
            .total_cmp(&other.d2)
            .then_with(|| self.id.cmp(&other.id))
    }
}

struct Best {
    k: usize,
    heap: BinaryHeap<Candidate>,
}

impl Best {
    fn full(&self) -> bool {
        self.heap.len() == self.k
    }

    fn worst_d2(&self) -> f64 {
        self.heap.peek().map_or(f64::INFINITY, |c| c.d2)
    }

    fn consider(&mut self, d2: f64, id: VertexId) {
        let cand = Candidate { d2, id };
        if self.heap.len() < self.k {
            self.heap.push(cand);
        } else if cand < *self.heap.peek().unwrap() {
            self.heap.pop();
            self.heap.push(cand);
        }
    }
}
