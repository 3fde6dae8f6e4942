//! Immutable undirected simple graphs in compressed sorted-adjacency form,
//! plus the traversal primitives the rest of the crate is built on.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::io::{BufRead, Write};

use crate::{Error, Result};

/// Dense internal vertex id in `[0, n)`.
pub type VertexId = u32;

/// Undirected simple graph with sorted neighbor lists stored in CSR form.
///
/// No self-loops, no duplicate edges, adjacency symmetric. Immutable after
/// construction, so it is safe to share across worker threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Self-loops and duplicate edges
    /// (in either orientation) are dropped silently.
    pub fn from_edges<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!((u as usize) < n && (v as usize) < n, "edge endpoint out of range");
            if u == v {
                continue;
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        let mut neighbors = Vec::new();
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        Graph { offsets, neighbors }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges, each counted once.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_count() as VertexId
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n <= 1 || connected_components(self)[0].len() == n
    }

    /// FNV-1a hash of the full adjacency structure. Stable across platforms;
    /// used to detect stale persisted label sets.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::new();
        h.write_u64(self.vertex_count() as u64);
        h.write_u64(self.edge_count() as u64);
        for &off in &self.offsets {
            h.write_u64(off as u64);
        }
        for &nb in &self.neighbors {
            h.write_u64(nb as u64);
        }
        h.finish()
    }

    /// Writes the graph as a parseable edge list, mapping internal ids
    /// through `ids` when provided.
    pub fn write_edge_list<W: Write>(&self, w: &mut W, ids: Option<&IdMap>) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            match ids {
                Some(m) => writeln!(w, "{}\t{}", m.external(u), m.external(v))?,
                None => writeln!(w, "{}\t{}", u, v)?,
            }
        }
        Ok(())
    }
}

/// Sorted set of vertex ids of a parent graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    members: Vec<VertexId>,
}

impl VertexSet {
    pub fn new(mut members: Vec<VertexId>) -> VertexSet {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.members
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Bijection between external vertex ids (as they appear in input files or a
/// parent graph) and dense internal ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdMap {
    forward: HashMap<u64, VertexId>,
    backward: Vec<u64>,
}

impl IdMap {
    pub fn identity(n: usize) -> IdMap {
        let mut m = IdMap::default();
        for i in 0..n as u64 {
            m.intern(i);
        }
        m
    }

    /// Returns the internal id for `ext`, assigning the next dense id on
    /// first sight.
    pub fn intern(&mut self, ext: u64) -> VertexId {
        match self.forward.get(&ext) {
            Some(&id) => id,
            None => {
                let id = self.backward.len() as VertexId;
                self.forward.insert(ext, id);
                self.backward.push(ext);
                id
            }
        }
    }

    pub fn internal(&self, ext: u64) -> Option<VertexId> {
        self.forward.get(&ext).copied()
    }

    pub fn external(&self, id: VertexId) -> u64 {
        self.backward[id as usize]
    }

    pub fn len(&self) -> usize {
        self.backward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.backward.is_empty()
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` are
/// comments; blank lines are skipped. External ids are remapped densely in
/// ascending id order, so the same edge set parses identically regardless of
/// line order, and a serialized graph re-parses with unchanged internal
/// structure. Self-loops and duplicate edges are dropped.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(Graph, IdMap)> {
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let a = parse_token(tokens.next(), lineno + 1)?;
        let b = parse_token(tokens.next(), lineno + 1)?;
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "expected exactly two integer tokens".into(),
            });
        }
        raw.push((a, b));
    }
    let mut externals: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
    externals.sort_unstable();
    externals.dedup();
    let mut ids = IdMap::default();
    for ext in externals {
        ids.intern(ext);
    }
    let edges = raw.into_iter().map(|(a, b)| {
        (
            ids.internal(a).expect("interned"),
            ids.internal(b).expect("interned"),
        )
    });
    let graph = Graph::from_edges(ids.len(), edges.collect::<Vec<_>>());
    Ok((graph, ids))
}

fn parse_token(tok: Option<&str>, line: usize) -> Result<u64> {
    let tok = tok.ok_or(Error::Parse {
        line,
        msg: "expected exactly two integer tokens".into(),
    })?;
    tok.parse::<u64>().map_err(|_| Error::Parse {
        line,
        msg: format!("not a non-negative integer: {:?}", tok),
    })
}

/// All vertices reachable from `v` within `depth` edges, including `v`.
pub fn bfs_neighborhood(g: &Graph, v: VertexId, depth: u32) -> Result<VertexSet> {
    if (v as usize) >= g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "vertex {} out of range (n={})",
            v,
            g.vertex_count()
        )));
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen[v as usize] = true;
    queue.push_back((v, 0u32));
    out.push(v);
    while let Some((u, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for &w in g.neighbors(u) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                out.push(w);
                queue.push_back((w, d + 1));
            }
        }
    }
    Ok(VertexSet::new(out))
}

/// Subgraph induced by `s`: `|s|` vertices and exactly the edges of `g` with
/// both endpoints in `s`. The returned [`IdMap`] records parent ids.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, IdMap)> {
    if let Some(bad) = s.iter().find(|&v| (v as usize) >= g.vertex_count()) {
        return Err(Error::InvalidArgument(format!(
            "vertex {} out of range (n={})",
            bad,
            g.vertex_count()
        )));
    }
    let mut ids = IdMap::default();
    for v in s.iter() {
        ids.intern(v as u64);
    }
    let mut edges = Vec::new();
    for (new_u, old_u) in s.iter().enumerate() {
        for &old_v in g.neighbors(old_u) {
            if old_u < old_v {
                if let Ok(pos) = s.as_slice().binary_search(&old_v) {
                    edges.push((new_u as VertexId, pos as VertexId));
                }
            }
        }
    }
    Ok((Graph::from_edges(s.len(), edges), ids))
}

/// Maximal connected vertex sets, ordered by decreasing size with ties broken
/// by smallest member id.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n as VertexId {
        if seen[start as usize] {
            continue;
        }
        let mut queue = VecDeque::new();
        let mut members = Vec::new();
        seen[start as usize] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            members.push(u);
            for &w in g.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        components.push(VertexSet::new(members));
    }
    // Discovery order already ascends by smallest member; a stable sort by
    // size keeps that order within equal sizes.
    components.sort_by_key(|c| std::cmp::Reverse(c.len()));
    components
}

/// Incremental FNV-1a, 64-bit.
struct Fnv(u64);

impl Fnv {
    fn new() -> Fnv {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn write_u64(&mut self, x: u64) {
        for byte in x.to_le_bytes() {
            self.0 ^= byte as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    fn finish(&self) -> u64 {
        self.0
    }
}
