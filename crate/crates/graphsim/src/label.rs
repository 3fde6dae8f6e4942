//! Per-vertex labels (graphlet vectors of BFS neighborhoods), parallel
//! whole-graph labeling, and label-set persistence.
//!
//! ## Index file format
//!
//! Little-endian binary: magic `GMIX`, version `u32`, `l: u32`, `t: u32`,
//! `n: u64`, `dimension: u32`, graph fingerprint `u64`, then `n * dimension`
//! IEEE-754 doubles (one row per vertex). Only the label vectors persist;
//! the k-d tree is rebuilt on load.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::graph::{bfs_neighborhood, induced_subgraph, Graph, VertexId};
use crate::graphlet::{Catalog, GraphletVector};
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"GMIX";
const VERSION: u32 = 1;

/// BFS depth and graphlet size for vertex labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelParams {
    pub t: u32,
    pub l: u8,
}

impl LabelParams {
    pub fn new(t: u32, l: u8) -> Result<LabelParams> {
        if t < 1 {
            return Err(Error::InvalidArgument("BFS depth t must be >= 1".into()));
        }
        if !(3..=5).contains(&l) {
            return Err(Error::InvalidArgument(format!(
                "graphlet size {l} not in {{3, 4, 5}}"
            )));
        }
        Ok(LabelParams { t, l })
    }
}

impl Default for LabelParams {
    fn default() -> LabelParams {
        LabelParams { t: 2, l: 4 }
    }
}

/// All vertex labels of one graph, tagged with the labeling parameters and
/// the graph's fingerprint.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelSet {
    pub params: LabelParams,
    labels: Vec<GraphletVector>,
    fingerprint: u64,
}

impl LabelSet {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: VertexId) -> &GraphletVector {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[GraphletVector] {
        &self.labels
    }

    pub fn dimension(&self) -> usize {
        self.labels.first().map_or(0, |l| l.dimension())
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// True when this label set was computed from a graph with the same
    /// structure.
    pub fn matches_graph(&self, g: &Graph) -> bool {
        self.fingerprint == g.fingerprint()
    }

    pub fn save<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&(self.params.l as u32).to_le_bytes())?;
        w.write_all(&self.params.t.to_le_bytes())?;
        w.write_all(&(self.labels.len() as u64).to_le_bytes())?;
        w.write_all(&(self.dimension() as u32).to_le_bytes())?;
        w.write_all(&self.fingerprint.to_le_bytes())?;
        for label in &self.labels {
            for &x in label.values() {
                w.write_all(&x.to_le_bytes())?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn load<P: AsRef<Path>>(path: P) -> Result<LabelSet> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 4];
        read_bytes(&mut r, &mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = read_u32(&mut r)?;
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let l = read_u32(&mut r)?;
        let t = read_u32(&mut r)?;
        let params = LabelParams::new(t, l.try_into().map_err(|_| bad_l(l))?)
            .map_err(|e| Error::Format(e.to_string()))?;
        let n = read_u64(&mut r)? as usize;
        let dim = read_u32(&mut r)? as usize;
        let expect_dim = Catalog::new(params.l as usize)?.dimension();
        if dim != expect_dim {
            return Err(Error::Format(format!(
                "dimension {dim} does not match |D_{}| = {expect_dim}",
                params.l
            )));
        }
        let fingerprint = read_u64(&mut r)?;
        let mut labels = Vec::with_capacity(n);
        let mut row = vec![0u8; dim * 8];
        for _ in 0..n {
            read_bytes(&mut r, &mut row)?;
            let values: Vec<f64> = row
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
                .collect();
            let norm: f64 = values.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm != 0.0 && (norm - 1.0).abs() > 1e-9 {
                return Err(Error::Format(format!("label row has norm {norm}")));
            }
            labels.push(GraphletVector::from_values(params.l, values));
        }
        let mut probe = [0u8; 1];
        if r.read(&mut probe)? != 0 {
            return Err(Error::Format("trailing bytes after label data".into()));
        }
        Ok(LabelSet {
            params,
            labels,
            fingerprint,
        })
    }
}

fn bad_l(l: u32) -> Error {
    Error::Format(format!("graphlet size {l} out of range"))
}

fn read_bytes<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf)
        .map_err(|_| Error::Format("truncated index file".into()))
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    read_bytes(r, &mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    read_bytes(r, &mut b)?;
    Ok(u64::from_le_bytes(b))
}

/// Label of one vertex: the graphlet vector of the subgraph induced by its
/// depth-`t` BFS neighborhood.
pub fn vertex_label(g: &Graph, v: VertexId, params: LabelParams) -> Result<GraphletVector> {
    let catalog = Catalog::new(params.l as usize)?;
    vertex_label_with(g, v, params.t, &catalog)
}

fn vertex_label_with(g: &Graph, v: VertexId, t: u32, catalog: &Catalog) -> Result<GraphletVector> {
    let hood = bfs_neighborhood(g, v, t)?;
    let (subgraph, _) = induced_subgraph(g, &hood)?;
    Ok(catalog.vector(&subgraph))
}

/// Labels every vertex of `g`, distributing vertices over `workers` threads.
/// The result is independent of the worker count.
pub fn label_all(g: &Graph, params: LabelParams, workers: usize) -> LabelSet {
    let n = g.vertex_count();
    let workers = workers.max(1).min(n.max(1));
    let catalog = Catalog::new(params.l as usize).expect("validated params");
    let next = AtomicUsize::new(0);

    let mut chunks: Vec<Vec<(VertexId, GraphletVector)>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for _ in 0..workers {
            let catalog = &catalog;
            let next = &next;
            handles.push(scope.spawn(move || {
                let mut local = Vec::new();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= n {
                        break;
                    }
                    let v = i as VertexId;
                    let label =
                        vertex_label_with(g, v, params.t, catalog).expect("vertex id in range");
                    local.push((v, label));
                }
                local
            }));
        }
        for h in handles {
            chunks.push(h.join().expect("labeling worker panicked"));
        }
    });

    let dim = catalog.dimension();
    let mut labels = vec![GraphletVector::from_values(params.l, vec![0.0; dim]); n];
    for (v, label) in chunks.into_iter().flatten() {
        labels[v as usize] = label;
    }
    LabelSet {
        params,
        labels,
        fingerprint: g.fingerprint(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::synth::{gnp, SplitMix64};

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as VertexId {
            for v in u + 1..n as VertexId {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges)
    }

    #[test]
    fn params_validation() {
        assert!(LabelParams::new(0, 4).is_err());
        assert!(LabelParams::new(2, 6).is_err());
        assert_eq!(LabelParams::default(), LabelParams { t: 2, l: 4 });
    }

    #[test]
    fn k5_labels_are_pure_clique() {
        let g = complete(5);
        let params = LabelParams::new(1, 4).unwrap();
        for v in g.vertices() {
            let label = vertex_label(&g, v, params).unwrap();
            assert_eq!(label.values(), &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        }
    }

    #[test]
    fn path_center_label() {
        // Depth-2 neighborhood of the middle of a 9-path is a 5-path with two
        // induced 4-paths.
        let g = Graph::from_edges(9, (0..8).map(|i| (i, i + 1)));
        let label = vertex_label(&g, 4, LabelParams::default()).unwrap();
        assert_eq!(label.values(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn isolated_vertex_label_is_zero() {
        let g = Graph::from_edges(4, [(1, 2), (2, 3)]);
        let label = vertex_label(&g, 0, LabelParams::default()).unwrap();
        assert!(label.is_zero());
    }

    #[test]
    fn label_out_of_range() {
        let g = complete(3);
        assert!(vertex_label(&g, 7, LabelParams::default()).is_err());
    }

    #[test]
    fn label_all_matches_vertex_label() {
        let g = gnp(30, 0.15, 5).unwrap();
        let params = LabelParams::default();
        let set = label_all(&g, params, 3);
        for v in g.vertices() {
            assert_eq!(set.label(v), &vertex_label(&g, v, params).unwrap());
        }
    }

    #[test]
    fn label_all_worker_count_invariant() {
        let g = gnp(40, 0.12, 8).unwrap();
        let params = LabelParams::default();
        let one = label_all(&g, params, 1);
        let eight = label_all(&g, params, 8);
        assert_eq!(one, eight);
    }

    #[test]
    fn vertex_transitive_graph_has_equal_labels() {
        let c8 = Graph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8)));
        let set = label_all(&c8, LabelParams::default(), 2);
        for v in 1..8 {
            assert_eq!(set.label(v), set.label(0));
        }
    }

    #[test]
    fn labels_permute_with_isomorphism() {
        let g = gnp(20, 0.2, 77).unwrap();
        let mut rng = SplitMix64::new(4);
        let mut perm: Vec<VertexId> = (0..20).collect();
        for i in (1..20usize).rev() {
            let j = rng.next_below(i + 1);
            perm.swap(i, j);
        }
        let h = Graph::from_edges(
            20,
            g.edges().map(|(u, v)| (perm[u as usize], perm[v as usize])),
        );
        let params = LabelParams::default();
        let gl = label_all(&g, params, 2);
        let hl = label_all(&h, params, 2);
        for v in g.vertices() {
            assert_eq!(gl.label(v), hl.label(perm[v as usize]));
        }
    }

    #[test]
    fn save_load_round_trip() {
        let g = gnp(25, 0.2, 31).unwrap();
        let set = label_all(&g, LabelParams::default(), 2);
        let dir = std::env::temp_dir().join(format!("graphsim-label-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.idx");
        set.save(&path).unwrap();
        let loaded = LabelSet::load(&path).unwrap();
        assert_eq!(set, loaded);
        assert!(loaded.matches_graph(&g));
        assert!(!loaded.matches_graph(&gnp(25, 0.2, 32).unwrap()));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn load_rejects_truncated_and_corrupt_files() {
        let g = gnp(10, 0.3, 1).unwrap();
        let set = label_all(&g, LabelParams::default(), 1);
        let dir = std::env::temp_dir().join(format!("graphsim-trunc-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("full.idx");
        set.save(&path).unwrap();

        let bytes = std::fs::read(&path).unwrap();
        let tr_path = dir.join("truncated.idx");
        std::fs::write(&tr_path, &bytes[..bytes.len() - 5]).unwrap();
        assert!(matches!(LabelSet::load(&tr_path), Err(Error::Format(_))));

        let mut corrupt = bytes.clone();
        corrupt[0] = b'X';
        let bad_path = dir.join("badmagic.idx");
        std::fs::write(&bad_path, &corrupt).unwrap();
        assert!(matches!(LabelSet::load(&bad_path), Err(Error::Format(_))));

        std::fs::remove_dir_all(&dir).unwrap();
    }
}
