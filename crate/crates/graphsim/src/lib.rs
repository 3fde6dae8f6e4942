//! Subgraph similarity search in large undirected graphs.
//!
//! Given a large unlabeled target graph and a smaller connected query graph,
//! `graphsim` finds an induced subgraph of the target that is most similar to
//! the query under the graphlet kernel: the dot product of L2-normalized
//! frequency vectors of small connected induced subgraphs (graphlets).
//!
//! The search runs in two phases:
//!
//! 1. **Preprocessing** (one time per target): every target vertex is labeled
//!    with the graphlet vector of its depth-`t` BFS neighborhood, and a k-d
//!    tree is built over the labels for exact nearest-neighbor retrieval.
//! 2. **Matching** (per query): candidate target vertices are selected by
//!    k-NN on the query's vertex labels, a seed match is computed by exact
//!    maximum-weight bipartite matching under a neighborhood-aware weight,
//!    the seed is grown greedily along graph edges with a max-heap of
//!    candidate pairs, and boundary vertices are completed by Jaccard
//!    similarity of their matched neighborhoods.
//!
//! ## Quick start
//!
//! ```
//! use graphsim::{label, kdtree, pipeline, synth};
//!
//! // A small synthetic target and a planted query.
//! let target = synth::gnp(120, 0.06, 7).unwrap();
//! let planted = synth::random_connected_subgraph(&target, 18, 11).unwrap();
//! let (query, _) = graphsim::graph::induced_subgraph(&target, &planted).unwrap();
//!
//! let cfg = pipeline::RunConfig::default();
//! let labels = label::label_all(&target, cfg.label, cfg.workers);
//! let index = kdtree::KdIndex::build(&labels);
//! let (result, _timings) = pipeline::run_query(&target, &labels, &index, &query, &cfg).unwrap();
//! assert!(result.score >= 0.0 && result.score <= 1.0);
//! ```
//!
//! ## Runnable examples
//!
//! Each major capability has a standalone example under `examples/`:
//!
//! - **`parse_graph`** - read an edge-list file, report graph statistics
//! - **`graphlet_census`** - exact graphlet counts and vectors for small graphs
//! - **`kernel_similarity`** - graphlet kernel values between graph pairs
//! - **`vertex_labels`** - neighborhood labels and nearest-neighbor queries
//! - **`search_planted`** - full pipeline: plant a query, search, inspect the match
//! - **`search_noisy`** - search a target after random edge deletions
//! - **`dense_block`** - locate a planted dense block and report its density
//! - **`bench_suite`** - aggregate benchmark over repeated planted searches
//!
//! ```bash
//! cargo run --release --example search_planted
//! ```
//!
//! The `graphsim` binary exposes the same functionality as subcommands
//! (`preprocess`, `query`, `score`, `gen`, `perturb`, `extract`, `bench`);
//! see the README for the file formats involved.

pub mod bipartite;
pub mod cli;
pub mod graph;
pub mod graphlet;
pub mod kdtree;
pub mod label;
pub mod matcher;
pub mod pipeline;
pub mod synth;

use thiserror::Error;

/// Errors produced by graph ingestion, persistence, and search operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index format error: {0}")]
    Format(String),

    #[error("label parameters of index (l={index_l}, t={index_t}) do not match requested (l={want_l}, t={want_t})")]
    ParamMismatch {
        index_l: u8,
        index_t: u32,
        want_l: u8,
        want_t: u32,
    },

    #[error("query graph is not connected")]
    DisconnectedQuery,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
