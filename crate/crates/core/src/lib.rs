//! Fixed-dimension embeddings for arbitrary subgraphs of a host graph.
//!
//! Each subgraph is turned into a corpus of random walks confined to its own
//! edges ([`walk`]), and a paragraph-vector style model learns one vector per
//! subgraph from that corpus ([`embed`]). Subgraphs that share many nodes,
//! edges and paths end up close in cosine similarity.
//!
//! On top of the embedding engine the crate provides:
//!
//! - [`tasks`]: community detection by clustering ego-net vectors, and link
//!   prediction ranked by ego-net similarity, with P/R/F-1 and MAP scoring;
//! - [`oracle`]: an exhaustive context counter that evaluates the shifted
//!   log co-occurrence matrix the DBON objective implicitly factorizes, and
//!   checks its overlap lower bound on small instances;
//! - [`cli`]: the command implementations behind the `subvec` binary,
//!   including run manifests for exact replays.
//!
//! ```no_run
//! use subvec::embed::{train, TrainConfig};
//! use subvec::graph::{toy_network, toy_subgraphs};
//! use subvec::walk::{build_corpus, WalkConfig};
//!
//! let graph = toy_network();
//! let subgraphs = toy_subgraphs(&graph);
//! let corpus = build_corpus(&subgraphs, &WalkConfig::default())?;
//! let (model, _) = train(&corpus, &TrainConfig::default())?;
//! println!("{:?}", &model.subgraph_vector(0)[..4]);
//! # Ok::<(), subvec::Error>(())
//! ```

pub mod cli;
pub mod embed;
mod error;
pub mod graph;
pub mod oracle;
pub mod rng;
pub mod tasks;
pub mod walk;

pub use error::{Error, Result};
