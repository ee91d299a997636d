//! Subgraph-truncated random walks: uniform walks that never leave the
//! subgraph they started in.

use std::io::Write;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeIdx, Subgraph, SubgraphSet};
use crate::rng::{self, Rng};

/// A fixed-length node sequence drawn inside one subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub sid: usize,
    pub seq: Vec<NodeIdx>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub length: usize,
    pub walks_per_subgraph: usize,
    pub seed: u64,
    /// Worker threads for generation; the corpus does not depend on it.
    pub threads: usize,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            length: 1000,
            walks_per_subgraph: 1,
            seed: 0,
            threads: 1,
        }
    }
}

/// All walks for a subgraph set, ordered by `(sid, walk index)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCorpus {
    walks: Vec<Walk>,
    walk_length: usize,
    walks_per_subgraph: usize,
    subgraph_count: usize,
    vocab: Vec<NodeIdx>,
}

impl WalkCorpus {
    /// Wraps hand-built walks. The vocabulary is the set of visited nodes.
    pub fn from_walks(subgraph_count: usize, walks: Vec<Walk>) -> Result<WalkCorpus> {
        if let Some(w) = walks.iter().find(|w| w.sid >= subgraph_count) {
            return Err(Error::domain(format!(
                "walk for subgraph {} but only {subgraph_count} subgraphs",
                w.sid
            )));
        }
        let mut vocab: Vec<NodeIdx> = walks.iter().flat_map(|w| w.seq.iter().copied()).collect();
        vocab.sort_unstable();
        vocab.dedup();
        let walk_length = walks.iter().map(|w| w.seq.len()).max().unwrap_or(0);
        let per = walks.len().checked_div(subgraph_count).unwrap_or(0);
        Ok(WalkCorpus {
            walks,
            walk_length,
            walks_per_subgraph: per,
            subgraph_count,
            vocab,
        })
    }

    pub fn walks(&self) -> &[Walk] {
        &self.walks
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn walk_length(&self) -> usize {
        self.walk_length
    }

    pub fn walks_per_subgraph(&self) -> usize {
        self.walks_per_subgraph
    }

    pub fn subgraph_count(&self) -> usize {
        self.subgraph_count
    }

    /// Sorted node ids that may appear in the corpus (the union of subgraph
    /// members, or of visited nodes for hand-built corpora).
    pub fn vocab(&self) -> &[NodeIdx] {
        &self.vocab
    }

    pub fn token_count(&self) -> usize {
        self.walks.iter().map(|w| w.seq.len()).sum()
    }

    /// Debug dump: one `sid: token token ...` line per walk. Tokens are node
    /// labels when a graph is given, dense ids otherwise.
    pub fn write_dump<W: Write>(&self, mut out: W, labels: Option<&Graph>) -> Result<()> {
        for w in &self.walks {
            write!(out, "{}:", w.sid)?;
            for &v in &w.seq {
                match labels {
                    Some(g) => write!(out, " {}", g.label(v))?,
                    None => write!(out, " {v}")?,
                }
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// One walk of exactly `length` nodes inside `sg`.
///
/// The start node is uniform over the subgraph; each step moves to a uniform
/// neighbor within the subgraph. A node with no neighbors in the subgraph
/// repeats itself.
pub fn random_walk(sg: &Subgraph, length: usize, rng: &mut Rng) -> Result<Walk> {
    if sg.is_empty() {
        return Err(Error::domain(format!("subgraph {} is empty", sg.sid())));
    }
    if length == 0 {
        return Err(Error::domain("walk length must be at least 1"));
    }
    let mut seq = Vec::with_capacity(length);
    let mut cur = rng.gen_range(0..sg.node_count());
    seq.push(sg.host(cur));
    for _ in 1..length {
        let nbrs = sg.local_neighbors(cur);
        if !nbrs.is_empty() {
            cur = nbrs[rng.gen_range(0..nbrs.len())] as usize;
        }
        seq.push(sg.host(cur));
    }
    Ok(Walk { sid: sg.sid(), seq })
}

/// `walks_per_subgraph` walks for every subgraph. Walk `j` of subgraph `i`
/// draws from its own stream keyed by `(seed, i, j)`, so the corpus is the
/// same for any thread count.
pub fn build_corpus(set: &SubgraphSet, cfg: &WalkConfig) -> Result<WalkCorpus> {
    let jobs: Vec<(usize, usize)> = (0..set.len())
        .flat_map(|sid| (0..cfg.walks_per_subgraph).map(move |j| (sid, j)))
        .collect();
    let run = |&(sid, j): &(usize, usize)| -> Result<Walk> {
        let sg = set.get(sid).expect("sid in range");
        let mut rng = rng::stream(cfg.seed, sid as u64, j as u64);
        random_walk(sg, cfg.length, &mut rng).map_err(|e| match e {
            Error::Domain(msg) => Error::Domain(format!("subgraph {sid}: {msg}")),
            other => other,
        })
    };
    let walks = if cfg.threads <= 1 {
        jobs.iter().map(run).collect::<Result<Vec<_>>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
        pool.install(|| jobs.par_iter().map(run).collect::<Result<Vec<_>>>())?
    };
    Ok(WalkCorpus {
        walks,
        walk_length: cfg.length,
        walks_per_subgraph: cfg.walks_per_subgraph,
        subgraph_count: set.len(),
        vocab: set.node_union(),
    })
}
