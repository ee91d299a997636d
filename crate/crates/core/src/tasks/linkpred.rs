use std::io::Write;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::EgoEmbedding;
use crate::embed::cosine;
use crate::error::Result;
use crate::graph::{Graph, Hops, LinkSplit, NodeIdx};
use crate::rng;

/// Candidates for one query node, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryRanking {
    pub node: NodeIdx,
    /// `(candidate, score)`; scores non-increasing, ties by ascending id.
    pub candidates: Vec<(NodeIdx, f64)>,
    /// Hidden neighbors of `node`, sorted.
    pub hidden: Vec<NodeIdx>,
}

impl QueryRanking {
    pub fn hits(&self) -> Vec<bool> {
        self.candidates
            .iter()
            .map(|(u, _)| self.hidden.binary_search(u).is_ok())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkRanking {
    pub queries: Vec<QueryRanking>,
}

impl LinkRanking {
    /// One line per query: `node candidate:score candidate:score ...`.
    pub fn write<W: Write>(&self, mut out: W, graph: &Graph) -> Result<()> {
        for q in &self.queries {
            write!(out, "{}", graph.label(q.node))?;
            for (u, s) in &q.candidates {
                write!(out, " {}:{}", graph.label(*u), s)?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Ranks, for every node touching a hidden edge, all nodes that are neither
/// itself nor a train-graph neighbor, by `score(query, candidate)`.
pub fn rank_links<F>(split: &LinkSplit, mut score: F) -> LinkRanking
where
    F: FnMut(NodeIdx, NodeIdx) -> f64,
{
    let train = &split.train_graph;
    let hidden = split.hidden_adjacency();
    let queries = (0..train.node_count() as NodeIdx)
        .filter(|&v| !hidden[v as usize].is_empty())
        .map(|v| {
            let mut candidates: Vec<(NodeIdx, f64)> = (0..train.node_count() as NodeIdx)
                .filter(|&u| u != v && !train.has_edge(v, u))
                .map(|u| (u, score(v, u)))
                .collect();
            candidates.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            QueryRanking {
                node: v,
                candidates,
                hidden: hidden[v as usize].clone(),
            }
        })
        .collect();
    LinkRanking { queries }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LinkPredConfig {
    /// `None` picks from the train graph's average degree.
    pub hops: Option<Hops>,
    pub embedding: EgoEmbedding,
}

/// Embeds the ego-nets of the train graph and scores node pairs by the
/// cosine similarity of their ego-net vectors.
pub fn predict_links(split: &LinkSplit, cfg: &LinkPredConfig) -> Result<LinkRanking> {
    let train = &split.train_graph;
    let hops = cfg.hops.unwrap_or_else(|| Hops::default_for(train));
    let model = cfg.embedding.embed_ego_nets(train, hops)?;
    Ok(rank_links(split, |v, u| {
        cosine(
            model.subgraph_vector(v as usize),
            model.subgraph_vector(u as usize),
        )
    }))
}

/// Baseline: preferential attachment, `deg(v) * deg(u)` in the train graph.
pub fn degree_product_ranking(split: &LinkSplit) -> LinkRanking {
    let g = &split.train_graph;
    rank_links(split, |v, u| (g.degree(v) * g.degree(u)) as f64)
}

/// Baseline: uniform random scores.
pub fn random_ranking(split: &LinkSplit, seed: u64) -> LinkRanking {
    let mut r = rng::stream(seed, rng::RANDOM_SCORES, 0);
    rank_links(split, |_, _| r.gen::<f64>())
}
