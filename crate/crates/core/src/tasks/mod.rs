//! Downstream uses of subgraph vectors: community detection over ego-nets
//! and link prediction by ego-net similarity.

mod community;
mod kmeans;
mod linkpred;
mod metrics;

use serde::{Deserialize, Serialize};

pub use community::{
    community_prf, detect_communities, CommunityAssignment, CommunityConfig, PrfReport,
};
pub use kmeans::{kmeans, KMeans};
pub use linkpred::{
    degree_product_ranking, predict_links, random_ranking, rank_links, LinkPredConfig, LinkRanking,
    QueryRanking,
};
pub use metrics::{average_precision, map_score, mean_average_precision, precision_at_k};

use crate::embed::{train, EmbeddingModel, TrainConfig};
use crate::error::Result;
use crate::graph::{Graph, Hops, SubgraphSet};
use crate::walk::{build_corpus, WalkConfig};

/// Walk and training settings for embedding one ego-net per node.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct EgoEmbedding {
    pub walk: WalkConfig,
    pub train: TrainConfig,
}

impl EgoEmbedding {
    /// Row `v` of the returned model's subgraph matrix belongs to node `v`.
    pub fn embed_ego_nets(&self, graph: &Graph, hops: Hops) -> Result<EmbeddingModel> {
        let set = SubgraphSet::ego_nets(graph, hops);
        let corpus = build_corpus(&set, &self.walk)?;
        let (mut model, _) = train(&corpus, &self.train)?;
        model.corpus_seed = Some(self.walk.seed);
        Ok(model)
    }
}
