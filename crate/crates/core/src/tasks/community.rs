use pathfinding::prelude::{kuhn_munkres, Matrix as Weights};
use serde::{Deserialize, Serialize};

use super::kmeans::kmeans;
use super::EgoEmbedding;
use crate::error::{Error, Result};
use crate::graph::{Graph, Hops};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityAssignment {
    /// Cluster id in `0..k` for every node.
    pub labels: Vec<usize>,
    pub k: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommunityConfig {
    pub k: usize,
    /// `None` picks from the graph's average degree.
    pub hops: Option<Hops>,
    pub embedding: EgoEmbedding,
    pub kmeans_iters: usize,
}

impl CommunityConfig {
    pub fn new(k: usize) -> Self {
        CommunityConfig {
            k,
            hops: None,
            embedding: EgoEmbedding::default(),
            kmeans_iters: 300,
        }
    }
}

/// Embeds the ego-net of every node and clusters the normalized vectors;
/// each node joins the cluster of its own ego-net.
pub fn detect_communities(graph: &Graph, cfg: &CommunityConfig) -> Result<CommunityAssignment> {
    if cfg.k < 2 {
        return Err(Error::domain("community detection needs k >= 2"));
    }
    if graph.node_count() < cfg.k {
        return Err(Error::domain(format!(
            "cannot split {} nodes into {} communities",
            graph.node_count(),
            cfg.k
        )));
    }
    let hops = cfg.hops.unwrap_or_else(|| Hops::default_for(graph));
    let model = cfg.embedding.embed_ego_nets(graph, hops)?;
    let vectors = model.normalized_subgraph_vectors();
    let km = kmeans(&vectors, cfg.k, cfg.kmeans_iters, cfg.embedding.train.seed)?;
    Ok(CommunityAssignment {
        labels: km.labels,
        k: cfg.k,
    })
}

/// Precision, recall and F-1 of a clustering against ground truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrfReport {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Matched `(predicted cluster, truth community)` pairs, using the dense
    /// ids of first appearance in each labelling.
    pub matching: Vec<(usize, usize)>,
}

fn densify(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map = std::collections::HashMap::new();
    let dense = labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect();
    (dense, map.len())
}

/// Scores `pred` against `truth` (one label per node, any label values).
///
/// Clusters are paired with communities by a maximum-weight one-to-one
/// matching on the overlap counts. Precision is the matched overlap over the
/// total size of matched clusters, recall the matched overlap over the total
/// size of matched communities.
pub fn community_prf(pred: &[usize], truth: &[usize]) -> Result<PrfReport> {
    if pred.len() != truth.len() {
        return Err(Error::domain(format!(
            "prediction covers {} nodes, ground truth {}",
            pred.len(),
            truth.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::domain("no nodes to score"));
    }
    let (p, np) = densify(pred);
    let (t, nt) = densify(truth);
    let mut table = vec![vec![0i64; nt]; np];
    for (&a, &b) in p.iter().zip(&t) {
        table[a][b] += 1;
    }
    let mut pred_size = vec![0i64; np];
    let mut truth_size = vec![0i64; nt];
    for (&a, &b) in p.iter().zip(&t) {
        pred_size[a] += 1;
        truth_size[b] += 1;
    }

    // kuhn_munkres wants rows <= columns
    let mut pairs = Vec::new();
    if np <= nt {
        let w = Weights::from_rows(table.clone()).expect("rectangular");
        let (_, assign) = kuhn_munkres(&w);
        pairs.extend(assign.into_iter().enumerate());
    } else {
        let transposed: Vec<Vec<i64>> = (0..nt)
            .map(|b| (0..np).map(|a| table[a][b]).collect())
            .collect();
        let w = Weights::from_rows(transposed).expect("rectangular");
        let (_, assign) = kuhn_munkres(&w);
        pairs.extend(assign.into_iter().enumerate().map(|(b, a)| (a, b)));
    }
    pairs.retain(|&(a, b)| table[a][b] > 0);
    pairs.sort_unstable();

    let overlap: i64 = pairs.iter().map(|&(a, b)| table[a][b]).sum();
    let psum: i64 = pairs.iter().map(|&(a, _)| pred_size[a]).sum();
    let tsum: i64 = pairs.iter().map(|&(_, b)| truth_size[b]).sum();
    let ratio = |num: i64, den: i64| {
        if den > 0 {
            num as f64 / den as f64
        } else {
            0.0
        }
    };
    let precision = ratio(overlap, psum);
    let recall = ratio(overlap, tsum);
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(PrfReport {
        precision,
        recall,
        f1,
        matching: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, NodeIdx};
    use crate::rng;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn perfect_prediction() {
        let truth = vec![0, 0, 1, 1, 2, 2];
        let r = community_prf(&[5, 5, 3, 3, 9, 9], &truth).unwrap();
        assert_eq!((r.precision, r.recall, r.f1), (1.0, 1.0, 1.0));
    }

    #[test]
    fn one_giant_cluster() {
        let truth = vec![0, 0, 0, 1, 1, 1];
        let r = community_prf(&[0; 6], &truth).unwrap();
        assert_eq!(r.precision, 0.5);
        assert_eq!(r.recall, 1.0);
        assert!((r.f1 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn random_labels_baseline() {
        let truth: Vec<usize> = (0..200).map(|i| i % 4).collect();
        let mut r = rng::seeded(3);
        let mut total = 0.0;
        for _ in 0..100 {
            let pred: Vec<usize> = (0..200).map(|_| r.gen_range(0..4)).collect();
            total += community_prf(&pred, &truth).unwrap().f1;
        }
        let mean = total / 100.0;
        assert!((mean - 0.25).abs() <= 0.1, "mean F1 {mean}");
    }

    #[test]
    fn length_mismatch() {
        assert!(community_prf(&[0, 1], &[0]).is_err());
    }

    #[test]
    fn more_clusters_than_communities() {
        let r = community_prf(&[0, 0, 1, 1, 2, 2], &[0, 0, 0, 0, 1, 1]).unwrap();
        // best matching pairs one of {0,1} with community 0 and 2 with 1
        assert_eq!(r.matching.len(), 2);
        assert_eq!(r.precision, 1.0);
        assert!((r.recall - 4.0 / 6.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn invariant_under_relabelling(
            labels in proptest::collection::vec((0usize..4, 0usize..3), 1..60),
            shift_p in 1usize..50,
            shift_t in 1usize..50,
        ) {
            let pred: Vec<usize> = labels.iter().map(|x| x.0).collect();
            let truth: Vec<usize> = labels.iter().map(|x| x.1).collect();
            let base = community_prf(&pred, &truth).unwrap();
            let pred2: Vec<usize> = pred.iter().map(|&l| (3 - l) * 7 + shift_p).collect();
            let truth2: Vec<usize> = truth.iter().map(|&l| (2 - l) * 11 + shift_t).collect();
            let other = community_prf(&pred2, &truth2).unwrap();
            prop_assert!((base.f1 - other.f1).abs() < 1e-12);
            prop_assert!((base.precision - other.precision).abs() < 1e-12);
            prop_assert!((base.recall - other.recall).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&base.f1));
        }
    }

    fn two_cliques(size: usize) -> Graph {
        let mut edges = Vec::new();
        for block in 0..2 {
            let off = (block * size) as NodeIdx;
            for u in 0..size as NodeIdx {
                for v in u + 1..size as NodeIdx {
                    edges.push((off + u, off + v));
                }
            }
        }
        edges.push((0, size as NodeIdx));
        Graph::from_edges(2 * size, edges).unwrap()
    }

    fn quick(k: usize, seed: u64) -> CommunityConfig {
        let mut cfg = CommunityConfig::new(k);
        cfg.embedding.walk.length = 200;
        cfg.embedding.walk.seed = seed;
        cfg.embedding.train.dim = 32;
        cfg.embedding.train.seed = seed;
        cfg
    }

    #[test]
    fn two_cliques_recovered() {
        let g = two_cliques(8);
        let truth: Vec<usize> = (0..16).map(|v| v / 8).collect();
        for seed in 0..20 {
            let mut cfg = quick(2, seed);
            cfg.hops = Some(Hops::One);
            let a = detect_communities(&g, &cfg).unwrap();
            let r = community_prf(&a.labels, &truth).unwrap();
            assert_eq!(r.f1, 1.0, "seed {seed}: {:?}", a.labels);
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let (g, _) = generate::planted_partition(3, 10, 0.5, 0.05, 2);
        let a = detect_communities(&g, &quick(3, 4)).unwrap();
        let b = detect_communities(&g, &quick(3, 4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn k_equals_node_count_has_right_shape() {
        let g = generate::cycle(6);
        let a = detect_communities(&g, &quick(6, 1)).unwrap();
        assert_eq!(a.labels.len(), 6);
        assert!(a.labels.iter().all(|&l| l < 6));
    }

    #[test]
    fn rejects_bad_k() {
        let g = generate::cycle(4);
        assert!(detect_communities(&g, &quick(1, 0)).is_err());
        assert!(detect_communities(&g, &quick(5, 0)).is_err());
    }
}
