//! Synthetic graph generators used by tests, examples and the benchmark
//! commands.

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::{Graph, NodeIdx};
use crate::rng;

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u as NodeIdx, v as NodeIdx));
            }
        }
    }
    Graph::from_edges(n, edges).expect("ids in range")
}

/// `G(n, p)` overlaid on a uniformly random spanning tree, so the result is
/// always connected.
pub fn connected_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng::seeded(seed);
    let mut order: Vec<NodeIdx> = (0..n as NodeIdx).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent, order[i]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u as NodeIdx, v as NodeIdx));
            }
        }
    }
    Graph::from_edges(n, edges).expect("ids in range")
}

/// Planted-partition graph: `blocks` groups of `block_size` consecutive
/// nodes, intra-block edge probability `p_in`, inter-block `p_out`.
/// Returns the graph and the block of every node.
pub fn planted_partition(
    blocks: usize,
    block_size: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> (Graph, Vec<usize>) {
    let n = blocks * block_size;
    let block: Vec<usize> = (0..n).map(|v| v / block_size).collect();
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if block[u] == block[v] { p_in } else { p_out };
            if rng.gen_bool(p) {
                edges.push((u as NodeIdx, v as NodeIdx));
            }
        }
    }
    (Graph::from_edges(n, edges).expect("ids in range"), block)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n as NodeIdx).map(|v| (v - 1, v))).expect("ids in range")
}

pub fn cycle(n: usize) -> Graph {
    let n32 = n as NodeIdx;
    Graph::from_edges(n, (0..n32).map(|v| (v, (v + 1) % n32))).expect("ids in range")
}

pub fn complete(n: usize) -> Graph {
    let n32 = n as NodeIdx;
    Graph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))))
        .expect("ids in range")
}
