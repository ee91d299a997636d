use std::collections::VecDeque;

use rand::seq::SliceRandom;

use super::{Graph, NodeIdx};
use crate::error::{Error, Result};
use crate::rng;

/// A graph with a fraction of its edges hidden for link prediction.
#[derive(Debug, Clone)]
pub struct LinkSplit {
    /// The original graph minus the hidden edges; always connected.
    pub train_graph: Graph,
    /// Hidden edges as `(u, v)`, `u < v`, in removal order.
    pub hidden_edges: Vec<(NodeIdx, NodeIdx)>,
    /// Requested percentage of hidden edges, in `(0, 100)`.
    pub fraction_p: f64,
    /// Number of edges that were supposed to be hidden.
    pub target: usize,
    /// Set when fewer than `target` edges could be hidden without
    /// disconnecting the graph.
    pub shortfall: bool,
}

impl LinkSplit {
    /// Hidden neighbors of every node, sorted.
    pub fn hidden_adjacency(&self) -> Vec<Vec<NodeIdx>> {
        let mut adj = vec![Vec::new(); self.train_graph.node_count()];
        for &(u, v) in &self.hidden_edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// Hides `p` percent of the edges of a connected graph, keeping the rest
/// connected.
///
/// Edges are shuffled once with `seed` and scanned in that order; an edge is
/// hidden only if its endpoints remain connected without it. The target is
/// `floor(p * m / 100)`, but at least one edge.
pub fn make_link_split(graph: &Graph, p: f64, seed: u64) -> Result<LinkSplit> {
    if !(p > 0.0 && p < 100.0) {
        return Err(Error::domain(format!(
            "hide percentage must lie in (0, 100), got {p}"
        )));
    }
    if !graph.is_connected() {
        return Err(Error::domain("link split requires a connected graph"));
    }
    let m = graph.edge_count();
    let target = ((p * m as f64 / 100.0).floor() as usize).max(1).min(m);

    let mut edges: Vec<(NodeIdx, NodeIdx)> = graph.edges().collect();
    edges.shuffle(&mut rng::stream(seed, rng::SPLIT, 0));

    let mut adj: Vec<Vec<NodeIdx>> = (0..graph.node_count() as NodeIdx)
        .map(|v| graph.neighbors(v).to_vec())
        .collect();
    let mut hidden = Vec::with_capacity(target);
    let mut seen = vec![0u32; graph.node_count()];
    let mut epoch = 0u32;
    let mut queue = VecDeque::new();

    for &(u, v) in &edges {
        if hidden.len() == target {
            break;
        }
        remove(&mut adj, u, v);
        epoch += 1;
        if reachable(&adj, u, v, &mut seen, epoch, &mut queue) {
            hidden.push((u, v));
        } else {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
    }

    let shortfall = hidden.len() < target;
    if shortfall {
        log::warn!(
            "link split: hid {} of {} requested edges without disconnecting",
            hidden.len(),
            target
        );
    }
    let train_graph = graph.with_edges_of(
        adj.iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u as NodeIdx, v)))
            .filter(|(u, v)| u < v),
    );
    Ok(LinkSplit {
        train_graph,
        hidden_edges: hidden,
        fraction_p: p,
        target,
        shortfall,
    })
}

fn remove(adj: &mut [Vec<NodeIdx>], u: NodeIdx, v: NodeIdx) {
    for (a, b) in [(u, v), (v, u)] {
        let list = &mut adj[a as usize];
        let pos = list.iter().position(|&x| x == b).expect("edge present");
        list.swap_remove(pos);
    }
}

fn reachable(
    adj: &[Vec<NodeIdx>],
    from: NodeIdx,
    to: NodeIdx,
    seen: &mut [u32],
    epoch: u32,
    queue: &mut VecDeque<NodeIdx>,
) -> bool {
    queue.clear();
    queue.push_back(from);
    seen[from as usize] = epoch;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x as usize] {
            if y == to {
                return true;
            }
            if seen[y as usize] != epoch {
                seen[y as usize] = epoch;
                queue.push_back(y);
            }
        }
    }
    false
}
