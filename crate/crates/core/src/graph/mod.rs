//! Undirected host graphs, node-induced subgraphs and the text formats used
//! to load them.
//!
//! Node labels from input files are mapped to dense `u32` ids in order of
//! first appearance; everything downstream works on the dense ids.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub mod generate;
mod split;
mod subgraph;

pub use split::{make_link_split, LinkSplit};
pub use subgraph::{ego_net, induced_subgraph, parse_subgraph_set, Hops, Subgraph, SubgraphSet};

/// Dense node index, `0..n`.
pub type NodeIdx = u32;

/// Immutable simple undirected graph in compressed adjacency form.
///
/// Neighbor lists are sorted and free of duplicates and self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, NodeIdx>,
    offsets: Vec<usize>,
    targets: Vec<NodeIdx>,
}

/// Result of reading an edge list: the graph plus the lines that were
/// silently normalized away.
#[derive(Debug, Clone)]
pub struct EdgeListParse {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    pub duplicate_edges: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes labelled `"0".."n-1"`.
    ///
    /// Self-loops are dropped and parallel edges collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeIdx, NodeIdx)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Graph::with_labels(labels, edges)
    }

    /// Builds a graph whose node `i` carries `labels[i]`.
    pub fn with_labels<I>(labels: Vec<String>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeIdx, NodeIdx)>,
    {
        let n = labels.len();
        let mut adj: Vec<Vec<NodeIdx>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) references a node outside 0..{n}"
                )));
            }
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i as NodeIdx).is_some() {
                return Err(Error::domain(format!("duplicate node label {label:?}")));
            }
        }
        Ok(Graph::from_adjacency(labels, index, adj))
    }

    fn from_adjacency(
        labels: Vec<String>,
        index: HashMap<String, NodeIdx>,
        mut adj: Vec<Vec<NodeIdx>>,
    ) -> Graph {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Graph {
            labels,
            index,
            offsets,
            targets,
        }
    }

    /// Same node set and labels, different edges.
    pub(crate) fn with_edges_of<I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = (NodeIdx, NodeIdx)>,
    {
        let mut adj: Vec<Vec<NodeIdx>> = vec![Vec::new(); self.node_count()];
        for (u, v) in edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        Graph::from_adjacency(self.labels.clone(), self.index.clone(), adj)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: NodeIdx) -> &[NodeIdx] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: NodeIdx) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: NodeIdx, v: NodeIdx) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: NodeIdx) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<NodeIdx> {
        self.index.get(label).copied()
    }

    /// Looks up a list of labels, failing on the first unknown one.
    pub fn node_ids<'a, I>(&self, labels: I) -> Result<Vec<NodeIdx>>
    where
        I: IntoIterator<Item = &'a str>,
    {
        labels
            .into_iter()
            .map(|l| {
                self.node_id(l)
                    .ok_or_else(|| Error::domain(format!("unknown node label {l:?}")))
            })
            .collect()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeIdx, NodeIdx)> + '_ {
        (0..self.node_count() as NodeIdx).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn average_degree(&self) -> f64 {
        if self.node_count() == 0 {
            0.0
        } else {
            self.targets.len() as f64 / self.node_count() as f64
        }
    }

    /// Connected-component id per node, numbered in order of lowest member.
    pub fn components(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s as NodeIdx);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if comp[v as usize] == usize::MAX {
                        comp[v as usize] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Writes one `label label` line per edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.label(u), self.label(v))?;
        }
        Ok(())
    }
}

fn is_comment(line: &str) -> bool {
    line.starts_with('#') || line.starts_with('%')
}

/// Reads a whitespace-separated edge list. Lines starting with `#` or `%`
/// and blank lines are skipped.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<EdgeListParse> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, NodeIdx> = HashMap::new();
    let mut adj: Vec<Vec<NodeIdx>> = Vec::new();
    let mut self_loops = 0;
    let mut raw_edges = 0usize;

    let mut intern = |tok: &str, labels: &mut Vec<String>, adj: &mut Vec<Vec<NodeIdx>>| {
        *index.entry(tok.to_owned()).or_insert_with(|| {
            labels.push(tok.to_owned());
            adj.push(Vec::new());
            (labels.len() - 1) as NodeIdx
        })
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(
                lineno + 1,
                format!("expected 2 node tokens, found {}", toks.len()),
            ));
        }
        let u = intern(toks[0], &mut labels, &mut adj);
        let v = intern(toks[1], &mut labels, &mut adj);
        if u == v {
            self_loops += 1;
            continue;
        }
        raw_edges += 1;
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    if self_loops > 0 {
        log::warn!("dropped {self_loops} self-loop line(s)");
    }

    let graph = Graph::from_adjacency(labels, index, adj);
    let duplicate_edges = raw_edges - graph.edge_count();
    Ok(EdgeListParse {
        graph,
        self_loops_dropped: self_loops,
        duplicate_edges,
    })
}

/// Reads `node_label community_label` lines into a dense community id per
/// node. Community ids are assigned in order of first appearance.
pub fn parse_communities<R: BufRead>(reader: R, graph: &Graph) -> Result<Vec<usize>> {
    let mut truth = vec![usize::MAX; graph.node_count()];
    let mut names: HashMap<String, usize> = HashMap::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(
                lineno + 1,
                format!("expected `node community`, found {} tokens", toks.len()),
            ));
        }
        let v = graph
            .node_id(toks[0])
            .ok_or_else(|| Error::parse(lineno + 1, format!("unknown node {:?}", toks[0])))?;
        let next = names.len();
        let c = *names.entry(toks[1].to_owned()).or_insert(next);
        if truth[v as usize] != usize::MAX && truth[v as usize] != c {
            return Err(Error::parse(
                lineno + 1,
                format!("node {:?} assigned to two communities", toks[0]),
            ));
        }
        truth[v as usize] = c;
    }
    if let Some(v) = truth.iter().position(|&c| c == usize::MAX) {
        return Err(Error::domain(format!(
            "node {:?} has no ground-truth community",
            graph.label(v as NodeIdx)
        )));
    }
    Ok(truth)
}

/// The eleven-node toy network with two 4-cliques joined through `f`.
pub fn toy_network() -> Graph {
    parse_edge_list(include_str!("../../data/toy.edges").as_bytes())
        .expect("bundled toy network parses")
        .graph
}

/// The three overlapping subgraphs `{a,b,c,e}`, `{b,c,d,e}`, `{d,e,f,j}` of
/// [`toy_network`].
pub fn toy_subgraphs(graph: &Graph) -> SubgraphSet {
    parse_subgraph_set(include_str!("../../data/toy.subgraphs").as_bytes(), graph)
        .expect("bundled toy subgraphs parse")
}
