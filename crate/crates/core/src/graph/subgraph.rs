use std::collections::HashSet;
use std::io::BufRead;

use super::{is_comment, Graph, NodeIdx};
use crate::error::{Error, Result};

/// A node-induced subgraph of a host [`Graph`].
///
/// Nodes are stored as sorted host ids; the adjacency is kept in local
/// (position-in-`nodes`) coordinates so walks never touch the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    sid: usize,
    nodes: Vec<NodeIdx>,
    offsets: Vec<usize>,
    local: Vec<u32>,
}

impl Subgraph {
    pub fn sid(&self) -> usize {
        self.sid
    }

    /// Sorted host ids of the member nodes.
    pub fn nodes(&self) -> &[NodeIdx] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.local.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Host id of the node at local position `i`.
    #[inline]
    pub fn host(&self, i: usize) -> NodeIdx {
        self.nodes[i]
    }

    /// Local position of a host node, if it is a member.
    pub fn local_index(&self, v: NodeIdx) -> Option<usize> {
        self.nodes.binary_search(&v).ok()
    }

    pub fn contains(&self, v: NodeIdx) -> bool {
        self.local_index(v).is_some()
    }

    /// Neighbors of local node `i`, as local positions.
    #[inline]
    pub fn local_neighbors(&self, i: usize) -> &[u32] {
        &self.local[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn local_degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Whether host nodes `u` and `v` are adjacent inside this subgraph.
    pub fn has_edge(&self, u: NodeIdx, v: NodeIdx) -> bool {
        match (self.local_index(u), self.local_index(v)) {
            (Some(i), Some(j)) => self.local_neighbors(i).binary_search(&(j as u32)).is_ok(),
            _ => false,
        }
    }

    /// Internal edges in host ids, each once with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeIdx, NodeIdx)> + '_ {
        (0..self.nodes.len()).flat_map(move |i| {
            self.local_neighbors(i)
                .iter()
                .filter(move |&&j| (j as usize) > i)
                .map(move |&j| (self.nodes[i], self.nodes[j as usize]))
        })
    }

    pub(crate) fn with_sid(mut self, sid: usize) -> Subgraph {
        self.sid = sid;
        self
    }
}

/// Subgraph of `graph` induced by `nodes` (duplicates ignored).
pub fn induced_subgraph(graph: &Graph, nodes: &[NodeIdx], sid: usize) -> Result<Subgraph> {
    if nodes.is_empty() {
        return Err(Error::domain(format!("subgraph {sid} has no nodes")));
    }
    if let Some(&bad) = nodes.iter().find(|&&v| v as usize >= graph.node_count()) {
        return Err(Error::domain(format!(
            "subgraph {sid}: node id {bad} outside host graph of {} nodes",
            graph.node_count()
        )));
    }
    let mut nodes = nodes.to_vec();
    nodes.sort_unstable();
    nodes.dedup();

    let mut offsets = Vec::with_capacity(nodes.len() + 1);
    offsets.push(0);
    let mut local = Vec::new();
    for &u in &nodes {
        // both lists sorted: merge-intersect host neighbors with members
        let (mut a, mut b) = (graph.neighbors(u).iter().peekable(), 0usize);
        while let Some(&&v) = a.peek() {
            if b >= nodes.len() {
                break;
            }
            match v.cmp(&nodes[b]) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    local.push(b as u32);
                    a.next();
                    b += 1;
                }
            }
        }
        offsets.push(local.len());
    }
    Ok(Subgraph {
        sid,
        nodes,
        offsets,
        local,
    })
}

/// Ego-network radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Hops {
    One,
    Two,
}

impl Hops {
    pub fn from_count(h: u8) -> Option<Hops> {
        match h {
            1 => Some(Hops::One),
            2 => Some(Hops::Two),
            _ => None,
        }
    }

    pub fn count(self) -> u8 {
        match self {
            Hops::One => 1,
            Hops::Two => 2,
        }
    }

    /// 1-hop for dense graphs (average degree at least 10), 2-hop otherwise.
    pub fn default_for(graph: &Graph) -> Hops {
        if graph.average_degree() >= 10.0 {
            Hops::One
        } else {
            Hops::Two
        }
    }
}

/// Subgraph induced by `center` and everything within `hops` of it. The
/// subgraph id is the center's node id.
pub fn ego_net(graph: &Graph, center: NodeIdx, hops: Hops) -> Result<Subgraph> {
    if center as usize >= graph.node_count() {
        return Err(Error::domain(format!("ego center {center} out of range")));
    }
    let mut members: Vec<NodeIdx> = Vec::with_capacity(graph.degree(center) + 1);
    members.push(center);
    members.extend_from_slice(graph.neighbors(center));
    if hops == Hops::Two {
        for &v in graph.neighbors(center) {
            members.extend_from_slice(graph.neighbors(v));
        }
    }
    induced_subgraph(graph, &members, center as usize)
}

/// An ordered collection of subgraphs of one host graph, with ids `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphSet {
    subgraphs: Vec<Subgraph>,
    names: Vec<String>,
    host_nodes: usize,
}

impl SubgraphSet {
    /// Renumbers the subgraphs to their position in `subgraphs`.
    pub fn new(graph: &Graph, subgraphs: Vec<Subgraph>) -> SubgraphSet {
        let names = (0..subgraphs.len()).map(|i| i.to_string()).collect();
        SubgraphSet::named(graph, subgraphs, names)
    }

    fn named(graph: &Graph, subgraphs: Vec<Subgraph>, names: Vec<String>) -> SubgraphSet {
        debug_assert_eq!(subgraphs.len(), names.len());
        let subgraphs = subgraphs
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.with_sid(i))
            .collect();
        SubgraphSet {
            subgraphs,
            names,
            host_nodes: graph.node_count(),
        }
    }

    /// Ego-nets of every node of `graph`, subgraph `i` centered on node `i`.
    pub fn ego_nets(graph: &Graph, hops: Hops) -> SubgraphSet {
        let nets = (0..graph.node_count() as NodeIdx)
            .map(|v| ego_net(graph, v, hops).expect("center in range"))
            .collect();
        SubgraphSet::new(graph, nets)
    }

    /// Ego-nets of the given centers only, subgraph `i` centered on
    /// `centers[i]`.
    pub fn ego_nets_of(graph: &Graph, centers: &[NodeIdx], hops: Hops) -> Result<SubgraphSet> {
        let nets = centers
            .iter()
            .map(|&v| ego_net(graph, v, hops))
            .collect::<Result<Vec<_>>>()?;
        let names = centers.iter().map(|&v| graph.label(v).to_owned()).collect();
        Ok(SubgraphSet::named(graph, nets, names))
    }

    pub fn len(&self) -> usize {
        self.subgraphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgraphs.is_empty()
    }

    pub fn get(&self, sid: usize) -> Option<&Subgraph> {
        self.subgraphs.get(sid)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subgraph> {
        self.subgraphs.iter()
    }

    pub fn as_slice(&self) -> &[Subgraph] {
        &self.subgraphs
    }

    /// External name of subgraph `sid` (the first token of its line in a
    /// subgraph-set file).
    pub fn name(&self, sid: usize) -> &str {
        &self.names[sid]
    }

    pub fn host_node_count(&self) -> usize {
        self.host_nodes
    }

    /// Sorted union of member nodes over all subgraphs.
    pub fn node_union(&self) -> Vec<NodeIdx> {
        let mut seen = vec![false; self.host_nodes];
        for s in &self.subgraphs {
            for &v in s.nodes() {
                seen[v as usize] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as NodeIdx)
            .collect()
    }
}

impl<'a> IntoIterator for &'a SubgraphSet {
    type Item = &'a Subgraph;
    type IntoIter = std::slice::Iter<'a, Subgraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.subgraphs.iter()
    }
}

/// Reads `name node_label node_label ...` lines, one subgraph per line.
/// Subgraph ids follow line order; names must be unique.
pub fn parse_subgraph_set<R: BufRead>(reader: R, graph: &Graph) -> Result<SubgraphSet> {
    let mut subgraphs = Vec::new();
    let mut names = Vec::new();
    let mut seen = HashSet::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut toks = line.split_whitespace();
        let name = toks.next().expect("non-empty line has a token");
        if !seen.insert(name.to_owned()) {
            return Err(Error::parse(
                lineno + 1,
                format!("duplicate subgraph id {name:?}"),
            ));
        }
        let mut nodes = Vec::new();
        for tok in toks {
            let v = graph
                .node_id(tok)
                .ok_or_else(|| Error::parse(lineno + 1, format!("unknown node {tok:?}")))?;
            nodes.push(v);
        }
        if nodes.is_empty() {
            return Err(Error::parse(
                lineno + 1,
                format!("subgraph {name:?} has no nodes"),
            ));
        }
        subgraphs.push(induced_subgraph(graph, &nodes, subgraphs.len())?);
        names.push(name.to_owned());
    }
    Ok(SubgraphSet::named(graph, subgraphs, names))
}
