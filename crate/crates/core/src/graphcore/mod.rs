//! Weighted undirected graphs and the exact path/girth computations that
//! every other module treats as ground truth.

mod distance;
mod generators;
mod girth;
mod paths;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use distance::Distance;
pub use generators::{
    band, complete_bipartite, cycle, gnp, path, petersen, random_connected, ring_with_chords,
    Bipartite,
};
pub use girth::{bipartite_double_cover, girth, is_bipartite};
pub use paths::{
    ball, bfs_hops, floyd_warshall, hop_between_sets, hop_limited, hops_from_set, path_weight,
    shortest_paths, DistanceTable, HopLimitedTable, InducedSubgraph,
};

pub type NodeId = usize;
pub type Weight = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {node} out of range for graph with {n} nodes")]
    InvalidNode { node: NodeId, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge {{{0}, {1}}} has weight 0; weights must be >= 1")]
    ZeroWeight(NodeId, NodeId),
    #[error("complete_bipartite needs k >= 1")]
    EmptyBipartition,
    #[error("graph is not connected")]
    Disconnected,
}

/// Undirected graph on nodes `0..n` with positive integer edge weights.
///
/// Adjacency is kept in ordered maps so every traversal is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeMap<NodeId, Weight>>,
    edge_count: usize,
    max_weight: Weight,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeMap::new(); n],
            edge_count: 0,
            max_weight: 1,
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId, Weight)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Largest edge weight `W` (1 for an edgeless graph).
    pub fn max_weight(&self) -> Weight {
        self.max_weight
    }

    pub fn check_node(&self, v: NodeId) -> Result<(), GraphError> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidNode {
                node: v,
                n: self.node_count(),
            })
        }
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId, w: Weight) -> Result<(), GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if w == 0 {
            return Err(GraphError::ZeroWeight(u, v));
        }
        if self.adj[u].contains_key(&v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v, w);
        self.adj[v].insert(u, w);
        self.edge_count += 1;
        self.max_weight = self.max_weight.max(w);
        Ok(())
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj.get(u).is_some_and(|a| a.contains_key(&v))
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<Weight> {
        self.adj.get(u).and_then(|a| a.get(&v).copied())
    }

    /// Neighbors of `v` with edge weights, in increasing id order.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = (NodeId, Weight)> + '_ {
        self.adj[v].iter().map(|(&u, &w)| (u, w))
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    /// Every edge once as `(min, max, w)`, sorted by endpoints.
    pub fn edges(&self) -> Vec<(NodeId, NodeId, Weight)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, a) in self.adj.iter().enumerate() {
            for (&v, &w) in a.range(u + 1..) {
                out.push((u, v, w));
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count() == 0 {
            return true;
        }
        bfs_hops(self, 0).iter().all(Option::is_some)
    }

    /// Copy with every weight replaced by 1.
    pub fn unweighted(&self) -> Graph {
        let mut g = Graph::new(self.node_count());
        for (u, v, _) in self.edges() {
            g.add_edge(u, v, 1).expect("edges of a valid graph");
        }
        g
    }

    /// Copy with node `x` isolated.
    pub fn without_node(&self, x: NodeId) -> Graph {
        let mut g = Graph::new(self.node_count());
        for (u, v, w) in self.edges() {
            if u != x && v != x {
                g.add_edge(u, v, w).expect("edges of a valid graph");
            }
        }
        g
    }
}

/// Serialized form: `{ "n": int, "edges": [[u, v, w], ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[u64; 3]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.node_count(),
            edges: g
                .edges()
                .into_iter()
                .map(|(u, v, w)| [u as u64, v as u64, w])
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        Graph::from_edges(
            j.n,
            j.edges
                .into_iter()
                .map(|[u, v, w]| (u as usize, v as usize, w)),
        )
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_edges() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(0, 0, 1), Err(GraphError::SelfLoop(0)));
        assert_eq!(g.add_edge(0, 1, 0), Err(GraphError::ZeroWeight(0, 1)));
        assert!(matches!(
            g.add_edge(0, 3, 1),
            Err(GraphError::InvalidNode { .. })
        ));
        g.add_edge(1, 0, 2).unwrap();
        assert_eq!(g.add_edge(0, 1, 5), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(g.weight(0, 1), Some(2));
        assert_eq!(g.weight(1, 0), Some(2));
    }

    #[test]
    fn json_is_sorted_and_round_trips() {
        let g = Graph::from_edges(4, [(3, 2, 7), (1, 0, 1), (2, 0, 4)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[0,1,1],[0,2,4],[2,3,7]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_rejects_bad_weight() {
        let r: Result<Graph, _> = serde_json::from_str(r#"{"n":2,"edges":[[0,1,0]]}"#);
        assert!(r.is_err());
    }
}
