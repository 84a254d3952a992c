use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{Distance, Graph, GraphError, NodeId, Weight};

/// Single-source shortest path distances with a shortest-path tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    pub source: NodeId,
    pub dist: Vec<Distance>,
    pub parent: Vec<Option<NodeId>>,
}

impl DistanceTable {
    pub fn get(&self, v: NodeId) -> Distance {
        self.dist[v]
    }

    /// Tree path from the source to `v`, or `None` if unreachable.
    pub fn path_to(&self, v: NodeId) -> Option<Vec<NodeId>> {
        if !self.dist[v].is_finite() {
            return None;
        }
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        Some(out)
    }
}

/// Distances from `source` restricted to paths with at most `hops` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopLimitedTable {
    pub source: NodeId,
    pub hops: usize,
    pub dist: Vec<Distance>,
}

impl HopLimitedTable {
    pub fn get(&self, v: NodeId) -> Distance {
        self.dist[v]
    }
}

/// Dijkstra from `s`. Ties in the tree go to the smaller parent id.
pub fn shortest_paths(g: &Graph, s: NodeId) -> Result<DistanceTable, GraphError> {
    g.check_node(s)?;
    let n = g.node_count();
    let mut dist = vec![Distance::Infinite; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s] = Distance::ZERO;
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for (v, w) in g.neighbors(u) {
            let cand = Distance::Finite(d + w);
            let better =
                cand < dist[v] || (cand == dist[v] && !done[v] && parent[v].is_some_and(|p| u < p));
            if better {
                dist[v] = cand;
                parent[v] = Some(u);
                heap.push(Reverse((d + w, v)));
            }
        }
    }
    Ok(DistanceTable {
        source: s,
        dist,
        parent,
    })
}

/// Bellman-Ford truncated after `h` relaxation rounds. Stops early once a
/// round changes nothing.
pub fn hop_limited(g: &Graph, s: NodeId, h: usize) -> Result<HopLimitedTable, GraphError> {
    g.check_node(s)?;
    let n = g.node_count();
    let mut cur = vec![Distance::Infinite; n];
    cur[s] = Distance::ZERO;
    let mut frontier = vec![s];
    for _ in 0..h {
        if frontier.is_empty() {
            break;
        }
        // Relax from the previous round's values only, so a round adds at
        // most one hop.
        let prev = cur.clone();
        let mut changed = vec![false; n];
        for &u in &frontier {
            let du = prev[u];
            for (v, w) in g.neighbors(u) {
                let cand = du + w;
                if cand < cur[v] {
                    cur[v] = cand;
                    changed[v] = true;
                }
            }
        }
        frontier = (0..n).filter(|&v| changed[v]).collect();
    }
    Ok(HopLimitedTable {
        source: s,
        hops: h,
        dist: cur,
    })
}

/// Unweighted BFS hop distances from `s`; `None` for unreachable nodes.
pub fn bfs_hops(g: &Graph, s: NodeId) -> Vec<Option<usize>> {
    let mut hop = vec![None; g.node_count()];
    let mut queue = VecDeque::new();
    hop[s] = Some(0);
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let hu = hop[u].unwrap();
        for (v, _) in g.neighbors(u) {
            if hop[v].is_none() {
                hop[v] = Some(hu + 1);
                queue.push_back(v);
            }
        }
    }
    hop
}

/// Multi-source BFS: hop distance from every node to the nearest member of `set`.
pub fn hops_from_set(g: &Graph, set: &[NodeId]) -> Vec<Option<usize>> {
    let mut hop = vec![None; g.node_count()];
    let mut queue = VecDeque::new();
    for &s in set {
        if hop[s].is_none() {
            hop[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let hu = hop[u].unwrap();
        for (v, _) in g.neighbors(u) {
            if hop[v].is_none() {
                hop[v] = Some(hu + 1);
                queue.push_back(v);
            }
        }
    }
    hop
}

/// `min over a in A, b in B of hop(a, b)`; `None` if the sets are disconnected or empty.
pub fn hop_between_sets(g: &Graph, a: &[NodeId], b: &[NodeId]) -> Option<usize> {
    let hops = hops_from_set(g, a);
    b.iter().filter_map(|&v| hops[v]).min()
}

/// All-pairs distances by Floyd-Warshall. Quadratic memory; meant for
/// small graphs and cross-checks.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Distance>> {
    let n = g.node_count();
    let mut d = vec![vec![Distance::Infinite; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Distance::ZERO;
    }
    for (u, v, w) in g.edges() {
        d[u][v] = d[u][v].min(Distance::Finite(w));
        d[v][u] = d[u][v];
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if !dik.is_finite() {
                continue;
            }
            for j in 0..n {
                let cand = dik + d[k][j];
                if cand < d[i][j] {
                    d[i][j] = cand;
                }
            }
        }
    }
    d
}

/// Subgraph induced by a node subset. Node ids are kept: `graph` has the
/// same node count as the parent and non-members are isolated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub center: NodeId,
    pub radius: usize,
    /// Sorted member ids.
    pub members: Vec<NodeId>,
    /// Hop distance from the center, for members only.
    pub hops: Vec<Option<usize>>,
    pub graph: Graph,
}

impl InducedSubgraph {
    pub fn contains(&self, v: NodeId) -> bool {
        self.hops[v].is_some()
    }
}

/// The subgraph induced by all nodes within `h` hops of `v`, with the
/// original weights.
pub fn ball(g: &Graph, v: NodeId, h: usize) -> Result<InducedSubgraph, GraphError> {
    g.check_node(v)?;
    let n = g.node_count();
    let mut hops = vec![None; n];
    let mut queue = VecDeque::new();
    let mut members = vec![v];
    hops[v] = Some(0);
    queue.push_back(v);
    while let Some(u) = queue.pop_front() {
        let hu = hops[u].unwrap();
        if hu == h {
            continue;
        }
        for (x, _) in g.neighbors(u) {
            if hops[x].is_none() {
                hops[x] = Some(hu + 1);
                members.push(x);
                queue.push_back(x);
            }
        }
    }
    members.sort_unstable();
    let mut sub = Graph::new(n);
    for &u in &members {
        for (x, w) in g.neighbors(u) {
            if x > u && hops[x].is_some() {
                sub.add_edge(u, x, w).expect("edge of parent graph");
            }
        }
    }
    Ok(InducedSubgraph {
        center: v,
        radius: h,
        members,
        hops,
        graph: sub,
    })
}

/// Total weight of a node sequence, or `None` if two consecutive nodes are not adjacent.
pub fn path_weight(g: &Graph, nodes: &[NodeId]) -> Option<Weight> {
    nodes
        .windows(2)
        .map(|w| g.weight(w[0], w[1]))
        .sum::<Option<Weight>>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        // a=0, b=1, c=2
        Graph::from_edges(3, [(0, 1, 5), (0, 2, 1), (2, 1, 1)]).unwrap()
    }

    #[test]
    fn unit_path_distances() {
        let g = Graph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let t = shortest_paths(&g, 0).unwrap();
        assert_eq!(t.dist, vec![0.into(), 1.into(), 2.into()]);
        assert_eq!(t.path_to(2), Some(vec![0, 1, 2]));
    }

    #[test]
    fn detour_beats_direct_edge() {
        let t = shortest_paths(&triangle(), 0).unwrap();
        assert_eq!(t.get(1), Distance::Finite(2));
        assert_eq!(t.parent[1], Some(2));
    }

    #[test]
    fn disconnected_is_infinite() {
        let g = Graph::from_edges(3, [(0, 1, 1)]).unwrap();
        assert_eq!(shortest_paths(&g, 0).unwrap().get(2), Distance::Infinite);
        assert!(shortest_paths(&g, 3).is_err());
    }

    #[test]
    fn hop_limited_triangle() {
        let g = triangle();
        assert_eq!(hop_limited(&g, 0, 1).unwrap().get(1), Distance::Finite(5));
        assert_eq!(hop_limited(&g, 0, 2).unwrap().get(1), Distance::Finite(2));
        let zero = hop_limited(&g, 0, 0).unwrap();
        assert_eq!(zero.get(0), Distance::ZERO);
        assert_eq!(zero.get(1), Distance::Infinite);
    }

    #[test]
    fn ball_examples() {
        let p = Graph::from_edges(5, (0..4).map(|i| (i, i + 1, 1))).unwrap();
        let b0 = ball(&p, 2, 0).unwrap();
        assert_eq!(b0.members, vec![2]);
        assert_eq!(b0.graph.edge_count(), 0);
        let b1 = ball(&p, 2, 1).unwrap();
        assert_eq!(b1.members, vec![1, 2, 3]);
        assert_eq!(b1.graph.edge_count(), 2);
        let all = ball(&p, 0, 10).unwrap();
        assert_eq!(all.graph, p);
    }

    #[test]
    fn ball_is_induced() {
        // Triangle: both leaves at hop 1 share an edge that must be kept.
        let b = ball(&triangle(), 0, 1).unwrap();
        assert!(b.graph.has_edge(1, 2));
    }

    #[test]
    fn set_hops() {
        let p = Graph::from_edges(6, (0..5).map(|i| (i, i + 1, 1))).unwrap();
        assert_eq!(hop_between_sets(&p, &[0, 1], &[4, 5]), Some(3));
        assert_eq!(path_weight(&p, &[0, 1, 2]), Some(2));
        assert_eq!(path_weight(&p, &[0, 2]), None);
    }
}
