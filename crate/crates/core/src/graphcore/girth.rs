use std::collections::VecDeque;

use super::{Bipartite, Graph, NodeId};

/// Length (in edges) of the shortest cycle, or `None` for a forest.
///
/// One BFS per root; a non-tree edge `{u, w}` seen from root `r` closes a
/// closed walk of length `hop(r,u) + hop(r,w) + 1`, and the minimum over all
/// roots is exactly the girth. O(n * m).
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.node_count();
    let mut best: Option<usize> = None;
    let mut hop = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        hop.fill(usize::MAX);
        parent.fill(usize::MAX);
        queue.clear();
        hop[root] = 0;
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            // Any cycle found deeper than this cannot improve `best`.
            if let Some(b) = best {
                if 2 * hop[u] >= b {
                    break 'bfs;
                }
            }
            for (w, _) in g.neighbors(u) {
                if hop[w] == usize::MAX {
                    hop[w] = hop[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = hop[u] + hop[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Proper 2-coloring, if one exists.
pub fn is_bipartite(g: &Graph) -> Option<Vec<bool>> {
    let n = g.node_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for (w, _) in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(Option::unwrap).collect())
}

/// Bipartite double cover: node `v` becomes `v` (left copy) and `v + n`
/// (right copy); each edge `{u, v}` becomes `{u, v + n}` and `{v, u + n}`.
///
/// The result has twice the nodes and edges, is balanced bipartite, and its
/// girth is at least the girth of `g` (at least `girth + 1` when that is odd).
pub fn bipartite_double_cover(g: &Graph) -> Bipartite {
    let n = g.node_count();
    let mut cover = Graph::new(2 * n);
    for (u, v, w) in g.edges() {
        cover.add_edge(u, v + n, w).expect("distinct copies");
        cover.add_edge(v, u + n, w).expect("distinct copies");
    }
    Bipartite {
        graph: cover,
        left: (0..n).collect(),
        right: (n..2 * n).collect::<Vec<NodeId>>(),
    }
}
