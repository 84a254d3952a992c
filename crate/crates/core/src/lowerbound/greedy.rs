use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::LowerBoundError;
use crate::graphcore::{girth, Bipartite, Graph, NodeId};

#[derive(Debug, Clone)]
pub struct GreedyGraph {
    pub base: Bipartite,
    pub girth: Option<usize>,
    /// False when every remaining edge would close a short cycle before
    /// `target_edges` was reached.
    pub reached_target: bool,
}

/// Is there a path of fewer than `limit` hops between `a` and `b`?
fn within(g: &Graph, a: NodeId, b: NodeId, limit: usize, seen: &mut [usize], stamp: usize) -> bool {
    let mut queue = VecDeque::from([(a, 0usize)]);
    seen[a] = stamp;
    while let Some((u, d)) = queue.pop_front() {
        if u == b {
            return true;
        }
        if d + 1 >= limit {
            continue;
        }
        for (w, _) in g.neighbors(u) {
            if seen[w] != stamp {
                seen[w] = stamp;
                queue.push_back((w, d + 1));
            }
        }
    }
    false
}

/// Balanced bipartite graph on `2k` nodes with girth at least `ell`.
///
/// Candidate edges are tried in a seeded random order and kept when the
/// endpoints are at least `ell - 1` hops apart.
pub fn high_girth_greedy(
    k: usize,
    ell: usize,
    target_edges: usize,
    seed: u64,
) -> Result<GreedyGraph, LowerBoundError> {
    if ell < 4 || ell % 2 == 1 {
        return Err(LowerBoundError::InvalidParams(format!(
            "ell must be even and >= 4, got {ell}"
        )));
    }
    let mut g = Graph::new(2 * k);
    let mut pairs: Vec<(NodeId, NodeId)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, k + j)))
        .collect();
    pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut seen = vec![0usize; 2 * k];
    let mut stamp = 0;
    for (a, b) in pairs {
        if g.edge_count() >= target_edges {
            break;
        }
        stamp += 1;
        if !within(&g, a, b, ell - 1, &mut seen, stamp) {
            g.add_edge(a, b, 1)?;
        }
    }
    let gi = girth(&g);
    assert!(gi.is_none_or(|x| x >= ell), "greedy produced girth {gi:?}");
    let reached_target = g.edge_count() >= target_edges;
    Ok(GreedyGraph {
        base: Bipartite {
            graph: g,
            left: (0..k).collect(),
            right: (k..2 * k).collect(),
        },
        girth: gi,
        reached_target,
    })
}
