use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, GraphError, NodeId, Weight};

/// A graph together with a recorded bipartition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartite {
    pub graph: Graph,
    pub left: Vec<NodeId>,
    pub right: Vec<NodeId>,
}

/// `K_{k,k}` with left side `0..k`, right side `k..2k` and unit weights.
pub fn complete_bipartite(k: usize) -> Result<Bipartite, GraphError> {
    if k < 1 {
        return Err(GraphError::EmptyBipartition);
    }
    let mut g = Graph::new(2 * k);
    for i in 0..k {
        for j in 0..k {
            g.add_edge(i, k + j, 1)?;
        }
    }
    Ok(Bipartite {
        graph: g,
        left: (0..k).collect(),
        right: (k..2 * k).collect(),
    })
}

/// Unit-weight cycle on `n >= 3` nodes (a path for smaller `n`).
pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(n - 1, 0, 1).expect("fresh edge");
    }
    g
}

/// Unit-weight path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i, 1))).expect("valid path")
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5, 1).unwrap();
        g.add_edge(i, i + 5, 1).unwrap();
        g.add_edge(5 + i, 5 + (i + 2) % 5, 1).unwrap();
    }
    g
}

/// Erdos-Renyi `G(n, p)` with weights uniform in `[1, max_w]`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, max_w: Weight, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                let w = rng.gen_range(1..=max_w.max(1));
                g.add_edge(u, v, w).expect("fresh edge");
            }
        }
    }
    g
}

/// Connected random graph: a uniformly shuffled random spanning tree plus
/// `G(n, p)` extra edges. Weights uniform in `[1, max_w]`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, max_w: Weight, rng: &mut R) -> Graph {
    let max_w = max_w.max(1);
    let mut g = Graph::new(n);
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let w = rng.gen_range(1..=max_w);
        g.add_edge(parent, order[i], w).expect("tree edge");
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p.clamp(0.0, 1.0)) {
                let w = rng.gen_range(1..=max_w);
                g.add_edge(u, v, w).expect("fresh edge");
            }
        }
    }
    g
}

/// Weighted path `0 - 1 - ... - (n-1)` plus short chords `{i, i+d}` for
/// `2 <= d <= span`, each present with probability `p`. The hop diameter
/// stays a constant fraction of `n`.
pub fn band<R: Rng + ?Sized>(n: usize, span: usize, p: f64, max_w: Weight, rng: &mut R) -> Graph {
    let max_w = max_w.max(1);
    let mut g = Graph::new(n);
    for i in 1..n {
        let w = rng.gen_range(1..=max_w);
        g.add_edge(i - 1, i, w).expect("path edge");
    }
    for i in 0..n {
        for d in 2..=span {
            if i + d < n && rng.gen_bool(p.clamp(0.0, 1.0)) {
                let w = rng.gen_range(1..=max_w);
                g.add_edge(i, i + d, w).expect("fresh chord");
            }
        }
    }
    g
}

/// [`band`] closed into a ring by one more edge `{n-1, 0}`.
pub fn ring_with_chords<R: Rng + ?Sized>(
    n: usize,
    span: usize,
    p: f64,
    max_w: Weight,
    rng: &mut R,
) -> Graph {
    let mut g = band(n, span, p, max_w, rng);
    if n >= 3 && !g.has_edge(n - 1, 0) {
        let w = rng.gen_range(1..=max_w.max(1));
        g.add_edge(n - 1, 0, w).expect("closing edge");
    }
    g
}
