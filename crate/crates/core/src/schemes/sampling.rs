use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graphcore::{Distance, Graph, NodeId};
use crate::hybridsim::node_rng;

/// Default constant in `h = ceil(ksi * x * ln n)`.
pub const DEFAULT_KSI: f64 = 2.0;

// Sampling draws from its own streams so that adding randomness to a node
// program does not change S.
const SAMPLE_SALT: u64 = 0x5a4d_504c_455f_5345;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub x: f64,
    pub ksi: f64,
}

impl SamplingConfig {
    pub fn new(x: f64) -> Self {
        SamplingConfig {
            x,
            ksi: DEFAULT_KSI,
        }
    }

    pub fn h_of_x(&self, n: usize) -> usize {
        h_of_x(n, self.x, self.ksi)
    }
}

/// `ceil(ksi * x * ln n)`, at least 1.
pub fn h_of_x(n: usize, x: f64, ksi: f64) -> usize {
    let ln = (n.max(1) as f64).ln();
    ((ksi * x * ln).ceil() as usize).max(1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    /// Sorted.
    pub members: Vec<NodeId>,
    pub x: f64,
    pub seed: u64,
    #[serde(skip)]
    pub in_s: Vec<bool>,
}

impl SampleSet {
    pub fn from_members(n: usize, mut members: Vec<NodeId>, x: f64, seed: u64) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut in_s = vec![false; n];
        for &s in &members {
            in_s[s] = true;
        }
        SampleSet {
            members,
            x,
            seed,
            in_s,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.in_s.get(v).copied().unwrap_or(false)
    }

    /// Position of `s` in `members`.
    pub fn index_of(&self, s: NodeId) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }
}

/// Each node joins independently with probability `1/x`, drawing from its
/// own seeded stream.
pub fn sample(g: &Graph, x: f64, seed: u64) -> SampleSet {
    let n = g.node_count();
    let p = if x >= 1.0 { 1.0 / x } else { 1.0 };
    let members = (0..n)
        .filter(|&v| node_rng(seed ^ SAMPLE_SALT, v).gen::<f64>() < p)
        .collect();
    SampleSet::from_members(n, members, x, seed)
}

/// Checks the property the exact and approximate schemes rely on: every
/// pair `(v, u)` has a shortest path on which the sampled nodes cut it into
/// pieces of at most `h` hops (a path of at most `h` hops needs no sampled
/// node). Returns the first pair where this fails.
pub fn check_cover(g: &Graph, s: &SampleSet, h: usize) -> Option<(NodeId, NodeId)> {
    let n = g.node_count();
    let mut dist = vec![Distance::Infinite; n];
    let mut order = Vec::with_capacity(n);
    let mut run = vec![usize::MAX; n];
    for v in 0..n {
        dijkstra_order(g, v, &mut dist, &mut order);
        run.fill(usize::MAX);
        run[v] = 0;
        // `run[u]`: fewest hops since the last breakpoint over all shortest
        // v-u paths whose earlier pieces are all within `h`.
        for &u in order.iter().skip(1) {
            let du = dist[u];
            let mut best = usize::MAX;
            for (p, w) in g.neighbors(u) {
                if dist[p] + w == du && run[p] != usize::MAX {
                    let reset = if s.contains(p) { 0 } else { run[p] };
                    best = best.min(reset + 1);
                }
            }
            if best > h {
                return Some((v, u));
            }
            run[u] = best;
        }
    }
    None
}

fn dijkstra_order(g: &Graph, s: NodeId, dist: &mut [Distance], order: &mut Vec<NodeId>) {
    dist.fill(Distance::Infinite);
    order.clear();
    let mut heap = BinaryHeap::new();
    dist[s] = Distance::ZERO;
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if Distance::Finite(d) > dist[u] {
            continue;
        }
        if order.last() == Some(&u) {
            continue;
        }
        order.push(u);
        for (v, w) in g.neighbors(u) {
            if Distance::Finite(d + w) < dist[v] {
                dist[v] = Distance::Finite(d + w);
                heap.push(Reverse((d + w, v)));
            }
        }
    }
}
