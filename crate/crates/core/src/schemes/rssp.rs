use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use super::{RsspMode, SampleSet, SchemeError};
use crate::bits::{dist_bits, id_bits};
use crate::graphcore::{hop_limited, shortest_paths, Distance, Graph, InducedSubgraph, NodeId};
use crate::hybridsim::{
    HybridConfig, Inbox, Message, NodeContext, NodeProgram, Outgoing, RoundStats, Simulator,
};

/// Distances from every node to every sampled node.
#[derive(Debug, Clone, PartialEq)]
pub struct RsspOutput {
    pub landmarks: Vec<NodeId>,
    /// `dist[v][i] = d(v, landmarks[i])`.
    pub dist: Vec<Vec<Distance>>,
    /// Rounds spent in the RSSP step alone.
    pub rounds: u64,
    /// Stats of the whole run, including the exploration that precedes RSSP.
    pub stats: RoundStats,
}

/// Explores `h` hops and then solves RSSP for `s` in a fresh simulator.
pub fn solve_rssp(
    g: &Graph,
    cfg: HybridConfig,
    s: &SampleSet,
    h: usize,
    mode: RsspMode,
    seed: u64,
) -> Result<RsspOutput, SchemeError> {
    if s.is_empty() {
        return Err(SchemeError::EmptySample);
    }
    let mut sim = Simulator::new(g, cfg, seed);
    let views = sim.explore(h)?;
    let local = local_distances(&views)?;
    let before = sim.stats().rounds;
    let dist = rssp_phase(&mut sim, &local, s, mode)?;
    let rounds = sim.stats().rounds - before;
    Ok(RsspOutput {
        landmarks: s.members.clone(),
        dist,
        rounds,
        stats: sim.into_stats(),
    })
}

/// `d_h(v, .)` computed by each node inside its own view.
pub(crate) fn local_distances(
    views: &[InducedSubgraph],
) -> Result<Vec<Arc<Vec<Distance>>>, SchemeError> {
    views
        .iter()
        .map(|b| Ok(Arc::new(hop_limited(&b.graph, b.center, b.radius)?.dist)))
        .collect()
}

pub(crate) fn rssp_phase(
    sim: &mut Simulator<'_>,
    local: &[Arc<Vec<Distance>>],
    s: &SampleSet,
    mode: RsspMode,
) -> Result<Vec<Vec<Distance>>, SchemeError> {
    match mode {
        RsspMode::Simulated => simulated(sim, local, s),
        RsspMode::CostModel { c, a } => {
            let g = sim.graph();
            let n = g.node_count();
            let mut dist = vec![Vec::with_capacity(s.len()); n];
            for &src in &s.members {
                let t = shortest_paths(g, src)?;
                for (v, row) in dist.iter_mut().enumerate() {
                    row.push(t.dist[v]);
                }
            }
            sim.charge_rounds(cost_model_rounds(n, s.x, c, a));
            Ok(dist)
        }
    }
}

/// `ceil(c * (n^(1/3) + n / x^2) * log2(n)^a)`.
pub(crate) fn cost_model_rounds(n: usize, x: f64, c: f64, a: f64) -> u64 {
    let nf = n.max(2) as f64;
    let v = c * (nf.cbrt() + nf / (x * x)) * nf.log2().powf(a);
    v.ceil().max(0.0) as u64
}

/// Skeleton edge `(a, b, d_h(a, b))` between sampled nodes; `a == b`
/// announces membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Item {
    a: NodeId,
    b: NodeId,
    d: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ChunkKind {
    ToRelay,
    Broadcast,
}

#[derive(Debug, Clone)]
struct Chunk {
    kind: ChunkKind,
    items: Arc<Vec<Item>>,
    item_bits: u64,
}

impl Message for Chunk {
    /// One tag bit plus the items.
    fn bits(&self) -> u64 {
        1 + self.items.len() as u64 * self.item_bits
    }
}

// Every sampled node splits its items into chunks and hands chunk i to relay
// `id + shift`, where the shift depends only on the round, so the senders of
// one round hit distinct receivers. Each relay then sends every chunk it holds
// to all other nodes, one chunk for n - 1 consecutive rounds, again with the
// round-dependent shift. Per round a node sends at most one chunk of each kind
// and receives at most one of each, so four chunks plus headers bound its load.
struct RsspNode {
    n: usize,
    item_bits: u64,
    own: VecDeque<Arc<Vec<Item>>>,
    relay: VecDeque<Arc<Vec<Item>>>,
    current: Option<(Arc<Vec<Item>>, usize)>,
    known: Vec<Item>,
}

impl RsspNode {
    fn sends(&mut self, ctx: &NodeContext<'_>) -> Outgoing<Chunk> {
        let mut out = Outgoing::none();
        if self.n < 2 {
            self.own.clear();
            self.relay.clear();
            return out;
        }
        let shift = 1 + (ctx.round % (self.n as u64 - 1)) as usize;
        let to = (ctx.id + shift) % self.n;
        if let Some(items) = self.own.pop_front() {
            out.global.push((
                to,
                Chunk {
                    kind: ChunkKind::ToRelay,
                    items,
                    item_bits: self.item_bits,
                },
            ));
        }
        if self.current.is_none() {
            self.current = self.relay.pop_front().map(|c| (c, 0));
        }
        if let Some((items, sent)) = &mut self.current {
            out.global.push((
                to,
                Chunk {
                    kind: ChunkKind::Broadcast,
                    items: Arc::clone(items),
                    item_bits: self.item_bits,
                },
            ));
            *sent += 1;
            if *sent == self.n - 1 {
                self.current = None;
            }
        }
        out
    }
}

impl NodeProgram for RsspNode {
    type Msg = Chunk;
    type Output = Vec<Item>;

    fn init(&mut self, ctx: &NodeContext<'_>, _: &mut ChaCha8Rng) -> Outgoing<Chunk> {
        self.sends(ctx)
    }

    fn on_round(
        &mut self,
        ctx: &NodeContext<'_>,
        inbox: Inbox<Chunk>,
        _: &mut ChaCha8Rng,
    ) -> Outgoing<Chunk> {
        for env in inbox.global {
            self.known.extend(env.msg.items.iter().copied());
            if env.msg.kind == ChunkKind::ToRelay {
                self.relay.push_back(env.msg.items);
            }
        }
        self.sends(ctx)
    }

    fn is_done(&self) -> bool {
        self.own.is_empty() && self.relay.is_empty() && self.current.is_none()
    }

    fn finish(mut self) -> Vec<Item> {
        self.known.sort_unstable();
        self.known.dedup_by(|x, y| x.a == y.a && x.b == y.b);
        self.known
    }
}

fn simulated(
    sim: &mut Simulator<'_>,
    local: &[Arc<Vec<Distance>>],
    s: &SampleSet,
) -> Result<Vec<Vec<Distance>>, SchemeError> {
    let g = sim.graph();
    let n = g.node_count();
    let gamma = sim.config().gamma;
    let header = sim.config().header_bits(n);
    let item_bits = 2 * id_bits(n) + dist_bits(n, g.max_weight());
    let cap = ((gamma / 4).saturating_sub(header + 1) / item_bits) as usize;
    if cap == 0 {
        return Err(SchemeError::GammaTooSmall { gamma });
    }
    let mut total_items = 0usize;
    let programs: Vec<RsspNode> = (0..n)
        .map(|v| {
            let mut own = VecDeque::new();
            let mut known = Vec::new();
            if s.contains(v) {
                // A node sees membership of the nodes in its ball only.
                let items: Vec<Item> = (0..n)
                    .filter(|&t| s.contains(t))
                    .filter_map(|t| local[v][t].finite().map(|d| Item { a: v, b: t, d }))
                    .collect();
                total_items += items.len();
                own.extend(items.chunks(cap).map(|c| Arc::new(c.to_vec())));
                known = items;
            }
            RsspNode {
                n,
                item_bits,
                own,
                relay: VecDeque::new(),
                current: None,
                known,
            }
        })
        .collect();
    let max_rounds = (total_items as u64 + 2) * n as u64 + 16;
    let outputs = sim.execute(programs, max_rounds)?;

    // Nodes holding the same items reach the same skeleton distances, so the
    // skeleton computation is shared between consecutive equal inputs.
    let mut dist = Vec::with_capacity(n);
    let mut cache: Option<Cached> = None;
    for (v, items) in outputs.iter().enumerate() {
        if cache.as_ref().is_none_or(|c| c.0 != items) {
            let (ids, apsp) = skeleton_apsp(items);
            let pos = s
                .members
                .iter()
                .map(|m| ids.binary_search(m).ok())
                .collect();
            cache = Some((items, pos, (ids, apsp)));
        }
        let (_, pos, (ids, apsp)) = cache.as_ref().expect("filled above");
        let lv = &local[v];
        let row = pos
            .iter()
            .map(|p| match p {
                Some(i) => apsp[*i]
                    .iter()
                    .zip(ids.iter())
                    .map(|(&sk, &t)| sk + lv[t])
                    .min()
                    .unwrap_or(Distance::Infinite),
                None => Distance::Infinite,
            })
            .collect();
        dist.push(row);
    }
    Ok(dist)
}

/// Skeleton node ids and their pairwise distances.
type Skeleton = (Vec<NodeId>, Vec<Vec<Distance>>);

/// Last input, positions of the sample in it, and its skeleton.
type Cached<'a> = (&'a Vec<Item>, Vec<Option<usize>>, Skeleton);

/// Each node's final computation: shortest paths in the skeleton, then
/// `d(s, v) = min over s' of skel(s, s') + d_h(v, s')`.
fn skeleton_apsp(items: &[Item]) -> Skeleton {
    let mut ids: Vec<NodeId> = items.iter().map(|it| it.a).collect();
    ids.sort_unstable();
    ids.dedup();
    let k = ids.len();
    let idx: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut d = vec![vec![Distance::Infinite; k]; k];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Distance::ZERO;
    }
    for it in items {
        if let (Some(&i), Some(&j)) = (idx.get(&it.a), idx.get(&it.b)) {
            let w = Distance::Finite(it.d);
            if w < d[i][j] {
                d[i][j] = w;
                d[j][i] = w;
            }
        }
    }
    for m in 0..k {
        for i in 0..k {
            let dim = d[i][m];
            if !dim.is_finite() {
                continue;
            }
            for j in 0..k {
                let c = dim + d[m][j];
                if c < d[i][j] {
                    d[i][j] = c;
                }
            }
        }
    }
    (ids, d)
}
