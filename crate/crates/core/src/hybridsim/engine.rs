use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::stats::{CutSides, GlobalRecord, RoundStats};
use super::{HybridConfig, LocalBandwidth, SimError};
use crate::bits::{dist_bits, id_bits};
use crate::graphcore::{ball, Graph, InducedSubgraph, NodeId, Weight};

/// Payload size of a message in bits.
pub trait Message {
    fn bits(&self) -> u64;
}

/// What a node knows about itself when it runs.
#[derive(Debug, Clone, Copy)]
pub struct NodeContext<'a> {
    pub id: NodeId,
    pub n: usize,
    pub round: u64,
    /// Incident edges as `(neighbor, weight)`, sorted by neighbor.
    pub edges: &'a [(NodeId, Weight)],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope<M> {
    pub from: NodeId,
    pub msg: M,
}

/// Messages delivered to one node at the start of a round, ordered by sender.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inbox<M> {
    pub local: Vec<Envelope<M>>,
    pub global: Vec<Envelope<M>>,
}

impl<M> Default for Inbox<M> {
    fn default() -> Self {
        Inbox {
            local: Vec::new(),
            global: Vec::new(),
        }
    }
}

/// Sends produced by one node in one round, as `(destination, message)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outgoing<M> {
    pub local: Vec<(NodeId, M)>,
    pub global: Vec<(NodeId, M)>,
}

impl<M> Default for Outgoing<M> {
    fn default() -> Self {
        Outgoing {
            local: Vec::new(),
            global: Vec::new(),
        }
    }
}

impl<M> Outgoing<M> {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn global(to: NodeId, msg: M) -> Self {
        Outgoing {
            local: Vec::new(),
            global: vec![(to, msg)],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.local.is_empty() && self.global.is_empty()
    }
}

/// Per-node state machine driven by the engine.
///
/// `init` runs before the first round with only local knowledge; its sends
/// are delivered in round 1. `on_round` for round `r` sees everything sent in
/// round `r` and its sends are delivered in round `r + 1`.
pub trait NodeProgram {
    type Msg: Message;
    type Output;

    fn init(&mut self, ctx: &NodeContext<'_>, rng: &mut ChaCha8Rng) -> Outgoing<Self::Msg>;

    fn on_round(
        &mut self,
        ctx: &NodeContext<'_>,
        inbox: Inbox<Self::Msg>,
        rng: &mut ChaCha8Rng,
    ) -> Outgoing<Self::Msg>;

    fn is_done(&self) -> bool;

    fn finish(self) -> Self::Output;
}

/// RNG stream of node `v` for a given run seed.
pub fn node_rng(seed: u64, v: NodeId) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(v as u64);
    rng
}

struct Pending<M> {
    from: NodeId,
    to: NodeId,
    msg: M,
}

/// Round engine for one graph. Phases (`explore`, `execute`,
/// `local_exchange`, `charge_rounds`) accumulate into a single `RoundStats`.
pub struct Simulator<'g> {
    g: &'g Graph,
    cfg: HybridConfig,
    adj: Vec<Vec<(NodeId, Weight)>>,
    rngs: Vec<ChaCha8Rng>,
    stats: RoundStats,
    cuts: Vec<CutSides>,
    record_log: bool,
}

impl<'g> Simulator<'g> {
    pub fn new(g: &'g Graph, cfg: HybridConfig, seed: u64) -> Self {
        let n = g.node_count();
        Simulator {
            g,
            cfg,
            adj: (0..n).map(|v| g.neighbors(v).collect()).collect(),
            rngs: (0..n).map(|v| node_rng(seed, v)).collect(),
            stats: RoundStats::new(n),
            cuts: Vec::new(),
            record_log: false,
        }
    }

    /// Keep every delivered global message in `RoundStats::log`.
    pub fn with_log(mut self, on: bool) -> Self {
        self.record_log = on;
        self
    }

    /// Count global bits crossing the A/B partition from now on under `label`.
    pub fn track_cut(&mut self, label: &str, a: &[NodeId], b: &[NodeId]) {
        self.cuts.push(CutSides::new(self.g, label, a, b));
        self.stats.cuts.entry(label.to_string()).or_insert(0);
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn config(&self) -> &HybridConfig {
        &self.cfg
    }

    pub fn stats(&self) -> &RoundStats {
        &self.stats
    }

    pub fn into_stats(self) -> RoundStats {
        self.stats
    }

    /// Add rounds that are accounted for by a cost model rather than simulated.
    pub fn charge_rounds(&mut self, k: u64) {
        self.stats.rounds += k;
    }

    /// Flood all topology for `h` rounds over local edges. Returns each
    /// node's view, the subgraph induced by its `h`-hop ball.
    pub fn explore(&mut self, h: usize) -> Result<Vec<InducedSubgraph>, SimError> {
        let n = self.g.node_count();
        if let LocalBandwidth::Bits(limit) = self.cfg.lambda {
            self.check_flood_sizes(h, limit)?;
        }
        self.stats.rounds += h as u64;
        self.stats.local_messages += 2 * self.g.edge_count() as u64 * h as u64;
        (0..n)
            .map(|v| ball(self.g, v, h).map_err(|_| SimError::InvalidNode(v)))
            .collect()
    }

    // In flooding round r a node forwards every edge incident to its
    // (r-1)-hop ball. Sizes only grow with r, so the first violation per node
    // is the first r over the limit.
    fn check_flood_sizes(&self, h: usize, limit: u64) -> Result<(), SimError> {
        let n = self.g.node_count();
        let edge_bits = 2 * id_bits(n) + dist_bits(n, self.g.max_weight());
        let mut worst: Option<(u64, NodeId, NodeId, u64)> = None;
        let mut hop = vec![usize::MAX; n];
        for v in 0..n {
            if self.adj[v].is_empty() {
                continue;
            }
            hop.fill(usize::MAX);
            hop[v] = 0;
            let mut layer = vec![v];
            let mut known_edges = 0u64;
            for rho in 0..h {
                for &x in &layer {
                    for &(y, _) in &self.adj[x] {
                        if hop[y] == usize::MAX || hop[y] > rho || (hop[y] == rho && y > x) {
                            known_edges += 1;
                        }
                    }
                }
                let bits = known_edges * edge_bits;
                if bits > limit {
                    let round = self.stats.rounds + rho as u64 + 1;
                    let cand = (round, v, self.adj[v][0].0, bits);
                    if worst.is_none_or(|w| (cand.0, cand.1) < (w.0, w.1)) {
                        worst = Some(cand);
                    }
                    break;
                }
                let mut next = Vec::new();
                for &x in &layer {
                    for &(y, _) in &self.adj[x] {
                        if hop[y] == usize::MAX {
                            hop[y] = rho + 1;
                            next.push(y);
                        }
                    }
                }
                layer = next;
            }
        }
        match worst {
            Some((round, from, to, bits)) => Err(SimError::LocalSizeViolation {
                from,
                to,
                round,
                bits,
            }),
            None => Ok(()),
        }
    }

    /// One local round in which every node sends `bits(v)` bits to each
    /// neighbor (used for the neighbor snapshot exchange).
    pub fn local_exchange(&mut self, bits: impl Fn(NodeId) -> u64) -> Result<(), SimError> {
        let round = self.stats.rounds + 1;
        for (v, nbrs) in self.adj.iter().enumerate() {
            let b = bits(v);
            if let Some(&(to, _)) = nbrs.first() {
                if !self.cfg.lambda.allows(b) {
                    return Err(SimError::LocalSizeViolation {
                        from: v,
                        to,
                        round,
                        bits: b,
                    });
                }
            }
        }
        self.stats.rounds = round;
        self.stats.local_messages += 2 * self.g.edge_count() as u64;
        Ok(())
    }

    /// Run one program per node until all are done and nothing is in flight.
    /// `max_rounds` bounds the rounds of this phase.
    pub fn execute<P: NodeProgram>(
        &mut self,
        mut programs: Vec<P>,
        max_rounds: u64,
    ) -> Result<Vec<P::Output>, SimError> {
        let n = self.g.node_count();
        if programs.len() != n {
            return Err(SimError::ProgramCount {
                expected: n,
                got: programs.len(),
            });
        }
        let base = self.stats.rounds;
        let mut local = Vec::new();
        let mut global = Vec::new();
        for (v, prog) in programs.iter_mut().enumerate() {
            let ctx = NodeContext {
                id: v,
                n,
                round: base,
                edges: &self.adj[v],
            };
            let out = prog.init(&ctx, &mut self.rngs[v]);
            self.enqueue(v, out, &mut local, &mut global)?;
        }
        let mut r = 0u64;
        loop {
            if local.is_empty() && global.is_empty() && programs.iter().all(P::is_done) {
                break;
            }
            r += 1;
            if r > max_rounds {
                return Err(SimError::NonTermination { max_rounds });
            }
            let round = base + r;
            self.charge(round, &local, &global)?;
            let mut inboxes: Vec<Inbox<P::Msg>> = (0..n).map(|_| Inbox::default()).collect();
            for p in local.drain(..) {
                inboxes[p.to].local.push(Envelope {
                    from: p.from,
                    msg: p.msg,
                });
            }
            for p in global.drain(..) {
                inboxes[p.to].global.push(Envelope {
                    from: p.from,
                    msg: p.msg,
                });
            }
            for (v, (prog, inbox)) in programs.iter_mut().zip(inboxes).enumerate() {
                let ctx = NodeContext {
                    id: v,
                    n,
                    round,
                    edges: &self.adj[v],
                };
                let out = prog.on_round(&ctx, inbox, &mut self.rngs[v]);
                self.enqueue(v, out, &mut local, &mut global)?;
            }
        }
        self.stats.rounds = base + r;
        Ok(programs.into_iter().map(P::finish).collect())
    }

    fn enqueue<M>(
        &self,
        from: NodeId,
        out: Outgoing<M>,
        local: &mut Vec<Pending<M>>,
        global: &mut Vec<Pending<M>>,
    ) -> Result<(), SimError> {
        let n = self.g.node_count();
        for (to, msg) in out.local {
            if !self.g.has_edge(from, to) {
                return Err(SimError::NotAdjacent { from, to });
            }
            local.push(Pending { from, to, msg });
        }
        for (to, msg) in out.global {
            if to >= n {
                return Err(SimError::InvalidNode(to));
            }
            global.push(Pending { from, to, msg });
        }
        Ok(())
    }

    // Budgets are checked for the whole round before anything is delivered,
    // so a violating round has no partial effect on the stats.
    fn charge<M: Message>(
        &mut self,
        round: u64,
        local: &[Pending<M>],
        global: &[Pending<M>],
    ) -> Result<(), SimError> {
        let n = self.g.node_count();
        if let LocalBandwidth::Bits(limit) = self.cfg.lambda {
            let mut per_edge: BTreeMap<(NodeId, NodeId), u64> = BTreeMap::new();
            for p in local {
                *per_edge.entry((p.from, p.to)).or_insert(0) += p.msg.bits();
            }
            if let Some((&(from, to), &bits)) = per_edge.iter().find(|(_, &b)| b > limit) {
                return Err(SimError::LocalSizeViolation {
                    from,
                    to,
                    round,
                    bits,
                });
            }
        }
        let header = self.cfg.header_bits(n);
        let mut load = vec![0u64; n];
        for p in global {
            let b = p.msg.bits() + header;
            load[p.from] += b;
            load[p.to] += b;
        }
        if let Some((node, &bits)) = load.iter().enumerate().find(|(_, &b)| b > self.cfg.gamma) {
            return Err(SimError::BudgetViolation { node, round, bits });
        }
        let peak = load.iter().copied().max().unwrap_or(0);
        let stats = &mut self.stats;
        stats.max_round_load = stats.max_round_load.max(peak);
        stats.local_messages += local.len() as u64;
        for p in global {
            let b = p.msg.bits();
            stats.per_node[p.from].sent += b;
            stats.per_node[p.to].received += b;
            stats.global_bits_sent += b;
            stats.global_bits_received += b;
            stats.global_bits_total += 2 * b;
            for cut in &self.cuts {
                if cut.crosses(p.from, p.to) {
                    *stats.cuts.get_mut(&cut.label).expect("registered cut") += b;
                }
            }
            if self.record_log {
                stats.log.push(GlobalRecord {
                    round,
                    from: p.from,
                    to: p.to,
                    bits: b,
                });
            }
        }
        Ok(())
    }
}

/// Run `programs` (one per node) on `g` from a fresh simulator with the
/// message log enabled.
pub fn run<P: NodeProgram>(
    g: &Graph,
    cfg: HybridConfig,
    programs: Vec<P>,
    seed: u64,
    max_rounds: u64,
) -> Result<(Vec<P::Output>, RoundStats), SimError> {
    let mut sim = Simulator::new(g, cfg, seed).with_log(true);
    let out = sim.execute(programs, max_rounds)?;
    Ok((out, sim.into_stats()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{cycle, path};
    use rand::Rng;

    #[derive(Debug, Clone)]
    struct Bits(u64);

    impl Message for Bits {
        fn bits(&self) -> u64 {
            self.0
        }
    }

    /// Node 0 sends one global message of `size` bits to node `to` at init;
    /// the receiver outputs the number of bits it got.
    struct OneShot {
        size: u64,
        to: NodeId,
        got: Option<u64>,
        done: bool,
    }

    impl NodeProgram for OneShot {
        type Msg = Bits;
        type Output = Option<u64>;

        fn init(&mut self, ctx: &NodeContext<'_>, _: &mut ChaCha8Rng) -> Outgoing<Bits> {
            self.done = ctx.id != self.to;
            if ctx.id == 0 {
                Outgoing::global(self.to, Bits(self.size))
            } else {
                Outgoing::none()
            }
        }

        fn on_round(
            &mut self,
            _: &NodeContext<'_>,
            inbox: Inbox<Bits>,
            _: &mut ChaCha8Rng,
        ) -> Outgoing<Bits> {
            if let Some(e) = inbox.global.first() {
                self.got = Some(e.msg.0);
                self.done = true;
            }
            Outgoing::none()
        }

        fn is_done(&self) -> bool {
            self.done
        }

        fn finish(self) -> Option<u64> {
            self.got
        }
    }

    fn one_shot(n: usize, size: u64, to: NodeId) -> Vec<OneShot> {
        (0..n)
            .map(|_| OneShot {
                size,
                to,
                got: None,
                done: false,
            })
            .collect()
    }

    struct Silent;

    impl NodeProgram for Silent {
        type Msg = Bits;
        type Output = ();
        fn init(&mut self, _: &NodeContext<'_>, _: &mut ChaCha8Rng) -> Outgoing<Bits> {
            Outgoing::none()
        }
        fn on_round(
            &mut self,
            _: &NodeContext<'_>,
            _: Inbox<Bits>,
            _: &mut ChaCha8Rng,
        ) -> Outgoing<Bits> {
            Outgoing::none()
        }
        fn is_done(&self) -> bool {
            true
        }
        fn finish(self) {}
    }

    #[test]
    fn silent_program_costs_nothing() {
        let g = cycle(5);
        let (_, stats) = run(
            &g,
            HybridConfig::default(),
            (0..5).map(|_| Silent).collect(),
            1,
            10,
        )
        .unwrap();
        assert_eq!(stats.rounds, 0);
        assert_eq!(stats.global_bits_total, 0);
        assert!(stats
            .per_node
            .iter()
            .all(|b| b.sent == 0 && b.received == 0));
    }

    #[test]
    fn two_node_id_transfer() {
        let g = path(2);
        let id = id_bits(2);
        let (out, stats) = run(&g, HybridConfig::default(), one_shot(2, id, 1), 1, 10).unwrap();
        assert_eq!(out[1], Some(id));
        assert_eq!(stats.rounds, 1);
        assert_eq!(stats.global_bits_total, 2 * id);
        assert_eq!(stats.per_node[0].sent, id);
        assert_eq!(stats.per_node[1].received, id);
    }

    #[test]
    fn over_budget_send_is_rejected() {
        let g = path(4);
        let mut cfg = HybridConfig::new(LocalBandwidth::Unlimited, 32).unwrap();
        cfg.charge_headers = false;
        let err = run(&g, cfg, one_shot(4, 33, 3), 1, 10).unwrap_err();
        assert_eq!(
            err,
            SimError::BudgetViolation {
                node: 0,
                round: 1,
                bits: 33
            }
        );
        // With headers the payload that reaches gamma + 1 is smaller.
        cfg.charge_headers = true;
        let h = cfg.header_bits(4);
        let err = run(&g, cfg, one_shot(4, 33 - h, 3), 1, 10).unwrap_err();
        assert_eq!(
            err,
            SimError::BudgetViolation {
                node: 0,
                round: 1,
                bits: 33
            }
        );
        assert!(run(&g, cfg, one_shot(4, 32 - h, 3), 1, 10).is_ok());
    }

    struct Forever;

    impl NodeProgram for Forever {
        type Msg = Bits;
        type Output = ();
        fn init(&mut self, _: &NodeContext<'_>, _: &mut ChaCha8Rng) -> Outgoing<Bits> {
            Outgoing::none()
        }
        fn on_round(
            &mut self,
            _: &NodeContext<'_>,
            _: Inbox<Bits>,
            _: &mut ChaCha8Rng,
        ) -> Outgoing<Bits> {
            Outgoing::none()
        }
        fn is_done(&self) -> bool {
            false
        }
        fn finish(self) {}
    }

    #[test]
    fn non_termination() {
        let g = path(3);
        let err = run(
            &g,
            HybridConfig::default(),
            vec![Forever, Forever, Forever],
            1,
            7,
        )
        .unwrap_err();
        assert_eq!(err, SimError::NonTermination { max_rounds: 7 });
    }

    #[test]
    fn explore_cost_and_lambda() {
        let g = cycle(6);
        let mut sim = Simulator::new(&g, HybridConfig::default(), 0);
        let views = sim.explore(2).unwrap();
        assert_eq!(sim.stats().rounds, 2);
        assert_eq!(sim.stats().global_bits_total, 0);
        assert!(views
            .iter()
            .all(|b| b.members.len() == 5 && b.graph.edge_count() == 4));
        assert_eq!(sim.explore(0).unwrap()[3].members, vec![3]);
        assert_eq!(sim.stats().rounds, 2);

        // Round 1 carries 2 edges, round 2 carries 4.
        let edge_bits = 2 * id_bits(6) + dist_bits(6, 1);
        let tight = HybridConfig::new(LocalBandwidth::Bits(2 * edge_bits), 64).unwrap();
        let mut sim = Simulator::new(&g, tight, 0);
        assert!(sim.explore(1).is_ok());
        let err = sim.explore(2).unwrap_err();
        assert!(matches!(
            err,
            SimError::LocalSizeViolation {
                from: 0,
                round: 3,
                ..
            }
        ));
    }

    struct Chatter {
        sends: Vec<(u64, NodeId, u64)>,
        last: u64,
    }

    impl NodeProgram for Chatter {
        type Msg = Bits;
        type Output = u64;
        fn init(&mut self, ctx: &NodeContext<'_>, rng: &mut ChaCha8Rng) -> Outgoing<Bits> {
            self.on_round(ctx, Inbox::default(), rng)
        }
        fn on_round(
            &mut self,
            ctx: &NodeContext<'_>,
            inbox: Inbox<Bits>,
            rng: &mut ChaCha8Rng,
        ) -> Outgoing<Bits> {
            self.last += inbox.global.iter().map(|e| e.msg.0).sum::<u64>();
            self.last += rng.gen_range(0..3);
            let mut out = Outgoing::none();
            for &(r, to, b) in &self.sends {
                if r == ctx.round {
                    out.global.push((to, Bits(b)));
                }
            }
            out
        }
        fn is_done(&self) -> bool {
            true
        }
        fn finish(self) -> u64 {
            self.last
        }
    }

    fn script() -> Vec<Chatter> {
        vec![
            Chatter {
                sends: vec![(0, 3, 8), (2, 2, 5)],
                last: 0,
            },
            Chatter {
                sends: vec![(1, 0, 4)],
                last: 0,
            },
            Chatter {
                sends: vec![],
                last: 0,
            },
            Chatter {
                sends: vec![(1, 1, 3)],
                last: 0,
            },
        ]
    }

    #[test]
    fn scripted_cut_bits() {
        // Path 0-1-2-3 with A = {0}, B = {3}: nodes 0,1 on the A side.
        let g = path(4);
        let (_, stats) = run(&g, HybridConfig::default(), script(), 9, 10).unwrap();
        assert_eq!(stats.rounds, 3);
        assert_eq!(cut_tracking_bits(&g, &stats), 8 + 5 + 3);
        let mut sim = Simulator::new(&g, HybridConfig::default(), 9);
        sim.track_cut("ab", &[0], &[3]);
        sim.execute(script(), 10).unwrap();
        assert_eq!(sim.stats().cuts["ab"], 16);
    }

    fn cut_tracking_bits(g: &Graph, stats: &RoundStats) -> u64 {
        super::super::cut_tracking(g, stats, &[0], &[3])
    }

    #[test]
    fn runs_are_deterministic() {
        let g = path(4);
        let a = run(&g, HybridConfig::default(), script(), 5, 10).unwrap();
        let b = run(&g, HybridConfig::default(), script(), 5, 10).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1.to_json(), b.1.to_json());
        assert_eq!(a.1.log, b.1.log);
    }
}
