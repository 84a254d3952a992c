use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::oracle::{
    eval_oracle_approx, eval_oracle_exact, measure_label_bits, routing_next_approx,
    routing_next_exact, ApproxLabel, ExactLabel, Label, NodeSchemeState, OracleCore,
};
use super::rssp::{local_distances, rssp_phase};
use super::sampling::{check_cover, sample, SampleSet};
use super::{SchemeError, SchemeParams};
use crate::bits::{dist_bits, id_bits};
use crate::graphcore::{Distance, Graph, NodeId, Weight};
use crate::hybridsim::{HybridConfig, RoundStats, Simulator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    Exact,
    Approx,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Labels {
    Exact(Vec<ExactLabel>),
    Approx(Vec<ApproxLabel>),
}

/// A built scheme: labels, per-node oracle and routing state, and the
/// measured cost of building it.
#[derive(Debug, Clone)]
pub struct Scheme {
    pub kind: SchemeKind,
    pub params: SchemeParams,
    pub explore_radius: usize,
    pub sample: SampleSet,
    pub labels: Labels,
    pub states: Vec<NodeSchemeState>,
    pub stats: RoundStats,
    pub rssp_rounds: u64,
    /// First pair violating the sampling cover property, if any. The scheme
    /// is still usable but exactness and stretch are not guaranteed.
    pub sampling_failure: Option<(NodeId, NodeId)>,
    pub n: usize,
    pub max_weight: Weight,
}

/// Serialized form of a scheme.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeDump {
    pub kind: SchemeKind,
    pub params: SchemeParams,
    pub explore_radius: usize,
    pub sample: Vec<NodeId>,
    pub labels: Labels,
    pub rssp_rounds: u64,
    pub sampling_success: bool,
    pub stats: RoundStats,
}

impl Scheme {
    pub fn label(&self, u: NodeId) -> Label<'_> {
        match &self.labels {
            Labels::Exact(l) => Label::Exact(&l[u]),
            Labels::Approx(l) => Label::Approx(&l[u]),
        }
    }

    pub fn label_bits(&self, u: NodeId) -> u64 {
        measure_label_bits(self.label(u), self.n, self.max_weight)
    }

    /// `o_v(lambda(u))`.
    pub fn estimate(&self, v: NodeId, u: NodeId) -> Distance {
        match &self.labels {
            Labels::Exact(l) => eval_oracle_exact(&self.states[v].core, &l[u]),
            Labels::Approx(l) => eval_oracle_approx(&self.states[v].core, &l[u]),
        }
    }

    /// Next hop from `v` towards `u`.
    pub fn next_hop(&self, v: NodeId, u: NodeId) -> Result<NodeId, SchemeError> {
        match &self.labels {
            Labels::Exact(l) => routing_next_exact(&self.states[v], &l[u]),
            Labels::Approx(l) => routing_next_approx(&self.states[v], &l[u]),
        }
    }

    pub fn ensure_sampling(&self) -> Result<(), SchemeError> {
        match self.sampling_failure {
            Some((v, u)) => Err(SchemeError::SamplingFailure { v, u }),
            None => Ok(()),
        }
    }

    pub fn dump(&self) -> SchemeDump {
        SchemeDump {
            kind: self.kind,
            params: self.params,
            explore_radius: self.explore_radius,
            sample: self.sample.members.clone(),
            labels: self.labels.clone(),
            rssp_rounds: self.rssp_rounds,
            sampling_success: self.sampling_failure.is_none(),
            stats: self.stats.clone(),
        }
    }
}

/// Global bits crossing an A/B partition, tracked while a scheme is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSpec {
    pub label: String,
    pub a: Vec<NodeId>,
    pub b: Vec<NodeId>,
}

/// Explore `h` hops, solve RSSP, create labels `{(s, d(s, v))}` and exchange
/// oracle snapshots with neighbors.
pub fn build_scheme_exact(
    g: &Graph,
    cfg: HybridConfig,
    params: &SchemeParams,
) -> Result<Scheme, SchemeError> {
    build_scheme(g, cfg, params, SchemeKind::Exact, &[])
}

/// As the exact scheme, but explores `ceil(widen * h)` hops and labels each
/// node with its nearest sampled node only.
pub fn build_scheme_approx(
    g: &Graph,
    cfg: HybridConfig,
    params: &SchemeParams,
) -> Result<Scheme, SchemeError> {
    build_scheme(g, cfg, params, SchemeKind::Approx, &[])
}

pub fn build_scheme(
    g: &Graph,
    cfg: HybridConfig,
    params: &SchemeParams,
    kind: SchemeKind,
    cuts: &[CutSpec],
) -> Result<Scheme, SchemeError> {
    let n = g.node_count();
    params.validate(n)?;
    let s = sample(g, params.x, params.seed);
    if s.is_empty() {
        return Err(SchemeError::EmptySample);
    }
    let radius = match kind {
        SchemeKind::Exact => params.h,
        SchemeKind::Approx => params.explore_radius(),
    };
    let mut sim = Simulator::new(g, cfg, params.seed);
    for c in cuts {
        sim.track_cut(&c.label, &c.a, &c.b);
    }
    let views = sim.explore(radius)?;
    let local = local_distances(&views)?;
    drop(views);
    let before = sim.stats().rounds;
    let dist = rssp_phase(&mut sim, &local, &s, params.rssp)?;
    let rssp_rounds = sim.stats().rounds - before;

    let landmarks = Arc::new(s.members.clone());
    let labels = match kind {
        SchemeKind::Exact => Labels::Exact(
            (0..n)
                .map(|v| ExactLabel {
                    owner: v,
                    entries: s
                        .members
                        .iter()
                        .copied()
                        .zip(dist[v].iter().copied())
                        .collect(),
                })
                .collect(),
        ),
        SchemeKind::Approx => Labels::Approx(
            (0..n)
                .map(|v| {
                    // Members are sorted, so the first minimum has the smallest id.
                    let mut best = 0;
                    for (i, &d) in dist[v].iter().enumerate() {
                        if d < dist[v][best] {
                            best = i;
                        }
                    }
                    ApproxLabel {
                        owner: v,
                        s_u: s.members[best],
                        dist_to_s: dist[v][best],
                    }
                })
                .collect(),
        ),
    };
    let cores: Vec<Arc<OracleCore>> = local
        .into_iter()
        .zip(dist)
        .enumerate()
        .map(|(v, (local, to_landmarks))| {
            Arc::new(OracleCore {
                owner: v,
                local,
                landmarks: Arc::clone(&landmarks),
                to_landmarks,
            })
        })
        .collect();

    // Neighbor snapshot: the ball distances plus the landmark distances.
    let entry_bits = id_bits(n) + dist_bits(n, g.max_weight());
    sim.local_exchange(|v| {
        let c = &cores[v];
        let known = c.local.iter().filter(|d| d.is_finite()).count() + c.to_landmarks.len();
        known as u64 * entry_bits
    })?;
    let states = (0..n)
        .map(|v| NodeSchemeState {
            core: Arc::clone(&cores[v]),
            neighbors: g
                .neighbors(v)
                .map(|(z, w)| (z, w, Arc::clone(&cores[z])))
                .collect(),
        })
        .collect();

    let sampling_failure = check_cover(g, &s, params.h);
    Ok(Scheme {
        kind,
        params: *params,
        explore_radius: radius,
        sample: s,
        labels,
        states,
        stats: sim.into_stats(),
        rssp_rounds,
        sampling_failure,
        n,
        max_weight: g.max_weight(),
    })
}
