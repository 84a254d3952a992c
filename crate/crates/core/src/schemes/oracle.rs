use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SchemeError;
use crate::bits::{dist_bits, id_bits};
use crate::graphcore::{Distance, NodeId, Weight};

/// `{(s, d(s, owner)) : s in S}`, in increasing order of `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactLabel {
    pub owner: NodeId,
    pub entries: Vec<(NodeId, Distance)>,
}

/// The owner's nearest sampled node and the distance to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxLabel {
    pub owner: NodeId,
    pub s_u: NodeId,
    pub dist_to_s: Distance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label<'a> {
    Exact(&'a ExactLabel),
    Approx(&'a ApproxLabel),
}

/// Bit length of a label in an `n`-node graph with maximum weight `max_weight`.
/// Ids cost `ceil(log n)` bits and distances `ceil(log(n W))` bits.
pub fn measure_label_bits(label: Label<'_>, n: usize, max_weight: Weight) -> u64 {
    let id = id_bits(n);
    let d = dist_bits(n, max_weight);
    match label {
        Label::Exact(l) => id + l.entries.len() as u64 * (id + d),
        Label::Approx(_) => 2 * id + d,
    }
}

/// What a node holds after preprocessing: hop-limited distances to its ball
/// and distances to every sampled node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCore {
    pub owner: NodeId,
    /// `d_h(owner, u)`, infinite outside the explored ball.
    pub local: Arc<Vec<Distance>>,
    /// Sorted sampled nodes, shared by all nodes of a scheme.
    pub landmarks: Arc<Vec<NodeId>>,
    /// `d(owner, landmarks[i])`.
    pub to_landmarks: Vec<Distance>,
}

impl OracleCore {
    fn landmark_dist(&self, s: NodeId) -> Distance {
        match self.landmarks.binary_search(&s) {
            Ok(i) => self.to_landmarks[i],
            Err(_) => Distance::Infinite,
        }
    }
}

/// A node's own oracle plus the snapshots received from its neighbors in the
/// final exchange round, sorted by neighbor id.
#[derive(Debug, Clone)]
pub struct NodeSchemeState {
    pub core: Arc<OracleCore>,
    pub neighbors: Vec<(NodeId, Weight, Arc<OracleCore>)>,
}

/// `min(d_h(v, u), min_s d(v, s) + d(s, u))`.
pub fn eval_oracle_exact(v: &OracleCore, label: &ExactLabel) -> Distance {
    let mut best = v.local[label.owner];
    for (&dvs, &(_, dsu)) in v.to_landmarks.iter().zip(&label.entries) {
        best = best.min(dvs + dsu);
    }
    best
}

/// `min(d_h(v, u), d(v, s_u) + d(s_u, u))`.
pub fn eval_oracle_approx(v: &OracleCore, label: &ApproxLabel) -> Distance {
    v.local[label.owner].min(v.landmark_dist(label.s_u) + label.dist_to_s)
}

/// Smallest neighbor `z` with `o_z(u) = o_v(u) - w(v, z)`.
pub fn routing_next_exact(
    state: &NodeSchemeState,
    label: &ExactLabel,
) -> Result<NodeId, SchemeError> {
    let here = eval_oracle_exact(&state.core, label);
    state
        .neighbors
        .iter()
        .find(|(_, w, core)| {
            let there = eval_oracle_exact(core, label);
            there.is_finite() && here.checked_sub(*w).map(Distance::Finite) == Some(there)
        })
        .map(|&(z, _, _)| z)
        .ok_or(SchemeError::NoProgress {
            at: state.core.owner,
            target: label.owner,
        })
}

/// Smallest neighbor `z` with `o_z(u) <= o_v(u) - w(v, z)`.
pub fn routing_next_approx(
    state: &NodeSchemeState,
    label: &ApproxLabel,
) -> Result<NodeId, SchemeError> {
    let here = eval_oracle_approx(&state.core, label);
    state
        .neighbors
        .iter()
        .find(|(_, w, core)| match here.checked_sub(*w) {
            Some(budget) => eval_oracle_approx(core, label) <= Distance::Finite(budget),
            None => false,
        })
        .map(|&(z, _, _)| z)
        .ok_or(SchemeError::NoProgress {
            at: state.core.owner,
            target: label.owner,
        })
}
