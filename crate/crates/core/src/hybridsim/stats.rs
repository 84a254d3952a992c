use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graphcore::{hops_from_set, Graph, NodeId};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeBits {
    pub sent: u64,
    pub received: u64,
}

/// One delivered global message; `bits` is the payload size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalRecord {
    pub round: u64,
    pub from: NodeId,
    pub to: NodeId,
    pub bits: u64,
}

/// Measured cost of a simulated execution.
///
/// Bit counters hold payload bits only. Header bits are charged against the
/// per-round budget but are not part of these totals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundStats {
    pub rounds: u64,
    /// Sent plus received, so every delivered bit is counted twice.
    pub global_bits_total: u64,
    pub global_bits_sent: u64,
    pub global_bits_received: u64,
    pub per_node: Vec<NodeBits>,
    pub cuts: BTreeMap<String, u64>,
    pub local_messages: u64,
    /// Largest charged load (payload plus headers, sent plus received) of any
    /// node in any round.
    pub max_round_load: u64,
    #[serde(skip)]
    pub log: Vec<GlobalRecord>,
}

impl RoundStats {
    pub fn new(n: usize) -> Self {
        RoundStats {
            per_node: vec![NodeBits::default(); n],
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}

/// Partition of the nodes into an A side and a B side: a node belongs to
/// the side whose set is closer in hops, ties going to A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSides {
    pub label: String,
    pub in_a: Vec<bool>,
}

impl CutSides {
    pub fn new(g: &Graph, label: impl Into<String>, a: &[NodeId], b: &[NodeId]) -> Self {
        let ha = hops_from_set(g, a);
        let hb = hops_from_set(g, b);
        let in_a = ha
            .iter()
            .zip(&hb)
            .map(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => x <= y,
                (None, Some(_)) => false,
                _ => true,
            })
            .collect();
        CutSides {
            label: label.into(),
            in_a,
        }
    }

    pub fn crosses(&self, from: NodeId, to: NodeId) -> bool {
        self.in_a[from] != self.in_a[to]
    }
}

/// Global payload bits exchanged between the A side and the B side, in
/// either direction, over the message log of `stats`.
pub fn cut_tracking(g: &Graph, stats: &RoundStats, a: &[NodeId], b: &[NodeId]) -> u64 {
    let sides = CutSides::new(g, "", a, b);
    stats
        .log
        .iter()
        .filter(|r| sides.crosses(r.from, r.to))
        .map(|r| r.bits)
        .sum()
}
