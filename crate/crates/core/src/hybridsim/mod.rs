//! Synchronous HYBRID(lambda, gamma) round engine with per-node, per-round
//! budget enforcement and global bit accounting.

mod config;
mod engine;
mod stats;

use thiserror::Error;

use crate::graphcore::NodeId;

pub use config::{HybridConfig, LocalBandwidth, STANDARD_GAMMA_FACTOR};
pub use engine::{
    node_rng, run, Envelope, Inbox, Message, NodeContext, NodeProgram, Outgoing, Simulator,
};
pub use stats::{cut_tracking, CutSides, GlobalRecord, NodeBits, RoundStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("node {node} used {bits} global bits in round {round}, over budget")]
    BudgetViolation { node: NodeId, round: u64, bits: u64 },
    #[error("local message {from} -> {to} of {bits} bits in round {round} exceeds lambda")]
    LocalSizeViolation {
        from: NodeId,
        to: NodeId,
        round: u64,
        bits: u64,
    },
    #[error("no termination within {max_rounds} rounds")]
    NonTermination { max_rounds: u64 },
    #[error("local send {from} -> {to} but they are not adjacent")]
    NotAdjacent { from: NodeId, to: NodeId },
    #[error("node {0} out of range")]
    InvalidNode(NodeId),
    #[error("expected {expected} node programs, got {got}")]
    ProgramCount { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
