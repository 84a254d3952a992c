//! Hard instances for the lower bounds: generators and verifiers for the
//! planted-bit graphs, weight presets with their inequality systems, and
//! decoders that read the planted bits back out of oracle or routing answers.

mod decode;
mod greedy;
mod instance;
mod preset;

use thiserror::Error;

use crate::graphcore::GraphError;

pub use decode::{
    decode_from_oracle, decode_from_routing, estimates_from_scheme, first_hops_from_scheme,
    inflate_estimates,
};
pub use greedy::{high_girth_greedy, GreedyGraph};
pub use instance::{
    gen_unweighted, gen_weighted, verify, verify_unweighted, verify_weighted, GammaInstance,
    GammaJson, InstanceKind, PairRecord, Planted, Roles, VerificationReport,
};
pub use preset::{
    check_inequalities, make_preset, max_stretch, Inequality, InequalityReport, Problem,
    WeightPreset,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LowerBoundError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected {expected} planted bits, got {got}")]
    BadXLength { expected: usize, got: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("base graph has girth {girth:?}, need at least {ell}")]
    GirthTooSmall { girth: Option<usize>, ell: usize },
    #[error("base graph is not a balanced bipartite graph on its declared sides")]
    NotBalancedBipartite,
    #[error("preset violates w1 < w0 < (ell-1)*w1: w0={w0}, w1={w1}, ell={ell}")]
    PresetInvalid { w0: u64, w1: u64, ell: usize },
    #[error("epsilon {epsilon} leaves no stretch headroom for ell={ell}")]
    InfeasibleEpsilon { epsilon: f64, ell: usize },
    #[error("no preset for ell={0}")]
    UnsupportedEll(usize),
    #[error("instance is {0:?}, operation needs the other kind")]
    WrongKind(InstanceKind),
}
