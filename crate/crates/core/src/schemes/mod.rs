//! Landmark-based distance oracles and routing schemes built inside the
//! HYBRID simulator: node sampling, random-sources shortest paths, exact and
//! nearest-landmark labels, and packet forwarding.

mod build;
mod oracle;
mod routing;
mod rssp;
mod sampling;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphcore::{GraphError, NodeId};
use crate::hybridsim::SimError;

pub use build::{
    build_scheme, build_scheme_approx, build_scheme_exact, CutSpec, Labels, Scheme, SchemeDump,
    SchemeKind,
};
pub use oracle::{
    eval_oracle_approx, eval_oracle_exact, measure_label_bits, routing_next_approx,
    routing_next_exact, ApproxLabel, ExactLabel, Label, NodeSchemeState, OracleCore,
};
pub use routing::{forward, ForwardMode, Route};
pub use rssp::{solve_rssp, RsspOutput};
pub use sampling::{check_cover, h_of_x, sample, SampleSet, SamplingConfig, DEFAULT_KSI};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("sampled set is empty")]
    EmptySample,
    #[error("sampling cover property fails for pair ({v}, {u}); re-seed")]
    SamplingFailure { v: NodeId, u: NodeId },
    #[error("no neighbor of {at} makes progress towards {target}")]
    NoProgress { at: NodeId, target: NodeId },
    #[error("stateless route revisits node {at}")]
    LoopDetected { at: NodeId },
    #[error("route exceeded {max_hops} hops")]
    HopBudgetExceeded { max_hops: usize },
    #[error("message capacity is zero: gamma {gamma} too small for one item")]
    GammaTooSmall { gamma: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// How random-sources shortest paths are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RsspMode {
    /// Run a budget-compliant broadcast protocol in the simulator.
    Simulated,
    /// Compute centrally and charge `ceil(c * (n^(1/3) + n/x^2) * log2(n)^a)` rounds.
    CostModel { c: f64, a: f64 },
}

impl RsspMode {
    pub fn cost_model() -> Self {
        RsspMode::CostModel { c: 1.0, a: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    /// Sampling denominator; each node joins S with probability `1/x`.
    pub x: f64,
    /// Hop radius of the sampling guarantee.
    pub h: usize,
    /// Factor on the exploration radius (approximate scheme only).
    pub widen: f64,
    pub seed: u64,
    pub rssp: RsspMode,
}

impl SchemeParams {
    pub fn new(x: f64, h: usize, seed: u64) -> Self {
        SchemeParams {
            x,
            h,
            widen: 1.0,
            seed,
            rssp: RsspMode::Simulated,
        }
    }

    /// `x = n^(1/3 + zeta)` and `h = ceil(ksi * x * ln n)`.
    pub fn from_zeta(n: usize, zeta: f64, ksi: f64, seed: u64) -> Self {
        let x = (n as f64).powf(1.0 / 3.0 + zeta).max(1.0);
        SchemeParams::new(x, h_of_x(n, x, ksi), seed)
    }

    pub fn with_widen(mut self, widen: f64) -> Self {
        self.widen = widen;
        self
    }

    pub fn with_rssp(mut self, mode: RsspMode) -> Self {
        self.rssp = mode;
        self
    }

    /// Exploration radius `ceil(widen * h)`.
    pub fn explore_radius(&self) -> usize {
        (self.widen * self.h as f64 - 1e-9).ceil().max(0.0) as usize
    }

    // negated comparisons also reject NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub(crate) fn validate(&self, n: usize) -> Result<(), SchemeError> {
        if !(self.x >= 1.0) {
            return Err(SchemeError::InvalidParams(format!("x = {} < 1", self.x)));
        }
        if self.x > n.max(1) as f64 {
            return Err(SchemeError::InvalidParams(format!(
                "x = {} > n = {n}",
                self.x
            )));
        }
        if self.h < 1 {
            return Err(SchemeError::InvalidParams("h must be >= 1".into()));
        }
        if !(self.widen >= 1.0) {
            return Err(SchemeError::InvalidParams(format!(
                "widen = {} < 1",
                self.widen
            )));
        }
        Ok(())
    }
}
