use serde::{Deserialize, Serialize};

use super::SimError;
use crate::bits::ceil_log2;

/// Per-edge, per-round size limit of the local network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalBandwidth {
    Unlimited,
    Bits(u64),
}

impl LocalBandwidth {
    pub fn allows(self, bits: u64) -> bool {
        match self {
            LocalBandwidth::Unlimited => true,
            LocalBandwidth::Bits(b) => bits <= b,
        }
    }
}

/// Default `c` in the standard preset `gamma = ceil(c * log^2 n)`.
pub const STANDARD_GAMMA_FACTOR: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HybridConfig {
    pub lambda: LocalBandwidth,
    /// Global bits a node may send plus receive in one round.
    pub gamma: u64,
    /// Charge `2 * ceil(log n)` header bits (sender and receiver id) per
    /// global message against both endpoint budgets.
    pub charge_headers: bool,
}

impl HybridConfig {
    pub fn new(lambda: LocalBandwidth, gamma: u64) -> Result<Self, SimError> {
        if gamma == 0 {
            return Err(SimError::InvalidConfig("gamma must be >= 1".into()));
        }
        if lambda == LocalBandwidth::Bits(0) {
            return Err(SimError::InvalidConfig("lambda must be >= 1".into()));
        }
        Ok(HybridConfig {
            lambda,
            gamma,
            charge_headers: true,
        })
    }

    /// Unlimited local bandwidth and `gamma = ceil(c * ceil(log n)^2)`.
    pub fn standard(n: usize, c: f64) -> Self {
        let l = ceil_log2(n as u64) as f64;
        HybridConfig {
            lambda: LocalBandwidth::Unlimited,
            gamma: ((c * l * l).ceil() as u64).max(1),
            charge_headers: true,
        }
    }

    pub fn header_bits(&self, n: usize) -> u64 {
        if self.charge_headers {
            2 * ceil_log2(n as u64)
        } else {
            0
        }
    }
}

impl Default for HybridConfig {
    fn default() -> Self {
        HybridConfig {
            lambda: LocalBandwidth::Unlimited,
            gamma: 64,
            charge_headers: true,
        }
    }
}
