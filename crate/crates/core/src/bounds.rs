//! Closed forms behind the lower bounds: the node communication bound, the
//! k/h trade-off, girth-density exponents and the resulting stretch table.
//!
//! Exponents are exact rationals; magnitudes are `f64`. Hidden constants are
//! fixed at 1 unless a parameter says otherwise.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lowerbound::{max_stretch, GammaInstance, Problem};
use crate::surd::{Surd, Q};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("no density exponent for girth {0}; use the girth-12 value, whose graphs also have girth >= 10")]
    UnsupportedGirth(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyConvention {
    /// One bit per fair coin.
    #[default]
    Standard,
    /// Half a bit per fair coin.
    PaperHalf,
}

/// Inputs of the node communication bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub n: f64,
    pub gamma: f64,
    /// Success probability in (0, 1].
    pub p: f64,
    /// Entropy of the variable to transfer, in bits.
    pub entropy: f64,
    /// Bits the receiving side gets for free.
    pub y: f64,
    /// Hop distance between the two sides.
    pub h: f64,
}

/// `max(0, min((p*H - 1 - y) / (n * gamma), h))`.
pub fn node_comm_bound(q: &BoundQuery) -> f64 {
    let flow = (q.p * q.entropy - 1.0 - q.y) / (q.n * q.gamma);
    flow.min(q.h).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tradeoff {
    pub k_opt: f64,
    pub h_opt: f64,
    pub rounds_lb: f64,
}

/// Balances `h = n / k` against `k^(1+delta) / (n * gamma)`:
/// `k = (n^2 * gamma)^(1/(2+delta))`.
pub fn optimize_tradeoff(n: f64, gamma: f64, delta: f64) -> Result<Tradeoff, BoundsError> {
    if !(delta > 0.0 && n >= 2.0 && gamma >= 1.0) {
        return Err(BoundsError::InvalidParams(format!(
            "need delta > 0, n >= 2, gamma >= 1 (got {delta}, {n}, {gamma})"
        )));
    }
    let k = (n * n * gamma).powf(1.0 / (2.0 + delta));
    let h = n / k;
    Ok(Tradeoff {
        k_opt: k,
        h_opt: h,
        rounds_lb: h,
    })
}

/// Exponent of `n` in the optimized round bound: `delta / (2 + delta)`.
pub fn rounds_exponent(delta: Q) -> Q {
    delta / (Q::from_integer(2) + delta)
}

/// Exponent of `n` in the label cap: `2 delta / (2 + delta)`.
pub fn label_exponent(delta: Q) -> Q {
    Q::from_integer(2) * rounds_exponent(delta)
}

/// Density exponent of the best known balanced bipartite graphs of girth
/// `ell` (`Theta(k^(1+delta))` edges on `2k` nodes).
pub fn girth_density(ell: usize) -> Result<Q, BoundsError> {
    let q = |n: i128, d: i128| Q::new(n, d);
    match ell {
        4 => Ok(q(1, 1)),
        6 => Ok(q(1, 2)),
        8 => Ok(q(1, 3)),
        10 => Err(BoundsError::UnsupportedGirth(10)),
        12 => Ok(q(1, 5)),
        l if l >= 14 && l % 2 == 0 => {
            let l = l as i128;
            if l % 4 == 2 {
                Ok(q(4, 3 * l - 10))
            } else {
                Ok(q(4, 3 * l - 12))
            }
        }
        other => Err(BoundsError::InvalidParams(format!(
            "girth must be even and >= 4, got {other}"
        ))),
    }
}

/// `c * n^(2 delta/(2+delta)) * gamma^(delta/(2+delta))`.
pub fn label_cap(n: f64, gamma: f64, delta: f64, c: f64) -> f64 {
    let e = delta / (2.0 + delta);
    c * n.powf(2.0 * e) * gamma.powf(e)
}

pub fn entropy_of_planted(inst: &GammaInstance, conv: EntropyConvention) -> f64 {
    let m = inst.m() as f64;
    match conv {
        EntropyConvention::Standard => m,
        EntropyConvention::PaperHalf => m / 2.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableProblem {
    Oracle,
    Stateless,
    Stateful,
    Unweighted,
}

impl fmt::Display for TableProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TableProblem::Oracle => "oracle",
            TableProblem::Stateless => "stateless",
            TableProblem::Stateful => "stateful",
            TableProblem::Unweighted => "unweighted",
        };
        f.write_str(s)
    }
}

/// One row: stretch `stretch - eps` is impossible in fewer than
/// `~n^rounds_exponent` rounds with labels below `~n^label_exponent` bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub problem: TableProblem,
    /// Girth whose weights give the stretch.
    pub stretch_ell: Option<usize>,
    /// Girth whose density gives the exponents.
    pub density_ell: usize,
    /// Stretch before subtracting epsilon; `None` for the exact-only row.
    pub stretch: Option<Surd>,
    #[serde(serialize_with = "crate::surd::ser_q")]
    pub delta: Q,
    #[serde(serialize_with = "crate::surd::ser_q")]
    pub rounds_exponent: Q,
    #[serde(serialize_with = "crate::surd::ser_q")]
    pub label_exponent: Q,
}

impl TableRow {
    pub fn stretch_text(&self) -> String {
        match &self.stretch {
            None => "exact".to_string(),
            Some(s) => format!("{:.4}-eps", s.to_f64()),
        }
    }
}

fn row(problem: TableProblem, stretch_ell: Option<usize>, density_ell: usize) -> TableRow {
    let delta = girth_density(density_ell).expect("table girths have densities");
    let stretch = stretch_ell.map(|l| {
        let p = match problem {
            TableProblem::Oracle => Problem::Oracle,
            TableProblem::Stateless => Problem::Stateless,
            TableProblem::Stateful => Problem::Stateful,
            TableProblem::Unweighted => unreachable!("unweighted row has no stretch"),
        };
        max_stretch(p, l).expect("table girths have stretches")
    });
    TableRow {
        problem,
        stretch_ell,
        density_ell,
        stretch,
        delta,
        rounds_exponent: rounds_exponent(delta),
        label_exponent: label_exponent(delta),
    }
}

/// The lower-bound rows for one problem.
///
/// Stateless routing gains nothing beyond girth 8. For girth 10 no dense
/// family is known, so the stateful girth-10 stretch uses girth-12 density.
pub fn stretch_table(problem: TableProblem) -> Vec<TableRow> {
    match problem {
        TableProblem::Oracle => [4, 6, 8, 12]
            .into_iter()
            .map(|l| row(problem, Some(l), l))
            .collect(),
        TableProblem::Stateless => [4, 6, 8]
            .into_iter()
            .map(|l| row(problem, Some(l), l))
            .collect(),
        TableProblem::Stateful => [(4, 4), (6, 6), (8, 8), (10, 12)]
            .into_iter()
            .map(|(s, d)| row(problem, Some(s), d))
            .collect(),
        TableProblem::Unweighted => vec![row(problem, None, 4)],
    }
}

pub fn full_table() -> Vec<TableRow> {
    [
        TableProblem::Unweighted,
        TableProblem::Oracle,
        TableProblem::Stateless,
        TableProblem::Stateful,
    ]
    .into_iter()
    .flat_map(stretch_table)
    .collect()
}

/// Concrete numbers for one row at given `n`, `gamma`, `epsilon`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub rounds_lb: f64,
    pub k_opt: f64,
    pub h_opt: f64,
    pub stretch: f64,
    pub label_cap_bits: f64,
    pub notes: Vec<String>,
}

pub fn evaluate_row(
    row: &TableRow,
    n: f64,
    gamma: f64,
    epsilon: f64,
    c: f64,
) -> Result<BoundReport, BoundsError> {
    let delta = row.delta.to_f64().expect("small rational");
    let t = optimize_tradeoff(n, gamma, delta)?;
    let stretch = row.stretch.map_or(1.0, |s| s.to_f64() - epsilon);
    Ok(BoundReport {
        rounds_lb: t.rounds_lb,
        k_opt: t.k_opt,
        h_opt: t.h_opt,
        stretch,
        label_cap_bits: label_cap(n, gamma, delta, c),
        notes: vec![
            format!("delta = {} from girth {}", row.delta, row.density_ell),
            "k solves k^(2+delta) = n^2 gamma; h = n/k; constants set to 1".to_string(),
        ],
    })
}
