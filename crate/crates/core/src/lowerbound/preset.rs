use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::LowerBoundError;
use crate::surd::{Surd, Q};

/// Which lower bound a weight preset serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Oracle,
    Stateless,
    Stateful,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightPreset {
    pub problem: Problem,
    pub ell: usize,
    pub epsilon: f64,
    pub t: u64,
    pub w0: u64,
    pub w1: u64,
    pub w2: u64,
    /// Stretch the inequalities are checked against.
    pub alpha: Surd,
    /// Closed-form stretch before integer rounding (`alpha` for all but the
    /// stateless preset, whose `alpha` is `w0/t - epsilon`).
    pub alpha_nominal: Surd,
}

impl WeightPreset {
    pub fn weights(&self) -> (u64, u64, u64) {
        (self.w0, self.w1, self.w2)
    }

    /// `w1 < w0 < (ell - 1) * w1`.
    pub fn precondition(&self) -> bool {
        self.w1 < self.w0 && self.w0 < (self.ell as u64 - 1) * self.w1
    }
}

fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

fn surd(a: Q, b: Q, m: i128) -> Surd {
    Surd::new(a, b, m)
}

/// Largest stretch the problem allows for `ell`, and the coefficients of
/// `(w0, w1, w2)` in units of `t`. `None` for the weight fixed at 1.
type Coefs = (Surd, Surd, Option<Surd>);

fn table(problem: Problem, ell: usize) -> Result<(Surd, Coefs), LowerBoundError> {
    let l = ell as i128;
    let one = Surd::int(1);
    Ok(match problem {
        Problem::Oracle => {
            // w0 depends on epsilon; filled in by the caller.
            (Surd::int(l - 1), (Surd::int(0), one, None))
        }
        Problem::Stateless => {
            let c = if ell <= 6 {
                surd(Q::zero(), Q::one(), l - 1)
            } else {
                surd(Q::one(), Q::one(), 2)
            };
            (c, (c, one, None))
        }
        Problem::Stateful => match ell {
            4 => (
                surd(Q::zero(), Q::one(), 2),
                (surd(q(-1, 1), q(2, 1), 2), one, Some(one)),
            ),
            6 => (
                Surd::rational(q(5, 3)),
                (Surd::rational(q(5, 2)), one, Some(Surd::rational(q(5, 4)))),
            ),
            8 => (
                Surd::rational(q(7, 4)),
                (
                    Surd::rational(q(35, 11)),
                    one,
                    Some(Surd::rational(q(21, 11))),
                ),
            ),
            10 => (
                surd(q(3, 4), q(1, 4), 17),
                (
                    surd(q(3, 2), q(1, 2), 17),
                    one,
                    Some(surd(q(5, 4), q(1, 4), 17)),
                ),
            ),
            _ => return Err(LowerBoundError::UnsupportedEll(ell)),
        },
    })
}

/// Largest stretch the weighted construction supports for `ell`, before
/// subtracting epsilon.
pub fn max_stretch(problem: Problem, ell: usize) -> Result<Surd, LowerBoundError> {
    if ell < 4 || ell % 2 == 1 {
        return Err(LowerBoundError::UnsupportedEll(ell));
    }
    Ok(table(problem, ell)?.0)
}

const MAX_DOUBLINGS: u32 = 40;

/// Integer weights and stretch for one lower bound.
///
/// Irrational coefficients are floored; `t` starts at the closed-form lower
/// bound and doubles until every strict inequality holds exactly.
pub fn make_preset(
    problem: Problem,
    ell: usize,
    epsilon: f64,
    h: usize,
) -> Result<WeightPreset, LowerBoundError> {
    if ell < 4 || ell % 2 == 1 {
        return Err(LowerBoundError::UnsupportedEll(ell));
    }
    if h < 2 {
        return Err(LowerBoundError::InvalidParams("presets need h >= 2".into()));
    }
    let infeasible = LowerBoundError::InfeasibleEpsilon { epsilon, ell };
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(infeasible);
    }
    let eps = Surd::from_f64(epsilon).ok_or(infeasible.clone())?.a;
    let (alpha_max, coefs) = table(problem, ell)?;
    let alpha_nominal = alpha_max.add_rational(-eps);
    if alpha_nominal.cmp_scaled(1, 0) != std::cmp::Ordering::Greater {
        return Err(infeasible);
    }
    let hq = Q::from_integer(h as i128);
    let l = ell as i128;

    let (mut t, step): (i128, i128) = match problem {
        Problem::Oracle => {
            let bound = Q::from_integer(2) * (Q::from_integer(l - 2) - eps) * hq / eps;
            (bound.floor().to_integer() + 1, 1)
        }
        Problem::Stateless => ((hq / eps).floor().to_integer() + 1, 1),
        Problem::Stateful => {
            let f = surd(q(-1, 4), q(1, 4), 17);
            let scale = Q::from_integer(h as i128 - 1) / eps;
            let bound = Surd {
                a: f.a * scale,
                b: f.b * scale,
                m: f.m,
            };
            let step = match ell {
                6 => 4,
                8 => 11,
                _ => 1,
            };
            (bound.floor_times(1) + 1, step)
        }
    };
    t = t.max(1);
    t = (t + step - 1) / step * step;

    for _ in 0..MAX_DOUBLINGS {
        let (w0, w1, w2, alpha) = match problem {
            Problem::Oracle => {
                let c0 = Q::from_integer(l - 1) - eps / Q::from_integer(2);
                let w0 = (c0 * t).ceil().to_integer();
                (w0, t, 1, alpha_nominal)
            }
            Problem::Stateless => {
                let w0 = coefs.0.floor_times(t);
                let a = Surd::rational(Q::new(w0, t) - eps);
                (w0, t, 1, a)
            }
            Problem::Stateful => {
                let w2 = coefs.2.expect("stateful sets w2").floor_times(t);
                (coefs.0.floor_times(t), t, w2, alpha_nominal)
            }
        };
        if w2 >= 1 {
            let p = WeightPreset {
                problem,
                ell,
                epsilon,
                t: t as u64,
                w0: w0 as u64,
                w1: w1 as u64,
                w2: w2 as u64,
                alpha,
                alpha_nominal,
            };
            if check_inequalities(&p, h).pass {
                return Ok(p);
            }
        }
        t *= 2;
    }
    Err(infeasible)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inequality {
    pub name: String,
    /// `d` in `alpha * d < rhs`.
    pub d: u64,
    pub rhs: u64,
    /// `rhs - alpha * d`, approximate; the sign of `holds` is exact.
    pub slack: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub d0: u64,
    pub d1: u64,
    pub precondition: bool,
    pub inequalities: Vec<Inequality>,
    pub pass: bool,
}

/// Evaluates the problem's strict inequality system for `preset.alpha`.
///
/// The oracle bound needs only `alpha * d1 < d0`; stateless routing adds the
/// two detour conditions; stateful routing all five.
pub fn check_inequalities(preset: &WeightPreset, h: usize) -> InequalityReport {
    let (w0, w1, w2) = preset.weights();
    let base = (h as u64).saturating_sub(1);
    let l = preset.ell as u64;
    let d0 = w0 + w2 + base;
    let d1 = w1 + w2 + base;
    let mut rows: Vec<(&str, u64, u64)> = vec![("(1)", d1, w0 + w2 + base)];
    if matches!(preset.problem, Problem::Stateless | Problem::Stateful) {
        rows.push(("(2)", d0, (l - 1) * w1 + w2 + base));
        rows.push(("(3)", d0, 2 * w0 + w1 + w2 + base));
    }
    if preset.problem == Problem::Stateful {
        rows.push(("(4)", d0, w0 + 3 * w2 + base));
        rows.push(("(5)", d1, w1 + 3 * w2 + base));
    }
    let alpha = preset.alpha;
    let inequalities: Vec<Inequality> = rows
        .into_iter()
        .map(|(name, d, rhs)| Inequality {
            name: name.to_string(),
            d,
            rhs,
            slack: rhs as f64 - alpha.to_f64() * d as f64,
            holds: alpha.lt_scaled(d as i128, rhs as i128),
        })
        .collect();
    let precondition = preset.precondition();
    let pass = precondition && inequalities.iter().all(|i| i.holds);
    InequalityReport {
        d0,
        d1,
        precondition,
        inequalities,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_example() {
        let p = make_preset(Problem::Oracle, 4, 0.5, 10).unwrap();
        assert_eq!((p.t, p.w1, p.w0, p.w2), (61, 61, 168, 1));
        assert!((p.alpha.to_f64() - 2.5).abs() < 1e-12);
    }

    #[test]
    fn stateful_six_is_exact_multiple() {
        let p = make_preset(Problem::Stateful, 6, 0.1, 5).unwrap();
        assert_eq!(p.t % 4, 0);
        assert_eq!(2 * p.w0, 5 * p.t);
        assert_eq!(4 * p.w2, 5 * p.t);
        assert!(check_inequalities(&p, 5).pass);
    }

    #[test]
    fn stateless_nominal_alpha() {
        let p = make_preset(Problem::Stateless, 4, 0.2, 3).unwrap();
        let want = 3f64.sqrt() - 0.2;
        assert!((p.alpha_nominal.to_f64() - want).abs() < 1e-12);
        assert!(p.alpha.to_f64() <= want);
        assert!(want - p.alpha.to_f64() < 1.0 / p.t as f64);
    }

    #[test]
    fn alpha_without_epsilon_fails() {
        let mut p = make_preset(Problem::Oracle, 6, 0.1, 4).unwrap();
        p.alpha = Surd::int(5);
        assert!(!check_inequalities(&p, 4).pass);
    }

    #[test]
    fn infeasible_epsilon() {
        assert!(matches!(
            make_preset(Problem::Stateful, 4, 1.5, 3),
            Err(LowerBoundError::InfeasibleEpsilon { .. })
        ));
        assert!(make_preset(Problem::Oracle, 4, 0.0, 3).is_err());
        assert_eq!(
            make_preset(Problem::Stateful, 12, 0.1, 3),
            Err(LowerBoundError::UnsupportedEll(12))
        );
    }
}
