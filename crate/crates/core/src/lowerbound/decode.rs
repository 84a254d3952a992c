use rand::Rng;

use super::{GammaInstance, LowerBoundError};
use crate::graphcore::{Distance, NodeId};
use crate::schemes::{Scheme, SchemeError};

fn check_len(inst: &GammaInstance, got: usize) -> Result<(), LowerBoundError> {
    if got == inst.m() {
        Ok(())
    } else {
        Err(LowerBoundError::BadXLength {
            expected: inst.m(),
            got,
        })
    }
}

/// Reads bit `b` from the source's estimate of its target: anything below
/// `d0` can only come from a present edge.
///
/// `estimates[b]` belongs to the pair of bit `b`.
pub fn decode_from_oracle(
    inst: &GammaInstance,
    estimates: &[Distance],
) -> Result<Vec<bool>, LowerBoundError> {
    check_len(inst, estimates.len())?;
    let d0 = Distance::Finite(inst.d0());
    Ok(estimates.iter().map(|&e| e < d0).collect())
}

/// Reads bit `b` from the first hop the source takes towards its target:
/// stepping onto `v` means the edge is absent.
pub fn decode_from_routing(
    inst: &GammaInstance,
    first_hops: &[NodeId],
) -> Result<Vec<bool>, LowerBoundError> {
    check_len(inst, first_hops.len())?;
    Ok(first_hops.iter().map(|&z| z != inst.roles.v).collect())
}

/// `o_s(lambda(t))` for every indexed pair.
pub fn estimates_from_scheme(inst: &GammaInstance, scheme: &Scheme) -> Vec<Distance> {
    (0..inst.m())
        .map(|b| {
            let (s, t) = inst.pair(b);
            scheme.estimate(s, t)
        })
        .collect()
}

/// First routing decision at the source for every indexed pair.
pub fn first_hops_from_scheme(
    inst: &GammaInstance,
    scheme: &Scheme,
) -> Result<Vec<NodeId>, SchemeError> {
    (0..inst.m())
        .map(|b| {
            let (s, t) = inst.pair(b);
            scheme.next_hop(s, t)
        })
        .collect()
}

/// Multiplies each distance by an independent factor from `[1, alpha]` and
/// rounds down, so results stay one-sided and within stretch `alpha`.
pub fn inflate_estimates(exact: &[Distance], alpha: f64, rng: &mut impl Rng) -> Vec<Distance> {
    exact
        .iter()
        .map(|d| match d.finite() {
            Some(x) => {
                let f = if alpha > 1.0 {
                    rng.gen_range(1.0..=alpha)
                } else {
                    1.0
                };
                Distance::Finite(((x as f64 * f).floor() as u64).max(x))
            }
            None => Distance::Infinite,
        })
        .collect()
}
