//! Trace-distance ball constructions over spectra and the smooth entropies
//! derived from them.
//!
//! `steepest` returns the majorization-maximal member of the closed ball
//! around a spectrum (all budget onto the top eigenvalue, paid for at the
//! tail); `flattest` the minimal member (top capped, bottom floored,
//! spreading into spare ambient dimensions). Both are gated against an
//! exhaustive grid oracle in the `oracle` module.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectrum::{NormCheck, Run, Spectrum};

/// An error budget, optionally pre-split between input and output smoothing.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingBudget<T> {
    pub epsilon: T,
    pub split: Option<(T, T)>,
}

impl<T: Scalar> SmoothingBudget<T> {
    pub fn total(epsilon: T) -> Result<Self> {
        check_eps_closed(&epsilon)?;
        Ok(SmoothingBudget { epsilon, split: None })
    }

    pub fn split(eps_in: T, eps_out: T) -> Result<Self> {
        check_eps_closed(&eps_in)?;
        check_eps_closed(&eps_out)?;
        let epsilon = saturating_eps_add(&eps_in, &eps_out);
        Ok(SmoothingBudget { epsilon, split: Some((eps_in, eps_out)) })
    }
}

/// Error probabilities add saturating at one.
pub fn saturating_eps_add<T: Scalar>(a: &T, b: &T) -> T {
    T::min_of(a.add(b), T::one())
}

pub(crate) fn check_eps_closed<T: Scalar>(eps: &T) -> Result<()> {
    if eps.approx_cmp(&T::zero()) == Ordering::Less
        || eps.approx_cmp(&T::one()) == Ordering::Greater
    {
        return Err(Error::EpsilonOutOfRange { value: eps.to_string(), range: "[0, 1]" });
    }
    Ok(())
}

pub(crate) fn check_eps_half_open<T: Scalar>(eps: &T) -> Result<()> {
    if eps.approx_cmp(&T::zero()) == Ordering::Less
        || eps.approx_cmp(&T::one()) != Ordering::Less
    {
        return Err(Error::EpsilonOutOfRange { value: eps.to_string(), range: "[0, 1)" });
    }
    Ok(())
}

/// Optimal hypothesis test against a spectrum: minimal `tr Q` subject to
/// `tr(Q rho) = 1 - eps` with `0 <= Q <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisTestCertificate<T> {
    /// Minimal total test weight `tr Q`.
    pub test_weight: T,
    /// Number of eigenvalues carrying full weight.
    pub threshold_index: BigUint,
    /// Weight on the boundary eigenvalue, in `[0, 1)`.
    pub fractional_weight: T,
}

/// The majorization-greatest spectrum within trace distance `eps` of `p`.
///
/// Adds `delta = min(eps, 1 - top)` to the single largest eigenvalue and
/// removes the same mass from the smallest ones, zeroing the tail upward.
pub fn steepest<T: Scalar>(p: &Spectrum<T>, eps: &T) -> Result<Spectrum<T>> {
    check_eps_closed(eps)?;
    let top = p.top_value();
    let headroom = T::one().sub(&top);
    let delta = T::min_of(eps.clone(), headroom);
    if delta.approx_cmp(&T::zero()) != Ordering::Greater {
        return Ok(p.clone());
    }

    let mut entries: Vec<(T, BigUint)> = Vec::with_capacity(p.runs().len() + 2);
    entries.push((top.add(&delta), BigUint::one()));
    // Everything except one copy of the top eigenvalue is up for removal.
    let mut pool: Vec<(T, BigUint)> = Vec::with_capacity(p.runs().len());
    for (i, run) in p.runs().iter().enumerate() {
        let mult = if i == 0 { &run.multiplicity - 1u32 } else { run.multiplicity.clone() };
        if !mult.is_zero() {
            pool.push((run.value.clone(), mult));
        }
    }

    let mut remaining = delta;
    while let Some((value, mult)) = pool.pop() {
        if remaining.approx_cmp(&T::zero()) != Ordering::Greater {
            entries.push((value, mult));
            continue;
        }
        let run_mass = value.mul_nat(&mult);
        match remaining.approx_cmp(&run_mass) {
            Ordering::Greater | Ordering::Equal => {
                remaining = remaining.sub(&run_mass);
            }
            Ordering::Less => {
                let zeroed = remaining.div_floor_nat(&value);
                let leftover = remaining.sub(&value.mul_nat(&zeroed));
                let mut kept = &mult - &zeroed;
                if leftover.approx_cmp(&T::zero()) == Ordering::Greater {
                    kept -= 1u32;
                    entries.push((value.sub(&leftover), BigUint::one()));
                }
                if !kept.is_zero() {
                    entries.push((value.clone(), kept));
                }
                remaining = T::zero();
            }
        }
    }
    Spectrum::canonical(entries, p.ambient_dim().clone(), NormCheck::Skip)
}

/// The majorization-least spectrum within trace distance `eps` of `q`.
///
/// Caps the largest eigenvalues at a common level and floors the smallest
/// (implicit zeros included) at another, each side redistributing mass
/// `eps`; collapses to the uniform state on the full ambient space once the
/// ball contains it.
pub fn flattest<T: Scalar>(q: &Spectrum<T>, eps: &T) -> Result<Spectrum<T>> {
    check_eps_closed(eps)?;
    if eps.approx_cmp(&T::zero()) != Ordering::Greater {
        return Ok(q.clone());
    }
    let ambient = q.ambient_dim().clone();
    if uniform_within_ball(q, eps) {
        return Spectrum::flat(&ambient.clone(), ambient);
    }

    // Cap level: walk down from the top until eps mass sits above the level.
    let mut cap_level = T::zero();
    let mut capped_count = BigUint::zero();
    {
        let mut cum_mass = T::zero();
        let mut cum_count = BigUint::zero();
        for (i, run) in q.runs().iter().enumerate() {
            cum_mass = cum_mass.add(&run.value.mul_nat(&run.multiplicity));
            cum_count += &run.multiplicity;
            let next_value =
                q.runs().get(i + 1).map(|r| r.value.clone()).unwrap_or_else(T::zero);
            // Mass removable by capping the first cum_count entries at next_value.
            let removable = cum_mass.sub(&next_value.mul_nat(&cum_count));
            if removable.approx_cmp(eps) != Ordering::Less {
                cap_level = cum_mass.sub(eps).div_nat(&cum_count);
                capped_count = cum_count;
                break;
            }
        }
        debug_assert!(!capped_count.is_zero(), "cap must resolve before the uniform state");
    }

    // Floor level: walk up from the implicit zeros until eps mass fits below.
    let zero_count = &ambient - q.support_size();
    let mut floor_level = T::zero();
    let mut floored_count = BigUint::zero();
    {
        let mut cum_mass = T::zero();
        let mut cum_count = zero_count.clone();
        let mut resolved = false;
        for run in q.runs().iter().rev() {
            let level = run.value.clone();
            if !cum_count.is_zero() {
                let fillable = level.mul_nat(&cum_count).sub(&cum_mass);
                if fillable.approx_cmp(eps) != Ordering::Less {
                    floor_level = cum_mass.add(eps).div_nat(&cum_count);
                    floored_count = cum_count.clone();
                    resolved = true;
                    break;
                }
            }
            cum_mass = cum_mass.add(&run.value.mul_nat(&run.multiplicity));
            cum_count += &run.multiplicity;
        }
        debug_assert!(resolved, "floor must resolve before engulfing the top run");
    }
    debug_assert!(
        cap_level.approx_cmp(&floor_level) != Ordering::Less,
        "cap and floor crossed despite the uniform-state check"
    );

    let mut entries: Vec<(T, BigUint)> = Vec::with_capacity(q.runs().len() + 2);
    entries.push((cap_level, capped_count.clone()));
    let mut seen = BigUint::zero();
    let support = q.support_size();
    let floor_start = &support + &zero_count - &floored_count; // positions >= this are floored
    for run in q.runs() {
        let run_start = seen.clone();
        let run_end = &run_start + &run.multiplicity;
        seen = run_end.clone();
        // Portion of this run strictly between the capped head and floored tail.
        let lo = run_start.max(capped_count.clone());
        let hi = run_end.min(floor_start.clone());
        if lo < hi {
            entries.push((run.value.clone(), &hi - &lo));
        }
    }
    entries.push((floor_level, floored_count));
    Spectrum::canonical(entries, ambient, NormCheck::Skip)
}

/// Largest min-entropy within the `eps`-ball: `-log2` of the flattest
/// member's top eigenvalue.
pub fn smooth_min_entropy<T: Scalar>(p: &Spectrum<T>, eps: &T) -> Result<f64> {
    check_eps_half_open(eps)?;
    Ok(-flattest(p, eps)?.top_value().log2())
}

/// Greedy optimal hypothesis test: full weight on the largest eigenvalues,
/// an exact closed-form fraction on the boundary one.
pub fn min_test_weight<T: Scalar>(p: &Spectrum<T>, eps: &T) -> Result<HypothesisTestCertificate<T>> {
    check_eps_half_open(eps)?;
    let target = T::one().sub(eps);
    let mut cum = T::zero();
    let mut count = BigUint::zero();
    for run in p.runs() {
        let run_mass = run.value.mul_nat(&run.multiplicity);
        let after = cum.add(&run_mass);
        if after.approx_cmp(&target) == Ordering::Less {
            cum = after;
            count += &run.multiplicity;
            continue;
        }
        let need = target.sub(&cum);
        let full = need.div_floor_nat(&run.value);
        let leftover = need.sub(&run.value.mul_nat(&full));
        let fraction = if leftover.approx_cmp(&T::zero()) == Ordering::Greater {
            leftover.div(&run.value)
        } else {
            T::zero()
        };
        let threshold = &count + &full;
        let weight = T::from_nat(&threshold).add(&fraction);
        return Ok(HypothesisTestCertificate {
            test_weight: weight,
            threshold_index: threshold,
            fractional_weight: fraction,
        });
    }
    // Only reachable through float rounding on the final run boundary.
    let support = p.support_size();
    Ok(HypothesisTestCertificate {
        test_weight: T::from_nat(&support),
        threshold_index: support,
        fractional_weight: T::zero(),
    })
}

/// `log2` of the minimal test weight; the error-tolerant counterpart of
/// H_0, which it equals at `eps = 0`.
pub fn smooth_max_entropy<T: Scalar>(p: &Spectrum<T>, eps: &T) -> Result<f64> {
    Ok(min_test_weight(p, eps)?.test_weight.log2())
}

/// Exact top value of the flattest ball member; the quantity behind
/// [`smooth_min_entropy`], exposed for tolerance-free comparisons.
pub fn flattest_top<T: Scalar>(p: &Spectrum<T>, eps: &T) -> Result<T> {
    check_eps_half_open(eps)?;
    Ok(flattest(p, eps)?.top_value())
}

/// Is the uniform state on `q`'s full ambient space within trace distance
/// `eps`? The distance is the mass sitting above the uniform level; the
/// walk exits as soon as that exceeds the budget.
fn uniform_within_ball<T: Scalar>(q: &Spectrum<T>, eps: &T) -> bool {
    let level = T::recip_nat(q.ambient_dim());
    let mut above = T::zero();
    for run in q.runs() {
        let excess = run.value.sub(&level);
        if excess.approx_cmp(&T::zero()) != Ordering::Greater {
            break; // runs are sorted; nothing further sits above the level
        }
        above = above.add(&excess.mul_nat(&run.multiplicity));
        if above.approx_cmp(eps) == Ordering::Greater {
            return false;
        }
    }
    true
}

pub(crate) fn scale_runs<T: Scalar>(p: &Spectrum<T>, factor: &T) -> Vec<Run<T>> {
    p.runs()
        .iter()
        .map(|r| Run { value: r.value.mul(factor), multiplicity: r.multiplicity.clone() })
        .collect()
}
