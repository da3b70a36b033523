//! Catalytic transformations and the embezzling-catalyst construction.
//!
//! A catalyst enables a transformation when tensoring it onto both sides
//! makes the smooth relation hold; the catalyst itself comes back within
//! trace distance `eps`. The embezzler family makes any meter step
//! `flat(m) -> pure` possible at any positive tolerance, at a dimension
//! cost that grows as the tolerance shrinks.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectrum::{NormCheck, Spectrum, DEFAULT_RUN_CAP};
use crate::transforms::{smooth_possible, TransformMode, TransformReport};

/// Construction parameters an embezzler was built for.
#[derive(Debug, Clone, PartialEq)]
pub struct BuiltFor<T> {
    /// Base `m = 2^lambda` of the meter step the catalyst absorbs.
    pub base_m: u64,
    pub eps: T,
}

/// A catalyst spectrum, optionally tagged with its construction parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Catalyst<T: Scalar> {
    pub spectrum: Spectrum<T>,
    pub built_for: Option<BuiltFor<T>>,
}

impl<T: Scalar> Catalyst<T> {
    pub fn from_spectrum(spectrum: Spectrum<T>) -> Self {
        Catalyst { spectrum, built_for: None }
    }

    pub fn dim(&self) -> &BigUint {
        self.spectrum.ambient_dim()
    }
}

/// Base `m = 2^lambda` from a label `lambda`, requiring `2^lambda` to be an
/// integer at least two.
pub fn base_from_lambda(lambda: f64) -> Result<u64> {
    if !lambda.is_finite() || !(0.0..=52.0).contains(&lambda) {
        return Err(Error::Domain(format!("lambda {lambda} out of range")));
    }
    let m = lambda.exp2();
    let rounded = m.round();
    if (m - rounded).abs() > 1e-9 || rounded < 2.0 {
        return Err(Error::Domain(format!("2^lambda = {m} is not an integer >= 2")));
    }
    Ok(rounded as u64)
}

/// Build the embezzling catalyst for the meter step of base `m = 2^lambda`
/// at tolerance `eps`.
///
/// Eigenvalues come in generations: a head value `m * eps / (m - 1)`, then
/// generation `k >= 1` holding `m^k - m^(k-1)` entries of the head value
/// times `m^-k`, each full generation carrying mass `eps`. Generations are
/// emitted until the spectrum is normalized; the final eigenvalue shrinks
/// when the last generation only partially fits.
pub fn build_embezzler<T: Scalar>(base_m: u64, eps: &T) -> Result<Catalyst<T>> {
    if base_m < 2 {
        return Err(Error::Domain(format!("embezzler base {base_m} must be >= 2")));
    }
    if eps.approx_cmp(&T::zero()) != Ordering::Greater
        || eps.approx_cmp(&T::one()) != Ordering::Less
    {
        return Err(Error::EpsilonOutOfRange { value: eps.to_string(), range: "(0, 1)" });
    }
    let m_big = BigUint::from(base_m);
    let head = eps.mul_nat(&m_big).div_nat(&BigUint::from(base_m - 1));
    let one = T::one();

    let mut entries: Vec<(T, BigUint)> = Vec::new();
    let mut dim = BigUint::zero();
    let mut mass = T::zero();

    if head.approx_cmp(&one) != Ordering::Less {
        // Degenerate: the head alone saturates normalization.
        let spectrum = Spectrum::pure_state(BigUint::one());
        return Ok(Catalyst {
            spectrum,
            built_for: Some(BuiltFor { base_m, eps: eps.clone() }),
        });
    }
    entries.push((head.clone(), BigUint::one()));
    dim += 1u32;
    mass = mass.add(&head);

    let mut value = head;
    let mut capacity = BigUint::from(base_m - 1);
    loop {
        if entries.len() >= DEFAULT_RUN_CAP {
            return Err(Error::Overflow {
                needed: format!(">{}", entries.len()),
                cap: DEFAULT_RUN_CAP,
            });
        }
        value = value.div_nat(&m_big);
        let remaining = one.sub(&mass);
        if remaining.approx_cmp(&T::zero()) != Ordering::Greater {
            break;
        }
        let wanted = remaining.div_floor_nat(&value);
        let full = wanted.clone().min(capacity.clone());
        if !full.is_zero() {
            entries.push((value.clone(), full.clone()));
            dim += &full;
            mass = mass.add(&value.mul_nat(&full));
        }
        if full < capacity {
            let leftover = one.sub(&mass);
            if leftover.approx_cmp(&T::zero()) == Ordering::Greater {
                entries.push((leftover, BigUint::one()));
                dim += 1u32;
            }
            break;
        }
        capacity *= base_m;
    }

    let spectrum = Spectrum::canonical(entries, dim, NormCheck::Skip)?;
    Ok(Catalyst { spectrum, built_for: Some(BuiltFor { base_m, eps: eps.clone() }) })
}

/// Decide `p -> q` with the help of a catalyst: the smooth relation on the
/// tensored pair, catalyst attached to both sides.
pub fn catalytic_possible<T: Scalar>(
    p: &Spectrum<T>,
    q: &Spectrum<T>,
    eps: &T,
    catalyst: &Catalyst<T>,
) -> Result<TransformReport<T>> {
    let source = p.tensor(&catalyst.spectrum)?;
    let target = q.tensor(&catalyst.spectrum)?;
    smooth_possible(&source, &target, eps, TransformMode::SmoothInput)
}

/// Necessary size condition on catalysts for a meter step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeBound {
    /// Largest label drop any catalyst of this dimension allows.
    pub max_gap: f64,
    /// Whether the requested step respects the bound.
    pub consistent: bool,
}

/// Evaluate the necessary condition `lambda1 - lambda2 <= -log2(1 - eps * dim)`
/// for a catalyst of the given dimension to enable the meter step
/// `lambda1 -> lambda2`. Necessary, not sufficient.
pub fn catalyst_size_bound(lambda1: f64, lambda2: f64, eps: f64, dim: u64) -> Result<SizeBound> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::EpsilonOutOfRange { value: eps.to_string(), range: "[0, 1]" });
    }
    if lambda1 <= lambda2 {
        return Err(Error::Domain("size bound applies to lambda1 > lambda2".into()));
    }
    let product = eps * dim as f64;
    if product >= 1.0 {
        return Err(Error::Domain(format!(
            "eps * dim = {product} >= 1 makes the bound vacuous"
        )));
    }
    let max_gap = -(1.0 - product).log2();
    Ok(SizeBound { max_gap, consistent: lambda1 - lambda2 <= max_gap + 1e-12 })
}
