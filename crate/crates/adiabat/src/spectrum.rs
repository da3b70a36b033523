//! Canonical spectra and exact-order primitives.
//!
//! A [`Spectrum`] is the multiplicity-compressed, descending-sorted list of
//! eigenvalues of a density operator, together with the dimension of the
//! space it lives on. Runs keep tensor powers tractable: the `n`-fold power
//! of a `k`-run spectrum has at most `C(n+k-1, k-1)` runs, never `k^n`.
//!
//! Multiplicities and ambient dimensions are big integers throughout, so
//! spectra like a 2000-fold tensor power of a qubit (ambient `2^2000`) are
//! first-class values.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{log2_biguint, Scalar};

/// Cap on run counts produced by tensor operations.
pub const DEFAULT_RUN_CAP: usize = 1 << 20;

/// One run: an eigenvalue and how many times it repeats.
#[derive(Debug, Clone, PartialEq)]
pub struct Run<T> {
    pub value: T,
    pub multiplicity: BigUint,
}

/// Canonical spectrum: strictly decreasing positive values, implicit zeros
/// up to `ambient_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: Scalar> {
    runs: Vec<Run<T>>,
    ambient_dim: BigUint,
}

/// Whether a constructor must verify normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum NormCheck {
    Require,
    Skip,
}

/// The three exact entropies of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySummary {
    /// `-log2` of the largest eigenvalue.
    pub h_min: f64,
    /// `log2` of the support size.
    pub h_zero: f64,
    /// `-sum(v * log2 v)` over all eigenvalues.
    pub von_neumann: f64,
}

/// Neumaier-compensated accumulator. Exact types carry a zero compensation
/// term, so a single code path serves both modes.
#[derive(Debug, Clone)]
pub(crate) struct Acc<T: Scalar> {
    sum: T,
    comp: T,
}

impl<T: Scalar> Acc<T> {
    pub(crate) fn new() -> Self {
        Acc { sum: T::zero(), comp: T::zero() }
    }

    pub(crate) fn add(&mut self, x: &T) {
        if T::EXACT {
            self.sum = self.sum.add(x);
            return;
        }
        let t = self.sum.add(x);
        let delta = if self.sum.raw_abs_cmp(x) != Ordering::Less {
            self.sum.sub(&t).add(x)
        } else {
            x.sub(&t).add(&self.sum)
        };
        self.comp = self.comp.add(&delta);
        self.sum = t;
    }

    pub(crate) fn value(&self) -> T {
        if T::EXACT {
            return self.sum.clone();
        }
        self.sum.add(&self.comp)
    }
}

impl<T: Scalar> Spectrum<T> {
    /// Build a spectrum from raw eigenvalues (multiplicity one each).
    ///
    /// Values are sorted, zeros stripped into the ambient dimension, equal
    /// values merged into runs, and normalization enforced. Idempotent on
    /// already-canonical input.
    pub fn from_values(values: &[T], ambient_dim: Option<BigUint>) -> Result<Self> {
        let entries: Vec<(T, BigUint)> =
            values.iter().map(|v| (v.clone(), BigUint::one())).collect();
        let ambient = ambient_dim.unwrap_or_else(|| BigUint::from(values.len()));
        Self::canonical(entries, ambient, NormCheck::Require)
    }

    /// Build a spectrum from `(value, multiplicity)` pairs.
    pub fn from_runs(entries: Vec<(T, BigUint)>, ambient_dim: BigUint) -> Result<Self> {
        Self::canonical(entries, ambient_dim, NormCheck::Require)
    }

    /// The pure state `(1, 0, ..., 0)` on the given space.
    pub fn pure_state(ambient_dim: BigUint) -> Self {
        debug_assert!(!ambient_dim.is_zero());
        Spectrum {
            runs: vec![Run { value: T::one(), multiplicity: BigUint::one() }],
            ambient_dim,
        }
    }

    /// Flat spectrum with the given support size.
    pub fn flat(support: &BigUint, ambient_dim: BigUint) -> Result<Self> {
        if support.is_zero() || *support > ambient_dim {
            return Err(Error::AmbientTooSmall {
                ambient: ambient_dim.to_string(),
                support: support.to_string(),
            });
        }
        Ok(Spectrum {
            runs: vec![Run { value: T::recip_nat(support), multiplicity: support.clone() }],
            ambient_dim,
        })
    }

    pub(crate) fn canonical(
        entries: Vec<(T, BigUint)>,
        ambient_dim: BigUint,
        check: NormCheck,
    ) -> Result<Self> {
        let mut kept: Vec<(T, BigUint)> = Vec::with_capacity(entries.len());
        for (v, m) in entries {
            if m.is_zero() {
                continue;
            }
            match v.approx_cmp(&T::zero()) {
                Ordering::Less => {
                    return Err(Error::NegativeEigenvalue { value: v.to_string() })
                }
                Ordering::Equal => continue,
                Ordering::Greater => kept.push((v, m)),
            }
        }
        kept.sort_by(|a, b| b.0.approx_cmp(&a.0));
        let mut runs: Vec<Run<T>> = Vec::with_capacity(kept.len());
        for (v, m) in kept {
            match runs.last_mut() {
                Some(last) if last.value.approx_cmp(&v) == Ordering::Equal => {
                    last.multiplicity += m;
                }
                _ => runs.push(Run { value: v, multiplicity: m }),
            }
        }
        let spectrum = Spectrum { runs, ambient_dim };
        let support = spectrum.support_size();
        if support > spectrum.ambient_dim {
            return Err(Error::AmbientTooSmall {
                ambient: spectrum.ambient_dim.to_string(),
                support: support.to_string(),
            });
        }
        if check == NormCheck::Require {
            let total = spectrum.total_mass();
            if total.approx_cmp(&T::one()) != Ordering::Equal {
                return Err(Error::NotNormalized { sum: total.to_string() });
            }
        } else {
            debug_assert!(
                spectrum.total_mass().sub(&T::one()).abs().to_f64() < 1e-9,
                "internal construction lost mass"
            );
        }
        Ok(spectrum)
    }

    pub fn runs(&self) -> &[Run<T>] {
        &self.runs
    }

    pub fn ambient_dim(&self) -> &BigUint {
        &self.ambient_dim
    }

    /// Number of strictly positive eigenvalues.
    pub fn support_size(&self) -> BigUint {
        self.runs.iter().map(|r| &r.multiplicity).sum()
    }

    /// Largest eigenvalue (zero for an impossible empty spectrum).
    pub fn top_value(&self) -> T {
        self.runs.first().map(|r| r.value.clone()).unwrap_or_else(T::zero)
    }

    pub fn total_mass(&self) -> T {
        let mut acc = Acc::new();
        for run in &self.runs {
            acc.add(&run.value.mul_nat(&run.multiplicity));
        }
        acc.value()
    }

    /// Expand into an explicit eigenvalue list, zeros included. Only for
    /// small ambient dimensions (oracles, tests).
    pub fn dense_values(&self) -> Vec<T> {
        let ambient = self.ambient_dim.to_usize_lossy();
        let mut out = Vec::with_capacity(ambient);
        for run in &self.runs {
            let m = run.multiplicity.to_usize_lossy();
            out.extend(std::iter::repeat_with(|| run.value.clone()).take(m));
        }
        while out.len() < ambient {
            out.push(T::zero());
        }
        out
    }

    /// Same spectrum viewed on a larger space (explicit zero padding).
    pub fn pad_to(&self, ambient_dim: BigUint) -> Result<Self> {
        if ambient_dim < self.ambient_dim {
            return Err(Error::AmbientTooSmall {
                ambient: ambient_dim.to_string(),
                support: self.ambient_dim.to_string(),
            });
        }
        Ok(Spectrum { runs: self.runs.clone(), ambient_dim })
    }

    /// Pad both spectra to their common (maximal) ambient dimension.
    pub fn pad_pair(a: &Self, b: &Self) -> (Self, Self) {
        let ambient = a.ambient_dim.clone().max(b.ambient_dim.clone());
        (
            a.pad_to(ambient.clone()).expect("padding can only grow"),
            b.pad_to(ambient).expect("padding can only grow"),
        )
    }

    fn require_same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim.to_string(),
                right: other.ambient_dim.to_string(),
            });
        }
        Ok(())
    }

    /// Tensor product, runs merged, with the default run cap.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.tensor_with_cap(other, DEFAULT_RUN_CAP)
    }

    pub fn tensor_with_cap(&self, other: &Self, cap: usize) -> Result<Self> {
        let needed = self.runs.len().saturating_mul(other.runs.len());
        if needed > cap {
            return Err(Error::Overflow { needed: needed.to_string(), cap });
        }
        let mut entries = Vec::with_capacity(needed);
        for a in &self.runs {
            for b in &other.runs {
                entries.push((a.value.mul(&b.value), &a.multiplicity * &b.multiplicity));
            }
        }
        Self::canonical(entries, &self.ambient_dim * &other.ambient_dim, NormCheck::Skip)
    }

    /// `n`-fold tensor power by multinomial aggregation over runs.
    pub fn tensor_power(&self, n: u64) -> Result<Self> {
        self.tensor_power_with_cap(n, DEFAULT_RUN_CAP)
    }

    pub fn tensor_power_with_cap(&self, n: u64, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("tensor power requires n >= 1".into()));
        }
        let k = self.runs.len();
        let count = compositions_count(n, k);
        if count > BigUint::from(cap) {
            return Err(Error::Overflow { needed: count.to_string(), cap });
        }
        let mut entries: Vec<(T, BigUint)> = Vec::new();
        // DFS over compositions (c_1, ..., c_k) of n; multinomial coefficient
        // built incrementally as a product of binomials.
        let mut stack_value = vec![T::one()];
        let mut stack_coef = vec![BigUint::one()];
        self.compose(n, 0, &mut stack_value, &mut stack_coef, &mut entries);
        let mut ambient = BigUint::one();
        for _ in 0..n {
            ambient *= &self.ambient_dim;
        }
        Self::canonical(entries, ambient, NormCheck::Skip)
    }

    fn compose(
        &self,
        remaining: u64,
        run_idx: usize,
        value: &mut Vec<T>,
        coef: &mut Vec<BigUint>,
        out: &mut Vec<(T, BigUint)>,
    ) {
        if run_idx + 1 == self.runs.len() {
            // Last run takes everything that is left.
            let run = &self.runs[run_idx];
            let v = value.last().unwrap().mul(&pow_scalar(&run.value, remaining));
            let c = coef.last().unwrap() * run.multiplicity.pow(to_u32(remaining));
            out.push((v, c));
            return;
        }
        let run = &self.runs[run_idx];
        let mut binom = BigUint::one(); // C(remaining, c) for c = 0
        let mut v_pow = T::one();
        for c in 0..=remaining {
            value.push(value.last().unwrap().mul(&v_pow));
            coef.push(coef.last().unwrap() * &binom * run.multiplicity.pow(to_u32(c)));
            self.compose(remaining - c, run_idx + 1, value, coef, out);
            value.pop();
            coef.pop();
            if c < remaining {
                // C(remaining, c+1) = C(remaining, c) * (remaining - c) / (c + 1)
                binom = binom * BigUint::from(remaining - c) / BigUint::from(c + 1);
                v_pow = v_pow.mul(&run.value);
            }
        }
    }

    /// Half the L1 distance between the full eigenvalue sequences. Requires
    /// equal ambient dimensions; use [`Spectrum::trace_distance_zero_padded`]
    /// to opt into padding.
    pub fn trace_distance(&self, other: &Self) -> Result<T> {
        self.require_same_ambient(other)?;
        let mut acc = Acc::new();
        let mut walker = PairWalker::new(self, other);
        while let Some((va, vb, count)) = walker.next_segment() {
            let d = va.sub(&vb);
            if d != T::zero() {
                acc.add(&d.abs().mul_nat(&count));
            }
        }
        Ok(acc.value().mul(&T::from_ratio(1, 2)))
    }

    pub fn trace_distance_zero_padded(&self, other: &Self) -> T {
        let (a, b) = Self::pad_pair(self, other);
        a.trace_distance(&b).expect("padded to common ambient")
    }

    /// Does `self` majorize `other`? True iff every prefix sum of `self`
    /// dominates the corresponding prefix sum of `other`.
    ///
    /// Evaluated per-run at the merged run breakpoints; piecewise linearity
    /// makes those the only candidates for a violation.
    pub fn majorizes(&self, other: &Self) -> Result<bool> {
        Ok(self.majorization_violation(other)?.is_none())
    }

    /// Position of the first violated prefix constraint, if any.
    pub fn majorization_violation(&self, other: &Self) -> Result<Option<BigUint>> {
        self.require_same_ambient(other)?;
        let mut prefix_a = Acc::new();
        let mut prefix_b = Acc::new();
        let mut position = BigUint::zero();
        let mut walker = PairWalker::new(self, other);
        while let Some((va, vb, count)) = walker.next_segment() {
            if va == T::zero() && vb == T::zero() {
                break; // both in the zero tail; prefixes are constant now
            }
            position += &count;
            if va != T::zero() {
                prefix_a.add(&va.mul_nat(&count));
            }
            if vb != T::zero() {
                prefix_b.add(&vb.mul_nat(&count));
            }
            if prefix_a.value().approx_cmp(&prefix_b.value()) == Ordering::Less {
                return Ok(Some(position));
            }
        }
        Ok(None)
    }

    /// H_min, H_0 and the von Neumann entropy.
    pub fn entropies(&self) -> EntropySummary {
        let h_min = -self.top_value().log2();
        let support = self.support_size();
        let h_zero = if support.is_zero() { 0.0 } else { log2_biguint(&support) };
        let mut von_neumann = 0.0;
        for run in &self.runs {
            let mass = run.value.mul_nat(&run.multiplicity).to_f64();
            von_neumann -= mass * run.value.log2();
        }
        // Clamp tiny negatives from float rounding on pure states.
        if von_neumann < 0.0 && von_neumann > -1e-12 {
            von_neumann = 0.0;
        }
        EntropySummary { h_min, h_zero, von_neumann }
    }

    /// Equality up to the scalar tolerance (exact equality in rational mode).
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.runs.len() == other.runs.len()
            && self
                .runs
                .iter()
                .zip(&other.runs)
                .all(|(a, b)| {
                    a.multiplicity == b.multiplicity
                        && a.value.approx_cmp(&b.value) == Ordering::Equal
                })
    }
}

/// Walks two spectra (plus their implicit zero tails) in lockstep,
/// yielding `(value_a, value_b, segment_length)` per merged segment.
struct PairWalker<'a, T: Scalar> {
    a: RunCursor<'a, T>,
    b: RunCursor<'a, T>,
}

impl<'a, T: Scalar> PairWalker<'a, T> {
    fn new(a: &'a Spectrum<T>, b: &'a Spectrum<T>) -> Self {
        PairWalker { a: RunCursor::new(a), b: RunCursor::new(b) }
    }

    fn next_segment(&mut self) -> Option<(T, T, BigUint)> {
        let rem_a = self.a.remaining()?;
        let rem_b = self.b.remaining()?;
        let count = rem_a.min(rem_b).clone();
        let va = self.a.value();
        let vb = self.b.value();
        self.a.consume(&count);
        self.b.consume(&count);
        Some((va, vb, count))
    }
}

struct RunCursor<'a, T: Scalar> {
    spectrum: &'a Spectrum<T>,
    run_idx: usize,
    left_in_run: BigUint,
    left_total: BigUint,
}

impl<'a, T: Scalar> RunCursor<'a, T> {
    fn new(spectrum: &'a Spectrum<T>) -> Self {
        let left_in_run = spectrum
            .runs
            .first()
            .map(|r| r.multiplicity.clone())
            .unwrap_or_else(BigUint::zero);
        RunCursor {
            spectrum,
            run_idx: 0,
            left_in_run,
            left_total: spectrum.ambient_dim.clone(),
        }
    }

    fn remaining(&self) -> Option<&BigUint> {
        if self.left_total.is_zero() {
            None
        } else if self.run_idx < self.spectrum.runs.len() && !self.left_in_run.is_zero() {
            Some(&self.left_in_run)
        } else {
            Some(&self.left_total) // zero tail
        }
    }

    fn value(&self) -> T {
        if self.run_idx < self.spectrum.runs.len() && !self.left_in_run.is_zero() {
            self.spectrum.runs[self.run_idx].value.clone()
        } else {
            T::zero()
        }
    }

    fn consume(&mut self, count: &BigUint) {
        self.left_total -= count;
        if self.run_idx < self.spectrum.runs.len() && !self.left_in_run.is_zero() {
            self.left_in_run -= count;
            if self.left_in_run.is_zero() {
                self.run_idx += 1;
                if let Some(run) = self.spectrum.runs.get(self.run_idx) {
                    self.left_in_run = run.multiplicity.clone();
                }
            }
        }
    }
}

fn pow_scalar<T: Scalar>(v: &T, e: u64) -> T {
    let mut acc = T::one();
    let mut base = v.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

fn to_u32(n: u64) -> u32 {
    u32::try_from(n).expect("tensor power exponent fits u32")
}

/// Number of compositions of `n` into `k` nonnegative parts.
fn compositions_count(n: u64, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::zero();
    }
    // C(n + k - 1, k - 1)
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..(k - 1) as u64 {
        num *= BigUint::from(n + 1 + i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

trait ToUsizeLossy {
    fn to_usize_lossy(&self) -> usize;
}

impl ToUsizeLossy for BigUint {
    fn to_usize_lossy(&self) -> usize {
        use num_traits::ToPrimitive;
        self.to_usize().expect("dense expansion requires a small dimension")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(n: u64, d: u64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn spec(values: &[(u64, u64)]) -> Spectrum<BigRational> {
        let v: Vec<BigRational> = values.iter().map(|&(n, d)| rat(n, d)).collect();
        Spectrum::from_values(&v, None).unwrap()
    }

    #[test]
    fn canonical_form_sorts_compresses_and_strips_zeros() {
        let s = Spectrum::<f64>::from_values(&[0.25, 0.5, 0.25], None).unwrap();
        assert_eq!(s.runs().len(), 2);
        assert_eq!(s.runs()[0].value, 0.5);
        assert_eq!(s.runs()[0].multiplicity, BigUint::from(1u32));
        assert_eq!(s.runs()[1].value, 0.25);
        assert_eq!(s.runs()[1].multiplicity, BigUint::from(2u32));
        assert_eq!(*s.ambient_dim(), BigUint::from(3u32));

        let pure = Spectrum::<f64>::from_values(&[1.0], None).unwrap();
        assert_eq!(pure.runs().len(), 1);
        assert_eq!(*pure.ambient_dim(), BigUint::from(1u32));

        let with_zero = Spectrum::<f64>::from_values(&[0.5, 0.5, 0.0], None).unwrap();
        assert_eq!(with_zero.runs().len(), 1);
        assert_eq!(with_zero.support_size(), BigUint::from(2u32));
        assert_eq!(*with_zero.ambient_dim(), BigUint::from(3u32));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Spectrum::<f64>::from_values(&[0.6, 0.6], None),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            Spectrum::<f64>::from_values(&[1.5, -0.5], None),
            Err(Error::NegativeEigenvalue { .. })
        ));
        assert!(matches!(
            Spectrum::<f64>::from_runs(
                vec![(0.5, BigUint::from(2u32))],
                BigUint::from(1u32)
            ),
            Err(Error::AmbientTooSmall { .. })
        ));
    }

    #[test]
    fn tensor_product_examples() {
        let a = spec(&[(1, 2), (1, 2)]);
        let b = spec(&[(1, 2), (1, 4), (1, 8), (1, 8)]);
        let t = a.tensor(&b).unwrap();
        let expected = vec![
            (rat(1, 4), BigUint::from(2u32)),
            (rat(1, 8), BigUint::from(2u32)),
            (rat(1, 16), BigUint::from(4u32)),
        ];
        let got: Vec<_> =
            t.runs().iter().map(|r| (r.value.clone(), r.multiplicity.clone())).collect();
        assert_eq!(got, expected);

        let identity = spec(&[(1, 1)]);
        let p = spec(&[(3, 4), (1, 4)]);
        assert!(p.tensor(&identity).unwrap().approx_eq(&p));

        let f2 = Spectrum::<BigRational>::flat(&BigUint::from(2u32), BigUint::from(2u32)).unwrap();
        let f3 = Spectrum::<BigRational>::flat(&BigUint::from(3u32), BigUint::from(3u32)).unwrap();
        let f6 = Spectrum::<BigRational>::flat(&BigUint::from(6u32), BigUint::from(6u32)).unwrap();
        assert!(f2.tensor(&f3).unwrap().approx_eq(&f6));
    }

    #[test]
    fn tensor_power_matches_binomial_expansion() {
        let p = spec(&[(3, 4), (1, 4)]);
        let sq = p.tensor_power(2).unwrap();
        let got: Vec<_> =
            sq.runs().iter().map(|r| (r.value.clone(), r.multiplicity.clone())).collect();
        assert_eq!(
            got,
            vec![
                (rat(9, 16), BigUint::from(1u32)),
                (rat(3, 16), BigUint::from(2u32)),
                (rat(1, 16), BigUint::from(1u32)),
            ]
        );
    }

    #[test]
    fn tensor_power_equals_iterated_tensor() {
        let p = spec(&[(1, 2), (1, 3), (1, 6)]);
        let mut iterated = p.clone();
        for n in 2..=6u64 {
            iterated = iterated.tensor(&p).unwrap();
            assert!(p.tensor_power(n).unwrap().approx_eq(&iterated), "n = {n}");
        }
    }

    #[test]
    fn tensor_power_binomial_multiplicities() {
        let p = spec(&[(3, 4), (1, 4)]);
        let n = 40u64;
        let t = p.tensor_power(n).unwrap();
        assert_eq!(t.runs().len(), (n + 1) as usize);
        // Multiplicities are the binomial coefficients C(n, k).
        let mut binom = BigUint::one();
        for (k, run) in t.runs().iter().enumerate() {
            assert_eq!(run.multiplicity, binom, "k = {k}");
            binom = binom * BigUint::from(n - k as u64) / BigUint::from(k as u64 + 1);
        }
        assert_eq!(t.total_mass(), rat(1, 1));
    }

    #[test]
    fn flat_tensor_power_stays_flat() {
        let f = Spectrum::<BigRational>::flat(&BigUint::from(3u32), BigUint::from(3u32)).unwrap();
        let t = f.tensor_power(5).unwrap();
        assert_eq!(t.runs().len(), 1);
        assert_eq!(t.support_size(), BigUint::from(243u32));
    }

    #[test]
    fn trace_distance_examples() {
        let a = spec(&[(1, 2), (1, 2)]);
        assert_eq!(a.trace_distance(&a).unwrap(), rat(0, 1));

        let pure = Spectrum::<BigRational>::pure_state(BigUint::from(2u32));
        assert_eq!(pure.trace_distance(&a).unwrap(), rat(1, 2));

        let b = spec(&[(3, 4), (1, 4)]);
        assert_eq!(a.trace_distance(&b).unwrap(), rat(1, 4));

        // Mismatched ambient needs the explicit opt-in.
        let wide = b.pad_to(BigUint::from(4u32)).unwrap();
        assert!(matches!(a.trace_distance(&wide), Err(Error::AmbientMismatch { .. })));
        assert_eq!(a.trace_distance_zero_padded(&wide), rat(1, 4));
    }

    #[test]
    fn majorization_examples() {
        let rho = spec(&[(1, 2), (1, 2)]);
        let sigma = spec(&[(3, 4), (1, 4)]);
        assert!(sigma.majorizes(&rho).unwrap());
        assert!(!rho.majorizes(&sigma).unwrap());
        assert_eq!(rho.majorization_violation(&sigma).unwrap(), Some(BigUint::one()));
        assert!(rho.majorizes(&rho).unwrap());

        let f2 = Spectrum::<BigRational>::flat(&BigUint::from(2u32), BigUint::from(4u32)).unwrap();
        let f4 = Spectrum::<BigRational>::flat(&BigUint::from(4u32), BigUint::from(4u32)).unwrap();
        assert!(f2.majorizes(&f4).unwrap());
        assert!(!f4.majorizes(&f2).unwrap());
    }

    #[test]
    fn entropy_examples() {
        let flat8 = Spectrum::<f64>::flat(&BigUint::from(8u32), BigUint::from(8u32)).unwrap();
        let e = flat8.entropies();
        assert_eq!(e.h_min, 3.0);
        assert_eq!(e.h_zero, 3.0);
        assert!((e.von_neumann - 3.0).abs() < 1e-12);

        let p = spec(&[(3, 4), (1, 4)]);
        let e = p.entropies();
        assert!((e.h_min - (4f64 / 3f64).log2()).abs() < 1e-12);
        assert_eq!(e.h_zero, 1.0);
        assert!((e.von_neumann - (2.0 - 0.75 * 3f64.log2())).abs() < 1e-12);

        let pure = Spectrum::<f64>::from_values(&[1.0, 0.0], None).unwrap();
        let e = pure.entropies();
        assert_eq!((e.h_min, e.h_zero, e.von_neumann), (0.0, 0.0, 0.0));
    }

    #[test]
    fn entropy_ordering_holds() {
        let p = spec(&[(2, 5), (3, 10), (3, 10)]);
        let e = p.entropies();
        assert!(e.h_min <= e.von_neumann + 1e-12);
        assert!(e.von_neumann <= e.h_zero + 1e-12);
    }

    #[test]
    fn run_cap_enforced() {
        let p = spec(&[(1, 2), (1, 3), (1, 6)]);
        assert!(matches!(
            p.tensor_power_with_cap(100, 1000),
            Err(Error::Overflow { .. })
        ));
    }
}
