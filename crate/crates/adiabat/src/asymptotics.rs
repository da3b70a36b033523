//! Finite-size verification of the macroscopic limit: entropy rates of
//! tensor-power families, meter sandwiches, and the bounds tying the exact
//! entropies to the asymptotic rate.
//!
//! Rates at large `n` need exact arithmetic: the eigenvalues of a qubit's
//! 2000-fold power sit far below the smallest subnormal `f64`, so these
//! scans are expected to run on rational spectra.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{pow2_biguint, Scalar};
use crate::smoothing::{smooth_max_entropy, smooth_min_entropy};
use crate::spectrum::Spectrum;
use crate::transforms::{
    probabilistic_entropies, probabilistic_possible, smooth_possible, TransformMode,
};

/// Which entropy pair a scan evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateMode {
    Smooth,
    Probabilistic,
}

/// Default copy counts for rate scans.
pub const DEFAULT_N_GRID: [u64; 6] = [50, 100, 200, 500, 1000, 2000];

/// Per-copy entropy rates at one system size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub n: u64,
    pub s_minus_rate: f64,
    pub s_plus_rate: f64,
    /// The von Neumann entropy of the single-copy state.
    pub target: f64,
}

/// Entropy rates of `p`'s tensor powers at the given copy counts.
pub fn rate_scan<T: Scalar>(
    p: &Spectrum<T>,
    eps: &T,
    n_values: &[u64],
    mode: RateMode,
) -> Result<Vec<RatePoint>> {
    let target = p.entropies().von_neumann;
    let mut points = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let power = p.tensor_power(n)?;
        let (s_minus, s_plus) = match mode {
            RateMode::Smooth => (
                smooth_min_entropy(&power, eps)?,
                smooth_max_entropy(&power, eps)?,
            ),
            RateMode::Probabilistic => {
                let e = probabilistic_entropies(&power, eps)?;
                (e.s_minus, e.s_plus)
            }
        };
        points.push(RatePoint {
            n,
            s_minus_rate: s_minus / n as f64,
            s_plus_rate: s_plus / n as f64,
            target,
        });
    }
    Ok(points)
}

/// One sandwich test: can the lower meter reach `p^(x)n`, and can `p^(x)n`
/// reach the upper meter?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquilibriumPoint {
    pub n: u64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl EquilibriumPoint {
    pub fn holds(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

#[derive(Debug, Clone)]
pub struct EquilibriumReport {
    pub points: Vec<EquilibriumPoint>,
    pub first_failure: Option<u64>,
}

impl EquilibriumReport {
    pub fn holds_for_all(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Verify the meter sandwich around the tensor-power family: flat states of
/// support `ceil(2^(n(H - delta)))` below and `floor(2^(n(H + delta)))`
/// above, at tolerance `eps`, in the given mode, for every `n >= n0` in the
/// test set.
pub fn equilibrium_check<T: Scalar>(
    p: &Spectrum<T>,
    eps: &T,
    delta: f64,
    n0: u64,
    n_values: &[u64],
    mode: RateMode,
) -> Result<EquilibriumReport> {
    if delta <= 0.0 {
        return Err(Error::Domain("equilibrium check requires delta > 0".into()));
    }
    let entropy = p.entropies().von_neumann;
    let mut points = Vec::new();
    let mut first_failure = None;
    for &n in n_values.iter().filter(|&&n| n >= n0) {
        let power = p.tensor_power(n)?;
        let ambient = power.ambient_dim().clone();
        let lower_support = pow2_biguint((n as f64 * (entropy - delta)).max(0.0), true)
            .max(BigUint::one())
            .min(ambient.clone());
        let upper_support = pow2_biguint(n as f64 * (entropy + delta), false)
            .max(BigUint::one())
            .min(ambient.clone());
        let lower_meter: Spectrum<T> = Spectrum::flat(&lower_support, ambient.clone())?;
        let upper_meter: Spectrum<T> = Spectrum::flat(&upper_support, ambient)?;
        let (lower_ok, upper_ok) = match mode {
            RateMode::Smooth => (
                smooth_possible(&lower_meter, &power, eps, TransformMode::SmoothInput)?.possible,
                smooth_possible(&power, &upper_meter, eps, TransformMode::SmoothInput)?.possible,
            ),
            RateMode::Probabilistic => (
                probabilistic_possible(&lower_meter, &power, eps)?.possible,
                probabilistic_possible(&power, &upper_meter, eps)?.possible,
            ),
        };
        let point = EquilibriumPoint { n, lower_ok, upper_ok };
        if !point.holds() && first_failure.is_none() {
            first_failure = Some(n);
        }
        points.push(point);
    }
    Ok(EquilibriumReport { points, first_failure })
}

/// The exact entropies bracket the asymptotic rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryReport {
    pub h_min: f64,
    pub von_neumann: f64,
    pub h_zero: f64,
    pub ordered: bool,
}

pub fn corollary_bounds<T: Scalar>(p: &Spectrum<T>) -> CorollaryReport {
    let e = p.entropies();
    CorollaryReport {
        h_min: e.h_min,
        von_neumann: e.von_neumann,
        h_zero: e.h_zero,
        ordered: e.h_min <= e.von_neumann + 1e-12 && e.von_neumann <= e.h_zero + 1e-12,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(n: u64, d: u64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn qubit() -> Spectrum<BigRational> {
        Spectrum::from_values(&[rat(3, 4), rat(1, 4)], None).unwrap()
    }

    #[test]
    fn flat_rates_are_constant() {
        let f = Spectrum::<BigRational>::flat(&BigUint::from(3u32), BigUint::from(3u32)).unwrap();
        let points = rate_scan(&f, &rat(1, 10), &[10, 50], RateMode::Smooth).unwrap();
        for p in points {
            // Flat powers on their own support stay flat, so the lower rate
            // is the target exactly; the test weight carries a 1 - eps
            // factor, a -log2(1 - eps) / n correction on the upper rate.
            assert!((p.s_minus_rate - p.target).abs() < 1e-9);
            assert!((p.s_plus_rate - (p.target + (0.9f64).log2() / p.n as f64)).abs() < 1e-9);
        }
    }

    #[test]
    fn pure_rates_vanish() {
        let pure = Spectrum::<BigRational>::pure_state(BigUint::from(2u32));
        let points = rate_scan(&pure, &rat(1, 10), &[10, 40], RateMode::Smooth).unwrap();
        for p in points {
            assert_eq!(p.target, 0.0);
            assert!(p.s_minus_rate.abs() < 0.05, "{p:?}");
        }
    }

    #[test]
    fn qubit_rates_approach_target() {
        let p = qubit();
        let points = rate_scan(&p, &rat(1, 10), &[50, 200], RateMode::Smooth).unwrap();
        let far = (points[0].s_minus_rate - points[0].target).abs();
        let near = (points[1].s_minus_rate - points[1].target).abs();
        assert!(near < far, "min-entropy rate must tighten: {points:?}");
    }

    #[test]
    fn probabilistic_gap_does_not_close() {
        let p = qubit();
        let eps = rat(1, 4);
        let points = rate_scan(&p, &eps, &[10, 50, 100], RateMode::Probabilistic).unwrap();
        for pt in points {
            let gap = pt.s_plus_rate - pt.s_minus_rate;
            assert!(gap >= 1.5f64.log2() - 0.01, "gap {gap} at n = {}", pt.n);
        }
    }

    #[test]
    fn smooth_sandwich_holds_probabilistic_fails() {
        // Wide margins keep this fast at small n; the tight desk-scale
        // parameters run in the acceptance suite at n >= 500.
        let p = qubit();
        let smooth =
            equilibrium_check(&p, &rat(1, 5), 0.1, 100, &[100, 200], RateMode::Smooth).unwrap();
        assert!(smooth.holds_for_all(), "{smooth:?}");

        let prob = equilibrium_check(&p, &rat(1, 4), 0.01, 50, &[50, 100], RateMode::Probabilistic)
            .unwrap();
        assert_eq!(prob.first_failure, Some(50));
        assert!(prob.points.iter().all(|pt| !pt.holds()));
    }

    #[test]
    fn sharp_states_sandwich_at_tiny_delta() {
        let f = Spectrum::<BigRational>::flat(&BigUint::from(4u32), BigUint::from(4u32)).unwrap();
        let report =
            equilibrium_check(&f, &rat(1, 100), 1e-6, 5, &[5, 20], RateMode::Smooth).unwrap();
        assert!(report.holds_for_all(), "{report:?}");
    }

    #[test]
    fn rate_dominance_implies_transformability_between_iid_families() {
        // Two tensor-power families whose rate targets differ by a margin:
        // the lower-entropy family reaches the higher one at every tested
        // size, and never the other way around.
        let x = qubit(); // entropy ~ 0.811
        let y = Spectrum::from_values(&[rat(3, 5), rat(2, 5)], None).unwrap(); // ~ 0.971
        assert!(x.entropies().von_neumann + 0.15 <= y.entropies().von_neumann);
        let eps = rat(1, 10);
        for n in [100u64, 200, 400] {
            let xn = x.tensor_power(n).unwrap();
            let yn = y.tensor_power(n).unwrap();
            assert!(
                smooth_possible(&xn, &yn, &eps, TransformMode::SmoothInput).unwrap().possible,
                "forward transform failed at n = {n}"
            );
            assert!(
                !smooth_possible(&yn, &xn, &eps, TransformMode::SmoothInput).unwrap().possible,
                "reverse transform must fail at n = {n}"
            );
        }
    }

    #[test]
    fn monotone_squeeze_on_random_small_spectra() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        // Qubits at n in {200, 2000}, qutrits at {100, 400}: the rate
        // deviation shrinks with n for both tolerances.
        for _ in 0..2 {
            let p: Spectrum<BigRational> = crate::sampling::random_spectrum(&mut rng, 2, 16, 0);
            if p.runs().len() < 2 {
                continue; // sharp states are exact at every n
            }
            for eps in [rat(1, 100), rat(1, 10)] {
                let points = rate_scan(&p, &eps, &[200, 2000], RateMode::Smooth).unwrap();
                assert!(
                    (points[1].s_minus_rate - points[1].target).abs()
                        < (points[0].s_minus_rate - points[0].target).abs(),
                    "qubit min-rate squeeze failed: {points:?}"
                );
                assert!(
                    (points[1].s_plus_rate - points[1].target).abs()
                        < (points[0].s_plus_rate - points[0].target).abs(),
                    "qubit max-rate squeeze failed: {points:?}"
                );
            }
        }
        let mut tested = 0usize;
        while tested < 1 {
            let p: Spectrum<BigRational> = crate::sampling::random_spectrum(&mut rng, 3, 16, 0);
            if p.runs().len() < 2 {
                continue;
            }
            let eps = rat(1, 10);
            let points = rate_scan(&p, &eps, &[60, 240], RateMode::Smooth).unwrap();
            assert!(
                (points[1].s_minus_rate - points[1].target).abs()
                    < (points[0].s_minus_rate - points[0].target).abs(),
                "qutrit min-rate squeeze failed: {points:?}"
            );
            tested += 1;
        }
    }

    #[test]
    fn corollary_bounds_hold() {
        let report = corollary_bounds(&qubit());
        assert!(report.ordered);
        assert!((report.h_min - (4f64 / 3f64).log2()).abs() < 1e-12);
        assert!((report.von_neumann - 0.8112781244591328).abs() < 1e-12);
        assert_eq!(report.h_zero, 1.0);

        let flat = Spectrum::<BigRational>::flat(&BigUint::from(8u32), BigUint::from(8u32)).unwrap();
        let r = corollary_bounds(&flat);
        assert_eq!((r.h_min, r.von_neumann, r.h_zero), (3.0, 3.0, 3.0));
    }
}
