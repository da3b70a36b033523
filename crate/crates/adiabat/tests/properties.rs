//! Cross-module invariants, mostly on exact rational spectra so boundary
//! cases carry no float noise.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use adiabat::oracle::GridSpec;
use adiabat::sampling::random_spectrum;
use adiabat::scalar::Scalar;
use adiabat::smoothing::{
    flattest, min_test_weight, smooth_max_entropy, smooth_min_entropy, steepest,
};
use adiabat::spectrum::Spectrum;
use adiabat::transforms::{
    anti_aligned_mix, probabilistic_possible, smooth_possible, TransformMode,
};

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::from_ratio(n, d)
}

/// Random simplex point with entries on a `1/total` grid.
fn spectrum_strategy(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Spectrum<BigRational>> {
    dims.prop_flat_map(|dim| {
        proptest::collection::vec(0u64..32, dim)
            .prop_filter("needs mass", |w| w.iter().sum::<u64>() > 0)
            .prop_map(move |weights| {
                let total: u64 = weights.iter().sum();
                let values: Vec<BigRational> =
                    weights.iter().map(|&w| rat(w, total)).collect();
                Spectrum::from_values(&values, Some(BigUint::from(dim))).unwrap()
            })
    })
}

fn eps_strategy() -> impl Strategy<Value = BigRational> {
    (0u64..24).prop_map(|k| rat(k, 24))
}

fn pair_strategy(
    dims: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (Spectrum<BigRational>, Spectrum<BigRational>)> {
    dims.prop_flat_map(|dim| {
        (
            Just(dim),
            proptest::collection::vec(0u64..32, dim)
                .prop_filter("mass", |w| w.iter().sum::<u64>() > 0),
            proptest::collection::vec(0u64..32, dim)
                .prop_filter("mass", |w| w.iter().sum::<u64>() > 0),
        )
    })
    .prop_map(|(dim, wa, wb)| {
        let build = |w: &[u64]| {
            let total: u64 = w.iter().sum();
            let values: Vec<BigRational> = w.iter().map(|&x| rat(x, total)).collect();
            Spectrum::from_values(&values, Some(BigUint::from(dim))).unwrap()
        };
        (build(&wa), build(&wb))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonicalization_is_idempotent(s in spectrum_strategy(2..=6)) {
        let values = s.dense_values();
        let again = Spectrum::from_values(&values, Some(s.ambient_dim().clone())).unwrap();
        prop_assert_eq!(s, again);
    }

    #[test]
    fn majorization_is_reflexive(s in spectrum_strategy(2..=6)) {
        prop_assert!(s.majorizes(&s).unwrap());
    }

    #[test]
    fn steepest_flattest_sandwich_transitivity(
        s in spectrum_strategy(2..=5),
        e1 in eps_strategy(),
        e2 in eps_strategy(),
    ) {
        // steepest(s, e1) majorizes s majorizes flattest(s, e2); the outer
        // pair then follows by transitivity, checked directly.
        let up = steepest(&s, &e1).unwrap();
        let down = flattest(&s, &e2).unwrap();
        prop_assert!(up.majorizes(&s).unwrap());
        prop_assert!(s.majorizes(&down).unwrap());
        prop_assert!(up.majorizes(&down).unwrap());
    }

    #[test]
    fn tensor_respects_majorization((a, b) in pair_strategy(2..=5), (c, d) in pair_strategy(2..=5)) {
        // Build comparable pairs from arbitrary ones with the ball extremes.
        let a_up = steepest(&a, &rat(1, 8)).unwrap();
        let c_up = steepest(&c, &rat(1, 6)).unwrap();
        prop_assert!(a_up.majorizes(&a).unwrap());
        prop_assert!(c_up.majorizes(&c).unwrap());
        let left = a_up.tensor(&c_up).unwrap();
        let right = a.tensor(&c).unwrap();
        prop_assert!(left.majorizes(&right).unwrap());
        let _ = (b, d);
    }

    #[test]
    fn trace_distance_triangle(
        (a, b) in pair_strategy(2..=5),
        (c, _unused) in pair_strategy(2..=5),
    ) {
        if a.ambient_dim() == c.ambient_dim() {
            let ab = a.trace_distance(&b).unwrap();
            let bc = b.trace_distance(&c).unwrap();
            let ac = a.trace_distance(&c).unwrap();
            prop_assert!(ac <= ab.add(&bc));
            // Symmetry and identity.
            prop_assert_eq!(a.trace_distance(&b).unwrap(), b.trace_distance(&a).unwrap());
            prop_assert!(Zero::is_zero(&a.trace_distance(&a).unwrap()));
        }
    }

    #[test]
    fn entropy_ordering(s in spectrum_strategy(2..=8)) {
        let e = s.entropies();
        prop_assert!(e.h_min <= e.von_neumann + 1e-12);
        prop_assert!(e.von_neumann <= e.h_zero + 1e-12);
    }

    #[test]
    fn smooth_entropies_monotone_and_collapse(
        s in spectrum_strategy(2..=5),
        e1 in eps_strategy(),
        e2 in eps_strategy(),
    ) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let zero = rat(0, 1);
        prop_assert_eq!(smooth_min_entropy(&s, &zero).unwrap(), s.entropies().h_min);
        prop_assert_eq!(smooth_max_entropy(&s, &zero).unwrap(), s.entropies().h_zero);
        prop_assert!(
            smooth_min_entropy(&s, &lo).unwrap() <= smooth_min_entropy(&s, &hi).unwrap() + 1e-12
        );
        prop_assert!(
            smooth_max_entropy(&s, &lo).unwrap() >= smooth_max_entropy(&s, &hi).unwrap() - 1e-12
        );
        // Pointwise bounds against the exact entropies.
        prop_assert!(smooth_min_entropy(&s, &hi).unwrap() >= s.entropies().h_min - 1e-12);
        prop_assert!(smooth_max_entropy(&s, &hi).unwrap() <= s.entropies().h_zero + 1e-12);
    }

    #[test]
    fn steepest_flattest_stay_in_ball(s in spectrum_strategy(2..=5), e in eps_strategy()) {
        let up = steepest(&s, &e).unwrap();
        let down = flattest(&s, &e).unwrap();
        prop_assert!(s.trace_distance(&up).unwrap() <= e);
        prop_assert!(s.trace_distance(&down).unwrap() <= e);
    }

    #[test]
    fn greedy_test_covers_exactly(s in spectrum_strategy(2..=6), e in eps_strategy()) {
        // The greedy test weight covers mass 1 - eps exactly: the full-weight
        // prefix plus the fractional boundary entry.
        let cert = min_test_weight(&s, &e).unwrap();
        let values = s.dense_values();
        let mut covered = rat(0, 1);
        let mut idx = BigUint::zero();
        for v in &values {
            if idx < cert.threshold_index {
                covered = covered.add(v);
            } else {
                covered = covered.add(&cert.fractional_weight.mul(v));
                break;
            }
            idx += 1u32;
        }
        prop_assert_eq!(covered, rat(1, 1).sub(&e));
        prop_assert!(cert.fractional_weight >= rat(0, 1));
        prop_assert!(cert.fractional_weight < rat(1, 1));
    }

    #[test]
    fn smoothing_modes_agree((a, b) in pair_strategy(2..=5), e in eps_strategy()) {
        let input = smooth_possible(&a, &b, &e, TransformMode::SmoothInput).unwrap().possible;
        let output = smooth_possible(&a, &b, &e, TransformMode::SmoothOutput).unwrap().possible;
        let split = smooth_possible(&a, &b, &e, TransformMode::SmoothSplit { grid_points: 10 })
            .unwrap()
            .possible;
        prop_assert_eq!(input, output);
        prop_assert_eq!(input, split);
    }

    #[test]
    fn probabilistic_implies_smooth((a, b) in pair_strategy(2..=5), e in eps_strategy()) {
        let prob = probabilistic_possible(&a, &b, &e).unwrap();
        if prob.possible {
            prop_assert!(
                smooth_possible(&a, &b, &e, TransformMode::SmoothInput).unwrap().possible
            );
            // The mixing certificate reconstructs a majorized mixture.
            if let Some(adiabat::transforms::Certificate::Mixing { xi: Some(xi) }) =
                prob.certificate
            {
                let mix = anti_aligned_mix(&b, &xi, &e).unwrap();
                prop_assert!(a.majorizes(&mix).unwrap());
            }
        }
    }

    #[test]
    fn epsilon_zero_forces_exact_mode((a, b) in pair_strategy(2..=5)) {
        let zero = rat(0, 1);
        let exact = a.majorizes(&b).unwrap();
        prop_assert_eq!(
            smooth_possible(&a, &b, &zero, TransformMode::SmoothInput).unwrap().possible,
            exact
        );
        prop_assert_eq!(probabilistic_possible(&a, &b, &zero).unwrap().possible, exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn majorization_matches_dense_scan(
        (a, b) in pair_strategy(2..=6),
    ) {
        // The run-breakpoint walk must agree with the naive per-index scan.
        let dense_a = a.dense_values();
        let dense_b = b.dense_values();
        let mut prefix_a = rat(0, 1);
        let mut prefix_b = rat(0, 1);
        let mut naive = true;
        for (va, vb) in dense_a.iter().zip(&dense_b) {
            prefix_a = prefix_a.add(va);
            prefix_b = prefix_b.add(vb);
            if prefix_a < prefix_b {
                naive = false;
                break;
            }
        }
        prop_assert_eq!(a.majorizes(&b).unwrap(), naive);
    }
}

/// The exact entropies bracket each other on random spectra.
#[test]
fn corollary_bounds_random_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10_000usize {
        let denom = rng.gen_range(4..=64u64);
        let s: Spectrum<BigRational> = random_spectrum(&mut rng, 6, denom, 2);
        let report = adiabat::asymptotics::corollary_bounds(&s);
        assert!(report.ordered, "{report:?}");
    }
}

/// Ball extremality against sampled grid members: the steepest member
/// majorizes everything in the ball, everything majorizes the flattest.
#[test]
fn ball_extremality_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let grid = GridSpec::new(4, 16).unwrap();
    let mut checked = 0usize;
    for instance in 0..40 {
        let center = {
            let pts = grid.sample_ball_members(
                &Spectrum::flat(&BigUint::from(4u32), BigUint::from(4u32)).unwrap(),
                &rat(1, 1),
                &mut rng,
                1,
            )
            .unwrap();
            pts.into_iter().next().unwrap()
        };
        let eps = rat(1 + instance % 4, 12);
        let up = steepest(&center, &eps).unwrap();
        let down = flattest(&center, &eps).unwrap();
        for member in grid.sample_ball_members(&center, &eps, &mut rng, 200).unwrap() {
            assert!(up.majorizes(&member).unwrap(), "steepest beaten: {member:?}");
            assert!(member.majorizes(&down).unwrap(), "flattest beats: {member:?}");
            checked += 1;
        }
    }
    assert!(checked > 2000, "sampled too few ball members: {checked}");
}
