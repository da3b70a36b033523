//! Independent brute-force references gating the heuristic constructions.
//!
//! Everything here runs on exact rationals over rational grids, so oracle
//! results share none of the main path's numeric hazards. Ball searches
//! enumerate simplex grid points; probabilistic feasibility gets both an
//! exhaustive grid over mixing states and an exact Fourier-Motzkin
//! elimination over the prefix-sum polytope.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

/// Largest ambient dimension the ball oracles accept.
pub const MAX_ORACLE_DIM: usize = 4;

/// Largest ambient dimension the test-weight oracle accepts.
pub const MAX_TEST_WEIGHT_DIM: usize = 8;

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::from_ratio(n, d)
}

fn rzero() -> BigRational {
    Zero::zero()
}

fn rone() -> BigRational {
    One::one()
}

/// A rational simplex grid on a fixed small dimension.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub dimension: usize,
    /// Grid step `1/denominator`.
    pub denominator: u64,
}

impl GridSpec {
    pub fn new(dimension: usize, denominator: u64) -> Result<Self> {
        if dimension > MAX_ORACLE_DIM {
            return Err(Error::DimensionTooLarge {
                dim: dimension.to_string(),
                max: MAX_ORACLE_DIM,
            });
        }
        if denominator == 0 {
            return Err(Error::Domain("grid denominator must be positive".into()));
        }
        Ok(GridSpec { dimension, denominator })
    }

    /// All grid points of the probability simplex, as canonical spectra on
    /// this dimension.
    pub fn simplex_points(&self) -> Vec<Spectrum<BigRational>> {
        let mut out = Vec::new();
        let mut counts = vec![0u64; self.dimension];
        enumerate_compositions(self.denominator, 0, &mut counts, &mut |c| {
            let values: Vec<BigRational> =
                c.iter().map(|&k| rat(k, self.denominator)).collect();
            let ambient = num_bigint::BigUint::from(self.dimension);
            out.push(
                Spectrum::from_values(&values, Some(ambient))
                    .expect("grid points are normalized"),
            );
        });
        out
    }

    /// All grid points as raw ordered tuples. Order matters when a grid
    /// vector is combined position-by-position with another state.
    pub fn simplex_tuples(&self) -> Vec<Vec<BigRational>> {
        let mut out = Vec::new();
        let mut counts = vec![0u64; self.dimension];
        enumerate_compositions(self.denominator, 0, &mut counts, &mut |c| {
            out.push(c.iter().map(|&k| rat(k, self.denominator)).collect());
        });
        out
    }

    /// Grid points within trace distance `radius` of `center`.
    pub fn ball_members(
        &self,
        center: &Spectrum<BigRational>,
        radius: &BigRational,
    ) -> Result<Vec<Spectrum<BigRational>>> {
        let points = self.simplex_points();
        let mut out = Vec::new();
        for p in points {
            if center.trace_distance(&p)? <= *radius {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// A deterministic random sample of ball members, for extremality spot
    /// checks that do not need the full grid.
    pub fn sample_ball_members<R: Rng>(
        &self,
        center: &Spectrum<BigRational>,
        radius: &BigRational,
        rng: &mut R,
        count: usize,
    ) -> Result<Vec<Spectrum<BigRational>>> {
        let mut out = Vec::new();
        let mut attempts = 0usize;
        while out.len() < count && attempts < count * 200 {
            attempts += 1;
            let mut counts = vec![0u64; self.dimension];
            for _ in 0..self.denominator {
                counts[rng.gen_range(0..self.dimension)] += 1;
            }
            let values: Vec<BigRational> =
                counts.iter().map(|&k| rat(k, self.denominator)).collect();
            let p = Spectrum::from_values(
                &values,
                Some(num_bigint::BigUint::from(self.dimension)),
            )
            .expect("grid points are normalized");
            if center.trace_distance(&p)? <= *radius {
                out.push(p);
            }
        }
        Ok(out)
    }
}

fn enumerate_compositions(
    remaining: u64,
    idx: usize,
    counts: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]),
) {
    if idx + 1 == counts.len() {
        counts[idx] = remaining;
        f(counts);
        return;
    }
    for c in 0..=remaining {
        counts[idx] = c;
        enumerate_compositions(remaining - c, idx + 1, counts, f);
    }
}

/// Exhaustive smooth min-entropy over the grid ball: the largest `H_min`
/// any grid member attains, returned with the exact smallest top value.
pub fn oracle_smooth_min_entropy(
    p: &Spectrum<BigRational>,
    eps: &BigRational,
    grid: &GridSpec,
) -> Result<(f64, BigRational)> {
    check_oracle_dim(p)?;
    let members = grid.ball_members(p, eps)?;
    let mut best_top: Option<BigRational> = None;
    for m in &members {
        let top = m.top_value();
        if best_top.as_ref().is_none_or(|b| top < *b) {
            best_top = Some(top);
        }
    }
    let top = best_top.expect("the center itself lies in its own ball");
    Ok((-Scalar::log2(&top), top))
}

/// Exhaustive probabilistic feasibility: search the mixing-state grid for a
/// witness, trying every arrangement of the mixing state's eigenvalues
/// (its basis alignment against the target is free). A `true` answer
/// carries a genuine witness; `false` only means the grid holds none.
pub fn oracle_probabilistic_grid(
    source: &Spectrum<BigRational>,
    target: &Spectrum<BigRational>,
    eps: &BigRational,
    grid: &GridSpec,
) -> Result<bool> {
    check_oracle_dim(source)?;
    let keep = rone() - eps;
    let target_values = target.dense_values();
    for xi_values in grid.simplex_tuples() {
        let mix: Vec<BigRational> = target_values
            .iter()
            .zip(&xi_values)
            .map(|(t, x)| t * &keep + x * eps)
            .collect();
        let mix = Spectrum::from_values(&mix, Some(source.ambient_dim().clone()))?;
        if source.majorizes(&mix)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exact probabilistic feasibility by Fourier-Motzkin elimination.
///
/// A mixing state exists iff the polytope
/// `t >= 0, sum t = eps, sum_{i in S} ((1-eps) q_i + t_i) <= prefix_{|S|}(p)`
/// over all proper subsets `S` is nonempty; the subset constraints encode
/// majorization of the sorted mixture by `p`.
pub fn oracle_probabilistic_exact(
    source: &Spectrum<BigRational>,
    target: &Spectrum<BigRational>,
    eps: &BigRational,
) -> Result<bool> {
    check_oracle_dim(source)?;
    if source.ambient_dim() != target.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: source.ambient_dim().to_string(),
            right: target.ambient_dim().to_string(),
        });
    }
    let dim = source.dense_values().len();
    let keep = rone() - eps;
    let p_values = source.dense_values();
    let q_scaled: Vec<BigRational> =
        target.dense_values().iter().map(|v| v * &keep).collect();
    let mut prefix = Vec::with_capacity(dim + 1);
    let mut acc = rzero();
    prefix.push(acc.clone());
    for v in &p_values {
        acc = &acc + v;
        prefix.push(acc.clone());
    }

    // Variables t_0 .. t_{dim-2}; t_{dim-1} = eps - sum(others) substituted.
    // Inequalities are stored as (coeffs, bound) meaning coeffs . t <= bound.
    let vars = dim - 1;
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    // t_i >= 0 for i < dim-1.
    for i in 0..vars {
        let mut c = vec![rzero(); vars];
        c[i] = -rone();
        rows.push((c, rzero()));
    }
    // t_{dim-1} >= 0: sum t_i <= eps.
    rows.push((vec![rone(); vars], eps.clone()));
    // Subset constraints over all nonempty proper subsets.
    for mask in 1..((1usize << dim) - 1) {
        let size = mask.count_ones() as usize;
        let mut c = vec![rzero(); vars];
        let mut bound = prefix[size].clone();
        for (i, q) in q_scaled.iter().enumerate().take(dim) {
            if mask & (1 << i) != 0 {
                bound = &bound - q;
            }
        }
        let last_in = mask & (1 << (dim - 1)) != 0;
        for (i, item) in c.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *item = &*item + rone();
            }
        }
        if last_in {
            // t_{dim-1} = eps - sum t_i contributes eps on the bound side.
            bound = &bound - eps;
            for item in c.iter_mut() {
                *item = &*item - rone();
            }
        }
        rows.push((c, bound));
    }

    Ok(fourier_motzkin_feasible(rows, vars))
}

fn fourier_motzkin_feasible(
    mut rows: Vec<(Vec<BigRational>, BigRational)>,
    vars: usize,
) -> bool {
    for var in (0..vars).rev() {
        let mut lower: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let mut upper: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let mut keep: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        for (mut c, b) in rows {
            let coef = c[var].clone();
            if Zero::is_zero(&coef) {
                c.truncate(var);
                keep.push((c, b));
            } else {
                // Normalize so the variable's coefficient is +-1.
                let inv = Signed::abs(&coef);
                let c_norm: Vec<BigRational> =
                    c.iter().take(var).map(|x| x / &inv).collect();
                let b_norm = &b / &inv;
                if coef.is_positive() {
                    upper.push((c_norm, b_norm));
                } else {
                    lower.push((c_norm, b_norm));
                }
            }
        }
        let mut next = keep;
        for (cl, bl) in &lower {
            for (cu, bu) in &upper {
                // -x + cl.t <= bl and x + cu.t <= bu combine to
                // (cl + cu).t <= bl + bu.
                let c: Vec<BigRational> =
                    cl.iter().zip(cu).map(|(a, b)| a + b).collect();
                let b = bl + bu;
                next.push((c, b));
            }
        }
        next.sort();
        next.dedup();
        rows = next;
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

/// Exhaustive minimal test weight: every full-prefix candidate plus its
/// exact fractional boundary, minimized directly.
pub fn oracle_test_weight(p: &Spectrum<BigRational>, eps: &BigRational) -> Result<BigRational> {
    use num_traits::ToPrimitive;
    let dim = p.ambient_dim().to_usize().filter(|&d| d <= MAX_TEST_WEIGHT_DIM).ok_or_else(|| {
        Error::DimensionTooLarge { dim: p.ambient_dim().to_string(), max: MAX_TEST_WEIGHT_DIM }
    })?;
    let _ = dim;
    let target = rone() - eps;
    let values = p.dense_values();
    let mut best: Option<BigRational> = None;
    let mut cum = rzero();
    for k in 0..=values.len() {
        let candidate = if cum >= target {
            Some(BigRational::from_integer(BigInt::from(k)))
        } else if k < values.len() && !Zero::is_zero(&values[k]) {
            let need = &target - &cum;
            if need <= values[k] {
                Some(BigRational::from_integer(BigInt::from(k)) + need / &values[k])
            } else {
                None
            }
        } else {
            None
        };
        if let Some(w) = candidate {
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
        if k < values.len() {
            cum = &cum + &values[k];
        }
    }
    best.ok_or_else(|| Error::Domain("no feasible test weight".into()))
}

fn check_oracle_dim(p: &Spectrum<BigRational>) -> Result<()> {
    use num_traits::ToPrimitive;
    match p.ambient_dim().to_usize() {
        Some(d) if d <= MAX_ORACLE_DIM => Ok(()),
        _ => Err(Error::DimensionTooLarge {
            dim: p.ambient_dim().to_string(),
            max: MAX_ORACLE_DIM,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smoothing::{flattest, min_test_weight, smooth_min_entropy, steepest};
    use crate::transforms::probabilistic_possible;

    fn spec(values: &[(u64, u64)]) -> Spectrum<BigRational> {
        let v: Vec<BigRational> = values.iter().map(|&(n, d)| rat(n, d)).collect();
        Spectrum::from_values(&v, None).unwrap()
    }

    #[test]
    fn grid_counts() {
        let g = GridSpec::new(3, 8).unwrap();
        // C(8 + 2, 2) = 45 compositions.
        assert_eq!(g.simplex_points().len(), 45);
        assert!(GridSpec::new(5, 8).is_err());
    }

    #[test]
    fn oracle_confirms_smooth_min_entropy() {
        let p = spec(&[(3, 4), (1, 4)]);
        let eps = rat(1, 4);
        let grid = GridSpec::new(2, 64).unwrap();
        let (oracle_value, oracle_top) = oracle_smooth_min_entropy(&p, &eps, &grid).unwrap();
        assert_eq!(oracle_value, 1.0);
        assert_eq!(oracle_top, rat(1, 2));
        assert_eq!(smooth_min_entropy(&p, &eps).unwrap(), 1.0);

        // eps = 0 collapses to the exact min-entropy.
        let (oracle_value, _) = oracle_smooth_min_entropy(&p, &rat(0, 1), &grid).unwrap();
        assert_eq!(oracle_value, p.entropies().h_min);
    }

    #[test]
    fn oracle_confirms_padded_flat_waterfill() {
        // flat(2) on a 4-dimensional space, smoothed at 1/8.
        let p = Spectrum::<BigRational>::flat(
            &num_bigint::BigUint::from(2u32),
            num_bigint::BigUint::from(4u32),
        )
        .unwrap();
        let eps = rat(1, 8);
        let grid = GridSpec::new(4, 16).unwrap();
        let (_, oracle_top) = oracle_smooth_min_entropy(&p, &eps, &grid).unwrap();
        let impl_top = flattest(&p, &eps).unwrap().top_value();
        // Implementation optimizes over the continuum, so it can only do
        // better, and by at most one grid step.
        assert!(impl_top <= oracle_top);
        assert!(oracle_top.sub(&impl_top) <= rat(1, 16));
    }

    #[test]
    fn extremality_against_full_grid() {
        let p = spec(&[(1, 2), (5, 16), (3, 16)]);
        let eps = rat(1, 8);
        let grid = GridSpec::new(3, 16).unwrap();
        let s = steepest(&p, &eps).unwrap();
        let f = flattest(&p, &eps).unwrap();
        for member in grid.ball_members(&p, &eps).unwrap() {
            assert!(s.majorizes(&member).unwrap(), "steepest beaten by {member:?}");
            assert!(member.majorizes(&f).unwrap(), "flattest beats {member:?}");
        }
    }

    #[test]
    fn probabilistic_oracles_agree_with_filler() {
        let rho = spec(&[(1, 2), (1, 2)]);
        let sigma = spec(&[(3, 4), (1, 4)]);
        let grid = GridSpec::new(2, 32).unwrap();
        for (eps, expected) in [(rat(1, 4), false), (rat(1, 3), true)] {
            let filler = probabilistic_possible(&rho, &sigma, &eps).unwrap().possible;
            assert_eq!(filler, expected);
            assert_eq!(oracle_probabilistic_exact(&rho, &sigma, &eps).unwrap(), expected);
            let grid_answer = oracle_probabilistic_grid(&rho, &sigma, &eps, &grid).unwrap();
            if grid_answer {
                assert!(filler);
            }
            if expected {
                assert!(grid_answer, "grid holds the witness at eps = {eps}");
            }
        }
    }

    #[test]
    fn test_weight_oracle_matches_greedy() {
        let p = spec(&[(1, 2), (3, 10), (1, 5)]);
        for eps in [rat(0, 1), rat(1, 10), rat(1, 5), rat(1, 2)] {
            let greedy = min_test_weight(&p, &eps).unwrap().test_weight;
            let oracle = oracle_test_weight(&p, &eps).unwrap();
            assert_eq!(greedy, oracle, "eps = {eps}");
        }
        // Flat input closed form: weight = (1 - eps) * support.
        let f = Spectrum::<BigRational>::flat(
            &num_bigint::BigUint::from(8u32),
            num_bigint::BigUint::from(8u32),
        )
        .unwrap();
        let eps = rat(1, 4);
        assert_eq!(oracle_test_weight(&f, &eps).unwrap(), rat(6, 1));
    }
}
