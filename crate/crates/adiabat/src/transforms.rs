//! Decision procedures for the transformation orders: exact majorization,
//! the three equivalent smoothings, and probabilistic transformations.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::smoothing::{
    check_eps_closed, flattest, flattest_top, min_test_weight, saturating_eps_add, scale_runs,
    steepest,
};
use crate::spectrum::{NormCheck, Spectrum};

/// Number of split points the split-smoothing sweep uses by default.
pub const DEFAULT_SPLIT_GRID: usize = 10;

/// How a transformation query tolerates its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformMode {
    /// Plain majorization, no error.
    Exact,
    /// Smoothing applied to the input state only.
    SmoothInput,
    /// Smoothing applied to the target state only.
    SmoothOutput,
    /// Budget swept over a grid of input/output splits.
    SmoothSplit { grid_points: usize },
    /// Target reached exactly with probability `1 - eps`, arbitrary
    /// remainder otherwise.
    Probabilistic,
}

/// A single transformability question.
#[derive(Debug, Clone)]
pub struct TransformQuery<T: Scalar> {
    pub source: Spectrum<T>,
    pub target: Spectrum<T>,
    pub epsilon: T,
    pub mode: TransformMode,
}

/// Evidence attached to a decision.
#[derive(Debug, Clone)]
pub enum Certificate<T: Scalar> {
    /// Smoothed input/target pair whose exact majorization witnesses the
    /// decision.
    Smoothed { source: Spectrum<T>, target: Spectrum<T> },
    /// Mixing state completing the probabilistic transformation. Absent at
    /// `eps = 0`, where any state works.
    Mixing { xi: Option<Spectrum<T>> },
}

/// Decision plus certificate; `violated_prefix` pinpoints the first failing
/// majorization constraint when impossible.
#[derive(Debug, Clone)]
pub struct TransformReport<T: Scalar> {
    pub possible: bool,
    pub certificate: Option<Certificate<T>>,
    pub violated_prefix: Option<BigUint>,
}

/// Decide a transformation query.
pub fn decide<T: Scalar>(query: &TransformQuery<T>) -> Result<TransformReport<T>> {
    match query.mode {
        TransformMode::Exact => {
            let violation = query.source.majorization_violation(&query.target)?;
            Ok(TransformReport {
                possible: violation.is_none(),
                certificate: violation.is_none().then(|| Certificate::Smoothed {
                    source: query.source.clone(),
                    target: query.target.clone(),
                }),
                violated_prefix: violation,
            })
        }
        TransformMode::SmoothInput | TransformMode::SmoothOutput | TransformMode::SmoothSplit { .. } => {
            smooth_possible(&query.source, &query.target, &query.epsilon, query.mode)
        }
        TransformMode::Probabilistic => {
            probabilistic_possible(&query.source, &query.target, &query.epsilon)
        }
    }
}

/// Smooth transformability: does some pair of ball members, one around each
/// endpoint with budgets summing to `eps`, stand in exact majorization?
///
/// The three smoothing placements decide the same relation; each is
/// implemented directly so their agreement can be tested rather than
/// assumed.
pub fn smooth_possible<T: Scalar>(
    source: &Spectrum<T>,
    target: &Spectrum<T>,
    eps: &T,
    mode: TransformMode,
) -> Result<TransformReport<T>> {
    check_eps_closed(eps)?;
    match mode {
        TransformMode::SmoothInput => {
            let smoothed = steepest(source, eps)?;
            report_from_pair(smoothed, target.clone())
        }
        TransformMode::SmoothOutput => {
            let smoothed = flattest(target, eps)?;
            report_from_pair(source.clone(), smoothed)
        }
        TransformMode::SmoothSplit { grid_points } => {
            let points = grid_points.max(1);
            let mut last_violation = None;
            for i in (0..=points).rev() {
                // eps_in from the full budget down to zero.
                let eps_in = eps.mul(&T::from_ratio(i as u64, points as u64));
                let eps_out = eps.sub(&eps_in);
                let s = steepest(source, &eps_in)?;
                let f = flattest(target, &eps_out)?;
                match s.majorization_violation(&f)? {
                    None => {
                        return Ok(TransformReport {
                            possible: true,
                            certificate: Some(Certificate::Smoothed { source: s, target: f }),
                            violated_prefix: None,
                        })
                    }
                    Some(v) if i == points => last_violation = Some(v),
                    Some(_) => {}
                }
            }
            Ok(TransformReport {
                possible: false,
                certificate: None,
                violated_prefix: last_violation,
            })
        }
        TransformMode::Exact => smooth_possible(source, target, &T::zero(), TransformMode::SmoothInput),
        TransformMode::Probabilistic => probabilistic_possible(source, target, eps),
    }
}

fn report_from_pair<T: Scalar>(
    source: Spectrum<T>,
    target: Spectrum<T>,
) -> Result<TransformReport<T>> {
    let violation = source.majorization_violation(&target)?;
    Ok(TransformReport {
        possible: violation.is_none(),
        certificate: violation
            .is_none()
            .then(|| Certificate::Smoothed { source, target }),
        violated_prefix: violation,
    })
}

/// Probabilistic transformability: does a mixing state `xi` exist with
/// `source` majorizing `(1 - eps) * target + eps * xi`?
///
/// The candidate mix water-fills the budget onto the smallest entries of
/// the scaled target (implicit zeros included), which is majorized by every
/// other achievable mix; the exhaustive oracle cross-checks this.
pub fn probabilistic_possible<T: Scalar>(
    source: &Spectrum<T>,
    target: &Spectrum<T>,
    eps: &T,
) -> Result<TransformReport<T>> {
    check_eps_closed(eps)?;
    if source.ambient_dim() != target.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: source.ambient_dim().to_string(),
            right: target.ambient_dim().to_string(),
        });
    }
    if eps.approx_cmp(&T::zero()) != Ordering::Greater {
        let violation = source.majorization_violation(target)?;
        return Ok(TransformReport {
            possible: violation.is_none(),
            certificate: violation.is_none().then(|| Certificate::Mixing { xi: None }),
            violated_prefix: violation,
        });
    }

    let keep = T::one().sub(eps);
    let scaled = scale_runs(target, &keep);
    let ambient = target.ambient_dim().clone();

    // Water-fill level over the smallest entries (and the zero block).
    let zero_count = &ambient - target.support_size();
    let mut level = T::zero();
    let mut filled_count = BigUint::zero();
    {
        let mut cum_mass = T::zero();
        let mut cum_count = zero_count.clone();
        let mut resolved = false;
        for run in scaled.iter().rev() {
            if !cum_count.is_zero() {
                let fillable = run.value.mul_nat(&cum_count).sub(&cum_mass);
                if fillable.approx_cmp(eps) != Ordering::Less {
                    level = cum_mass.add(eps).div_nat(&cum_count);
                    filled_count = cum_count.clone();
                    resolved = true;
                    break;
                }
            }
            cum_mass = cum_mass.add(&run.value.mul_nat(&run.multiplicity));
            cum_count += &run.multiplicity;
        }
        if !resolved {
            // The fill engulfs every entry: the mix is uniform.
            level = T::recip_nat(&ambient);
            filled_count = ambient.clone();
        }
    }

    let support = target.support_size();
    let fill_start = &support + &zero_count - &filled_count;
    let mut mix_entries: Vec<(T, BigUint)> = Vec::with_capacity(scaled.len() + 1);
    let mut xi_entries: Vec<(T, BigUint)> = Vec::new();
    let mut seen = BigUint::zero();
    for run in &scaled {
        let run_start = seen.clone();
        let run_end = &run_start + &run.multiplicity;
        seen = run_end.clone();
        let hi = run_end.clone().min(fill_start.clone());
        if run_start < hi {
            mix_entries.push((run.value.clone(), &hi - &run_start));
        }
        if run_end > fill_start {
            // Filled portion of this run: raised to the water level.
            let lo = run_start.max(fill_start.clone());
            let count = &run_end - &lo;
            mix_entries.push((level.clone(), count.clone()));
            xi_entries.push((level.sub(&run.value).div(eps), count));
        }
    }
    if !zero_count.is_zero() {
        mix_entries.push((level.clone(), zero_count.clone()));
        xi_entries.push((level.div(eps), zero_count));
    }
    let mix = Spectrum::canonical(mix_entries, ambient.clone(), NormCheck::Skip)?;
    let xi = Spectrum::canonical(xi_entries, ambient, NormCheck::Skip)?;

    let violation = source.majorization_violation(&mix)?;
    Ok(TransformReport {
        possible: violation.is_none(),
        certificate: violation.is_none().then(|| Certificate::Mixing { xi: Some(xi) }),
        violated_prefix: violation,
    })
}

/// Closed-form entropies characterising probabilistic transformations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilisticEntropies {
    /// `H_min + log2(1 - eps)`.
    pub s_minus: f64,
    /// `H_0`, independent of the error tolerance.
    pub s_plus: f64,
}

pub fn probabilistic_entropies<T: Scalar>(
    p: &Spectrum<T>,
    eps: &T,
) -> Result<ProbabilisticEntropies> {
    crate::smoothing::check_eps_half_open(eps)?;
    let e = p.entropies();
    let keep = T::one().sub(eps);
    Ok(ProbabilisticEntropies { s_minus: e.h_min + keep.log2(), s_plus: e.h_zero })
}

/// Outcome of evaluating the necessary/sufficient entropy conditions on a
/// pair of states.
#[derive(Debug, Clone, Default)]
pub struct NecSuffReport {
    /// The strict sufficient condition applied to this pair.
    pub forward_triggered: bool,
    /// When triggered, the implied transformation was possible.
    pub forward_holds: bool,
    /// The pair was transformable, so monotonicity applied.
    pub monotone_triggered: bool,
    /// When triggered, the entropy inequalities held at every delta.
    pub monotone_holds: bool,
    pub violations: Vec<String>,
}

impl NecSuffReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluate both implications relating the smooth entropies to smooth
/// transformability on a single pair:
/// strict entropy dominance implies transformability, and transformability
/// implies entropy monotonicity at every shifted tolerance.
pub fn check_necsuff<T: Scalar>(
    x: &Spectrum<T>,
    y: &Spectrum<T>,
    eps: &T,
    eps2: &T,
    deltas: &[T],
) -> Result<NecSuffReport> {
    let mut report = NecSuffReport::default();

    // Forward: S_+^{eps}(x) < S_-^{eps2}(y) implies x -> y at eps + eps2.
    // Compared tolerance-free: log2(w) < -log2(c) iff w * c < 1.
    let w_x = min_test_weight(x, eps)?.test_weight;
    let c_y = flattest_top(y, eps2)?;
    if w_x.mul(&c_y).approx_cmp(&T::one()) == Ordering::Less {
        report.forward_triggered = true;
        let combined = saturating_eps_add(eps, eps2);
        let decision = smooth_possible(x, y, &combined, TransformMode::SmoothInput)?;
        report.forward_holds = decision.possible;
        if !decision.possible {
            report
                .violations
                .push("entropy dominance did not yield a transformation".into());
        }
    }

    // Monotone: x -> y at eps implies S_-^d(x) <= S_-^{d+eps}(y) and
    // S_+^{d+eps}(x) <= S_+^d(y) for every delta d.
    let transformable = smooth_possible(x, y, eps, TransformMode::SmoothInput)?.possible;
    if transformable {
        report.monotone_triggered = true;
        report.monotone_holds = true;
        for delta in deltas {
            let shifted = saturating_eps_add(delta, eps);
            let top_x = flattest_top(x, delta)?;
            let top_y = flattest_top(y, &shifted)?;
            // S_-^d(x) <= S_-^{d+eps}(y) iff top_x >= top_y.
            if top_x.approx_cmp(&top_y) == Ordering::Less {
                report.monotone_holds = false;
                report.violations.push(format!(
                    "min-entropy monotonicity failed at delta = {delta}"
                ));
            }
            let w_x_shift = min_test_weight(x, &shifted)?.test_weight;
            let w_y = min_test_weight(y, delta)?.test_weight;
            if w_x_shift.approx_cmp(&w_y) == Ordering::Greater {
                report.monotone_holds = false;
                report.violations.push(format!(
                    "max-entropy monotonicity failed at delta = {delta}"
                ));
            }
        }
    }
    Ok(report)
}

/// Configuration for the randomized axiom suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_dim: usize,
    /// Denominator used for random rational eigenvalues and tolerances.
    pub denominator: u64,
    /// Harness self-test: corrupt the composed error in the transitivity
    /// check so the suite must report counterexamples.
    pub inject_a3_sign_bug: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            trials: 200,
            max_dim: 5,
            denominator: 24,
            inject_a3_sign_bug: false,
        }
    }
}

/// One named check inside a suite report.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: String,
    pub trials: usize,
    /// Trials where the property's premise held.
    pub effective_trials: usize,
    pub counterexamples: Vec<String>,
}

impl AxiomCheck {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub checks: Vec<AxiomCheck>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(AxiomCheck::pass)
    }
}

const MAX_COUNTEREXAMPLES: usize = 5;

fn push_counterexample(check: &mut AxiomCheck, message: String) {
    if check.counterexamples.len() < MAX_COUNTEREXAMPLES {
        check.counterexamples.push(message);
    }
}

/// Smallest grid multiple of `1/denominator` at which the smooth
/// transformation succeeds, if any.
fn min_feasible_eps<T: Scalar>(
    source: &Spectrum<T>,
    target: &Spectrum<T>,
    denominator: u64,
) -> Result<Option<T>> {
    // Decisions are monotone in eps, so binary search over the grid.
    let mut lo = 0u64;
    let mut hi = denominator;
    let at = |k: u64| T::from_ratio(k, denominator);
    if !smooth_possible(source, target, &at(hi), TransformMode::SmoothInput)?.possible {
        return Ok(None);
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if smooth_possible(source, target, &at(mid), TransformMode::SmoothInput)?.possible {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(at(lo)))
}

/// Randomized checks of the error-tolerant order axioms: reflexivity,
/// error-monotonicity, additive transitivity (with the strictly smaller
/// composition error in probabilistic mode), and consistent composition.
pub fn run_adiabatic_axiom_suite<T: Scalar>(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut a1 = new_check("A1 reflexivity", config.trials);
    let mut a2 = new_check("A2 error monotonicity", config.trials);
    let mut a3 = new_check("A3 additive transitivity", config.trials);
    let mut a4 = new_check("A4 consistent composition", config.trials);

    for trial in 0..config.trials {
        let dim = rng.gen_range(2..=config.max_dim);
        let x: Spectrum<T> = crate::sampling::random_spectrum(&mut rng, dim, config.denominator, 2);
        let y: Spectrum<T> = crate::sampling::random_spectrum(&mut rng, dim, config.denominator, 2);
        let z: Spectrum<T> = crate::sampling::random_spectrum(&mut rng, dim, config.denominator, 2);
        let ambient = x
            .ambient_dim()
            .clone()
            .max(y.ambient_dim().clone())
            .max(z.ambient_dim().clone());
        let x = x.pad_to(ambient.clone()).unwrap();
        let y = y.pad_to(ambient.clone()).unwrap();
        let z = z.pad_to(ambient).unwrap();
        let eps = crate::sampling::random_eps::<T, _>(&mut rng, config.denominator);

        // A1: every state reaches itself at any tolerance, in every mode.
        a1.effective_trials += 1;
        let refl_smooth = smooth_possible(&x, &x, &eps, TransformMode::SmoothInput)?.possible;
        let refl_prob = probabilistic_possible(&x, &x, &eps)?.possible;
        if !refl_smooth || !refl_prob {
            push_counterexample(&mut a1, format!("trial {trial}: x = {x:?}"));
        }

        // A2: enlarging the tolerance never disables a transformation.
        let eps_hi = saturating_eps_add(&eps, &crate::sampling::random_eps::<T, _>(&mut rng, config.denominator));
        let lo_smooth = smooth_possible(&x, &y, &eps, TransformMode::SmoothInput)?.possible;
        let lo_prob = probabilistic_possible(&x, &y, &eps)?.possible;
        if lo_smooth || lo_prob {
            a2.effective_trials += 1;
            let hi_smooth = smooth_possible(&x, &y, &eps_hi, TransformMode::SmoothInput)?.possible;
            let hi_prob = probabilistic_possible(&x, &y, &eps_hi)?.possible;
            if (lo_smooth && !hi_smooth) || (lo_prob && !hi_prob) {
                push_counterexample(&mut a2, format!("trial {trial}: eps = {eps}, eps' = {eps_hi}"));
            }
        }

        // A3: compose x -> y at its minimal grid tolerance with y -> z at
        // its own; the sum must cover x -> z.
        if let (Some(e1), Some(e2)) = (
            min_feasible_eps(&x, &y, config.denominator)?,
            min_feasible_eps(&y, &z, config.denominator)?,
        ) {
            a3.effective_trials += 1;
            let combined = if config.inject_a3_sign_bug {
                // Deliberately wrong composition: subtract instead of add.
                e1.sub(&e2).abs()
            } else {
                saturating_eps_add(&e1, &e2)
            };
            if !smooth_possible(&x, &z, &combined, TransformMode::SmoothInput)?.possible {
                push_counterexample(
                    &mut a3,
                    format!("trial {trial}: e1 = {e1}, e2 = {e2}, combined = {combined}"),
                );
            }
            // Probabilistic composition supports the strictly smaller error
            // e1 + e2 - e1*e2.
            let p1 = probabilistic_possible(&x, &y, &e1)?.possible;
            let p2 = probabilistic_possible(&y, &z, &e2)?.possible;
            if p1 && p2 && !config.inject_a3_sign_bug {
                let prob_combined = e1.add(&e2).sub(&e1.mul(&e2));
                if !probabilistic_possible(&x, &z, &prob_combined)?.possible {
                    push_counterexample(
                        &mut a3,
                        format!("trial {trial}: probabilistic composition at {prob_combined}"),
                    );
                }
            }
        }

        // A4: tensoring a bystander preserves transformability.
        if let Some(e1) = min_feasible_eps(&x, &y, config.denominator)? {
            a4.effective_trials += 1;
            let xz = x.tensor(&z)?;
            let yz = y.tensor(&z)?;
            if !smooth_possible(&xz, &yz, &e1, TransformMode::SmoothInput)?.possible {
                push_counterexample(&mut a4, format!("trial {trial}: eps = {e1}"));
            }
            if probabilistic_possible(&x, &y, &e1)?.possible
                && !probabilistic_possible(&xz, &yz, &e1)?.possible
            {
                push_counterexample(&mut a4, format!("trial {trial}: probabilistic at {e1}"));
            }
        }
    }

    Ok(SuiteReport { checks: vec![a1, a2, a3, a4] })
}

/// Randomized sweep of [`check_necsuff`] over random pairs and tolerances.
pub fn run_necsuff_suite<T: Scalar>(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut check = new_check("necessary/sufficient entropy conditions", config.trials);
    let deltas = [T::zero(), T::from_ratio(1, 10)];
    for trial in 0..config.trials {
        let dim = rng.gen_range(2..=config.max_dim);
        let x: Spectrum<T> = crate::sampling::random_spectrum(&mut rng, dim, config.denominator, 1);
        let y: Spectrum<T> = crate::sampling::random_spectrum(&mut rng, dim, config.denominator, 1);
        let (x, y) = Spectrum::pad_pair(&x, &y);
        let eps_choices = [T::zero(), T::from_ratio(1, 20), T::from_ratio(1, 5)];
        let eps = eps_choices[rng.gen_range(0..eps_choices.len())].clone();
        let eps2 = eps_choices[rng.gen_range(0..eps_choices.len())].clone();
        let report = check_necsuff(&x, &y, &eps, &eps2, &deltas)?;
        if report.forward_triggered || report.monotone_triggered {
            check.effective_trials += 1;
        }
        if !report.clean() {
            push_counterexample(
                &mut check,
                format!("trial {trial}: {:?}", report.violations),
            );
        }
    }
    Ok(SuiteReport { checks: vec![check] })
}

fn new_check(name: &str, trials: usize) -> AxiomCheck {
    AxiomCheck { name: name.into(), trials, effective_trials: 0, counterexamples: Vec::new() }
}

/// Recompute a report's certificate and confirm it proves the decision.
pub fn verify_report<T: Scalar>(query: &TransformQuery<T>, report: &TransformReport<T>) -> Result<bool> {
    if !report.possible {
        return Ok(report.violated_prefix.is_some() || matches!(query.mode, TransformMode::Exact));
    }
    match &report.certificate {
        Some(Certificate::Smoothed { source, target }) => {
            if !source.majorizes(target)? {
                return Ok(false);
            }
            let d_in = query.source.trace_distance(source)?;
            let d_out = query.target.trace_distance(target)?;
            Ok(d_in.add(&d_out).approx_cmp(&query.epsilon) != Ordering::Greater
                || query.mode == TransformMode::Exact)
        }
        Some(Certificate::Mixing { xi }) => {
            let mix = match xi {
                Some(xi) => anti_aligned_mix(&query.target, xi, &query.epsilon)?,
                None => query.target.clone(),
            };
            query.source.majorizes(&mix)
        }
        None => Ok(false),
    }
}

/// Pointwise mixture `(1 - eps) * target + eps * xi` with `xi` aligned
/// anti-monotonically against the target (largest mixing weight onto the
/// target's smallest eigenvalue), the alignment the water-fill certificate
/// is built for.
pub fn anti_aligned_mix<T: Scalar>(
    target: &Spectrum<T>,
    xi: &Spectrum<T>,
    eps: &T,
) -> Result<Spectrum<T>> {
    if target.ambient_dim() != xi.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: target.ambient_dim().to_string(),
            right: xi.ambient_dim().to_string(),
        });
    }
    let keep = T::one().sub(eps);
    let ambient = target.ambient_dim().clone();
    // Descending segments of the target: runs then the zero tail.
    let mut desc: Vec<(T, BigUint)> = target
        .runs()
        .iter()
        .map(|r| (r.value.mul(&keep), r.multiplicity.clone()))
        .collect();
    let desc_zeros = &ambient - target.support_size();
    if !desc_zeros.is_zero() {
        desc.push((T::zero(), desc_zeros));
    }
    // Ascending segments of xi: the zero tail first, then runs reversed.
    let mut asc: Vec<(T, BigUint)> = Vec::with_capacity(xi.runs().len() + 1);
    let asc_zeros = &ambient - xi.support_size();
    if !asc_zeros.is_zero() {
        asc.push((T::zero(), asc_zeros));
    }
    for r in xi.runs().iter().rev() {
        asc.push((r.value.mul(eps), r.multiplicity.clone()));
    }

    let mut entries: Vec<(T, BigUint)> = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    let mut left_i = desc.first().map(|s| s.1.clone()).unwrap_or_default();
    let mut left_j = asc.first().map(|s| s.1.clone()).unwrap_or_default();
    while i < desc.len() && j < asc.len() {
        let count = left_i.clone().min(left_j.clone());
        entries.push((desc[i].0.add(&asc[j].0), count.clone()));
        left_i -= &count;
        left_j -= &count;
        if left_i.is_zero() {
            i += 1;
            if let Some(s) = desc.get(i) {
                left_i = s.1.clone();
            }
        }
        if left_j.is_zero() {
            j += 1;
            if let Some(s) = asc.get(j) {
                left_j = s.1.clone();
            }
        }
    }
    Spectrum::canonical(entries, ambient, NormCheck::Skip)
}
