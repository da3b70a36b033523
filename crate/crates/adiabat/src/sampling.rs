//! Deterministic random instance generators for the randomized suites.
//!
//! Eigenvalues are multiples of `1/denominator`, so every generated
//! spectrum is exact in rational mode and free of boundary-tie noise.

use num_bigint::BigUint;
use rand::Rng;

use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

/// Random spectrum with the given support dimension, eigenvalues on the
/// `1/denominator` grid, and a random ambient slack of zero padding.
pub fn random_spectrum<T: Scalar, R: Rng>(
    rng: &mut R,
    dim: usize,
    denominator: u64,
    max_ambient_slack: u64,
) -> Spectrum<T> {
    assert!(dim >= 1 && denominator >= 1);
    // Random composition of `denominator` units over `dim` slots.
    let mut counts = vec![0u64; dim];
    for _ in 0..denominator {
        counts[rng.gen_range(0..dim)] += 1;
    }
    let values: Vec<T> = counts.iter().map(|&c| T::from_ratio(c, denominator)).collect();
    let slack = if max_ambient_slack == 0 { 0 } else { rng.gen_range(0..=max_ambient_slack) };
    let ambient = BigUint::from(dim as u64 + slack);
    Spectrum::from_values(&values, Some(ambient)).expect("grid compositions are normalized")
}

/// Random tolerance on the same grid, strictly below one.
pub fn random_eps<T: Scalar, R: Rng>(rng: &mut R, denominator: u64) -> T {
    T::from_ratio(rng.gen_range(0..denominator), denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_spectra_are_canonical_and_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let s: Spectrum<BigRational> = random_spectrum(&mut rng, 4, 24, 3);
            assert_eq!(s.total_mass(), BigRational::from_ratio(1, 1));
            assert!(s.support_size() <= *s.ambient_dim());
        }
    }

    #[test]
    fn same_seed_same_instances() {
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        let sa: Spectrum<BigRational> = random_spectrum(&mut a, 3, 16, 2);
        let sb: Spectrum<BigRational> = random_spectrum(&mut b, 3, 16, 2);
        assert_eq!(sa, sb);
    }
}
