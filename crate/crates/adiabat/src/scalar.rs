//! Numeric backbone: a scalar abstraction over `f64`-with-tolerance and
//! exact `BigRational` arithmetic.
//!
//! Every spectrum operation is generic over [`Scalar`]. The float
//! implementation compares prefix sums through a single global tolerance
//! (default `1e-12`); the rational implementation compares exactly and is
//! what the oracles and the large-`n` scans run on.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default comparison tolerance for float mode.
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-12;

/// Largest tolerance float mode accepts.
pub const MAX_FLOAT_TOLERANCE: f64 = 1e-6;

static FLOAT_TOLERANCE_BITS: AtomicU64 = AtomicU64::new(DEFAULT_FLOAT_TOLERANCE.to_bits());

/// Current global tolerance used by `f64` comparisons.
pub fn float_tolerance() -> f64 {
    f64::from_bits(FLOAT_TOLERANCE_BITS.load(AtomicOrdering::Relaxed))
}

/// Install a new global tolerance for `f64` comparisons.
pub fn set_float_tolerance(tol: f64) -> Result<()> {
    if !(0.0..=MAX_FLOAT_TOLERANCE).contains(&tol) {
        return Err(Error::Domain(format!(
            "float tolerance {tol} outside [0, {MAX_FLOAT_TOLERANCE}]"
        )));
    }
    FLOAT_TOLERANCE_BITS.store(tol.to_bits(), AtomicOrdering::Relaxed);
    Ok(())
}

/// Which arithmetic a computation runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumericKind {
    Float64,
    Rational,
}

/// Numeric mode descriptor: float-with-tolerance or exact rationals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericMode {
    pub kind: NumericKind,
    /// Comparison tolerance; ignored in rational mode.
    pub tolerance: f64,
}

impl NumericMode {
    pub fn float_default() -> Self {
        NumericMode { kind: NumericKind::Float64, tolerance: DEFAULT_FLOAT_TOLERANCE }
    }

    pub fn rational() -> Self {
        NumericMode { kind: NumericKind::Rational, tolerance: 0.0 }
    }

    /// Validate the descriptor and, in float mode, install its tolerance
    /// as the global comparison tolerance.
    pub fn install(&self) -> Result<()> {
        match self.kind {
            NumericKind::Float64 => set_float_tolerance(self.tolerance),
            NumericKind::Rational => Ok(()),
        }
    }
}

/// Scalar arithmetic required by the spectrum machinery.
///
/// `approx_cmp` is the one comparison the rest of the crate uses for
/// ordering eigenvalues and prefix sums; in float mode values within the
/// global tolerance compare `Equal`.
pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    /// True when arithmetic is exact and comparisons carry no tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: u64, den: u64) -> Self;
    fn from_nat(n: &BigUint) -> Self;
    /// `1 / n` for `n > 0`.
    fn recip_nat(n: &BigUint) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn mul_nat(&self, n: &BigUint) -> Self;
    fn div_nat(&self, n: &BigUint) -> Self;
    fn abs(&self) -> Self;

    /// Tolerance-aware comparison (exact in rational mode).
    fn approx_cmp(&self, rhs: &Self) -> Ordering;
    /// Raw comparison of magnitudes, tolerance-free (used by compensated
    /// summation, which must see the actual float ordering).
    fn raw_abs_cmp(&self, rhs: &Self) -> Ordering;

    /// `floor(self / rhs)` for positive operands, as an integer.
    fn div_floor_nat(&self, rhs: &Self) -> BigUint;
    /// `ceil(self)` for a nonnegative value, as an integer.
    fn ceil_nat(&self) -> BigUint;

    fn to_f64(&self) -> f64;
    /// Base-2 logarithm of a positive value.
    fn log2(&self) -> f64;

    fn is_zero(&self) -> bool {
        self.approx_cmp(&Self::zero()) == Ordering::Equal
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a.approx_cmp(&b) == Ordering::Greater {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }
    fn from_nat(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }
    fn recip_nat(n: &BigUint) -> Self {
        1.0 / Self::from_nat(n)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn mul_nat(&self, n: &BigUint) -> Self {
        self * Self::from_nat(n)
    }
    fn div_nat(&self, n: &BigUint) -> Self {
        self / Self::from_nat(n)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn approx_cmp(&self, rhs: &Self) -> Ordering {
        let tol = float_tolerance();
        if (self - rhs).abs() <= tol {
            Ordering::Equal
        } else if self < rhs {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn raw_abs_cmp(&self, rhs: &Self) -> Ordering {
        f64::abs(*self).partial_cmp(&f64::abs(*rhs)).unwrap_or(Ordering::Equal)
    }

    fn div_floor_nat(&self, rhs: &Self) -> BigUint {
        let q = (self / rhs).floor();
        debug_assert!(q >= 0.0 && q.is_finite());
        BigUint::from(q.max(0.0) as u64)
    }

    fn ceil_nat(&self) -> BigUint {
        debug_assert!(self.is_finite() && *self >= 0.0);
        BigUint::from(self.max(0.0).ceil() as u64)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
    fn log2(&self) -> f64 {
        f64::log2(*self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_nat(n: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(n.clone()))
    }
    fn recip_nat(n: &BigUint) -> Self {
        BigRational::new(BigInt::one(), BigInt::from(n.clone()))
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn mul_nat(&self, n: &BigUint) -> Self {
        self * BigRational::from_integer(BigInt::from(n.clone()))
    }
    fn div_nat(&self, n: &BigUint) -> Self {
        self / BigRational::from_integer(BigInt::from(n.clone()))
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn approx_cmp(&self, rhs: &Self) -> Ordering {
        self.cmp(rhs)
    }

    fn raw_abs_cmp(&self, rhs: &Self) -> Ordering {
        Signed::abs(self).cmp(&Signed::abs(rhs))
    }

    fn div_floor_nat(&self, rhs: &Self) -> BigUint {
        let q = (self / rhs).floor();
        q.numer().magnitude().clone()
    }

    fn ceil_nat(&self) -> BigUint {
        let c = self.ceil();
        c.numer().magnitude().clone()
    }

    fn to_f64(&self) -> f64 {
        // Direct conversion underflows once numerator/denominator exceed the
        // f64 range; go through log2 instead when that happens.
        if let Some(v) = ToPrimitive::to_f64(self) {
            if v.is_finite() && (v != 0.0 || Zero::is_zero(self)) {
                return v;
            }
        }
        if Zero::is_zero(self) {
            return 0.0;
        }
        let sign = if self.numer().sign() == num_bigint::Sign::Minus { -1.0 } else { 1.0 };
        sign * Signed::abs(self).log2().exp2()
    }

    fn log2(&self) -> f64 {
        debug_assert!(self.numer().sign() == num_bigint::Sign::Plus);
        log2_biguint(self.numer().magnitude()) - log2_biguint(self.denom().magnitude())
    }
}

/// Base-2 logarithm of a positive big integer, good to f64 precision.
pub fn log2_biguint(n: &BigUint) -> f64 {
    debug_assert!(!n.is_zero());
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().expect("small BigUint converts").log2();
    }
    let shift = bits - 53;
    let top = (n >> shift).to_f64().expect("53-bit BigUint converts");
    top.log2() + shift as f64
}

/// Approximate `2^t` as a big integer (`t >= 0`), rounding the 53-bit
/// mantissa up or down. Precision beyond f64 is irrelevant to the callers,
/// which only care about `log2` of the result.
pub fn pow2_biguint(t: f64, round_up: bool) -> BigUint {
    assert!(t.is_finite() && t >= 0.0);
    let k = t.floor();
    let frac = t - k;
    let k = k as u64;
    let mant_f = frac.exp2() * (1u64 << 52) as f64;
    let mant = if round_up { mant_f.ceil() } else { mant_f.floor() } as u64;
    let mant = BigUint::from(mant);
    if k >= 52 {
        mant << (k - 52)
    } else {
        let shifted = &mant >> (52 - k);
        if round_up && (&shifted << (52 - k)) != mant {
            shifted + 1u32
        } else {
            shifted
        }
    }
}

/// Exact rational value of a finite `f64`.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x)
        .ok_or_else(|| Error::Parse(format!("{x} is not a finite number")))
}

const MAX_LITERAL_DIGITS: usize = 4096;
const MAX_LITERAL_EXPONENT: i64 = 4096;

/// Parse a rational literal: `3/4`, `0.75`, `7.5e-1`, `2`.
///
/// Digit counts and exponents are capped so untrusted input cannot force
/// huge allocations.
pub fn parse_ratio_literal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if s.len() > MAX_LITERAL_DIGITS {
        return Err(Error::Parse("number literal too long".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_decimal(num)?;
        let d = parse_decimal(den)?;
        if Zero::is_zero(&d) {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(n / d);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    if exp.abs() > MAX_LITERAL_EXPONENT {
        return Err(Error::Parse("exponent out of range".into()));
    }
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("no digits in {s:?}")));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("invalid digits in {s:?}")));
    }
    if int_part.len() + frac_part.len() > MAX_LITERAL_DIGITS {
        return Err(Error::Parse("number literal too long".into()));
    }
    let joined = format!("{int_part}{frac_part}");
    let n: BigInt = joined.parse().map_err(|_| Error::Parse(format!("bad digits in {s:?}")))?;
    let scale = frac_part.len() as i64 - exp;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::new(n, ten.pow(scale as u32))
    } else {
        BigRational::from_integer(n * ten.pow((-scale) as u32))
    };
    Ok(if sign < 0 { -value } else { value })
}
