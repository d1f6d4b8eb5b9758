//! Arithmetic abstraction: one trait, two number types.
//!
//! Every geometric computation in this crate is generic over [`Scalar`], which
//! is implemented by [`num::BigRational`] (exact mode) and by `f64` (float
//! mode). Exact mode performs literal equality tests and refuses operations
//! whose results would leave the rationals (square roots of non-squares, for
//! instance); float mode compares against absolute tolerances.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

/// Re-export of the exact-mode number type, so downstream code does not need
/// to depend on `num` directly.
pub use num::rational::BigRational;

/// Default absolute tolerance for float-mode comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

/// The number types the geometry runs over.
///
/// `EXACT` distinguishes literal-equality arithmetic (rationals) from
/// tolerance-based arithmetic (floats). Code that needs a zero test should use
/// [`Scalar::approx_zero`] with a tolerance; exact implementations ignore the
/// tolerance and test literal equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Literal zero test (no tolerance).
    fn is_zero(&self) -> bool;
    /// Zero test under a tolerance; exact mode ignores `tol`.
    fn approx_zero(&self, tol: f64) -> bool;
    /// Strictly positive.
    fn is_positive(&self) -> bool;

    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;

    /// Exact square root when one exists in the scalar domain.
    fn try_sqrt(&self) -> Option<Self>;
    /// Exact n-th root when one exists in the scalar domain.
    fn try_nth_root(&self, n: u32) -> Option<Self>;

    /// Parse a numeric literal: integers, `p/q` fractions, and decimal or
    /// scientific notation (decimals are expanded exactly in exact mode).
    fn parse_literal(s: &str) -> Result<Self, String>;
    /// Serialize losslessly; inverse of [`Scalar::parse_literal`].
    fn literal(&self) -> String;
}

/// `a ≈ b` under the active mode: literal equality when exact, absolute
/// difference below `tol` otherwise.
pub fn approx_eq<S: Scalar>(a: &S, b: &S, tol: f64) -> bool {
    (a.clone() - b.clone()).approx_zero(tol)
}

fn parse_big_int(s: &str) -> Result<BigInt, String> {
    s.parse::<BigInt>()
        .map_err(|e| format!("invalid integer {s:?}: {e}"))
}

/// Exact decimal/scientific expansion: `-12.345e-2` → `-12345 / 10^5`.
fn parse_rational_literal(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty numeric literal".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_big_int(num.trim())?;
        let d = parse_big_int(den.trim())?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            e.parse::<i32>()
                .map_err(|err| format!("invalid exponent in {s:?}: {err}"))?,
        ),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.contains(['+', '-']) {
        return Err(format!("malformed literal {s:?}"));
    }
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(format!("malformed literal {s:?}"));
    }
    let n = parse_big_int(&digits)?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        BigRational::from_integer(n * ten.pow(shift as u32))
    } else {
        BigRational::new(n, ten.pow((-shift) as u32))
    };
    Ok(value)
}

fn big_int_nth_root_exact(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return big_int_nth_root_exact(&(-x), n).map(|r| -r);
    }
    let root = x.nth_root(n);
    if num::pow::pow(root.clone(), n as usize) == *x {
        Some(root)
    } else {
        None
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
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn approx_zero(&self, _tol: f64) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        <BigRational as Signed>::is_positive(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Fall back to a quotient of lossy conversions for huge entries.
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }
    fn abs(&self) -> Self {
        <BigRational as Signed>::abs(self)
    }

    fn try_sqrt(&self) -> Option<Self> {
        self.try_nth_root(2)
    }
    fn try_nth_root(&self, n: u32) -> Option<Self> {
        assert!(n > 0);
        if Scalar::is_zero(self) {
            return Some(<BigRational as Zero>::zero());
        }
        let numer = big_int_nth_root_exact(self.numer(), n)?;
        let denom = big_int_nth_root_exact(self.denom(), n)?;
        Some(BigRational::new(numer, denom))
    }

    fn parse_literal(s: &str) -> Result<Self, String> {
        parse_rational_literal(s)
    }
    fn literal(&self) -> String {
        if self.denom() == &BigInt::from(1) {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
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
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        numer as f64 / denom as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn approx_zero(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn try_sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(self.sqrt())
        }
    }
    fn try_nth_root(&self, n: u32) -> Option<Self> {
        assert!(n > 0);
        if *self >= 0.0 {
            Some(self.powf(1.0 / n as f64))
        } else if n % 2 == 1 {
            Some(-(-self).powf(1.0 / n as f64))
        } else {
            None
        }
    }

    fn parse_literal(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: f64 = num
                .trim()
                .parse()
                .map_err(|e| format!("invalid numerator {num:?}: {e}"))?;
            let d: f64 = den
                .trim()
                .parse()
                .map_err(|e| format!("invalid denominator {den:?}: {e}"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            return Ok(n / d);
        }
        let v: f64 = s
            .parse()
            .map_err(|e| format!("invalid number {s:?}: {e}"))?;
        if !v.is_finite() {
            return Err(format!("non-finite number {s:?}"));
        }
        Ok(v)
    }
    fn literal(&self) -> String {
        format!("{self}")
    }
}
