//! Scalar fields: exact rationals and tolerance-compared doubles.
//!
//! The two modes are separate types, so a matrix can never hold a mix of
//! them. Mode conflicts can only surface at the parsing boundary, where they
//! are reported as [`Error::ModeMixing`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;

/// Default relative tolerance of the approximate mode.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Field operations used by every algorithm in the crate.
///
/// Arithmetic takes operands by reference so big rationals are not cloned
/// on every step.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialEq + Serialize + Send + Sync + 'static
{
    /// `true` for the exact rational field.
    const EXACT: bool;
    const MODE: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    /// `num / den`; panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on division by an exact zero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Square root inside the field, if there is one.
    fn sqrt(&self) -> Option<Self>;
    /// Total order on values (approximate mode orders the raw doubles).
    fn cmp_value(&self, other: &Self) -> Ordering;

    /// Pivot choice for elimination: exact mode keeps the first nonzero
    /// candidate, approximate mode prefers larger magnitudes.
    fn better_pivot(candidate: &Self, current: &Self) -> bool;

    fn determinant(m: &Matrix<Self>) -> Self {
        linalg::eliminate_determinant(m)
    }

    fn from_json(value: &Value) -> Result<Self>;

    fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }
}

/// Exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(value: BigRational) -> Self {
        Rational(value)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not an integer or a fraction p/q"));
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(Error::Parse(format!("`{s}` has a zero denominator")));
                }
                Ok(Rational(BigRational::new(p, q)))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn big_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const MODE: &'static str = "exact";

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(value: i64) -> Self {
        value.into()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.0.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
    fn sqrt(&self) -> Option<Self> {
        let p = big_sqrt_exact(self.0.numer())?;
        let q = big_sqrt_exact(self.0.denom())?;
        Some(Rational(BigRational::new(p, q)))
    }
    fn cmp_value(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
    fn better_pivot(_candidate: &Self, _current: &Self) -> bool {
        false
    }
    fn determinant(m: &Matrix<Self>) -> Self {
        linalg::bareiss_determinant(m)
    }
    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => s.parse(),
            Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(i.into()),
                None => Err(Error::ModeMixing(format!(
                    "JSON number {n} is not an exact integer; write exact entries as \"p/q\" strings"
                ))),
            },
            other => Err(Error::Parse(format!("unexpected matrix entry {other}"))),
        }
    }
}

/// Double-precision value compared with a relative tolerance.
///
/// `tol == None` means "use [`DEFAULT_TOLERANCE`]". Arithmetic carries the
/// largest configured tolerance of its operands.
#[derive(Clone, Copy)]
pub struct Approx {
    value: f64,
    tol: Option<f64>,
}

impl Approx {
    pub fn new(value: f64) -> Self {
        Approx { value, tol: None }
    }

    pub fn with_tolerance(value: f64, tol: f64) -> Self {
        Approx {
            value,
            tol: Some(tol),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn tolerance(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOLERANCE)
    }

    fn merged(&self, rhs: &Self) -> Option<f64> {
        match (self.tol, rhs.tol) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    fn lift(&self, rhs: &Self, value: f64) -> Self {
        Approx {
            value,
            tol: self.merged(rhs),
        }
    }
}

impl fmt::Debug for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PartialEq for Approx {
    /// `|a - b| <= tol * max(1, |a|, |b|)`.
    fn eq(&self, other: &Self) -> bool {
        let tol = self.merged(other).unwrap_or(DEFAULT_TOLERANCE);
        let scale = 1f64.max(self.value.abs()).max(other.value.abs());
        (self.value - other.value).abs() <= tol * scale
    }
}

impl Serialize for Approx {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.value)
    }
}

impl Scalar for Approx {
    const EXACT: bool = false;
    const MODE: &'static str = "approx";

    fn zero() -> Self {
        Approx::new(0.0)
    }
    fn one() -> Self {
        Approx::new(1.0)
    }
    fn from_i64(value: i64) -> Self {
        Approx::new(value as f64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Approx::new(num as f64 / den as f64)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.lift(rhs, self.value + rhs.value)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.lift(rhs, self.value - rhs.value)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.lift(rhs, self.value * rhs.value)
    }
    fn div(&self, rhs: &Self) -> Self {
        self.lift(rhs, self.value / rhs.value)
    }
    fn neg(&self) -> Self {
        Approx {
            value: -self.value,
            tol: self.tol,
        }
    }
    fn is_zero(&self) -> bool {
        self.value.abs() <= self.tolerance()
    }
    fn to_f64(&self) -> f64 {
        self.value
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            Some(Approx {
                value: 0.0,
                tol: self.tol,
            })
        } else if self.value < 0.0 {
            None
        } else {
            Some(Approx {
                value: self.value.sqrt(),
                tol: self.tol,
            })
        }
    }
    fn cmp_value(&self, other: &Self) -> Ordering {
        self.value.total_cmp(&other.value)
    }
    fn better_pivot(candidate: &Self, current: &Self) -> bool {
        candidate.value.abs() > current.value.abs()
    }
    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Number(n) => n
                .as_f64()
                .map(Approx::new)
                .ok_or_else(|| Error::Parse(format!("number {n} is not representable"))),
            Value::String(s) => {
                let r: Rational = s.parse()?;
                Ok(Approx::new(r.to_f64()))
            }
            other => Err(Error::Parse(format!("unexpected matrix entry {other}"))),
        }
    }
}
