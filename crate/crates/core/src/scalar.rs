//! Numeric backends for unit-interval values.
//!
//! Every computation in this crate is generic over [`Scalar`]. Two backends
//! are provided: [`Rational`] (exact, the default everywhere) and `f64`
//! (comparisons tolerant to [`FLOAT_EPSILON`]).

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};

use crate::error::ParseValueError;

/// Exact rational number used by the default numeric mode.
pub type Rational = Ratio<i128>;

/// Comparison tolerance of the floating-point mode.
pub const FLOAT_EPSILON: f64 = 1e-9;

/// A totally ordered field-like value type closed under the operations the
/// built-in t-norms need (min, max, addition, subtraction, product).
pub trait Scalar: Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// `true` for exact arithmetic, where equality means identity.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    /// `num / den`; `den` must be positive.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Parses `"p/q"`, `"p"` or a decimal literal such as `"0.25"`.
    fn parse(text: &str) -> Result<Self, ParseValueError>;

    fn to_f64(&self) -> f64;

    /// Equality: exact for rationals, within [`FLOAT_EPSILON`] for floats.
    fn approx_eq(&self, other: &Self) -> bool;

    /// Reduced fraction for rationals, shortest round-trip decimal for floats.
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn is_negligible(&self) -> bool {
        self.approx_eq(&Self::zero())
    }

    /// `self < other` beyond the comparison tolerance.
    fn definitely_lt(&self, other: &Self) -> bool {
        !self.approx_eq(other) && self < other
    }

    fn is_unit(&self) -> bool {
        !self.definitely_lt(&Self::zero()) && !Self::one().definitely_lt(self)
    }

    fn max_of(&self, other: &Self) -> Self {
        if other > self {
            other.clone()
        } else {
            self.clone()
        }
    }

    fn min_of(&self, other: &Self) -> Self {
        if other < self {
            other.clone()
        } else {
            self.clone()
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("rational overflow in addition")
    }

    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("rational overflow in subtraction")
    }

    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("rational overflow in product")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num as i128, den as i128)
    }

    fn parse(text: &str) -> Result<Self, ParseValueError> {
        parse_rational(text)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn to_text(&self) -> String {
        // `Ratio` is always kept reduced with a positive denominator.
        if self.is_integer() {
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

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn parse(text: &str) -> Result<Self, ParseValueError> {
        let exact = parse_rational(text)?;
        Ok(exact.to_f64())
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_EPSILON
    }
}

fn parse_rational(text: &str) -> Result<Rational, ParseValueError> {
    let raw = text.trim();
    let bad = || ParseValueError::Malformed(text.to_string());
    if raw.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = raw.split_once('/') {
        let num: i128 = num.trim().parse().map_err(|_| bad())?;
        let den: i128 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(ParseValueError::ZeroDenominator(text.to_string()));
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((int, frac)) = raw.split_once('.') {
        let negative = int.starts_with('-');
        let digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() && digits.is_empty() {
            return Err(bad());
        }
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 30 {
            return Err(bad());
        }
        let whole: i128 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let scale = 10i128.pow(frac.len() as u32);
        let part: i128 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let magnitude = whole
            .checked_mul(scale)
            .and_then(|w| w.checked_add(part))
            .ok_or_else(bad)?;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(Ratio::new(num, scale));
    }
    let int: i128 = raw.parse().map_err(|_| bad())?;
    Ok(Ratio::from_integer(int))
}

/// Largest value of a non-empty iterator (first maximal element on ties).
pub(crate) fn max_value<V: Scalar, I: IntoIterator<Item = V>>(values: I) -> Option<V> {
    values.into_iter().reduce(|best, v| if v > best { v } else { best })
}
