//! Scalar types the library is generic over.
//!
//! Everything combinatorial works over any [`Scalar`]; comparisons go through
//! [`Scalar::le_within`] and [`Scalar::eq_within`] so that binary floats get a
//! tolerance while rationals compare exactly. Routines whose control flow
//! branches on exact equalities (the moduli decoder) additionally require
//! [`ExactScalar`].

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// A number usable as a weight, distance, or coordinate.
pub trait Scalar: Num + Signed + Clone + Debug + PartialOrd + Send + Sync + 'static {
    /// True for exact (rational) arithmetic.
    const EXACT: bool;

    /// Relative tolerance used when none is configured: zero for exact types.
    fn default_tolerance() -> Self;

    fn from_int(value: i64) -> Self;

    /// `numerator / denominator`; `denominator` must be nonzero.
    fn from_ratio(numerator: i64, denominator: i64) -> Self {
        Self::from_int(numerator) / Self::from_int(denominator)
    }

    /// Parses `"p/q"`, an integer, or a decimal such as `"0.25"` or `"1.5e-3"`.
    fn parse_scalar(text: &str) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Canonical text form: `"p/q"` (or an integer) for rationals, shortest
    /// round-trip decimal for floats.
    fn render(&self) -> String;

    fn le_within(&self, other: &Self, eps: &Self) -> bool {
        *self <= other.clone() + eps.clone()
    }

    fn eq_within(&self, other: &Self, eps: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= *eps
    }

    fn is_negative_beyond(&self, eps: &Self) -> bool {
        *self < -eps.clone()
    }
}

/// Marker for scalars with exact field arithmetic.
pub trait ExactScalar: Scalar + Eq + Ord {}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn default_tolerance() -> Self {
                1e-9
            }

            fn from_int(value: i64) -> Self {
                value as $t
            }

            fn parse_scalar(text: &str) -> Option<Self> {
                let text = text.trim();
                match text.split_once('/') {
                    Some((p, q)) => {
                        let p: $t = p.trim().parse().ok()?;
                        let q: $t = q.trim().parse().ok()?;
                        (q != 0.0).then(|| p / q)
                    }
                    None => text.parse().ok().filter(|v: &$t| v.is_finite()),
                }
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn render(&self) -> String {
                format!("{}", self)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// Integer types that can back an exact rational scalar.
pub trait RatioInt:
    Integer
    + Signed
    + Clone
    + Debug
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + std::fmt::Display
    + std::hash::Hash
    + Send
    + Sync
    + 'static
{
}

impl RatioInt for i64 {}
impl RatioInt for i128 {}
impl RatioInt for BigInt {}

impl<I: RatioInt> Scalar for Ratio<I> {
    const EXACT: bool = true;

    fn default_tolerance() -> Self {
        Ratio::from_integer(I::zero())
    }

    fn from_int(value: i64) -> Self {
        Ratio::from_integer(I::from_i64(value).expect("i64 fits every backing integer"))
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        parse_ratio(text.trim())
    }

    fn to_f64(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn le_within(&self, other: &Self, _eps: &Self) -> bool {
        self <= other
    }

    fn eq_within(&self, other: &Self, _eps: &Self) -> bool {
        self == other
    }

    fn is_negative_beyond(&self, _eps: &Self) -> bool {
        self.is_negative()
    }
}

impl<I: RatioInt + Eq + Ord> ExactScalar for Ratio<I> {}

fn parse_ratio<I: RatioInt>(text: &str) -> Option<Ratio<I>> {
    if let Some((p, q)) = text.split_once('/') {
        let p: I = p.trim().parse().ok()?;
        let q: I = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Ratio::new(p, q));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(at) => (&text[..at], text[at + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: I = if digits.is_empty() { I::zero() } else { digits.parse().ok()? };
    if negative {
        numer = -numer;
    }
    let ten = I::from_u8(10)?;
    let shift = exponent - frac_part.len() as i32;
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    Some(if shift >= 0 { Ratio::from_integer(numer * scale) } else { Ratio::new(numer, scale) })
}

/// Largest absolute value in `values`, or zero when empty.
pub(crate) fn max_abs<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values.into_iter().map(|v| v.abs()).fold(T::zero(), |acc, v| if v > acc { v } else { acc })
}
