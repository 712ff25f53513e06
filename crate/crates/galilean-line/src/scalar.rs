//! Coefficient fields.
//!
//! Every algebraic object in the crate is generic over a [`Scalar`]: exact
//! rationals ([`Rational`]) for identity checks that must hold with zero
//! residual, and `f64` for grid numerics.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Tag identifying the coefficient field of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Exact,
    Float,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Exact => "exact",
            Field::Float => "float",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exact" => Some(Field::Exact),
            "float" => Some(Field::Float),
            _ => None,
        }
    }
}

/// A coefficient field usable for jets, group elements and cocycles.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const FIELD: Field;

    fn from_i64(n: i64) -> Self;

    /// `p / q`; panics if `q == 0`.
    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_i64(p) / Self::from_i64(q)
    }

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    /// JSON encoding: `"p/q"` strings for rationals, numbers for floats.
    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Option<Self>;
}

impl Scalar for f64 {
    const FIELD: Field = Field::Float;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Option<Self> {
        v.as_f64()
    }
}

impl Scalar for Rational {
    const FIELD: Field = Field::Exact;

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_json(&self) -> Value {
        Value::String(rational_string(self))
    }

    fn from_json(v: &Value) -> Option<Self> {
        parse_rational(v.as_str()?)
    }
}

/// Canonical `"p/q"` rendering (the denominator is always written).
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `n!` in the given field.
pub fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n as i64).fold(S::one(), |acc, k| acc * S::from_i64(k))
}

/// Row `n` of Pascal's triangle in the given field.
pub fn binomial_row<S: Scalar>(n: usize) -> Vec<S> {
    let mut row = vec![1i64; n + 1];
    for k in 1..n {
        row[k] = row[k - 1] * (n - k + 1) as i64 / k as i64;
    }
    row.into_iter().map(S::from_i64).collect()
}

/// Convenience constructor for exact rationals.
pub fn q(p: i64, d: i64) -> Rational {
    Rational::from_ratio(p, d)
}

/// Rational one, handy in tests and examples.
pub fn q1() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_json_roundtrip() {
        let r = q(-6, 4);
        let v = r.to_json();
        assert_eq!(v, Value::String("-3/2".into()));
        assert_eq!(Rational::from_json(&v), Some(r));
        assert_eq!(parse_rational("5"), Some(q(5, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn binomials_and_factorials() {
        let row: Vec<f64> = binomial_row(5);
        assert_eq!(row, vec![1.0, 5.0, 10.0, 10.0, 5.0, 1.0]);
        assert_eq!(factorial::<Rational>(6), q(720, 1));
    }
}
