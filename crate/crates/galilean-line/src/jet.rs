//! Truncated jets: real analytic functions of time represented by their
//! derivative coefficients `f(0), f'(0), …, f⁽ᴺ⁾(0)`.
//!
//! Storing derivatives (rather than monomial coefficients) makes the shift
//! `Λ_b` a triangular Taylor sum,
//! `(Λ_b f)⁽ⁿ⁾ = Σ_{m≥n} f⁽ᵐ⁾ b^{m−n}/(m−n)!`, and products follow the
//! Leibniz rule `(fg)⁽ⁿ⁾ = Σ_k C(n,k) f⁽ᵏ⁾ g⁽ⁿ⁻ᵏ⁾`. Everything above order
//! `N` is dropped.
//!
//! The `+ − ×` operators panic on order mismatch; the `checked_*` methods
//! and [`jet_arith`] report a [`StructureError`] instead.

use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{StructureError, ValidationError};
use crate::scalar::{binomial_row, factorial, Field, Scalar};
use crate::timefn::{Mat3, TimeFn, Vec3};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 8;

/// A scalar jet of order `N` (`N + 1` derivative coefficients).
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<S> {
    coeffs: Vec<S>,
}

/// A 3-vector of jets sharing one order.
pub type VecJet<S> = Vec3<Jet<S>>;

/// A 3×3 matrix of jets, used for (possibly time-dependent) rotations.
pub type RotJet<S> = Mat3<Jet<S>>;

/// Whether a rotation jet depends on time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotKind {
    Constant,
    JetValued,
}

impl<S: Scalar> Jet<S> {
    /// Builds a jet from derivative coefficients; the order is `len − 1`.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Jet { coeffs: vec![S::zero(); order + 1] }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.coeffs[0] = c;
        j
    }

    /// The identity function `t`.
    pub fn variable(order: usize) -> Self {
        let mut j = Self::zero(order);
        if order >= 1 {
            j.coeffs[1] = S::one();
        }
        j
    }

    /// From monomial coefficients `c_k` of `Σ c_k t^k`; terms above `order`
    /// are dropped.
    pub fn from_monomials(mono: &[S], order: usize) -> Self {
        let mut j = Self::zero(order);
        for (k, c) in mono.iter().enumerate().take(order + 1) {
            j.coeffs[k] = c.clone() * factorial::<S>(k);
        }
        j
    }

    /// Monomial coefficients `f⁽ᵏ⁾/k!`.
    pub fn to_monomials(&self) -> Vec<S> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() / factorial::<S>(k))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field(&self) -> Field {
        S::FIELD
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &S {
        &self.coeffs[n]
    }

    /// Same function at a different truncation order (zero-extended or cut).
    pub fn with_order(&self, order: usize) -> Self {
        let mut c: Vec<S> = self.coeffs.iter().take(order + 1).cloned().collect();
        c.resize(order + 1, S::zero());
        Jet { coeffs: c }
    }

    fn check(&self, other: &Self) -> Result<(), StructureError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(StructureError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, StructureError> {
        self.check(other)?;
        Ok(Jet {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, StructureError> {
        self.check(other)?;
        Ok(Jet {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
    }

    /// Leibniz product, truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, StructureError> {
        self.check(other)?;
        let n_max = self.order();
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let binom = binomial_row::<S>(n);
            let mut acc = S::zero();
            for k in 0..=n {
                if self.coeffs[k].is_zero() || other.coeffs[n - k].is_zero() {
                    continue;
                }
                acc = acc + binom[k].clone() * self.coeffs[k].clone() * other.coeffs[n - k].clone();
            }
            out.push(acc);
        }
        Ok(Jet { coeffs: out })
    }

    pub fn scale(&self, c: &S) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|a| c.clone() * a.clone()).collect(),
        }
    }

    /// `Λ_b f`.
    pub fn shift(&self, b: &S) -> Self {
        if b.is_zero() {
            return self.clone();
        }
        let n_max = self.order();
        // b^k / k!
        let mut pw = Vec::with_capacity(n_max + 1);
        let mut p = S::one();
        for k in 0..=n_max {
            if k > 0 {
                p = p * b.clone() / S::from_i64(k as i64);
            }
            pw.push(p.clone());
        }
        let coeffs = (0..=n_max)
            .map(|n| {
                (n..=n_max).fold(S::zero(), |acc, m| acc + self.coeffs[m].clone() * pw[m - n].clone())
            })
            .collect();
        Jet { coeffs }
    }

    /// `d/dt`: coefficients move down one slot; the top slot becomes zero.
    pub fn derivative(&self) -> Self {
        let mut c: Vec<S> = self.coeffs.iter().skip(1).cloned().collect();
        c.push(S::zero());
        Jet { coeffs: c }
    }

    /// `∫₀ᵗ f + f0`: coefficients move up one slot; `f⁽ᴺ⁾` is dropped.
    pub fn antiderivative(&self, f0: S) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len());
        c.push(f0);
        c.extend(self.coeffs.iter().take(self.order()).cloned());
        Jet { coeffs: c }
    }

    /// `Σ f⁽ⁿ⁾ tⁿ / n!` (Horner form).
    pub fn evaluate(&self, t: &S) -> S {
        let n_max = self.order();
        let mut acc = self.coeffs[n_max].clone();
        for n in (0..n_max).rev() {
            acc = self.coeffs[n].clone() + acc * t.clone() / S::from_i64(n as i64 + 1);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    /// Largest polynomial degree with a nonzero coefficient (`None` for 0).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn max_abs(&self) -> S {
        crate::timefn::max_scalar(self.coeffs.iter().map(Scalar::abs))
    }

    /// JSON object `{"order", "field", "coeffs"}`.
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "field": S::FIELD.as_str(),
            "coeffs": self.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, ValidationError> {
        let bad = |m: &str| ValidationError::Malformed(m.to_string());
        let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| bad("order"))? as usize;
        let field = v.get("field").and_then(Value::as_str).ok_or_else(|| bad("field"))?;
        if Field::parse(field) != Some(S::FIELD) {
            return Err(bad("field tag does not match the requested coefficient field"));
        }
        let arr = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("coeffs"))?;
        if arr.len() != order + 1 {
            return Err(bad("coefficient count must be order + 1"));
        }
        let coeffs = arr
            .iter()
            .map(|c| S::from_json(c).ok_or_else(|| bad("coefficient")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Jet { coeffs })
    }
}

/// Arithmetic kinds accepted by [`jet_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Dot,
    Scale,
}

/// Scalar or vector jet operand.
#[derive(Debug, Clone, PartialEq)]
pub enum JetValue<S> {
    Scalar(Jet<S>),
    Vector(VecJet<S>),
}

/// Checked arithmetic on scalar and vector jets.
///
/// `Mul` multiplies scalar jets, or a scalar jet into each component of a
/// vector; `Scale` multiplies by the constant term of a scalar left operand;
/// `Dot` requires two vectors.
pub fn jet_arith<S: Scalar>(
    lhs: &JetValue<S>,
    rhs: &JetValue<S>,
    kind: ArithKind,
) -> Result<JetValue<S>, StructureError> {
    use JetValue::{Scalar as Sc, Vector as Ve};
    let dim = |m: &str| StructureError::Dimension(m.to_string());
    match (kind, lhs, rhs) {
        (ArithKind::Add, Sc(a), Sc(b)) => Ok(Sc(a.checked_add(b)?)),
        (ArithKind::Sub, Sc(a), Sc(b)) => Ok(Sc(a.checked_sub(b)?)),
        (ArithKind::Mul, Sc(a), Sc(b)) => Ok(Sc(a.checked_mul(b)?)),
        (ArithKind::Add, Ve(a), Ve(b)) => {
            a.check_compatible(b)?;
            Ok(Ve(a.add(b)))
        }
        (ArithKind::Sub, Ve(a), Ve(b)) => {
            a.check_compatible(b)?;
            Ok(Ve(a.sub(b)))
        }
        (ArithKind::Mul, Sc(f), Ve(v)) | (ArithKind::Mul, Ve(v), Sc(f)) => {
            v.check_compatible(v)?;
            f.check_compatible(&v.c[0])?;
            Ok(Ve(v.times(f)))
        }
        (ArithKind::Dot, Ve(a), Ve(b)) => {
            a.check_compatible(b)?;
            Ok(Sc(a.dot(b)))
        }
        (ArithKind::Scale, Sc(c), Sc(b)) => Ok(Sc(b.scale(c.coeff(0)))),
        (ArithKind::Scale, Sc(c), Ve(v)) => Ok(Ve(v.scale(c.coeff(0)))),
        (ArithKind::Dot, _, _) => Err(dim("dot requires two vector jets")),
        _ => Err(dim("operand shapes do not fit the requested operation")),
    }
}

macro_rules! jet_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<S: Scalar> $tr for Jet<S> {
            type Output = Jet<S>;
            fn $method(self, rhs: Jet<S>) -> Jet<S> {
                self.$checked(&rhs).expect("jet order mismatch")
            }
        }
        impl<'a, S: Scalar> $tr<&'a Jet<S>> for &'a Jet<S> {
            type Output = Jet<S>;
            fn $method(self, rhs: &'a Jet<S>) -> Jet<S> {
                self.$checked(rhs).expect("jet order mismatch")
            }
        }
    };
}

jet_binop!(Add, add, checked_add);
jet_binop!(Sub, sub, checked_sub);
jet_binop!(Mul, mul, checked_mul);

impl<S: Scalar> Neg for Jet<S> {
    type Output = Jet<S>;
    fn neg(self) -> Jet<S> {
        Jet {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<S: Scalar> TimeFn for Jet<S> {
    type Scalar = S;

    fn zero_like(&self) -> Self {
        Jet::zero(self.order())
    }

    fn constant_like(&self, c: S) -> Self {
        Jet::constant(c, self.order())
    }

    fn scale(&self, c: &S) -> Self {
        Jet::scale(self, c)
    }

    fn shift(&self, b: &S) -> Self {
        Jet::shift(self, b)
    }

    fn derivative(&self) -> Self {
        Jet::derivative(self)
    }

    fn evaluate(&self, t: &S) -> S {
        Jet::evaluate(self, t)
    }

    fn is_zero(&self) -> bool {
        Jet::is_zero(self)
    }

    fn is_constant(&self) -> bool {
        Jet::is_constant(self)
    }

    fn max_abs(&self) -> S {
        Jet::max_abs(self)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), StructureError> {
        self.check(other)
    }
}

impl<S: Scalar> VecJet<S> {
    /// Vector jet from three monomial coefficient lists.
    pub fn from_monomials(mono: [&[S]; 3], order: usize) -> Self {
        Vec3::new(
            Jet::from_monomials(mono[0], order),
            Jet::from_monomials(mono[1], order),
            Jet::from_monomials(mono[2], order),
        )
    }

    pub fn order(&self) -> usize {
        self.c[0].order()
    }

    pub fn antiderivative(&self, f0: &[S; 3]) -> Self {
        Vec3 {
            c: std::array::from_fn(|i| self.c[i].antiderivative(f0[i].clone())),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.c.iter().map(Jet::to_json).collect())
    }
}

impl<S: Scalar> RotJet<S> {
    pub fn kind(&self) -> RotKind {
        if self.is_constant() {
            RotKind::Constant
        } else {
            RotKind::JetValued
        }
    }

    pub fn order(&self) -> usize {
        self.m[0][0].order()
    }

    /// Value at `t = 0`, i.e. the constant part.
    pub fn constant_part(&self) -> [[S; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].coeff(0).clone()))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.m
                .iter()
                .map(|row| Value::Array(row.iter().map(Jet::to_json).collect()))
                .collect(),
        )
    }
}

/// Generator of rotations about axis `i`: `(L_i)_{jk} = −ε_ijk`, so that
/// `L_i x = e_i × x`.
pub fn so3_generator<S: Scalar>(axis: usize) -> [[S; 3]; 3] {
    std::array::from_fn(|j| {
        std::array::from_fn(|k| S::from_i64(-crate::timefn::consts::levi_civita(axis, j, k)))
    })
}

/// Antisymmetric jet matrix `Σ θ_i(t) L_i`.
pub fn angle_matrix<S: Scalar>(theta: &VecJet<S>) -> RotJet<S> {
    let order = theta.order();
    let mut out = Mat3::identity(&Jet::<S>::zero(order)).map(|j| j.zero_like());
    for axis in 0..3 {
        let l = so3_generator::<S>(axis);
        for j in 0..3 {
            for k in 0..3 {
                if !l[j][k].is_zero() {
                    out.m[j][k] = out.m[j][k].clone() + theta.c[axis].scale(&l[j][k]);
                }
            }
        }
    }
    out
}

/// Truncated matrix exponential of an antisymmetric jet matrix.
///
/// When `Ω(0) = 0` every power `Ωᵏ` starts at order `k`, so the series
/// terminates at `k = N` and the result is exact to truncation order in any
/// field. Otherwise the series is summed to convergence, which is only
/// possible for floats.
pub fn rot_exp<S: Scalar>(omega: &RotJet<S>) -> Result<RotJet<S>, ValidationError> {
    for i in 0..3 {
        for j in 0..3 {
            let s = omega.m[i][j].clone() + omega.m[j][i].clone();
            if !s.is_zero() {
                return Err(ValidationError::NotAntisymmetric(i, j));
            }
        }
    }
    let order = omega.order();
    let nilpotent = omega.m.iter().flatten().all(|e| e.coeff(0).is_zero());
    if !nilpotent && S::FIELD == Field::Exact {
        return Err(ValidationError::NonNilpotent);
    }
    let max_terms = if nilpotent { order + 1 } else { 200 };
    let mut result = Mat3::identity(&Jet::<S>::zero(order));
    let mut term = result.clone();
    for k in 1..max_terms {
        term = term.mul_mat(omega).map(|e| e.scale(&(S::one() / S::from_i64(k as i64))));
        if term.is_zero() {
            break;
        }
        result = Mat3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| result.m[i][j].clone() + term.m[i][j].clone())),
        };
        if !nilpotent && term.max_abs().to_f64() < 1e-18 {
            break;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn rj(v: &[i64]) -> Jet<Rational> {
        Jet::new(v.iter().map(|&x| q(x, 1)).collect())
    }

    #[test]
    fn leibniz_examples() {
        assert_eq!(rj(&[1, 0]) * rj(&[0, 1]), rj(&[0, 1]));
        assert_eq!(rj(&[1, 1, 0]) * rj(&[1, -1, 0]), rj(&[1, 0, -2]));
        let a = Vec3::new(rj(&[0, 1, 0]), rj(&[0, 0, 0]), rj(&[0, 0, 0]));
        assert_eq!(a.dot(&a), rj(&[0, 0, 2]));
    }

    #[test]
    fn shift_examples() {
        let f = rj(&[5, 7, 0]);
        assert_eq!(f.shift(&q(2, 1)), rj(&[19, 7, 0]));
        assert_eq!(rj(&[1, 2, 6]).shift(&q(1, 1)), rj(&[6, 8, 6]));
        assert_eq!(f.shift(&q(0, 1)), f);
    }

    #[test]
    fn calculus_examples() {
        assert_eq!(rj(&[0, 1, 0]).derivative(), rj(&[1, 0, 0]));
        assert_eq!(rj(&[1, 0, 0]).antiderivative(q(0, 1)), rj(&[0, 1, 0]));
        assert_eq!(rj(&[1, 2, 6]).evaluate(&q(0, 1)), q(1, 1));
        assert_eq!(rj(&[1, 2, 6]).evaluate(&q(1, 1)), q(6, 1));
    }

    #[test]
    fn order_mismatch_is_reported() {
        let e = rj(&[1, 2]).checked_mul(&rj(&[1, 2, 3])).unwrap_err();
        assert_eq!(e, StructureError::OrderMismatch(1, 2));
        let r = jet_arith(
            &JetValue::Scalar(rj(&[1])),
            &JetValue::Scalar(rj(&[1])),
            ArithKind::Dot,
        );
        assert!(r.is_err());
    }

    #[test]
    fn rot_exp_cosine_series() {
        let w = q(3, 2);
        let theta = Vec3::new(Jet::zero(6), Jet::zero(6), Jet::new(vec![q(0, 1), w.clone(), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]));
        let r = rot_exp(&angle_matrix(&theta)).unwrap();
        let w2 = w.clone() * w.clone();
        let expect = vec![q(1, 1), q(0, 1), -w2.clone(), q(0, 1), w2.clone() * w2.clone(), q(0, 1), -(w2.clone() * w2.clone() * w2)];
        assert_eq!(r.m[0][0].coeffs(), &expect[..]);
        assert!(r.orthogonality_defect().is_zero());
        assert_eq!(rot_exp(&Mat3::identity(&Jet::<Rational>::zero(4)).map(|e| e.zero_like())).unwrap(), Mat3::identity(&Jet::zero(4)));
    }

    #[test]
    fn rot_exp_rejects_bad_input() {
        let mut m = Mat3::identity(&Jet::<Rational>::zero(2)).map(|e| e.zero_like());
        m.m[0][1] = rj(&[0, 1, 0]);
        assert_eq!(rot_exp(&m), Err(ValidationError::NotAntisymmetric(0, 1)));
        let theta = Vec3::new(rj(&[1, 0, 0]), rj(&[0, 0, 0]), rj(&[0, 0, 0]));
        assert_eq!(rot_exp(&angle_matrix(&theta)), Err(ValidationError::NonNilpotent));
        let theta_f = Vec3::new(Jet::new(vec![0.3, 0.0, 0.0]), Jet::zero(2), Jet::zero(2));
        let r = rot_exp(&angle_matrix(&theta_f)).unwrap();
        assert!((r.m[1][1].coeff(0) - 0.3f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn json_roundtrip() {
        let f = Jet::new(vec![q(1, 2), q(-3, 1)]);
        let v = f.to_json();
        assert_eq!(v["coeffs"][0], "1/2");
        assert_eq!(Jet::<Rational>::from_json(&v).unwrap(), f);
        assert!(Jet::<f64>::from_json(&v).is_err());
    }
}
