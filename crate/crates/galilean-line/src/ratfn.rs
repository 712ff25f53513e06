//! Exact rational functions of time over ℚ.
//!
//! A time-dependent rotation cannot be a polynomial, and truncated jets do
//! not commute exactly with the shift (`Λ_b(fg) ≠ Λ_b f · Λ_b g` once terms
//! above order `N` are dropped). [`RatFn`] represents `p(t)/q(t)` without
//! truncation, so identities involving time-dependent rotations and nonzero
//! time shifts can be checked with zero residual. Results can be projected
//! to jets with [`RatFn::to_jet`].

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::StructureError;
use crate::jet::Jet;
use crate::scalar::{factorial, Rational, Scalar};
use crate::timefn::TimeFn;

/// Dense polynomial with ascending monomial coefficients and no trailing
/// zeros (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Rational>,
}

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(v: Rational) -> Self {
        Poly::new(vec![v])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.c.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x.clone()).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x * Rational::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        self.c.iter().rev().fold(Rational::zero(), |acc, x| acc * t + x)
    }

    /// `p(t + b)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, b: &Rational) -> Poly {
        if b.is_zero() || self.c.len() <= 1 {
            return self.clone();
        }
        let mut a = self.c.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &a[j + 1] * b;
                a[j] += t;
            }
        }
        Poly::new(a)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dl = d.lead();
        let dd = d.degree();
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let mut qv = vec![Rational::zero(); self.c.len() - d.c.len() + 1];
        for k in (0..qv.len()).rev() {
            let coef = &r[k + dd] / &dl;
            if !coef.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &coef * dj;
                }
            }
            qv[k] = coef;
        }
        r.truncate(dd);
        (Poly::new(qv), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(Rational::one() / l))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// An exact rational function `num(t) / den(t)` in lowest terms with monic
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Reduces `num/den`; panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn { num, den: Poly::constant(Rational::one()) };
        }
        let (mut n, mut d) = if den.degree() == 0 || num.degree() == 0 {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.degree() == 0 {
                (num, den)
            } else {
                (num.divrem(&g).0, den.divrem(&g).0)
            }
        };
        let l = d.lead();
        if !l.is_one() {
            let inv = Rational::one() / l;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFn { num: n, den: d }
    }

    pub fn poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::constant(Rational::one()) }
    }

    pub fn constant(c: Rational) -> Self {
        RatFn::poly(Poly::constant(c))
    }

    /// Polynomial from monomial coefficients.
    pub fn from_monomials(c: &[Rational]) -> Self {
        RatFn::poly(Poly::new(c.to_vec()))
    }

    /// Exact lift of a jet viewed as the polynomial it truncates to.
    pub fn from_jet(j: &Jet<Rational>) -> Self {
        RatFn::from_monomials(&j.to_monomials())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Taylor jet at `t = 0`; `None` when the denominator vanishes there.
    pub fn to_jet(&self, order: usize) -> Option<Jet<Rational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return None;
        }
        let mut c: Vec<Rational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.num.coeff(k);
            for j in 1..=k {
                acc -= self.den.coeff(j) * &c[k - j];
            }
            c.push(acc / &d0);
        }
        Some(Jet::new(
            c.into_iter()
                .enumerate()
                .map(|(k, x)| x * factorial::<Rational>(k))
                .collect(),
        ))
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, o: RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(self.num.add(&o.num), self.den);
        }
        RatFn::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, o: RatFn) -> RatFn {
        self + (-o)
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, o: RatFn) -> RatFn {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFn::poly(Poly::zero());
        }
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den }
    }
}

impl TimeFn for RatFn {
    type Scalar = Rational;

    fn zero_like(&self) -> Self {
        RatFn::poly(Poly::zero())
    }

    fn constant_like(&self, c: Rational) -> Self {
        RatFn::constant(c)
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    fn shift(&self, b: &Rational) -> Self {
        // Shifting preserves coprimality and monic leading coefficients.
        RatFn { num: self.num.shift(b), den: self.den.shift(b) }
    }

    fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFn::new(n, self.den.mul(&self.den))
    }

    fn evaluate(&self, t: &Rational) -> Rational {
        self.num.evaluate(t) / self.den.evaluate(t)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0
    }

    fn max_abs(&self) -> Rational {
        crate::timefn::max_scalar(self.num.coeffs().iter().map(Scalar::abs))
    }

    fn check_compatible(&self, _other: &Self) -> Result<(), StructureError> {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&x| q(x, 1)).collect())
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let f = p(&[1, 2, 3]);
        let g = f.shift(&q(1, 1));
        assert_eq!(g, p(&[6, 8, 3]));
        for t in -3..4 {
            let t = q(t, 2);
            assert_eq!(g.evaluate(&t), f.evaluate(&(t.clone() + q(1, 1))));
        }
    }

    #[test]
    fn reduction_and_arithmetic() {
        // (t² − 1)/(t − 1) = t + 1
        let r = RatFn::new(p(&[-1, 0, 1]), p(&[-1, 1]));
        assert_eq!(r, RatFn::poly(p(&[1, 1])));
        let inv = RatFn::new(p(&[1]), p(&[1, 0, 1]));
        let one = inv.clone() * RatFn::poly(p(&[1, 0, 1]));
        assert_eq!(one, RatFn::constant(q(1, 1)));
        let d = inv.derivative();
        // d/dt (1 + t²)^-1 = −2t/(1 + t²)²
        assert_eq!(d, RatFn::new(p(&[0, -2]), p(&[1, 0, 2, 0, 1])));
        assert!((inv.clone() - inv).is_zero());
    }

    #[test]
    fn series_projection() {
        let inv = RatFn::new(p(&[1]), p(&[1, -1]));
        let j = inv.to_jet(4).unwrap();
        let expect: Vec<Rational> = (0..=4).map(factorial::<Rational>).collect();
        assert_eq!(j.coeffs(), &expect[..]);
        assert!(RatFn::new(p(&[1]), p(&[0, 1])).to_jet(2).is_none());
    }
}
