//! Functions of time as an algebra, and 3-vectors / 3×3 matrices over them.
//!
//! The line group and its cocycles only need a commutative algebra of
//! time functions with the shift automorphism `Λ_b f(t) = f(t + b)`, a
//! derivation `d/dt` and evaluation. Two carriers implement [`TimeFn`]:
//! truncated jets ([`crate::jet::Jet`]) and exact rational functions
//! ([`crate::ratfn::RatFn`]). The latter is used whenever a truncated jet
//! would break an identity that holds for the underlying analytic
//! functions, e.g. `Λ_b (f g) = (Λ_b f)(Λ_b g)` with time-dependent
//! rotations.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::StructureError;
use crate::scalar::Scalar;

/// A commutative algebra of real functions of one time variable.
pub trait TimeFn:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Scalar: Scalar;

    /// The zero function with the same structure (e.g. truncation order).
    fn zero_like(&self) -> Self;

    /// The constant function `c` with the same structure.
    fn constant_like(&self, c: Self::Scalar) -> Self;

    fn scale(&self, c: &Self::Scalar) -> Self;

    /// `Λ_b f`, i.e. `t ↦ f(t + b)`.
    fn shift(&self, b: &Self::Scalar) -> Self;

    fn derivative(&self) -> Self;

    fn evaluate(&self, t: &Self::Scalar) -> Self::Scalar;

    fn is_zero(&self) -> bool;

    /// True when the function does not depend on `t`.
    fn is_constant(&self) -> bool;

    /// Largest coefficient magnitude; zero exactly when the function is zero.
    fn max_abs(&self) -> Self::Scalar;

    /// Checks that two values can be combined (same truncation order).
    fn check_compatible(&self, other: &Self) -> Result<(), StructureError>;
}

/// A 3-vector of time functions.
#[derive(Clone, Debug, PartialEq)]
pub struct Vec3<F> {
    pub c: [F; 3],
}

/// A 3×3 matrix of time functions, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3<F> {
    pub m: [[F; 3]; 3],
}

impl<F: TimeFn> Vec3<F> {
    pub fn new(x: F, y: F, z: F) -> Self {
        Vec3 { c: [x, y, z] }
    }

    pub fn zero(proto: &F) -> Self {
        let z = proto.zero_like();
        Vec3::new(z.clone(), z.clone(), z)
    }

    /// Constant vector with the structure of `proto`.
    pub fn constant(v: &[F::Scalar; 3], proto: &F) -> Self {
        Vec3 {
            c: std::array::from_fn(|i| proto.constant_like(v[i].clone())),
        }
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Vec3 {
            c: std::array::from_fn(|i| f(&self.c[i])),
        }
    }

    pub fn zip(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        Vec3 {
            c: std::array::from_fn(|i| f(&self.c[i], &other.c[i])),
        }
    }

    pub fn dot(&self, other: &Self) -> F {
        self.c[0].clone() * other.c[0].clone()
            + self.c[1].clone() * other.c[1].clone()
            + self.c[2].clone() * other.c[2].clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    /// Multiplies every component by the function `f`.
    pub fn times(&self, f: &F) -> Self {
        self.map(|a| a.clone() * f.clone())
    }

    pub fn scale(&self, c: &F::Scalar) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn shift(&self, b: &F::Scalar) -> Self {
        self.map(|a| a.shift(b))
    }

    pub fn derivative(&self) -> Self {
        self.map(|a| a.derivative())
    }

    pub fn evaluate(&self, t: &F::Scalar) -> [F::Scalar; 3] {
        std::array::from_fn(|i| self.c[i].evaluate(t))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(TimeFn::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.iter().all(TimeFn::is_constant)
    }

    pub fn max_abs(&self) -> F::Scalar {
        max_scalar(self.c.iter().map(TimeFn::max_abs))
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), StructureError> {
        for (a, b) in self.c.iter().zip(other.c.iter()) {
            a.check_compatible(b)?;
        }
        self.c[0].check_compatible(&self.c[1])?;
        self.c[0].check_compatible(&self.c[2])
    }
}

impl<F: TimeFn> Mat3<F> {
    pub fn identity(proto: &F) -> Self {
        let z = proto.zero_like();
        let one = proto.constant_like(<F::Scalar as num_traits::One>::one());
        Mat3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { one.clone() } else { z.clone() })
            }),
        }
    }

    /// Constant matrix with the structure of `proto`.
    pub fn constant(r: &[[F::Scalar; 3]; 3], proto: &F) -> Self {
        Mat3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| proto.constant_like(r[i][j].clone()))
            }),
        }
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Mat3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.m[i][j]))),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())),
        }
    }

    pub fn mul_vec(&self, v: &Vec3<F>) -> Vec3<F> {
        Vec3 {
            c: std::array::from_fn(|i| {
                self.m[i][0].clone() * v.c[0].clone()
                    + self.m[i][1].clone() * v.c[1].clone()
                    + self.m[i][2].clone() * v.c[2].clone()
            }),
        }
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        Mat3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    self.m[i][0].clone() * other.m[0][j].clone()
                        + self.m[i][1].clone() * other.m[1][j].clone()
                        + self.m[i][2].clone() * other.m[2][j].clone()
                })
            }),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Mat3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| self.m[i][j].clone() - other.m[i][j].clone())
            }),
        }
    }

    pub fn shift(&self, b: &F::Scalar) -> Self {
        self.map(|a| a.shift(b))
    }

    pub fn derivative(&self) -> Self {
        self.map(|a| a.derivative())
    }

    pub fn evaluate(&self, t: &F::Scalar) -> [[F::Scalar; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].evaluate(t)))
    }

    pub fn is_constant(&self) -> bool {
        self.m.iter().flatten().all(TimeFn::is_constant)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(TimeFn::is_zero)
    }

    pub fn max_abs(&self) -> F::Scalar {
        max_scalar(self.m.iter().flatten().map(TimeFn::max_abs))
    }

    /// `Rᵀ R − I`, which vanishes for a rotation.
    pub fn orthogonality_defect(&self) -> Self {
        self.transpose()
            .mul_mat(self)
            .sub(&Mat3::identity(&self.m[0][0]))
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), StructureError> {
        for (a, b) in self.m.iter().flatten().zip(other.m.iter().flatten()) {
            a.check_compatible(b)?;
        }
        Ok(())
    }
}

pub(crate) fn max_scalar<S: Scalar>(it: impl Iterator<Item = S>) -> S {
    it.fold(S::zero(), |acc, x| if x > acc { x } else { acc })
}

/// Constant 3×3 matrix helpers over a scalar field.
pub mod consts {
    use crate::scalar::Scalar;

    pub type M3<S> = [[S; 3]; 3];

    pub fn identity<S: Scalar>() -> M3<S> {
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { S::one() } else { S::zero() }))
    }

    pub fn transpose<S: Scalar>(r: &M3<S>) -> M3<S> {
        std::array::from_fn(|i| std::array::from_fn(|j| r[j][i].clone()))
    }

    pub fn mul<S: Scalar>(a: &M3<S>, b: &M3<S>) -> M3<S> {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                a[i][0].clone() * b[0][j].clone()
                    + a[i][1].clone() * b[1][j].clone()
                    + a[i][2].clone() * b[2][j].clone()
            })
        })
    }

    pub fn apply<S: Scalar>(r: &M3<S>, v: &[S; 3]) -> [S; 3] {
        std::array::from_fn(|i| {
            r[i][0].clone() * v[0].clone()
                + r[i][1].clone() * v[1].clone()
                + r[i][2].clone() * v[2].clone()
        })
    }

    pub fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
        a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
    }

    pub fn add<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
        std::array::from_fn(|i| a[i].clone() + b[i].clone())
    }

    pub fn sub<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
        std::array::from_fn(|i| a[i].clone() - b[i].clone())
    }

    pub fn scale<S: Scalar>(c: &S, a: &[S; 3]) -> [S; 3] {
        std::array::from_fn(|i| c.clone() * a[i].clone())
    }

    pub fn zero<S: Scalar>() -> [S; 3] {
        std::array::from_fn(|_| S::zero())
    }

    /// Rotation matrix of the quaternion `(w, x, y, z)` divided by its squared
    /// norm, which is exactly orthogonal in any field.
    pub fn quaternion_rotation<S: Scalar>(w: &S, x: &S, y: &S, z: &S) -> M3<S> {
        let two = S::from_i64(2);
        let n = w.clone() * w.clone() + x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone();
        let (w, x, y, z) = (w.clone(), x.clone(), y.clone(), z.clone());
        let m = [
            [
                w.clone() * w.clone() + x.clone() * x.clone() - y.clone() * y.clone() - z.clone() * z.clone(),
                two.clone() * (x.clone() * y.clone() - w.clone() * z.clone()),
                two.clone() * (x.clone() * z.clone() + w.clone() * y.clone()),
            ],
            [
                two.clone() * (x.clone() * y.clone() + w.clone() * z.clone()),
                w.clone() * w.clone() - x.clone() * x.clone() + y.clone() * y.clone() - z.clone() * z.clone(),
                two.clone() * (y.clone() * z.clone() - w.clone() * x.clone()),
            ],
            [
                two.clone() * (x.clone() * z.clone() - w.clone() * y.clone()),
                two.clone() * (y.clone() * z.clone() + w.clone() * x.clone()),
                w.clone() * w.clone() - x.clone() * x.clone() - y.clone() * y.clone() + z.clone() * z.clone(),
            ],
        ];
        std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].clone() / n.clone()))
    }

    /// Levi-Civita symbol ε_ijk.
    pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
            _ => 0,
        }
    }
}
