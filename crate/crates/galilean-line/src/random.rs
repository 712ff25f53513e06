//! Seeded random elements for property suites.
//!
//! Every trial draws from its own generator seeded with `seed ^ trial`, so
//! serial and parallel runs draw identical elements. Exact coefficients are
//! small rationals `p/q` with `q ∈ {1, 2, 3}` and `|p/q| ≤ 3`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::jet::{angle_matrix, rot_exp, Jet};
use crate::line_group::{GalileiParams, GroupElement};
use crate::ratfn::{Poly, RatFn};
use crate::scalar::{Rational, Scalar};
use crate::timefn::{consts, Mat3, Vec3};

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial)
}

/// Small rational in `[−3, 3]`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let den = rng.gen_range(1..=3i64);
    let num = rng.gen_range(-3 * den..=3 * den);
    Rational::from_ratio(num, den)
}

/// Small nonzero rational.
pub fn small_nonzero(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != Rational::from_i64(0) {
            return r;
        }
    }
}

/// Coefficient in the requested field: small rationals, or uniform floats in
/// `[−3, 3]`.
pub fn coeff<S: Scalar>(rng: &mut impl Rng) -> S {
    match S::FIELD {
        crate::scalar::Field::Exact => {
            let r = small_rational(rng);
            let n: i64 = r.numer().try_into().expect("small numerator");
            let d: i64 = r.denom().try_into().expect("small denominator");
            S::from_ratio(n, d)
        }
        crate::scalar::Field::Float => S::from_ratio(rng.gen_range(-3_000_000..=3_000_000), 1_000_000),
    }
}

pub fn vec3<S: Scalar>(rng: &mut impl Rng) -> [S; 3] {
    std::array::from_fn(|_| coeff(rng))
}

/// Polynomial jet of degree ≤ `degree` (so products of low-degree jets stay
/// below the truncation order).
pub fn poly_jet<S: Scalar>(rng: &mut impl Rng, degree: usize, order: usize) -> Jet<S> {
    let mono: Vec<S> = (0..=degree).map(|_| coeff(rng)).collect();
    Jet::from_monomials(&mono, order)
}

pub fn poly_vec_jet<S: Scalar>(rng: &mut impl Rng, degree: usize, order: usize) -> Vec3<Jet<S>> {
    Vec3 { c: std::array::from_fn(|_| poly_jet(rng, degree, order)) }
}

/// Exactly orthogonal constant rotation from a random quaternion.
pub fn constant_rotation<S: Scalar>(rng: &mut impl Rng) -> [[S; 3]; 3] {
    let w = S::from_i64(rng.gen_range(1..=3));
    let x = S::from_i64(rng.gen_range(-2..=2));
    let y = S::from_i64(rng.gen_range(-2..=2));
    let z = S::from_i64(rng.gen_range(-2..=2));
    consts::quaternion_rotation(&w, &x, &y, &z)
}

/// Line-group element with constant rotation and polynomial translation of
/// degree ≤ `degree`.
pub fn element_const_rot<S: Scalar>(rng: &mut impl Rng, degree: usize, order: usize) -> GroupElement<Jet<S>> {
    let rot = constant_rotation::<S>(rng);
    let trans = poly_vec_jet(rng, degree, order);
    let b = coeff(rng);
    GroupElement { rot: Mat3::constant(&rot, &Jet::zero(order)), trans, tshift: b }
}

/// Random Galilei parameters.
pub fn galilei<S: Scalar>(rng: &mut impl Rng) -> GalileiParams<S> {
    GalileiParams { rot: constant_rotation(rng), v: vec3(rng), a0: vec3(rng), b: coeff(rng) }
}

/// Exact element with a genuinely time-dependent rotation
/// `R(t) = M(q(t)) / |q(t)|²` for the quaternion `q(t) = (1, u + w t)`, a
/// polynomial translation of degree ≤ `degree`, and a random time shift.
/// `R` is exactly orthogonal for every `t` and `|q(t)|² ≥ 1`, so the rational
/// functions never have poles on the real axis.
pub fn element_time_rotation<R: Rng>(rng: &mut R, degree: usize) -> GroupElement<RatFn> {
    let lin = |rng: &mut dyn rand::RngCore| {
        let c0 = Rational::from_i64(rng.gen_range(-1..=1));
        let c1 = Rational::from_i64(rng.gen_range(-2..=2));
        Poly::new(vec![c0, c1])
    };
    let w = Poly::constant(Rational::from_i64(1));
    let mut x = lin(rng);
    let y = lin(rng);
    let z = lin(rng);
    if x.degree() == 0 && y.degree() == 0 && z.degree() == 0 {
        x = Poly::new(vec![x.coeff(0), Rational::from_i64(1)]);
    }
    let rot = quaternion_rotation_poly(&w, &x, &y, &z);
    let trans = Vec3 {
        c: std::array::from_fn(|_| {
            let mono: Vec<Rational> = (0..=degree).map(|_| small_rational(rng)).collect();
            RatFn::from_monomials(&mono)
        }),
    };
    GroupElement { rot, trans, tshift: small_rational(rng) }
}

/// Rotation of a polynomial quaternion, as rational functions of time.
pub fn quaternion_rotation_poly(w: &Poly, x: &Poly, y: &Poly, z: &Poly) -> Mat3<RatFn> {
    let two = Rational::from_i64(2);
    let n = w.mul(w).add(&x.mul(x)).add(&y.mul(y)).add(&z.mul(z));
    let sq = |a: &Poly| a.mul(a);
    let entries = [
        [
            sq(w).add(&sq(x)).sub(&sq(y)).sub(&sq(z)),
            x.mul(y).sub(&w.mul(z)).scale(&two),
            x.mul(z).add(&w.mul(y)).scale(&two),
        ],
        [
            x.mul(y).add(&w.mul(z)).scale(&two),
            sq(w).sub(&sq(x)).add(&sq(y)).sub(&sq(z)),
            y.mul(z).sub(&w.mul(x)).scale(&two),
        ],
        [
            x.mul(z).sub(&w.mul(y)).scale(&two),
            y.mul(z).add(&w.mul(x)).scale(&two),
            sq(w).sub(&sq(x)).sub(&sq(y)).add(&sq(z)),
        ],
    ];
    Mat3 {
        m: std::array::from_fn(|i| std::array::from_fn(|j| RatFn::new(entries[i][j].clone(), n.clone()))),
    }
}

/// Jet rotation `exp(Σ θ_i(t) L_i)` with random angle jets vanishing at
/// `t = 0` (so the exponential series terminates in the exact field).
pub fn jet_rotation<S: Scalar>(rng: &mut impl Rng, order: usize) -> Mat3<Jet<S>> {
    let theta = Vec3 {
        c: std::array::from_fn(|_| {
            let mono: Vec<S> = (0..=2).map(|k| if k == 0 { S::zero() } else { coeff(rng) }).collect();
            Jet::from_monomials(&mono, order)
        }),
    };
    rot_exp(&angle_matrix(&theta)).expect("angle matrix is antisymmetric and nilpotent")
}
