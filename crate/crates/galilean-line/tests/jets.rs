//! Jet arithmetic: ring laws, Leibniz rule, shift behaviour and structural
//! errors.

use galilean_line::error::StructureError;
use galilean_line::jet::{angle_matrix, jet_arith, rot_exp, ArithKind, Jet, JetValue};
use galilean_line::random::{poly_jet, trial_rng};
use galilean_line::scalar::{q, Rational};
use galilean_line::timefn::Vec3;
use proptest::prelude::*;

const ORDER: usize = 8;

fn jet(seed: u64, k: u64, degree: usize) -> Jet<Rational> {
    poly_jet(&mut trial_rng(seed, k), degree, ORDER)
}

fn small_q() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let (f, g, h) = (jet(seed, 1, 4), jet(seed, 2, 4), jet(seed, 3, 4));
        prop_assert_eq!(f.clone() * g.clone(), g.clone() * f.clone());
        prop_assert_eq!((f.clone() * g.clone()) * h.clone(), f.clone() * (g.clone() * h.clone()));
        prop_assert_eq!(f.clone() * (g.clone() + h.clone()), f.clone() * g.clone() + f.clone() * h.clone());
        prop_assert!((f.clone() - f).is_zero());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        let (f, g) = (jet(seed, 1, 4), jet(seed, 2, 4));
        let lhs = (f.clone() * g.clone()).derivative();
        let rhs = f.derivative() * g.clone() + f * g.derivative();
        // The derivative loses the top coefficient; compare below it.
        prop_assert_eq!(&lhs.coeffs()[..ORDER - 1], &rhs.coeffs()[..ORDER - 1]);
    }

    #[test]
    fn shift_is_exact_for_low_degree(seed in any::<u64>(), b in small_q(), c in small_q(), t in small_q()) {
        let f = jet(seed, 1, 4);
        prop_assert_eq!(f.shift(&b).evaluate(&t), f.evaluate(&(t.clone() + b.clone())));
        prop_assert_eq!(f.shift(&b).shift(&c), f.shift(&(b + c)));
    }

    #[test]
    fn shift_is_multiplicative_below_half_order(seed in any::<u64>(), b in small_q()) {
        let (f, g) = (jet(seed, 1, 3), jet(seed, 2, 3));
        prop_assert_eq!((f.clone() * g.clone()).shift(&b), f.shift(&b) * g.shift(&b));
    }

    #[test]
    fn antiderivative_inverts_derivative(seed in any::<u64>()) {
        let f = jet(seed, 1, 5);
        let back = f.derivative().antiderivative(f.coeff(0).clone());
        prop_assert_eq!(back, f);
    }

    #[test]
    fn exponentiated_rotations_are_orthogonal(seed in any::<u64>()) {
        let theta = Vec3::new(jet(seed, 1, 3) - Jet::constant(jet(seed, 1, 3).coeff(0).clone(), ORDER),
                              jet(seed, 2, 3) - Jet::constant(jet(seed, 2, 3).coeff(0).clone(), ORDER),
                              Jet::variable(ORDER));
        let r = rot_exp(&angle_matrix(&theta)).unwrap();
        prop_assert!(r.orthogonality_defect().is_zero());
        prop_assert_eq!(r.evaluate(&q(0, 1)), galilean_line::timefn::consts::identity());
    }
}

#[test]
fn monomial_round_trip() {
    let mono = vec![q(1, 2), q(-3, 1), q(0, 1), q(5, 7)];
    let j = Jet::from_monomials(&mono, 3);
    assert_eq!(j.to_monomials(), mono);
    assert_eq!(j.coeff(3), &(q(5, 7) * q(6, 1)));
}

#[test]
fn order_mismatch_is_reported() {
    let a = JetValue::Scalar(Jet::<Rational>::variable(4));
    let b = JetValue::Scalar(Jet::<Rational>::variable(5));
    assert_eq!(jet_arith(&a, &b, ArithKind::Add), Err(StructureError::OrderMismatch(4, 5)));
    assert!(Jet::<Rational>::variable(4).checked_mul(&Jet::variable(6)).is_err());
}

#[test]
fn dot_needs_vectors() {
    let s = JetValue::Scalar(Jet::<f64>::variable(3));
    let v = JetValue::Vector(Vec3::new(Jet::variable(3), Jet::zero(3), Jet::constant(2.0, 3)));
    assert!(jet_arith(&s, &v, ArithKind::Dot).is_err());
    match jet_arith(&v, &v, ArithKind::Dot).unwrap() {
        JetValue::Scalar(d) => assert_eq!(d.to_monomials(), vec![4.0, 0.0, 1.0, 0.0]),
        other => panic!("expected a scalar, got {other:?}"),
    }
}

#[test]
fn exponential_rejects_bad_input() {
    let mut theta = Vec3::new(Jet::<Rational>::zero(4), Jet::zero(4), Jet::constant(q(1, 1), 4));
    assert!(rot_exp(&angle_matrix(&theta)).is_err(), "constant angles are not nilpotent over ℚ");
    theta.c[2] = Jet::variable(4);
    let mut m = angle_matrix(&theta);
    m.m[0][1] = Jet::variable(4);
    assert!(rot_exp(&m).is_err(), "non-antisymmetric input");
}
