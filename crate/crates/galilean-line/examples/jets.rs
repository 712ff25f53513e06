//! Truncated jets: exact arithmetic, the time shift, and a time-dependent
//! rotation built by exponentiating an angle jet.

use galilean_line::jet::{angle_matrix, rot_exp, Jet};
use galilean_line::scalar::{q, rational_string, Rational};
use galilean_line::timefn::Vec3;

fn show(label: &str, j: &Jet<Rational>) {
    let mono: Vec<String> = j.to_monomials().iter().map(rational_string).collect();
    println!("{label:<18} monomials = [{}]", mono.join(", "));
}

fn main() {
    let order = 6;
    // f(t) = 1 + 2t + 3t², g(t) = t
    let f = Jet::from_monomials(&[q(1, 1), q(2, 1), q(3, 1)], order);
    let t = Jet::variable(order);
    show("f", &f);
    show("f * t", &(f.clone() * t.clone()));
    show("f'", &f.derivative());
    show("shift f by 1/2", &f.shift(&q(1, 2)));
    println!("f(1/2) = {}", rational_string(&f.evaluate(&q(1, 2))));

    // Polynomials below the truncation order shift exactly.
    let shifted_then_evaluated = f.shift(&q(1, 2)).evaluate(&q(0, 1));
    assert_eq!(shifted_then_evaluated, f.evaluate(&q(1, 2)));

    // Rotation about z by θ(t) = t: R(t) = exp(θ L_z), exact up to order N.
    let theta = Vec3::new(Jet::zero(order), Jet::zero(order), t);
    let rot = rot_exp(&angle_matrix(&theta)).expect("antisymmetric and nilpotent");
    show("R_xx = cos t", &rot.m[0][0]);
    show("R_yx = sin t", &rot.m[1][0]);
    let off = rot.orthogonality_defect().max_abs();
    println!("max |R Rᵀ − I| coefficient = {}", rational_string(&off));
}
