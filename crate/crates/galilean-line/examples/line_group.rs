//! The line group: composition, inverses, the spacetime action, the
//! Galilei subgroup, and exact checks with time-dependent rotations.

use galilean_line::line_group::{
    act, compose, galilei_params, inverse, semidirect_residual, GalileiParams, GroupElement,
};
use galilean_line::random::{element_const_rot, trial_rng};
use galilean_line::scalar::{q, rational_string, Rational};
use galilean_line::suites::pinned_time_rotation_triple;
use galilean_line::timefn::TimeFn;

fn main() {
    let order = 8;
    let mut rng = trial_rng(7, 0);
    let g1: GroupElement<_> = element_const_rot::<Rational>(&mut rng, 2, order);
    let g2 = element_const_rot::<Rational>(&mut rng, 2, order);
    let g21 = compose(&g2, &g1).unwrap();

    // Acting with g₂g₁ equals acting with g₁ then g₂.
    let x = [q(1, 2), q(-1, 3), q(2, 1)];
    let t = q(1, 4);
    let (x1, t1) = act(&g1, &x, &t);
    let (x2, t2) = act(&g2, &x1, &t1);
    let (y, s) = act(&g21, &x, &t);
    assert_eq!((x2, t2), (y.clone(), s.clone()));
    println!("(g₂g₁)·(x,t) = ({}, {}, {}; {})", rational_string(&y[0]), rational_string(&y[1]), rational_string(&y[2]), rational_string(&s));

    let e = compose(&inverse(&g21), &g21).unwrap();
    println!("g⁻¹g = identity: {}", e == GroupElement::identity(g21.proto()));

    // Galilei elements embed with linear translations a(t) = a⁰ + v t.
    let mut g = GalileiParams::<Rational>::identity();
    g.v = [q(1, 1), q(0, 1), q(0, 1)];
    g.b = q(2, 1);
    let h = GalileiParams::compose(&g, &g);
    let embedded = compose(&g.embed(order), &g.embed(order)).unwrap();
    println!("Galilei product read back: {}", galilei_params(&embedded) == Some(h));

    // Time-dependent rotations with nonzero time shifts use exact rational
    // functions, so the group axioms hold with zero residual.
    let [a, b, c] = pinned_time_rotation_triple();
    let left = compose(&a, &compose(&b, &c).unwrap()).unwrap();
    let right = compose(&compose(&a, &b).unwrap(), &c).unwrap();
    println!("associativity residual (time-dependent rotations) = {}", rational_string(&left.distance(&right)));
    println!(
        "semidirect conjugation residual = {}",
        rational_string(&semidirect_residual(&a, &q(3, 2)))
    );
    println!("rotation of pinned element is constant: {}", a.rot.m[0][0].is_constant() && a.rot.is_constant());
}
