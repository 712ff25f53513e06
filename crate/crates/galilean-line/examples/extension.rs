//! Phase extensions of the line group: the standard cocycle, its Bargmann
//! limit on Galilei elements, and candidate formulas that fail one of the
//! two requirements once rotations depend on time.

use galilean_line::extension::{
    associativity_residual, bargmann_reduction_residual, compose_ext, ext_associativity_residual,
    CocycleVariant, ExtendedElement,
};
use galilean_line::random::{element_const_rot, trial_rng};
use galilean_line::scalar::{q, rational_string, Rational};
use galilean_line::suites::{pinned_galilei_pair, pinned_time_rotation_triple};
use galilean_line::timefn::TimeFn;

fn main() {
    let order = 8;
    let m = q(3, 2);
    let mut rng = trial_rng(11, 0);
    let g: Vec<_> = (0..3).map(|_| element_const_rot::<Rational>(&mut rng, 2, order)).collect();

    let r = associativity_residual(CocycleVariant::Standard, &g[2], &g[1], &g[0], &m).unwrap();
    println!("standard cocycle 2-cocycle residual: {}", rational_string(&r.max_abs()));

    let e: Vec<_> = g
        .iter()
        .map(|base| ExtendedElement { phase: base.proto().zero_like(), base: base.clone() })
        .collect();
    let e21 = compose_ext(&e[1], &e[0], &m).unwrap();
    println!("phase of e₂e₁ at t = 0: {}", rational_string(&e21.phase.evaluate(&q(0, 1))));
    println!(
        "extended associativity residual: {}",
        rational_string(&ext_associativity_residual(&e[2], &e[1], &e[0], &m).unwrap())
    );

    let [p2, p1] = pinned_galilei_pair();
    let [a, b, c] = pinned_time_rotation_triple();
    println!("\n{:<24} {:>22} {:>22}", "variant", "Bargmann residual", "assoc. residual (R(t))");
    for v in [
        CocycleVariant::Standard,
        CocycleVariant::RateSymmetric,
        CocycleVariant::ShiftedAntisymmetric,
        CocycleVariant::RateAntisymmetric,
    ] {
        let bargmann = bargmann_reduction_residual(v, &p2, &p1, &m, order)
            .map(|r| rational_string(&r))
            .unwrap_or_else(|e| e.to_string());
        let assoc = associativity_residual(v, &a, &b, &c, &m)
            .map(|r| rational_string(&r.max_abs()))
            .unwrap_or_else(|e| format!("n/a ({e})"));
        println!("{:<24} {:>22} {:>22}", v.name(), bargmann, assoc);
    }
}
