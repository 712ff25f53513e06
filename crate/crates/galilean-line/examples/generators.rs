//! Generators of the function representation: finite-difference estimates
//! against closed forms, their convergence order, and the commutation
//! relations of the boost and rotation towers.

use galilean_line::generators::{
    convergence_order, generator_relative_error, CommutatorEngine, Generator, TestFunction,
};
use galilean_line::random::trial_rng;

fn main() {
    let f = TestFunction::random(&mut trial_rng(5, 0));
    let x = [0.3, -0.2, 0.1];
    let t = 0.4;

    println!("{:<8} {:>14} {:>8}", "gen", "rel. error", "order");
    for g in Generator::all(1) {
        let err = generator_relative_error(g, &f, &x, t, 1e-4).unwrap();
        let ord = convergence_order(g, &f, &x, t, 1e-2).unwrap();
        println!("{:<8} {:>14.3e} {:>8.3}", g.label(), err, ord);
    }

    let engine = CommutatorEngine::new(2, 1e-3).unwrap();
    let mut worst = (0.0f64, String::new());
    for &a in engine.tags() {
        for &b in engine.tags() {
            let r = engine.residual(a, b, &f, &x, t).unwrap();
            if r > worst.0 {
                worst = (r, format!("[{}, {}]", a.label(), b.label()));
            }
        }
    }
    println!("\nlargest commutator residual over {} pairs: {:.3e} at {}", engine.tags().len().pow(2), worst.0, worst.1);
}
