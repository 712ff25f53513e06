//! Central extensions of the boost tower: solves the Jacobi constraints
//! exactly for increasing `N` and cross-checks against a brute-force
//! evaluation of every Jacobi identity.

use galilean_line::extension::central_obstruction_solve;
use galilean_line::extension::obstruction::brute_force_solve;

fn main() {
    println!("{:>3} {:>10} {:>14} {:>10}  free parameters", "N", "null dim", "α₀₁ forced 0", "agrees");
    for n in 2..=8 {
        let r = central_obstruction_solve(n).expect("n ≥ 2");
        let brute = brute_force_solve(n, [0, 1, 2]);
        let agrees = brute.nullspace_dim == r.nullspace_dim && brute.forced_zeros == r.forced_zeros;
        let free: Vec<String> = r.free_parameters.iter().map(|(a, b)| format!("α{a}{b}")).collect();
        println!(
            "{:>3} {:>10} {:>14} {:>10}  {}",
            n,
            r.nullspace_dim,
            r.alpha01_forced_zero(),
            agrees,
            free.join(" ")
        );
    }
}
