//! The equivalence comparison: a free state viewed from a uniformly
//! accelerating frame versus the same state evolved in a uniform
//! gravitational field, for equal and unequal inertial and gravitational
//! masses.

use galilean_line::dynamics::{equivalence_experiment, EquivalenceParams};

fn main() {
    for m_g in [1.0, 1.2] {
        let p = EquivalenceParams { m_g, steps: 400, outputs: 4, ..EquivalenceParams::default() };
        let r = equivalence_experiment(&p).unwrap();
        println!("m = {}, m_g = {m_g}", p.m);
        println!("{:>6} {:>20} {:>20}", "b", "fidelity", "unaligned");
        for row in &r.rows {
            println!("{:>6.2} {:>20.16} {:>20.16}", row.b, row.fidelity, row.fidelity_unaligned);
        }
        println!("minimum fidelity {:.16}, clipped mass {:.1e}\n", r.fidelity_min, r.clipped_mass);
    }
}
