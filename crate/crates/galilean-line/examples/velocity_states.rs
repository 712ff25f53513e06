//! Gridded velocity-space states: a Gaussian transformed by a boost, a
//! reflection and an accelerating translation, with norms and overlaps.

use galilean_line::jet::Jet;
use galilean_line::line_group::GroupElement;
use galilean_line::timefn::{Mat3, Vec3};
use galilean_line::velocity_rep::{inner_product, transform_state, RepParams, VelocityState};

fn element(r: f64, mono: &[f64], b: f64, order: usize) -> GroupElement<Jet<f64>> {
    let proto = Jet::zero(order);
    let rot = Mat3::constant(&[[r, 0.0, 0.0], [0.0, r, 0.0], [0.0, 0.0, 1.0]], &proto);
    let mut a = Vec3::zero(&proto);
    a.c[0] = Jet::from_monomials(mono, order);
    GroupElement::new(rot, a, b)
}

fn main() {
    let order = 8;
    let params = RepParams::new(1.0, 0.0).unwrap();
    let psi = VelocityState::gaussian(512, 20.0, 0.0, 1.0, 0.5, params.clone(), order).unwrap();
    let phi = VelocityState::gaussian(512, 20.0, 1.0, 0.8, -0.3, params, order).unwrap();
    let before = inner_product(&psi, &phi).unwrap();
    println!("‖ψ‖ = {:.15}, ⟨ψ|φ⟩ = {:.6}", psi.norm(), before);

    let cases = [
        ("boost v = 2", element(1.0, &[0.0, 2.0], 0.0, order)),
        ("reflection + time shift", element(-1.0, &[0.5], 0.7, order)),
        ("accelerating translation", element(1.0, &[0.0, 0.5, 0.25, 0.1], -0.4, order)),
    ];
    for (name, g) in cases {
        let gp = transform_state(&g, &psi).unwrap();
        let gf = transform_state(&g, &phi).unwrap();
        let after = inner_product(&gp, &gf).unwrap();
        println!(
            "{name:<26} ‖Uψ‖ = {:.15}  ⟨v⟩ shift = {:+.4}  |Δ⟨ψ|φ⟩| = {:.2e}",
            gp.norm(),
            gp.mean_offset() - psi.mean_offset(),
            (after - before).norm()
        );
    }
}
