//! Velocity kets: the transformation phase and label, its Galilei limit,
//! and the two- and three-cocycles of the projective representation.

use galilean_line::line_group::{GalileiParams, GroupElement};
use galilean_line::jet::Jet;
use galilean_line::random::{element_const_rot, trial_rng};
use galilean_line::scalar::{q, rational_string, Rational};
use galilean_line::timefn::Vec3;
use galilean_line::velocity_rep::{
    galilei_ket_phase, galilei_reduction_check, three_cocycle_closed, transform_ket, two_cocycle,
    two_cocycle_closed, RepParams,
};

fn main() {
    let order = 8;
    let p = RepParams::new(q(3, 2), q(1, 3)).unwrap();
    let label: Vec3<Jet<Rational>> = Vec3::constant(&[q(1, 2), q(0, 1), q(-1, 1)], &Jet::zero(order));

    let mut rng = trial_rng(3, 0);
    let g: Vec<GroupElement<_>> = (0..3).map(|_| element_const_rot::<Rational>(&mut rng, 2, order)).collect();
    let k = transform_ket(&g[0], &label, &p).unwrap();
    println!("phase(0) = {}", rational_string(&k.total_phase().evaluate(&q(0, 1))));
    println!("label(0) = {:?}", k.label.evaluate(&q(0, 1)).iter().map(rational_string).collect::<Vec<_>>());

    let direct = two_cocycle(&g[1], &g[0], &label, &p).unwrap();
    let closed = two_cocycle_closed(&g[1], &g[0], &label, &p).unwrap();
    println!("two-cocycle (direct) at t=0:  {}", rational_string(&direct.evaluate(&q(0, 1))));
    println!("two-cocycle (closed) at t=0:  {}", rational_string(&closed.evaluate(&q(0, 1))));
    let three = three_cocycle_closed(&g[2], &g[1], &g[0], &label, &p).unwrap();
    println!("three-cocycle (closed) max coefficient: {}", rational_string(&three.max_abs()));

    let mut gal = GalileiParams::<Rational>::identity();
    gal.v = [q(1, 1), q(2, 1), q(0, 1)];
    gal.a0 = [q(0, 1), q(1, 3), q(0, 1)];
    gal.b = q(1, 2);
    let q0 = [q(1, 2), q(0, 1), q(-1, 1)];
    println!("Galilei ket phase: {}", rational_string(&galilei_ket_phase(&gal, &q0, &p)));
    let residual = galilei_reduction_check(&gal, &q0, &p, order).unwrap();
    println!("reduction to the Galilei phase: residual {}", rational_string(&residual));
}
