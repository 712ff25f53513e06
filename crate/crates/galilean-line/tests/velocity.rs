//! Velocity representation: ket phases and labels, Galilei limits, the
//! cocycles, and unitarity of gridded state transforms.

use galilean_line::error::DomainError;
use galilean_line::extension::{xi, CocycleVariant};
use galilean_line::jet::Jet;
use galilean_line::line_group::{compose, GroupElement};
use galilean_line::random::{element_const_rot, galilei, jet_rotation, poly_vec_jet, trial_rng, vec3};
use galilean_line::scalar::{q, Rational};
use galilean_line::timefn::{Mat3, Vec3};
use galilean_line::velocity_rep::{
    alt_composition_residual, galilei_reduction_check, inner_product, internal_energy_residual,
    three_cocycle, three_cocycle_closed, transform_ket, transform_state, two_cocycle, two_cocycle_closed, RepParams,
    VelocityState,
};
use proptest::prelude::*;

const ORDER: usize = 8;

fn params() -> RepParams<Rational> {
    RepParams::new(q(3, 2), q(1, 3)).unwrap()
}

fn unshifted(mut g: GroupElement<Jet<Rational>>) -> GroupElement<Jet<Rational>> {
    g.tshift = q(0, 1);
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn galilei_limits(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let g = galilei::<Rational>(&mut rng);
        let q0 = vec3::<Rational>(&mut rng);
        prop_assert_eq!(galilei_reduction_check(&g, &q0, &params(), ORDER).unwrap(), q(0, 1));
        prop_assert_eq!(internal_energy_residual(&g, &q0, &params(), ORDER).unwrap(), q(0, 1));
    }

    #[test]
    fn labels_compose(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let (g2, g1) = (element_const_rot::<Rational>(&mut rng, 2, ORDER), element_const_rot(&mut rng, 2, ORDER));
        let lab = poly_vec_jet::<Rational>(&mut rng, 1, ORDER);
        let k1 = transform_ket(&g1, &lab, &params()).unwrap();
        let k2 = transform_ket(&g2, &k1.label, &params()).unwrap();
        let k21 = transform_ket(&compose(&g2, &g1).unwrap(), &lab, &params()).unwrap();
        prop_assert_eq!(k2.label, k21.label);
    }

    #[test]
    fn cocycles_without_time_shifts(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let g: Vec<_> = (0..3).map(|_| unshifted(element_const_rot::<Rational>(&mut rng, 2, ORDER))).collect();
        let lab = poly_vec_jet::<Rational>(&mut rng, 1, ORDER);
        let p = params();
        let base = xi(CocycleVariant::Standard, &g[1], &g[0], &p.m).unwrap();
        prop_assert_eq!(&two_cocycle(&g[1], &g[0], &lab, &p).unwrap(), &base);
        prop_assert_eq!(&two_cocycle_closed(&g[1], &g[0], &lab, &p).unwrap(), &base);
        prop_assert!(three_cocycle(&g[2], &g[1], &g[0], &lab, &p).unwrap().is_zero());
        prop_assert!(three_cocycle_closed(&g[2], &g[1], &g[0], &lab, &p).unwrap().is_zero());
    }

    #[test]
    fn alternative_rule_defect_is_the_shifted_cocycle(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let (g2, g1) = (element_const_rot::<Rational>(&mut rng, 2, ORDER), element_const_rot(&mut rng, 2, ORDER));
        let lab = poly_vec_jet::<Rational>(&mut rng, 1, ORDER);
        prop_assert!(alt_composition_residual(&g2, &g1, &lab, &params(), &q(1, 1)).unwrap().is_zero());
    }
}

fn axis_element(r: f64, mono: &[f64], b: f64) -> GroupElement<Jet<f64>> {
    let proto = Jet::zero(ORDER);
    let rot = Mat3::constant(&[[r, 0.0, 0.0], [0.0, r, 0.0], [0.0, 0.0, 1.0]], &proto);
    let mut a = Vec3::zero(&proto);
    a.c[0] = Jet::from_monomials(mono, ORDER);
    GroupElement::new(rot, a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn state_transforms_are_unitary(
        flip in any::<bool>(),
        a in prop::collection::vec(-1.0f64..1.0, 4),
        b in -1.0f64..1.0,
        c in -0.5f64..0.5,
    ) {
        let p = RepParams::new(1.0, 0.25).unwrap();
        let psi = VelocityState::gaussian(512, 20.0, c, 1.0, 0.4, p.clone(), ORDER).unwrap();
        let phi = VelocityState::gaussian(512, 20.0, -c, 0.7, -0.2, p, ORDER).unwrap();
        let g = axis_element(if flip { -1.0 } else { 1.0 }, &a, b);
        let (gp, gf) = (transform_state(&g, &psi).unwrap(), transform_state(&g, &phi).unwrap());
        prop_assert!((gp.norm() - 1.0).abs() < 1e-9);
        let before = inner_product(&psi, &phi).unwrap();
        let after = inner_product(&gp, &gf).unwrap();
        prop_assert!((after - before).norm() < 1e-9);
    }
}

#[test]
fn time_dependent_rotations_are_rejected() {
    let mut rng = trial_rng(1, 0);
    let rot = jet_rotation::<Rational>(&mut rng, ORDER);
    let g = GroupElement::new(rot, poly_vec_jet(&mut rng, 1, ORDER), q(0, 1));
    let lab = poly_vec_jet::<Rational>(&mut rng, 1, ORDER);
    assert!(matches!(transform_ket(&g, &lab, &params()), Err(DomainError::TimeDependentRotation)));
}

#[test]
fn nonpositive_mass_is_rejected() {
    assert!(RepParams::new(q(0, 1), q(1, 1)).is_err());
    assert!(RepParams::new(-1.0, 0.0).is_err());
}

#[test]
fn states_need_a_grid_and_a_valid_frame() {
    let p = RepParams::new(1.0, 0.0).unwrap();
    let frame = Vec3::zero(&Jet::<f64>::zero(ORDER));
    let few = vec![num_complex::Complex64::new(1.0, 0.0); 4];
    assert!(VelocityState::new(few, 10.0, frame.clone(), p.clone(), 1.0).is_err());
    let mut moving = frame.clone();
    moving.c[0] = Jet::constant(1.0, ORDER);
    let ok = vec![num_complex::Complex64::new(1.0, 0.0); 64];
    assert!(VelocityState::new(ok.clone(), 10.0, moving, p.clone(), 1.0).is_err());
    assert!(VelocityState::new(ok, 10.0, frame, p, 0.0).is_err());
}
