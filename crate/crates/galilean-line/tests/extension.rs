//! Phase extensions: the standard cocycle, its Bargmann limit, the dual
//! phase identity, the negative-control variants and the central
//! obstruction.

use galilean_line::extension::obstruction::brute_force_solve;
use galilean_line::extension::{
    associativity_residual, bargmann_phase, bargmann_reduction_residual, central_obstruction_solve,
    dual_phase_residual, ext_associativity_residual, CocycleVariant, ExtendedElement,
};
use galilean_line::error::DomainError;
use galilean_line::random::{element_const_rot, galilei, trial_rng};
use galilean_line::scalar::{q, Rational};
use galilean_line::suites::{pinned_galilei_pair, pinned_time_rotation_triple};
use galilean_line::timefn::TimeFn;
use proptest::prelude::*;

const ORDER: usize = 8;

fn mass() -> Rational {
    q(3, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn standard_cocycle_is_a_cocycle(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let g: Vec<_> = (0..3).map(|_| element_const_rot::<Rational>(&mut rng, 2, ORDER)).collect();
        let r = associativity_residual(CocycleVariant::Standard, &g[2], &g[1], &g[0], &mass()).unwrap();
        prop_assert!(r.is_zero());
        let e: Vec<_> = g.iter().map(|b| ExtendedElement { phase: b.proto().zero_like(), base: b.clone() }).collect();
        prop_assert!(ext_associativity_residual(&e[2], &e[1], &e[0], &mass()).unwrap() == q(0, 1));
    }

    #[test]
    fn standard_cocycle_reduces_to_bargmann(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let (g2, g1) = (galilei::<Rational>(&mut rng), galilei::<Rational>(&mut rng));
        let r = bargmann_reduction_residual(CocycleVariant::Standard, &g2, &g1, &mass(), ORDER).unwrap();
        prop_assert_eq!(r, q(0, 1));
    }

    #[test]
    fn dual_phase_identity(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let (g2, g1) = (element_const_rot::<Rational>(&mut rng, 2, ORDER), element_const_rot(&mut rng, 2, ORDER));
        prop_assert!(dual_phase_residual(&g2, &g1, &mass()).unwrap().is_zero());
    }

    #[test]
    fn bargmann_phase_is_a_cocycle(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let g: Vec<_> = (0..3).map(|_| galilei::<Rational>(&mut rng)).collect();
        let m = mass();
        let p = |a, b| bargmann_phase(a, b, &m);
        let g21 = galilean_line::line_group::GalileiParams::compose(&g[1], &g[0]);
        let g32 = galilean_line::line_group::GalileiParams::compose(&g[2], &g[1]);
        prop_assert_eq!(p(&g[1], &g[0]) + p(&g[2], &g21), p(&g[2], &g[1]) + p(&g32, &g[0]));
    }
}

#[test]
fn rate_symmetric_fails_only_the_bargmann_limit() {
    let [p2, p1] = pinned_galilei_pair();
    let r = bargmann_reduction_residual(CocycleVariant::RateSymmetric, &p2, &p1, &mass(), ORDER).unwrap();
    assert_eq!(r, q(-367, 44));
    let [a, b, c] = pinned_time_rotation_triple();
    assert!(associativity_residual(CocycleVariant::RateSymmetric, &a, &b, &c, &mass()).unwrap().is_zero());
}

#[test]
fn antisymmetric_variants_fail_only_associativity() {
    let [p2, p1] = pinned_galilei_pair();
    let [a, b, c] = pinned_time_rotation_triple();
    for v in [CocycleVariant::ShiftedAntisymmetric, CocycleVariant::RateAntisymmetric] {
        assert_eq!(bargmann_reduction_residual(v, &p2, &p1, &mass(), ORDER).unwrap(), q(0, 1), "{}", v.name());
        assert!(!associativity_residual(v, &a, &b, &c, &mass()).unwrap().is_zero(), "{}", v.name());
    }
}

#[test]
fn standard_cocycle_rejects_time_dependent_rotations() {
    let [a, b, c] = pinned_time_rotation_triple();
    assert!(matches!(
        associativity_residual(CocycleVariant::Standard, &a, &b, &c, &mass()),
        Err(DomainError::TimeDependentRotation)
    ));
}

#[test]
fn obstruction_forces_alpha01_and_matches_brute_force() {
    for n in 2..=8 {
        let r = central_obstruction_solve(n).unwrap();
        assert!(r.alpha01_forced_zero(), "N = {n}");
        assert_eq!(r.nullspace_dim, n.div_ceil(2), "N = {n}");
        assert!(r.free_parameters.contains(&(n - 1, n)), "N = {n}");
        let brute = brute_force_solve(n, [0, 1, 2]);
        assert_eq!(brute.nullspace_dim, r.nullspace_dim, "N = {n}");
        assert_eq!(brute.forced_zeros, r.forced_zeros, "N = {n}");
    }
    assert!(central_obstruction_solve(2).unwrap().only_top_pair_free());
    assert!(central_obstruction_solve(1).is_err());
}
