//! Dynamics on gridded states: the Hamiltonian as time-translation
//! generator, canonical commutators, split-step gravity and the
//! equivalence comparison.

use galilean_line::dynamics::{
    ccr_expectation, equivalence_experiment, gravity_evolve, hamiltonian_fd_residual, hp_commutator_norm,
    strang_convergence, EquivalenceParams, FrameSpec, GravitySpec,
};
use galilean_line::velocity_rep::{RepParams, VelocityState};
use galilean_line::suites::{equivalence_rows, MISMATCH_THRESHOLD};

const ORDER: usize = 8;

fn state(n: usize, sigma: f64) -> VelocityState {
    VelocityState::gaussian(n, 20.0, 0.0, sigma, 0.3, RepParams::new(1.0, 0.2).unwrap(), ORDER).unwrap()
}

#[test]
fn hamiltonian_generates_time_translations() {
    let s = state(512, 1.0);
    for frame in [FrameSpec::inertial(ORDER), FrameSpec::uniform_acceleration(0.5, ORDER), FrameSpec::jerk(0.5, ORDER)] {
        for t in [0.0, 0.5] {
            let r = hamiltonian_fd_residual(&s, &frame, 1e-3, t).unwrap();
            assert!(r <= 1e-5, "{} at t = {t}: {r:e}", frame.description);
        }
    }
    assert!(hamiltonian_fd_residual(&s, &FrameSpec::inertial(ORDER), 0.0, 0.0).is_err());
}

#[test]
fn canonical_commutator_is_i_hbar() {
    let s = state(2048, 1.5);
    let c = ccr_expectation(&s, 0.0).unwrap();
    assert!((c.re).abs() < 1e-8 && (c.im - 1.0).abs() < 1e-8, "{c}");
    let s2 = s.clone().with_hbar(0.5);
    let c2 = ccr_expectation(&s2, 0.0).unwrap();
    assert!((c2.im - 0.5).abs() < 1e-8, "{c2}");
}

#[test]
fn momentum_is_conserved_only_in_inertial_frames() {
    let s = state(512, 1.0);
    assert!(hp_commutator_norm(&s, &FrameSpec::inertial(ORDER), 0.3).unwrap() < 1e-8);
    assert!(hp_commutator_norm(&s, &FrameSpec::uniform_acceleration(0.5, ORDER), 0.3).unwrap() > 1e-3);
}

#[test]
fn frames_must_start_at_rest() {
    let mut u = FrameSpec::inertial(ORDER).u;
    u.c[0] = galilean_line::jet::Jet::constant(1.0, ORDER);
    assert!(FrameSpec::new(u, "offset").is_err());
}

#[test]
fn gravity_is_unitary_and_second_order() {
    let s = state(512, 1.0);
    let grav = GravitySpec { m_g: 1.0, gamma: [0.5, 0.0, 0.0] };
    let out = gravity_evolve(&s, &grav, 1.0, 200).unwrap();
    assert!((out.norm() - 1.0).abs() < 1e-12);
    // The mean velocity drifts by −(m_g/m)γ b.
    let drift = out.mean_offset() - s.mean_offset();
    assert!((drift + 0.5).abs() < 1e-6, "drift {drift}");
    let (_, _, order) = strang_convergence(&s, &grav, 1.0, 50).unwrap();
    assert!((1.9..=2.1).contains(&order), "observed order {order}");
    assert!(gravity_evolve(&s, &grav, 1.0, 0).is_err());
}

#[test]
fn equivalence_holds_for_equal_masses_and_fails_otherwise() {
    let base = EquivalenceParams { steps: 200, outputs: 4, ..EquivalenceParams::default() };
    let matched = equivalence_experiment(&base).unwrap();
    assert_eq!(matched.rows.len(), 4);
    assert!(matched.rows.iter().all(|r| (r.fidelity - 1.0).abs() <= 1e-6));
    let mismatched = equivalence_experiment(&EquivalenceParams { m_g: 1.2, ..base.clone() }).unwrap();
    assert!(mismatched.rows.last().unwrap().fidelity < MISMATCH_THRESHOLD);
    let bad = EquivalenceParams { steps: 7, outputs: 2, ..base.clone() };
    assert!(equivalence_experiment(&bad).is_err());
    assert!(equivalence_rows(&base).iter().all(|r| r.pass));
}
