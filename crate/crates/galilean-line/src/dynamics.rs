//! Non-inertial quantum dynamics in the velocity representation.
//!
//! In a frame with velocity offset `u(t)` a grid point `v` carries the label
//! `q(t) = v + u(t)`, and the generator of time translations is
//!
//! ```text
//! H = ½m q² + w + ½m q̇·a_q + iħ q̇·∂_q,     a_q(t) = v t + ∫₀ᵗ u,
//! ```
//!
//! the last two terms being the fictitious potential `m q̇·(X + ½a_q)` with
//! `X = (iħ/m)∂_q`. Finite time translations never need an integrator:
//! they are the exact group action (`(I, 0, b)` through
//! [`transform_state`]). A linear gravitational potential is evolved with
//! a split-step scheme by [`gravity_evolve`], and
//! [`equivalence_experiment`] compares the two pictures.

use num_complex::Complex64;

use crate::error::{DomainError, StructureError};
use crate::jet::{Jet, VecJet};
use crate::line_group::GroupElement;
use crate::timefn::Vec3;
use crate::velocity_rep::state::{shift_samples, Interpolation};
use crate::velocity_rep::{inner_product, transform_state, RepParams, VelocityState};

/// A frame given by its velocity offset `u(t)`, `u(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSpec {
    pub u: VecJet<f64>,
    pub description: String,
}

impl FrameSpec {
    pub fn new(u: VecJet<f64>, description: impl Into<String>) -> Result<Self, DomainError> {
        if u.evaluate(&0.0).iter().any(|x| x.abs() > 1e-12) {
            return Err(DomainError::Invalid("frame velocity must vanish at t = 0".into()));
        }
        Ok(FrameSpec { u, description: description.into() })
    }

    fn along_axis(mono: &[f64], order: usize, description: String) -> Self {
        let mut u = Vec3::zero(&Jet::zero(order));
        u.c[0] = Jet::from_monomials(mono, order);
        FrameSpec { u, description }
    }

    /// `u ≡ 0`.
    pub fn inertial(order: usize) -> Self {
        FrameSpec::along_axis(&[0.0], order, "inertial".into())
    }

    /// `u = g t`.
    pub fn uniform_acceleration(g: f64, order: usize) -> Self {
        FrameSpec::along_axis(&[0.0, g], order, format!("uniform acceleration {g}"))
    }

    /// `u = ½ j t²`.
    pub fn jerk(j: f64, order: usize) -> Self {
        FrameSpec::along_axis(&[0.0, 0.0, 0.5 * j], order, format!("jerk {j}"))
    }

    pub fn is_inertial(&self) -> bool {
        self.u.is_zero()
    }

    /// `(u(t), u̇(t), ∫₀ᵗ u)` along the gridded axis.
    fn axis_values(&self, t: f64) -> (f64, f64, f64) {
        let u = &self.u.c[0];
        (u.evaluate(&t), u.derivative().evaluate(&t), u.antiderivative(0.0).evaluate(&t))
    }
}

/// A linear gravitational potential `m_g γ·X`.
#[derive(Debug, Clone, PartialEq)]
pub struct GravitySpec {
    pub m_g: f64,
    pub gamma: [f64; 3],
}

/// Observables acting on gridded states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    P,
    X,
    V,
    H,
}

impl Observable {
    pub fn parse(s: &str) -> Result<Self, DomainError> {
        match s {
            "P" | "p" => Ok(Observable::P),
            "X" | "x" => Ok(Observable::X),
            "V" | "v" => Ok(Observable::V),
            "H" | "h" => Ok(Observable::H),
            other => Err(DomainError::Invalid(format!("unknown observable {other:?}"))),
        }
    }
}

/// `∂ψ/∂v` by fourth-order central differences with zero padding.
pub fn derivative(values: &[Complex64], dv: f64) -> Vec<Complex64> {
    let n = values.len();
    let at = |j: isize| {
        if j >= 0 && (j as usize) < n {
            values[j as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    (0..n as isize)
        .map(|j| (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / (12.0 * dv))
        .collect()
}

/// Applies an observable at time `t_eval`. Labels are `v + u(t_eval)` with
/// `u` from `frame` when given and from the state otherwise; `H` requires
/// an explicit frame.
pub fn apply_observable(
    which: Observable,
    s: &VelocityState,
    frame: Option<&FrameSpec>,
    t_eval: f64,
) -> Result<VelocityState, DomainError> {
    let RepParams { m, w } = s.params().clone();
    let hbar = s.hbar();
    let u_jet = frame.map(|f| f.u.clone()).unwrap_or_else(|| s.frame().clone());
    let fr = FrameSpec { u: u_jet, description: String::new() };
    let (u, ud, uint) = fr.axis_values(t_eval);
    let grid = s.grid();
    let vals = s.values();
    let out: Vec<Complex64> = match which {
        Observable::P => grid.iter().zip(vals).map(|(v, z)| z * (m * (v + u))).collect(),
        Observable::X => derivative(vals, s.dv()).into_iter().map(|d| d * Complex64::new(0.0, hbar / m)).collect(),
        Observable::V => vals.iter().map(|z| z * w).collect(),
        Observable::H => {
            if frame.is_none() {
                return Err(DomainError::Invalid("the Hamiltonian needs a frame".into()));
            }
            let d = derivative(vals, s.dv());
            grid.iter()
                .zip(vals)
                .zip(d)
                .map(|((v, z), dz)| {
                    let q = v + u;
                    let aq = v * t_eval + uint;
                    z * (0.5 * m * q * q + w + 0.5 * m * ud * aq) + dz * Complex64::new(0.0, hbar * ud)
                })
                .collect()
        }
    };
    Ok(s.with_values(out))
}

/// `⟨ψ|Aψ⟩`.
pub fn expectation(which: Observable, s: &VelocityState, frame: Option<&FrameSpec>, t_eval: f64) -> Result<Complex64, DomainError> {
    let a = apply_observable(which, s, frame, t_eval)?;
    Ok(inner_product(s, &a)?)
}

/// `⟨ψ|[X, P]ψ⟩` (canonically `iħ`).
pub fn ccr_expectation(s: &VelocityState, t_eval: f64) -> Result<Complex64, DomainError> {
    let xp = apply_observable(Observable::X, &apply_observable(Observable::P, s, None, t_eval)?, None, t_eval)?;
    let px = apply_observable(Observable::P, &apply_observable(Observable::X, s, None, t_eval)?, None, t_eval)?;
    let diff = xp.with_values(xp.values().iter().zip(px.values()).map(|(a, b)| a - b).collect());
    Ok(inner_product(s, &diff)?)
}

/// `‖(HP − PH)ψ‖` in the given frame.
pub fn hp_commutator_norm(s: &VelocityState, frame: &FrameSpec, t_eval: f64) -> Result<f64, DomainError> {
    let hp = apply_observable(Observable::H, &apply_observable(Observable::P, s, Some(frame), t_eval)?, Some(frame), t_eval)?;
    let ph = apply_observable(Observable::P, &apply_observable(Observable::H, s, Some(frame), t_eval)?, Some(frame), t_eval)?;
    Ok(hp.with_values(hp.values().iter().zip(ph.values()).map(|(a, b)| a - b).collect()).norm())
}

fn reframed(s: &VelocityState, frame: &FrameSpec) -> Result<VelocityState, DomainError> {
    VelocityState::new(s.values().to_vec(), s.vmax(), frame.u.clone(), s.params().clone(), s.hbar())
}

/// `U(I, 0, b)ψ` in the given frame, via the exact group action.
pub fn time_translate_exact(s: &VelocityState, b: f64, frame: &FrameSpec) -> Result<VelocityState, DomainError> {
    let s = reframed(s, frame)?;
    let g = GroupElement::time_shift(b, &frame.u.c[0]);
    transform_state(&g, &s)
}

/// Time translation by `b` read at time `t_eval` with the frame held fixed:
/// the point labelled `q = v + u` receives `ψ(v + u(t_eval + b) − u(t_eval))`
/// with the ket phase `ξ((I,0,b); Λ_b q)` evaluated at `t_eval`.
pub fn time_translate_at(s: &VelocityState, b: f64, frame: &FrameSpec, t_eval: f64) -> Result<VelocityState, DomainError> {
    let RepParams { m, w } = s.params().clone();
    let hbar = s.hbar();
    let u = &frame.u.c[0];
    let big_u = u.antiderivative(0.0);
    let (u_t, u_tb) = (u.evaluate(&t_eval), u.evaluate(&(t_eval + b)));
    let (ui_t, ui_tb, ui_b) = (big_u.evaluate(&t_eval), big_u.evaluate(&(t_eval + b)), big_u.evaluate(&b));
    let (moved, _) = shift_samples(s.values(), s.dv(), u_tb - u_t, Interpolation::Spectral);
    let values = s
        .grid()
        .iter()
        .zip(moved)
        .map(|(&v, z)| {
            let back = (v + u_t) * (v * (t_eval - b) + ui_t - ui_b);
            let here = (v + u_tb) * (v * t_eval + ui_tb - ui_b);
            let phase = 0.5 * m * (back - here) - w * b;
            z * Complex64::from_polar(1.0, phase / hbar)
        })
        .collect();
    Ok(s.with_values(values))
}

/// Relative residual `‖D − Hψ‖/‖Hψ‖` where `D` is the Richardson-refined
/// central difference `iħ (T(ε) − T(−ε))/2ε` of [`time_translate_at`].
pub fn hamiltonian_fd_residual(s: &VelocityState, frame: &FrameSpec, eps: f64, t_eval: f64) -> Result<f64, DomainError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(DomainError::NonPositiveStep(eps));
    }
    let hbar = s.hbar();
    let central = |e: f64| -> Result<Vec<Complex64>, DomainError> {
        let plus = time_translate_at(s, e, frame, t_eval)?;
        let minus = time_translate_at(s, -e, frame, t_eval)?;
        Ok(plus
            .values()
            .iter()
            .zip(minus.values())
            .map(|(a, b)| Complex64::new(0.0, hbar) * (a - b) / (2.0 * e))
            .collect())
    };
    let d1 = central(eps)?;
    let d2 = central(eps / 2.0)?;
    let h = apply_observable(Observable::H, s, Some(frame), t_eval)?;
    let diff: Vec<Complex64> = d1
        .iter()
        .zip(&d2)
        .zip(h.values())
        .map(|((a, b), hv)| (4.0 * b - a) / 3.0 - hv)
        .collect();
    Ok(h.with_values(diff).norm() / h.norm())
}

/// Split-step evolution under `H = P²/2m + w + m_g γ·X` for time `b` in
/// `steps` Strang steps. Kinetic half-steps are phases; the potential step
/// is the exact translation `ψ(q) ↦ ψ(q + (m_g/m)γ Δb)`.
pub fn gravity_evolve(s: &VelocityState, grav: &GravitySpec, b: f64, steps: usize) -> Result<VelocityState, DomainError> {
    if steps == 0 {
        return Err(DomainError::Invalid("steps must be at least 1".into()));
    }
    if grav.gamma[1] != 0.0 || grav.gamma[2] != 0.0 {
        return Err(StructureError::Dimension("field must lie along the gridded axis".into()).into());
    }
    if !s.frame().is_zero() {
        return Err(DomainError::Invalid("gravity evolution runs in an inertial frame".into()));
    }
    let RepParams { m, w } = s.params().clone();
    let hbar = s.hbar();
    let dt = b / steps as f64;
    let kappa = grav.m_g / m * grav.gamma[0];
    let grid = s.grid();
    let half_kick: Vec<Complex64> = grid
        .iter()
        .map(|v| Complex64::from_polar(1.0, -(0.5 * m * v * v + w) * dt / (2.0 * hbar)))
        .collect();
    let mut values = s.values().to_vec();
    let mut clipped = 0.0;
    for _ in 0..steps {
        values.iter_mut().zip(&half_kick).for_each(|(z, k)| *z *= k);
        if kappa != 0.0 {
            let (moved, c) = shift_samples(&values, s.dv(), kappa * dt, Interpolation::Spectral);
            values = moved;
            clipped += c;
        }
        values.iter_mut().zip(&half_kick).for_each(|(z, k)| *z *= k);
    }
    if clipped > 1e-12 {
        return Err(DomainError::Invalid(format!("probability {clipped:e} left the grid during evolution")));
    }
    let mut out = s.with_values(values);
    out.clipped_mass += clipped;
    Ok(out)
}

/// `(‖ψ_n − ψ_{2n}‖, ‖ψ_{2n} − ψ_{4n}‖, observed order)` for step doubling.
pub fn strang_convergence(s: &VelocityState, grav: &GravitySpec, b: f64, steps: usize) -> Result<(f64, f64, f64), DomainError> {
    let p1 = gravity_evolve(s, grav, b, steps)?;
    let p2 = gravity_evolve(s, grav, b, 2 * steps)?;
    let p4 = gravity_evolve(s, grav, b, 4 * steps)?;
    let dist = |a: &VelocityState, c: &VelocityState| {
        a.with_values(a.values().iter().zip(c.values()).map(|(x, y)| x - y).collect()).norm()
    };
    let (e1, e2) = (dist(&p1, &p2), dist(&p2, &p4));
    Ok((e1, e2, (e1 / e2).log2()))
}

/// Parameters of the equivalence comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceParams {
    pub m: f64,
    pub m_g: f64,
    pub w: f64,
    pub gamma: f64,
    pub b_final: f64,
    pub steps: usize,
    /// Number of output times (evenly spaced, excluding `b = 0`).
    pub outputs: usize,
    pub grid: usize,
    pub vmax: f64,
    pub sigma: f64,
    pub center: f64,
    pub hbar: f64,
    pub order: usize,
}

impl Default for EquivalenceParams {
    fn default() -> Self {
        EquivalenceParams {
            m: 1.0,
            m_g: 1.0,
            w: 0.0,
            gamma: 0.5,
            b_final: 1.0,
            steps: 1000,
            outputs: 10,
            grid: 512,
            vmax: 20.0,
            sigma: 1.0,
            center: 0.0,
            hbar: 1.0,
            order: 8,
        }
    }
}

/// One output time of the comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceRow {
    pub b: f64,
    /// `|⟨ψ_A|ψ_B⟩|` with the frame origin aligned.
    pub fidelity: f64,
    /// The same without origin alignment.
    pub fidelity_unaligned: f64,
    pub norm_a: f64,
    pub norm_b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceResult {
    pub rows: Vec<EquivalenceRow>,
    pub fidelity_min: f64,
    pub fidelity_unaligned_min: f64,
    pub clipped_mass: f64,
}

/// The accelerated-frame element `(I, a⁰ + ½γt², b)` along the gridded axis.
pub fn accelerated_frame_element(gamma: f64, b: f64, a0: f64, order: usize) -> GroupElement<Jet<f64>> {
    let mut a = Vec3::zero(&Jet::zero(order));
    a.c[0] = Jet::from_monomials(&[a0, 0.0, 0.5 * gamma], order);
    GroupElement::new(crate::timefn::Mat3::identity(&Jet::zero(order)), a, b)
}

/// Path A: the free state carried by `(I, a⁰ + ½γt², b)` into the frame
/// `u = γt` (time translation included). Path B: split-step evolution under
/// the potential `m_g γ X`. The aligned comparison uses `a⁰ = −¼γb²`, the
/// frame origin at which the two pictures share their linear phase; the
/// frame velocity alone does not fix this constant.
pub fn equivalence_experiment(p: &EquivalenceParams) -> Result<EquivalenceResult, DomainError> {
    if p.outputs == 0 || p.steps == 0 || p.steps % p.outputs != 0 {
        return Err(DomainError::Invalid("steps must be a positive multiple of outputs".into()));
    }
    let params = RepParams::new(p.m, p.w)?;
    let psi0 = VelocityState::gaussian(p.grid, p.vmax, p.center, p.sigma, 0.0, params, p.order)?.with_hbar(p.hbar);
    let grav = GravitySpec { m_g: p.m_g, gamma: [p.gamma, 0.0, 0.0] };
    let chunk = p.steps / p.outputs;
    let db = p.b_final / p.outputs as f64;
    let mut b_state = psi0.clone();
    let mut rows = Vec::with_capacity(p.outputs);
    let mut clipped = 0.0;
    for k in 1..=p.outputs {
        let b = k as f64 * db;
        b_state = gravity_evolve(&b_state, &grav, db, chunk)?;
        let aligned = transform_state(&accelerated_frame_element(p.gamma, b, -0.25 * p.gamma * b * b, p.order), &psi0)?;
        let plain = transform_state(&accelerated_frame_element(p.gamma, b, 0.0, p.order), &psi0)?;
        clipped += aligned.clipped_mass + plain.clipped_mass;
        rows.push(EquivalenceRow {
            b,
            fidelity: inner_product(&aligned, &b_state)?.norm(),
            fidelity_unaligned: inner_product(&plain, &b_state)?.norm(),
            norm_a: aligned.norm(),
            norm_b: b_state.norm(),
        });
    }
    clipped += b_state.clipped_mass;
    if clipped > 1e-12 {
        return Err(DomainError::Invalid(format!("probability {clipped:e} left the grid")));
    }
    let min = |f: fn(&EquivalenceRow) -> f64| rows.iter().map(f).fold(f64::INFINITY, f64::min);
    Ok(EquivalenceResult {
        fidelity_min: min(|r| r.fidelity),
        fidelity_unaligned_min: min(|r| r.fidelity_unaligned),
        clipped_mass: clipped,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state() -> VelocityState {
        VelocityState::gaussian(512, 20.0, 0.7, 1.0, 0.0, RepParams::new(1.0, 0.3).unwrap(), 8).unwrap()
    }

    #[test]
    fn momentum_expectation() {
        let s = VelocityState::gaussian(512, 20.0, 1.3, 0.2, 0.0, RepParams::new(2.0, 0.0).unwrap(), 8).unwrap();
        let p = expectation(Observable::P, &s, None, 0.0).unwrap();
        assert!((p.re - 2.6).abs() < 1e-6 && p.im.abs() < 1e-12);
    }

    #[test]
    fn free_time_translation_phases() {
        let s = state();
        let f = FrameSpec::inertial(8);
        let b = 0.4;
        let t = time_translate_exact(&s, b, &f).unwrap();
        for ((v, z0), z1) in s.grid().iter().zip(s.values()).zip(t.values()) {
            if z0.norm() > 1e-3 {
                let expect = *z0 * Complex64::from_polar(1.0, -(0.5 * v * v + 0.3) * b);
                assert!((z1 - expect).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn hamiltonian_generates_time_translation() {
        let s = state();
        for frame in [FrameSpec::inertial(8), FrameSpec::uniform_acceleration(0.8, 8), FrameSpec::jerk(0.6, 8)] {
            for t_eval in [0.0, 0.5] {
                let r = hamiltonian_fd_residual(&s, &frame, 1e-3, t_eval).unwrap();
                assert!(r < 1e-5, "{} at {t_eval}: {r}", frame.description);
            }
        }
    }

    #[test]
    fn gravity_free_limit_matches_exact_translation() {
        let s = state();
        let g = GravitySpec { m_g: 1.0, gamma: [0.0; 3] };
        let a = gravity_evolve(&s, &g, 0.7, 10).unwrap();
        let b = time_translate_exact(&s, 0.7, &FrameSpec::inertial(8)).unwrap();
        let d = a.with_values(a.values().iter().zip(b.values()).map(|(x, y)| x - y).collect()).norm();
        assert!(d < 1e-10, "{d}");
    }
}
