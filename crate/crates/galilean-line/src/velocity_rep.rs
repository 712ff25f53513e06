//! The induced representation on time-dependent velocity labels.
//!
//! A generalized eigenvector `|q⟩` is labelled by a velocity function
//! `q(t)`. For `g = (R, a, b)` with constant `R` the transformation is
//!
//! ```text
//! U(g)|q⟩ = e^{iξ(g;q)} |Λ_{−b}q′⟩,   q′ = Rq + ȧ,
//! ξ(g;q)  = m(q′·a − ½a·ȧ + ½(Λ_{−b} − 1)(q′·a_{q′})) − w b,
//! ```
//!
//! where `a_{q′}` is the standard boost translation (`ȧ_{q′} = q′`,
//! `a_{q′}(0) = 0`). Composition holds up to the two-cocycle
//! `ξ(g₁;q) + ξ(g₂;Λ_{−b₁}q′) − ξ(g₂g₁;q)`, computed by [`two_cocycle`];
//! [`two_cocycle_closed`] evaluates the alternative expression in terms of
//! the group cocycle of [`crate::extension`].
//!
//! Phases are kept as jets so identities can be checked coefficient by
//! coefficient; the Galilei reductions compare values at `t = 0`. The
//! gridded wavefunctions live in [`state`].

use crate::error::DomainError;
use crate::extension::{xi, CocycleVariant};
use crate::jet::{Jet, VecJet};
use crate::line_group::{compose, GalileiParams, GroupElement};
use crate::scalar::Scalar;
use crate::timefn::{consts, TimeFn, Vec3};

pub mod state;

pub use state::{inner_product, transform_state, Interpolation, VelocityState};

/// Casimir data of the representation: inertial mass and internal energy.
#[derive(Debug, Clone, PartialEq)]
pub struct RepParams<S> {
    pub m: S,
    pub w: S,
}

impl<S: Scalar> RepParams<S> {
    pub fn new(m: S, w: S) -> Result<Self, DomainError> {
        if m <= S::zero() {
            return Err(DomainError::Invalid(format!("mass must be positive, got {m:?}")));
        }
        Ok(RepParams { m, w })
    }
}

/// Image of a ket: `U(g)|q⟩ = e^{i(phase + energy_term)} |label⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct KetImage<S: Scalar> {
    /// The time-dependent part of the phase.
    pub phase: Jet<S>,
    /// The constant `−w b`.
    pub energy_term: S,
    pub label: VecJet<S>,
}

impl<S: Scalar> KetImage<S> {
    /// `phase + energy_term` as one jet.
    pub fn total_phase(&self) -> Jet<S> {
        self.phase.clone() + self.phase.constant_like(self.energy_term.clone())
    }
}

/// `g_q = (I, a_q, 0)` with `ȧ_q = q` and `a_q(0) = 0`.
pub fn standard_boost<S: Scalar>(q: &VecJet<S>) -> GroupElement<Jet<S>> {
    GroupElement::translation(q.antiderivative(&consts::zero()))
}

fn require_constant<S: Scalar>(g: &GroupElement<Jet<S>>) -> Result<(), DomainError> {
    if g.has_constant_rotation() {
        Ok(())
    } else {
        Err(DomainError::TimeDependentRotation)
    }
}

/// `q′ = R q + ȧ`.
pub fn primed_label<S: Scalar>(g: &GroupElement<Jet<S>>, q: &VecJet<S>) -> VecJet<S> {
    g.rot.mul_vec(q).add(&g.trans.derivative())
}

/// Transformation of a velocity ket.
pub fn transform_ket<S: Scalar>(
    g: &GroupElement<Jet<S>>,
    q: &VecJet<S>,
    p: &RepParams<S>,
) -> Result<KetImage<S>, DomainError> {
    require_constant(g)?;
    g.trans.check_compatible(q)?;
    let b = &g.tshift;
    let mb = -b.clone();
    let qp = primed_label(g, q);
    let a = &g.trans;
    let ad = a.derivative();
    let aq = qp.antiderivative(&consts::zero());
    let kinetic = qp.dot(&aq);
    let half = S::one() / S::from_i64(2);
    let inner = qp.dot(a) - a.dot(&ad).scale(&half) + (kinetic.shift(&mb) - kinetic).scale(&half);
    Ok(KetImage {
        phase: inner.scale(&p.m),
        energy_term: -(p.w.clone() * b.clone()),
        label: qp.shift(&mb),
    })
}

/// Direct two-cocycle `ξ(g₁;q) + ξ(g₂;Λ_{−b₁}q′) − ξ(g₂g₁;q)`.
pub fn two_cocycle<S: Scalar>(
    g2: &GroupElement<Jet<S>>,
    g1: &GroupElement<Jet<S>>,
    q: &VecJet<S>,
    p: &RepParams<S>,
) -> Result<Jet<S>, DomainError> {
    let g21 = compose(g2, g1)?;
    let k1 = transform_ket(g1, q, p)?;
    let k2 = transform_ket(g2, &k1.label, p)?;
    let k21 = transform_ket(&g21, q, p)?;
    Ok(k1.total_phase() + k2.total_phase() - k21.total_phase())
}

/// Closed expression `ξ(g₂,g₁) + (Λ_{−b₁} − 1) ξ(g₂, g₁g_q)` built from the
/// group cocycle.
pub fn two_cocycle_closed<S: Scalar>(
    g2: &GroupElement<Jet<S>>,
    g1: &GroupElement<Jet<S>>,
    q: &VecJet<S>,
    p: &RepParams<S>,
) -> Result<Jet<S>, DomainError> {
    require_constant(g2)?;
    require_constant(g1)?;
    let g1q = compose(g1, &standard_boost(q))?;
    let base = xi(CocycleVariant::Standard, g2, g1, &p.m)?;
    let moved = xi(CocycleVariant::Standard, g2, &g1q, &p.m)?;
    let mb1 = -g1.tshift.clone();
    Ok(base + moved.shift(&mb1) - moved)
}

fn three_from<S: Scalar>(
    two: impl Fn(&GroupElement<Jet<S>>, &GroupElement<Jet<S>>, &VecJet<S>) -> Result<Jet<S>, DomainError>,
    g3: &GroupElement<Jet<S>>,
    g2: &GroupElement<Jet<S>>,
    g1: &GroupElement<Jet<S>>,
    q: &VecJet<S>,
) -> Result<Jet<S>, DomainError> {
    require_constant(g1)?;
    let label1 = primed_label(g1, q).shift(&-g1.tshift.clone());
    let g32 = compose(g3, g2)?;
    let g21 = compose(g2, g1)?;
    Ok(two(g3, g2, &label1)? + two(&g32, g1, q)? - two(g2, g1, q)? - two(g3, &g21, q)?)
}

/// Three-cocycle `ξ(g₃,g₂;Λ_{−b₁}q′) + ξ(g₃g₂,g₁;q) − ξ(g₂,g₁;q) − ξ(g₃,g₂g₁;q)`
/// of the direct two-cocycle.
pub fn three_cocycle<S: Scalar>(
    g3: &GroupElement<Jet<S>>,
    g2: &GroupElement<Jet<S>>,
    g1: &GroupElement<Jet<S>>,
    q: &VecJet<S>,
    p: &RepParams<S>,
) -> Result<Jet<S>, DomainError> {
    three_from(|a, b, l| two_cocycle(a, b, l, p), g3, g2, g1, q)
}

/// The same combination built from [`two_cocycle_closed`].
pub fn three_cocycle_closed<S: Scalar>(
    g3: &GroupElement<Jet<S>>,
    g2: &GroupElement<Jet<S>>,
    g1: &GroupElement<Jet<S>>,
    q: &VecJet<S>,
    p: &RepParams<S>,
) -> Result<Jet<S>, DomainError> {
    three_from(|a, b, l| two_cocycle_closed(a, b, l, p), g3, g2, g1, q)
}

/// The Galilei phase `m(q₀′·a⁰ − ½v·a⁰) − E′b` with `q₀′ = Rq₀ + v` and
/// `E′ = w + ½m q₀′²`.
pub fn galilei_ket_phase<S: Scalar>(g: &GalileiParams<S>, q0: &[S; 3], p: &RepParams<S>) -> S {
    let qp = consts::add(&consts::apply(&g.rot, q0), &g.v);
    let half = S::one() / S::from_i64(2);
    let e_prime = p.w.clone() + half.clone() * p.m.clone() * consts::dot(&qp, &qp);
    p.m.clone() * (consts::dot(&qp, &g.a0) - half * consts::dot(&g.v, &g.a0)) - e_prime * g.b.clone()
}

fn constant_label<S: Scalar>(q0: &[S; 3], order: usize) -> VecJet<S> {
    Vec3::constant(q0, &Jet::zero(order))
}

/// Ket phase at `t = 0` for the embedded Galilei element minus
/// [`galilei_ket_phase`]; the label residual (sup-norm of
/// `label(0) − q₀′` plus any time dependence of the label) is added.
pub fn galilei_reduction_check<S: Scalar>(
    g: &GalileiParams<S>,
    q0: &[S; 3],
    p: &RepParams<S>,
    order: usize,
) -> Result<S, DomainError> {
    let order = order.max(2);
    let k = transform_ket(&g.embed(order), &constant_label(q0, order), p)?;
    let phase = k.total_phase().evaluate(&S::zero());
    let qp = consts::add(&consts::apply(&g.rot, q0), &g.v);
    let label_res = k.label.sub(&constant_label(&qp, order)).max_abs();
    Ok((phase - galilei_ket_phase(g, q0, p)).abs() + label_res)
}

/// Internal-energy invariance. Energies are read off the ket phases as the
/// coefficient of `−b`: `E` from a pure time shift on `q₀`, `E′` from `g`
/// with and without its time shift. Returns
/// `(E′ − ½m q₀′²) − (E − ½m q₀²)`.
pub fn internal_energy_residual<S: Scalar>(
    g: &GalileiParams<S>,
    q0: &[S; 3],
    p: &RepParams<S>,
    order: usize,
) -> Result<S, DomainError> {
    let order = order.max(2);
    let b = if g.b.is_zero() { S::one() } else { g.b.clone() };
    let zero = S::zero();
    let q = constant_label(q0, order);
    let shift_only = GalileiParams { b: b.clone(), ..GalileiParams::identity() };
    let e = -transform_ket(&shift_only.embed(order), &q, p)?.total_phase().evaluate(&zero) / b.clone();
    let with_b = GalileiParams { b: b.clone(), ..g.clone() };
    let without_b = GalileiParams { b: S::zero(), ..g.clone() };
    let phi_b = transform_ket(&with_b.embed(order), &q, p)?.total_phase().evaluate(&zero);
    let phi_0 = transform_ket(&without_b.embed(order), &q, p)?.total_phase().evaluate(&zero);
    let e_prime = (phi_0 - phi_b) / b;
    let qp = consts::add(&consts::apply(&g.rot, q0), &g.v);
    let half_m = p.m.clone() / S::from_i64(2);
    Ok((e_prime - half_m.clone() * consts::dot(&qp, &qp)) - (e - half_m * consts::dot(q0, q0)))
}

/// The alternative rule with phase `Λ_{−b}(m(q′·a − ½a·ȧ)) − E b` and label
/// `Λ_{−b}q′`, for a label-independent constant energy `E`.
pub fn alt_projective_transform<S: Scalar>(
    g: &GroupElement<Jet<S>>,
    q: &VecJet<S>,
    p: &RepParams<S>,
    energy: &S,
) -> Result<KetImage<S>, DomainError> {
    require_constant(g)?;
    g.trans.check_compatible(q)?;
    let mb = -g.tshift.clone();
    let qp = primed_label(g, q);
    let a = &g.trans;
    let half = S::one() / S::from_i64(2);
    let inner = qp.dot(a) - a.dot(&a.derivative()).scale(&half);
    Ok(KetImage {
        phase: inner.shift(&mb).scale(&p.m),
        energy_term: -(energy.clone() * g.tshift.clone()),
        label: qp.shift(&mb),
    })
}

/// Composition defect of the alternative rule,
/// `Λ_{−b₂}φ₁(q) + φ₂(label₁) − φ₂₁(q)`, minus `Λ_{−b₁−b₂}ξ(g₂,g₁)`.
pub fn alt_composition_residual<S: Scalar>(
    g2: &GroupElement<Jet<S>>,
    g1: &GroupElement<Jet<S>>,
    q: &VecJet<S>,
    p: &RepParams<S>,
    energy: &S,
) -> Result<Jet<S>, DomainError> {
    let g21 = compose(g2, g1)?;
    let k1 = alt_projective_transform(g1, q, p, energy)?;
    let k2 = alt_projective_transform(g2, &k1.label, p, energy)?;
    let k21 = alt_projective_transform(&g21, q, p, energy)?;
    let defect = k1.total_phase().shift(&-g2.tshift.clone()) + k2.total_phase() - k21.total_phase();
    let total = -(g1.tshift.clone() + g2.tshift.clone());
    Ok(defect - xi(CocycleVariant::Standard, g2, g1, &p.m)?.shift(&total))
}

/// Alternative-rule phase at `t = 0` on a Galilei element minus
/// [`galilei_ket_phase`].
pub fn alt_galilei_residual<S: Scalar>(
    g: &GalileiParams<S>,
    q0: &[S; 3],
    p: &RepParams<S>,
    energy: &S,
    order: usize,
) -> Result<S, DomainError> {
    let order = order.max(2);
    let k = alt_projective_transform(&g.embed(order), &constant_label(q0, order), p, energy)?;
    Ok(k.total_phase().evaluate(&S::zero()) - galilei_ket_phase(g, q0, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{element_const_rot, galilei, poly_vec_jet, trial_rng};
    use crate::scalar::{q, Rational};
    use num_traits::Zero;

    fn params() -> RepParams<Rational> {
        RepParams::new(q(3, 2), q(1, 3)).unwrap()
    }

    #[test]
    fn identity_and_time_translation() {
        let p = params();
        let order = 8;
        let q0 = [q(1, 1), q(-2, 1), q(1, 2)];
        let lab = constant_label(&q0, order);
        let e = GroupElement::identity(&Jet::zero(order));
        let k = transform_ket(&e, &lab, &p).unwrap();
        assert!(k.total_phase().is_zero());
        assert_eq!(k.label, lab);
        let b = q(2, 3);
        let tb = GroupElement::time_shift(b.clone(), &Jet::zero(order));
        let k = transform_ket(&tb, &lab, &p).unwrap();
        assert_eq!(k.label, lab);
        let energy = p.w.clone() + p.m.clone() / q(2, 1) * consts::dot(&q0, &q0);
        assert_eq!(k.total_phase().evaluate(&q(0, 1)), -(energy * b));
    }

    #[test]
    fn boost_of_constant_velocity() {
        let q0 = [q(1, 1), q(0, 1), q(-1, 1)];
        let g = standard_boost(&constant_label(&q0, 4));
        assert_eq!(g.trans.c[0].coeffs(), &[q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn galilei_reduction_and_energy() {
        let p = params();
        for trial in 0..20 {
            let mut rng = trial_rng(7, trial);
            let g = galilei::<Rational>(&mut rng);
            let q0 = crate::random::vec3::<Rational>(&mut rng);
            assert!(galilei_reduction_check(&g, &q0, &p, 8).unwrap().is_zero());
            assert!(internal_energy_residual(&g, &q0, &p, 8).unwrap().is_zero());
        }
    }

    #[test]
    fn two_cocycle_collapses_without_time_shift() {
        let p = params();
        let mut rng = trial_rng(3, 0);
        let g2 = element_const_rot::<Rational>(&mut rng, 2, 8);
        let mut g1 = element_const_rot::<Rational>(&mut rng, 2, 8);
        g1.tshift = q(0, 1);
        let lab = poly_vec_jet::<Rational>(&mut rng, 1, 8);
        let direct = two_cocycle(&g2, &g1, &lab, &p).unwrap();
        let closed = two_cocycle_closed(&g2, &g1, &lab, &p).unwrap();
        let base = xi(CocycleVariant::Standard, &g2, &g1, &p.m).unwrap();
        assert_eq!(closed, base);
        assert_eq!(direct, base);
    }

    #[test]
    fn alternative_rule_defect_is_shifted_cocycle() {
        let p = params();
        for trial in 0..10 {
            let mut rng = trial_rng(11, trial);
            let g2 = element_const_rot::<Rational>(&mut rng, 2, 8);
            let g1 = element_const_rot::<Rational>(&mut rng, 2, 8);
            let lab = poly_vec_jet::<Rational>(&mut rng, 1, 8);
            assert!(alt_composition_residual(&g2, &g1, &lab, &p, &q(1, 1)).unwrap().is_zero());
        }
    }
}
