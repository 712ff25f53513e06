//! The non-central extension of the line group.
//!
//! Elements of the extension are pairs `(φ, g)` of a phase function and a
//! group element with product
//!
//! ```text
//! (φ₂, g₂)(φ₁, g₁) = (φ₁ + Λ_{b₁}φ₂ + ξ(g₂, g₁)/m, g₂ g₁)
//! ```
//!
//! which is associative exactly when the cocycle `ξ` satisfies
//! `ξ(g₂,g₁) + ξ(g₃,g₂g₁) − Λ_{b₁}ξ(g₃,g₂) − ξ(g₃g₂,g₁) = 0`.
//! [`CocycleVariant::Standard`] is the valid cocycle for constant rotations
//! and reduces to the Bargmann phase on Galilei elements; the other variants
//! are candidates for time-dependent rotations that each fail one of the
//! two requirements.


use crate::error::DomainError;
use crate::line_group::{compose_unchecked, galilei_params, inverse, GalileiParams, GroupElement};
use crate::scalar::Scalar;
use crate::timefn::{consts, TimeFn};

pub mod obstruction;

pub use obstruction::{central_obstruction_solve, ObstructionResult};

/// Candidate cocycle formulas. Below `Λ = Λ_{b₁}` and `a, R` carry the index
/// of the element they belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CocycleVariant {
    /// `½m(Λa₂·R₂ȧ₁ − Λȧ₂·R₂a₁)`; constant rotations only.
    Standard,
    /// `½m(Λa₂·ΛṘ₂a₁ + Λa₂·ΛR₂ȧ₁ + Λȧ₂·ΛR₂a₁)`: associative for
    /// time-dependent rotations but without the Bargmann limit.
    RateSymmetric,
    /// `½m(Λa₂·ΛR₂ȧ₁ − Λȧ₂·ΛR₂a₁)`: Bargmann limit, but not associative once
    /// rotations depend on time.
    ShiftedAntisymmetric,
    /// `½m(Λa₂·ΛṘ₂a₁ + Λa₂·ΛR₂ȧ₁ − Λȧ₂·ΛR₂a₁)`: Bargmann limit, not
    /// associative for time-dependent rotations.
    RateAntisymmetric,
    /// The Galilei phase `ω = ½m(a₂·R₂v₁ − v₂·R₂a₁ + b₁ v₂·R₂v₁)` as a
    /// constant function; Galilei inputs only.
    Bargmann,
}

impl CocycleVariant {
    pub const ALL: [CocycleVariant; 5] = [
        CocycleVariant::Standard,
        CocycleVariant::RateSymmetric,
        CocycleVariant::ShiftedAntisymmetric,
        CocycleVariant::RateAntisymmetric,
        CocycleVariant::Bargmann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CocycleVariant::Standard => "standard",
            CocycleVariant::RateSymmetric => "rate_symmetric",
            CocycleVariant::ShiftedAntisymmetric => "shifted_antisymmetric",
            CocycleVariant::RateAntisymmetric => "rate_antisymmetric",
            CocycleVariant::Bargmann => "bargmann",
        }
    }

    fn requires_constant_rotation(self) -> bool {
        matches!(self, CocycleVariant::Standard | CocycleVariant::Bargmann)
    }
}

/// The cocycle `ξ(g₂, g₁)` of the chosen variant, including the mass factor.
pub fn xi<F: TimeFn>(
    variant: CocycleVariant,
    g2: &GroupElement<F>,
    g1: &GroupElement<F>,
    m: &F::Scalar,
) -> Result<F, DomainError> {
    if variant.requires_constant_rotation() && !(g2.has_constant_rotation() && g1.has_constant_rotation()) {
        return Err(DomainError::TimeDependentRotation);
    }
    let half_m = m.clone() / F::Scalar::from_i64(2);
    let b1 = &g1.tshift;
    let a2s = g2.trans.shift(b1);
    let a2d = g2.trans.derivative().shift(b1);
    let a1 = &g1.trans;
    let a1d = g1.trans.derivative();
    let r2s = g2.rot.shift(b1);
    let value = match variant {
        CocycleVariant::Standard | CocycleVariant::ShiftedAntisymmetric => {
            a2s.dot(&r2s.mul_vec(&a1d)) - a2d.dot(&r2s.mul_vec(a1))
        }
        CocycleVariant::RateSymmetric => {
            let r2ds = g2.rot.derivative().shift(b1);
            a2s.dot(&r2ds.mul_vec(a1)) + a2s.dot(&r2s.mul_vec(&a1d)) + a2d.dot(&r2s.mul_vec(a1))
        }
        CocycleVariant::RateAntisymmetric => {
            let r2ds = g2.rot.derivative().shift(b1);
            a2s.dot(&r2ds.mul_vec(a1)) + a2s.dot(&r2s.mul_vec(&a1d)) - a2d.dot(&r2s.mul_vec(a1))
        }
        CocycleVariant::Bargmann => {
            let p2 = galilei_params(g2).ok_or_else(|| DomainError::NotGalilei("g2".into()))?;
            let p1 = galilei_params(g1).ok_or_else(|| DomainError::NotGalilei("g1".into()))?;
            return Ok(g1.proto().constant_like(bargmann_phase(&p2, &p1, m)));
        }
    };
    Ok(value.scale(&half_m))
}

/// `ω(g₂, g₁) = ½m(a₂·R₂v₁ − v₂·R₂a₁ + b₁ v₂·R₂v₁)`.
pub fn bargmann_phase<S: Scalar>(g2: &GalileiParams<S>, g1: &GalileiParams<S>, m: &S) -> S {
    let r2v1 = consts::apply(&g2.rot, &g1.v);
    let r2a1 = consts::apply(&g2.rot, &g1.a0);
    let inner = consts::dot(&g2.a0, &r2v1) - consts::dot(&g2.v, &r2a1) + g1.b.clone() * consts::dot(&g2.v, &r2v1);
    m.clone() / S::from_i64(2) * inner
}

/// `ξ(g₂,g₁) + ξ(g₃,g₂g₁) − Λ_{b₁}ξ(g₃,g₂) − ξ(g₃g₂,g₁)`.
pub fn associativity_residual<F: TimeFn>(
    variant: CocycleVariant,
    g3: &GroupElement<F>,
    g2: &GroupElement<F>,
    g1: &GroupElement<F>,
    m: &F::Scalar,
) -> Result<F, DomainError> {
    g3.check_compatible(g2)?;
    g2.check_compatible(g1)?;
    let g21 = compose_unchecked(g2, g1);
    let g32 = compose_unchecked(g3, g2);
    Ok(xi(variant, g2, g1, m)? + xi(variant, g3, &g21, m)?
        - xi(variant, g3, g2, m)?.shift(&g1.tshift)
        - xi(variant, &g32, g1, m)?)
}

/// `ξ(g₂, g₁)` at `t = 0` minus the Bargmann phase, on Galilei elements.
pub fn bargmann_reduction_residual<S: Scalar>(
    variant: CocycleVariant,
    g2: &GalileiParams<S>,
    g1: &GalileiParams<S>,
    m: &S,
    order: usize,
) -> Result<S, DomainError> {
    let e2 = g2.embed(order.max(2));
    let e1 = g1.embed(order.max(2));
    let x = xi(variant, &e2, &e1, m)?;
    Ok(x.evaluate(&S::zero()) - bargmann_phase(g2, g1, m))
}

/// `ξ(g₁⁻¹, g₂⁻¹) + Λ_{−b₁−b₂} ξ(g₂, g₁)` for the standard cocycle.
pub fn dual_phase_residual<F: TimeFn>(
    g2: &GroupElement<F>,
    g1: &GroupElement<F>,
    m: &F::Scalar,
) -> Result<F, DomainError> {
    g2.check_compatible(g1)?;
    let lhs = xi(CocycleVariant::Standard, &inverse(g1), &inverse(g2), m)?;
    let total = -(g1.tshift.clone() + g2.tshift.clone());
    Ok(lhs + xi(CocycleVariant::Standard, g2, g1, m)?.shift(&total))
}

/// An element `(φ, g)` of the extended group.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedElement<F: TimeFn> {
    pub phase: F,
    pub base: GroupElement<F>,
}

impl<F: TimeFn> ExtendedElement<F> {
    pub fn identity(proto: &F) -> Self {
        ExtendedElement { phase: proto.zero_like(), base: GroupElement::identity(proto) }
    }
}

/// `(φ₁ + Λ_{b₁}φ₂ + ξ(g₂,g₁)/m, g₂g₁)` with the standard cocycle.
pub fn compose_ext<F: TimeFn>(
    e2: &ExtendedElement<F>,
    e1: &ExtendedElement<F>,
    m: &F::Scalar,
) -> Result<ExtendedElement<F>, DomainError> {
    e2.base.check_compatible(&e1.base)?;
    e2.phase.check_compatible(&e1.phase)?;
    let x = xi(CocycleVariant::Standard, &e2.base, &e1.base, m)?;
    let inv_m = F::Scalar::from_i64(1) / m.clone();
    Ok(ExtendedElement {
        phase: e1.phase.clone() + e2.phase.shift(&e1.base.tshift) + x.scale(&inv_m),
        base: compose_unchecked(&e2.base, &e1.base),
    })
}

/// Discrepancy between `e₃(e₂e₁)` and `(e₃e₂)e₁`: largest phase coefficient
/// difference plus the base-element distance.
pub fn ext_associativity_residual<F: TimeFn>(
    e3: &ExtendedElement<F>,
    e2: &ExtendedElement<F>,
    e1: &ExtendedElement<F>,
    m: &F::Scalar,
) -> Result<F::Scalar, DomainError> {
    let left = compose_ext(e3, &compose_ext(e2, e1, m)?, m)?;
    let right = compose_ext(&compose_ext(e3, e2, m)?, e1, m)?;
    Ok((left.phase - right.phase).max_abs() + left.base.distance(&right.base))
}

/// True when `x` is exactly zero (or zero within `tol` for floats).
pub fn vanishes<S: Scalar>(x: &S, tol: f64) -> bool {
    match S::FIELD {
        crate::scalar::Field::Exact => x.is_zero(),
        crate::scalar::Field::Float => x.to_f64().abs() <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;
    use crate::scalar::{q, Rational};
    use crate::timefn::Vec3;

    fn tr(a: &[i64], order: usize) -> GroupElement<Jet<Rational>> {
        let mono: Vec<Rational> = a.iter().map(|&x| q(x, 1)).collect();
        let z = Jet::zero(order);
        GroupElement::translation(Vec3::new(Jet::from_monomials(&mono, order), z.clone(), z))
    }

    #[test]
    fn standard_on_simple_translations() {
        let g2 = tr(&[0, 0, 1], 4);
        let g1 = tr(&[0, 1], 4);
        let x = xi(CocycleVariant::Standard, &g2, &g1, &q(1, 1)).unwrap();
        assert_eq!(x, Jet::new(vec![q(0, 1), q(0, 1), q(-1, 1), q(0, 1), q(0, 1)]));
        let e = GroupElement::identity(&Jet::zero(4));
        assert!(xi(CocycleVariant::Standard, &g2, &e, &q(1, 1)).unwrap().is_zero());
    }

    #[test]
    fn bargmann_example() {
        let g2 = GalileiParams {
            rot: consts::identity(),
            v: [q(0, 1), q(1, 1), q(0, 1)],
            a0: [q(2, 1), q(0, 1), q(0, 1)],
            b: q(0, 1),
        };
        let g1 = GalileiParams {
            rot: consts::identity(),
            v: [q(1, 1), q(0, 1), q(0, 1)],
            a0: [q(0, 1), q(3, 1), q(0, 1)],
            b: q(2, 1),
        };
        assert_eq!(bargmann_phase(&g2, &g1, &q(1, 1)), q(-1, 2));
        let x = xi(CocycleVariant::Bargmann, &g2.embed(3), &g1.embed(3), &q(1, 1)).unwrap();
        assert_eq!(x, Jet::constant(q(-1, 2), 3));
        assert_eq!(
            bargmann_reduction_residual(CocycleVariant::Standard, &g2, &g1, &q(1, 1), 3).unwrap(),
            q(0, 1)
        );
    }

    #[test]
    fn constant_rotation_variants_reject_time_dependence() {
        let mut g = tr(&[1], 3);
        g.rot.m[0][1] = Jet::variable(3);
        assert_eq!(
            xi(CocycleVariant::Standard, &g, &g, &q(1, 1)),
            Err(DomainError::TimeDependentRotation)
        );
    }
}
