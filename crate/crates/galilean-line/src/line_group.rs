//! The Galilean line group.
//!
//! An element `g = (R, a, b)` consists of a rotation `R(t)`, a translation
//! `a(t)` (both analytic functions of time) and a constant time shift `b`.
//! It acts on spacetime by `(x, t) ↦ (R(t)x + a(t), t + b)`. Composition
//! follows from applying `g₁` then `g₂`:
//!
//! ```text
//! g₂ g₁ = (Λ_{b₁}R₂ · R₁,  Λ_{b₁}R₂ · a₁ + Λ_{b₁}a₂,  b₁ + b₂)
//! g⁻¹   = (Λ_{−b}Rᵀ,       −Λ_{−b}(Rᵀ a),            −b)
//! ```
//!
//! The product `Λ_{b₁}R₂ · a₁` shifts only `R₂`, as forced by the
//! spacetime action. Constant rotations and translations linear in `t`
//! recover the Galilei group ([`embed_galilei`]).

use num_traits::Zero;

use crate::error::StructureError;
use crate::jet::Jet;
use crate::ratfn::RatFn;
use crate::scalar::{Rational, Scalar};
use crate::timefn::{consts, Mat3, TimeFn, Vec3};

/// A line-group element over the time-function carrier `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<F: TimeFn> {
    pub rot: Mat3<F>,
    pub trans: Vec3<F>,
    pub tshift: F::Scalar,
}

impl<F: TimeFn> GroupElement<F> {
    pub fn new(rot: Mat3<F>, trans: Vec3<F>, tshift: F::Scalar) -> Self {
        GroupElement { rot, trans, tshift }
    }

    /// The identity `(I, 0, 0)` with the structure of `proto`.
    pub fn identity(proto: &F) -> Self {
        GroupElement {
            rot: Mat3::identity(proto),
            trans: Vec3::zero(proto),
            tshift: F::Scalar::zero(),
        }
    }

    /// `(I, a, 0)`.
    pub fn translation(a: Vec3<F>) -> Self {
        let proto = a.c[0].clone();
        GroupElement { rot: Mat3::identity(&proto), trans: a, tshift: F::Scalar::zero() }
    }

    /// `(I, 0, b)`.
    pub fn time_shift(b: F::Scalar, proto: &F) -> Self {
        GroupElement { rot: Mat3::identity(proto), trans: Vec3::zero(proto), tshift: b }
    }

    /// `(R, 0, 0)`.
    pub fn rotation(rot: Mat3<F>) -> Self {
        let proto = rot.m[0][0].clone();
        GroupElement { rot, trans: Vec3::zero(&proto), tshift: F::Scalar::zero() }
    }

    pub fn proto(&self) -> &F {
        &self.trans.c[0]
    }

    pub fn has_constant_rotation(&self) -> bool {
        self.rot.is_constant()
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), StructureError> {
        self.rot.check_compatible(&other.rot)?;
        self.trans.check_compatible(&other.trans)?;
        self.rot.m[0][0].check_compatible(&self.trans.c[0])
    }

    /// Componentwise difference measure: the largest coefficient magnitude
    /// of `R − R'` and `a − a'`, plus `|b − b'|`.
    pub fn distance(&self, other: &Self) -> F::Scalar {
        let dr = self.rot.sub(&other.rot).max_abs();
        let da = self.trans.sub(&other.trans).max_abs();
        let db = (self.tshift.clone() - other.tshift.clone()).abs();
        dr + da + db
    }

    /// Applies `f` to every function in the element.
    pub fn map<G: TimeFn<Scalar = F::Scalar>>(&self, f: impl Fn(&F) -> G) -> GroupElement<G> {
        GroupElement {
            rot: Mat3 { m: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.rot.m[i][j]))) },
            trans: Vec3 { c: std::array::from_fn(|i| f(&self.trans.c[i])) },
            tshift: self.tshift.clone(),
        }
    }
}

/// `g₂ g₁` (apply `g₁` first).
pub fn compose<F: TimeFn>(g2: &GroupElement<F>, g1: &GroupElement<F>) -> Result<GroupElement<F>, StructureError> {
    g2.check_compatible(g1)?;
    Ok(compose_unchecked(g2, g1))
}

pub(crate) fn compose_unchecked<F: TimeFn>(g2: &GroupElement<F>, g1: &GroupElement<F>) -> GroupElement<F> {
    let b1 = &g1.tshift;
    let r2s = g2.rot.shift(b1);
    GroupElement {
        rot: r2s.mul_mat(&g1.rot),
        trans: r2s.mul_vec(&g1.trans).add(&g2.trans.shift(b1)),
        tshift: g1.tshift.clone() + g2.tshift.clone(),
    }
}

/// `g⁻¹ = (Λ_{−b}Rᵀ, −Λ_{−b}(Rᵀa), −b)`.
pub fn inverse<F: TimeFn>(g: &GroupElement<F>) -> GroupElement<F> {
    let mb = -g.tshift.clone();
    let rt = g.rot.transpose();
    GroupElement {
        trans: rt.mul_vec(&g.trans).shift(&mb).neg(),
        rot: rt.shift(&mb),
        tshift: mb,
    }
}

/// Spacetime action `(R(t)x + a(t), t + b)`.
pub fn act<F: TimeFn>(g: &GroupElement<F>, x: &[F::Scalar; 3], t: &F::Scalar) -> ([F::Scalar; 3], F::Scalar) {
    let r = g.rot.evaluate(t);
    let a = g.trans.evaluate(t);
    (consts::add(&consts::apply(&r, x), &a), t.clone() + g.tshift.clone())
}

/// The Galilei element `(R, a⁰ + v t, b)` as a jet element of order `order`.
pub fn embed_galilei<S: Scalar>(
    rot: &[[S; 3]; 3],
    v: &[S; 3],
    a0: &[S; 3],
    b: S,
    order: usize,
) -> GroupElement<Jet<S>> {
    let proto = Jet::<S>::zero(order);
    let trans = Vec3 {
        c: std::array::from_fn(|i| Jet::from_monomials(&[a0[i].clone(), v[i].clone()], order)),
    };
    GroupElement { rot: Mat3::constant(rot, &proto), trans, tshift: b }
}

/// Parameters `(R, v, a⁰, b)` of a Galilei element.
#[derive(Clone, Debug, PartialEq)]
pub struct GalileiParams<S> {
    pub rot: [[S; 3]; 3],
    pub v: [S; 3],
    pub a0: [S; 3],
    pub b: S,
}

impl<S: Scalar> GalileiParams<S> {
    pub fn identity() -> Self {
        GalileiParams { rot: consts::identity(), v: consts::zero(), a0: consts::zero(), b: S::zero() }
    }

    pub fn embed(&self, order: usize) -> GroupElement<Jet<S>> {
        embed_galilei(&self.rot, &self.v, &self.a0, self.b.clone(), order)
    }

    /// Galilei product: `(R₂R₁, v₂ + R₂v₁, a₂ + R₂a₁ + b₁v₂, b₁ + b₂)`.
    pub fn compose(g2: &Self, g1: &Self) -> Self {
        GalileiParams {
            rot: consts::mul(&g2.rot, &g1.rot),
            v: consts::add(&g2.v, &consts::apply(&g2.rot, &g1.v)),
            a0: consts::add(
                &consts::add(&g2.a0, &consts::apply(&g2.rot, &g1.a0)),
                &consts::scale(&g1.b, &g2.v),
            ),
            b: g1.b.clone() + g2.b.clone(),
        }
    }

    /// Galilei inverse: `(Rᵀ, −Rᵀv, −Rᵀ(a − b v), −b)`.
    pub fn inverse(&self) -> Self {
        let rt = consts::transpose(&self.rot);
        GalileiParams {
            v: consts::scale(&-S::one(), &consts::apply(&rt, &self.v)),
            a0: consts::scale(
                &-S::one(),
                &consts::apply(&rt, &consts::sub(&self.a0, &consts::scale(&self.b, &self.v))),
            ),
            rot: rt,
            b: -self.b.clone(),
        }
    }
}

/// Reads back `(R, v, a⁰, b)` from an element of Galilei form, if it is one.
pub fn galilei_params<F: TimeFn>(g: &GroupElement<F>) -> Option<GalileiParams<F::Scalar>> {
    if !g.rot.is_constant() {
        return None;
    }
    let second = g.trans.derivative().derivative();
    if !second.is_zero() {
        return None;
    }
    let zero = F::Scalar::zero();
    Some(GalileiParams {
        rot: g.rot.evaluate(&zero),
        v: g.trans.derivative().evaluate(&zero),
        a0: g.trans.evaluate(&zero),
        b: g.tshift.clone(),
    })
}

/// Lifts an exact jet element to exact rational functions (the jets are read
/// as the polynomials they truncate to).
pub fn lift_exact(g: &GroupElement<Jet<Rational>>) -> GroupElement<RatFn> {
    g.map(RatFn::from_jet)
}

/// Projects an exact rational-function element to jets of order `order`.
pub fn project_exact(g: &GroupElement<RatFn>, order: usize) -> Option<GroupElement<Jet<Rational>>> {
    let ok = g
        .rot
        .m
        .iter()
        .flatten()
        .chain(g.trans.c.iter())
        .all(|f| f.to_jet(order).is_some());
    if !ok {
        return None;
    }
    Some(g.map(|f| f.to_jet(order).expect("checked above")))
}

/// `Λ_b` applied to every function of the element (time shift unchanged).
pub fn shift_element<F: TimeFn>(g: &GroupElement<F>, b: &F::Scalar) -> GroupElement<F> {
    GroupElement { rot: g.rot.shift(b), trans: g.trans.shift(b), tshift: g.tshift.clone() }
}

/// Conjugation residual of the semidirect structure:
/// `(I,0,−b)(R,a,0)(I,0,b) − (Λ_b R, Λ_b a, 0)`, measured by [`GroupElement::distance`].
/// With the product's order convention, conjugating the other way round,
/// `(I,0,b)(R,a,0)(I,0,−b)`, yields `Λ_{−b}` instead.
pub fn semidirect_residual<F: TimeFn>(g: &GroupElement<F>, b: &F::Scalar) -> F::Scalar {
    let proto = g.proto().clone();
    let euclid = GroupElement { rot: g.rot.clone(), trans: g.trans.clone(), tshift: F::Scalar::zero() };
    let tb = GroupElement::time_shift(b.clone(), &proto);
    let tmb = GroupElement::time_shift(-b.clone(), &proto);
    let lhs = compose_unchecked(&tmb, &compose_unchecked(&euclid, &tb));
    let rhs = shift_element(&euclid, b);
    lhs.distance(&rhs)
}

/// Largest component residual of `act(g₂g₁, p) − act(g₂, act(g₁, p))`.
pub fn action_residual<F: TimeFn>(
    g2: &GroupElement<F>,
    g1: &GroupElement<F>,
    x: &[F::Scalar; 3],
    t: &F::Scalar,
) -> F::Scalar {
    let g21 = compose_unchecked(g2, g1);
    let (y, s) = act(&g21, x, t);
    let (x1, t1) = act(g1, x, t);
    let (y2, s2) = act(g2, &x1, &t1);
    let mut worst = (s - s2).abs();
    for i in 0..3 {
        let d = (y[i].clone() - y2[i].clone()).abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn jet_vec(a: [&[i64]; 3], order: usize) -> Vec3<Jet<Rational>> {
        Vec3 {
            c: std::array::from_fn(|i| {
                Jet::from_monomials(&a[i].iter().map(|&x| q(x, 1)).collect::<Vec<_>>(), order)
            }),
        }
    }

    #[test]
    fn inverse_of_quadratic_translation() {
        let g = GroupElement::translation(jet_vec([&[0, 0, 1], &[], &[]], 4));
        let gi = inverse(&g);
        assert_eq!(gi.trans, jet_vec([&[0, 0, -1], &[], &[]], 4));
        let e = compose(&g, &gi).unwrap();
        assert_eq!(e, GroupElement::identity(&Jet::zero(4)));
    }

    #[test]
    fn inverse_matches_galilei_formula() {
        let p = GalileiParams {
            rot: consts::quaternion_rotation(&q(1, 1), &q(1, 1), &q(0, 1), &q(2, 1)),
            v: [q(1, 1), q(-2, 1), q(1, 2)],
            a0: [q(3, 1), q(0, 1), q(-1, 1)],
            b: q(5, 2),
        };
        assert_eq!(inverse(&p.embed(3)), p.inverse().embed(3));
    }

    #[test]
    fn action_of_embedded_boost() {
        let g = embed_galilei(&consts::identity(), &[q(2, 1), q(0, 1), q(0, 1)], &consts::zero(), q(0, 1), 3);
        let (y, s) = act(&g, &[q(1, 1), q(1, 1), q(1, 1)], &q(3, 1));
        assert_eq!(y, [q(7, 1), q(1, 1), q(1, 1)]);
        assert_eq!(s, q(3, 1));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = GroupElement::<Jet<Rational>>::identity(&Jet::zero(2));
        let b = GroupElement::<Jet<Rational>>::identity(&Jet::zero(3));
        assert_eq!(compose(&a, &b), Err(StructureError::OrderMismatch(2, 3)));
    }
}
