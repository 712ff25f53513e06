//! The semigroup of polynomial maps from spacetime to the Galilei group.
//!
//! An element `g[x]` assigns to each spacetime point `x = (x₁, x₂, x₃, t)` a
//! Galilei transformation with constant rotation `R`, translation `a[x]`
//! and time shift `b[x]`, acting by `x ↦ (R x + a[x], t + b[x])`. Composition
//! substitutes the first map into the second,
//!
//! ```text
//! (g₂ g₁)[x] = (R₂R₁, R₂a₁[x] + a₂[g₁[x]x], b₁[x] + b₂[g₁[x]x]),
//! ```
//!
//! so that acting with `g₂g₁` equals acting with `g₁` and then `g₂`.
//! Coefficient functions are exact multivariate polynomials truncated at a
//! total degree `D` ([`MVJet`]). [`inverse_search`] looks for a formal right
//! inverse degree by degree; a success is only a statement about degree
//! `D`, not about analytic invertibility.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{DomainError, StructureError};
use crate::jet::Jet;
use crate::line_group::GroupElement;
use crate::scalar::{factorial, Scalar};
use crate::timefn::{consts, Mat3, Vec3};

/// Exponents of `(x₁, x₂, x₃, t)`.
pub type Multi = [u32; 4];

fn total(m: &Multi) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// A polynomial in `(x₁, x₂, x₃, t)` truncated at total degree `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct MVJet<S> {
    degree: usize,
    terms: BTreeMap<Multi, S>,
}

impl<S: Scalar> MVJet<S> {
    pub fn zero(degree: usize) -> Self {
        MVJet { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: S, degree: usize) -> Self {
        MVJet::zero(degree).with_term([0; 4], c)
    }

    /// The coordinate function `x_i` (`i = 3` is `t`).
    pub fn var(i: usize, degree: usize) -> Self {
        let mut m = [0; 4];
        m[i] = 1;
        MVJet::zero(degree).with_term(m, S::one())
    }

    /// Adds `c · x^m` (dropped beyond the truncation degree).
    pub fn with_term(mut self, m: Multi, c: S) -> Self {
        self.add_term(m, c);
        self
    }

    fn add_term(&mut self, m: Multi, c: S) {
        if total(&m) > self.degree || c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(S::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// The polynomial in `t` whose derivative coefficients are the jet's.
    pub fn from_time_jet(j: &Jet<S>, degree: usize) -> Self {
        let mut out = MVJet::zero(degree);
        for (n, c) in j.coeffs().iter().enumerate() {
            out.add_term([0, 0, 0, n as u32], c.clone() / factorial::<S>(n));
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Multi, S> {
        &self.terms
    }

    pub fn coeff(&self, m: &Multi) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether only `t` appears.
    pub fn is_space_independent(&self) -> bool {
        self.terms.keys().all(|m| m[0] == 0 && m[1] == 0 && m[2] == 0)
    }

    pub fn max_abs(&self) -> S {
        crate::timefn::max_scalar(self.terms.values().map(Scalar::abs))
    }

    fn check(&self, other: &Self) -> Result<(), StructureError> {
        if self.degree != other.degree {
            return Err(StructureError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = MVJet::zero(self.degree);
        for (m, x) in &self.terms {
            out.add_term(*m, x.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MVJet::zero(self.degree.min(other.degree));
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
                out.add_term(m, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, StructureError> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn evaluate(&self, p: &[S; 4]) -> S {
        self.terms.iter().fold(S::zero(), |acc, (m, c)| {
            let mut term = c.clone();
            for (v, &e) in p.iter().zip(m) {
                for _ in 0..e {
                    term = term * v.clone();
                }
            }
            acc + term
        })
    }

    /// `f(args₁, …, args₄)`, truncated at this polynomial's degree.
    pub fn substitute(&self, args: &[MVJet<S>; 4]) -> Self {
        let degree = self.degree;
        let mut powers: Vec<Vec<MVJet<S>>> = args
            .iter()
            .map(|a| vec![MVJet::constant(S::one(), degree), MVJet { degree, terms: a.terms.clone() }.truncated(degree)])
            .collect();
        let mut out = MVJet::zero(degree);
        for (m, c) in &self.terms {
            let mut term = MVJet::constant(c.clone(), degree);
            for (i, &e) in m.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty").mul(&powers[i][1]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    fn truncated(mut self, degree: usize) -> Self {
        self.terms.retain(|m, _| total(m) <= degree);
        self.degree = degree;
        self
    }

    /// The homogeneous part of total degree `k`.
    pub fn homogeneous(&self, k: usize) -> Self {
        MVJet { degree: self.degree, terms: self.terms.iter().filter(|(m, _)| total(m) == k).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// `∂f/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = MVJet::zero(self.degree);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut d = *m;
                d[i] -= 1;
                out.add_term(d, c.clone() * S::from_i64(m[i] as i64));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(m, c)| json!({"exponents": m, "coeff": c.to_json()})).collect();
        json!({"degree": self.degree, "terms": terms})
    }
}

/// An element of the map semigroup.
#[derive(Debug, Clone, PartialEq)]
pub struct MapElement<S> {
    pub rot: [[S; 3]; 3],
    pub trans: [MVJet<S>; 3],
    pub tshift: MVJet<S>,
}

impl<S: Scalar> MapElement<S> {
    pub fn identity(degree: usize) -> Self {
        MapElement {
            rot: consts::identity(),
            trans: std::array::from_fn(|_| MVJet::zero(degree)),
            tshift: MVJet::zero(degree),
        }
    }

    pub fn degree(&self) -> usize {
        self.tshift.degree
    }

    fn check(&self, other: &Self) -> Result<(), StructureError> {
        self.tshift.check(&other.tshift)?;
        for (a, b) in self.trans.iter().zip(&other.trans) {
            a.check(b)?;
        }
        Ok(())
    }

    /// The constant-in-space image of a line-group element with constant
    /// rotation.
    pub fn from_line_group(g: &GroupElement<Jet<S>>, degree: usize) -> Result<Self, DomainError> {
        if !g.has_constant_rotation() {
            return Err(DomainError::TimeDependentRotation);
        }
        Ok(MapElement {
            rot: g.rot.evaluate(&S::zero()),
            trans: std::array::from_fn(|i| MVJet::from_time_jet(&g.trans.c[i], degree)),
            tshift: MVJet::constant(g.tshift.clone(), degree),
        })
    }

    /// Back to a line-group element of order `order`, if constant in space.
    pub fn to_line_group(&self, order: usize) -> Option<GroupElement<Jet<S>>> {
        if !self.trans.iter().all(MVJet::is_space_independent) || self.tshift.terms.keys().any(|m| total(m) > 0) {
            return None;
        }
        let jet = |f: &MVJet<S>| {
            let mono: Vec<S> = (0..=order).map(|n| f.coeff(&[0, 0, 0, n as u32])).collect();
            Jet::from_monomials(&mono, order)
        };
        let proto = Jet::zero(order);
        Some(GroupElement::new(
            Mat3::constant(&self.rot, &proto),
            Vec3 { c: std::array::from_fn(|i| jet(&self.trans[i])) },
            self.tshift.coeff(&[0; 4]),
        ))
    }

    /// The substitution arguments `(R x + a[x], t + b[x])`.
    fn image_polys(&self) -> [MVJet<S>; 4] {
        let d = self.degree();
        std::array::from_fn(|i| {
            if i == 3 {
                MVJet::var(3, d).add(&self.tshift)
            } else {
                let mut p = self.trans[i].clone();
                for j in 0..3 {
                    p = p.add(&MVJet::var(j, d).scale(&self.rot[i][j]));
                }
                p
            }
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rot": self.rot.iter().map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "trans": self.trans.iter().map(MVJet::to_json).collect::<Vec<_>>(),
            "tshift": self.tshift.to_json(),
        })
    }

    /// Sup-norm distance of all coefficients (rotation included).
    pub fn distance(&self, other: &Self) -> S {
        let mut worst = S::zero();
        let mut bump = |x: S| {
            if x > worst {
                worst = x;
            }
        };
        for i in 0..3 {
            for j in 0..3 {
                bump((self.rot[i][j].clone() - other.rot[i][j].clone()).abs());
            }
            bump(self.trans[i].sub(&other.trans[i]).max_abs());
        }
        bump(self.tshift.sub(&other.tshift).max_abs());
        worst
    }
}

/// `(R x + a[x,t], t + b[x,t])`.
pub fn act_map<S: Scalar>(g: &MapElement<S>, p: &[S; 4]) -> [S; 4] {
    let x = [p[0].clone(), p[1].clone(), p[2].clone()];
    let rx = consts::apply(&g.rot, &x);
    [
        rx[0].clone() + g.trans[0].evaluate(p),
        rx[1].clone() + g.trans[1].evaluate(p),
        rx[2].clone() + g.trans[2].evaluate(p),
        p[3].clone() + g.tshift.evaluate(p),
    ]
}

/// `Γ_g f [x] = f(g[x]x)`.
pub fn substitute_through<S: Scalar>(f: &MVJet<S>, g: &MapElement<S>) -> MVJet<S> {
    f.substitute(&g.image_polys())
}

/// `g₂ g₁`.
pub fn compose_map<S: Scalar>(g2: &MapElement<S>, g1: &MapElement<S>) -> Result<MapElement<S>, StructureError> {
    g2.check(g1)?;
    let args = g1.image_polys();
    let mut trans: [MVJet<S>; 3] = std::array::from_fn(|i| g2.trans[i].substitute(&args));
    for (i, ti) in trans.iter_mut().enumerate() {
        for j in 0..3 {
            *ti = ti.add(&g1.trans[j].scale(&g2.rot[i][j]));
        }
    }
    Ok(MapElement { rot: consts::mul(&g2.rot, &g1.rot), trans, tshift: g1.tshift.add(&g2.tshift.substitute(&args)) })
}

/// `(g₃g₂)g₁` versus `g₃(g₂g₁)`.
pub fn map_associativity_residual<S: Scalar>(g3: &MapElement<S>, g2: &MapElement<S>, g1: &MapElement<S>) -> Result<S, StructureError> {
    let left = compose_map(&compose_map(g3, g2)?, g1)?;
    let right = compose_map(g3, &compose_map(g2, g1)?)?;
    Ok(left.distance(&right))
}

/// `Γ_{g₁}(Γ_{g₂} f) − Γ_{g₂g₁} f`.
pub fn gamma_law_residual<S: Scalar>(f: &MVJet<S>, g2: &MapElement<S>, g1: &MapElement<S>) -> Result<S, StructureError> {
    let lhs = substitute_through(&substitute_through(f, g2), g1);
    let rhs = substitute_through(f, &compose_map(g2, g1)?);
    Ok(lhs.sub(&rhs).max_abs())
}

/// Outcome of [`inverse_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct InverseReport<S> {
    pub candidate: MapElement<S>,
    /// Sup-norm of the coefficients of `g h − e`.
    pub residual: S,
    /// Residual restricted to each homogeneous degree.
    pub residual_by_degree: Vec<S>,
    pub converged: bool,
    pub diagnostic: Option<String>,
}

impl<S: Scalar> InverseReport<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.candidate.degree(),
            "residual": self.residual.to_json(),
            "residual_by_degree": self.residual_by_degree.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "converged": self.converged,
            "diagnostic": self.diagnostic,
            "coefficients": self.candidate.to_json(),
        })
    }
}

/// The four residual functions of `g h = e` for `h = (Rᵀ, a, b)`.
fn fixed_point_system<S: Scalar>(g: &MapElement<S>, h: &MapElement<S>) -> [MVJet<S>; 4] {
    let gh = compose_map(g, h).expect("same degree by construction");
    [gh.trans[0].clone(), gh.trans[1].clone(), gh.trans[2].clone(), gh.tshift]
}

/// Jacobian of the fixed-point system with respect to the unknown
/// translation and time shift, at the base point `p₀`.
fn jacobian<S: Scalar>(g: &MapElement<S>, p0: &[S; 4]) -> [[S; 4]; 4] {
    let f: [&MVJet<S>; 4] = [&g.trans[0], &g.trans[1], &g.trans[2], &g.tshift];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let own = if i < 3 && j < 3 { g.rot[i][j].clone() } else if i == 3 && j == 3 { S::one() } else { S::zero() };
            own + f[i].partial(j).evaluate(p0)
        })
    })
}

/// Solves `A x = y` by Gaussian elimination; `None` if singular.
fn solve4<S: Scalar>(a: &[[S; 4]; 4], y: &[S; 4]) -> Option<[S; 4]> {
    let mut m: Vec<Vec<S>> = (0..4).map(|i| a[i].iter().cloned().chain([y[i].clone()]).collect()).collect();
    for col in 0..4 {
        let pivot = (col..4).max_by(|&r, &s| {
            m[r][col].abs().partial_cmp(&m[s][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[pivot][col].is_zero() {
            return None;
        }
        m.swap(col, pivot);
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone() / m[col][col].clone();
                for c in col..5 {
                    let v = m[col][c].clone() * f.clone();
                    m[r][c] = m[r][c].clone() - v;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| m[i][4].clone() / m[i][i].clone()))
}

/// Degree-by-degree Newton solve of `g h = e` up to the truncation degree.
/// The constant terms are found by Newton iteration (at most `max_iter`
/// steps); each higher degree is one linear solve with the Jacobian at the
/// base point. A singular Jacobian stops the search with a diagnostic.
pub fn inverse_search<S: Scalar>(g: &MapElement<S>, max_iter: usize, tol: f64) -> Result<InverseReport<S>, DomainError> {
    if !(tol > 0.0) {
        return Err(DomainError::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let d = g.degree();
    let mut h = MapElement { rot: consts::transpose(&g.rot), ..MapElement::identity(d) };
    let base_point = |h: &MapElement<S>| -> [S; 4] {
        [h.trans[0].coeff(&[0; 4]), h.trans[1].coeff(&[0; 4]), h.trans[2].coeff(&[0; 4]), h.tshift.coeff(&[0; 4])]
    };
    let mut diagnostic = None;
    // Constant terms.
    for _ in 0..max_iter.max(1) {
        let sys = fixed_point_system(g, &h);
        let r0: [S; 4] = std::array::from_fn(|i| sys[i].coeff(&[0; 4]));
        if r0.iter().all(|x| x.abs().to_f64() <= tol * 1e-3 || x.is_zero()) {
            break;
        }
        let jac = jacobian(g, &base_point(&h));
        let Some(step) = solve4(&jac, &r0.clone().map(|x| -x)) else {
            diagnostic = Some("singular Jacobian at degree 0".to_string());
            break;
        };
        for (i, s) in step.into_iter().enumerate() {
            let f = if i < 3 { &mut h.trans[i] } else { &mut h.tshift };
            f.add_term([0; 4], s);
        }
    }
    // Higher degrees.
    if diagnostic.is_none() {
        let jac = jacobian(g, &base_point(&h));
        'degrees: for k in 1..=d {
            let sys = fixed_point_system(g, &h);
            let parts: Vec<MVJet<S>> = sys.iter().map(|p| p.homogeneous(k)).collect();
            let mut monomials: Vec<Multi> = parts.iter().flat_map(|p| p.terms.keys().copied()).collect();
            monomials.sort();
            monomials.dedup();
            for m in monomials {
                let rhs: [S; 4] = std::array::from_fn(|i| -parts[i].coeff(&m));
                let Some(step) = solve4(&jac, &rhs) else {
                    diagnostic = Some(format!("singular Jacobian at degree {k}"));
                    break 'degrees;
                };
                for (i, s) in step.into_iter().enumerate() {
                    let f = if i < 3 { &mut h.trans[i] } else { &mut h.tshift };
                    f.add_term(m, s);
                }
            }
        }
    }
    let sys = fixed_point_system(g, &h);
    let residual_by_degree: Vec<S> = (0..=d)
        .map(|k| crate::timefn::max_scalar(sys.iter().map(|p| p.homogeneous(k).max_abs())))
        .collect();
    let residual = crate::timefn::max_scalar(residual_by_degree.iter().cloned());
    let converged = diagnostic.is_none() && residual.to_f64() <= tol;
    Ok(InverseReport { candidate: h, residual, residual_by_degree, converged, diagnostic })
}

/// Named test maps for [`inverse_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Constant translation `a = (1, −2, ½)`.
    Translation,
    /// Line-group image `a = ½γt² x̂`, `b = 1` with `γ = ½`.
    LineGroup,
    /// Spacetime-dependent time shift `b = εx₁` with `a = ½γt² x̂`,
    /// `ε = ¼`, `γ = ½`.
    SpacetimeShift,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::Translation, Profile::LineGroup, Profile::SpacetimeShift];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Translation => "translation",
            Profile::LineGroup => "line_group",
            Profile::SpacetimeShift => "spacetime_shift",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Profile::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn element<S: Scalar>(self, degree: usize) -> MapElement<S> {
        let mut g = MapElement::identity(degree);
        let half = S::from_ratio(1, 2);
        let quarter = S::from_ratio(1, 4);
        let accel = MVJet::zero(degree).with_term([0, 0, 0, 2], half.clone() * half.clone());
        match self {
            Profile::Translation => {
                g.trans = [
                    MVJet::constant(S::one(), degree),
                    MVJet::constant(S::from_i64(-2), degree),
                    MVJet::constant(half, degree),
                ];
            }
            Profile::LineGroup => {
                g.trans[0] = accel;
                g.tshift = MVJet::constant(S::one(), degree);
            }
            Profile::SpacetimeShift => {
                g.trans[0] = accel;
                g.tshift = MVJet::var(0, degree).scale(&quarter);
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line_group::{compose, inverse};
    use crate::scalar::{q, Rational};

    #[test]
    fn identity_and_profiles_act() {
        let e = MapElement::<Rational>::identity(3);
        let p = [q(1, 2), q(-1, 1), q(2, 1), q(3, 1)];
        assert_eq!(act_map(&e, &p), p);
        let g = Profile::SpacetimeShift.element::<Rational>(3);
        let y = act_map(&g, &p);
        assert_eq!(y[3], q(3, 1) + q(1, 8));
        assert_eq!(y[0], q(1, 2) + q(9, 4));
    }

    #[test]
    fn line_group_embedding_is_homomorphic() {
        let order = 8;
        let mk = |a: &[i64], b: Rational| {
            let proto = Jet::<Rational>::zero(order);
            let mut t = Vec3::zero(&proto);
            t.c[0] = Jet::from_monomials(&a.iter().map(|&x| q(x, 1)).collect::<Vec<_>>(), order);
            t.c[2] = Jet::from_monomials(&[q(1, 1), q(-1, 2)], order);
            GroupElement::new(Mat3::identity(&proto), t, b)
        };
        let g2 = mk(&[1, 2, -1], q(1, 3));
        let g1 = mk(&[0, -1, 2], q(-2, 1));
        let m2 = MapElement::from_line_group(&g2, 8).unwrap();
        let m1 = MapElement::from_line_group(&g1, 8).unwrap();
        let composed = compose_map(&m2, &m1).unwrap().to_line_group(order).unwrap();
        assert_eq!(composed, compose(&g2, &g1).unwrap());
        let inv = inverse_search(&m2, 10, 1e-12).unwrap();
        assert!(inv.converged);
        assert_eq!(inv.candidate.to_line_group(order).unwrap(), inverse(&g2));
    }

    #[test]
    fn translation_inverse_is_exact() {
        let g = Profile::Translation.element::<Rational>(4);
        let r = inverse_search(&g, 5, 1e-12).unwrap();
        assert!(r.converged);
        assert!(num_traits::Zero::is_zero(&r.residual));
    }
}
