//! Central extensions of the boost subalgebra.
//!
//! Suppose the boosts `K⁽ⁿ⁾ᵢ` (`0 ≤ n ≤ N`) acquire central commutators
//! `[K⁽ⁿ⁾ᵢ, K⁽ᵐ⁾ⱼ] = α_{nm} δᵢⱼ Z` while `[H, K⁽ⁿ⁾] = −i K⁽ⁿ⁻¹⁾` is kept.
//! The Jacobi identity with `H` gives the linear constraints
//! `α(n, m−1) = α(m, n−1)` (terms with index `−1` absent), and
//! [`central_obstruction_solve`] returns the exact solution space of the
//! antisymmetric unknowns `α_{mn}`, `m < n ≤ N`.
//!
//! [`brute_force_constraints`] derives the same system independently by
//! evaluating every Jacobi identity of the full basis
//! `{H, K⁽ⁿ⁾ᵢ, Z}` with a symbolic bracket table.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::DomainError;
use crate::linalg::{nullspace, rref};
use crate::scalar::{Rational, Scalar};

/// Solution of the central-extension constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionResult {
    pub n_max: usize,
    pub nullspace_dim: usize,
    /// Unknowns left free by the row reduction (one per basis vector).
    pub free_parameters: Vec<(usize, usize)>,
    /// Unknowns that vanish on the whole solution space.
    pub forced_zeros: Vec<(usize, usize)>,
    /// Unknowns that are neither free nor forced to zero (fixed multiples
    /// of free ones).
    pub dependent: Vec<(usize, usize)>,
    /// Nullspace basis, indexed like [`unknowns`].
    pub basis: Vec<Vec<Rational>>,
}

impl ObstructionResult {
    pub fn to_json(&self) -> Value {
        let pairs = |v: &[(usize, usize)]| v.iter().map(|&(m, n)| json!([m, n])).collect::<Vec<_>>();
        json!({
            "n_max": self.n_max,
            "nullspace_dim": self.nullspace_dim,
            "free": pairs(&self.free_parameters),
            "forced_zero": pairs(&self.forced_zeros),
            "dependent": pairs(&self.dependent),
            "basis": self.basis.iter().map(|v| v.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Whether `α₀₁` is forced to vanish.
    pub fn alpha01_forced_zero(&self) -> bool {
        self.forced_zeros.contains(&(0, 1))
    }

    /// Whether the solution space is spanned by `α_{N−1,N}` alone.
    pub fn only_top_pair_free(&self) -> bool {
        self.nullspace_dim == 1 && self.free_parameters == vec![(self.n_max - 1, self.n_max)]
    }
}

/// Unknowns `(m, n)` with `m < n ≤ n_max`, in lexicographic order.
pub fn unknowns(n_max: usize) -> Vec<(usize, usize)> {
    (0..=n_max).flat_map(|m| (m + 1..=n_max).map(move |n| (m, n))).collect()
}

fn index_of(n_max: usize) -> impl Fn(usize, usize) -> Option<(usize, i64)> {
    let list = unknowns(n_max);
    move |a, b| {
        if a == b {
            return None;
        }
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        list.iter().position(|&p| p == (lo, hi)).map(|i| (i, sign))
    }
}

/// Constraint rows `α(n, m−1) − α(m, n−1) = 0` for all `0 ≤ m, n ≤ n_max`.
pub fn jacobi_constraints(n_max: usize) -> Vec<Vec<Rational>> {
    let nu = unknowns(n_max).len();
    let idx = index_of(n_max);
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for m in 0..=n_max {
            let mut row = vec![Rational::zero(); nu];
            if m >= 1 {
                if let Some((i, s)) = idx(n, m - 1) {
                    row[i] += Rational::from_i64(s);
                }
            }
            if n >= 1 {
                if let Some((i, s)) = idx(m, n - 1) {
                    row[i] -= Rational::from_i64(s);
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Solves the central-extension constraints exactly.
pub fn central_obstruction_solve(n_max: usize) -> Result<ObstructionResult, DomainError> {
    if n_max < 2 {
        return Err(DomainError::Invalid(format!("n_max must be at least 2, got {n_max}")));
    }
    Ok(summarize(n_max, &jacobi_constraints(n_max)))
}

fn summarize(n_max: usize, rows: &[Vec<Rational>]) -> ObstructionResult {
    let names = unknowns(n_max);
    let (basis, free) = nullspace(rows, names.len());
    let forced_zeros: Vec<_> = (0..names.len())
        .filter(|&k| basis.iter().all(|v| v[k].is_zero()))
        .map(|k| names[k])
        .collect();
    let free_parameters: Vec<_> = free.iter().map(|&k| names[k]).collect();
    let dependent = names
        .iter()
        .copied()
        .filter(|p| !forced_zeros.contains(p) && !free_parameters.contains(p))
        .collect();
    ObstructionResult {
        n_max,
        nullspace_dim: basis.len(),
        free_parameters,
        forced_zeros,
        dependent,
        basis,
    }
}

/// Complex affine form `c₀ + Σ cₖ αₖ` in the unknowns (index 0 is the
/// constant term, index `k + 1` multiplies unknown `k`).
type Form = BTreeMap<usize, (Rational, Rational)>;

fn form_const(re: i64, im: i64) -> Form {
    let mut f = Form::new();
    if re != 0 || im != 0 {
        f.insert(0, (Rational::from_i64(re), Rational::from_i64(im)));
    }
    f
}

fn form_add(a: &mut Form, b: &Form, sign: i64) {
    let s = Rational::from_i64(sign);
    for (k, (re, im)) in b {
        let e = a.entry(*k).or_insert_with(|| (Rational::zero(), Rational::zero()));
        e.0 += &s * re;
        e.1 += &s * im;
    }
    a.retain(|_, (re, im)| !(re.is_zero() && im.is_zero()));
}

/// Product of two forms, at least one of which must be constant.
fn form_mul(a: &Form, b: &Form) -> Form {
    let is_const = |f: &Form| f.keys().all(|&k| k == 0);
    assert!(is_const(a) || is_const(b), "bracket table produced a quadratic form");
    let (c, f) = if is_const(a) { (a, b) } else { (b, a) };
    let (cr, ci) = c.get(&0).cloned().unwrap_or_else(|| (Rational::zero(), Rational::zero()));
    let mut out = Form::new();
    for (k, (re, im)) in f {
        let r = &cr * re - &ci * im;
        let i = &cr * im + &ci * re;
        if !(r.is_zero() && i.is_zero()) {
            out.insert(*k, (r, i));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Basis {
    H,
    K(usize, usize),
    Z,
}

/// Linear combination of basis elements with form coefficients.
type Elem = BTreeMap<Basis, Form>;

fn elem_add(a: &mut Elem, b: &Elem, sign: i64) {
    for (k, f) in b {
        let e = a.entry(*k).or_default();
        form_add(e, f, sign);
    }
    a.retain(|_, f| !f.is_empty());
}

fn single(b: Basis, f: Form) -> Elem {
    let mut e = Elem::new();
    if !f.is_empty() {
        e.insert(b, f);
    }
    e
}

fn bracket_basis(x: Basis, y: Basis, n_max: usize, spatial: &[usize]) -> Elem {
    let idx = index_of(n_max);
    match (x, y) {
        (Basis::H, Basis::K(n, i)) if n >= 1 => single(Basis::K(n - 1, i), form_const(0, -1)),
        (Basis::K(n, i), Basis::H) if n >= 1 => single(Basis::K(n - 1, i), form_const(0, 1)),
        (Basis::K(n, i), Basis::K(m, j)) if spatial[i] == spatial[j] => match idx(n, m) {
            Some((k, s)) => {
                let mut f = Form::new();
                f.insert(k + 1, (Rational::from_i64(s), Rational::zero()));
                single(Basis::Z, f)
            }
            None => Elem::new(),
        },
        _ => Elem::new(),
    }
}

fn bracket(a: &Elem, b: &Elem, n_max: usize, spatial: &[usize]) -> Elem {
    let mut out = Elem::new();
    for (x, fx) in a {
        for (y, fy) in b {
            let c = form_mul(fx, fy);
            if c.is_empty() {
                continue;
            }
            for (z, fz) in bracket_basis(*x, *y, n_max, spatial) {
                elem_add(&mut out, &single(z, form_mul(&c, &fz)), 1);
            }
        }
    }
    out
}

/// Every Jacobi identity of the basis `{H, K⁽ⁿ⁾ᵢ (i = 0,1,2), Z}` as rows
/// over the unknowns (real and imaginary parts separately). `spatial`
/// relabels the spatial index `i ↦ spatial[i]` in the `δᵢⱼ` of the table.
pub fn brute_force_constraints(n_max: usize, spatial: [usize; 3]) -> Vec<Vec<Rational>> {
    let nu = unknowns(n_max).len();
    let mut basis = vec![Basis::H];
    for n in 0..=n_max {
        for i in 0..3 {
            basis.push(Basis::K(n, i));
        }
    }
    basis.push(Basis::Z);
    let one = || form_const(1, 0);
    let mut rows = Vec::new();
    for (ia, &a) in basis.iter().enumerate() {
        for (ib, &b) in basis.iter().enumerate().skip(ia) {
            for &c in basis.iter().skip(ib) {
                let (ea, eb, ec) = (single(a, one()), single(b, one()), single(c, one()));
                let mut j = bracket(&ea, &bracket(&eb, &ec, n_max, &spatial), n_max, &spatial);
                elem_add(&mut j, &bracket(&eb, &bracket(&ec, &ea, n_max, &spatial), n_max, &spatial), 1);
                elem_add(&mut j, &bracket(&ec, &bracket(&ea, &eb, n_max, &spatial), n_max, &spatial), 1);
                for f in j.values() {
                    let mut re = vec![Rational::zero(); nu];
                    let mut im = vec![Rational::zero(); nu];
                    for (k, (r, i)) in f {
                        assert!(*k > 0, "Jacobi identity produced a constant term");
                        re[k - 1] = r.clone();
                        im[k - 1] = i.clone();
                    }
                    for row in [re, im] {
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    rows
}

/// Solves the brute-force system.
pub fn brute_force_solve(n_max: usize, spatial: [usize; 3]) -> ObstructionResult {
    summarize(n_max, &brute_force_constraints(n_max, spatial))
}

/// True when two constraint systems have the same solution space.
pub fn same_solution_space(a: &ObstructionResult, b: &ObstructionResult) -> bool {
    if a.n_max != b.n_max || a.nullspace_dim != b.nullspace_dim {
        return false;
    }
    let n = unknowns(a.n_max).len();
    rref(&a.basis, n) == rref(&b.basis, n)
}

/// Dimension predicted by the invariant pairings: one solution for every odd
/// index sum `s` with `N ≤ s ≤ 2N − 1`, i.e. `⌈N/2⌉`.
pub fn predicted_dimension(n_max: usize) -> usize {
    n_max.div_ceil(2)
}

/// The solution with index sum `s` (odd): `α_{m, s−m} = (−1)^m` for
/// `s − N ≤ m < s/2`. Returned over [`unknowns`].
pub fn pairing_solution(n_max: usize, s: usize) -> Vec<Rational> {
    let names = unknowns(n_max);
    names
        .iter()
        .map(|&(m, n)| {
            if m + n == s {
                if m % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                }
            } else {
                Rational::zero()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_has_single_free_pair() {
        let r = central_obstruction_solve(2).unwrap();
        assert!(r.alpha01_forced_zero());
        assert_eq!(r.free_parameters, vec![(1, 2)]);
        assert_eq!(r.nullspace_dim, 1);
        assert!(central_obstruction_solve(1).is_err());
    }

    #[test]
    fn brute_force_agrees_on_small_orders() {
        for n in 2..=5 {
            let direct = central_obstruction_solve(n).unwrap();
            let brute = brute_force_solve(n, [0, 1, 2]);
            assert!(same_solution_space(&direct, &brute), "n_max = {n}");
            assert_eq!(direct.nullspace_dim, predicted_dimension(n));
        }
    }

    #[test]
    fn pairing_solutions_satisfy_constraints() {
        for n in 2..=6 {
            let rows = jacobi_constraints(n);
            for s in (n..2 * n).filter(|s| s % 2 == 1) {
                let v = pairing_solution(n, s);
                for row in &rows {
                    let dot: Rational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                    assert!(dot.is_zero(), "n = {n}, s = {s}");
                }
            }
        }
    }
}
