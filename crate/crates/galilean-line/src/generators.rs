//! The function-space representation `(U(g)f)(x, t) = f(g⁻¹(x, t))` and the
//! finite-difference recovery of its generators.
//!
//! Each generator is `i d/ds U(g(s)) f |_{s=0}` for a one-parameter subgroup:
//!
//! | tag       | subgroup                               | closed form                          |
//! |-----------|----------------------------------------|--------------------------------------|
//! | `K(n, i)` | translation `a = s tⁿ/n! eᵢ`           | `−i tⁿ/n! ∂ᵢ f`                      |
//! | `J(n, i)` | rotation `exp(s tⁿ/n! Lᵢ)`             | `−i tⁿ/n! ε_ijk x_j ∂_k f`           |
//! | `H`       | time shift `b = s`                     | `−i ∂_t f`                           |
//!
//! Commutators are recovered with nested central differences refined by
//! Richardson extrapolation and compared with
//! `[H, K(n)] = −i K(n−1)`, `[H, J(n)] = −i J(n−1)`,
//! `[J(n,i), K(m,j)] = i tⁿ/n! ε_ijk K(m,k)`,
//! `[J(n,i), J(m,j)] = i tⁿ/n! ε_ijk J(m,k)` and `[K, K] = [H, H] = 0`.

use num_complex::Complex64;
use rand::Rng;

use crate::error::DomainError;
use crate::jet::{angle_matrix, rot_exp, Jet};
use crate::line_group::{act, inverse, GroupElement};
use crate::scalar::factorial;
use crate::timefn::{consts, Mat3, Vec3};

/// Truncation order used for the subgroup jets.
pub const GENERATOR_ORDER: usize = 8;

/// A function of spacetime with complex values.
pub trait SpacetimeFn {
    fn eval(&self, x: &[f64; 3], t: f64) -> Complex64;
}

/// `f(x,t) = A exp(−½α|x − c|² − ½β(t − t₀)² + i k·x)` with closed-form
/// partial derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    pub amplitude: f64,
    pub alpha: f64,
    pub beta: f64,
    pub center: [f64; 3],
    pub t0: f64,
    pub k: [f64; 3],
}

impl Default for TestFunction {
    fn default() -> Self {
        TestFunction { amplitude: 1.0, alpha: 1.0, beta: 1.0, center: [0.0; 3], t0: 0.0, k: [0.0; 3] }
    }
}

impl TestFunction {
    /// A random bump with moderate width, center and wave vector.
    pub fn random(rng: &mut impl Rng) -> Self {
        TestFunction {
            amplitude: 1.0,
            alpha: rng.gen_range(0.5..1.5),
            beta: rng.gen_range(0.5..1.5),
            center: std::array::from_fn(|_| rng.gen_range(-0.5..0.5)),
            t0: rng.gen_range(-0.5..0.5),
            k: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
        }
    }

    /// `∂f/∂xᵢ`.
    pub fn dx(&self, i: usize, x: &[f64; 3], t: f64) -> Complex64 {
        self.eval(x, t) * Complex64::new(-self.alpha * (x[i] - self.center[i]), self.k[i])
    }

    /// `∂f/∂t`.
    pub fn dt(&self, x: &[f64; 3], t: f64) -> Complex64 {
        self.eval(x, t) * (-self.beta * (t - self.t0))
    }

    /// `∫|f(x, t)|² d³x` at fixed `t`.
    pub fn norm_sq_exact(&self, t: f64) -> f64 {
        let spatial = (std::f64::consts::PI / self.alpha).powf(1.5);
        self.amplitude * self.amplitude * spatial * (-self.beta * (t - self.t0).powi(2)).exp()
    }
}

impl SpacetimeFn for TestFunction {
    fn eval(&self, x: &[f64; 3], t: f64) -> Complex64 {
        let r2: f64 = (0..3).map(|i| (x[i] - self.center[i]).powi(2)).sum();
        let kx: f64 = (0..3).map(|i| self.k[i] * x[i]).sum();
        let re = -0.5 * self.alpha * r2 - 0.5 * self.beta * (t - self.t0).powi(2);
        self.amplitude * Complex64::new(re, kx).exp()
    }
}

/// `U(g) f = f ∘ g⁻¹`, evaluated lazily through the inverse element's jets.
pub struct Acted<'a, F: SpacetimeFn + ?Sized> {
    ginv: GroupElement<Jet<f64>>,
    inner: &'a F,
}

impl<F: SpacetimeFn + ?Sized> SpacetimeFn for Acted<'_, F> {
    fn eval(&self, x: &[f64; 3], t: f64) -> Complex64 {
        let (y, s) = act(&self.ginv, x, &t);
        self.inner.eval(&y, s)
    }
}

/// `(x, t) ↦ f(Λ_{−b}Rᵀ(t)x − Λ_{−b}(Rᵀa)(t), t − b)`.
pub fn act_function_rep<'a, F: SpacetimeFn + ?Sized>(g: &GroupElement<Jet<f64>>, f: &'a F) -> Acted<'a, F> {
    Acted { ginv: inverse(g), inner: f }
}

/// Generator tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    K(usize, usize),
    J(usize, usize),
    H,
}

impl Generator {
    pub fn label(self) -> String {
        match self {
            Generator::K(n, i) => format!("K({n},{i})"),
            Generator::J(n, i) => format!("J({n},{i})"),
            Generator::H => "H".to_string(),
        }
    }

    /// All tags with `n ≤ n_max`.
    pub fn all(n_max: usize) -> Vec<Generator> {
        let mut out = vec![Generator::H];
        for n in 0..=n_max {
            for i in 0..3 {
                out.push(Generator::K(n, i));
                out.push(Generator::J(n, i));
            }
        }
        out
    }

    /// The subgroup element `g(s)`.
    pub fn subgroup(self, s: f64) -> GroupElement<Jet<f64>> {
        let order = GENERATOR_ORDER;
        let proto = Jet::<f64>::zero(order);
        let power = |n: usize| {
            let mut mono = vec![0.0; n + 1];
            mono[n] = s / factorial::<f64>(n);
            Jet::from_monomials(&mono, order)
        };
        match self {
            Generator::K(n, i) => {
                let mut a = Vec3::zero(&proto);
                a.c[i] = power(n);
                GroupElement::translation(a)
            }
            Generator::J(n, i) => {
                let mut theta = Vec3::zero(&proto);
                theta.c[i] = power(n);
                let rot = rot_exp(&angle_matrix(&theta)).expect("angle matrices are antisymmetric");
                GroupElement::rotation(rot)
            }
            Generator::H => GroupElement::time_shift(s, &proto),
        }
    }

    /// Closed-form action on a test function at a point.
    pub fn closed_form(self, f: &TestFunction, x: &[f64; 3], t: f64) -> Complex64 {
        let mi = Complex64::new(0.0, -1.0);
        match self {
            Generator::K(n, i) => mi * t.powi(n as i32) / factorial::<f64>(n) * f.dx(i, x, t),
            Generator::J(n, i) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..3 {
                    for k in 0..3 {
                        let e = consts::levi_civita(i, j, k);
                        if e != 0 {
                            acc += e as f64 * x[j] * f.dx(k, x, t);
                        }
                    }
                }
                mi * t.powi(n as i32) / factorial::<f64>(n) * acc
            }
            Generator::H => mi * f.dt(x, t),
        }
    }
}

/// The pair `(g(ε)⁻¹, g(−ε)⁻¹)` precomputed for repeated evaluation.
struct Stencil {
    plus: GroupElement<Jet<f64>>,
    minus: GroupElement<Jet<f64>>,
    eps: f64,
}

impl Stencil {
    fn new(which: Generator, eps: f64) -> Self {
        Stencil { plus: inverse(&which.subgroup(eps)), minus: inverse(&which.subgroup(-eps)), eps }
    }
}

fn check_eps(eps: f64) -> Result<(), DomainError> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(DomainError::NonPositiveStep(eps))
    }
}

/// `i (f(g(ε)⁻¹p) − f(g(−ε)⁻¹p)) / 2ε`.
pub fn generator_fd(which: Generator, f: &dyn SpacetimeFn, x: &[f64; 3], t: f64, eps: f64) -> Result<Complex64, DomainError> {
    check_eps(eps)?;
    Ok(apply_stencil(&Stencil::new(which, eps), f, x, t))
}

fn apply_stencil(st: &Stencil, f: &dyn SpacetimeFn, x: &[f64; 3], t: f64) -> Complex64 {
    let (yp, sp) = act(&st.plus, x, &t);
    let (ym, sm) = act(&st.minus, x, &t);
    Complex64::new(0.0, 1.0) * (f.eval(&yp, sp) - f.eval(&ym, sm)) / (2.0 * st.eps)
}

/// `B f` realized by finite differences, viewed as a spacetime function.
struct StencilFn<'a> {
    st: &'a Stencil,
    f: &'a dyn SpacetimeFn,
}

impl SpacetimeFn for StencilFn<'_> {
    fn eval(&self, x: &[f64; 3], t: f64) -> Complex64 {
        apply_stencil(self.st, self.f, x, t)
    }
}

fn nested_commutator(a: &Stencil, b: &Stencil, f: &dyn SpacetimeFn, x: &[f64; 3], t: f64) -> Complex64 {
    let bf = StencilFn { st: b, f };
    let af = StencilFn { st: a, f };
    apply_stencil(a, &bf, x, t) - apply_stencil(b, &af, x, t)
}

/// Richardson-refined finite-difference generator at step `eps`.
pub fn generator_richardson(which: Generator, f: &dyn SpacetimeFn, x: &[f64; 3], t: f64, eps: f64) -> Result<Complex64, DomainError> {
    let d1 = generator_fd(which, f, x, t, eps)?;
    let d2 = generator_fd(which, f, x, t, eps / 2.0)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Right side of the commutation relation for `[A, B]` applied to `f`, as
/// a combination of closed-form generators with coefficients at time `t`.
pub fn commutator_rhs(a: Generator, b: Generator, f: &TestFunction, x: &[f64; 3], t: f64) -> Complex64 {
    use Generator::*;
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let theta = |n: usize| t.powi(n as i32) / factorial::<f64>(n);
    match (a, b) {
        (H, K(n, j)) => {
            if n == 0 {
                zero
            } else {
                -i * K(n - 1, j).closed_form(f, x, t)
            }
        }
        (H, J(n, j)) => {
            if n == 0 {
                zero
            } else {
                -i * J(n - 1, j).closed_form(f, x, t)
            }
        }
        (J(n, p), K(m, q)) => {
            let mut acc = zero;
            for k in 0..3 {
                let e = consts::levi_civita(p, q, k);
                if e != 0 {
                    acc += e as f64 * K(m, k).closed_form(f, x, t);
                }
            }
            i * theta(n) * acc
        }
        (J(n, p), J(m, q)) => {
            let mut acc = zero;
            for k in 0..3 {
                let e = consts::levi_civita(p, q, k);
                if e != 0 {
                    acc += e as f64 * J(m, k).closed_form(f, x, t);
                }
            }
            i * theta(n) * acc
        }
        (K(..), K(..)) | (H, H) => zero,
        (x_, y_) => -commutator_rhs(y_, x_, f, x, t),
    }
}

/// Precomputed stencils for every generator up to a given index.
pub struct CommutatorEngine {
    tags: Vec<Generator>,
    coarse: Vec<Stencil>,
    fine: Vec<Stencil>,
}

impl CommutatorEngine {
    pub fn new(n_max: usize, eps: f64) -> Result<Self, DomainError> {
        check_eps(eps)?;
        let tags = Generator::all(n_max);
        let coarse = tags.iter().map(|&g| Stencil::new(g, eps)).collect();
        let fine = tags.iter().map(|&g| Stencil::new(g, eps / 2.0)).collect();
        Ok(CommutatorEngine { tags, coarse, fine })
    }

    pub fn tags(&self) -> &[Generator] {
        &self.tags
    }

    fn index(&self, g: Generator) -> Option<usize> {
        self.tags.iter().position(|&h| h == g)
    }

    /// `|[A,B]f − rhs|` at `(x, t)` with Richardson-refined nested
    /// differences.
    pub fn residual(&self, a: Generator, b: Generator, f: &TestFunction, x: &[f64; 3], t: f64) -> Result<f64, DomainError> {
        let ia = self.index(a).ok_or_else(|| DomainError::Invalid(format!("generator {} not prepared", a.label())))?;
        let ib = self.index(b).ok_or_else(|| DomainError::Invalid(format!("generator {} not prepared", b.label())))?;
        let c1 = nested_commutator(&self.coarse[ia], &self.coarse[ib], f, x, t);
        let c2 = nested_commutator(&self.fine[ia], &self.fine[ib], f, x, t);
        let refined = (4.0 * c2 - c1) / 3.0;
        Ok((refined - commutator_rhs(a, b, f, x, t)).norm())
    }
}

/// `|[A,B]f − rhs|` at one point with Richardson-refined nested differences.
pub fn commutator_residual(a: Generator, b: Generator, f: &TestFunction, x: &[f64; 3], t: f64, eps: f64) -> Result<f64, DomainError> {
    let n_max = [a, b]
        .iter()
        .map(|g| match g {
            Generator::K(n, _) | Generator::J(n, _) => *n,
            Generator::H => 0,
        })
        .max()
        .unwrap_or(0);
    CommutatorEngine::new(n_max, eps)?.residual(a, b, f, x, t)
}

/// Relative error of the plain central difference at `eps` against the
/// closed form.
pub fn generator_relative_error(which: Generator, f: &TestFunction, x: &[f64; 3], t: f64, eps: f64) -> Result<f64, DomainError> {
    let fd = generator_fd(which, f, x, t, eps)?;
    let exact = which.closed_form(f, x, t);
    let scale = exact.norm().max(f.eval(x, t).norm()).max(1e-300);
    Ok((fd - exact).norm() / scale)
}

/// Observed convergence order `log₂(e(ε)/e(ε/2))` of the central difference.
pub fn convergence_order(which: Generator, f: &TestFunction, x: &[f64; 3], t: f64, eps: f64) -> Result<f64, DomainError> {
    let e1 = generator_relative_error(which, f, x, t, eps)?;
    let e2 = generator_relative_error(which, f, x, t, eps / 2.0)?;
    Ok((e1 / e2).log2())
}

/// `∫|U(g)f|² d³x` at time `t` by the trapezoid rule on `[−L, L]³` with `n`
/// points per axis. The integrand is evaluated through the affine map
/// `x ↦ R x + a` of `g⁻¹` at time `t`.
pub fn transformed_norm_sq(g: &GroupElement<Jet<f64>>, f: &TestFunction, t: f64, half_width: f64, n: usize) -> f64 {
    let ginv = inverse(g);
    let r: [[f64; 3]; 3] = Mat3::evaluate(&ginv.rot, &t);
    let a = ginv.trans.evaluate(&t);
    let s = t + ginv.tshift;
    let h = 2.0 * half_width / (n - 1) as f64;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = [-half_width + i as f64 * h, -half_width + j as f64 * h, -half_width + k as f64 * h];
                let y = consts::add(&consts::apply(&r, &x), &a);
                let w = [i, j, k].iter().map(|&m| if m == 0 || m == n - 1 { 0.5 } else { 1.0 }).product::<f64>();
                acc += w * f.eval(&y, s).norm_sqr();
            }
        }
    }
    acc * h * h * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_generator_on_temporal_gaussian() {
        // f = e^{−t²}: β = 2.
        let f = TestFunction { beta: 2.0, alpha: 0.0, ..Default::default() };
        let h = generator_fd(Generator::H, &f, &[0.0; 3], 1.0, 1e-4).unwrap();
        let expect = Complex64::new(0.0, 2.0 * (-1.0f64).exp());
        assert!((h - expect).norm() / expect.norm() < 1e-6);
        assert!(generator_fd(Generator::H, &f, &[0.0; 3], 1.0, 0.0).is_err());
    }

    #[test]
    fn boosts_vanish_at_time_zero() {
        let f = TestFunction { center: [0.3, -0.2, 0.1], ..Default::default() };
        let v = generator_fd(Generator::K(2, 1), &f, &[0.1, 0.2, 0.3], 0.0, 1e-4).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn identity_and_translation_action() {
        let f = TestFunction { center: [0.3, -0.2, 0.1], k: [0.5, 0.0, -1.0], ..Default::default() };
        let proto = Jet::<f64>::zero(GENERATOR_ORDER);
        let e = GroupElement::identity(&proto);
        let x = [0.4, 0.1, -0.7];
        assert_eq!(act_function_rep(&e, &f).eval(&x, 0.3), f.eval(&x, 0.3));
        let a0 = [1.0, -2.0, 0.5];
        let g = GroupElement::translation(Vec3::constant(&a0, &proto));
        let shifted = consts::sub(&x, &a0);
        assert!((act_function_rep(&g, &f).eval(&x, 0.3) - f.eval(&shifted, 0.3)).norm() < 1e-15);
    }

    #[test]
    fn sample_commutators() {
        let f = TestFunction { center: [0.2, -0.1, 0.3], k: [0.4, -0.3, 0.2], t0: 0.1, ..Default::default() };
        let x = [0.3, -0.4, 0.2];
        let t = 0.7;
        for (a, b) in [
            (Generator::K(0, 0), Generator::K(1, 1)),
            (Generator::H, Generator::K(1, 2)),
            (Generator::J(0, 0), Generator::J(0, 1)),
            (Generator::H, Generator::J(2, 1)),
            (Generator::J(1, 2), Generator::K(2, 0)),
        ] {
            let r = commutator_residual(a, b, &f, &x, t, 1e-3).unwrap();
            assert!(r < 1e-5, "[{}, {}] residual {r}", a.label(), b.label());
        }
    }
}
