//! Holomorphic graphs, the maps F and G, and numerical checks of generalized
//! and regular solutions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equations::{residual_at, HessianPoint, MongeAmpereEquation};
use crate::error::Error;
use crate::exterior::{p, q, Form};
use crate::expr::{central_difference_defect, Expr};
use crate::linalg::Matrix;
use crate::scalar::{cq, Field};
use crate::structures::{DarbouxChart, StructureName};
use crate::symplectic::standard_omega;
use crate::{Cf, Cq};

/// Samples per grid unless told otherwise.
pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_SEED: u64 = 20;
/// Step and tolerance of the finite-difference cross-check.
pub const FD_STEP: f64 = 1e-4;
pub const FD_TOL: f64 = 1e-6;

const Z_NAMES: [&str; 2] = ["z1", "z2"];

/// `φ(z1, z2)` with its first and second derivatives.
#[derive(Clone, Debug)]
pub struct HolomorphicFunction {
    expr: Expr,
    d1: [Expr; 2],
    d2: [[Expr; 2]; 2],
}

impl HolomorphicFunction {
    /// Variables 0 and 1 are `z1`, `z2`.
    pub fn new(expr: Expr) -> Result<Self, Error> {
        if expr.arity() > 2 {
            return Err(Error::Evaluation("holomorphic functions depend on z1, z2 only".into()));
        }
        let d1 = [expr.diff(0), expr.diff(1)];
        let d2 = [[d1[0].diff(0), d1[0].diff(1)], [d1[1].diff(0), d1[1].diff(1)]];
        Ok(HolomorphicFunction { expr, d1, d2 })
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        Self::new(Expr::parse(text, &Z_NAMES)?)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn value(&self, z: [Cf; 2]) -> Cf {
        self.expr.eval(&z)
    }

    /// `(φ1, φ2)`
    pub fn gradient(&self, z: [Cf; 2]) -> [Cf; 2] {
        [self.d1[0].eval(&z), self.d1[1].eval(&z)]
    }

    /// `[[φ11, φ12], [φ21, φ22]]`
    pub fn hessian(&self, z: [Cf; 2]) -> [[Cf; 2]; 2] {
        let e = |a: usize, b: usize| self.d2[a][b].eval(&z);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    /// Worst relative discrepancy against central differences.
    pub fn derivative_defect(&self, samples: &[[Cf; 2]]) -> f64 {
        samples.iter().map(|z| central_difference_defect(&self.expr, z, FD_STEP)).fold(0.0, f64::max)
    }
}

impl std::fmt::Display for HolomorphicFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.expr.display(&Z_NAMES))
    }
}

/// Seeded points of the polydisc of the given radius around `center`.
pub fn sample_polydisc(center: [Cf; 2], radius: f64, count: usize, seed: u64) -> Vec<[Cf; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disc = |c: Cf| {
        let r = radius * rng.gen::<f64>().sqrt();
        let t = rng.gen::<f64>() * std::f64::consts::TAU;
        c + Cf::from_polar(r, t)
    };
    (0..count).map(|_| [disc(center[0]), disc(center[1])]).collect()
}

/// 64 points in the unit polydisc around the origin.
pub fn default_samples() -> Vec<[Cf; 2]> {
    sample_polydisc([Cf::new(0.0, 0.0); 2], 1.0, DEFAULT_SAMPLES, DEFAULT_SEED)
}

/// Seeded points of the cube `center + [-radius, radius]^n`.
pub fn sample_box(center: &[f64], radius: f64, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| center.iter().map(|c| c + radius * (2.0 * rng.gen::<f64>() - 1.0)).collect()).collect()
}

/// Tensor grid with `per_axis` points on each `[lo_k, hi_k]`.
pub fn tensor_grid(lo: &[f64], hi: &[f64], per_axis: usize) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for (a, b) in lo.iter().zip(hi) {
        let axis: Vec<f64> = (0..per_axis).map(|k| a + (b - a) * k as f64 / (per_axis - 1) as f64).collect();
        out = out.into_iter().flat_map(|pt| axis.iter().map(move |v| [pt.clone(), vec![*v]].concat())).collect();
    }
    out
}

/// Points of a half-dimensional submanifold of ℝ²ⁿ with tangent frames.
#[derive(Clone, Debug)]
pub struct SampledSubmanifold {
    dim: usize,
    points: Vec<Vec<f64>>,
    frames: Vec<Matrix<Cf>>,
}

impl SampledSubmanifold {
    /// Frames are `dim × dim/2`; each must have full rank.
    pub fn new(dim: usize, points: Vec<Vec<f64>>, frames: Vec<Matrix<Cf>>) -> Result<Self, Error> {
        for (k, f) in frames.iter().enumerate() {
            if f.rows() != dim || f.cols() != dim / 2 {
                return Err(Error::DimensionMismatch { expected: dim, found: f.rows() });
            }
            if f.rank() != dim / 2 {
                return Err(Error::RankDeficientFrame { sample: k });
            }
        }
        Ok(SampledSubmanifold { dim, points, frames })
    }

    /// Parametrization by real expressions; frames by symbolic derivatives.
    pub fn from_expressions(components: &[Expr], params: &[Vec<f64>]) -> Result<Self, Error> {
        let dim = components.len();
        let m = dim / 2;
        let jac: Vec<Vec<Expr>> = components.iter().map(|e| (0..m).map(|v| e.diff(v)).collect()).collect();
        let mut points = Vec::new();
        let mut frames = Vec::new();
        for t in params {
            points.push(components.iter().map(|e| e.eval_real(t).re).collect());
            frames.push(Matrix::from_fn(dim, m, |r, c| Cf::new(jac[r][c].eval_real(t).re, 0.0)));
        }
        Self::new(dim, points, frames)
    }

    /// Parametrization by a closure; frames by central differences.
    pub fn from_map(dim: usize, params: &[Vec<f64>], map: impl Fn(&[f64]) -> Vec<f64>, step: f64) -> Result<Self, Error> {
        let mut points = Vec::new();
        let mut frames = Vec::new();
        for t in params {
            let mut cols = Vec::new();
            for v in 0..t.len() {
                let mut a = t.clone();
                let mut b = t.clone();
                a[v] += step;
                b[v] -= step;
                let (fa, fb) = (map(&a), map(&b));
                cols.push((0..dim).map(|r| (fa[r] - fb[r]) / (2.0 * step)).collect::<Vec<f64>>());
            }
            points.push(map(t));
            frames.push(Matrix::from_fn(dim, cols.len(), |r, c| Cf::new(cols[c][r], 0.0)));
        }
        Self::new(dim, points, frames)
    }

    /// `{p = 0}` at the given `q` points.
    pub fn real_slice(qs: &[Vec<f64>]) -> Result<Self, Error> {
        let n = qs.first().map_or(4, Vec::len);
        let mut points = Vec::new();
        let mut frames = Vec::new();
        for t in qs {
            let mut x = vec![0.0; 2 * n];
            for k in 0..n {
                x[q(k + 1)] = t[k];
            }
            points.push(x);
            frames.push(Matrix::from_fn(2 * n, n, |r, c| Cf::new(if r == q(c + 1) { 1.0 } else { 0.0 }, 0.0)));
        }
        Self::new(2 * n, points, frames)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn frames(&self) -> &[Matrix<Cf>] {
        &self.frames
    }

    /// Largest `|form(columns)|` over samples and column choices.
    pub fn max_on_frames(&self, form: &Form<Cf>) -> f64 {
        let k = form.degree();
        let m = self.dim / 2;
        let choices = combinations(m, k);
        self.frames
            .iter()
            .flat_map(|f| choices.iter().map(move |cols| form.evaluate(&Matrix::from_fn(f.rows(), k, |r, c| f[(r, cols[c])]))))
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// `(Re x, Im x)` interleaved, as needed by a chart's real inverse.
fn real_parts(coords: &[Cf]) -> Vec<Cf> {
    coords.iter().flat_map(|c| [Cf::new(c.re, 0.0), Cf::new(c.im, 0.0)]).collect()
}

/// `L_φ = {(z1, z2, φ1, φ2)}` in the chart, realized in ℝ⁸.
pub fn graph(phi: &HolomorphicFunction, chart: &DarbouxChart<Cf>, samples: &[[Cf; 2]]) -> Result<SampledSubmanifold, Error> {
    let inv = chart.inverse_map();
    let back = |coords: [Cf; 4]| -> Vec<Cf> { inv.mul_vec(&real_parts(&coords)) };
    let one = Cf::new(1.0, 0.0);
    let zero = Cf::new(0.0, 0.0);
    let mut points = Vec::new();
    let mut frames = Vec::new();
    for z in samples {
        let g = phi.gradient(*z);
        let h = phi.hessian(*z);
        points.push(back([z[0], g[0], z[1], g[1]]).iter().map(|c| c.re).collect());
        // d/dz_k in chart order (z1, u1, z2, u2); the Im direction is i times it
        let t1 = [one, h[0][0], zero, h[1][0]];
        let t2 = [zero, h[0][1], one, h[1][1]];
        let mut cols = Vec::new();
        for t in [t1, t2] {
            cols.push(back(t));
            cols.push(back(t.map(|c| c * Cf::i())));
        }
        frames.push(Matrix::from_fn(8, 4, |r, c| Cf::new(cols[c][r].re, 0.0)));
    }
    SampledSubmanifold::new(8, points, frames)
}

/// Float copy of an exact chart.
pub fn float_chart(chart: &DarbouxChart<Cq>) -> DarbouxChart<Cf> {
    chart.map(|c| c.to_c64())
}

/// `G(q, p) = (p1 − ip2, q3 + iq4, −q1 − iq2, p3 − ip4)` as a chart
/// (rows `z1, u1, z2, u2`).
pub fn map_g_prop2() -> DarbouxChart<Cq> {
    let one = cq((1, 1), (0, 1));
    let i = cq((0, 1), (1, 1));
    let mut m = Matrix::zeros(4, 8);
    m[(0, p(1))] = one.clone();
    m[(0, p(2))] = -i.clone();
    m[(1, q(1))] = -one.clone();
    m[(1, q(2))] = -i.clone();
    m[(2, q(3))] = one.clone();
    m[(2, q(4))] = i.clone();
    m[(3, p(3))] = one;
    m[(3, p(4))] = -i;
    DarbouxChart::new(m).expect("G has full rank")
}

/// The partial Legendre swap `(z1, z2, u1, u2) ↦ (u1, z2, −z1, u2)` on chart
/// rows `(z1, u1, z2, u2)`.
pub fn legendre_swap() -> Matrix<Cq> {
    Matrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
}

/// `α` with `α² = (1 + 2i)/√5`.
pub fn alpha() -> Cf {
    (Cf::new(1.0, 2.0) / 5f64.sqrt()).sqrt()
}

/// The map F of the special lagrangian construction, built in floating
/// point from its coordinate formulas.
pub fn map_f_prop1() -> DarbouxChart<Cf> {
    let a = alpha();
    let ai = 1.0 / a;
    let i = Cf::i();
    let w = Cf::new(-1.0, 1.0);
    let v = Cf::new(1.0, -1.0);
    let r2 = Cf::new(2f64.sqrt(), 0.0);
    let mut m = Matrix::zeros(4, 8);
    // z1, u1 share the q-part and flip the p-part; same for z2, u2
    for (row, sign, den) in [(0usize, 1.0, i * r2), (1, -1.0, i * r2)] {
        m[(row, q(1))] = a / den;
        m[(row, q(2))] = w * a / den;
        m[(row, p(1))] = v * ai * sign / den;
        m[(row, p(2))] = -i * ai * sign / den;
    }
    for (row, sign) in [(2usize, -1.0), (3, 1.0)] {
        m[(row, q(3))] = a / r2;
        m[(row, q(4))] = w * a / r2;
        m[(row, p(3))] = v * ai * sign / r2;
        m[(row, p(4))] = -i * ai * sign / r2;
    }
    DarbouxChart::new(m).expect("F has full rank")
}

/// `(Z1, U1, Z2, U2)` in terms of the J₂ coordinates `(z1, u1, z2, u2)`.
pub fn zu_transform() -> Matrix<Cf> {
    let a = alpha();
    let ai = 1.0 / a;
    let d1 = Cf::i() * 2f64.sqrt();
    let d2 = Cf::new(2f64.sqrt(), 0.0);
    let z = Cf::new(0.0, 0.0);
    Matrix::from_rows(vec![
        vec![a / d1, ai / d1, z, z],
        vec![a / d1, -ai / d1, z, z],
        vec![z, z, a / d2, -ai / d2],
        vec![z, z, a / d2, ai / d2],
    ])
}

/// Restrictions of `Ω` and `ω` to the sampled tangent spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedReport {
    pub samples: usize,
    pub omega_max: f64,
    pub form_max: f64,
    pub pass: bool,
}

/// `Ω|_L = 0` and `ω|_L = 0` within `tol`.
pub fn verify_generalized(l: &SampledSubmanifold, omega: &Form<Cf>, tol: f64) -> GeneralizedReport {
    let big = standard_omega::<Cf>(l.dim());
    let omega_max = l.max_on_frames(&big);
    let form_max = l.max_on_frames(omega);
    GeneralizedReport { samples: l.len(), omega_max, form_max, pass: omega_max <= tol && form_max <= tol }
}

/// Both `Ω` and `Ω_𝕁` vanish on `L` (equivalently `Θ` does).
pub fn verify_complex_lagrangian(l: &SampledSubmanifold, chart: &DarbouxChart<Cf>, tol: f64) -> Result<bool, Error> {
    let pair = chart.pair()?;
    Ok(l.max_on_frames(pair.omega(1)) <= tol && l.max_on_frames(pair.omega(2)) <= tol)
}

/// A real function on ℝⁿ with its symbolic Hessian.
#[derive(Clone, Debug)]
pub struct RealFunction {
    n: usize,
    expr: Expr,
    hess: Vec<Vec<Expr>>,
}

impl RealFunction {
    pub fn new(expr: Expr, n: usize) -> Self {
        let hess = (0..n).map(|i| (0..n).map(|j| expr.diff(i).diff(j)).collect()).collect();
        RealFunction { n, expr, hess }
    }

    pub fn parse(text: &str, names: &[&str]) -> Result<Self, Error> {
        Ok(Self::new(Expr::parse(text, names)?, names.len()))
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn value(&self, x: &[f64]) -> Cf {
        self.expr.eval_real(x)
    }

    pub fn hessian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.hess.iter().map(|r| r.iter().map(|e| e.eval_real(x).re).collect()).collect()
    }

    /// `f(q) = Re φ(z(q))` where the chart's `z` rows only involve `q`.
    pub fn real_part(phi: &HolomorphicFunction, chart: &DarbouxChart<Cf>) -> Result<Self, Error> {
        let m = chart.matrix();
        let mut zs = Vec::new();
        for row in [0, 2] {
            if (1..=4).any(|k| m[(row, p(k))].norm() != 0.0) {
                return Err(Error::Evaluation("chart coordinates z depend on p".into()));
            }
            let z = (1..=4).fold(Expr::real(0.0), |acc, k| acc.add(&Expr::constant(m[(row, q(k))]).mul(&Expr::var(k - 1))));
            zs.push(z);
        }
        Ok(Self::new(phi.expr().substitute(&zs).re(), 4))
    }
}

/// Residuals of an equation along a function.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularReport {
    pub samples: usize,
    /// Grid points skipped, with the reason.
    pub skipped: Vec<(usize, String)>,
    pub residual_max: f64,
    /// Worst finite-difference discrepancy of the symbolic derivatives.
    pub derivative_defect: f64,
    pub pass: bool,
}

/// Evaluates the equation's symbol on the Hessian of `f` at each grid point.
pub fn verify_regular(f: &RealFunction, eq: &MongeAmpereEquation, grid: &[Vec<f64>], tol: f64) -> Result<RegularReport, Error> {
    if f.arity() != eq.dimension {
        return Err(Error::DimensionMismatch { expected: eq.dimension, found: f.arity() });
    }
    let mut skipped = Vec::new();
    let mut residual_max: f64 = 0.0;
    let mut derivative_defect: f64 = 0.0;
    let mut used = 0;
    for (k, x) in grid.iter().enumerate() {
        let v = f.value(x);
        if !v.re.is_finite() || v.im.abs() > 1e-9 * (1.0 + v.re.abs()) {
            skipped.push((k, "outside the domain of f".to_string()));
            continue;
        }
        let xs: Vec<Cf> = x.iter().map(|&t| Cf::new(t, 0.0)).collect();
        derivative_defect = derivative_defect.max(central_difference_defect(f.expr(), &xs, FD_STEP));
        let h = HessianPoint::new(f.hessian(x))?;
        residual_max = residual_max.max(residual_at(eq, &h)?.abs());
        used += 1;
    }
    let pass = used > 0 && residual_max <= tol && derivative_defect <= FD_TOL;
    Ok(RegularReport { samples: used, skipped, residual_max, derivative_defect, pass })
}

/// `det hess_ℝ(Re φ) − |det hess_ℂ φ|²`, worst over the samples, for the
/// chart's coordinates.
pub fn hessian_identity_defect(phi: &HolomorphicFunction, chart: &DarbouxChart<Cf>, grid: &[Vec<f64>]) -> Result<f64, Error> {
    let f = RealFunction::real_part(phi, chart)?;
    let m = chart.matrix();
    let mut worst: f64 = 0.0;
    for x in grid {
        let z = |row: usize| (1..=4).fold(Cf::new(0.0, 0.0), |acc, k| acc + m[(row, q(k))] * x[k - 1]);
        let h = phi.hessian([z(0), z(2)]);
        let hc = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let hr = f.hessian(x);
        let det = Matrix::from_fn(4, 4, |r, c| Cf::new(hr[r][c], 0.0)).determinant().re;
        worst = worst.max((det - hc.norm_sqr()).abs() / (1.0 + det.abs()));
    }
    Ok(worst)
}

/// Sign in front of `|φ11|²` in the constraint `φ12 + φ̄12 ± |φ11|² = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintSign {
    Plus,
    Minus,
}

impl ConstraintSign {
    pub fn value(self) -> f64 {
        match self {
            ConstraintSign::Plus => 1.0,
            ConstraintSign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub constraint_max: f64,
    /// First sample violating the constraint.
    pub violation: Option<usize>,
    pub regular: RegularReport,
    pub pass: bool,
}

/// Checks `φ12 + φ̄12 ± |φ11|² = 0` on the grid (chart J coordinates), then
/// whether `Re φ` solves Plebanski II there.
pub fn prop7_family_check(
    phi: &HolomorphicFunction,
    sign: ConstraintSign,
    grid: &[Vec<f64>],
    tol: f64,
) -> Result<FamilyReport, Error> {
    let chart = float_chart(&DarbouxChart::builtin(StructureName::J));
    let m = chart.matrix();
    let mut constraint_max: f64 = 0.0;
    let mut violation = None;
    for (k, x) in grid.iter().enumerate() {
        let z = |row: usize| (1..=4).fold(Cf::new(0.0, 0.0), |acc, j| acc + m[(row, q(j))] * x[j - 1]);
        let h = phi.hessian([z(0), z(2)]);
        let c = (2.0 * h[0][1].re + sign.value() * h[0][0].norm_sqr()).abs();
        if c > tol && violation.is_none() {
            violation = Some(k);
        }
        constraint_max = constraint_max.max(c);
    }
    let eq = crate::equations::lookup("PII")?;
    let regular = verify_regular(&RealFunction::real_part(phi, &chart)?, eq, grid, tol)?;
    let pass = violation.is_none() && regular.pass;
    Ok(FamilyReport { constraint_max, violation, regular, pass })
}

/// `L = {(q1, −e^{q1} sin q2, e^{q1} cos q2, −q2)}` (coordinates
/// `(q1, q2, p1, p2)`), stored in the interleaved order of ℝ⁴.
pub fn legendre_example(params: &[Vec<f64>]) -> Result<SampledSubmanifold, Error> {
    let names = ["s", "t"];
    let comps: Vec<Expr> = ["s", "exp(s)*cos(t)", "-exp(s)*sin(t)", "-t"]
        .iter()
        .map(|t| Expr::parse(t, &names).expect("fixed expression"))
        .collect();
    SampledSubmanifold::from_expressions(&comps, params)
}

/// `u(t1, t2) = t2 asin(t2 e^{−t1}) + sqrt(e^{2 t1} − t2²)`.
pub fn legendre_regular_solution() -> RealFunction {
    RealFunction::parse("t2*asin(t2*exp(-t1)) + sqrt(exp(2*t1) - t2^2)", &["t1", "t2"]).expect("fixed expression")
}

/// Grid of `per_axis²` points of `[0, 1] × [-0.8, 0.8]`, where
/// `|t2 e^{−t1}| ≤ 0.8` keeps `u` away from the edge of its domain.
pub fn legendre_grid(per_axis: usize) -> Vec<Vec<f64>> {
    tensor_grid(&[0.0, -0.8], &[1.0, 0.8], per_axis)
}

/// Proposition-indexed defaults: chart, equation name and `φ`.
#[derive(Clone, Debug)]
pub struct PropositionSetup {
    pub number: u8,
    pub description: &'static str,
    pub chart: DarbouxChart<Cf>,
    pub equation: &'static str,
    pub default_phi: &'static str,
    /// Generalized (graph) check, or regular (real part) check.
    pub regular: bool,
}

pub fn proposition(number: u8) -> Result<PropositionSetup, Error> {
    let j = |n| float_chart(&DarbouxChart::builtin(n));
    let g = float_chart(&map_g_prop2());
    let s = |number, description, chart, equation, default_phi, regular| PropositionSetup {
        number,
        description,
        chart,
        equation,
        default_phi,
        regular,
    };
    Ok(match number {
        1 => s(1, "F^-1(L_phi) special lagrangian when |phi11|^2 = |phi22|^2", map_f_prop1(), "SLAG", "(z1^2 + z2^2)/2", false),
        2 => s(2, "G^-1(L_phi) solves hess f = 1 when |phi11|^2 = |phi22|^2", g, "H+", "(z1^2 + z2^2)/2", false),
        3 => s(3, "G^-1(L_phi) solves hess f = -1 for phi = a(z1)b(z2)", g, "H-", "z1*z2", false),
        4 => s(4, "complex lagrangian surfaces for K solve hess f = 1", j(StructureName::K), "H+", "exp(z1)*sin(z2) + z1^2*z2", false),
        5 => s(5, "G^-1(L_phi) solves Plebanski I for phi = a z1 + b(z2)", g, "PI", "2*z1 + z2^3 - sin(z2)", false),
        6 => s(6, "Re phi solves Plebanski I for phi = z1 z2 + a(z1) + b(z2) on Jtilde", j(StructureName::JTilde), "PI", "z1*z2 + z1^3 + z2^3", true),
        7 => s(7, "Re phi solves Plebanski II when phi12 + conj(phi12) + |phi11|^2 = 0", j(StructureName::J), "PII", "z1^2/2 - z1*z2/2 + i*z2^3", true),
        8 => s(8, "Re phi solves Plebanski II for phi = a(z2) + b(z2) z1 on Jtilde", j(StructureName::JTilde), "PII", "z2^2 + z2*z1", true),
        _ => return Err(Error::UnknownName(format!("proposition {number}"))),
    })
}

/// Outcome of one proposition run.
#[derive(Clone, Debug)]
pub enum PropositionReport {
    Generalized(GeneralizedReport),
    Regular(RegularReport),
}

impl PropositionReport {
    pub fn pass(&self) -> bool {
        match self {
            PropositionReport::Generalized(r) => r.pass,
            PropositionReport::Regular(r) => r.pass,
        }
    }

    pub fn residual_max(&self) -> f64 {
        match self {
            PropositionReport::Generalized(r) => r.omega_max.max(r.form_max),
            PropositionReport::Regular(r) => r.residual_max,
        }
    }
}

/// Runs a proposition for `φ` on `samples` (regular checks use the real
/// points of the samples in the chart's `q` coordinates).
pub fn run_proposition(setup: &PropositionSetup, phi: &HolomorphicFunction, samples: &[[Cf; 2]], tol: f64) -> Result<PropositionReport, Error> {
    let eq = crate::equations::lookup(setup.equation)?;
    if setup.regular {
        let grid: Vec<Vec<f64>> = samples.iter().map(|z| vec![z[0].re, z[0].im, z[1].re, z[1].im]).collect();
        let f = RealFunction::real_part(phi, &setup.chart)?;
        return Ok(PropositionReport::Regular(verify_regular(&f, eq, &grid, tol)?));
    }
    let l = graph(phi, &setup.chart, samples)?;
    Ok(PropositionReport::Generalized(verify_generalized(&l, &eq.form_as::<Cf>(), tol)))
}
