//! Symplectic Monge-Ampère equations with constant coefficients.
//!
//! An effective n-form ω on ℝ²ⁿ defines the equation `(df)*ω = 0`. Its
//! symbol is a polynomial in the Hessian entries `f_ij`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;


use crate::error::Error;
use crate::exterior::{interior, p, pullback, q, Blade, Form, LinearMap, Polyvector};
use crate::hermitian::{bar_form, EffectiveTwoZeroBasis, Signature};
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, Field};
use crate::structures::DarbouxChart;
use crate::symplectic::{hodge_lepage_decompose, matrix_of, standard_omega, SymplecticForm};
use crate::{Cf, Cq};

/// Monomial in the upper-triangle variables `f_ij` (`i <= j`, 1-based),
/// stored sorted with repetition.
pub type Monomial = Vec<(u8, u8)>;

/// Polynomial in the Hessian entries of `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct HessPoly<S> {
    n: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Field> HessPoly<S> {
    pub fn zero(n: usize) -> Self {
        HessPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: S) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Vec::new(), c);
        p
    }

    /// The variable `f_ij` (`f_ji` is the same variable).
    pub fn var(n: usize, i: usize, j: usize) -> Self {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        assert!(1 <= a && b <= n, "index out of range");
        let mut p = Self::zero(n);
        p.add_term(vec![(a as u8, b as u8)], S::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(S::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend(m2.iter().copied());
                m.sort();
                out.add_term(m, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Value at a symmetric matrix of second derivatives.
    pub fn eval(&self, h: &Matrix<S>) -> S {
        self.terms.iter().fold(S::zero(), |acc, (m, c)| {
            acc + m.iter().fold(c.clone(), |x, &(i, j)| x * h[(i as usize - 1, j as usize - 1)].clone())
        })
    }

    /// Whether `self = s·other` for `s = ±1`; returns that sign.
    pub fn sign_relative_to(&self, other: &Self) -> Option<i8> {
        if self == other {
            Some(1)
        } else if *self == other.scale(&-S::one()) {
            Some(-1)
        } else {
            None
        }
    }
}

impl<S: Field> fmt::Display for HessPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut order: Vec<(&Monomial, &S)> = self.terms.iter().collect();
        order.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        for (k, (m, c)) in order.into_iter().enumerate() {
            let mut coef = format_scalar(c);
            let negative = coef.starts_with('-');
            if negative {
                coef.remove(0);
            }
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let mut i = 0;
            while i < m.len() {
                let mut e = 1;
                while i + e < m.len() && m[i + e] == m[i] {
                    e += 1;
                }
                let (a, b) = m[i];
                factors.push(if e == 1 { format!("f{a}{b}") } else { format!("f{a}{b}^{e}") });
                i += e;
            }
            if factors.is_empty() {
                f.write_str(&coef)?;
            } else {
                if coef != "1" {
                    write!(f, "{coef}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn det_poly<S: Field>(rows: &[Vec<HessPoly<S>>], n: usize) -> HessPoly<S> {
    if rows.len() == 1 {
        return rows[0][0].clone();
    }
    let mut acc = HessPoly::zero(n);
    for c in 0..rows.len() {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<HessPoly<S>>> =
            rows[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| x.clone()).collect()).collect();
        let term = rows[0][c].mul(&det_poly(&minor, n));
        acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Symbol of an n-form on ℝ²ⁿ: substitute `dp_i = Σ_j f_ij dq_j` and take
/// the coefficient of `dq1∧…∧dqn`.
pub fn symbol_reduce<S: Field>(omega: &Form<S>) -> Result<HessPoly<S>, Error> {
    let dim = omega.dim();
    let n = dim / 2;
    if dim % 2 != 0 || omega.degree() != n {
        return Err(Error::DegreeMismatch { left: omega.degree(), right: n });
    }
    let mut out = HessPoly::zero(n);
    for (b, c) in omega.terms() {
        let rows: Vec<Vec<HessPoly<S>>> = b
            .indices()
            .map(|idx| {
                let k = idx / 2 + 1;
                (1..=n)
                    .map(|j| {
                        if idx % 2 == 0 {
                            if j == k {
                                HessPoly::constant(n, S::one())
                            } else {
                                HessPoly::zero(n)
                            }
                        } else {
                            HessPoly::var(n, k, j)
                        }
                    })
                    .collect()
            })
            .collect();
        out = out.add(&det_poly(&rows, n).scale(c));
    }
    Ok(out)
}

fn wedge_all<S: Field>(dim: usize, factors: &[Form<S>]) -> Form<S> {
    factors.iter().fold(Form::scalar(dim, S::one()), |acc, f| acc.wedge(f))
}

fn dq<S: Field>(dim: usize, k: usize) -> Form<S> {
    Form::basis(dim, q(k))
}

fn dp<S: Field>(dim: usize, k: usize) -> Form<S> {
    Form::basis(dim, p(k))
}

/// Monomial in `dq`/`dp` given by a word such as `"p1q2q3"`.
fn word<S: Field>(dim: usize, w: &str) -> Form<S> {
    let chars: Vec<char> = w.chars().collect();
    let factors: Vec<Form<S>> = chars
        .chunks(2)
        .map(|c| {
            let k = c[1].to_digit(10).unwrap() as usize;
            if c[0] == 'q' {
                dq(dim, k)
            } else {
                dp(dim, k)
            }
        })
        .collect();
    wedge_all(dim, &factors)
}

/// `Σ ± words`
fn words<S: Field>(dim: usize, terms: &[(i64, &str)]) -> Form<S> {
    terms.iter().fold(Form::zero(dim, dim / 2), |acc, (s, w)| &acc + &word(dim, w).scale(&S::from_i64(*s)))
}

/// `Im (dq1 + i dp1)∧…∧(dqn + i dpn)` on ℝ²ⁿ.
pub fn slag_form<S: Field>(n: usize) -> Form<S> {
    let dim = 2 * n;
    let factors: Vec<Form<S>> = (1..=n).map(|k| &dq(dim, k) + &dp(dim, k).scale(&S::i())).collect();
    let f = wedge_all(dim, &factors);
    let half_i = S::from_ratio(1, 2) / S::i();
    (&f - &f.conj()).scale(&half_i)
}

/// `ω_SLAG` on ℝ⁸.
pub fn omega_slag<S: Field>() -> Form<S> {
    slag_form(4)
}

/// One entry of the catalog.
#[derive(Clone, Debug, PartialEq)]
pub struct MongeAmpereEquation {
    pub name: &'static str,
    /// The PDE in words.
    pub display: &'static str,
    pub dimension: usize,
    /// The form as printed, when that is a well-defined n-form.
    pub printed: Option<Form<Cq>>,
    /// The effective form used everywhere else.
    pub form: Form<Cq>,
    /// Set when the stored form differs from the printed one beyond taking
    /// the effective part.
    pub reconstructed: bool,
}

impl MongeAmpereEquation {
    pub fn residual(&self) -> HessPoly<Cq> {
        symbol_reduce(&self.form).expect("catalog forms have middle degree")
    }

    pub fn form_as<S: Field>(&self) -> Form<S> {
        self.form.map(S::from_exact)
    }
}

/// Symmetric matrix of real second derivatives at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct HessianPoint {
    rows: Vec<Vec<f64>>,
}

impl HessianPoint {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            for j in 0..n {
                if rows[j].len() == n && (r[j] - rows[j][i]).abs() > 1e-12 * (1.0 + r[j].abs()) {
                    return Err(Error::Evaluation(format!("Hessian is not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(HessianPoint { rows })
    }

    pub fn zero(n: usize) -> Self {
        HessianPoint { rows: vec![vec![0.0; n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut h = Self::zero(n);
        for k in 0..n {
            h.rows[k][k] = 1.0;
        }
        h
    }

    /// Sets `f_ij` and `f_ji` (1-based).
    pub fn with(mut self, i: usize, j: usize, v: f64) -> Self {
        self.rows[i - 1][j - 1] = v;
        self.rows[j - 1][i - 1] = v;
        self
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn to_matrix(&self) -> Matrix<Cf> {
        Matrix::from_fn(self.dim(), self.dim(), |r, c| Cf::new(self.rows[r][c], 0.0))
    }
}

/// Numeric value of the equation's symbol at a Hessian.
pub fn residual_at(eq: &MongeAmpereEquation, h: &HessianPoint) -> Result<f64, Error> {
    if h.dim() != eq.dimension {
        return Err(Error::DimensionMismatch { expected: eq.dimension, found: h.dim() });
    }
    let poly = eq.residual();
    let pf = HessPoly { n: poly.n, terms: poly.terms.iter().map(|(m, c)| (m.clone(), c.to_c64())).collect() };
    Ok(pf.eval(&h.to_matrix()).re)
}

/// Effective part (Hodge-Lepage projection) of an n-form on ℝ²ⁿ.
pub fn effective_part<S: Field>(omega: &Form<S>) -> Form<S> {
    let sf = SymplecticForm::new(standard_omega(omega.dim())).expect("standard form is nondegenerate");
    hodge_lepage_decompose(omega, &sf).expect("middle degree").0
}

fn entry(
    name: &'static str,
    display: &'static str,
    printed: Option<Form<Cq>>,
    stored: Form<Cq>,
    reconstructed: bool,
) -> MongeAmpereEquation {
    let dimension = stored.dim() / 2;
    MongeAmpereEquation { name, display, dimension, printed, form: effective_part(&stored), reconstructed }
}

fn build_catalog() -> Vec<MongeAmpereEquation> {
    let mut v = Vec::new();
    // four variables
    let slag = omega_slag::<Cq>();
    v.push(entry("SLAG", "Δf − hess₁f − hess₂f − hess₃f − hess₄f = 0", Some(slag.clone()), slag, false));
    let hp = words(8, &[(1, "p1p2p3p4"), (-1, "q1q2q3q4")]);
    v.push(entry("H+", "hess(f) = 1", Some(hp.clone()), hp, false));
    let hm = words(8, &[(1, "p1p2p3p4"), (1, "q1q2q3q4")]);
    v.push(entry("H-", "hess(f) = −1", Some(hm.clone()), hm, false));
    let pi = words(8, &[(1, "q1q2p1p2"), (-1, "q1q2q3q4")]);
    v.push(entry("PI", "f13 f24 − f14 f23 = 1 (Plebanski I)", Some(pi.clone()), pi, false));
    let pii = words(8, &[(1, "q1q2q3p2"), (1, "q1q2q4p1"), (1, "q3q4p1p2")]);
    v.push(entry("PII", "f11 f22 − f12² + f24 − f13 = 0 (Plebanski II)", None, pii, true));
    let g_printed = words(8, &[(1, "q2q3q4p1"), (-1, "q1q3p1p3")]);
    let g = words(8, &[(-1, "q2q3q4p1"), (-1, "q1q3p1p3")]);
    v.push(entry("G", "f11 + f12 f34 − f14 f23 = 0 (Grant)", Some(g_printed), g, true));
    // two variables
    let hess2 = words(4, &[(1, "p1p2"), (-1, "q1q2")]);
    v.push(entry("hess2", "hess(f) = 1", Some(hess2.clone()), hess2, false));
    let lap2 = words(4, &[(1, "q1p2"), (-1, "q2p1")]);
    v.push(entry("laplace2", "Δf = 0", Some(lap2.clone()), lap2, false));
    let wave2 = words(4, &[(1, "q1p2"), (1, "q2p1")]);
    v.push(entry("wave2", "□f = 0", Some(wave2.clone()), wave2, false));
    let par2 = words(4, &[(1, "q1p2")]);
    v.push(entry("parabolic2", "∂²f/∂q1² = 0", Some(par2.clone()), par2, false));
    // three variables
    for (name, display, terms) in table2_rows() {
        let f = words(6, terms);
        v.push(entry(name, display, Some(f.clone()), f, false));
    }
    v
}

type Row = (&'static str, &'static str, &'static [(i64, &'static str)]);

fn table2_rows() -> [Row; 8] {
    [
        ("hess3", "hess(f) = 1", &[(1, "p1p2p3"), (-1, "q1q2q3")]),
        ("slag3", "Δf − hess(f) = 0", &[(1, "p1q2q3"), (1, "q1p2q3"), (1, "q1q2p3"), (-1, "p1p2p3")]),
        ("pslag3", "□f + hess(f) = 0", &[(1, "p1q2q3"), (1, "q1p2q3"), (-1, "q1q2p3"), (1, "p1p2p3")]),
        ("laplace3", "Δf = 0", &[(1, "p1q2q3"), (1, "q1p2q3"), (1, "q1q2p3")]),
        ("wave3", "□f = 0", &[(1, "p1q2q3"), (1, "q1p2q3"), (-1, "q1q2p3")]),
        ("laplace23", "Δ_{q2,q3} f = 0", &[(1, "q1p2q3"), (1, "q1q2p3")]),
        ("wave23", "□_{q2,q3} f = 0", &[(1, "q1p2q3"), (-1, "q1q2p3")]),
        ("parabolic3", "∂²f/∂q1² = 0", &[(1, "p1q2q3")]),
    ]
}

/// Names of the eight three-variable rows, in table order.
pub const TABLE2_NAMES: [&str; 8] = ["hess3", "slag3", "pslag3", "laplace3", "wave3", "laplace23", "wave23", "parabolic3"];

/// Names of the six four-variable forms, in table order.
pub const FOUR_D_NAMES: [&str; 6] = ["SLAG", "H+", "H-", "PI", "PII", "G"];

/// Every catalogued equation (built once).
pub fn catalog() -> &'static [MongeAmpereEquation] {
    static CATALOG: OnceLock<Vec<MongeAmpereEquation>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

/// Catalog name, or one of the aliases `slag`, `hess+`, `hess-`,
/// `plebanski1`, `plebanski2`, `grant` (case-insensitive).
pub fn lookup(name: &str) -> Result<&'static MongeAmpereEquation, Error> {
    let key = match name.to_ascii_lowercase().as_str() {
        "hess+" | "hessplus" | "hess1" => "H+",
        "hess-" | "hessminus" => "H-",
        "plebanski1" | "plebanskii" | "plebanski-i" => "PI",
        "plebanski2" | "plebanskiii" | "plebanski-ii" => "PII",
        "grant" => "G",
        _ => name,
    };
    catalog().iter().find(|e| e.name.eq_ignore_ascii_case(key)).ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// The PDE displays for the four-variable equations, as polynomials:
/// SLAG `Δf − Σ hess_i f`, Plebanski I `f13f24 − f14f23 − 1`,
/// Plebanski II `f11f22 − f12² + f24 − f13`, Grant `f11 + f12f34 − f14f23`,
/// and `hess f ∓ 1`.
pub fn displayed_symbol(name: &str) -> Option<HessPoly<Cq>> {
    let v = |i, j| HessPoly::<Cq>::var(4, i, j);
    let c = |k: i64| HessPoly::<Cq>::constant(4, Cq::from_i64(k));
    let hess = |idx: &[usize]| principal_minor(4, idx);
    Some(match name {
        "SLAG" => {
            let lap = (1..=4).fold(HessPoly::zero(4), |acc, k| acc.add(&v(k, k)));
            (1..=4).fold(lap, |acc, k| {
                let rest: Vec<usize> = (1..=4).filter(|&j| j != k).collect();
                acc.sub(&hess(&rest))
            })
        }
        "H+" => hess(&[1, 2, 3, 4]).sub(&c(1)),
        "H-" => hess(&[1, 2, 3, 4]).add(&c(1)),
        "PI" => v(1, 3).mul(&v(2, 4)).sub(&v(1, 4).mul(&v(2, 3))).sub(&c(1)),
        "PII" => v(1, 1).mul(&v(2, 2)).sub(&v(1, 2).mul(&v(1, 2))).add(&v(2, 4)).sub(&v(1, 3)),
        "G" => v(1, 1).add(&v(1, 2).mul(&v(3, 4))).sub(&v(1, 4).mul(&v(2, 3))),
        _ => return None,
    })
}

/// Determinant of the principal submatrix of the Hessian on `idx`.
pub fn principal_minor(n: usize, idx: &[usize]) -> HessPoly<Cq> {
    let rows: Vec<Vec<HessPoly<Cq>>> = idx.iter().map(|&i| idx.iter().map(|&j| HessPoly::var(n, i, j)).collect()).collect();
    det_poly(&rows, n)
}

/// Class of a tensor whose square is a multiple of the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareClass {
    /// `A² = −1` after normalization (complex type).
    MinusOne,
    /// `A² = +1` (product type).
    PlusOne,
    /// `A² = 0`.
    Zero,
    /// `A²` is not a multiple of the identity.
    Other,
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SquareClass::MinusOne => "A^2 = -1",
            SquareClass::PlusOne => "A^2 = 1",
            SquareClass::Zero => "A^2 = 0",
            SquareClass::Other => "A^2 not scalar",
        })
    }
}

fn square_class<S: Field>(a: &Matrix<S>) -> (Matrix<S>, SquareClass) {
    let sq = a.mul(a);
    let n = a.rows();
    let c = sq[(0, 0)].clone();
    let scalar = sq.sub(&Matrix::identity(n).scale(&c)).is_zero_within(1e-9);
    let class = if !scalar {
        SquareClass::Other
    } else if c.is_negligible(1e-9) {
        SquareClass::Zero
    } else if c.to_c64().re > 0.0 {
        SquareClass::PlusOne
    } else {
        SquareClass::MinusOne
    };
    (sq, class)
}

/// `ω∧ω = pf(ω) Ω∧Ω` for a 2-form on ℝ⁴.
pub fn pfaffian_2d<S: Field>(omega: &Form<S>) -> Result<S, Error> {
    if omega.dim() != 4 || omega.degree() != 2 {
        return Err(Error::DimensionMismatch { expected: 4, found: omega.dim() });
    }
    let big = standard_omega::<S>(4);
    Ok(omega.wedge(omega).top() / big.wedge(&big).top())
}

/// `A_ω` with `ω(·,·) = Ω(A_ω·,·)`, its square and the class of the square.
pub fn a_tensor_2d<S: Field>(omega: &Form<S>) -> Result<(Matrix<S>, Matrix<S>, SquareClass), Error> {
    if omega.dim() != 4 || omega.degree() != 2 {
        return Err(Error::DimensionMismatch { expected: 4, found: omega.dim() });
    }
    let w0 = matrix_of(&standard_omega::<S>(4));
    let a = matrix_of(omega).mul(&w0.inverse().ok_or(Error::Degenerate)?).transpose();
    let (sq, class) = square_class(&a);
    Ok((a, sq, class))
}

fn vector<S: Field>(dim: usize, a: usize) -> Polyvector<S> {
    Polyvector::monomial(dim, &[a], S::one())
}

/// Lychagin-Rubtsov metric `g(X,Y) vol = ι_Xω ∧ ι_Yω ∧ Ω` of an effective
/// 3-form on ℝ⁶, with `vol = dq1∧dq2∧dq3∧dp1∧dp2∧dp3` scaled by the size of
/// `Ω³`, and its exact signature.
pub fn lr_metric_3d<S: Field>(omega: &Form<S>) -> Result<(Matrix<S>, Signature), Error> {
    if omega.dim() != 6 || omega.degree() != 3 {
        return Err(Error::DimensionMismatch { expected: 6, found: omega.dim() });
    }
    let big = standard_omega::<S>(6);
    let vol = word::<S>(6, "q1q2q3p1p2p3").top() * S::from_i64(6);
    let contractions: Vec<Form<S>> = (0..6).map(|a| interior(&vector(6, a), omega)).collect::<Result<_, _>>()?;
    let g = Matrix::from_fn(6, 6, |a, b| contractions[a].wedge(&contractions[b]).wedge(&big).top() / vol.clone());
    let sig = crate::hermitian::signature(&g);
    Ok((g, sig))
}

/// Hitchin tensor of an effective 3-form on ℝ⁶.
#[derive(Clone, Debug, PartialEq)]
pub struct HitchinTensor<S> {
    /// `A_ω` from `g(A·,·) = Ω(·,·)`, absent when `g` is degenerate.
    pub a: Option<Matrix<S>>,
    /// `K_ω` from `ι_Xω∧ω = ι_{K X} vol`, defined for every 3-form.
    pub k: Matrix<S>,
    /// `K² = λ·1`.
    pub lambda: S,
    pub class: SquareClass,
    pub degenerate: bool,
}

pub fn hitchin_tensor_3d<S: Field>(omega: &Form<S>) -> Result<HitchinTensor<S>, Error> {
    let (g, _) = lr_metric_3d(omega)?;
    let w0 = matrix_of(&standard_omega::<S>(6));
    let full = Blade((1 << 6) - 1);
    let mut k = Matrix::zeros(6, 6);
    for a in 0..6 {
        let eta = interior(&vector(6, a), omega)?.wedge(omega);
        for b in 0..6 {
            let rest = Blade(full.0 & !(1 << b));
            let sign = if b % 2 == 0 { S::one() } else { -S::one() };
            k[(b, a)] = eta.coefficient(rest) * sign;
        }
    }
    let (ksq, kclass) = square_class(&k);
    let lambda = ksq[(0, 0)].clone();
    match g.inverse() {
        Some(gi) => {
            // g(Ax, y) = xᵗAᵗ g y = xᵗ W₀ y
            let a = w0.transpose().mul(&gi).transpose();
            let (_, class) = square_class(&a);
            Ok(HitchinTensor { a: Some(a), k, lambda, class, degenerate: false })
        }
        None => Ok(HitchinTensor { a: None, k, lambda, class: kclass, degenerate: true }),
    }
}

/// The nine simple complex equations and the sign variant of the last one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexModel {
    Phi11Sq0,
    Phi12Sq0,
    Phi11Sq1,
    Phi12Sq1,
    Phi11MinusPhi22,
    Phi11PlusPhi12,
    Phi11PlusPhi22,
    Phi11PlusPhi12Eq1,
    /// `φ12 + φ̄12 + |φ11|² = 0`
    MixedPlus,
    /// `φ12 + φ̄12 − |φ11|² = 0`
    MixedMinus,
}

impl ComplexModel {
    /// Table rows in order; the last row uses the `+|φ11|²` sign.
    pub const TABLE: [ComplexModel; 9] = [
        ComplexModel::Phi11Sq0,
        ComplexModel::Phi12Sq0,
        ComplexModel::Phi11Sq1,
        ComplexModel::Phi12Sq1,
        ComplexModel::Phi11MinusPhi22,
        ComplexModel::Phi11PlusPhi12,
        ComplexModel::Phi11PlusPhi22,
        ComplexModel::Phi11PlusPhi12Eq1,
        ComplexModel::MixedPlus,
    ];

    pub fn display(self) -> &'static str {
        match self {
            ComplexModel::Phi11Sq0 => "|φ11|² = 0",
            ComplexModel::Phi12Sq0 => "|φ12|² = 0",
            ComplexModel::Phi11Sq1 => "|φ11|² = 1",
            ComplexModel::Phi12Sq1 => "|φ12|² = 1",
            ComplexModel::Phi11MinusPhi22 => "|φ11|² − |φ22|² = 0",
            ComplexModel::Phi11PlusPhi12 => "|φ11|² + |φ12|² = 0",
            ComplexModel::Phi11PlusPhi22 => "|φ11|² + |φ22|² = 0",
            ComplexModel::Phi11PlusPhi12Eq1 => "|φ11|² + |φ12|² = 1",
            ComplexModel::MixedPlus => "φ12 + φ̄12 + |φ11|² = 0",
            ComplexModel::MixedMinus => "φ12 + φ̄12 − |φ11|² = 0",
        }
    }

    /// Hermitian coefficients `c_ab` on the standard basis of `Λ₀²⁰`: the
    /// model form is `2 Σ c_ab θ_a∧θ̄_b`. On the graph of `dφ` the basis
    /// restricts to `1, φ22, −φ11, hess φ, 2φ12` (times `dz1∧dz2`).
    pub fn coefficients(self) -> Vec<(usize, usize, Cq)> {
        let one = Cq::from_i64(1);
        let half = Cq::from_ratio(1, 2);
        let (p11, p12, p22, vol) = (2, 4, 1, 0);
        let mut c = Vec::new();
        match self {
            ComplexModel::Phi11Sq0 => c.push((p11, p11, one)),
            ComplexModel::Phi12Sq0 => c.push((p12, p12, half)),
            ComplexModel::Phi11Sq1 => c.extend([(p11, p11, one.clone()), (vol, vol, -one)]),
            ComplexModel::Phi12Sq1 => c.extend([(p12, p12, half), (vol, vol, -one)]),
            ComplexModel::Phi11MinusPhi22 => c.extend([(p11, p11, one.clone()), (p22, p22, -one)]),
            ComplexModel::Phi11PlusPhi12 => c.extend([(p11, p11, one), (p12, p12, half)]),
            ComplexModel::Phi11PlusPhi22 => c.extend([(p11, p11, one.clone()), (p22, p22, one)]),
            ComplexModel::Phi11PlusPhi12Eq1 => c.extend([(p11, p11, one.clone()), (p12, p12, half), (vol, vol, -one)]),
            ComplexModel::MixedPlus => c.extend([(p11, p11, one), (p12, vol, half.clone()), (vol, p12, half)]),
            ComplexModel::MixedMinus => c.extend([(p11, p11, -one), (p12, vol, half.clone()), (vol, p12, half)]),
        }
        c
    }

    /// Left-hand side at `(φ11, φ12, φ22)`, with `|φ12|²` counted for both
    /// `φ12` and `φ21`.
    pub fn lhs(self, phi11: Cf, phi12: Cf, phi22: Cf) -> f64 {
        let (a, b, d) = (phi11.norm_sqr(), 2.0 * phi12.norm_sqr(), phi22.norm_sqr());
        let mixed = 2.0 * phi12.re;
        match self {
            ComplexModel::Phi11Sq0 => a,
            ComplexModel::Phi12Sq0 => b,
            ComplexModel::Phi11Sq1 => a - 1.0,
            ComplexModel::Phi12Sq1 => b - 1.0,
            ComplexModel::Phi11MinusPhi22 => a - d,
            ComplexModel::Phi11PlusPhi12 => a + b,
            ComplexModel::Phi11PlusPhi22 => a + d,
            ComplexModel::Phi11PlusPhi12Eq1 => a + b - 1.0,
            ComplexModel::MixedPlus => mixed + a,
            ComplexModel::MixedMinus => mixed - a,
        }
    }

    /// Printed signature and `QQᵗ` spectrum.
    pub fn printed(self) -> (Signature, [f64; 5]) {
        let s = |p, n| Signature::new(p, n, 5 - p - n);
        match self {
            ComplexModel::Phi11Sq0 => (s(1, 0), [0.0; 5]),
            ComplexModel::Phi12Sq0 => (s(1, 0), [1.0, 0.0, 0.0, 0.0, 0.0]),
            ComplexModel::Phi11Sq1 => (s(1, 1), [0.0; 5]),
            ComplexModel::Phi12Sq1 => (s(1, 1), [1.0, 0.0, 0.0, 0.0, 0.0]),
            ComplexModel::Phi11MinusPhi22 => (s(1, 1), [-1.0, -1.0, 0.0, 0.0, 0.0]),
            ComplexModel::Phi11PlusPhi12 => (s(2, 0), [1.0, 0.0, 0.0, 0.0, 0.0]),
            ComplexModel::Phi11PlusPhi22 => (s(2, 0), [1.0, 1.0, 0.0, 0.0, 0.0]),
            ComplexModel::Phi11PlusPhi12Eq1 => (s(2, 1), [1.0, 0.0, 0.0, 0.0, 0.0]),
            ComplexModel::MixedPlus | ComplexModel::MixedMinus => (s(2, 1), [0.0; 5]),
        }
    }
}

/// The model form in the complex coordinates of a chart.
pub fn complex_model_form_complex<S: Field>(model: ComplexModel) -> Form<S> {
    let basis = EffectiveTwoZeroBasis::<S>::standard();
    let t = basis.forms();
    let two = S::from_i64(2);
    model.coefficients().into_iter().fold(Form::zero(8, 4), |acc, (a, b, c)| {
        &acc + &t[a].wedge(&bar_form(&t[b])).scale(&(S::from_exact(&c) * two.clone()))
    })
}

/// The real bieffective 4-form on ℝ⁸ of a model equation in a chart.
pub fn complex_model_form<S: Field>(model: ComplexModel, chart: &DarbouxChart<S>) -> Result<Form<S>, Error> {
    let f = chart.to_real(&complex_model_form_complex(model));
    if !f.is_real() && f.is_exact() {
        return Err(Error::Evaluation("model form is not real".into()));
    }
    let pair = chart.pair()?;
    if !pair.is_bieffective(&f, 1e-10) {
        return Err(Error::NotBieffective("Θ"));
    }
    Ok(f)
}

/// Pullback of a 4-form in complex coordinates to the graph of `dφ` at a
/// point with second derivatives `(φ11, φ12, φ22)`, as the coefficient of
/// `dz1∧dz2∧dz̄1∧dz̄2`.
pub fn graph_pullback<S: Field>(omega: &Form<S>, phi11: &S, phi12: &S, phi22: &S) -> S {
    // source coordinates: z1, z2, z̄1, z̄2
    let mut m = Matrix::zeros(8, 4);
    let rows = [
        [S::one(), S::zero()],
        [phi11.clone(), phi12.clone()],
        [S::zero(), S::one()],
        [phi12.clone(), phi22.clone()],
    ];
    for (r, row) in rows.iter().enumerate() {
        for c in 0..2 {
            m[(r, c)] = row[c].clone();
            m[(r + 4, c + 2)] = row[c].conj();
        }
    }
    pullback(&LinearMap::new(m), omega).expect("dimension 8").top()
}
