//! Constant-coefficient forms and polyvectors on ℝ^{2n}.
//!
//! Coordinates are interleaved `(q1, p1, q2, p2, ...)`, index `2k` is `q_{k+1}`
//! and `2k+1` is `p_{k+1}`. A basis k-form is a [`Blade`], a bitmask of the
//! covectors it wedges in increasing order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, Field};

/// Increasing index set, stored as a bitmask (dimension at most 16).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(pub u16);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_indices(idx: &[usize]) -> Option<(i8, Blade)> {
        let mut bits = 0u16;
        let mut sign = 1i8;
        for &i in idx {
            let b = 1u16 << i;
            if bits & b != 0 {
                return None;
            }
            // moving e_i left past every larger index already present
            if (bits >> (i + 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= b;
        }
        Some((sign, Blade(bits)))
    }

    pub fn single(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |i| self.0 & (1 << i) != 0)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    /// Sign of `e_a ∧ e_b` relative to `e_{a∪b}`, zero when they overlap.
    pub fn merge_sign(a: Blade, b: Blade) -> i8 {
        if a.0 & b.0 != 0 {
            return 0;
        }
        let mut swaps = 0;
        for j in b.indices() {
            swaps += (a.0 >> (j + 1)).count_ones();
        }
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All blades of the given grade in a space of dimension `dim`, in order.
    pub fn all_of_grade(dim: usize, grade: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = (0u32..(1 << dim))
            .map(|b| Blade(b as u16))
            .filter(|b| b.grade() == grade)
            .collect();
        out.sort();
        out
    }

    pub fn all(dim: usize) -> Vec<Blade> {
        (0..=dim).flat_map(|g| Blade::all_of_grade(dim, g)).collect()
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Label of coordinate `i` in the interleaved basis.
pub fn coordinate_label(i: usize) -> String {
    format!("{}{}", if i % 2 == 0 { "q" } else { "p" }, i / 2 + 1)
}

/// Index of `q_k` (1-based `k`).
pub const fn q(k: usize) -> usize {
    2 * (k - 1)
}

/// Index of `p_k` (1-based `k`).
pub const fn p(k: usize) -> usize {
    2 * (k - 1) + 1
}

fn add_term<S: Field>(terms: &mut BTreeMap<Blade, S>, b: Blade, c: S) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&b) {
        Some(x) => {
            let v = x.clone() + c;
            if v.is_zero() {
                terms.remove(&b);
            } else {
                *x = v;
            }
        }
        None => {
            terms.insert(b, c);
        }
    }
}

/// A homogeneous k-form with constant coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<S> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Blade, S>,
}

impl<S: Field> Form<S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= 16 && degree <= dim, "bad shape");
        Form { dim, degree, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: S) -> Self {
        Self::term(dim, Blade::EMPTY, c)
    }

    pub fn term(dim: usize, blade: Blade, c: S) -> Self {
        let mut f = Self::zero(dim, blade.grade());
        add_term(&mut f.terms, blade, c);
        f
    }

    /// `c · dx_{i1} ∧ ... ∧ dx_{ik}` with indices in any order.
    pub fn monomial(dim: usize, idx: &[usize], c: S) -> Self {
        match Blade::from_indices(idx) {
            Some((s, b)) => Self::term(dim, b, c.scale_i64(s as i64)),
            None => Self::zero(dim, idx.len()),
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        Self::term(dim, Blade::single(i), S::one())
    }

    /// The 1-form `Σ row[j] dx_j`.
    pub fn one_form(row: &[S]) -> Self {
        let mut f = Self::zero(row.len(), 1);
        for (j, c) in row.iter().enumerate() {
            add_term(&mut f.terms, Blade::single(j), c.clone());
        }
        f
    }

    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (Blade, S)>) -> Self {
        let mut f = Self::zero(dim, degree);
        for (b, c) in terms {
            assert_eq!(b.grade(), degree, "term of wrong degree");
            add_term(&mut f.terms, b, c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: Blade) -> S {
        self.terms.get(&b).cloned().unwrap_or_else(S::zero)
    }

    /// Value of a 0-form.
    pub fn scalar_value(&self) -> S {
        self.coefficient(Blade::EMPTY)
    }

    /// Coefficient of the top form `dx_1 ∧ ... ∧ dx_dim`.
    pub fn top(&self) -> S {
        self.coefficient(Blade(((1u32 << self.dim) - 1) as u16))
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.is_negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).fold(0.0, f64::max)
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(|c| c.is_exact())
    }

    /// Drops coefficients with modulus at most `tol`.
    pub fn snap(&self, tol: f64) -> Self {
        let mut f = self.clone();
        f.terms.retain(|_, c| !c.is_negligible(tol));
        f
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        Form::from_terms(self.dim, self.degree, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        // a zero form carries a nominal degree only
        if self.is_empty() {
            return Ok(other.clone());
        }
        if self.degree != other.degree && !other.is_empty() {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            add_term(&mut out.terms, *b, c.clone());
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "forms on different spaces");
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Self::zero(self.dim, self.dim.min(degree));
        }
        let mut out = Self::zero(self.dim, degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let s = Blade::merge_sign(*a, *b);
                if s != 0 {
                    add_term(&mut out.terms, Blade(a.0 | b.0), (x.clone() * y.clone()).scale_i64(s as i64));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::scalar(self.dim, S::one()), |acc, _| acc.wedge(self))
    }

    /// Evaluation on vectors (columns of `frame`, `dim × degree`).
    pub fn evaluate(&self, frame: &Matrix<S>) -> S {
        assert_eq!(frame.rows(), self.dim);
        assert_eq!(frame.cols(), self.degree);
        let mut total = S::zero();
        for (b, c) in &self.terms {
            let rows: Vec<usize> = b.indices().collect();
            let minor = Matrix::from_fn(self.degree, self.degree, |r, k| frame[(rows[r], k)].clone());
            total = total + c.clone() * minor.determinant();
        }
        total
    }

    /// Coefficient vector over the blades of this degree, in blade order.
    pub fn to_vector(&self) -> Vec<S> {
        Blade::all_of_grade(self.dim, self.degree).into_iter().map(|b| self.coefficient(b)).collect()
    }

    pub fn from_vector(dim: usize, degree: usize, v: &[S]) -> Self {
        Self::from_terms(dim, degree, Blade::all_of_grade(dim, degree).into_iter().zip(v.iter().cloned()))
    }

    /// Whether every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.conj() == *c)
    }
}

impl<S: Field> Add for &Form<S> {
    type Output = Form<S>;
    /// Panics when degrees differ; see [`Form::checked_add`].
    fn add(self, rhs: &Form<S>) -> Form<S> {
        self.checked_add(rhs).expect("adding forms of different degree")
    }
}

impl<S: Field> Sub for &Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: &Form<S>) -> Form<S> {
        self + &(-rhs)
    }
}

impl<S: Field> Neg for &Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        self.map(|c| -c.clone())
    }
}

impl<S: Field> Add for Form<S> {
    type Output = Form<S>;
    fn add(self, rhs: Form<S>) -> Form<S> {
        &self + &rhs
    }
}

impl<S: Field> Sub for Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: Form<S>) -> Form<S> {
        &self - &rhs
    }
}

impl<S: Field> Neg for Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        -&self
    }
}

/// Wedge product.
impl<S: Field> Mul for &Form<S> {
    type Output = Form<S>;
    fn mul(self, rhs: &Form<S>) -> Form<S> {
        self.wedge(rhs)
    }
}

impl<S: Field> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let text = format_scalar(c);
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if !rest.starts_with('(') => (true, rest.to_string()),
                _ => (false, text),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let blade = b.indices().map(|i| format!("d{}", coordinate_label(i))).collect::<Vec<_>>().join("^");
            match (body.as_str(), blade.is_empty()) {
                (_, true) => write!(f, "{body}")?,
                ("1", false) => write!(f, "{blade}")?,
                _ => write!(f, "{body}*{blade}")?,
            }
        }
        Ok(())
    }
}

/// A homogeneous k-vector, stored like a [`Form`].
#[derive(Clone, Debug, PartialEq)]
pub struct Polyvector<S> {
    inner: Form<S>,
}

impl<S: Field> Polyvector<S> {
    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (Blade, S)>) -> Self {
        Polyvector { inner: Form::from_terms(dim, degree, terms) }
    }

    pub fn monomial(dim: usize, idx: &[usize], c: S) -> Self {
        Polyvector { inner: Form::monomial(dim, idx, c) }
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.inner.terms()
    }

    pub fn scale(&self, s: &S) -> Self {
        Polyvector { inner: self.inner.scale(s) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Polyvector { inner: &self.inner + &other.inner }
    }
}

/// Contraction `ι_X θ`, with `ι_{e_a ∧ e_b} = ι_{e_b} ∘ ι_{e_a}` so that
/// `ι_{e_A}(e^A) = 1`.
pub fn interior<S: Field>(x: &Polyvector<S>, theta: &Form<S>) -> Result<Form<S>, Error> {
    if x.dim() != theta.dim {
        return Err(Error::DimensionMismatch { expected: theta.dim, found: x.dim() });
    }
    if x.degree() > theta.degree {
        return Err(Error::DegreeMismatch { left: x.degree(), right: theta.degree });
    }
    let mut out = Form::zero(theta.dim, theta.degree - x.degree());
    for (a, xa) in x.terms() {
        for (b, c) in &theta.terms {
            if !a.is_subset(*b) {
                continue;
            }
            let rest = Blade(b.0 & !a.0);
            let s = Blade::merge_sign(*a, rest);
            add_term(&mut out.terms, rest, (xa.clone() * c.clone()).scale_i64(s as i64));
        }
    }
    Ok(out)
}

/// Linear map between coordinate spaces, `rows = target dim`, `cols = source dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<S> {
    pub matrix: Matrix<S>,
}

impl<S: Field> LinearMap<S> {
    pub fn new(matrix: Matrix<S>) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(n) }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        LinearMap { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn inverse(&self) -> Option<Self> {
        self.matrix.inverse().map(LinearMap::new)
    }

    /// Pullback of the row functional `i` (the 1-form `dy_i ∘ L`).
    pub fn row_form(&self, i: usize) -> Form<S> {
        Form::one_form(self.matrix.row(i))
    }
}

/// `L^* θ` where `θ` lives on the target of `L`.
pub fn pullback<S: Field>(l: &LinearMap<S>, theta: &Form<S>) -> Result<Form<S>, Error> {
    if l.target_dim() != theta.dim {
        return Err(Error::DimensionMismatch { expected: theta.dim, found: l.target_dim() });
    }
    let n = l.source_dim();
    let rows: Vec<Form<S>> = (0..l.target_dim()).map(|i| l.row_form(i)).collect();
    let mut out = Form::zero(n, theta.degree);
    if theta.degree > n {
        return Ok(out);
    }
    for (b, c) in &theta.terms {
        let img = b.indices().fold(Form::scalar(n, c.clone()), |acc, i| acc.wedge(&rows[i]));
        out = &out + &img;
    }
    Ok(out)
}
