//! Lefschetz-type operators of a symplectic form and of a pair `(Ω₁, Ω₂)`.
//!
//! `⊤θ = θ ∧ Ω` and `⊥θ = ι_X θ`, with `X` the bivector dual to `Ω`, scaled
//! so that `[⊥, ⊤] = (n - k)` on k-forms (`n` = half the real dimension).

use std::collections::BTreeMap;

use crate::error::Error;
use crate::exterior::{interior, Blade, Form, Polyvector};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// `Ω = Σ dq_k ∧ dp_k` on ℝ^dim.
pub fn standard_omega<S: Field>(dim: usize) -> Form<S> {
    (0..dim / 2).fold(Form::zero(dim, 2), |acc, k| &acc + &Form::monomial(dim, &[2 * k, 2 * k + 1], S::one()))
}

/// Antisymmetric matrix `W_ab = ω(e_a, e_b)` of a 2-form.
pub fn matrix_of<S: Field>(omega: &Form<S>) -> Matrix<S> {
    let n = omega.dim();
    let mut w = Matrix::zeros(n, n);
    for (b, c) in omega.terms() {
        let idx: Vec<usize> = b.indices().collect();
        w[(idx[0], idx[1])] = c.clone();
        w[(idx[1], idx[0])] = -c.clone();
    }
    w
}

/// The 2-form with antisymmetric matrix `w`.
pub fn form_of_matrix<S: Field>(w: &Matrix<S>) -> Form<S> {
    let n = w.rows();
    let mut terms = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            terms.push((Blade((1 << a) | (1 << b)), w[(a, b)].clone()));
        }
    }
    Form::from_terms(n, 2, terms)
}

/// A nondegenerate 2-form together with its dual bivector.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticForm<S> {
    omega: Form<S>,
    dual: Polyvector<S>,
}

impl<S: Field> SymplecticForm<S> {
    pub fn new(omega: Form<S>) -> Result<Self, Error> {
        if omega.degree() != 2 {
            return Err(Error::DegreeMismatch { left: omega.degree(), right: 2 });
        }
        let w = matrix_of(&omega);
        let inv = w.inverse().ok_or(Error::Degenerate)?;
        let n = omega.dim();
        let mut terms = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                terms.push((Blade((1 << a) | (1 << b)), -inv[(a, b)].clone()));
            }
        }
        let raw = Polyvector::from_terms(n, 2, terms);
        // pin the scale by [⊥, ⊤](1) = n/2
        let s = interior(&raw, &omega)?.scalar_value();
        let dual = raw.scale(&(S::from_i64(n as i64 / 2) / s));
        Ok(SymplecticForm { omega, dual })
    }

    /// Pairs a form with an arbitrary bivector, skipping all checks.
    pub fn with_dual(omega: Form<S>, dual: Polyvector<S>) -> Self {
        SymplecticForm { omega, dual }
    }

    pub fn omega(&self) -> &Form<S> {
        &self.omega
    }

    pub fn dual(&self) -> &Polyvector<S> {
        &self.dual
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn top(&self, theta: &Form<S>) -> Form<S> {
        theta.wedge(&self.omega)
    }

    pub fn perp(&self, theta: &Form<S>) -> Form<S> {
        if theta.degree() < 2 {
            return Form::zero(theta.dim(), 0);
        }
        interior(&self.dual, theta).expect("shapes checked")
    }

    pub fn is_effective(&self, theta: &Form<S>, tol: f64) -> bool {
        self.perp(theta).is_zero_within(tol)
    }
}

/// Hodge-Lepage decomposition `ω = ω₀ + ω₁ ∧ Ω` of an n-form on ℝ^{2n}, with
/// `ω₀` effective. `ω₁` is unique here since `∧Ω` is injective below the
/// middle degree; it is found by solving `ω₁ ∧ Ω² = ω ∧ Ω`.
pub fn hodge_lepage_decompose<S: Field>(omega: &Form<S>, sf: &SymplecticForm<S>) -> Result<(Form<S>, Form<S>), Error> {
    let dim = omega.dim();
    let n = dim / 2;
    if omega.degree() != n {
        return Err(Error::DegreeMismatch { left: omega.degree(), right: n });
    }
    if n < 2 {
        return Ok((omega.clone(), Form::zero(dim, 0)));
    }
    let sq = sf.omega().wedge(sf.omega());
    let src = Blade::all_of_grade(dim, n - 2);
    let cols: Vec<Vec<S>> = src.iter().map(|b| Form::term(dim, *b, S::one()).wedge(&sq).to_vector()).collect();
    let a = Matrix::from_fn(cols[0].len(), cols.len(), |r, c| cols[c][r].clone());
    let rhs_vec = omega.wedge(sf.omega()).to_vector();
    let b = Matrix::from_fn(rhs_vec.len(), 1, |r, _| rhs_vec[r].clone());
    let x = a.solve(&b).ok_or_else(|| Error::Evaluation("Lefschetz system inconsistent".into()))?;
    let omega1 = Form::from_vector(dim, n - 2, &x.column(0));
    let omega0 = omega - &omega1.wedge(sf.omega());
    Ok((omega0, omega1))
}

/// A complex symplectic form `Θ = Ω₁ + iΩ₂` seen through its real and
/// imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticPair<S> {
    first: SymplecticForm<S>,
    second: SymplecticForm<S>,
    half_dim: usize,
}

impl<S: Field> SymplecticPair<S> {
    pub fn new(omega1: Form<S>, omega2: Form<S>) -> Result<Self, Error> {
        let pair = Self::from_parts(SymplecticForm::new(omega1)?, SymplecticForm::new(omega2)?);
        let theta = pair.theta();
        let t2 = theta.wedge(&theta);
        if t2.wedge(&t2.conj()).is_zero_within(1e-12) {
            return Err(Error::Degenerate);
        }
        Ok(pair)
    }

    /// No validation; used to build deliberately broken pairs.
    pub fn from_parts(first: SymplecticForm<S>, second: SymplecticForm<S>) -> Self {
        let half_dim = first.dim() / 4;
        SymplecticPair { first, second, half_dim }
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }

    pub fn part(&self, j: usize) -> &SymplecticForm<S> {
        match j {
            1 => &self.first,
            2 => &self.second,
            _ => panic!("pair index must be 1 or 2"),
        }
    }

    pub fn omega(&self, j: usize) -> &Form<S> {
        self.part(j).omega()
    }

    /// `Θ = Ω₁ + iΩ₂`
    pub fn theta(&self) -> Form<S> {
        self.omega(1) + &self.omega(2).scale(&S::i())
    }

    pub fn top(&self, j: usize, theta: &Form<S>) -> Form<S> {
        self.part(j).top(theta)
    }

    pub fn perp(&self, j: usize, theta: &Form<S>) -> Form<S> {
        self.part(j).perp(theta)
    }

    /// `H = [⊥₁, ⊤₁]`, computed literally.
    pub fn operator_h(&self, theta: &Form<S>) -> Form<S> {
        self.perp(1, &self.top(1, theta)) - self.top_after_perp(1, 1, theta)
    }

    /// `M = [⊥₂, ⊤₁]`, computed literally.
    pub fn operator_m(&self, theta: &Form<S>) -> Form<S> {
        self.perp(2, &self.top(1, theta)) - self.top_after_perp(1, 2, theta)
    }

    fn top_after_perp(&self, t: usize, p: usize, theta: &Form<S>) -> Form<S> {
        if theta.degree() < 2 {
            return Form::zero(theta.dim(), theta.degree());
        }
        self.top(t, &self.perp(p, theta))
    }

    /// `E₁ = ½(⊥₁ + i⊥₂)`
    pub fn e1(&self, theta: &Form<S>) -> Form<S> {
        let half = S::from_ratio(1, 2);
        (self.perp(1, theta) + self.perp(2, theta).scale(&S::i())).scale(&half)
    }

    /// `E₂ = ½(⊥₁ - i⊥₂)`
    pub fn e2(&self, theta: &Form<S>) -> Form<S> {
        let half = S::from_ratio(1, 2);
        (self.perp(1, theta) - self.perp(2, theta).scale(&S::i())).scale(&half)
    }

    pub fn is_effective(&self, theta: &Form<S>, j: usize, tol: f64) -> bool {
        self.part(j).is_effective(theta, tol)
    }

    pub fn is_bieffective(&self, theta: &Form<S>, tol: f64) -> bool {
        self.top(1, theta).is_zero_within(tol) && self.top(2, theta).is_zero_within(tol)
    }
}

/// A linear operator on `Λ*(ℝ^d)` recorded by its values on basis blades.
/// Every image has degree `grade + shift`.
#[derive(Clone, Debug)]
pub struct FormOperator<S> {
    dim: usize,
    shift: isize,
    images: Vec<Form<S>>,
}

impl<S: Field> FormOperator<S> {
    pub fn build(dim: usize, shift: isize, f: impl Fn(&Form<S>) -> Form<S>) -> Self {
        let images = (0u32..(1 << dim))
            .map(|b| {
                let blade = Blade(b as u16);
                let img = f(&Form::term(dim, blade, S::one()));
                if img.is_empty() {
                    Form::zero(dim, 0)
                } else {
                    img
                }
            })
            .collect();
        FormOperator { dim, shift, images }
    }

    /// `c · id` on k-forms, with `c` depending on k.
    pub fn graded_identity(dim: usize, c: impl Fn(usize) -> S) -> Self {
        Self::build(dim, 0, |f| f.scale(&c(f.degree())))
    }

    pub fn zero(dim: usize, shift: isize) -> Self {
        Self::build(dim, shift, |_| Form::zero(dim, 0))
    }

    pub fn shift(&self) -> isize {
        self.shift
    }

    pub fn image(&self, b: Blade) -> &Form<S> {
        &self.images[b.0 as usize]
    }

    pub fn apply(&self, f: &Form<S>) -> Form<S> {
        let degree = f.degree() as isize + self.shift;
        let mut acc: BTreeMap<Blade, S> = BTreeMap::new();
        for (b, c) in f.terms() {
            for (b2, c2) in self.images[b.0 as usize].terms() {
                let e = acc.entry(*b2).or_insert_with(S::zero);
                *e = e.clone() + c.clone() * c2.clone();
            }
        }
        if degree < 0 || degree as usize > self.dim {
            debug_assert!(acc.values().all(|c| c.is_zero()));
            return Form::zero(self.dim, 0);
        }
        Form::from_terms(self.dim, degree as usize, acc)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        let images = other.images.iter().map(|img| self.apply(img)).collect();
        FormOperator { dim: self.dim, shift: self.shift + other.shift, images }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(self.shift, other.shift, "operators of different degree");
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| {
                let terms = a.terms().map(|(k, c)| (*k, c.clone())).chain(b.terms().map(|(k, c)| (*k, c.scale_i64(sign))));
                let deg = if a.is_empty() { b.degree() } else { a.degree() };
                let mut acc: BTreeMap<Blade, S> = BTreeMap::new();
                for (k, c) in terms {
                    let e = acc.entry(k).or_insert_with(S::zero);
                    *e = e.clone() + c;
                }
                Form::from_terms(self.dim, deg, acc)
            })
            .collect();
        FormOperator { dim: self.dim, shift: self.shift, images }
    }

    pub fn scale(&self, s: &S) -> Self {
        let images = self.images.iter().map(|f| f.scale(s)).collect();
        FormOperator { dim: self.dim, shift: self.shift, images }
    }

    /// Matrix of the restriction to k-forms (columns = images of blades).
    pub fn restricted_matrix(&self, k: usize) -> Matrix<S> {
        let src = Blade::all_of_grade(self.dim, k);
        let target = k as isize + self.shift;
        let rows = if target < 0 || target as usize > self.dim { 0 } else { Blade::all_of_grade(self.dim, target as usize).len() };
        Matrix::from_fn(rows, src.len(), |r, c| {
            let tb = Blade::all_of_grade(self.dim, target as usize)[r];
            self.images[src[c].0 as usize].coefficient(tb)
        })
    }
}

/// The operators of a pair as explicit linear maps.
pub struct PairOperators<S> {
    pub top1: FormOperator<S>,
    pub top2: FormOperator<S>,
    pub perp1: FormOperator<S>,
    pub perp2: FormOperator<S>,
    /// `(2m - k) id`, relation c)
    pub h: FormOperator<S>,
    /// `[⊥₂, ⊤₁]`
    pub m: FormOperator<S>,
}

impl<S: Field> PairOperators<S> {
    pub fn new(pair: &SymplecticPair<S>) -> Self {
        let dim = pair.dim();
        let top1 = FormOperator::build(dim, 2, |f| pair.top(1, f));
        let top2 = FormOperator::build(dim, 2, |f| pair.top(2, f));
        let perp1 = FormOperator::build(dim, -2, |f| pair.perp(1, f));
        let perp2 = FormOperator::build(dim, -2, |f| pair.perp(2, f));
        let two_m = 2 * pair.half_dim() as i64;
        let h = FormOperator::graded_identity(dim, |k| S::from_i64(two_m - k as i64));
        let m = perp2.commutator(&top1);
        PairOperators { top1, top2, perp1, perp2, h, m }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VbViolation {
    pub identity: &'static str,
    /// Basis form on which the identity first fails.
    pub blade: Blade,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VbReport {
    pub checked: usize,
    /// Names of the identities, in checking order.
    pub identities: Vec<&'static str>,
    pub violations: Vec<VbViolation>,
}

impl VbReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the fifteen commutation relations on every basis form.
pub fn verify_vb_relations<S: Field>(pair: &SymplecticPair<S>) -> VbReport {
    verify_vb_relations_with(&PairOperators::new(pair), 0.0)
}

pub fn verify_vb_relations_with<S: Field>(ops: &PairOperators<S>, tol: f64) -> VbReport {
    let PairOperators { top1, top2, perp1, perp2, h, m } = ops;
    let two = S::from_i64(2);
    let neg_two = S::from_i64(-2);
    let zero_down = FormOperator::zero(h.dim, -4);
    let zero_up = FormOperator::zero(h.dim, 4);
    let checks: Vec<(&'static str, FormOperator<S>, FormOperator<S>)> = vec![
        ("[⊥1,⊤1] = H", perp1.commutator(top1), h.clone()),
        ("[⊥2,⊤2] = H", perp2.commutator(top2), h.clone()),
        ("[⊥1,⊤2] = -M", perp1.commutator(top2), m.scale(&S::from_i64(-1))),
        ("[⊥2,⊤1] = M", perp2.commutator(top1), m.clone()),
        ("[⊥1,⊥2] = 0", perp1.commutator(perp2), zero_down),
        ("[⊤1,⊤2] = 0", top1.commutator(top2), zero_up),
        ("[⊥1,H] = -2⊥1", perp1.commutator(h), perp1.scale(&neg_two)),
        ("[⊥2,H] = -2⊥2", perp2.commutator(h), perp2.scale(&neg_two)),
        ("[⊤1,H] = 2⊤1", top1.commutator(h), top1.scale(&two)),
        ("[⊤2,H] = 2⊤2", top2.commutator(h), top2.scale(&two)),
        ("[⊥1,M] = -2⊥2", perp1.commutator(m), perp2.scale(&neg_two)),
        ("[⊥2,M] = 2⊥1", perp2.commutator(m), perp1.scale(&two)),
        ("[⊤1,M] = -2⊤2", top1.commutator(m), top2.scale(&neg_two)),
        ("[⊤2,M] = 2⊤1", top2.commutator(m), top1.scale(&two)),
        ("[H,M] = 0", h.commutator(m), FormOperator::zero(h.dim, 0)),
    ];
    let mut violations = Vec::new();
    for (name, lhs, rhs) in &checks {
        let diff = lhs.sub(rhs);
        if let Some(b) = Blade::all(h.dim).into_iter().find(|b| !diff.image(*b).is_zero_within(tol)) {
            violations.push(VbViolation { identity: name, blade: b });
        }
    }
    VbReport { checked: checks.len(), identities: checks.iter().map(|c| c.0).collect(), violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{p, q};
    use crate::Cq;

    fn standard(n: usize) -> Form<Cq> {
        standard_omega(2 * n)
    }

    #[test]
    fn normalization() {
        let sf = SymplecticForm::new(standard(4)).unwrap();
        assert_eq!(sf.perp(sf.omega()).scalar_value(), Cq::from_i64(4));
        let dq1dp1 = Form::monomial(8, &[q(1), p(1)], Cq::from_i64(1));
        assert_eq!(sf.perp(&dq1dp1).scalar_value(), Cq::from_i64(1));
        let sq = sf.omega().wedge(sf.omega());
        assert_eq!(sf.perp(&sf.perp(&sq)).scalar_value(), Cq::from_i64(24));
    }

    #[test]
    fn degenerate_rejected() {
        let f = Form::<Cq>::monomial(4, &[q(1), p(1)], Cq::from_i64(1));
        assert_eq!(SymplecticForm::new(f), Err(Error::Degenerate));
    }

    #[test]
    fn hodge_lepage_on_r4() {
        let sf = SymplecticForm::new(standard(2)).unwrap();
        let w = Form::monomial(4, &[q(1), p(1)], Cq::from_i64(3));
        let (w0, w1) = hodge_lepage_decompose(&w, &sf).unwrap();
        assert!(sf.is_effective(&w0, 0.0));
        assert_eq!(&w0 + &w1.wedge(sf.omega()), w);
        assert_eq!(w1.scalar_value(), Cq::from_ratio(3, 2));
    }

    #[test]
    fn operator_restriction_matrix() {
        let sf = SymplecticForm::new(standard(2)).unwrap();
        let top = FormOperator::build(4, 2, |f| sf.top(f));
        let m = top.restricted_matrix(0);
        assert_eq!((m.rows(), m.cols()), (6, 1));
        assert_eq!(m.rank(), 1);
    }
}
