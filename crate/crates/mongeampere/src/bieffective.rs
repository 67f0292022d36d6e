//! Bieffective decomposition of 4-forms on ℝ⁸ with respect to a pair
//! `(Ω₁, Ω₂)`:
//!
//! `ω = ω₀ + ω₁∧Ω₁ + ω₂∧Ω₂ + w11·Ω₁² + w12·Ω₁∧Ω₂ + w22·Ω₂²`
//!
//! with `ω₀∧Ω₁ = ω₀∧Ω₂ = 0`.

use crate::error::Error;
use crate::exterior::{Blade, Form};
use crate::linalg::Matrix;
use crate::scalar::Field;
use crate::symplectic::SymplecticPair;

fn check_degree<S: Field>(omega: &Form<S>, pair: &SymplecticPair<S>) -> Result<(), Error> {
    if omega.dim() != pair.dim() {
        return Err(Error::DimensionMismatch { expected: pair.dim(), found: omega.dim() });
    }
    if omega.degree() != 4 || pair.dim() != 8 {
        return Err(Error::DegreeMismatch { left: omega.degree(), right: 4 });
    }
    Ok(())
}

/// `(w11, w12, w22)` from `⊥₁²ω`, `⊥₂²ω` and `⊥₁⊥₂ω`.
pub fn scalar_components<S: Field>(omega: &Form<S>, pair: &SymplecticPair<S>) -> Result<(S, S, S), Error> {
    check_degree(omega, pair)?;
    let p1 = pair.perp(1, omega);
    let p2 = pair.perp(2, omega);
    let p11 = pair.perp(1, &p1).scalar_value();
    let p22 = pair.perp(2, &p2).scalar_value();
    let p12 = pair.perp(1, &p2).scalar_value();
    let three = S::from_i64(3);
    let w11 = (three.clone() * p11.clone() - p22.clone()) / S::from_i64(64);
    let w22 = (three * p22 - p11) / S::from_i64(64);
    let w12 = p12 / S::from_i64(8);
    Ok((w11, w12, w22))
}

fn scalar_part<S: Field>(pair: &SymplecticPair<S>, w: &(S, S, S)) -> Form<S> {
    let (o1, o2) = (pair.omega(1), pair.omega(2));
    o1.wedge(o1).scale(&w.0) + o1.wedge(o2).scale(&w.1) + o2.wedge(o2).scale(&w.2)
}

/// The bieffective part by the closed formula
/// `ω₀ = θ − ¼{⊤₂⊥₂θ + ⊤₁⊥₁θ − ¼M(Mθ − ⊤₁⊥₂θ + ⊤₂⊥₁θ)}`,
/// where `θ` is `ω` minus its `Ω_i∧Ω_j` part and `M = [⊥₂, ⊤₁]`.
pub fn bieffective_part<S: Field>(omega: &Form<S>, pair: &SymplecticPair<S>) -> Result<Form<S>, Error> {
    let w = scalar_components(omega, pair)?;
    let theta = omega - &scalar_part(pair, &w);
    let t = |j: usize, f: &Form<S>| pair.top(j, f);
    let p = |j: usize, f: &Form<S>| pair.perp(j, f);
    let m_theta = pair.operator_m(&theta);
    let inner = &(&m_theta - &t(1, &p(2, &theta))) + &t(2, &p(1, &theta));
    let quarter = S::from_ratio(1, 4);
    let brace = &(&t(2, &p(2, &theta)) + &t(1, &p(1, &theta))) - &pair.operator_m(&inner).scale(&quarter);
    Ok(&theta - &brace.scale(&quarter))
}

fn lefschetz_matrix<S: Field>(pair: &SymplecticPair<S>) -> Matrix<S> {
    // columns: x1 (28 blades) then x2; rows: (x1∧Ω₁ + x2∧Ω₂)∧Ω_j for j = 1, 2
    let src = Blade::all_of_grade(8, 2);
    let mut cols = Vec::new();
    for k in 1..=2 {
        for b in &src {
            let img = Form::term(8, *b, S::one()).wedge(pair.omega(k));
            let mut v = img.wedge(pair.omega(1)).to_vector();
            v.extend(img.wedge(pair.omega(2)).to_vector());
            cols.push(v);
        }
    }
    Matrix::from_fn(cols[0].len(), cols.len(), |r, c| cols[c][r].clone())
}

fn split<S: Field>(x: &[S]) -> (Form<S>, Form<S>) {
    (Form::from_vector(8, 2, &x[..28]), Form::from_vector(8, 2, &x[28..]))
}

/// Independent computation of `ω₀`: solve
/// `(ω − x₁∧Ω₁ − x₂∧Ω₂)∧Ω_j = 0` for 2-forms `x₁, x₂` and return the
/// residual. Fails if two solutions would give different residuals.
pub fn bieffective_oracle<S: Field>(omega: &Form<S>, pair: &SymplecticPair<S>) -> Result<Form<S>, Error> {
    check_degree(omega, pair)?;
    let a = lefschetz_matrix(pair);
    let mut rhs = omega.wedge(pair.omega(1)).to_vector();
    rhs.extend(omega.wedge(pair.omega(2)).to_vector());
    let b = Matrix::from_fn(rhs.len(), 1, |r, _| rhs[r].clone());
    let x = a.solve(&b).ok_or_else(|| Error::Evaluation("bieffective system inconsistent".into()))?;
    let (x1, x2) = split(&x.column(0));
    let omega0 = omega - &(&x1.wedge(pair.omega(1)) + &x2.wedge(pair.omega(2)));
    // uniqueness: kernel directions must not move ω₀
    for k in a.nullspace() {
        let (k1, k2) = split(&k);
        if !(&k1.wedge(pair.omega(1)) + &k2.wedge(pair.omega(2))).is_zero_within(1e-9) {
            return Err(Error::Evaluation("bieffective part is not unique".into()));
        }
    }
    Ok(omega0)
}

/// All six components.
#[derive(Clone, Debug, PartialEq)]
pub struct BieffectiveDecomposition<S> {
    pub omega0: Form<S>,
    pub omega1: Form<S>,
    pub omega2: Form<S>,
    pub w11: S,
    pub w12: S,
    pub w22: S,
}

impl<S: Field> BieffectiveDecomposition<S> {
    /// `ω₀ + ω₁∧Ω₁ + ω₂∧Ω₂ + w11·Ω₁² + w12·Ω₁∧Ω₂ + w22·Ω₂²`
    pub fn reassemble(&self, pair: &SymplecticPair<S>) -> Form<S> {
        let w = (self.w11.clone(), self.w12.clone(), self.w22.clone());
        &(&(&self.omega0 + &self.omega1.wedge(pair.omega(1))) + &self.omega2.wedge(pair.omega(2))) + &scalar_part(pair, &w)
    }
}

/// Full decomposition. `ω₀` and the scalars are canonical; `ω₁, ω₂` are the
/// basic solution of `ω₁∧Ω₁ + ω₂∧Ω₂ = ω − ω₀ − (scalar part)` with
/// `⊥_j ω_k = 0`, which is not unique.
pub fn decompose<S: Field>(omega: &Form<S>, pair: &SymplecticPair<S>) -> Result<BieffectiveDecomposition<S>, Error> {
    let w = scalar_components(omega, pair)?;
    let omega0 = bieffective_part(omega, pair)?;
    let rest = &(omega - &omega0) - &scalar_part(pair, &w);
    let src = Blade::all_of_grade(8, 2);
    let mut cols = Vec::new();
    for k in 1..=2 {
        for b in &src {
            let e = Form::term(8, *b, S::one());
            let mut v = e.wedge(pair.omega(k)).to_vector();
            // ⊥_j ω_k for j = 1, 2, placed in the rows of this unknown's block
            for kk in 1..=2 {
                for j in 1..=2 {
                    v.push(if kk == k { pair.perp(j, &e).scalar_value() } else { S::zero() });
                }
            }
            cols.push(v);
        }
    }
    let a = Matrix::from_fn(cols[0].len(), cols.len(), |r, c| cols[c][r].clone());
    let mut rhs = rest.to_vector();
    rhs.extend(std::iter::repeat(S::zero()).take(4));
    let b = Matrix::from_fn(rhs.len(), 1, |r, _| rhs[r].clone());
    let x = a.solve(&b).ok_or_else(|| Error::Evaluation("decomposition system inconsistent".into()))?;
    let (omega1, omega2) = split(&x.column(0));
    Ok(BieffectiveDecomposition { omega0, omega1, omega2, w11: w.0, w12: w.1, w22: w.2 })
}
