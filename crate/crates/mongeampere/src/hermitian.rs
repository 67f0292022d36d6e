//! Hermitian invariants of bieffective 4-forms.
//!
//! Forms here are written in the eight complex coordinates of a Darboux
//! chart, `(z1, u1, z2, u2, z̄1, ū1, z̄2, ū2)` (see
//! [`DarbouxChart::complex_frame`]). Ratios of top-degree forms do not
//! depend on whether they are computed in these coordinates or on ℝ⁸.

use std::fmt;

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::error::Error;
use crate::exterior::{pullback, Blade, Form, LinearMap};
use crate::linalg::Matrix;
use crate::poly::{roots, Poly};
use crate::scalar::{to_exact, Field};
use crate::structures::{bar, DarbouxChart, U1, U2, Z1, Z2};
use crate::{Cf, Cq};

/// Inertia `(p, n, z)` of a Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub p: usize,
    pub n: usize,
    pub z: usize,
}

impl Signature {
    pub fn new(p: usize, n: usize, z: usize) -> Self {
        Signature { p, n, z }
    }

    pub fn swapped(self) -> Self {
        Signature { p: self.n, n: self.p, z: self.z }
    }

    /// `(p, n)` without the kernel dimension.
    pub fn pn(self) -> (usize, usize) {
        (self.p, self.n)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.n)
    }
}

fn exact_matrix<S: Field>(m: &Matrix<S>) -> Option<Matrix<Cq>> {
    let data: Option<Vec<Cq>> = (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c| (r, c))).map(|(r, c)| to_exact(&m[(r, c)])).collect();
    let data = data?;
    Some(Matrix::from_fn(m.rows(), m.cols(), |r, c| data[r * m.cols() + c].clone()))
}

fn to_nalgebra<S: Field>(m: &Matrix<S>) -> DMatrix<Cf> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)].to_c64())
}

/// Characteristic polynomial of an exact Hermitian matrix as a rational
/// polynomial.
fn real_charpoly(q: &Matrix<Cq>) -> Poly<num_rational::BigRational> {
    let cp = q.charpoly();
    debug_assert!(cp.coeffs().iter().all(|c| c.im.is_zero()));
    Poly::new(cp.coeffs().iter().map(|c| c.re.clone()).collect())
}

/// Signature of a Hermitian matrix. Exact inputs are handled exactly
/// (Sturm sequence plus Descartes' rule on the characteristic polynomial);
/// inexact ones by a Hermitian eigensolver with tolerance `1e-9` relative
/// to the largest entry.
pub fn signature<S: Field>(q: &Matrix<S>) -> Signature {
    assert!(q.is_square());
    if let Some(e) = exact_matrix(q) {
        let (p, n, z) = real_charpoly(&e).root_sign_counts().expect("Hermitian matrices have real spectrum");
        return Signature::new(p, n, z);
    }
    let m = to_nalgebra(q);
    let h = (&m + m.adjoint()) * Cf::new(0.5, 0.0);
    let ev = h.symmetric_eigenvalues();
    let tol = 1e-9 * q.max_abs().max(1.0);
    let p = ev.iter().filter(|x| **x > tol).count();
    let n = ev.iter().filter(|x| **x < -tol).count();
    Signature::new(p, n, q.rows() - p - n)
}

/// Eigenvalues of `Q·Qᵗ` (plain transpose), sorted by real then imaginary
/// part. Exact inputs go through the exact characteristic polynomial and
/// its square-free factorization; each factor is solved numerically.
pub fn qqt_spectrum<S: Field>(q: &Matrix<S>) -> Vec<Cf> {
    let prod = q.mul(&q.transpose());
    let mut out = if let Some(e) = exact_matrix(&prod) {
        let cp = e.charpoly();
        let mut vals = Vec::new();
        for (factor, mult) in cp.squarefree() {
            let f = factor.map(|c| c.to_c64());
            for r in roots(&f) {
                vals.extend(std::iter::repeat(r).take(mult));
            }
        }
        vals
    } else {
        let m = to_nalgebra(&prod);
        m.schur().eigenvalues().expect("complex Schur form is triangular").iter().copied().collect()
    };
    for v in out.iter_mut() {
        // snap round-off on the real axis and at zero
        if v.im.abs() < 1e-12 * (1.0 + v.re.abs()) {
            v.im = 0.0;
        }
        if v.norm() < 1e-13 {
            *v = Cf::new(0.0, 0.0);
        }
    }
    sort_spectrum(&mut out);
    out
}

pub fn sort_spectrum(v: &mut [Cf]) {
    v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
}

/// Whether two spectra agree as multisets within `tol`.
pub fn spectra_match(a: &[Cf], b: &[Cf], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let hit = (0..b.len()).filter(|&j| !used[j]).min_by(|&i, &j| (x - b[i]).norm().partial_cmp(&(x - b[j]).norm()).unwrap());
        match hit {
            Some(j) if (x - b[j]).norm() <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// `Θ = dz1∧du1 + dz2∧du2` in complex coordinates.
pub fn theta_complex<S: Field>() -> Form<S> {
    Form::monomial(8, &[Z1, U1], S::one()) + Form::monomial(8, &[Z2, U2], S::one())
}

/// Complex conjugate of a form in complex coordinates: conjugate the
/// coefficients and exchange each coordinate with its conjugate.
pub fn bar_form<S: Field>(f: &Form<S>) -> Form<S> {
    let swap = LinearMap::new(Matrix::from_fn(8, 8, |r, c| if c == bar(r) { S::one() } else { S::zero() }));
    pullback(&swap, &f.conj()).expect("complex coordinates have dimension 8")
}

fn top_ratio<S: Field>(num: &Form<S>, den: &Form<S>) -> S {
    num.top() / den.top()
}

/// A basis of `Λ₀²⁰ = {θ ∈ Λ²⁰ : θ∧Θ = 0}` with its symmetric pairing
/// `θ_a∧θ_b = ⟨θ_a, θ_b⟩ Θ²`.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveTwoZeroBasis<S> {
    forms: Vec<Form<S>>,
    gram: Matrix<S>,
}

impl<S: Field> EffectiveTwoZeroBasis<S> {
    /// Validates membership, independence and nondegeneracy.
    pub fn new(forms: Vec<Form<S>>) -> Result<Self, Error> {
        if forms.len() != 5 {
            return Err(Error::DimensionMismatch { expected: 5, found: forms.len() });
        }
        let theta = theta_complex::<S>();
        for f in &forms {
            if f.dim() != 8 || f.degree() != 2 {
                return Err(Error::InvalidBlock("basis elements must be 2-forms in eight complex coordinates".into()));
            }
            if f.terms().any(|(b, _)| b.indices().any(|i| i >= 4)) {
                return Err(Error::InvalidBlock("basis elements must be of type (2,0)".into()));
            }
            if !f.wedge(&theta).is_zero_within(1e-12) {
                return Err(Error::InvalidBlock(format!("{f} ∧ Θ ≠ 0")));
            }
        }
        let t2 = theta.wedge(&theta);
        let gram = Matrix::from_fn(5, 5, |a, b| top4(&forms[a].wedge(&forms[b])) / top4(&t2));
        if gram.rank() != 5 {
            return Err(Error::Degenerate);
        }
        Ok(EffectiveTwoZeroBasis { forms, gram })
    }

    /// `{dz1∧dz2, dz1∧du2, dz2∧du1, du1∧du2, dz1∧du1 − dz2∧du2}`
    pub fn standard() -> Self {
        Self::new(standard_elements()).expect("standard basis is valid")
    }

    /// `{i(θ1+θ4), θ1−θ4, i(θ2+θ3), θ2−θ3, iθ5}`, orthonormal for the
    /// pairing.
    pub fn orthonormal() -> Self {
        let t = standard_elements::<S>();
        let i = S::i();
        let forms = vec![
            (&t[0] + &t[3]).scale(&i),
            &t[0] - &t[3],
            (&t[1] + &t[2]).scale(&i),
            &t[1] - &t[2],
            t[4].scale(&i),
        ];
        Self::new(forms).expect("orthonormal basis is valid")
    }

    pub fn forms(&self) -> &[Form<S>] {
        &self.forms
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    /// `Σ c_a θ_a`
    pub fn combination(&self, coords: &[S]) -> Form<S> {
        self.forms.iter().zip(coords).fold(Form::zero(8, 2), |acc, (f, c)| &acc + &f.scale(c))
    }

    /// Coordinates of an element of `Λ₀²⁰` in this basis.
    pub fn coordinates(&self, theta: &Form<S>) -> Option<Vec<S>> {
        let cols: Vec<Vec<S>> = self.forms.iter().map(|f| f.to_vector()).collect();
        let a = Matrix::from_fn(cols[0].len(), 5, |r, c| cols[c][r].clone());
        let v = theta.to_vector();
        let b = Matrix::from_fn(v.len(), 1, |r, _| v[r].clone());
        let x = a.solve(&b)?;
        let c = x.column(0);
        if (&self.combination(&c) - theta).is_zero_within(1e-9) {
            Some(c)
        } else {
            None
        }
    }
}

/// Coefficient on `dz1∧du1∧dz2∧du2`, the top of the (4,0) part.
fn top4<S: Field>(f: &Form<S>) -> S {
    f.coefficient(Blade(0b1111))
}

fn standard_elements<S: Field>() -> Vec<Form<S>> {
    let m = |i: usize, j: usize| Form::monomial(8, &[i, j], S::one());
    vec![m(Z1, Z2), m(Z1, U2), m(Z2, U1), m(U1, U2), m(Z1, U1) - m(Z2, U2)]
}

/// Whether a form in complex coordinates satisfies `ω∧Θ = ω∧Θ̄ = 0`.
pub fn is_bieffective_complex<S: Field>(omega: &Form<S>, tol: f64) -> bool {
    let theta = theta_complex::<S>();
    omega.wedge(&theta).is_zero_within(tol) && omega.wedge(&bar_form(&theta)).is_zero_within(tol)
}

/// `Q(θ_a, θ_b) (Θ∧Θ̄)² = ω∧θ_a∧θ̄_b` for a bieffective 4-form given in
/// complex coordinates.
pub fn q_matrix_complex<S: Field>(omega: &Form<S>, basis: &EffectiveTwoZeroBasis<S>) -> Result<Matrix<S>, Error> {
    if omega.degree() != 4 {
        return Err(Error::DegreeMismatch { left: omega.degree(), right: 4 });
    }
    if !is_bieffective_complex(omega, 1e-10) {
        return Err(Error::NotBieffective("Θ"));
    }
    let theta = theta_complex::<S>();
    let tt = theta.wedge(&bar_form(&theta));
    let vol = tt.wedge(&tt);
    let bars: Vec<Form<S>> = basis.forms.iter().map(bar_form).collect();
    let left: Vec<Form<S>> = basis.forms.iter().map(|f| omega.wedge(f)).collect();
    Ok(Matrix::from_fn(5, 5, |a, b| top_ratio(&left[a].wedge(&bars[b]), &vol)))
}

/// `Q_ω` for a bieffective real 4-form on ℝ⁸ and the chart defining `Θ`.
pub fn q_matrix<S: Field>(omega: &Form<S>, chart: &DarbouxChart<S>, basis: &EffectiveTwoZeroBasis<S>) -> Result<Matrix<S>, Error> {
    q_matrix_complex(&chart.to_complex(omega), basis)
}

/// `Q(θ, θ) = Σ c_a Q_ab c̄_b`.
pub fn hermitian_value<S: Field>(q: &Matrix<S>, c: &[S]) -> S {
    let mut acc = S::zero();
    for a in 0..c.len() {
        for b in 0..c.len() {
            acc = acc + c[a].clone() * q[(a, b)].clone() * c[b].conj();
        }
    }
    acc
}

/// `θ∧θ = 0` and `Q(θ, θ) = 0`, for `θ` given by coordinates in `basis`
/// and `Q` expressed in the same basis.
pub fn grassmannian_member<S: Field>(coords: &[S], basis: &EffectiveTwoZeroBasis<S>, q: &Matrix<S>, tol: f64) -> bool {
    let theta = basis.combination(coords);
    let scale = coords.iter().map(|c| c.to_c64().norm()).fold(0.0, f64::max).max(1e-300);
    theta.wedge(&theta).is_zero_within(tol * scale * scale) && hermitian_value(q, coords).is_negligible(tol * scale * scale)
}

/// The kind of a Hong canonical block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HongKind {
    /// `H_m(λ)`, λ real.
    H,
    /// `K_{2n}(μ)`, μ > 0.
    K,
    /// `L_{2k}(ξ)`, ξ not real.
    L,
}

/// `H_m(λ)` with `2H_m(λ) = R + iS`: `R` has `2λ` on the anti-diagonal and
/// `1` on the two neighbouring anti-diagonals, `S` has `+1` on the
/// superdiagonal and `−1` on the subdiagonal.
fn hong_h<S: Field>(m: usize, lambda: &S) -> Matrix<S> {
    let half = S::from_ratio(1, 2);
    Matrix::from_fn(m, m, |r, c| {
        let mut v = S::zero();
        if r + c + 1 == m {
            v = lambda.clone() + lambda.clone();
        }
        if r + c + 2 == m || r + c == m {
            v = v + S::one();
        }
        if c == r + 1 {
            v = v + S::i();
        } else if r == c + 1 {
            v = v - S::i();
        }
        v * half.clone()
    })
}

/// The literal Hong block of the given kind and size.
pub fn hong_block<S: Field>(kind: HongKind, size: usize, param: S) -> Result<Matrix<S>, Error> {
    let p = param.to_c64();
    if size == 0 {
        return Err(Error::InvalidBlock("size must be positive".into()));
    }
    match kind {
        HongKind::H => {
            if p.im != 0.0 {
                return Err(Error::InvalidBlock("λ must be real".into()));
            }
            Ok(hong_h(size, &param))
        }
        HongKind::K => {
            if size % 2 != 0 || p.im != 0.0 || p.re <= 0.0 {
                return Err(Error::InvalidBlock("K blocks need even size and μ > 0".into()));
            }
            let h = hong_h(size / 2, &param);
            let z = Matrix::zeros(size / 2, size / 2);
            Ok(Matrix::block(&z, &h.scale(&-S::i()), &h.scale(&S::i()), &z))
        }
        HongKind::L => {
            if size % 2 != 0 || p.im == 0.0 {
                return Err(Error::InvalidBlock("L blocks need even size and non-real ξ".into()));
            }
            let h = hong_h(size / 2, &param);
            let z = Matrix::zeros(size / 2, size / 2);
            Ok(Matrix::block(&z, &h, &h.adjoint(), &z))
        }
    }
}

/// Real dimension of the bieffective subspace of `Λ⁴(ℝ⁸)`.
pub fn bieffective_dimension<S: Field>(chart: &DarbouxChart<S>) -> Result<usize, Error> {
    Ok(bieffective_basis(chart)?.len())
}

/// A basis of the real bieffective 4-forms (kernel of `∧Ω₁` and `∧Ω₂`).
pub fn bieffective_basis<S: Field>(chart: &DarbouxChart<S>) -> Result<Vec<Form<S>>, Error> {
    let pair = chart.pair()?;
    let blades = Blade::all_of_grade(8, 4);
    let cols: Vec<Vec<S>> = blades
        .iter()
        .map(|b| {
            let f = Form::term(8, *b, S::one());
            let mut v = f.wedge(pair.omega(1)).to_vector();
            v.extend(f.wedge(pair.omega(2)).to_vector());
            v
        })
        .collect();
    let a = Matrix::from_fn(cols[0].len(), cols.len(), |r, c| cols[c][r].clone());
    Ok(a.nullspace().into_iter().map(|v| Form::from_vector(8, 4, &v)).collect())
}

/// Theorem-level check: the bieffective subspace has real dimension 25 and
/// `ω ↦ Q_ω` is injective on it.
pub fn su5_dimension_check<S: Field>(chart: &DarbouxChart<S>) -> Result<bool, Error> {
    let basis = bieffective_basis(chart)?;
    if basis.len() != 25 {
        return Ok(false);
    }
    let e = EffectiveTwoZeroBasis::<S>::standard();
    let images: Result<Vec<Vec<S>>, Error> =
        basis.iter().map(|w| q_matrix(w, chart, &e).map(|q| (0..25).map(|k| q[(k / 5, k % 5)].clone()).collect())).collect();
    let images = images?;
    let m = Matrix::from_fn(25, 25, |r, c| images[c][r].clone());
    Ok(m.rank() == 25)
}

/// The 8×8 map `(F, F̄)` on complex coordinates induced by a complex linear
/// map `F` of `ℂ⁴` in the order `(z1, u1, z2, u2)`.
pub fn complexified<S: Field>(f: &Matrix<S>) -> LinearMap<S> {
    let z = Matrix::zeros(4, 4);
    LinearMap::new(Matrix::block(f, &z, &z, &f.conj()))
}

/// Whether `F*Θ = Θ` for a 4×4 complex matrix in the order `(z1, u1, z2, u2)`.
pub fn is_complex_symplectic<S: Field>(f: &Matrix<S>) -> bool {
    let w = crate::symplectic::matrix_of(&crate::symplectic::standard_omega::<S>(4));
    f.transpose().mul(&w).mul(f).sub(&w).is_zero_within(1e-12)
}

/// Matrix `G` of the pullback `(F⁻¹)*` on `Λ₀²⁰`:
/// `(F⁻¹)* θ_b = Σ_a G_ab θ_a`.
pub fn lambda20_action<S: Field>(f: &Matrix<S>, basis: &EffectiveTwoZeroBasis<S>) -> Result<Matrix<S>, Error> {
    let inv = f.inverse().ok_or(Error::Degenerate)?;
    let map = complexified(&inv);
    let mut g = Matrix::zeros(5, 5);
    for (b, theta) in basis.forms().iter().enumerate() {
        let img = pullback(&map, theta)?;
        let c = basis.coordinates(&img).ok_or_else(|| Error::Evaluation("F is not complex symplectic".into()))?;
        for (a, v) in c.into_iter().enumerate() {
            g[(a, b)] = v;
        }
    }
    Ok(g)
}

/// Compares `Q_{F*ω}` with `Gᵗ Q_ω Ḡ`; returns the largest entry of the
/// difference (exactly zero in exact arithmetic).
pub fn equivariance_defect<S: Field>(omega_complex: &Form<S>, f: &Matrix<S>, basis: &EffectiveTwoZeroBasis<S>) -> Result<f64, Error> {
    let q = q_matrix_complex(omega_complex, basis)?;
    let pulled = pullback(&complexified(f), omega_complex)?;
    let q_pulled = q_matrix_complex(&pulled, basis)?;
    let g = lambda20_action(f, basis)?;
    let predicted = g.transpose().mul(&q).mul(&g.conj());
    let d = q_pulled.sub(&predicted);
    let exact_zero = (0..5).all(|r| (0..5).all(|c| d[(r, c)].is_zero()));
    Ok(if exact_zero { 0.0 } else { d.max_abs().max(f64::MIN_POSITIVE) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cq;
    use num_traits::One;

    #[test]
    fn standard_basis_members() {
        let b = EffectiveTwoZeroBasis::<Cq>::standard();
        let theta = theta_complex::<Cq>();
        for f in b.forms() {
            assert!(f.wedge(&theta).terms().next().is_none());
        }
        let witness = Form::monomial(8, &[Z1, U1], Cq::one());
        assert!(witness.wedge(&theta).terms().next().is_some());
    }

    #[test]
    fn orthonormal_gram_is_identity() {
        let b = EffectiveTwoZeroBasis::<Cq>::orthonormal();
        assert_eq!(b.gram(), &Matrix::identity(5));
    }

    #[test]
    fn diag_signature() {
        let q = Matrix::from_fn(5, 5, |r, c| if r == c { Cq::from_i64([1, 1, -1, 0, 0][r]) } else { Cq::zero() });
        assert_eq!(signature(&q), Signature::new(2, 1, 2));
        let qf = q.map(|x| x.to_c64());
        assert_eq!(signature(&qf), Signature::new(2, 1, 2));
    }

    #[test]
    fn k2_block() {
        let k = hong_block(HongKind::K, 2, Cq::one()).unwrap();
        assert_eq!(k, Matrix::from_rows(vec![vec![Cq::zero(), -Cq::i()], vec![Cq::i(), Cq::zero()]]));
        assert_eq!(signature(&k), Signature::new(1, 1, 0));
        let s = qqt_spectrum(&k);
        assert!(spectra_match(&s, &[Cf::new(-1.0, 0.0), Cf::new(-1.0, 0.0)], 1e-12));
    }

    #[test]
    fn h_blocks() {
        let h1 = hong_block(HongKind::H, 1, cq((3, 2), (0, 1))).unwrap();
        assert_eq!(h1[(0, 0)], cq((3, 2), (0, 1)));
        let h2 = hong_block(HongKind::H, 2, cq((2, 1), (0, 1))).unwrap();
        assert!(h2.is_hermitian(0.0));
        assert!(spectra_match(&qqt_spectrum(&h2), &[Cf::new(4.0, 0.0), Cf::new(4.0, 0.0)], 1e-9));
        assert!(hong_block(HongKind::K, 3, Cq::one()).is_err());
        assert!(hong_block(HongKind::L, 2, Cq::one()).is_err());
    }

    #[test]
    fn identity_spectrum() {
        let s = qqt_spectrum(&Matrix::<Cq>::identity(5));
        assert!(spectra_match(&s, &[Cf::new(1.0, 0.0); 5], 1e-12));
    }
}
