//! Compatible complex structures on T*ℝ⁴ and their Darboux charts.
//!
//! A structure is stored as an 8×8 block matrix `(A B; C Aᵗ)` acting on
//! column vectors in block order `(q1..q4, p1..p4)`. Forms live in the
//! interleaved order `(q1, p1, ..., q4, p4)`.

use std::fmt;
use std::str::FromStr;

use crate::equations::omega_slag;
use crate::error::Error;
use crate::exterior::{pullback, Form, LinearMap};
use crate::linalg::Matrix;
use crate::scalar::{cq, Field};
use crate::symplectic::{form_of_matrix, standard_omega, SymplecticPair};
use crate::Cq;
use num_traits::One;

/// Positions of `z1, u1, z2, u2` among the complex coordinates; the
/// conjugates follow at `+4`.
pub const Z1: usize = 0;
pub const U1: usize = 1;
pub const Z2: usize = 2;
pub const U2: usize = 3;

/// Index of the conjugate of complex coordinate `k`.
pub const fn bar(k: usize) -> usize {
    (k + 4) % 8
}

/// Block index -> interleaved index.
pub const BLOCK_TO_INTERLEAVED: [usize; 8] = [0, 2, 4, 6, 1, 3, 5, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureName {
    J,
    K,
    JTilde,
    KTilde,
    J2,
}

impl StructureName {
    pub const ALL: [StructureName; 5] =
        [StructureName::J, StructureName::K, StructureName::JTilde, StructureName::KTilde, StructureName::J2];

    pub fn label(self) -> &'static str {
        match self {
            StructureName::J => "J",
            StructureName::K => "K",
            StructureName::JTilde => "Jtilde",
            StructureName::KTilde => "Ktilde",
            StructureName::J2 => "J2",
        }
    }
}

impl fmt::Display for StructureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for StructureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "j" => Ok(StructureName::J),
            "k" => Ok(StructureName::K),
            "jtilde" | "j~" | "jt" => Ok(StructureName::JTilde),
            "ktilde" | "k~" | "kt" => Ok(StructureName::KTilde),
            "j2" => Ok(StructureName::J2),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

fn m4(rows: [[i64; 4]; 4]) -> Matrix<Cq> {
    Matrix::from_fn(4, 4, |r, c| Cq::from_i64(rows[r][c]))
}

/// `A`: rotation by a quarter turn in the (q1,q2) and (q3,q4) planes.
pub fn matrix_a() -> Matrix<Cq> {
    m4([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
}

/// `Ã`: as `A` with the second plane reversed.
pub fn matrix_a_tilde() -> Matrix<Cq> {
    m4([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
}

/// `A₂`, a non-orthogonal square root of `-1`.
pub fn matrix_a2() -> Matrix<Cq> {
    m4([[1, -2, 0, 0], [1, -1, 0, 0], [0, 0, 1, -2], [0, 0, 1, -1]])
}

/// A complex structure on ℝ⁸ of the shape `(A B; C Aᵗ)` compatible with `Ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatibleComplexStructure {
    name: String,
    a: Matrix<Cq>,
    b: Matrix<Cq>,
    c: Matrix<Cq>,
    matrix: Matrix<Cq>,
}

impl CompatibleComplexStructure {
    /// Assembles `(A B; C Aᵗ)` and checks every compatibility condition.
    pub fn from_blocks(name: &str, a: Matrix<Cq>, b: Matrix<Cq>, c: Matrix<Cq>) -> Result<Self, Error> {
        for m in [&a, &b, &c] {
            if m.rows() != 4 || m.cols() != 4 {
                return Err(Error::DimensionMismatch { expected: 4, found: m.rows().max(m.cols()) });
            }
        }
        let fail = |cond: &str| Err(Error::InvalidStructure { name: name.to_string(), condition: cond.to_string() });
        let zero = Matrix::<Cq>::zeros(4, 4);
        let id = Matrix::<Cq>::identity(4);
        if b.transpose() != b.scale(&-Cq::one()) {
            return fail("Bᵗ = −B");
        }
        if c.transpose() != c.scale(&-Cq::one()) {
            return fail("Cᵗ = −C");
        }
        if a.mul(&a).add(&b.mul(&c)) != id.scale(&-Cq::one()) {
            return fail("A² + BC = −1");
        }
        if a.mul(&b).add(&b.mul(&a.transpose())) != zero {
            return fail("AB + BAᵗ = 0");
        }
        if a.mul(&c).add(&c.mul(&a.transpose())) != zero {
            return fail("AC + CAᵗ = 0");
        }
        let matrix = Matrix::block(&a, &b, &c, &a.transpose());
        if matrix.mul(&matrix) != Matrix::identity(8).scale(&-Cq::one()) {
            return fail("𝕁² = −1");
        }
        let s = CompatibleComplexStructure { name: name.to_string(), a, b, c, matrix };
        let w = s.omega_matrix();
        if w.transpose() != w.scale(&-Cq::one()) {
            return fail("Ω(𝕁·,·) antisymmetric");
        }
        Ok(s)
    }

    pub fn builtin(name: StructureName) -> Self {
        let z = Matrix::zeros(4, 4);
        let (a, b, c) = match name {
            StructureName::J => (matrix_a(), z.clone(), z),
            StructureName::JTilde => (matrix_a_tilde(), z.clone(), z),
            StructureName::J2 => (matrix_a2(), z.clone(), z),
            StructureName::K => {
                let (a, b, c) = printed_k_blocks();
                match Self::from_blocks(name.label(), a, b.clone(), c) {
                    Ok(s) => return s,
                    // the printed lower block breaks A² + BC = −1; use A twice
                    Err(_) => (z, b.clone(), b),
                }
            }
            StructureName::KTilde => (z, matrix_a_tilde(), matrix_a_tilde()),
        };
        Self::from_blocks(name.label(), a, b, c).expect("built-in structure is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn blocks(&self) -> (&Matrix<Cq>, &Matrix<Cq>, &Matrix<Cq>) {
        (&self.a, &self.b, &self.c)
    }

    /// The 8×8 matrix in block order.
    pub fn matrix(&self) -> &Matrix<Cq> {
        &self.matrix
    }

    /// The same endomorphism in interleaved order.
    pub fn interleaved(&self) -> Matrix<Cq> {
        let mut m = Matrix::zeros(8, 8);
        for i in 0..8 {
            for j in 0..8 {
                m[(BLOCK_TO_INTERLEAVED[i], BLOCK_TO_INTERLEAVED[j])] = self.matrix[(i, j)].clone();
            }
        }
        m
    }

    /// Matrix of `Ω(𝕁·,·)` in interleaved order: `𝕁ᵗ W₀`.
    fn omega_matrix(&self) -> Matrix<Cq> {
        let w0 = crate::symplectic::matrix_of(&standard_omega::<Cq>(8));
        self.interleaved().transpose().mul(&w0)
    }

    /// `Ω_𝕁 = Ω(𝕁·,·)`
    pub fn omega(&self) -> Form<Cq> {
        form_of_matrix(&self.omega_matrix())
    }

    /// The pair `(Ω, −Ω_𝕁)`, so that `Θ = Ω − iΩ_𝕁`.
    pub fn pair(&self) -> SymplecticPair<Cq> {
        SymplecticPair::new(standard_omega(8), -self.omega()).expect("compatible structure gives a pair")
    }
}

/// The blocks `(0, A; Ã, 0)` of one printing of `K`. They violate
/// `A² + BC = −1`, which is why [`CompatibleComplexStructure::builtin`]
/// falls back to `(0, A; A, 0)`.
pub fn printed_k_blocks() -> (Matrix<Cq>, Matrix<Cq>, Matrix<Cq>) {
    (Matrix::zeros(4, 4), matrix_a(), matrix_a_tilde())
}

/// `Ω_𝕁` of a structure.
pub fn omega_of(s: &CompatibleComplexStructure) -> Form<Cq> {
    s.omega()
}

/// Whether `ω_SLAG = Ω_J ∧ Ω_K` holds exactly.
pub fn slag_factorization_check() -> bool {
    let j = CompatibleComplexStructure::builtin(StructureName::J).omega();
    let k = CompatibleComplexStructure::builtin(StructureName::K).omega();
    factorizes(&omega_slag(), &j, &k)
}

/// Exact test of `ω = α ∧ β`.
pub fn factorizes(omega: &Form<Cq>, alpha: &Form<Cq>, beta: &Form<Cq>) -> bool {
    &alpha.wedge(beta) == omega
}

/// The sign `s` with `ω_SLAG = s·Ω_J∧Ω_K`, if either sign works.
pub fn slag_factorization_sign() -> Option<i8> {
    let j = CompatibleComplexStructure::builtin(StructureName::J).omega();
    let k = CompatibleComplexStructure::builtin(StructureName::K).omega();
    let prod = j.wedge(&k);
    let slag = omega_slag::<Cq>();
    if prod == slag {
        Some(1)
    } else if -prod == slag {
        Some(-1)
    } else {
        None
    }
}

/// Complex linear coordinates `(z1, u1, z2, u2)` on ℝ⁸, stored as the rows
/// of a complex 4×8 matrix in interleaved order.
#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxChart<S> {
    matrix: Matrix<S>,
}

impl<S: Field> DarbouxChart<S> {
    /// Rows `z1, u1, z2, u2`. Fails unless the real rank is 8.
    pub fn new(matrix: Matrix<S>) -> Result<Self, Error> {
        if matrix.rows() != 4 || matrix.cols() != 8 {
            return Err(Error::DimensionMismatch { expected: 4, found: matrix.rows() });
        }
        let chart = DarbouxChart { matrix };
        if chart.real_matrix().rank() != 8 {
            return Err(Error::Degenerate);
        }
        Ok(chart)
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> DarbouxChart<T> {
        DarbouxChart { matrix: self.matrix.map(f) }
    }

    pub fn linear_map(&self) -> LinearMap<S> {
        LinearMap::new(self.matrix.clone())
    }

    /// `dz_k` as a complex 1-form on ℝ⁸.
    pub fn dz(&self, k: usize) -> Form<S> {
        Form::one_form(self.matrix.row(2 * (k - 1)))
    }

    /// `du_k`
    pub fn du(&self, k: usize) -> Form<S> {
        Form::one_form(self.matrix.row(2 * (k - 1) + 1))
    }

    /// `dz₁∧du₁ + dz₂∧du₂` pulled back to ℝ⁸.
    pub fn theta(&self) -> Form<S> {
        pullback(&self.linear_map(), &standard_omega(4)).expect("chart has four rows")
    }

    /// Rows `Re z1, Im z1, Re u1, Im u1, ...`.
    pub fn real_matrix(&self) -> Matrix<S> {
        let half = S::from_ratio(1, 2);
        Matrix::from_fn(8, 8, |r, c| {
            let x = self.matrix[(r / 2, c)].clone();
            if r % 2 == 0 {
                (x.clone() + x.conj()) * half.clone()
            } else {
                (x.clone() - x.conj()) * half.clone() / S::i()
            }
        })
    }

    /// Inverse map: `(z1, u1, z2, u2)` to the real point of ℝ⁸.
    pub fn inverse_map(&self) -> Matrix<S> {
        self.real_matrix().inverse().expect("chart has full rank")
    }

    /// Real point with the given complex coordinates `(z1, u1, z2, u2)`.
    pub fn point(&self, coords: &[S]) -> Vec<S> {
        let half = S::from_ratio(1, 2);
        let real: Vec<S> = coords
            .iter()
            .flat_map(|c| {
                let re = (c.clone() + c.conj()) * half.clone();
                let im = (c.clone() - c.conj()) * half.clone() / S::i();
                [re, im]
            })
            .collect();
        self.inverse_map().mul_vec(&real)
    }

    /// `(z1, u1, z2, u2, z̄1, ū1, z̄2, ū2)` as an invertible map ℝ⁸ → ℂ⁸.
    /// Forms written in these eight complex coordinates pull back to ℝ⁸
    /// along it.
    pub fn complex_frame(&self) -> LinearMap<S> {
        LinearMap::new(Matrix::from_fn(8, 8, |r, c| {
            if r < 4 {
                self.matrix[(r, c)].clone()
            } else {
                self.matrix[(r - 4, c)].conj()
            }
        }))
    }

    /// Real form on ℝ⁸ of a form in complex coordinates.
    pub fn to_real(&self, f: &Form<S>) -> Form<S> {
        pullback(&self.complex_frame(), f).expect("complex coordinates have dimension 8")
    }

    /// A real form on ℝ⁸ rewritten in complex coordinates.
    pub fn to_complex(&self, f: &Form<S>) -> Form<S> {
        let inv = self.complex_frame().inverse().expect("chart has full rank");
        pullback(&inv, f).expect("real forms have dimension 8")
    }

    /// `(Re Θ, Im Θ)`.
    pub fn pair(&self) -> Result<SymplecticPair<S>, Error> {
        let theta = self.theta();
        let half = S::from_ratio(1, 2);
        let re = (&theta + &theta.conj()).scale(&half);
        let im = (&theta - &theta.conj()).scale(&(half / S::i()));
        SymplecticPair::new(re, im)
    }

    /// Complex coordinates `(z1, u1, z2, u2)` of a real point.
    pub fn coordinates(&self, x: &[S]) -> Vec<S> {
        self.matrix.mul_vec(x)
    }
}

impl DarbouxChart<Cq> {
    /// The chart of a built-in structure, checked against `Θ = Ω − iΩ_𝕁`.
    pub fn builtin(name: StructureName) -> Self {
        let s = CompatibleComplexStructure::builtin(name);
        let chart = DarbouxChart::new(builtin_chart_matrix(name)).expect("built-in chart has full rank");
        debug_assert!(chart.satisfies(&s));
        chart
    }

    /// `Θ`-pullback identity for the structure.
    pub fn satisfies(&self, s: &CompatibleComplexStructure) -> bool {
        self.theta() == standard_omega::<Cq>(8) - s.omega().scale(&Cq::i())
    }
}

fn builtin_chart_matrix(name: StructureName) -> Matrix<Cq> {
    use crate::exterior::{p, q};
    let one = cq((1, 1), (0, 1));
    let i = cq((0, 1), (1, 1));
    let mut m = Matrix::zeros(4, 8);
    let mut set = |row: usize, col: usize, v: Cq| m[(row, col)] = v;
    // rows: 0 = z1, 1 = u1, 2 = z2, 3 = u2
    match name {
        StructureName::J | StructureName::JTilde => {
            let s = if name == StructureName::J { one.clone() } else { -one.clone() };
            set(0, q(1), one.clone());
            set(0, q(2), i.clone());
            set(1, p(1), one.clone());
            set(1, p(2), -i.clone());
            set(2, q(3), one.clone());
            set(2, q(4), i.clone() * s.clone());
            set(3, p(3), one.clone());
            set(3, p(4), -i.clone() * s);
        }
        StructureName::K | StructureName::KTilde => {
            let s = if name == StructureName::K { one.clone() } else { -one.clone() };
            set(0, q(1), one.clone());
            set(0, p(2), i.clone());
            set(1, q(2), i.clone());
            set(1, p(1), one.clone());
            set(2, q(3), one.clone());
            set(2, p(4), i.clone() * s.clone());
            set(3, q(4), i.clone() * s);
            set(3, p(3), one.clone());
        }
        StructureName::J2 => {
            let a = cq((-1, 1), (1, 1));
            let b = cq((1, 1), (-1, 1));
            for k in [1, 2] {
                let (qa, qb, pa, pb) = (q(2 * k - 1), q(2 * k), p(2 * k - 1), p(2 * k));
                set(2 * (k - 1), qa, one.clone());
                set(2 * (k - 1), qb, a.clone());
                set(2 * (k - 1) + 1, pa, b.clone());
                set(2 * (k - 1) + 1, pb, -i.clone());
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_squares_to_minus_one() {
        let a2 = matrix_a2();
        assert_eq!(a2.mul(&a2), Matrix::identity(4).scale(&-Cq::one()));
    }

    #[test]
    fn builtins_and_charts_are_consistent() {
        for name in StructureName::ALL {
            let s = CompatibleComplexStructure::builtin(name);
            assert!(DarbouxChart::builtin(name).satisfies(&s), "{name}");
        }
    }

    #[test]
    fn printed_k_is_rejected() {
        let (a, b, c) = printed_k_blocks();
        let err = CompatibleComplexStructure::from_blocks("K", a, b, c).unwrap_err();
        assert_eq!(err, Error::InvalidStructure { name: "K".into(), condition: "A² + BC = −1".into() });
    }

    #[test]
    fn name_parsing() {
        for name in StructureName::ALL {
            assert_eq!(name.label().parse::<StructureName>().unwrap(), name);
        }
        assert!("L".parse::<StructureName>().is_err());
    }
}
