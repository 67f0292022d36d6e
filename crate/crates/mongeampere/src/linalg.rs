//! Dense matrices over a [`Field`] with Gaussian elimination.
//!
//! Exact fields pivot on any nonzero entry (preferring small heights); float
//! fields use partial pivoting with a relative tolerance.

use std::ops::{Index, IndexMut};

use crate::poly::Poly;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Result of reducing a matrix to row echelon form.
pub struct Echelon<S> {
    pub reduced: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S: Field> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| S::from_i64(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + other[(r, c)].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() - other[(r, c)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] = out[(r, c)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, k| acc + self[(k, k)].clone())
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (n, m) = (a.rows, a.cols);
        Self::from_fn(a.rows + c.rows, a.cols + b.cols, |r, col| match (r < n, col < m) {
            (true, true) => a[(r, col)].clone(),
            (true, false) => b[(r, col - m)].clone(),
            (false, true) => c[(r - n, col)].clone(),
            (false, false) => d[(r - n, col - m)].clone(),
        })
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_c64().norm()).fold(0.0, f64::max)
    }

    fn tolerance(&self) -> f64 {
        if self.data.iter().all(|x| x.is_exact()) {
            0.0
        } else {
            1e-11 * self.max_abs().max(1.0)
        }
    }

    fn negligible(x: &S, tol: f64) -> bool {
        if x.is_exact() {
            x.is_zero()
        } else {
            x.to_c64().norm() <= tol
        }
    }

    /// Reduced row echelon form.
    pub fn echelon(&self) -> Echelon<S> {
        let tol = self.tolerance();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let mut best: Option<(usize, f64)> = None;
            for r in row..m.rows {
                let x = &m[(r, col)];
                if Self::negligible(x, tol) {
                    continue;
                }
                let score = x.magnitude();
                if best.map_or(true, |(_, s)| score > s) {
                    best = Some((r, score));
                }
            }
            let Some((p, _)) = best else { continue };
            m.swap_rows(row, p);
            let inv = S::one() / m[(row, col)].clone();
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    let x = m[(row, c)].clone();
                    if !x.is_zero() {
                        m[(r, c)] = m[(r, c)].clone() - f.clone() * x;
                    }
                }
                if !f.is_exact() {
                    m[(r, col)] = S::zero();
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A solution of `self * x = b` for every column of `b` (free variables
    /// set to zero), or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows);
        let aug = Self::from_fn(self.rows, self.cols + b.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[(r, c - self.cols)].clone()
            }
        });
        let ech = aug.echelon();
        if ech.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let tol = aug.tolerance() * 100.0;
        for r in ech.pivots.len()..self.rows {
            for c in self.cols..aug.cols {
                if !Self::negligible(&ech.reduced[(r, c)], tol) {
                    return None;
                }
            }
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (r, &p) in ech.pivots.iter().enumerate() {
            for c in 0..b.cols {
                x[(p, c)] = ech.reduced[(r, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    /// Basis of the right kernel, one column per free variable.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &p) in ech.pivots.iter().enumerate() {
                    v[p] = -ech.reduced[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let x = self.solve(&Self::identity(self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn determinant(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let tol = self.tolerance();
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(p) = (col..n)
                .filter(|&r| !Self::negligible(&m[(r, col)], tol))
                .max_by(|&a, &b| m[(a, col)].magnitude().total_cmp(&m[(b, col)].magnitude()))
            else {
                return S::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = det * piv.clone();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone() / piv.clone();
                for c in col..n {
                    let x = m[(col, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - f.clone() * x;
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(x I - A)` by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Poly<S> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut mk = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&mk);
            for d in 0..n {
                next[(d, d)] = next[(d, d)].clone() + coeffs[n - k + 1].clone();
            }
            mk = next;
            let t = self.mul(&mk).trace();
            coeffs[n - k] = -(t / S::from_i64(k as i64));
        }
        Poly::new(coeffs)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.sub(&self.adjoint()).is_zero_within(tol)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}
