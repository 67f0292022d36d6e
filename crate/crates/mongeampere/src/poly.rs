//! Univariate polynomials with coefficients in a field.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Cf;

/// Coefficient ring for [`Poly`]; division must be exact field division.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Coefficients in ascending order; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: T) -> Self {
        Self::new(vec![-r, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        let mut k = T::zero();
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                    let b = other.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder. Panics on division by the zero polynomial.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].clone() / lead.clone();
            if q.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * c.clone();
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
            }
        }
    }

    /// Monic greatest common divisor (exact fields only).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: pairs `(g, k)` with `self = c * prod g^k`
    /// and each `g` square-free and monic.
    pub fn squarefree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().map_or(true, |d| d == 0) {
            return out;
        }
        let a = self.monic();
        let b = a.derivative();
        let c = a.gcd(&b);
        let mut w = a.divrem(&c).0;
        let mut y = b.divrem(&c).0;
        let mut z = y.sub(&w.derivative());
        let mut k = 1;
        while w.degree().is_some_and(|d| d > 0) {
            let g = w.gcd(&z);
            w = w.divrem(&g).0;
            y = z.divrem(&g).0;
            z = y.sub(&w.derivative());
            if g.degree().is_some_and(|d| d > 0) {
                out.push((g, k));
            }
            k += 1;
        }
        out
    }

    /// Multiplicity of 0 as a root.
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^k`.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }
}

impl Poly<BigRational> {
    /// Sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let signs: Vec<bool> = self.coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Sturm chain `p, p', -rem(...)`.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain
    }

    /// Number of distinct real roots, by Sturm's theorem.
    pub fn distinct_real_roots(&self) -> usize {
        let chain = self.sturm_chain();
        let at = |pos: bool| -> usize {
            let signs: Vec<bool> = chain
                .iter()
                .filter_map(|p| {
                    let d = p.degree()?;
                    let l = p.leading()?.is_positive();
                    Some(if pos || d % 2 == 0 { l } else { !l })
                })
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        at(false) - at(true)
    }

    /// Whether every complex root is real (checked on the square-free part).
    pub fn is_real_rooted(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            Some(_) => {
                let g = self.gcd(&self.derivative());
                let sf = self.divrem(&g).0;
                sf.distinct_real_roots() == sf.degree().unwrap_or(0)
            }
        }
    }

    /// `(positive, negative, zero)` root counts with multiplicity, exact when
    /// the polynomial is real-rooted (Descartes' bound is then attained).
    pub fn root_sign_counts(&self) -> Option<(usize, usize, usize)> {
        if !self.is_real_rooted() {
            return None;
        }
        let z = self.zero_multiplicity();
        let rest = self.shift_down(z);
        Some((rest.sign_variations(), rest.reflect().sign_variations(), z))
    }
}

/// Simultaneous root finding (Aberth-Ehrlich) followed by Newton polishing.
/// Intended for square-free input; returns `degree` roots.
pub fn roots(p: &Poly<Cf>) -> Vec<Cf> {
    let Some(n) = p.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let p = p.monic();
    if n == 1 {
        return vec![-p.coeffs()[0]];
    }
    let dp = p.derivative();
    let bound = 1.0 + p.coeffs()[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Cf> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Cf::from_polar(0.5 * bound, t)
        })
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let f = p.eval(&z[k]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / dp.eval(&z[k]);
            let repulsion: Cf = (0..n).filter(|&j| j != k).map(|j| Cf::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let step = ratio / (Cf::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = dp.eval(r);
            if d.norm() == 0.0 {
                break;
            }
            let step = p.eval(r) / d;
            if step.is_finite() {
                *r -= step;
            }
        }
    }
    z
}
