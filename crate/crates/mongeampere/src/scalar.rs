//! Coefficient fields.
//!
//! Everything in the crate is generic over [`Field`]. The exact field is the
//! Gaussian rationals `Complex<BigRational>`; the inexact ones are
//! `Complex<f64>` and `Complex<f32>`. [`Scalar`] carries either mode at run
//! time and promotes to inexact when the two are mixed.

use std::fmt::{self, Debug};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Cf, Cq};

/// A (complex) coefficient field.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The imaginary unit.
    fn i() -> Self;
    fn conj(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
    /// Embeds a Gaussian rational (lossy for the float fields).
    fn from_exact(c: &Cq) -> Self;
    fn to_c64(&self) -> Cf;
    /// Whether arithmetic in this value was lossless so far.
    fn is_exact(&self) -> bool;
    /// Zero test used when comparing results: exact zero for exact values,
    /// `|x| <= tol` otherwise.
    fn is_negligible(&self, tol: f64) -> bool {
        if self.is_exact() {
            self.is_zero()
        } else {
            self.to_c64().norm() <= tol
        }
    }
    /// Magnitude used for pivot selection.
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
    fn scale_i64(&self, k: i64) -> Self {
        self.clone() * Self::from_i64(k)
    }
}

/// Gaussian rational `a/b + (c/d) i`.
pub fn cq(re: (i64, i64), im: (i64, i64)) -> Cq {
    Complex::new(rat(re.0, re.1), rat(im.0, im.1))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // huge numerator or denominator: rescale by bit length first
            let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
            let s = shift.max(0) as usize;
            let n = (r.numer() >> s).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> s).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

impl Field for Cq {
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(rat(num, den), BigRational::zero())
    }
    fn from_exact(c: &Cq) -> Self {
        c.clone()
    }
    fn to_c64(&self) -> Cf {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn magnitude(&self) -> f64 {
        // any nonzero pivot is fine in exact arithmetic; prefer small heights
        if self.is_zero() {
            0.0
        } else {
            1.0 / (1.0 + (self.re.numer().bits() + self.re.denom().bits() + self.im.numer().bits()) as f64)
        }
    }
}

macro_rules! float_field {
    ($t:ty) => {
        impl Field for Complex<$t> {
            fn i() -> Self {
                Complex::new(0.0, 1.0)
            }
            fn conj(&self) -> Self {
                Complex::conj(self)
            }
            fn from_i64(n: i64) -> Self {
                Complex::new(n as $t, 0.0)
            }
            fn from_exact(c: &Cq) -> Self {
                Complex::new(rational_to_f64(&c.re) as $t, rational_to_f64(&c.im) as $t)
            }
            fn to_c64(&self) -> Cf {
                Complex::new(self.re as f64, self.im as f64)
            }
            fn is_exact(&self) -> bool {
                false
            }
        }
    };
}

float_field!(f64);
float_field!(f32);

/// Run-time tagged scalar. Operations between two exact values stay exact;
/// anything touching an inexact value becomes inexact.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Exact(Cq),
    Inexact(Cf),
}

impl Scalar {
    fn as_c64(&self) -> Cf {
        match self {
            Scalar::Exact(c) => c.to_c64(),
            Scalar::Inexact(c) => *c,
        }
    }

    pub fn exact(&self) -> Option<&Cq> {
        match self {
            Scalar::Exact(c) => Some(c),
            Scalar::Inexact(_) => None,
        }
    }
}

impl Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => write!(f, "{}", format_exact(c)),
            Scalar::Inexact(c) => write!(f, "~({}{:+}i)", c.re, c.im),
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.$m(b)),
                    (a, b) => Scalar::Inexact(a.as_c64().$m(b.as_c64())),
                }
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Inexact(a) => Scalar::Inexact(-a),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Exact(Cq::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Inexact(c) => c.is_zero(),
        }
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Exact(Cq::one())
    }
}

impl Field for Scalar {
    fn i() -> Self {
        Scalar::Exact(<Cq as Field>::i())
    }
    fn conj(&self) -> Self {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.conj()),
            Scalar::Inexact(c) => Scalar::Inexact(c.conj()),
        }
    }
    fn from_i64(n: i64) -> Self {
        Scalar::Exact(<Cq as Field>::from_i64(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(<Cq as Field>::from_ratio(num, den))
    }
    fn from_exact(c: &Cq) -> Self {
        Scalar::Exact(c.clone())
    }
    fn to_c64(&self) -> Cf {
        self.as_c64()
    }
    fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
}

impl From<Cf> for Scalar {
    fn from(c: Cf) -> Self {
        Scalar::Inexact(c)
    }
}

impl From<Cq> for Scalar {
    fn from(c: Cq) -> Self {
        Scalar::Exact(c)
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// `2i` for integers, `2/3*i` otherwise so the text parses back unambiguously
fn imag_tail(x: &BigRational) -> String {
    if x.is_integer() {
        format!("{}i", x.numer())
    } else {
        format!("{}*i", format_rational(x))
    }
}

/// `3/2`, `-i`, `(1+2i)`, `2/3i` style rendering of a Gaussian rational.
pub fn format_exact(c: &Cq) -> String {
    let (re, im) = (&c.re, &c.im);
    if im.is_zero() {
        return format_rational(re);
    }
    let imag = |x: &BigRational| -> String {
        if x.is_one() {
            "i".into()
        } else if (-x).is_one() {
            "-i".into()
        } else {
            imag_tail(x)
        }
    };
    if re.is_zero() {
        return imag(im);
    }
    let sign = if im.is_negative() { "-" } else { "+" };
    let abs_im = im.abs();
    let tail = if abs_im.is_one() { "i".to_string() } else { imag_tail(&abs_im) };
    format!("({}{}{})", format_rational(re), sign, tail)
}

/// Rendering of any field element; exact values use [`format_exact`].
pub fn format_scalar<S: Field>(s: &S) -> String {
    let c = s.to_c64();
    if s.is_exact() {
        // round-trip through the float only for display of exact values is
        // lossy, so reconstruct from the exact payload when available
        if let Some(e) = exact_payload(s) {
            return format_exact(&e);
        }
    }
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

fn exact_payload<S: Field>(s: &S) -> Option<Cq> {
    let any: &dyn std::any::Any = s;
    if let Some(c) = any.downcast_ref::<Cq>() {
        return Some(c.clone());
    }
    if let Some(Scalar::Exact(c)) = any.downcast_ref::<Scalar>() {
        return Some(c.clone());
    }
    None
}

/// Exact payload of a field element, if it has one.
pub fn to_exact<S: Field>(s: &S) -> Option<Cq> {
    exact_payload(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixing_promotes() {
        let a = Scalar::from_ratio(1, 3);
        let b = Scalar::from(Complex::new(0.5, 0.0));
        assert!(a.is_exact());
        let c = a.clone() + b;
        assert!(!c.is_exact());
        assert!((c.to_c64().re - (1.0 / 3.0 + 0.5)).abs() < 1e-15);
        assert!((a.clone() * a).is_exact());
    }

    #[test]
    fn exact_formatting() {
        assert_eq!(format_exact(&cq((3, 2), (0, 1))), "3/2");
        assert_eq!(format_exact(&cq((0, 1), (-1, 1))), "-i");
        assert_eq!(format_exact(&cq((1, 1), (2, 1))), "(1+2i)");
        assert_eq!(format_exact(&cq((-1, 8), (-1, 4))), "(-1/8-1/4*i)");
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigRational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399) * 4);
        assert!((rational_to_f64(&big) - 2.5).abs() < 1e-12);
    }
}
