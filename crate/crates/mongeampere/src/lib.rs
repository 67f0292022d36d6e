//! Symplectic Monge-Ampère equations in four variables and their complex
//! reductions.
//!
//! The crate works on the phase space ℝ⁸ with coordinates
//! `(q1, p1, ..., q4, p4)`. All algebra is generic over [`Field`]; use
//! [`Cq`] (Gaussian rationals) for exact results and [`Cf`] when irrational
//! constants appear.

pub mod bieffective;
pub mod equations;
pub mod error;
pub mod exterior;
pub mod expr;
pub mod hermitian;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod solutions;
pub mod structures;
pub mod symplectic;
pub mod tables;

use num_complex::Complex;
use num_rational::BigRational;

pub use error::Error;
pub use exterior::{interior, pullback, Blade, Form, LinearMap, Polyvector};
pub use linalg::Matrix;
pub use scalar::{Field, Scalar};
pub use symplectic::{SymplecticForm, SymplecticPair};

/// Exact coefficients: Gaussian rationals.
pub type Cq = Complex<BigRational>;
/// Double-precision complex coefficients.
pub type Cf = Complex<f64>;

pub type ExactForm = Form<Cq>;
pub type FloatForm = Form<Cf>;
pub type ExactMatrix = Matrix<Cq>;
pub type FloatMatrix = Matrix<Cf>;
