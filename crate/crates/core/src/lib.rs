//! Numerical toolkit for complex symmetry of Toeplitz operators on the Hardy space.
//!
//! Symbols, Blaschke products and conjugations are represented concretely
//! (Fourier coefficient tables, zero lists, matrices acting as `x -> M conj(x)`),
//! and every equivalence that can be checked on finite sections is exposed as a
//! decision procedure or a residual.

pub mod conjugation;
pub mod error;
pub mod fourier;
pub mod hardy;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod sampling;
pub mod series;
pub mod suites;
pub mod symbol;
pub mod symmetry;
pub mod winding;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);

/// `c` from real and imaginary parts.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
