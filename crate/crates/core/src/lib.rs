//! Numerical toolkit for Hadamard products of holomorphic germs and the local
//! monodromy of their isolated singularities.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: contour and endpoint-singular quadrature, complex gamma.
//! * [`germs`]: truncated power series, Taylor shifts, Hadamard coefficient products.
//! * [`continuation`]: paths, analytic elements, branch tracking, monodromy operators.
//! * [`convolution`]: Plancherel-Hadamard contour evaluation, the bar-star convolution
//!   and two-sided residuals of the monodromy identities.
//! * [`zoo`]: closed-form families with exact singularity data.

pub mod continuation;
pub mod convolution;
pub mod error;
pub mod germs;
pub mod numerics;
pub mod poly;
pub mod zoo;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
