use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CoeffSeries;
use crate::error::{Error, Result};

/// A series whose coefficient ratio is rational in the index:
/// `A_{n+1}/A_n = Π(n + a_i) / (γ Π(n + b_j))`, `A_0 = scale`.
///
/// The class contains the power branches `(1 − z/α)^{-a}` and the Gauss
/// functions, and is closed under the Hadamard product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperSeries {
    pub num: Vec<Complex64>,
    pub den: Vec<Complex64>,
    /// The finite singularity `γ`.
    pub singularity: Complex64,
    pub scale: Complex64,
}

impl HyperSeries {
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>, singularity: Complex64, scale: Complex64) -> Result<Self> {
        if singularity.norm() == 0.0 {
            return Err(Error::InvalidInput("hypergeometric singularity must be nonzero".into()));
        }
        if let Some(b) = den.iter().find(|b| b.im == 0.0 && b.re <= 0.0 && b.re == b.re.round()) {
            return Err(Error::Domain(format!("denominator parameter {b} is a non-positive integer")));
        }
        Ok(Self { num, den, singularity, scale })
    }

    /// `(1 − z/α)^{-a}`.
    pub fn power_branch(alpha: Complex64, a: Complex64) -> Result<Self> {
        Self::new(vec![a], vec![Complex64::new(1.0, 0.0)], alpha, Complex64::new(1.0, 0.0))
    }

    /// The Gauss function `F(a, b; c; z)`.
    pub fn gauss(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        Self::new(vec![a, b], vec![c, Complex64::new(1.0, 0.0)], Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    /// The Hadamard product, obtained by concatenating the parameter lists.
    pub fn hadamard(&self, other: &HyperSeries) -> HyperSeries {
        HyperSeries {
            num: self.num.iter().chain(&other.num).copied().collect(),
            den: self.den.iter().chain(&other.den).copied().collect(),
            singularity: self.singularity * other.singularity,
            scale: self.scale * other.scale,
        }
    }

    pub fn with_scale(&self, scale: Complex64) -> HyperSeries {
        HyperSeries { scale: self.scale * scale, ..self.clone() }
    }

    /// True when some numerator parameter is a non-positive integer, i.e. the series terminates.
    pub fn terminates(&self) -> bool {
        self.num.iter().any(|a| a.im == 0.0 && a.re <= 0.0 && a.re == a.re.round())
    }

    pub fn coefficients(&self, m: usize) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(m);
        let mut t = self.scale;
        for n in 0..m {
            out.push(t);
            let nf = n as f64;
            let mut num = Complex64::new(1.0, 0.0);
            for a in &self.num {
                num *= a + nf;
            }
            let mut den = self.singularity;
            for b in &self.den {
                den *= b + nf;
            }
            t = t * num / den;
        }
        out
    }

    pub fn to_coeff_series(&self, m: usize) -> CoeffSeries {
        let radius = if self.terminates() { None } else { Some(self.singularity.norm()) };
        CoeffSeries::new(self.coefficients(m), radius)
    }
}
