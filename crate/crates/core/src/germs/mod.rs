//! Truncated power-series germs: evaluation, Taylor shifts, Hadamard
//! coefficient products and radius estimates.

mod cache;
mod hyper;

pub use cache::{read_coeff_csv, write_coeff_csv};
pub use hyper::HyperSeries;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Truncation length for series whose singularity lies on the circle of convergence.
pub const M_ON_CIRCLE: usize = 4096;
/// Truncation length for every other series.
pub const M_DEFAULT: usize = 256;

/// Coefficients `A_0..A_{M-1}` of a power series at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffSeries {
    pub coefficients: Vec<Complex64>,
    /// Radius of convergence; `None` means unbounded.
    pub declared_radius: Option<f64>,
}

impl CoeffSeries {
    pub fn new(coefficients: Vec<Complex64>, declared_radius: Option<f64>) -> Self {
        Self { coefficients, declared_radius }
    }

    /// `Σ (z/ρ)^n` with `ρ = 1/ratio`, i.e. `A_n = ratio^n`.
    pub fn geometric(ratio: Complex64, m: usize) -> Self {
        let mut a = Vec::with_capacity(m);
        let mut t = Complex64::new(1.0, 0.0);
        for _ in 0..m {
            a.push(t);
            t *= ratio;
        }
        let r = ratio.norm();
        Self::new(a, if r == 0.0 { None } else { Some(1.0 / r) })
    }

    /// Coefficients of `exp(z)`.
    pub fn exp(m: usize) -> Self {
        let mut a = Vec::with_capacity(m);
        let mut t = 1.0;
        for n in 0..m {
            a.push(Complex64::new(t, 0.0));
            t /= (n + 1) as f64;
        }
        Self::new(a, None)
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Horner sum of the truncated series at `z`.
    pub fn sum(&self, z: Complex64) -> Complex64 {
        poly::eval(&self.coefficients, z)
    }

    /// The germ at the origin with trust radius taken from the declared or estimated radius.
    pub fn to_germ(&self) -> Germ {
        let radius = self
            .declared_radius
            .or_else(|| radius_estimate(self))
            .unwrap_or(f64::INFINITY);
        Germ::new(Complex64::new(0.0, 0.0), self.coefficients.clone(), radius)
    }
}

/// A truncated Taylor expansion at `center`, trusted on the open disk of radius `trust_radius`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Germ {
    pub center: Complex64,
    pub coefficients: Vec<Complex64>,
    pub trust_radius: f64,
    pub err_bound: f64,
}

/// A germ value together with its truncation-tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GermValue {
    pub value: Complex64,
    pub tail_estimate: f64,
}

impl Germ {
    pub fn new(center: Complex64, coefficients: Vec<Complex64>, trust_radius: f64) -> Self {
        let trust_radius = if coefficients.len() <= 1 { f64::INFINITY } else { trust_radius };
        Self { center, coefficients, trust_radius, err_bound: 0.0 }
    }

    pub fn constant(center: Complex64, value: Complex64) -> Self {
        Self::new(center, vec![value], f64::INFINITY)
    }

    pub fn value_at_center(&self) -> Complex64 {
        self.coefficients.first().copied().unwrap_or_default()
    }

    /// Coefficientwise difference; the shorter germ is padded with zeros.
    pub fn sub(&self, other: &Germ) -> Germ {
        let n = self.coefficients.len().max(other.coefficients.len());
        let coefficients = (0..n)
            .map(|i| {
                self.coefficients.get(i).copied().unwrap_or_default()
                    - other.coefficients.get(i).copied().unwrap_or_default()
            })
            .collect();
        Germ {
            center: self.center,
            coefficients,
            trust_radius: self.trust_radius.min(other.trust_radius),
            err_bound: self.err_bound + other.err_bound,
        }
    }

    /// Largest coefficient distance `|a_n − b_n| r^n` on a disk of radius `r`.
    pub fn distance(&self, other: &Germ, r: f64) -> f64 {
        let d = self.sub(other);
        let mut pow = 1.0;
        let mut out = 0.0_f64;
        for c in &d.coefficients {
            out = out.max(c.norm() * pow);
            pow *= r;
        }
        out
    }
}

/// Coefficientwise product `(A_n B_n)`, truncated to the shorter series.
pub fn hadamard_coeffs(f: &CoeffSeries, g: &CoeffSeries) -> CoeffSeries {
    let coefficients = f.coefficients.iter().zip(&g.coefficients).map(|(a, b)| a * b).collect();
    let declared_radius = match (f.declared_radius, g.declared_radius) {
        (Some(a), Some(b)) => Some(a * b),
        _ => None,
    };
    CoeffSeries { coefficients, declared_radius }
}

/// Horner evaluation at `z` with a geometric tail estimate.
pub fn germ_eval(g: &Germ, z: Complex64) -> Result<GermValue> {
    let w = z - g.center;
    let r = w.norm();
    if !(r < g.trust_radius) {
        return Err(Error::OutOfDisk { z, center: g.center, radius: g.trust_radius });
    }
    let value = poly::eval(&g.coefficients, w);
    Ok(GermValue { value, tail_estimate: tail_estimate(g, r) })
}

fn tail_estimate(g: &Germ, r: f64) -> f64 {
    let m = g.coefficients.len();
    if m == 0 || r == 0.0 {
        return 0.0;
    }
    let last = g.coefficients[m - 1].norm() * r.powi(m as i32 - 1);
    if g.trust_radius.is_finite() {
        let rho = r / g.trust_radius;
        last * rho / (1.0 - rho)
    } else {
        last
    }
}

/// Taylor shift of `g` to the new center `c_new`.
///
/// The step must satisfy `|c_new − center| ≤ θ·trust_radius`.
pub fn recenter(g: &Germ, c_new: Complex64, theta: f64) -> Result<Germ> {
    let step = (c_new - g.center).norm();
    if step == 0.0 {
        return Ok(g.clone());
    }
    let limit = theta * g.trust_radius;
    if step > limit {
        return Err(Error::StepViolation { step, limit });
    }
    let coefficients = poly::taylor_shift(&g.coefficients, c_new - g.center);
    let mut pow = 1.0;
    let mut mass = 0.0;
    for c in &g.coefficients {
        mass += c.norm() * pow;
        pow *= step;
    }
    let added = tail_estimate(g, step) + f64::EPSILON * mass;
    Ok(Germ {
        center: c_new,
        coefficients,
        trust_radius: g.trust_radius - step,
        err_bound: g.err_bound + added,
    })
}

/// Radius of convergence from the root test on the last third of the coefficients.
///
/// Returns `None` (unbounded) when the tail vanishes.
pub fn radius_estimate(s: &CoeffSeries) -> Option<f64> {
    let m = s.coefficients.len();
    if m < 2 {
        return None;
    }
    let start = (2 * m / 3).max(1);
    let limsup = s.coefficients[start..]
        .iter()
        .enumerate()
        .map(|(i, c)| (c.norm().ln() / (start + i) as f64).exp())
        .fold(0.0_f64, f64::max);
    if limsup == 0.0 {
        None
    } else {
        Some(1.0 / limsup)
    }
}

/// Taylor coefficients from samples `values[j] = f(center + r e^{2πij/N})`.
pub fn cauchy_coefficients(values: &[Complex64], radius: f64, len: usize) -> Vec<Complex64> {
    let n = values.len();
    let mut out = Vec::with_capacity(len);
    let mut scale = 1.0;
    for k in 0..len {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            let phase = -std::f64::consts::TAU * ((j * k) % n) as f64 / n as f64;
            acc += v * Complex64::from_polar(1.0, phase);
        }
        out.push(acc / (n as f64 * scale));
        scale *= radius;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn germ_eval_at_center_is_first_coefficient() {
        let g = Germ::new(c(0.3), vec![c(2.5), c(1.0), c(-4.0)], 1.0);
        assert_eq!(germ_eval(&g, c(0.3)).unwrap().value, c(2.5));
    }

    #[test]
    fn germ_eval_outside_disk_fails() {
        let g = CoeffSeries::geometric(c(1.0), 64).to_germ();
        assert!(matches!(germ_eval(&g, c(1.5)), Err(Error::OutOfDisk { .. })));
    }

    #[test]
    fn geometric_recentered() {
        let g = CoeffSeries::geometric(c(1.0), 200).to_germ();
        let h = recenter(&g, c(0.5), 0.6).unwrap();
        assert_eq!(h.trust_radius, 0.5);
        let mut want = 2.0;
        for k in 0..10 {
            assert!((h.coefficients[k] - want).norm() / want < 1e-12, "k={k}");
            want *= 2.0;
        }
        assert!(h.err_bound >= g.err_bound);
    }

    #[test]
    fn recenter_step_violation() {
        let g = CoeffSeries::geometric(c(1.0), 64).to_germ();
        assert!(matches!(recenter(&g, c(0.5), 0.4), Err(Error::StepViolation { .. })));
        assert_eq!(recenter(&g, c(0.0), 0.4).unwrap(), g);
    }

    #[test]
    fn short_series_are_constants() {
        let s = CoeffSeries::new(vec![c(3.0)], None);
        let g = s.to_germ();
        assert!(g.trust_radius.is_infinite());
        assert_eq!(germ_eval(&g, c(100.0)).unwrap().value, c(3.0));
        let e = CoeffSeries::new(vec![], None);
        assert_eq!(germ_eval(&e.to_germ(), c(1.0)).unwrap().value, c(0.0));
        assert_eq!(radius_estimate(&e), None);
    }
}
