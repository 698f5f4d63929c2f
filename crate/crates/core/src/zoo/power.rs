use std::f64::consts::TAU;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::phase::PhaseLog;
use crate::continuation::{continue_germ, AnalyticElement, Path, StepPolicy, Tracker};
use crate::error::Result;
use crate::germs::HyperSeries;
use crate::numerics::Point;

/// `scale · (1 − z/α)^{-a}` on the branch selected by continuation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerBranch {
    pub alpha: Complex64,
    pub a: Complex64,
    pub scale: Complex64,
}

impl PowerBranch {
    pub fn new(alpha: Complex64, a: Complex64) -> Self {
        Self { alpha, a, scale: Complex64::new(1.0, 0.0) }
    }

    pub fn scaled(self, s: Complex64) -> Self {
        Self { scale: self.scale * s, ..self }
    }

    /// Integrable at `α` exactly when `Re a < 1`.
    pub fn is_integrable(&self) -> bool {
        self.a.re < 1.0
    }
}

#[derive(Debug, Clone)]
struct PowerTracker {
    log: PhaseLog,
    a: Complex64,
    scale: Complex64,
}

impl Tracker for PowerTracker {
    fn position(&self) -> Point {
        self.log.position
    }

    fn value(&self) -> Complex64 {
        self.scale * (-self.a * self.log.value()).exp()
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        self.log.advance(to);
        Ok(())
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }

    fn taylor(&self, len: usize) -> Option<Vec<Complex64>> {
        // (1 − z/α)^{-a} = v · (1 − w/(α − c))^{-a} around c
        let inv = 1.0 / self.log.alpha_minus_z();
        let mut t = self.value();
        let mut out = Vec::with_capacity(len);
        for n in 0..len {
            out.push(t);
            t = t * (self.a + n as f64) / (n + 1) as f64 * inv;
        }
        Some(out)
    }
}

impl AnalyticElement for PowerBranch {
    fn singularities(&self) -> Vec<Complex64> {
        vec![self.alpha]
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Ok(Box::new(PowerTracker { log: PhaseLog::new(self.alpha, p), a: self.a, scale: self.scale }))
    }

    fn hyper_terms(&self) -> Option<Vec<HyperSeries>> {
        Some(vec![HyperSeries::power_branch(self.alpha, self.a).ok()?.with_scale(self.scale)])
    }

    fn is_zero(&self) -> bool {
        self.scale == Complex64::new(0.0, 0.0)
    }
}

/// `scale · log(1 − z/α)` on the branch selected by continuation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogBranch {
    pub alpha: Complex64,
    pub scale: Complex64,
}

#[derive(Debug, Clone)]
struct LogTracker {
    log: PhaseLog,
    scale: Complex64,
}

impl Tracker for LogTracker {
    fn position(&self) -> Point {
        self.log.position
    }

    fn value(&self) -> Complex64 {
        self.scale * self.log.value()
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        self.log.advance(to);
        Ok(())
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }
}

impl AnalyticElement for LogBranch {
    fn singularities(&self) -> Vec<Complex64> {
        vec![self.alpha]
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Ok(Box::new(LogTracker { log: PhaseLog::new(self.alpha, p), scale: self.scale }))
    }
}

/// The `k`-th branch of a power branch around its singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSigma {
    /// `Σ^k p`, i.e. `p` with its scale multiplied by `prefactor`.
    pub branch: PowerBranch,
    pub prefactor: Complex64,
    /// Scalar with `Δ Σ^k p = delta_prefactor · p`.
    pub delta_prefactor: Complex64,
}

/// The sign `s` with `Σ (1 − z)^{-a} = e^{s·2πia} (1 − z)^{-a}` for one
/// counterclockwise loop, measured once by numerical continuation at `a = 1/3`.
pub fn orientation_sign() -> f64 {
    static SIGN: OnceLock<f64> = OnceLock::new();
    *SIGN.get_or_init(|| {
        let one = Complex64::new(1.0, 0.0);
        let p = PowerBranch::new(one, Complex64::new(1.0 / 3.0, 0.0));
        let base = Point::at(Complex64::new(0.5, 0.0));
        let before = p.eval(base).expect("closed form");
        let after = continue_germ(&p, &Path::loop_around(one, base, 1), &StepPolicy::default())
            .expect("loop avoids the singularity")
            .value();
        let ratio = after / before;
        let minus = Complex64::from_polar(1.0, -TAU / 3.0);
        if (ratio - minus).norm() < 1e-12 {
            -1.0
        } else {
            1.0
        }
    })
}

/// Exact `Σ^k` of a power branch: multiplication by `e^{s·2πika}`.
pub fn power_sigma_exact(p: &PowerBranch, k: i32) -> PowerSigma {
    let s = orientation_sign();
    let phase = |m: f64| (Complex64::new(0.0, s * TAU * m) * p.a).exp();
    let prefactor = phase(k as f64);
    PowerSigma {
        branch: p.scaled(prefactor),
        prefactor,
        delta_prefactor: prefactor * (phase(1.0) - 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn counterclockwise_loop_multiplies_by_minus_phase() {
        assert_eq!(orientation_sign(), -1.0);
    }

    #[test]
    fn sigma_prefactors() {
        let half = PowerBranch::new(c(1.0, 0.0), c(0.5, 0.0));
        assert!((power_sigma_exact(&half, 1).prefactor + 1.0).norm() < 1e-15);
        assert_eq!(power_sigma_exact(&half, 0).prefactor, c(1.0, 0.0));
        let third = PowerBranch::new(c(1.0, 0.0), c(1.0 / 3.0, 0.0));
        let d = power_sigma_exact(&third, 1).delta_prefactor;
        assert!((d.norm() - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn principal_value_and_taylor_data() {
        let p = PowerBranch::new(c(2.0, 0.0), c(0.5, 0.0));
        let z = c(0.4, 0.3);
        let v = p.eval(Point::at(z)).unwrap();
        assert!((v - (1.0 - z / 2.0).powc(c(-0.5, 0.0))).norm() < 1e-15);
        let t = p.start(Point::at(z)).unwrap();
        let coeffs = t.taylor(3).unwrap();
        let w = c(0.01, -0.02);
        let approx = coeffs[0] + coeffs[1] * w + coeffs[2] * w * w;
        let exact = (1.0 - (z + w) / 2.0).powc(c(-0.5, 0.0));
        assert!((approx - exact).norm() < 1e-6);
    }
}
