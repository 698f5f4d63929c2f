use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::element::AnalyticElement;
use crate::numerics::Point;

/// Threshold below which `|(z − α) F(z)|` counts as vanished.
pub const INTEGRABILITY_TOL: f64 = 1e-5;

/// Samples of `|(z − α) F(z)|` along one ray into the singularity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RaySamples {
    /// Angle of the ray relative to the reference direction (towards the origin).
    pub angle: f64,
    pub distances: Vec<f64>,
    pub magnitudes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrabilityReport {
    pub integrable: bool,
    pub rays: Vec<RaySamples>,
    /// Set when sampling failed or the decay was not monotone.
    pub note: Option<String>,
}

/// Stolz-sector test of `(z − α) F(z) → 0` with the default threshold.
pub fn integrability_check(f: &dyn AnalyticElement, alpha: Complex64) -> IntegrabilityReport {
    integrability_check_with(f, alpha, INTEGRABILITY_TOL)
}

/// Samples `|(z − α) F(z)|` on three rays at angles `−π/4, 0, π/4` from the
/// direction towards the origin, at distances shrinking by `10^4` per sample
/// down to about `1e-300`. The singularity is integrable when every ray decays
/// monotonically to below `tol`.
pub fn integrability_check_with(f: &dyn AnalyticElement, alpha: Complex64, tol: f64) -> IntegrabilityReport {
    let reference = if alpha.norm() > 0.0 { (-alpha).arg() } else { 0.0 };
    let others = f
        .sheet_singularities()
        .into_iter()
        .chain(std::iter::once(Complex64::new(0.0, 0.0)))
        .map(|s| (s - alpha).norm())
        .filter(|d| *d > 1e-12 * (1.0 + alpha.norm()))
        .fold(f64::INFINITY, f64::min);
    let r0 = if others.is_finite() { 0.5 * others } else { 0.5 };
    let mut rays = Vec::new();
    let mut integrable = true;
    let mut note = None;
    for delta in [-FRAC_PI_4, 0.0, FRAC_PI_4] {
        let dir = Complex64::from_polar(1.0, reference + delta);
        let mut samples = RaySamples { angle: delta, distances: Vec::new(), magnitudes: Vec::new() };
        let mut tracker = match f.start(Point::new(alpha, dir * r0)) {
            Ok(t) => t,
            Err(e) => {
                integrable = false;
                note = Some(format!("evaluation failed: {e}"));
                rays.push(samples);
                continue;
            }
        };
        let mut r = r0;
        while r > 1e-300 * r0.max(1.0) {
            if let Err(e) = tracker.advance(Point::new(alpha, dir * r)) {
                integrable = false;
                note = Some(format!("continuation towards the singularity failed at distance {r:e}: {e}"));
                break;
            }
            samples.distances.push(r);
            samples.magnitudes.push(r * tracker.value().norm());
            r *= 1e-4;
        }
        let m = &samples.magnitudes;
        let monotone = m.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9) + 1e-300);
        if !monotone {
            integrable = false;
            note.get_or_insert_with(|| format!("non-monotone decay on ray at angle {delta}"));
        }
        if m.last().is_none_or(|v| !(*v < tol)) {
            integrable = false;
        }
        rays.push(samples);
    }
    IntegrabilityReport { integrable, rays, note }
}
