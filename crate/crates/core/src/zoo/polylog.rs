use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::{AnalyticElement, HolonomicElement, LinearSystem, Tracker};
use crate::error::{Error, Result};
use crate::numerics::{segment_integral_delta, two_pi_i, Point, QuadratureConfig};

/// Radius inside which polylogarithms are summed from their series.
pub const POLYLOG_SERIES_RADIUS: f64 = 0.5;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `Li_k`, or `li_k = −Li_k/2πi` when `normalized`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolylogElement {
    pub k: u32,
    pub normalized: bool,
}

impl PolylogElement {
    pub fn new(k: u32, normalized: bool) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("polylogarithm order must be positive".into()));
        }
        Ok(Self { k, normalized })
    }

    fn scale(&self) -> Complex64 {
        if self.normalized {
            -1.0 / two_pi_i()
        } else {
            c(1.0)
        }
    }

    /// The system `z(1 − z) Y' = M Y` for `Y = (1, Li_1, …, Li_k)`.
    pub fn system(&self) -> LinearSystem {
        let k = self.k as usize;
        let zero = vec![c(0.0)];
        let mut m = vec![vec![zero.clone(); k + 1]; k + 1];
        m[1][0] = vec![c(0.0), c(1.0)];
        for j in 2..=k {
            m[j][j - 1] = vec![c(1.0), c(-1.0)];
        }
        LinearSystem::new(vec![c(0.0), c(1.0), c(-1.0)], m)
    }

    fn holonomic(&self) -> HolonomicElement {
        let k = self.k;
        let initial = Arc::new(move |z: Complex64| {
            let mut y = vec![c(1.0)];
            y.extend((1..=k).map(|j| polylog_series(j, z)));
            y
        });
        HolonomicElement::new(self.system(), k as usize, POLYLOG_SERIES_RADIUS, initial, vec![c(1.0)], format!("Li{k}"))
    }
}

/// `Σ z^n / n^k`, summed until the terms drop below rounding (`|z| < 1`).
pub fn polylog_series(k: u32, z: Complex64) -> Complex64 {
    let mut acc = c(0.0);
    let mut zn = z;
    for n in 1..100_000u32 {
        let term = zn / (n as f64).powi(k as i32);
        acc += term;
        if term.norm() <= 1e-18 * acc.norm().max(1e-300) {
            break;
        }
        zn *= z;
    }
    acc
}

#[derive(Clone)]
struct ScaledTracker {
    inner: Box<dyn Tracker>,
    scale: Complex64,
}

impl Tracker for ScaledTracker {
    fn position(&self) -> Point {
        self.inner.position()
    }

    fn value(&self) -> Complex64 {
        self.scale * self.inner.value()
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        self.inner.advance(to)
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }

    fn err_estimate(&self) -> f64 {
        self.scale.norm() * self.inner.err_estimate()
    }

    fn taylor(&self, len: usize) -> Option<Vec<Complex64>> {
        Some(self.inner.taylor(len)?.into_iter().map(|v| v * self.scale).collect())
    }
}

impl AnalyticElement for PolylogElement {
    fn singularities(&self) -> Vec<Complex64> {
        vec![c(1.0)]
    }

    fn sheet_singularities(&self) -> Vec<Complex64> {
        vec![c(0.0), c(1.0)]
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Ok(Box::new(ScaledTracker { inner: Box::new(self.holonomic().tracker_at(p)?), scale: self.scale() }))
    }
}

/// Principal `Li_k(z)` (or `li_k`), cut along `[1, ∞)`: the series inside
/// `|z| ≤ 0.5`, otherwise `Li_k(z_0) + ∫_{z_0}^z Li_{k−1}(u) du/u` from the
/// series anchor `z_0` on the ray through `z`, ending at `Li_1 = −log(1 − u)`.
pub fn polylog_eval(p: &PolylogElement, z: Point, config: &QuadratureConfig) -> Result<Complex64> {
    Ok(p.scale() * principal_polylog(p.k, z, config)?)
}

fn principal_polylog(k: u32, z: Point, config: &QuadratureConfig) -> Result<Complex64> {
    let zv = z.value();
    let r = zv.norm();
    if k == 1 && r > POLYLOG_SERIES_RADIUS {
        // −log(1 − z), exact near z = 1 when the point is anchored there.
        return Ok(-(-z.minus(c(1.0))).ln());
    }
    if r <= POLYLOG_SERIES_RADIUS {
        return Ok(polylog_series(k, zv));
    }
    if zv.im == 0.0 && zv.re > 1.0 {
        return Err(Error::Domain(format!("{zv} lies on the cut [1, ∞)")));
    }
    let z0 = zv * (POLYLOG_SERIES_RADIUS / r);
    let mut failure = None;
    let integral = segment_integral_delta(
        |s| {
            // Distances to the far end are kept relative to `z`'s anchor.
            let u = Point::new(z.anchor, z.minus(z.anchor) + s.from_b);
            match principal_polylog(k - 1, u, config) {
                Ok(v) => v / s.u,
                Err(e) => {
                    failure.get_or_insert(e);
                    Complex64::new(f64::NAN, 0.0)
                }
            }
        },
        z0,
        z.minus(z0),
        config,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(polylog_series(k, z0) + integral?)
}

/// `Δ_1 Li_k(z) = −2πi (log z)^{k−1}/(k−1)!` with the principal logarithm.
pub fn polylog_delta_exact(k: u32, z: Complex64) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::InvalidInput("polylogarithm order must be positive".into()));
    }
    if z.norm() == 0.0 {
        return Err(Error::Domain("log z at z = 0".into()));
    }
    let fact: f64 = (1..k).map(|j| j as f64).product();
    Ok(-two_pi_i() * z.ln().powu(k - 1) / fact)
}
