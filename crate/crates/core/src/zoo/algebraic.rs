use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::{AnalyticElement, Tracker};
use crate::error::{Error, Result};
use crate::numerics::Point;
use crate::poly::{self, Poly};

/// Closest allowed approach of two roots during tracking.
pub const ROOT_SEPARATION: f64 = 1e-6;
const STEP_FRACTION: f64 = 0.2;
const MIN_STEP: f64 = 1e-14;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A root `w(z)` of `P(z, w) = Σ_j c_j(z) w^j`, fixed at a base point and
/// continued along straight segments from there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicElement {
    /// `c_j(z)` for `j = 0..=degree`.
    pub coefficients: Vec<Poly>,
    pub branch_points: Vec<Complex64>,
    pub base: Complex64,
    pub root: Complex64,
}

impl AlgebraicElement {
    pub fn new(coefficients: Vec<Poly>, branch_points: Vec<Complex64>, base: Complex64, root: Complex64) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::InvalidInput("defining polynomial must have degree ≥ 1 in w".into()));
        }
        let el = Self { coefficients, branch_points, base, root };
        let p = el.in_w(base);
        if poly::eval(&p, root).norm() > 1e-10 * (1.0 + poly::eval(&poly::derivative(&p), root).norm()) {
            return Err(Error::InvalidInput(format!("{root} is not a root at {base}")));
        }
        Ok(el)
    }

    /// `w = 1 + √(1 − z)`, a root of `(w − 1)² − (1 − z)`, on the branch with `w(0) = 2`.
    pub fn shifted_sqrt() -> Self {
        let coefficients = vec![vec![c(0.0), c(1.0)], vec![c(-2.0)], vec![c(1.0)]];
        Self::new(coefficients, vec![c(1.0)], c(0.0), c(2.0)).expect("2 is a root")
    }

    /// The root of `w³ − w − z` with `w(0) = 0`, ramified at `z = ±2/(3√3)`.
    pub fn cubic() -> Self {
        let r = 2.0 / (3.0 * 3f64.sqrt());
        let coefficients = vec![vec![c(0.0), c(-1.0)], vec![c(-1.0)], vec![c(0.0)], vec![c(1.0)]];
        Self::new(coefficients, vec![c(r), c(-r)], c(0.0), c(0.0)).expect("0 is a root")
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `P(z, ·)` as a polynomial in `w`.
    pub fn in_w(&self, z: Complex64) -> Poly {
        self.coefficients.iter().map(|cj| poly::eval(cj, z)).collect()
    }

    /// `∂P/∂z (z, ·)` as a polynomial in `w`.
    fn dz_in_w(&self, z: Complex64) -> Poly {
        self.coefficients.iter().map(|cj| poly::eval(&poly::derivative(cj), z)).collect()
    }

    /// `|P(z, w)|`.
    pub fn defect(&self, z: Complex64, w: Complex64) -> f64 {
        poly::eval(&self.in_w(z), w).norm()
    }
}

#[derive(Debug, Clone)]
struct RootTracker {
    el: AlgebraicElement,
    position: Point,
    w: Complex64,
}

impl RootTracker {
    /// One predictor-corrector step to `z1`; `None` when the step must shrink.
    fn step(&self, z0: Complex64, z1: Complex64) -> Result<Option<Complex64>> {
        let p0 = self.el.in_w(z0);
        let slope = -poly::eval(&self.el.dz_in_w(z0), self.w) / poly::eval(&poly::derivative(&p0), self.w);
        let predicted = self.w + slope * (z1 - z0);
        let p1 = self.el.in_w(z1);
        let roots = poly::roots(&p1);
        let mut order: Vec<(f64, Complex64)> = roots.iter().map(|r| ((r - predicted).norm(), *r)).collect();
        order.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        let (d0, nearest) = order[0];
        if let Some(&(d1, second)) = order.get(1) {
            if (second - nearest).norm() < ROOT_SEPARATION {
                return Err(Error::AccuracyLoss(format!("roots closer than {ROOT_SEPARATION} at {z1}")));
            }
            if d0 > 0.25 * d1 {
                return Ok(None);
            }
        }
        // Newton polish on the selected root.
        let dp1 = poly::derivative(&p1);
        let mut w = nearest;
        for _ in 0..4 {
            let dw = poly::eval(&p1, w) / poly::eval(&dp1, w);
            if !dw.re.is_finite() || !dw.im.is_finite() {
                break;
            }
            w -= dw;
        }
        Ok(Some(w))
    }
}

impl Tracker for RootTracker {
    fn position(&self) -> Point {
        self.position
    }

    fn value(&self) -> Complex64 {
        self.w
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        let start = self.position.value();
        let end = to.value();
        let mut t = 0.0;
        let mut z = start;
        while t < 1.0 {
            let dist = self.el.branch_points.iter().map(|b| (z - b).norm()).fold(f64::INFINITY, f64::min);
            let len = (end - start).norm();
            let mut dt = if len == 0.0 { 1.0 - t } else { (STEP_FRACTION * dist / len).min(1.0 - t) };
            loop {
                if dt * len < MIN_STEP && dt < 1.0 - t {
                    return Err(Error::AccuracyLoss(format!("root tracking stalled near {z}")));
                }
                let z1 = if t + dt >= 1.0 { end } else { start + (end - start) * (t + dt) };
                match self.step(z, z1)? {
                    Some(w) => {
                        self.w = w;
                        z = z1;
                        t += dt;
                        break;
                    }
                    None => dt *= 0.5,
                }
            }
        }
        self.position = to;
        Ok(())
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }
}

impl AnalyticElement for AlgebraicElement {
    fn singularities(&self) -> Vec<Complex64> {
        self.branch_points.clone()
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        let mut t = RootTracker { el: self.clone(), position: Point::at(self.base), w: self.root };
        t.advance(p)?;
        Ok(Box::new(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuation::{continue_along, loop_tracker, Path, StepPolicy};

    #[test]
    fn shifted_sqrt_principal_value() {
        let el = AlgebraicElement::shifted_sqrt();
        let z = Complex64::new(0.6, 0.3);
        let w = el.eval(Point::at(z)).unwrap();
        assert!((w - (1.0 + (1.0 - z).sqrt())).norm() < 1e-14);
    }

    #[test]
    fn cubic_has_period_two_at_each_branch_point() {
        let el = AlgebraicElement::cubic();
        let r = el.branch_points[0];
        let z = Point::at(Complex64::new(0.2, 0.05));
        let mut t = el.start(z).unwrap();
        let w0 = t.value();
        loop_tracker(t.as_mut(), &el, r, 1).unwrap();
        assert!((t.value() - w0).norm() > 0.1);
        assert!(el.defect(z.value(), t.value()) < 1e-12);
        loop_tracker(t.as_mut(), &el, r, 1).unwrap();
        assert!((t.value() - w0).norm() < 1e-12);
    }

    #[test]
    fn cubic_has_period_three_around_both_branch_points() {
        let el = AlgebraicElement::cubic();
        let base = Point::at(Complex64::new(0.0, -0.6));
        let path = Path::loop_around(Complex64::new(0.0, 0.0), base, 1);
        let w0 = el.eval(base).unwrap();
        let mut seen = vec![w0];
        let mut t = el.start(base).unwrap();
        for _ in 0..3 {
            continue_along(t.as_mut(), &path, &el.branch_points, &StepPolicy::default()).unwrap();
            seen.push(t.value());
        }
        assert!((seen[1] - w0).norm() > 0.1 && (seen[2] - w0).norm() > 0.1);
        assert!((seen[3] - w0).norm() < 1e-12);
    }
}
