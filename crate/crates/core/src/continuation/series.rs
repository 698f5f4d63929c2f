use num_complex::Complex64;

use super::element::{AnalyticElement, Tracker};
use super::path::StepPolicy;
use crate::error::{Error, Result};
use crate::germs::{germ_eval, recenter, Germ};
use crate::numerics::Point;

/// An element known only through a truncated germ, continued by Taylor shifts.
///
/// A truncated germ carries no monodromy of its own, so this is only
/// meaningful along short paths; the accumulated error is checked against
/// the policy ceiling at every step.
#[derive(Debug, Clone)]
pub struct SeriesElement {
    pub germ: Germ,
    pub singularities: Vec<Complex64>,
    pub policy: StepPolicy,
}

impl SeriesElement {
    pub fn new(germ: Germ, singularities: Vec<Complex64>) -> Self {
        Self { germ, singularities, policy: StepPolicy::default() }
    }
}

#[derive(Debug, Clone)]
struct SeriesTracker {
    germ: Germ,
    singularities: Vec<Complex64>,
    policy: StepPolicy,
    position: Point,
    value: Complex64,
}

impl SeriesTracker {
    fn distance(&self, z: Complex64) -> f64 {
        self.singularities.iter().map(|s| (s - z).norm()).fold(f64::INFINITY, f64::min)
    }
}

impl Tracker for SeriesTracker {
    fn position(&self) -> Point {
        self.position
    }

    fn value(&self) -> Complex64 {
        self.value
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        let target = to.value();
        for _ in 0..10_000 {
            let c = self.germ.center;
            let remaining = target - c;
            let d = self.distance(c).min(self.germ.trust_radius);
            let hmax = self.policy.theta * d;
            if remaining.norm() <= hmax {
                let v = germ_eval(&self.germ, target)?;
                self.value = v.value;
                self.position = to;
                return Ok(());
            }
            let step = remaining * (hmax / remaining.norm());
            let mut g = recenter(&self.germ, c + step, self.policy.theta)?;
            g.trust_radius = g.trust_radius.min(self.distance(c + step));
            if g.err_bound > self.policy.drift_ceiling {
                return Err(Error::AccuracyLoss(format!(
                    "series error bound {:e} exceeds {:e} at {}",
                    g.err_bound,
                    self.policy.drift_ceiling,
                    c + step
                )));
            }
            self.germ = g;
        }
        Err(Error::AccuracyLoss("step budget exhausted".into()))
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }

    fn err_estimate(&self) -> f64 {
        self.germ.err_bound
    }
}

impl AnalyticElement for SeriesElement {
    fn singularities(&self) -> Vec<Complex64> {
        self.singularities.clone()
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        let mut t = SeriesTracker {
            germ: self.germ.clone(),
            singularities: self.singularities.clone(),
            policy: self.policy,
            position: Point::at(self.germ.center),
            value: self.germ.value_at_center(),
        };
        t.advance(p)?;
        Ok(Box::new(t))
    }
}
