use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::element::{continue_along, AnalyticElement, CombinationTracker, Element, Tracker};
use super::path::{Path, StepPolicy};
use crate::error::{Error, Result};
use crate::germs::{cauchy_coefficients, Germ};
use crate::numerics::{Point, TAU};

/// Number of samples used when a germ has to be recovered from values.
const CAUCHY_NODES: usize = 64;

/// Default germ length stored in branch tables.
pub const TABLE_GERM_LEN: usize = 24;

fn check_loop(el: &dyn AnalyticElement, alpha: Complex64, base: Point) -> Result<()> {
    let r = base.dist(alpha);
    if r == 0.0 {
        return Err(Error::InvalidInput(format!("loop base coincides with the singularity {alpha}")));
    }
    for s in el.sheet_singularities() {
        if (s - alpha).norm() <= 1e-12 * (1.0 + alpha.norm()) {
            continue;
        }
        if (s - alpha).norm() <= r * (1.0 + 1e-9) {
            return Err(Error::InvalidInput(format!(
                "loop of radius {r} around {alpha} would enclose or touch the singularity {s}"
            )));
        }
    }
    Ok(())
}

/// Runs `turns` loops around `alpha` through the tracker's current position.
pub fn loop_tracker(t: &mut dyn Tracker, el: &dyn AnalyticElement, alpha: Complex64, turns: i32) -> Result<()> {
    if turns == 0 {
        return Ok(());
    }
    let base = t.position();
    check_loop(el, alpha, base)?;
    let path = Path::loop_around(alpha, base, turns);
    continue_along(t, &path, &el.sheet_singularities(), &StepPolicy::default())
}

/// Tracker on the branch `Σ_α^k F` at `p`: principal branch at `p`, then `k`
/// loops around `α` through `p` (clockwise for negative `k`).
pub fn sigma_tracker(el: &dyn AnalyticElement, alpha: Complex64, p: Point, k: i32) -> Result<Box<dyn Tracker>> {
    let mut t = el.start(p)?;
    loop_tracker(t.as_mut(), el, alpha, k)?;
    Ok(t)
}

/// Values of `Σ_α^k F` at `p` for `k = 0..=k_max`, each obtained from the previous by one more loop.
pub fn sigma_values(el: &dyn AnalyticElement, alpha: Complex64, p: Point, k_max: usize) -> Result<Vec<Complex64>> {
    let mut t = el.start(p)?;
    let mut out = vec![t.value()];
    for _ in 0..k_max {
        loop_tracker(t.as_mut(), el, alpha, 1)?;
        out.push(t.value());
    }
    Ok(out)
}

/// Germ of the tracked branch at its current position.
pub fn tracker_germ(t: &dyn Tracker, sheet_singularities: &[Complex64], len: usize) -> Result<Germ> {
    let p = t.position();
    let trust = sheet_singularities.iter().map(|s| p.dist(*s)).fold(f64::INFINITY, f64::min);
    let coefficients = match t.taylor(len) {
        Some(c) => c,
        None => {
            let rho = if trust.is_finite() { 0.5 * trust } else { 1.0 };
            let mut values = Vec::with_capacity(CAUCHY_NODES);
            for j in 0..CAUCHY_NODES {
                let mut s = t.box_clone();
                let w = Complex64::from_polar(rho, TAU * j as f64 / CAUCHY_NODES as f64);
                s.advance(Point::new(p.anchor, p.offset + w))?;
                values.push(s.value());
            }
            cauchy_coefficients(&values, rho, len.min(CAUCHY_NODES / 2))
        }
    };
    let mut g = Germ::new(p.value(), coefficients, trust);
    g.err_bound = t.err_estimate();
    Ok(g)
}

/// Germ at `base` of `Σ_α^k F`.
pub fn sigma_k(el: &dyn AnalyticElement, alpha: Complex64, base: Point, k: i32) -> Result<Germ> {
    let t = sigma_tracker(el, alpha, base, k)?;
    tracker_germ(t.as_ref(), &el.sheet_singularities(), TABLE_GERM_LEN)
}

/// Default loop base for `α`: on the segment from `α` towards the origin, at
/// half the distance to the nearest other singular point.
pub fn default_base(el: &dyn AnalyticElement, alpha: Complex64) -> Point {
    let others = el
        .sheet_singularities()
        .into_iter()
        .chain(std::iter::once(Complex64::new(0.0, 0.0)))
        .filter(|s| (s - alpha).norm() > 1e-12 * (1.0 + alpha.norm()))
        .map(|s| (s - alpha).norm())
        .fold(f64::INFINITY, f64::min);
    let r = 0.5 * others;
    Point::new(alpha, -alpha / alpha.norm() * r)
}

/// Branches `Σ_α^k F` and differences `Δ_α Σ_α^k F` as germs at a common base.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchTable {
    pub alpha: Complex64,
    pub base: Complex64,
    pub branches: BTreeMap<i32, Germ>,
    pub deltas: BTreeMap<i32, Germ>,
}

impl BranchTable {
    pub fn k_range(&self) -> (i32, i32) {
        let lo = *self.branches.keys().next().expect("non-empty");
        let hi = *self.branches.keys().next_back().expect("non-empty");
        (lo, hi)
    }
}

/// Builds the table for `k_min ≤ k ≤ k_max`, one additional loop per step.
pub fn build_branch_table(el: &dyn AnalyticElement, alpha: Complex64, base: Point, k_min: i32, k_max: i32) -> Result<BranchTable> {
    if k_min > 0 || k_max < 0 {
        return Err(Error::InvalidInput(format!("window [{k_min}, {k_max}] must contain 0")));
    }
    let sheet = el.sheet_singularities();
    let t0 = el.start(base)?;
    let mut branches = BTreeMap::new();
    branches.insert(0, tracker_germ(t0.as_ref(), &sheet, TABLE_GERM_LEN)?);
    for (dir, count) in [(1, k_max), (-1, -k_min)] {
        let mut t = t0.box_clone();
        for j in 1..=count {
            loop_tracker(t.as_mut(), el, alpha, dir)?;
            branches.insert(dir * j, tracker_germ(t.as_ref(), &sheet, TABLE_GERM_LEN)?);
        }
    }
    let deltas = (k_min..k_max).map(|k| (k, branches[&(k + 1)].sub(&branches[&k]))).collect();
    Ok(BranchTable { alpha, base: base.value(), branches, deltas })
}

/// The branch `Σ_α^k F`, as an element whose principal value at `p` is
/// reached by `k` loops around `α` through `p`.
#[derive(Debug, Clone)]
pub struct SigmaElement {
    pub base: Element,
    pub alpha: Complex64,
    pub k: i32,
}

impl AnalyticElement for SigmaElement {
    fn singularities(&self) -> Vec<Complex64> {
        self.base.singularities()
    }

    fn sheet_singularities(&self) -> Vec<Complex64> {
        self.base.sheet_singularities()
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        sigma_tracker(self.base.as_ref(), self.alpha, p, self.k)
    }

    fn is_zero(&self) -> bool {
        self.base.is_zero()
    }
}

/// `Δ_α Σ_α^k F = Σ_α^{k+1} F − Σ_α^k F`.
#[derive(Debug, Clone)]
pub struct DeltaElement {
    pub base: Element,
    pub alpha: Complex64,
    pub k: i32,
}

impl DeltaElement {
    pub fn new(base: Element, alpha: Complex64, k: i32) -> Self {
        Self { base, alpha, k }
    }

    pub fn shared(base: Element, alpha: Complex64, k: i32) -> Element {
        Arc::new(Self::new(base, alpha, k))
    }
}

impl AnalyticElement for DeltaElement {
    fn singularities(&self) -> Vec<Complex64> {
        self.base.singularities()
    }

    fn sheet_singularities(&self) -> Vec<Complex64> {
        self.base.sheet_singularities()
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        let lower = sigma_tracker(self.base.as_ref(), self.alpha, p, self.k)?;
        let mut upper = lower.box_clone();
        loop_tracker(upper.as_mut(), self.base.as_ref(), self.alpha, 1)?;
        let one = Complex64::new(1.0, 0.0);
        Ok(Box::new(CombinationTracker { parts: vec![(one, upper), (-one, lower)], position: p }))
    }

    fn is_zero(&self) -> bool {
        self.base.is_zero()
    }
}
