use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::path::{Path, StepPolicy};
use crate::error::Result;
use crate::germs::HyperSeries;
use crate::numerics::Point;

/// Shared handle to an analytic element.
pub type Element = Arc<dyn AnalyticElement>;

/// A multivalued function given by a principal branch on the plane slit along
/// the rays from each singularity away from the origin, together with a way
/// to continue any branch along paths.
pub trait AnalyticElement: Send + Sync + fmt::Debug {
    /// The isolated singularities of the principal branch.
    fn singularities(&self) -> Vec<Complex64>;

    /// Points that other branches may also be singular at (for instance the
    /// origin for the branches of a polylogarithm).
    fn sheet_singularities(&self) -> Vec<Complex64> {
        self.singularities()
    }

    /// A tracker sitting at `p` on the principal branch.
    fn start(&self, p: Point) -> Result<Box<dyn Tracker>>;

    /// Principal value at `p`.
    fn eval(&self, p: Point) -> Result<Complex64> {
        Ok(self.start(p)?.value())
    }

    /// The element as a finite sum of hypergeometric-class series, if it is one.
    fn hyper_terms(&self) -> Option<Vec<HyperSeries>> {
        None
    }

    /// True for elements known to vanish identically.
    fn is_zero(&self) -> bool {
        false
    }
}

/// A branch of an element carried along a path.
pub trait Tracker: Send {
    fn position(&self) -> Point;
    fn value(&self) -> Complex64;
    /// Continues the branch along the straight segment to `to`.
    fn advance(&mut self, to: Point) -> Result<()>;
    fn box_clone(&self) -> Box<dyn Tracker>;
    /// Accumulated error estimate of the tracked value.
    fn err_estimate(&self) -> f64 {
        0.0
    }
    /// Exact local Taylor coefficients at the current position, when the
    /// representation provides them.
    fn taylor(&self, _len: usize) -> Option<Vec<Complex64>> {
        None
    }
}

impl Clone for Box<dyn Tracker> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

/// Continues `tracker` along `path`, which must start at the tracker position.
pub fn continue_along(tracker: &mut dyn Tracker, path: &Path, singularities: &[Complex64], policy: &StepPolicy) -> Result<()> {
    path.check_clearance(singularities, policy)?;
    for v in &path.vertices()[1..] {
        tracker.advance(*v)?;
    }
    Ok(())
}

/// Continues `el` from its principal branch at the start of `path` to the end.
pub fn continue_germ(el: &dyn AnalyticElement, path: &Path, policy: &StepPolicy) -> Result<Box<dyn Tracker>> {
    let mut t = el.start(path.start())?;
    continue_along(t.as_mut(), path, &el.sheet_singularities(), policy)?;
    Ok(t)
}

fn merge(mut a: Vec<Complex64>, b: Vec<Complex64>) -> Vec<Complex64> {
    for s in b {
        if !a.iter().any(|t| (*t - s).norm() <= 1e-12 * (1.0 + s.norm())) {
            a.push(s);
        }
    }
    a
}

/// `Σ c_i f_i`.
#[derive(Debug, Clone)]
pub struct LinearCombination {
    pub terms: Vec<(Complex64, Element)>,
}

impl LinearCombination {
    pub fn new(terms: Vec<(Complex64, Element)>) -> Self {
        Self { terms }
    }

    pub fn sum(elements: Vec<Element>) -> Self {
        Self::new(elements.into_iter().map(|e| (Complex64::new(1.0, 0.0), e)).collect())
    }
}

impl AnalyticElement for LinearCombination {
    fn singularities(&self) -> Vec<Complex64> {
        self.terms.iter().fold(Vec::new(), |acc, (_, e)| merge(acc, e.singularities()))
    }

    fn sheet_singularities(&self) -> Vec<Complex64> {
        self.terms.iter().fold(Vec::new(), |acc, (_, e)| merge(acc, e.sheet_singularities()))
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        let parts = self
            .terms
            .iter()
            .map(|(c, e)| Ok((*c, e.start(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Box::new(CombinationTracker { parts, position: p }))
    }

    fn hyper_terms(&self) -> Option<Vec<HyperSeries>> {
        let mut out = Vec::new();
        for (c, e) in &self.terms {
            out.extend(e.hyper_terms()?.into_iter().map(|h| h.with_scale(*c)));
        }
        Some(out)
    }

    fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, e)| *c == Complex64::new(0.0, 0.0) || e.is_zero())
    }
}

/// Tracks `Σ c_i (branch_i)` by tracking each branch separately.
#[derive(Clone)]
pub struct CombinationTracker {
    pub parts: Vec<(Complex64, Box<dyn Tracker>)>,
    pub position: Point,
}

impl Tracker for CombinationTracker {
    fn position(&self) -> Point {
        self.position
    }

    fn value(&self) -> Complex64 {
        self.parts.iter().map(|(c, t)| c * t.value()).sum()
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        for (_, t) in &mut self.parts {
            t.advance(to)?;
        }
        self.position = to;
        Ok(())
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }

    fn err_estimate(&self) -> f64 {
        self.parts.iter().map(|(c, t)| c.norm() * t.err_estimate()).sum()
    }

    fn taylor(&self, len: usize) -> Option<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (c, t) in &self.parts {
            for (o, v) in out.iter_mut().zip(t.taylor(len)?) {
                *o += c * v;
            }
        }
        Some(out)
    }
}

/// Pointwise product `f · g`.
#[derive(Debug, Clone)]
pub struct Product {
    pub left: Element,
    pub right: Element,
}

impl AnalyticElement for Product {
    fn singularities(&self) -> Vec<Complex64> {
        merge(self.left.singularities(), self.right.singularities())
    }

    fn sheet_singularities(&self) -> Vec<Complex64> {
        merge(self.left.sheet_singularities(), self.right.sheet_singularities())
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Ok(Box::new(ProductTracker { left: self.left.start(p)?, right: self.right.start(p)? }))
    }

    fn is_zero(&self) -> bool {
        self.left.is_zero() || self.right.is_zero()
    }
}

#[derive(Clone)]
struct ProductTracker {
    left: Box<dyn Tracker>,
    right: Box<dyn Tracker>,
}

impl Tracker for ProductTracker {
    fn position(&self) -> Point {
        self.left.position()
    }

    fn value(&self) -> Complex64 {
        self.left.value() * self.right.value()
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        self.left.advance(to)?;
        self.right.advance(to)
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }

    fn err_estimate(&self) -> f64 {
        self.left.err_estimate() * self.right.value().norm() + self.right.err_estimate() * self.left.value().norm()
    }
}

/// `c · z^m` for an integer `m`; single-valued, with a pole at 0 when `m < 0`.
#[derive(Debug, Clone, Copy)]
pub struct Monomial {
    pub coefficient: Complex64,
    pub power: i32,
}

impl AnalyticElement for Monomial {
    fn singularities(&self) -> Vec<Complex64> {
        if self.power < 0 {
            vec![Complex64::new(0.0, 0.0)]
        } else {
            Vec::new()
        }
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Ok(Box::new(PointwiseTracker::new(Arc::new(*self), p)?))
    }

    fn is_zero(&self) -> bool {
        self.coefficient == Complex64::new(0.0, 0.0)
    }
}

impl Monomial {
    fn value_at(&self, z: Complex64) -> Complex64 {
        self.coefficient * z.powi(self.power)
    }
}

/// Functions evaluated directly at every position (single-valued, or used
/// only along paths that do not cross a cut).
pub trait Pointwise: Send + Sync + fmt::Debug {
    fn value_at_point(&self, p: Point) -> Result<Complex64>;
}

impl Pointwise for Monomial {
    fn value_at_point(&self, p: Point) -> Result<Complex64> {
        Ok(self.value_at(p.value()))
    }
}

/// Tracker for a function evaluated afresh at each position.
#[derive(Clone)]
pub struct PointwiseTracker {
    f: Arc<dyn Pointwise>,
    position: Point,
    value: Complex64,
}

impl PointwiseTracker {
    pub fn new(f: Arc<dyn Pointwise>, position: Point) -> Result<Self> {
        let value = f.value_at_point(position)?;
        Ok(Self { f, position, value })
    }
}

impl Tracker for PointwiseTracker {
    fn position(&self) -> Point {
        self.position
    }

    fn value(&self) -> Complex64 {
        self.value
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        self.value = self.f.value_at_point(to)?;
        self.position = to;
        Ok(())
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }
}

/// The zero function.
#[derive(Debug, Clone, Copy)]
pub struct Zero;

impl AnalyticElement for Zero {
    fn singularities(&self) -> Vec<Complex64> {
        Vec::new()
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Monomial { coefficient: Complex64::new(0.0, 0.0), power: 0 }.start(p)
    }

    fn is_zero(&self) -> bool {
        true
    }
}
