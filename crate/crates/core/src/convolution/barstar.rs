use std::sync::Arc;

use num_complex::Complex64;

use crate::continuation::{AnalyticElement, Element, Pointwise, PointwiseTracker, Tracker};
use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, segment_integral_delta, two_pi_i, Point, QuadratureConfig};

/// Bump radius relative to the segment length.
pub const BUMP_FRACTION: f64 = 0.05;
const ARC_NODES: usize = 32;

/// `f ⋆̄ g (z) = −(1/2πi) ∫_α^{z/β} f(u) g(z/u) du/u` along the straight
/// segment, deflected around singular points that come within
/// `0.05·|z/β − α|` of it.
pub fn bar_star(
    f: &dyn AnalyticElement,
    g: &dyn AnalyticElement,
    alpha: Complex64,
    beta: Complex64,
    z: Point,
    config: &QuadratureConfig,
) -> Result<Complex64> {
    let mut avoid: Vec<Complex64> = f
        .sheet_singularities()
        .into_iter()
        .filter(|s| (s - alpha).norm() > 1e-12 * (1.0 + alpha.norm()))
        .collect();
    let zv = z.value();
    for s in g.sheet_singularities() {
        if (s - beta).norm() > 1e-12 * (1.0 + beta.norm()) && s.norm() > 0.0 {
            avoid.push(zv / s);
        }
    }
    avoid.push(Complex64::new(0.0, 0.0));
    bar_star_avoiding(f, g, alpha, beta, z, config, &avoid)
}

enum Piece {
    /// Segment between two offsets from `α`.
    Segment(Complex64, Complex64),
    /// Arc `c + ε e^{iθ}` for `θ` from `t0` to `t0 + sweep`, offsets from `α`.
    Arc { center: Complex64, radius: f64, t0: f64, sweep: f64 },
}

/// [`bar_star`] with an explicit list of points to deflect around; points
/// farther than the bump radius from the segment are ignored.
pub fn bar_star_avoiding(
    f: &dyn AnalyticElement,
    g: &dyn AnalyticElement,
    alpha: Complex64,
    beta: Complex64,
    z: Point,
    config: &QuadratureConfig,
    avoid: &[Complex64],
) -> Result<Complex64> {
    if f.is_zero() || g.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let db = z.minus(alpha * beta) / beta;
    let len = db.norm();
    if len == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pieces = deflected_pieces(db, avoid.iter().map(|s| s - alpha), BUMP_FRACTION * len);

    let mut failure: Option<Error> = None;
    let mut integrand = |u_alpha: Complex64, u_b: Complex64| -> Complex64 {
        let u = alpha + u_alpha;
        let res = f
            .eval(Point::new(alpha, u_alpha))
            .and_then(|a| Ok(a * g.eval(Point::new(beta, -beta * u_b / u))?));
        match res {
            Ok(v) => v / u,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(f64::NAN, 0.0)
            }
        }
    };

    let mut total = Complex64::new(0.0, 0.0);
    for piece in &pieces {
        let part = match *piece {
            Piece::Segment(s, e) => segment_integral_delta(
                |p| integrand(s + p.from_a, (e - db) + p.from_b),
                s,
                e - s,
                config,
            ),
            Piece::Arc { center, radius, t0, sweep } => {
                let (x, w) = gauss_legendre(ARC_NODES);
                let mut acc = Complex64::new(0.0, 0.0);
                for (xi, wi) in x.iter().zip(&w) {
                    let t = t0 + 0.5 * sweep * (xi + 1.0);
                    let e = Complex64::from_polar(radius, t);
                    let u_alpha = center + e;
                    acc += integrand(u_alpha, u_alpha - db) * Complex64::new(0.0, 1.0) * e * (0.5 * sweep * wi);
                }
                Ok(acc)
            }
        };
        match part {
            Ok(v) => total += v,
            Err(e) => return Err(failure.take().unwrap_or(e)),
        }
    }
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(-total / two_pi_i())
}

fn deflected_pieces(db: Complex64, avoid: impl Iterator<Item = Complex64>, eps: f64) -> Vec<Piece> {
    let len = db.norm();
    let dir = db / len;
    let mut bumps: Vec<(f64, f64, Complex64)> = Vec::new();
    for s in avoid {
        let local = s / dir; // segment along the positive real axis
        let t = local.re;
        let d = local.im.abs();
        if d >= eps || t - eps <= 0.0 || t + eps >= len {
            continue;
        }
        let half = (eps * eps - d * d).sqrt();
        bumps.push((t - half, t + half, s));
    }
    bumps.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    let mut pieces = Vec::new();
    let mut cursor = Complex64::new(0.0, 0.0);
    for (t_in, t_out, s) in bumps {
        let p_in = dir * t_in;
        let p_out = dir * t_out;
        if t_in * len > 0.0 && (p_in - cursor).norm() > 0.0 {
            pieces.push(Piece::Segment(cursor, p_in));
        }
        let a_in = (p_in - s).arg();
        let mut sweep = ((p_out - s) / (p_in - s)).arg();
        // Keep the deflected path on the same side of `s` as the segment.
        let local = s / dir;
        let side = if local.im.abs() > 0.0 { -local.im.signum() } else { -1.0 };
        let mid = Complex64::from_polar(1.0, a_in + 0.5 * sweep) / dir;
        if mid.im * side < 0.0 {
            sweep -= std::f64::consts::TAU * sweep.signum();
        }
        pieces.push(Piece::Arc { center: s, radius: eps, t0: a_in, sweep });
        cursor = p_out;
    }
    pieces.push(Piece::Segment(cursor, db));
    pieces
}

/// `z ↦ (f ⋆̄ g)(z)` as an element, evaluated by quadrature at each point.
#[derive(Debug, Clone)]
pub struct BarStarElement {
    pub f: Element,
    pub g: Element,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub config: QuadratureConfig,
}

impl Pointwise for BarStarElement {
    fn value_at_point(&self, p: Point) -> Result<Complex64> {
        bar_star(self.f.as_ref(), self.g.as_ref(), self.alpha, self.beta, p, &self.config)
    }
}

impl AnalyticElement for BarStarElement {
    fn singularities(&self) -> Vec<Complex64> {
        vec![self.alpha * self.beta]
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Ok(Box::new(PointwiseTracker::new(Arc::new(self.clone()), p)?))
    }

    fn is_zero(&self) -> bool {
        self.f.is_zero() || self.g.is_zero()
    }
}
