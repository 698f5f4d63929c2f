use num_complex::Complex64;

use crate::continuation::AnalyticElement;
use crate::error::{Error, Result};
use crate::numerics::{circle_integral, Point, QuadratureConfig};

/// Distance from the origin to the nearest singularity of the principal branch.
pub fn convergence_radius(el: &dyn AnalyticElement) -> f64 {
    el.singularities().iter().map(|s| s.norm()).fold(f64::INFINITY, f64::min)
}

/// `F⊙G(z) = (1/2πi) ∮_{|u|=r} F(u) G(z/u) du/u`, valid for `|z|/R_G < r < R_F`.
pub fn hadamard_eval_contour(
    f: &dyn AnalyticElement,
    g: &dyn AnalyticElement,
    z: Complex64,
    r: f64,
    config: &QuadratureConfig,
) -> Result<Complex64> {
    let rf = convergence_radius(f);
    let rg = convergence_radius(g);
    let lo = z.norm() / rg;
    if !(r > lo && r < rf) {
        return Err(Error::InvalidAnnulus { r, lo, hi: rf });
    }
    let mut failure = None;
    let v = circle_integral(
        |u| {
            let val = f.eval(Point::at(u)).and_then(|a| Ok(a * g.eval(Point::at(z / u))?));
            match val {
                Ok(x) => x / u,
                Err(e) => {
                    failure.get_or_insert(e);
                    Complex64::new(f64::NAN, 0.0)
                }
            }
        },
        Complex64::new(0.0, 0.0),
        r,
        config,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    v
}
