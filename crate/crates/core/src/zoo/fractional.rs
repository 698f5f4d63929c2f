use std::sync::Arc;

use num_complex::Complex64;

use crate::continuation::{AnalyticElement, Element, Pointwise, PointwiseTracker, Tracker};
use crate::error::{Error, Result};
use crate::numerics::{complex_gamma, segment_integral_delta, Point, QuadratureConfig};

/// Riemann-Liouville integral `(1/Γ(ν)) ∫_base^z (z − u)^{ν−1} f(u) du`
/// along the straight segment.
pub fn fractional_integral(
    f: &dyn AnalyticElement,
    base: Complex64,
    order: Complex64,
    z: Complex64,
    config: &QuadratureConfig,
) -> Result<Complex64> {
    if order.re <= 0.0 {
        return Err(Error::Domain(format!("fractional order {order} needs a positive real part")));
    }
    if z == base {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut failure = None;
    let v = segment_integral_delta(
        |p| match f.eval(Point::at(p.u)) {
            Ok(fv) => (-p.from_b).powc(order - 1.0) * fv,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(f64::NAN, 0.0)
            }
        },
        base,
        z - base,
        config,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(v? / complex_gamma(order)?)
}

/// `z ↦ I_ν f (z)` as an element, evaluated by quadrature at each point.
#[derive(Debug, Clone)]
pub struct FractionalIntegral {
    pub f: Element,
    pub base: Complex64,
    pub order: Complex64,
    pub config: QuadratureConfig,
}

impl Pointwise for FractionalIntegral {
    fn value_at_point(&self, p: Point) -> Result<Complex64> {
        fractional_integral(self.f.as_ref(), self.base, self.order, p.value(), &self.config)
    }
}

impl AnalyticElement for FractionalIntegral {
    fn singularities(&self) -> Vec<Complex64> {
        let mut s = self.f.singularities();
        s.push(self.base);
        s
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Ok(Box::new(PointwiseTracker::new(Arc::new(self.clone()), p)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuation::Monomial;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn integer_orders_of_one() {
        let cfg = QuadratureConfig::default();
        let one = Monomial { coefficient: c(1.0), power: 0 };
        let z = Complex64::new(0.7, 0.2);
        assert!((fractional_integral(&one, c(0.0), c(1.0), z, &cfg).unwrap() - z).norm() < 1e-14);
        let v = fractional_integral(&one, c(0.0), c(3.0), z, &cfg).unwrap();
        assert!((v - z.powu(3) / 6.0).norm() < 1e-14);
        assert!(matches!(fractional_integral(&one, c(0.0), c(0.0), z, &cfg), Err(Error::Domain(_))));
    }
}
