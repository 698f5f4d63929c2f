use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{QuadratureConfig, TAU};
use crate::error::{Error, Result};

/// Half-width of the truncated tanh-sinh parameter interval. At `t = 6` the
/// node sits about `1e-275` (relative) from the endpoint.
const T_MAX: f64 = 6.0;
/// Refinement levels attempted beyond `de_level` before giving up.
const EXTRA_LEVELS: u32 = 4;

/// `(1/2πi) ∮ f(u) du` over the positively oriented circle `|u − center| = radius`,
/// by the equispaced trapezoid rule.
pub fn circle_integral<F>(mut f: F, center: Complex64, radius: f64, config: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    config.validate()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput(format!("circle radius must be positive, got {radius}")));
    }
    let n = config.circle_nodes;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let w = Complex64::from_polar(radius, TAU * j as f64 / n as f64);
        let u = center + w;
        let v = f(u);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::ContourHitsSingularity { node: u });
        }
        acc += v * w;
    }
    Ok(acc / n as f64)
}

/// A quadrature node on a segment `[a, b]`, carrying its displacement from
/// both endpoints so integrands can resolve endpoint singularities without
/// cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentPoint {
    pub u: Complex64,
    /// `u − a`, accurate even when `u` rounds to `a`.
    pub from_a: Complex64,
    /// `u − b`, accurate even when `u` rounds to `b`.
    pub from_b: Complex64,
}

/// `∫_a^b f(u) du` along the straight segment by tanh-sinh quadrature.
///
/// Nodes whose coordinate rounds onto an endpoint are skipped, so the
/// attainable accuracy for a singularity at a nonzero endpoint is limited by
/// the spacing of doubles there. Use [`segment_integral_points`] when the
/// integrand can use the endpoint offsets.
pub fn segment_integral_singular<F>(mut f: F, a: Complex64, b: Complex64, config: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    segment_integral_points(
        |p| if p.u == a || p.u == b { Complex64::new(0.0, 0.0) } else { f(p.u) },
        a,
        b,
        config,
    )
}

/// `∫_a^b f(u) du` with the integrand receiving endpoint offsets.
///
/// Levels are refined from step `1` down to at least `2^-de_level`; the
/// result is accepted once two consecutive levels agree to the configured
/// tolerance. A non-negligible contribution from the outermost nodes signals
/// a non-integrable endpoint.
pub fn segment_integral_points<F>(f: F, a: Complex64, b: Complex64, config: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(SegmentPoint) -> Complex64,
{
    segment_integral_delta(f, a, b - a, config)
}

/// [`segment_integral_points`] on `[a, a + delta]`, with the displacement
/// given exactly so that very short segments keep their endpoint offsets.
pub fn segment_integral_delta<F>(mut f: F, a: Complex64, delta: Complex64, config: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(SegmentPoint) -> Complex64,
{
    config.validate()?;
    let b = a + delta;
    let half = delta * 0.5;
    if half.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }

    let mut outer = 0.0_f64;
    let mut node = |t: f64, h: f64, outer: &mut f64| -> Result<Complex64> {
        let s = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * s.abs()).exp();
        // 1 + x and 1 − x for x = tanh(s), each computed without cancellation.
        let (onepx, onemx) = if s >= 0.0 { (2.0 / (1.0 + e), 2.0 * e / (1.0 + e)) } else { (2.0 * e / (1.0 + e), 2.0 / (1.0 + e)) };
        let cs = s.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cs * cs);
        let from_a = half * onepx;
        let from_b = -half * onemx;
        if w == 0.0 || from_a.norm() == 0.0 || from_b.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let u = if onepx <= onemx { a + from_a } else { b + from_b };
        let v = f(SegmentPoint { u, from_a, from_b });
        if !(v.re.is_finite() && v.im.is_finite()) {
            let scale = 2.0 * half.norm();
            if from_a.norm() < 1e-200 * scale || from_b.norm() < 1e-200 * scale {
                return Err(Error::NonIntegrableEndpoint { a, b });
            }
            return Err(Error::NonFinite { at: u });
        }
        let term = v * w;
        if t.abs() > T_MAX - 0.5 {
            *outer = outer.max((term * half).norm() * h);
        }
        Ok(term)
    };

    let jmax = T_MAX as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in -jmax..=jmax {
        sum += node(j as f64, 1.0, &mut outer)?;
    }
    let mut prev = sum * half;
    let max_level = config.de_level + EXTRA_LEVELS;
    let mut h = 1.0;
    let mut last_diff = f64::INFINITY;
    for level in 1..=max_level {
        h *= 0.5;
        outer = 0.0;
        let count = (T_MAX / h) as i64;
        let mut fresh = Complex64::new(0.0, 0.0);
        let mut j = -count + if count % 2 == 0 { 1 } else { 0 };
        while j <= count {
            fresh += node(j as f64 * h, h, &mut outer)?;
            j += 2;
        }
        sum += fresh;
        let cur = sum * half * h;
        let diff = (cur - prev).norm();
        let tol = config.abs_tol.max(config.rel_tol * cur.norm());
        last_diff = diff;
        prev = cur;
        if level >= config.de_level && diff <= tol {
            return finish(cur, outer, tol, a, b);
        }
    }
    // Rounding noise in the integrand can keep consecutive levels from
    // agreeing to the last digits; accept a nearly converged sum.
    let tol = config.abs_tol.max(config.rel_tol * prev.norm());
    if last_diff <= 1e4 * tol {
        return finish(prev, outer, 1e4 * tol, a, b);
    }
    Err(Error::NonIntegrableEndpoint { a, b })
}

fn finish(value: Complex64, outer: f64, tol: f64, a: Complex64, b: Complex64) -> Result<Complex64> {
    if outer > tol {
        Err(Error::NonIntegrableEndpoint { a, b })
    } else {
        Ok(value)
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn circle_residues() {
        let cfg = QuadratureConfig::default();
        let one = circle_integral(|u| 1.0 / u, c(0.0, 0.0), 1.0, &cfg).unwrap();
        assert!((one - 1.0).norm() < 1e-14);
        let zero = circle_integral(|u| u * u, c(0.0, 0.0), 1.0, &cfg).unwrap();
        assert!(zero.norm() < 1e-14);
        let pole = circle_integral(|u| 1.0 / (u - 0.5), c(0.0, 0.0), 1.0, &cfg).unwrap();
        assert!((pole - 1.0).norm() < 1e-13);
    }

    #[test]
    fn circle_reports_offending_node() {
        let cfg = QuadratureConfig { circle_nodes: 16, ..Default::default() };
        let err = circle_integral(|u| 1.0 / (u - 1.0), c(0.0, 0.0), 1.0, &cfg).unwrap_err();
        assert_eq!(err, Error::ContourHitsSingularity { node: c(1.0, 0.0) });
    }

    #[test]
    fn segment_examples() {
        let cfg = QuadratureConfig::default();
        let v = segment_integral_singular(|_| c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), &cfg).unwrap();
        assert!((v - 1.0).norm() < 1e-14);
        let v = segment_integral_singular(|u| 1.0 / u.sqrt(), c(0.0, 0.0), c(1.0, 0.0), &cfg).unwrap();
        assert!((v - 2.0).norm() < 1e-12);
    }

    #[test]
    fn arcsine_density_with_offsets() {
        let cfg = QuadratureConfig::default();
        let v = segment_integral_points(
            |p| 1.0 / (p.from_a.sqrt() * (-p.from_b).sqrt()),
            c(0.0, 0.0),
            c(1.0, 0.0),
            &cfg,
        )
        .unwrap();
        assert!((v - PI).norm() < 1e-12, "{v}");
        // The plain interface loses the digits hidden by rounding near u = 1.
        let plain = segment_integral_singular(|u| 1.0 / (u.sqrt() * (1.0 - u).sqrt()), c(0.0, 0.0), c(1.0, 0.0), &cfg).unwrap();
        assert!((plain - PI).norm() < 1e-6, "{plain}");
    }

    #[test]
    fn detects_non_integrable_endpoint() {
        let cfg = QuadratureConfig::default();
        let err = segment_integral_points(|p| 1.0 / p.from_a, c(0.0, 0.0), c(1.0, 0.0), &cfg).unwrap_err();
        assert!(matches!(err, Error::NonIntegrableEndpoint { .. }));
    }

    #[test]
    fn complex_segment_log_endpoint() {
        // ∫_0^{i} log(u) du = [u log u − u]_0^{i}
        let cfg = QuadratureConfig::default();
        let b = c(0.0, 1.0);
        let v = segment_integral_points(|p| p.from_a.ln(), c(0.0, 0.0), b, &cfg).unwrap();
        let exact = b * b.ln() - b;
        assert!((v - exact).norm() < 1e-12);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(12);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(22)).sum();
        assert!((s - 2.0 / 23.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }
}
