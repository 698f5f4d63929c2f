use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::HolonomicElement;
use crate::error::{Error, Result};
use crate::germs::{HyperSeries, M_DEFAULT};
use crate::numerics::{complex_gamma, segment_integral_delta, two_pi_i, Point, QuadratureConfig, TAU};

/// Radius inside which `2F1` is summed from its series.
pub const HYP2F1_SERIES_RADIUS: f64 = 0.8;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn is_nonpositive_integer(x: Complex64) -> bool {
    x.im == 0.0 && x.re <= 0.0 && x.re.fract() == 0.0
}

fn is_integer(x: Complex64) -> bool {
    x.im.abs() < 1e-14 && (x.re - x.re.round()).abs() < 1e-14
}

/// Gauss hypergeometric function `F(a, b; c; z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hypergeometric2F1 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl Hypergeometric2F1 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        if is_nonpositive_integer(c) {
            return Err(Error::Domain(format!("c = {c} is a non-positive integer")));
        }
        Ok(Self { a, b, c })
    }

    /// `(a)_n (b)_n / ((c)_n n!)` for `n < m`.
    pub fn coefficients(&self, m: usize) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(m);
        let mut t = c(1.0);
        for n in 0..m {
            out.push(t);
            let n = n as f64;
            t = t * (self.a + n) * (self.b + n) / ((self.c + n) * (n + 1.0));
        }
        out
    }

    pub fn series(&self) -> HyperSeries {
        HyperSeries::gauss(self.a, self.b, self.c).expect("c validated")
    }

    /// The function as a continuable element (singular points 0 and 1).
    pub fn element(&self) -> HolonomicElement {
        HolonomicElement::hypergeometric(&self.series(), M_DEFAULT)
    }
}

fn hyp2f1_series(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Complex64 {
    let mut acc = c(0.0);
    let mut t = c(1.0);
    for n in 0..20_000 {
        acc += t;
        let nf = n as f64;
        t = t * (a + nf) * (b + nf) / ((cc + nf) * (nf + 1.0)) * z;
        if t.norm() <= 1e-18 * acc.norm() || t.norm() == 0.0 {
            break;
        }
    }
    acc
}

/// Principal `F(a, b; c; z)`: the series inside `|z| ≤ 0.8`, continuation of
/// the Gauss equation along the ray from the series anchor beyond.
pub fn hyp2f1(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Result<Complex64> {
    let f = Hypergeometric2F1::new(a, b, cc)?;
    if z.norm() <= HYP2F1_SERIES_RADIUS || is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return Ok(hyp2f1_series(a, b, cc, z));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Domain(format!("{z} lies on the cut [1, ∞)")));
    }
    use crate::continuation::AnalyticElement;
    f.element().eval(Point::at(z))
}

/// `Γ(c)/(Γ(b)Γ(c−b)) ∫_0^1 u^{b−1}(1−u)^{c−b−1}(1−zu)^{−a} du`.
pub fn euler_2f1(a: Complex64, b: Complex64, cc: Complex64, z: Complex64, config: &QuadratureConfig) -> Result<Complex64> {
    if b.re <= 0.0 || (cc - b).re <= 0.0 {
        return Err(Error::Domain("the Euler integral needs Re b > 0 and Re(c − b) > 0".into()));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Domain(format!("{z} lies on the cut [1, ∞)")));
    }
    let prefactor = complex_gamma(cc)? / (complex_gamma(b)? * complex_gamma(cc - b)?);
    let integral = segment_integral_delta(
        |p| p.from_a.powc(b - 1.0) * (-p.from_b).powc(cc - b - 1.0) * (1.0 - z * p.u).powc(-a),
        c(0.0),
        c(1.0),
        config,
    )?;
    Ok(prefactor * integral)
}

/// `Δ_1 F(a, b; c; z)` for one counterclockwise loop around 1, from the
/// connection formula with the corrected second parameter `c − b`:
/// `(e^{2πi(c−a−b)} − 1) Γ(c)Γ(a+b−c)/(Γ(a)Γ(b)) (1−z)^{c−a−b} F(c−a, c−b; c−a−b+1; 1−z)`.
pub fn hyp2f1_delta(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Result<Complex64> {
    Hypergeometric2F1::new(a, b, cc)?;
    let s = cc - a - b;
    if is_integer(s) {
        return Err(Error::UnsupportedDegenerate(format!("c − a − b = {s} is an integer")));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return Ok(c(0.0));
    }
    let monodromy = (Complex64::new(0.0, TAU) * s).exp() - 1.0;
    let gammas = complex_gamma(cc)? * complex_gamma(-s)? / (complex_gamma(a)? * complex_gamma(b)?);
    Ok(monodromy * gammas * (1.0 - z).powc(s) * hyp2f1(cc - a, cc - b, s + 1.0, 1.0 - z)?)
}

/// `(2/π) ∫_0^1 du / √((1 − u²)(1 − k²u²))`, the Hadamard square of
/// `(1 − z)^{-1/2}` at `z = k²`.
pub fn elliptic_k_norm(ksq: Complex64, config: &QuadratureConfig) -> Result<Complex64> {
    if ksq.im == 0.0 && ksq.re >= 1.0 {
        return Err(Error::Domain(format!("k² = {ksq} lies on [1, ∞)")));
    }
    let v = segment_integral_delta(
        |p| 1.0 / ((-p.from_b).sqrt() * (1.0 + p.u).sqrt() * (1.0 - ksq * p.u * p.u).sqrt()),
        c(0.0),
        c(1.0),
        config,
    )?;
    Ok(v * (2.0 / std::f64::consts::PI))
}

/// `1/AGM(1, √(1 − k²))`, equal to `(2/π) K(k)`.
pub fn elliptic_k_agm(ksq: Complex64) -> Complex64 {
    let mut a = c(1.0);
    let mut b = (1.0 - ksq).sqrt();
    for _ in 0..64 {
        let next_a = 0.5 * (a + b);
        let mut next_b = (a * b).sqrt();
        // The right choice of square root keeps the two means close.
        if (next_a - next_b).norm() > (next_a + next_b).norm() {
            next_b = -next_b;
        }
        a = next_a;
        b = next_b;
        if (a - b).norm() <= 1e-16 * a.norm() {
            break;
        }
    }
    1.0 / a
}

/// `Δ_1` of the Hadamard square of `(1 − z)^{-1/2}` in closed form:
/// `−(4/2πi) ∫_1^z du / ((1 − u)^{1/2} (1 − z/u)^{1/2} u)`, with the phase of
/// `1 − z/u = (u − z)/u` carried continuously from `u = 1`.
pub fn modular_delta_closed_form(z: Point, config: &QuadratureConfig) -> Result<Complex64> {
    let one = c(1.0);
    let dz = z.minus(one);
    if dz.norm() == 0.0 || z.value().norm() == 0.0 {
        return Err(Error::Domain("the closed form needs z ∉ {0, 1}".into()));
    }
    let base_phase = (-dz).arg();
    let v = segment_integral_delta(
        |p| {
            let w = p.from_b.norm() / p.u.norm();
            let ratio_sqrt = Complex64::from_polar(w.sqrt(), 0.5 * (base_phase - p.u.arg()));
            1.0 / ((-p.from_a).sqrt() * ratio_sqrt * p.u)
        },
        one,
        dz,
        config,
    )?;
    Ok(-4.0 * v / two_pi_i())
}
