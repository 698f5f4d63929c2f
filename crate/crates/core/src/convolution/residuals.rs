use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::barstar::{bar_star, BarStarElement};
use super::pairs::{tuple_decomposition, PairDecomposition};
use crate::continuation::{loop_tracker, AnalyticElement, DeltaElement, Element, HolonomicElement, LinearCombination, Path};
use crate::error::{Error, Result};
use crate::germs::{hadamard_coeffs, M_ON_CIRCLE};
use crate::numerics::{gauss_legendre, segment_integral_delta, Point, QuadratureConfig, TAU};

/// One two-sided evaluation of an identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub identity: String,
    pub parameters: serde_json::Value,
    pub z: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    pub err_estimates: Vec<f64>,
}

impl ResidualRecord {
    pub fn new(identity: &str, parameters: serde_json::Value, z: Complex64, lhs: Complex64, rhs: Complex64) -> Self {
        Self { identity: identity.into(), parameters, z, lhs, rhs, residual: (lhs - rhs).norm(), err_estimates: Vec::new() }
    }
}

/// A test point in the annulus `0.2 ≤ |z − γ| ≤ 0.6` outside the 20° sector
/// around the ray from `γ` away from the origin, from two uniforms in `[0, 1)`.
pub fn annulus_point(gamma: Complex64, u_radius: f64, u_angle: f64) -> Point {
    let r = 0.2 + 0.4 * u_radius;
    let cut = if gamma.norm() > 0.0 { gamma.arg() } else { 0.0 };
    let half_sector = 10f64.to_radians();
    let theta = cut + half_sector + u_angle * (TAU - 2.0 * half_sector);
    Point::new(gamma, Complex64::from_polar(r, theta))
}

/// `F⊙G` as a continuable element: each pair of hypergeometric terms gives a
/// solution of the product equation with initial data summed from the
/// Hadamard product of the truncated coefficient series (length `m`).
pub fn hadamard_element(f: &dyn AnalyticElement, g: &dyn AnalyticElement, m: usize) -> Result<Element> {
    let (Some(fh), Some(gh)) = (f.hyper_terms(), g.hyper_terms()) else {
        return Err(Error::InvalidInput("Hadamard element needs factors with hypergeometric-class series".into()));
    };
    let mut terms: Vec<Element> = Vec::new();
    for a in &fh {
        for b in &gh {
            let h = a.hadamard(b);
            let series = hadamard_coeffs(&a.to_coeff_series(m), &b.to_coeff_series(m));
            terms.push(Arc::new(HolonomicElement::from_series(&h, &series)));
        }
    }
    if terms.len() == 1 {
        return Ok(terms.pop().expect("one term"));
    }
    Ok(Arc::new(LinearCombination::sum(terms)))
}

/// [`hadamard_element`] with the default truncation `M = 4096`.
pub fn hadamard_element_default(f: &dyn AnalyticElement, g: &dyn AnalyticElement) -> Result<Element> {
    hadamard_element(f, g, M_ON_CIRCLE)
}

/// `(Σ_γ^n − Id) H (z)` by continuation of `H` around `n` loops through `z`,
/// together with the tracker error estimate.
pub fn monodromy_difference(h: &dyn AnalyticElement, gamma: Complex64, z: Point, n: i32) -> Result<(Complex64, f64)> {
    let t0 = h.start(z)?;
    let mut t = t0.box_clone();
    loop_tracker(t.as_mut(), h, gamma, n)?;
    Ok((t.value() - t0.value(), t.err_estimate() + t0.err_estimate()))
}

/// One rhs term `Δ_α Σ_α^k F ⋆̄ Δ_β Σ_β^k G (z)`.
pub fn pair_term(f: &Element, g: &Element, alpha: Complex64, beta: Complex64, k: i32, z: Point, config: &QuadratureConfig) -> Result<Complex64> {
    let df = DeltaElement::new(f.clone(), alpha, k);
    let dg = DeltaElement::new(g.clone(), beta, k);
    bar_star(&df, &dg, alpha, beta, z, config)
}

/// The terms of the rhs of the iterated formula, in `(pair, k)` lexicographic order.
pub fn eq1_rhs_terms(
    f: &Element,
    g: &Element,
    gamma: Complex64,
    n: usize,
    z: Point,
    config: &QuadratureConfig,
) -> Result<Vec<((Complex64, Complex64), usize, Complex64)>> {
    let pairs = PairDecomposition::new(&f.singularities(), &g.singularities(), gamma);
    let mut out = Vec::new();
    for &(alpha, beta) in &pairs.pairs {
        for k in 0..n {
            out.push(((alpha, beta), k, pair_term(f, g, alpha, beta, k as i32, z, config)?));
        }
    }
    Ok(out)
}

/// `−(1/2πi) Σ_{αβ=γ} Σ_{k<N} ∫ Δ_αΣ^k F · Δ_βΣ^k G du/u`.
pub fn eq1_rhs(f: &Element, g: &Element, gamma: Complex64, n: usize, z: Point, config: &QuadratureConfig) -> Result<Complex64> {
    Ok(eq1_rhs_terms(f, g, gamma, n, z, config)?.into_iter().map(|(_, _, v)| v).sum())
}

/// Two-sided check of `(Σ_γ^N − Id)(F⊙G)(z) = rhs`.
pub fn iterated_formula_residual(
    f: &Element,
    g: &Element,
    product: &dyn AnalyticElement,
    gamma: Complex64,
    n: usize,
    z: Point,
    config: &QuadratureConfig,
) -> Result<ResidualRecord> {
    let (lhs, err) = monodromy_difference(product, gamma, z, n as i32)?;
    let rhs = eq1_rhs(f, g, gamma, n, z, config)?;
    let mut rec = ResidualRecord::new(
        "iterated-monodromy",
        serde_json::json!({ "gamma": [gamma.re, gamma.im], "N": n }),
        z.value(),
        lhs,
        rhs,
    );
    rec.err_estimates = vec![err];
    Ok(rec)
}

/// Nested bar-star rhs of the several-factor formula (at most three factors).
pub fn multi_factor_rhs(factors: &[Element], gamma: Complex64, n: usize, z: Point, config: &QuadratureConfig) -> Result<Complex64> {
    match factors.len() {
        0 | 1 => Err(Error::InvalidInput("the several-factor formula needs at least two factors".into())),
        2 => eq1_rhs(&factors[0], &factors[1], gamma, n, z, config),
        3 => {
            let sing: Vec<Vec<Complex64>> = factors.iter().map(|f| f.singularities()).collect();
            let inner_config = config.coarsened();
            let mut total = Complex64::new(0.0, 0.0);
            for t in tuple_decomposition(&sing, gamma) {
                for k in 0..n as i32 {
                    let inner = BarStarElement {
                        f: DeltaElement::shared(factors[1].clone(), t[1], k),
                        g: DeltaElement::shared(factors[2].clone(), t[2], k),
                        alpha: t[1],
                        beta: t[2],
                        config: inner_config,
                    };
                    let outer = DeltaElement::new(factors[0].clone(), t[0], k);
                    total += bar_star(&outer, &inner, t[0], t[1] * t[2], z, config)?;
                }
            }
            Ok(total)
        }
        d => Err(Error::UnsupportedDepth(d)),
    }
}

/// Two-sided check of `Δ_γΣ_γ^k(F⊙G) = Σ_{αβ=γ} Δ_αΣ_α^k F ⋆̄ Δ_βΣ_β^k G`.
pub fn morphism_residual(
    f: &Element,
    g: &Element,
    product: &dyn AnalyticElement,
    gamma: Complex64,
    k: usize,
    z: Point,
    config: &QuadratureConfig,
) -> Result<ResidualRecord> {
    let mut t = product.start(z)?;
    loop_tracker(t.as_mut(), product, gamma, k as i32)?;
    let before = t.value();
    loop_tracker(t.as_mut(), product, gamma, 1)?;
    let lhs = t.value() - before;
    let pairs = PairDecomposition::new(&f.singularities(), &g.singularities(), gamma);
    let mut rhs = Complex64::new(0.0, 0.0);
    for &(alpha, beta) in &pairs.pairs {
        rhs += pair_term(f, g, alpha, beta, k as i32, z, config)?;
    }
    let mut rec = ResidualRecord::new(
        "morphism",
        serde_json::json!({ "gamma": [gamma.re, gamma.im], "k": k }),
        z.value(),
        lhs,
        rhs,
    );
    rec.err_estimates = vec![t.err_estimate()];
    Ok(rec)
}

/// `∮ f du` along one counterclockwise loop around `α` through `z`, with `f`
/// continued from its principal branch at `z`.
pub fn loop_integral(f: &dyn AnalyticElement, alpha: Complex64, z: Point) -> Result<Complex64> {
    let path = Path::loop_around(alpha, z, 1);
    let (x, w) = gauss_legendre(16);
    let mut t = f.start(z)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for win in path.vertices().windows(2) {
        let (a, b) = (win[0], win[1]);
        let d = b.minus(alpha) - a.minus(alpha);
        let mut probe = t.box_clone();
        for (xi, wi) in x.iter().zip(&w) {
            let off = a.minus(alpha) + d * (0.5 * (xi + 1.0));
            probe.advance(Point::new(alpha, off))?;
            acc += probe.value() * d * (0.5 * wi);
        }
        t.advance(b)?;
    }
    Ok(acc)
}

/// Two-sided check of `Δ_α ∫_α^z f = ∫_α^z Δ_α f`.
pub fn fundamental_formula_residual(f: &Element, alpha: Complex64, z: Point, config: &QuadratureConfig) -> Result<ResidualRecord> {
    let lhs = loop_integral(f.as_ref(), alpha, z)?;
    let delta = DeltaElement::new(f.clone(), alpha, 0);
    let mut failure = None;
    let rhs = segment_integral_delta(
        |p| match delta.eval(Point::new(alpha, p.from_a)) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(f64::NAN, 0.0)
            }
        },
        alpha,
        z.minus(alpha),
        config,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(ResidualRecord::new(
        "fundamental-integro-monodromy",
        serde_json::json!({ "alpha": [alpha.re, alpha.im] }),
        z.value(),
        lhs,
        rhs?,
    ))
}

/// Chords per turn when the bar-star integrand is carried around `γ`.
const PARAMETRIC_CHORDS: usize = 36;

/// `Δ_γ (f ⋆̄ g)(z)` by continuing the bar-star integral itself once around
/// `γ = αβ`: for every quadrature node the integrand factors are carried
/// along the deformation `z(t) = γ + (z − γ) e^{it}` of the endpoint.
pub fn barstar_loop_difference(
    f: &dyn AnalyticElement,
    g: &dyn AnalyticElement,
    alpha: Complex64,
    beta: Complex64,
    z: Point,
    config: &QuadratureConfig,
) -> Result<Complex64> {
    let gamma = alpha * beta;
    let dz = z.minus(gamma);
    let db = dz / beta;
    let mut failure = None;
    let node = |s: f64, one_minus_s: f64| -> Result<Complex64> {
        let u_off = db * s;
        let u = alpha + u_off;
        let w_off = dz * one_minus_s / u;
        let mut ft = f.start(Point::new(alpha, u_off))?;
        let mut gt = g.start(Point::new(beta, w_off))?;
        let before = ft.value() * gt.value();
        for j in 1..=PARAMETRIC_CHORDS {
            let rot = if j == PARAMETRIC_CHORDS { Complex64::new(1.0, 0.0) } else { Complex64::from_polar(1.0, TAU * j as f64 / PARAMETRIC_CHORDS as f64) };
            let dzj = dz * rot;
            let uj_off = dzj / beta * s;
            let uj = alpha + uj_off;
            ft.advance(Point::new(alpha, uj_off))?;
            gt.advance(Point::new(beta, dzj * one_minus_s / uj))?;
        }
        Ok((ft.value() * gt.value() - before) * db / u)
    };
    let v = segment_integral_delta(
        |p| {
            // Parameter s ∈ [0, 1] along the segment, with exact complements.
            match node(p.from_a.re, -p.from_b.re) {
                Ok(x) => x,
                Err(e) => {
                    failure.get_or_insert(e);
                    Complex64::new(f64::NAN, 0.0)
                }
            }
        },
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        config,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(-v? / crate::numerics::two_pi_i())
}

/// Two-sided check of `Δ_γ(Δ_αF ⋆̄ Δ_βG) = Δ_αΣ_αF ⋆̄ Δ_βΣ_βG − Δ_αF ⋆̄ Δ_βG`.
pub fn barstar_monodromy_residual(
    f: &Element,
    g: &Element,
    alpha: Complex64,
    beta: Complex64,
    z: Point,
    config: &QuadratureConfig,
) -> Result<ResidualRecord> {
    let df = DeltaElement::new(f.clone(), alpha, 0);
    let dg = DeltaElement::new(g.clone(), beta, 0);
    let lhs = barstar_loop_difference(&df, &dg, alpha, beta, z, config)?;
    let rhs = pair_term(f, g, alpha, beta, 1, z, config)? - pair_term(f, g, alpha, beta, 0, z, config)?;
    Ok(ResidualRecord::new(
        "barstar-monodromy",
        serde_json::json!({ "alpha": [alpha.re, alpha.im], "beta": [beta.re, beta.im] }),
        z.value(),
        lhs,
        rhs,
    ))
}
