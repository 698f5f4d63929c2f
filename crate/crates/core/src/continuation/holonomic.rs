//! Continuation of solutions of linear differential systems `lead(z)·Y' = M(z)·Y`.
//!
//! Local Taylor coefficients are regenerated from the system at every step,
//! so the branch structure comes from the equation rather than from a
//! truncated polynomial (which has no monodromy of its own).

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::element::{AnalyticElement, Tracker};
use super::path::{segment_distance, StepPolicy};
use crate::error::{Error, Result};
use crate::germs::{CoeffSeries, HyperSeries};
use crate::numerics::Point;
use crate::poly::{self, Poly};

const MAX_STEPS: usize = 20_000;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `lead(z) Y'(z) = M(z) Y(z)` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub lead: Poly,
    pub matrix: Vec<Vec<Poly>>,
    /// Zeros of `lead`.
    pub singular_points: Vec<Complex64>,
}

impl LinearSystem {
    pub fn new(lead: Poly, matrix: Vec<Vec<Poly>>) -> Self {
        let singular_points = poly::roots(&lead)
            .into_iter()
            .fold(Vec::<Complex64>::new(), |mut acc, r| {
                let r = if r.norm() < 1e-13 { zero() } else { r };
                if !acc.iter().any(|s| (s - r).norm() < 1e-9 * (1.0 + r.norm())) {
                    acc.push(r);
                }
                acc
            });
        Self { lead, matrix, singular_points }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// Companion system of the scalar equation satisfied by a hypergeometric-class series:
    /// `[γ Π(θ + b_j − 1) − z Π(θ + a_i)] y = 0` with `θ = z d/dz`.
    pub fn from_hyper(h: &HyperSeries) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let mut p: Poly = vec![h.singularity];
        for b in &h.den {
            p = poly::mul(&p, &[b - 1.0, one]);
        }
        let mut q: Poly = vec![one];
        for a in &h.num {
            q = poly::mul(&q, &[*a, one]);
        }
        let r = (p.len().max(q.len()) - 1).max(1);
        // c_j(z) = z^j Σ_k p_k S(k, j) − z^{j+1} Σ_k q_k S(k, j)
        let s2 = stirling2(r);
        let mut c: Vec<Poly> = Vec::with_capacity(r + 1);
        for j in 0..=r {
            let mut pj = zero();
            let mut qj = zero();
            for k in j..=r {
                pj += p.get(k).copied().unwrap_or_default() * s2[k][j];
                qj += q.get(k).copied().unwrap_or_default() * s2[k][j];
            }
            let mut cj = vec![zero(); j + 2];
            cj[j] = pj;
            cj[j + 1] = -qj;
            c.push(poly::trim(cj));
        }
        // Divide out the common power of z (the equation of a power branch is
        // regular at the origin).
        let e = c
            .iter()
            .filter(|cj| !cj.is_empty())
            .map(|cj| cj.iter().take_while(|v| v.norm() == 0.0).count())
            .min()
            .unwrap_or(0);
        for cj in &mut c {
            if cj.len() >= e {
                cj.drain(..e);
            }
        }
        let lead = c[r].clone();
        let mut matrix = vec![vec![Vec::new(); r]; r];
        for i in 0..r - 1 {
            matrix[i][i + 1] = lead.clone();
        }
        for j in 0..r {
            matrix[r - 1][j] = poly::scale(&c[j], -one);
        }
        Self::new(lead, matrix)
    }

    /// Vector Taylor coefficients `Y_0..Y_{len-1}` at `center` with `Y_0 = y0`.
    pub fn local_coefficients(&self, center: Complex64, y0: &[Complex64], len: usize) -> Vec<Vec<Complex64>> {
        let r = self.dim();
        let l = poly::taylor_shift(&self.lead, center);
        let m: Vec<Vec<Poly>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| poly::taylor_shift(e, center)).collect())
            .collect();
        let deg_m = m.iter().flatten().map(|e| e.len()).max().unwrap_or(0);
        let mut ys: Vec<Vec<Complex64>> = Vec::with_capacity(len);
        ys.push(y0.to_vec());
        for n in 0..len.saturating_sub(1) {
            let mut acc = vec![zero(); r];
            for i in 0..deg_m.min(n + 1) {
                let y = &ys[n - i];
                for a in 0..r {
                    for b in 0..r {
                        if let Some(coef) = m[a][b].get(i) {
                            acc[a] += coef * y[b];
                        }
                    }
                }
            }
            for i in 1..l.len().min(n + 1) {
                let f = l[i] * (n - i + 1) as f64;
                let y = &ys[n - i + 1];
                for a in 0..r {
                    acc[a] -= f * y[a];
                }
            }
            let d = l[0] * (n + 1) as f64;
            ys.push(acc.into_iter().map(|v| v / d).collect());
        }
        ys
    }

    fn distance(&self, p: Point) -> f64 {
        self.singular_points.iter().map(|s| p.dist(*s)).fold(f64::INFINITY, f64::min)
    }
}

fn stirling2(n: usize) -> Vec<Vec<f64>> {
    let mut s = vec![vec![0.0; n + 1]; n + 1];
    s[0][0] = 1.0;
    for k in 1..=n {
        for j in 1..=k {
            s[k][j] = j as f64 * s[k - 1][j] + s[k - 1][j - 1];
        }
    }
    s
}

fn sum_series(coeffs: &[Vec<Complex64>], h: Complex64) -> Vec<Complex64> {
    let r = coeffs[0].len();
    let mut out = vec![zero(); r];
    for c in coeffs.iter().rev() {
        for a in 0..r {
            out[a] = out[a] * h + c[a];
        }
    }
    out
}

fn terms_for(rho: f64) -> usize {
    if rho <= 0.0 {
        return 2;
    }
    ((-41.0 / rho.ln()).ceil() as usize + 3).clamp(8, 400)
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// A solution vector of a [`LinearSystem`] carried along paths.
#[derive(Clone)]
pub struct HolonomicTracker {
    system: Arc<LinearSystem>,
    output: usize,
    policy: StepPolicy,
    position: Point,
    y: Vec<Complex64>,
    err: f64,
    last: Option<(Vec<Vec<Complex64>>, Complex64)>,
}

impl HolonomicTracker {
    pub fn new(system: Arc<LinearSystem>, output: usize, policy: StepPolicy, position: Point, y: Vec<Complex64>) -> Self {
        Self { system, output, policy, position, y, err: 0.0, last: None }
    }

    pub fn state(&self) -> &[Complex64] {
        &self.y
    }
}

impl Tracker for HolonomicTracker {
    fn position(&self) -> Point {
        self.position
    }

    fn value(&self) -> Complex64 {
        self.y[self.output]
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        let from = self.position;
        for &s in &self.system.singular_points {
            let d = segment_distance(from, to, s);
            if d == 0.0 || d < 1e-12 * (1.0 + s.norm()) {
                return Err(Error::PathTooClose { singularity: s, distance: d, clearance: 1e-12 });
            }
        }
        for _ in 0..MAX_STEPS {
            let c = self.position.value();
            let remaining = to.value() - c;
            let rlen = remaining.norm();
            if rlen == 0.0 {
                self.position = to;
                return Ok(());
            }
            let d = self.system.distance(self.position);
            let hmax = self.policy.theta * d;
            let (h, done) = if rlen <= hmax { (remaining, true) } else { (remaining * (hmax / rlen), false) };
            let back = self.last.as_ref().map(|(_, hp)| hp.norm() * 0.5).unwrap_or(0.0);
            let n = terms_for((h.norm().max(back)) / d);
            let coeffs = self.system.local_coefficients(c, &self.y, n);
            let scale = max_norm(&self.y).max(1.0);
            if let Some((prev, hp)) = &self.last {
                let old = sum_series(prev, *hp * 0.5);
                let new = sum_series(&coeffs, -*hp * 0.5);
                let drift = old.iter().zip(&new).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale;
                if drift > self.policy.drift_ceiling {
                    return Err(Error::AccuracyLoss(format!(
                        "overlap drift {drift:e} at {c} exceeds {:e}",
                        self.policy.drift_ceiling
                    )));
                }
                self.err += drift * scale;
            }
            self.y = sum_series(&coeffs, h);
            self.err += f64::EPSILON * scale;
            self.last = Some((coeffs, h));
            self.position = if done { to } else { Point::at(c + h) };
            if done {
                return Ok(());
            }
        }
        Err(Error::AccuracyLoss(format!("step budget exhausted moving from {} to {}", from.value(), to.value())))
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }

    fn err_estimate(&self) -> f64 {
        self.err
    }

    fn taylor(&self, len: usize) -> Option<Vec<Complex64>> {
        let coeffs = self.system.local_coefficients(self.position.value(), &self.y, len);
        Some(coeffs.into_iter().map(|v| v[self.output]).collect())
    }
}

/// Initial data of a [`HolonomicElement`]: the state vector at a point of the anchor disk.
pub type InitialData = Arc<dyn Fn(Complex64) -> Vec<Complex64> + Send + Sync>;

/// An element defined by a linear system and initial data near the origin.
///
/// The principal branch at `z` is obtained by continuing from the anchor
/// disk `|z| ≤ anchor_radius` along the ray towards `z`.
#[derive(Clone)]
pub struct HolonomicElement {
    pub system: Arc<LinearSystem>,
    pub output: usize,
    pub anchor_radius: f64,
    pub policy: StepPolicy,
    initial: InitialData,
    singularities: Vec<Complex64>,
    hyper: Option<Vec<HyperSeries>>,
    label: String,
}

impl fmt::Debug for HolonomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HolonomicElement")
            .field("label", &self.label)
            .field("dim", &self.system.dim())
            .field("singularities", &self.singularities)
            .finish()
    }
}

impl HolonomicElement {
    pub fn new(
        system: LinearSystem,
        output: usize,
        anchor_radius: f64,
        initial: InitialData,
        singularities: Vec<Complex64>,
        label: impl Into<String>,
    ) -> Self {
        Self {
            system: Arc::new(system),
            output,
            anchor_radius,
            policy: StepPolicy::default(),
            initial,
            singularities,
            hyper: None,
            label: label.into(),
        }
    }

    /// The hypergeometric-class function whose Taylor coefficients at 0 are
    /// `series` and whose equation comes from `h`.
    ///
    /// `series` may be any truncation (typically a Hadamard coefficient
    /// product); it only supplies initial data inside `|z| ≤ |γ|/2`.
    pub fn from_series(h: &HyperSeries, series: &CoeffSeries) -> Self {
        let system = LinearSystem::from_hyper(h);
        let r = system.dim();
        let mut derivs: Vec<Poly> = vec![series.coefficients.clone()];
        for _ in 1..r {
            let next = poly::derivative(derivs.last().expect("non-empty"));
            derivs.push(next);
        }
        let derivs = Arc::new(derivs);
        let initial: InitialData = Arc::new(move |z| derivs.iter().map(|p| poly::eval(p, z)).collect());
        let mut el = Self::new(
            system,
            0,
            0.5 * h.singularity.norm(),
            initial,
            vec![h.singularity],
            format!("hyper{:?}/{:?}@{}", h.num, h.den, h.singularity),
        );
        el.hyper = Some(vec![h.clone()]);
        el
    }

    pub fn hypergeometric(h: &HyperSeries, m: usize) -> Self {
        Self::from_series(h, &h.to_coeff_series(m))
    }

    pub fn with_policy(mut self, policy: StepPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn tracker_at(&self, p: Point) -> Result<HolonomicTracker> {
        let z = p.value();
        let r = z.norm();
        if r <= self.anchor_radius {
            return Ok(HolonomicTracker::new(self.system.clone(), self.output, self.policy, p, (self.initial)(z)));
        }
        let z0 = z * (self.anchor_radius / r);
        let mut t = HolonomicTracker::new(self.system.clone(), self.output, self.policy, Point::at(z0), (self.initial)(z0));
        t.advance(p)?;
        Ok(t)
    }
}

impl AnalyticElement for HolonomicElement {
    fn singularities(&self) -> Vec<Complex64> {
        self.singularities.clone()
    }

    fn sheet_singularities(&self) -> Vec<Complex64> {
        self.system.singular_points.clone()
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Ok(Box::new(self.tracker_at(p)?))
    }

    fn hyper_terms(&self) -> Option<Vec<HyperSeries>> {
        self.hyper.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn power_branch_equation_has_expected_singular_points() {
        let h = HyperSeries::power_branch(c(2.0, 0.0), c(0.5, 0.0)).unwrap();
        let sys = LinearSystem::from_hyper(&h);
        assert_eq!(sys.dim(), 1);
        assert_eq!(sys.singular_points.len(), 1);
        assert!((sys.singular_points[0] - 2.0).norm() < 1e-12);
        // The Gauss equation keeps its regular singular point at the origin.
        let g = LinearSystem::from_hyper(&HyperSeries::gauss(c(0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0)).unwrap());
        assert_eq!(g.dim(), 2);
        assert_eq!(g.singular_points.len(), 2);
    }

    #[test]
    fn local_coefficients_reproduce_series() {
        // Taylor data at 0.3 of (1 − z)^{-1/2}: coefficients (1/2)_n/n! (0.7)^{-1/2-n}
        let h = HyperSeries::power_branch(c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        let sys = LinearSystem::from_hyper(&h);
        let z0 = c(0.3, 0.0);
        let y0 = vec![(1.0 - z0).powf(-0.5)];
        let cs = sys.local_coefficients(z0, &y0, 6);
        let mut want = 0.7_f64.powf(-0.5);
        for (n, v) in cs.iter().enumerate() {
            assert!((v[0].re - want).abs() < 1e-13 * want, "n={n}");
            want *= (0.5 + n as f64) / ((n + 1) as f64 * 0.7);
        }
    }

    #[test]
    fn square_root_changes_sign_around_its_branch_point() {
        let h = HyperSeries::power_branch(c(1.0, 0.0), c(-0.5, 0.0)).unwrap();
        let el = HolonomicElement::hypergeometric(&h, 256);
        let base = Point::at(c(0.0, 0.0));
        let path = crate::continuation::Path::loop_around(c(1.0, 0.0), base, 1);
        let t = crate::continuation::continue_germ(&el, &path, &StepPolicy::default()).unwrap();
        assert!((t.value() + 1.0).norm() < 1e-12, "{}", t.value());
    }
}
