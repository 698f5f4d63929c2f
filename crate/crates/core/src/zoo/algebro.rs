use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::phase::PhaseLog;
use crate::continuation::{AnalyticElement, RecurrenceRelation, Tracker};
use crate::error::{Error, Result};
use crate::numerics::{two_pi_i, Point};
use crate::poly::{self, Poly};

/// Largest supported degree of the holomorphic factor.
pub const MAX_PHI_DEGREE: usize = 4;

/// `(z − α)^{-a} (log(z − α)/2πi)^n φ(z)` with `φ` a polynomial.
///
/// `log(z − α)` is `Log(−α) + log(1 − z/α)` with the second term continued
/// along the path, so each counterclockwise loop adds `2πi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebroGeometricElement {
    pub alpha: Complex64,
    pub a: Complex64,
    pub n: u32,
    pub phi: Poly,
}

impl AlgebroGeometricElement {
    pub fn new(alpha: Complex64, a: Complex64, n: u32, phi: Poly) -> Result<Self> {
        if alpha.norm() == 0.0 {
            return Err(Error::InvalidInput("singularity at the origin".into()));
        }
        if poly::trim(phi.clone()).len() > MAX_PHI_DEGREE + 1 {
            return Err(Error::InvalidInput(format!("φ has degree above {MAX_PHI_DEGREE}")));
        }
        Ok(Self { alpha, a, n, phi })
    }

    fn value_from_log(&self, big_log: Complex64, z: Complex64) -> Complex64 {
        (-self.a * big_log).exp() * (big_log / two_pi_i()).powu(self.n) * poly::eval(&self.phi, z)
    }
}

/// Closed-form `Σ_α^k` branch: `e^{-2πika}(z − α)^{-a}(log(z − α)/2πi + k)^n φ(z)`
/// with the principal logarithm at `z`.
pub fn algebro_geometric_sigma(el: &AlgebroGeometricElement, k: i32, z: Point) -> Complex64 {
    let log = PhaseLog::new(el.alpha, z);
    let big_log = (-el.alpha).ln() + log.value() + two_pi_i() * k as f64;
    el.value_from_log(big_log, z.value())
}

#[derive(Debug, Clone)]
struct AlgebroTracker {
    el: AlgebroGeometricElement,
    log: PhaseLog,
}

impl Tracker for AlgebroTracker {
    fn position(&self) -> Point {
        self.log.position
    }

    fn value(&self) -> Complex64 {
        let big_log = (-self.el.alpha).ln() + self.log.value();
        self.el.value_from_log(big_log, self.log.position.value())
    }

    fn advance(&mut self, to: Point) -> Result<()> {
        self.log.advance(to);
        Ok(())
    }

    fn box_clone(&self) -> Box<dyn Tracker> {
        Box::new(self.clone())
    }
}

impl AnalyticElement for AlgebroGeometricElement {
    fn singularities(&self) -> Vec<Complex64> {
        vec![self.alpha]
    }

    fn start(&self, p: Point) -> Result<Box<dyn Tracker>> {
        Ok(Box::new(AlgebroTracker { el: self.clone(), log: PhaseLog::new(self.alpha, p) }))
    }

    fn is_zero(&self) -> bool {
        self.phi.iter().all(|c| c.norm() == 0.0)
    }
}

/// The order-`(n+1)` recurrence of the branches of an algebro-geometric
/// singularity with exponent `a` and log power `n`.
///
/// With `λ = e^{-2πia}` the branches are `λ^k P(k)` for a polynomial `P` of
/// degree `n`, so the relation `Σ^{n+1} = Σ_j a_j Σ^j` holds when
/// `a_j = λ^{n+1-j} b_j` and `Σ_j b_j j^l = (n+1)^l` for `l ≤ n`. The
/// Vandermonde system for `b` is solved by Lagrange interpolation at the
/// nodes `0..=n`.
pub fn vandermonde_recurrence(a: Complex64, n: usize) -> RecurrenceRelation {
    let lambda = (-two_pi_i() * a).exp();
    let x = (n + 1) as f64;
    let coefficients = (0..=n)
        .map(|j| {
            let b: f64 = (0..=n).filter(|&i| i != j).map(|i| (x - i as f64) / (j as f64 - i as f64)).product();
            lambda.powu((n + 1 - j) as u32) * b
        })
        .collect();
    RecurrenceRelation::new(coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuation::sigma_values;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn binom(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn vandermonde_matches_binomial_expansion() {
        let a = c(0.3, 0.1);
        let lambda = (-two_pi_i() * a).exp();
        for n in 0..=3usize {
            let rel = vandermonde_recurrence(a, n);
            assert_eq!(rel.order, n + 1);
            for (j, coef) in rel.coefficients.iter().enumerate() {
                // (x − λ)^{n+1} = x^{n+1} − Σ a_j x^j
                let sign = if (n + 1 - j) % 2 == 0 { -1.0 } else { 1.0 };
                let want = lambda.powu((n + 1 - j) as u32) * binom(n + 1, j) * sign;
                assert!((coef - want).norm() < 1e-12, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn closed_form_branches_match_continuation() {
        let el = AlgebroGeometricElement::new(c(1.0, 0.0), c(0.5, 0.0), 1, vec![c(1.0, 0.0), c(0.5, -0.2)]).unwrap();
        let z = Point::at(c(0.55, 0.3));
        let vals = sigma_values(&el, c(1.0, 0.0), z, 3).unwrap();
        for (k, v) in vals.iter().enumerate() {
            let want = algebro_geometric_sigma(&el, k as i32, z);
            assert!((v - want).norm() < 1e-12 * (1.0 + want.norm()), "k={k}");
        }
        let rel = vandermonde_recurrence(el.a, 1);
        assert!(rel.defect(&vals, 0).norm() < 1e-11);
        assert!(rel.defect(&vals, 1).norm() < 1e-11);
    }

    #[test]
    fn zero_log_power_is_a_power_branch() {
        let el = AlgebroGeometricElement::new(c(2.0, 0.0), c(1.0 / 3.0, 0.0), 0, vec![c(1.0, 0.0)]).unwrap();
        let z = Point::at(c(0.7, -0.4));
        let ratio = algebro_geometric_sigma(&el, 1, z) / algebro_geometric_sigma(&el, 0, z);
        assert!((ratio - (-two_pi_i() / 3.0).exp()).norm() < 1e-14);
    }
}
