use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::numerics::Point;

/// `log(1 − z/α)` carried along a path with an unreduced argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseLog {
    pub alpha: Complex64,
    pub position: Point,
    /// Continuous argument of `1 − z/α`.
    pub phase: f64,
}

impl PhaseLog {
    /// Starts on the principal branch, cut along the ray from `α` away from the origin.
    pub fn new(alpha: Complex64, p: Point) -> Self {
        let w = -p.minus(alpha) / alpha;
        Self { alpha, position: p, phase: w.arg() }
    }

    /// Moves along the straight segment to `to`, which must not pass through `α`.
    pub fn advance(&mut self, to: Point) {
        // Difference of arguments, so that offsets near underflow stay exact.
        let mut turn = to.minus(self.alpha).arg() - self.position.minus(self.alpha).arg();
        if turn > PI {
            turn -= TAU;
        } else if turn <= -PI {
            turn += TAU;
        }
        self.phase += turn;
        self.position = to;
    }

    /// Current value of `log(1 − z/α)`.
    pub fn value(&self) -> Complex64 {
        let q = self.position.value() / self.alpha;
        let re = if q.norm() < 0.5 {
            // ln|1 − q| without cancellation for small q
            0.5 * (q.norm_sqr() - 2.0 * q.re).ln_1p()
        } else {
            self.position.minus(self.alpha).norm().ln() - self.alpha.norm().ln()
        };
        Complex64::new(re, self.phase)
    }

    /// `α − z` at the current position.
    pub fn alpha_minus_z(&self) -> Complex64 {
        -self.position.minus(self.alpha)
    }
}
