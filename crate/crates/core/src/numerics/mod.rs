//! Quadrature rules and scalar special values shared by every other module.

mod gamma;
mod quadrature;

pub use gamma::complex_gamma;
pub use quadrature::{
    circle_integral, gauss_legendre, segment_integral_delta, segment_integral_points, segment_integral_singular,
    SegmentPoint,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TAU: f64 = std::f64::consts::TAU;

/// `2πi`, the normalisation of every contour integral in the crate.
pub fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, TAU)
}

/// Settings shared by the circle rule and the double-exponential segment rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Number of equispaced nodes on circular contours.
    pub circle_nodes: usize,
    /// Minimum tanh-sinh level; the step is `2^-de_level`.
    pub de_level: u32,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { circle_nodes: 512, de_level: 4, abs_tol: 1e-13, rel_tol: 1e-13 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.circle_nodes < 16 {
            return Err(Error::InvalidConfig(format!(
                "circle_nodes must be at least 16, got {}",
                self.circle_nodes
            )));
        }
        if self.de_level < 3 {
            return Err(Error::InvalidConfig(format!(
                "de_level must be at least 3, got {}",
                self.de_level
            )));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        Ok(())
    }

    /// The same configuration with every node count doubled.
    pub fn refined(&self) -> Self {
        Self { circle_nodes: 2 * self.circle_nodes, de_level: self.de_level + 1, ..*self }
    }

    /// A cheaper configuration for inner levels of nested quadrature.
    pub fn coarsened(&self) -> Self {
        Self {
            circle_nodes: (self.circle_nodes / 4).max(16),
            de_level: self.de_level.saturating_sub(1).max(3),
            ..*self
        }
    }
}

/// A complex point stored as `anchor + offset`.
///
/// Points that sit extremely close to a singularity keep their displacement
/// from it exactly: `minus(anchor)` returns the stored offset without the
/// cancellation a plain subtraction would suffer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub anchor: Complex64,
    pub offset: Complex64,
}

impl Point {
    pub fn new(anchor: Complex64, offset: Complex64) -> Self {
        Self { anchor, offset }
    }

    pub fn at(z: Complex64) -> Self {
        Self { anchor: z, offset: Complex64::new(0.0, 0.0) }
    }

    pub fn value(&self) -> Complex64 {
        self.anchor + self.offset
    }

    /// `self − c`, exact in the offset when `c` equals the anchor.
    pub fn minus(&self, c: Complex64) -> Complex64 {
        if c == self.anchor {
            self.offset
        } else {
            (self.anchor - c) + self.offset
        }
    }

    pub fn dist(&self, c: Complex64) -> f64 {
        self.minus(c).norm()
    }

    /// Re-anchor at `c`, keeping `self − c` as accurate as possible.
    pub fn rebase(&self, c: Complex64) -> Self {
        Self { anchor: c, offset: self.minus(c) }
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::at(z)
    }
}
