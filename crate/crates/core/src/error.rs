use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("contour hits a singularity: non-finite integrand at node {node}")]
    ContourHitsSingularity { node: Complex64 },

    #[error("non-integrable endpoint singularity on segment [{a}, {b}]")]
    NonIntegrableEndpoint { a: Complex64, b: Complex64 },

    #[error("non-finite integrand at interior point {at}")]
    NonFinite { at: Complex64 },

    #[error("gamma function pole at {0}")]
    GammaPole(Complex64),

    #[error("point {z} lies outside the trust disk of radius {radius} around {center}")]
    OutOfDisk { z: Complex64, center: Complex64, radius: f64 },

    #[error("recenter step of length {step} exceeds the allowed {limit}")]
    StepViolation { step: f64, limit: f64 },

    #[error("path comes within {distance:e} of singularity {singularity} (clearance {clearance:e})")]
    PathTooClose { singularity: Complex64, distance: f64, clearance: f64 },

    #[error("accuracy loss during continuation: {0}")]
    AccuracyLoss(String),

    #[error("radius {r} outside the admissible annulus ({lo}, {hi})")]
    InvalidAnnulus { r: f64, lo: f64, hi: f64 },

    #[error("nested convolution depth {0} is not supported (at most 3 factors)")]
    UnsupportedDepth(usize),

    #[error("parameter outside the domain: {0}")]
    Domain(String),

    #[error("degenerate parameters are not supported: {0}")]
    UnsupportedDegenerate(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}
