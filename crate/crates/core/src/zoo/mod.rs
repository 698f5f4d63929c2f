//! Closed-form families with exact singularity data and exact monodromy,
//! and the special-function identities they satisfy.

mod algebraic;
mod algebro;
mod descriptor;
mod fractional;
mod phase;
mod polylog;
mod power;
mod special;

pub use algebraic::{AlgebraicElement, ROOT_SEPARATION};
pub use algebro::{algebro_geometric_sigma, vandermonde_recurrence, AlgebroGeometricElement, MAX_PHI_DEGREE};
pub use descriptor::{AlgebraicFamily, ZooDescriptor};
pub use fractional::{fractional_integral, FractionalIntegral};
pub use phase::PhaseLog;
pub use polylog::{polylog_delta_exact, polylog_eval, polylog_series, PolylogElement, POLYLOG_SERIES_RADIUS};
pub use power::{orientation_sign, power_sigma_exact, LogBranch, PowerBranch, PowerSigma};
pub use special::{
    elliptic_k_agm, elliptic_k_norm, euler_2f1, hyp2f1, hyp2f1_delta, modular_delta_closed_form, Hypergeometric2F1,
    HYP2F1_SERIES_RADIUS,
};
