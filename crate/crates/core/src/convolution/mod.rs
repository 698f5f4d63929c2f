//! The Plancherel-Hadamard contour evaluation, the bar-star convolution and
//! two-sided residuals of the monodromy identities for Hadamard products.

mod barstar;
mod contour;
mod pairs;
mod residuals;

pub use barstar::{bar_star, bar_star_avoiding, BarStarElement, BUMP_FRACTION};
pub use contour::{convergence_radius, hadamard_eval_contour};
pub use pairs::{tuple_decomposition, PairDecomposition, PAIR_TOL};
pub use residuals::{
    annulus_point, barstar_loop_difference, barstar_monodromy_residual, eq1_rhs, eq1_rhs_terms,
    fundamental_formula_residual, hadamard_element, hadamard_element_default, iterated_formula_residual, loop_integral,
    monodromy_difference, morphism_residual, multi_factor_rhs, pair_term, ResidualRecord,
};
