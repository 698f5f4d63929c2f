use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative tolerance on `α·β = γ`.
pub const PAIR_TOL: f64 = 1e-9;

/// All pairs `(α, β)` of singularities of `F` and `G` with `α·β = γ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDecomposition {
    pub gamma: Complex64,
    pub pairs: Vec<(Complex64, Complex64)>,
}

impl PairDecomposition {
    pub fn new(f_singularities: &[Complex64], g_singularities: &[Complex64], gamma: Complex64) -> Self {
        let mut pairs = Vec::new();
        for &a in f_singularities {
            for &b in g_singularities {
                if (a * b - gamma).norm() <= PAIR_TOL * gamma.norm().max(f64::MIN_POSITIVE)
                    && !pairs.contains(&(a, b))
                {
                    pairs.push((a, b));
                }
            }
        }
        Self { gamma, pairs }
    }

    /// Number of pairs over `γ`.
    pub fn multiplicity(&self) -> usize {
        self.pairs.len()
    }
}

/// All ordered tuples `(α_1, …, α_n)` with `α_i` a singularity of the `i`-th
/// factor and `Π α_i = γ`.
pub fn tuple_decomposition(singularities: &[Vec<Complex64>], gamma: Complex64) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = vec![Vec::new()];
    for s in singularities {
        out = out
            .into_iter()
            .flat_map(|t| s.iter().map(move |a| t.iter().copied().chain(std::iter::once(*a)).collect::<Vec<_>>()))
            .collect();
    }
    out.retain(|t| {
        let p: Complex64 = t.iter().product();
        (p - gamma).norm() <= PAIR_TOL * gamma.norm().max(f64::MIN_POSITIVE)
    });
    out.dedup();
    out
}
