use std::time::Instant;

use crate::config::ExperimentConfig;
use crate::error::{LabError, LabResult};
use crate::experiments::{self, Ctx};
use crate::report::{Case, Report};

pub struct Experiment {
    pub name: &'static str,
    pub summary: &'static str,
    pub run: fn(&Ctx) -> LabResult<Vec<Case>>,
}

pub static EXPERIMENTS: &[Experiment] = &[
    Experiment { name: "eq1-residual", summary: "iterated monodromy of the elliptic pair, N = 1..3", run: experiments::eq1_residual },
    Experiment { name: "multiplicity-superposition", summary: "two pairs αβ = 6, lhs vs rhs and exact superposition", run: experiments::multiplicity_superposition },
    Experiment { name: "morphism", summary: "Hadamard-algebra morphism at k = 0, 1, 2", run: experiments::morphism },
    Experiment { name: "multi-factor-n3", summary: "three-factor nested convolution under node doubling", run: experiments::multi_factor_n3 },
    Experiment { name: "fundamental-3-1", summary: "monodromy of a primitive equals the primitive of the monodromy", run: experiments::fundamental_3_1 },
    Experiment { name: "barstar-cor-3-4", summary: "monodromy of a bar-star convolution", run: experiments::barstar_cor_3_4 },
    Experiment { name: "polylog-monodromy", summary: "Δ_1 Li_k against its closed form, k = 1..4", run: experiments::polylog_monodromy },
    Experiment { name: "recurrence-algebraic", summary: "second difference of branches of the elliptic pair, d = 4", run: experiments::recurrence_algebraic },
    Experiment { name: "birkhoff-limit", summary: "Birkhoff averages converge like 1/N", run: experiments::birkhoff_limit },
    Experiment { name: "dn-adic-n2", summary: "(D_n)-adic decomposition at n = 2 against the direct sum", run: experiments::dn_adic_n2 },
    Experiment { name: "recurrence-detect-suite", summary: "recurrence detection on √, log, cube root and Vandermonde cases", run: experiments::recurrence_detect_suite },
    Experiment { name: "elliptic-identity", summary: "Hadamard square series vs elliptic integral vs AGM", run: experiments::elliptic_identity },
    Experiment { name: "modular-monodromy", summary: "closed-form Δ_1 of the Hadamard square", run: experiments::modular_monodromy },
    Experiment { name: "hypergeometric-identity", summary: "(1−z)^{-a} ⊙ (1−z)^{-b} coefficients vs 2F1(a, b; 1)", run: experiments::hypergeometric_identity },
    Experiment { name: "euler-integral", summary: "Euler integral vs 2F1 series", run: experiments::euler_integral },
    Experiment { name: "hyp2f1-monodromy", summary: "connection formula vs numerical monodromy", run: experiments::hyp2f1_monodromy },
    Experiment { name: "fractional-semigroup", summary: "Riemann-Liouville semigroup and integer orders", run: experiments::fractional_semigroup },
];

pub fn names() -> Vec<String> {
    EXPERIMENTS.iter().map(|e| e.name.to_string()).collect()
}

pub fn find(name: &str) -> LabResult<&'static Experiment> {
    EXPERIMENTS
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| LabError::UnknownExperiment { name: name.into(), available: names() })
}

/// Runs one experiment; deterministic given the seed.
pub fn run_experiment(config: &ExperimentConfig) -> LabResult<Report> {
    config.validate()?;
    let exp = find(&config.experiment)?;
    let start = Instant::now();
    let ctx = Ctx::new(config);
    let cases = (exp.run)(&ctx)?;
    Ok(Report::new(config.clone(), cases, start.elapsed().as_millis() as u64))
}
