//! Experiment bodies, one function per registry entry.

mod identities;
mod recurrence;
mod special;

use std::sync::Arc;

use monodromy::continuation::{Element, HolonomicElement, LinearCombination};
use monodromy::convolution::annulus_point;
use monodromy::germs::{hadamard_coeffs, CoeffSeries};
use monodromy::numerics::{Point, QuadratureConfig};
use monodromy::zoo::ZooDescriptor;
use monodromy::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use identities::*;
pub use recurrence::*;
pub use special::*;

use crate::cache::CoeffCache;
use crate::config::ExperimentConfig;
use crate::error::{LabError, LabResult};
use crate::report::Case;

/// Shared state of one experiment run.
pub struct Ctx<'a> {
    pub config: &'a ExperimentConfig,
    pub quad: QuadratureConfig,
    pub cache: CoeffCache,
}

impl<'a> Ctx<'a> {
    pub fn new(config: &'a ExperimentConfig) -> Self {
        Self { config, quad: QuadratureConfig::default(), cache: CoeffCache::new(config.resolved_cache_dir()) }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed)
    }

    /// `n` seeded points in the annulus `0.2 ≤ |z − γ| ≤ 0.6` off the cut sector.
    pub fn annulus_points(&self, gamma: C64, n: usize) -> Vec<Point> {
        let mut rng = self.rng();
        (0..n).map(|_| annulus_point(gamma, rng.gen::<f64>(), rng.gen::<f64>())).collect()
    }

    /// `n` seeded points in the disk `|z| ≤ radius`.
    pub fn disk_points(&self, radius: f64, n: usize) -> Vec<C64> {
        let mut rng = self.rng();
        (0..n)
            .map(|_| {
                let r = radius * rng.gen::<f64>().sqrt();
                C64::from_polar(r, std::f64::consts::TAU * rng.gen::<f64>())
            })
            .collect()
    }

    /// Hadamard coefficients of two hypergeometric-class terms, through the cache.
    pub fn hadamard_coefficients(&self, key: &str, a: &monodromy::germs::HyperSeries, b: &monodromy::germs::HyperSeries, m: usize) -> LabResult<Arc<Vec<C64>>> {
        self.cache.get(key, m, || hadamard_coeffs(&a.to_coeff_series(m), &b.to_coeff_series(m)).coefficients)
    }

    /// `F ⊙ G` as a continuable element with `M = config.coeffs` coefficients.
    pub fn hadamard(&self, f: &ZooDescriptor, g: &ZooDescriptor) -> LabResult<Element> {
        let (fe, ge) = (f.build()?, g.build()?);
        let (Some(fh), Some(gh)) = (fe.hyper_terms(), ge.hyper_terms()) else {
            return Err(LabError::Config("Hadamard factors must have hypergeometric-class series".into()));
        };
        let m = self.config.coeffs;
        let mut terms: Vec<Element> = Vec::new();
        for (i, a) in fh.iter().enumerate() {
            for (j, b) in gh.iter().enumerate() {
                let key = format!("hadamard:{}#{i}:{}#{j}", f.key(), g.key());
                let coeffs = self.hadamard_coefficients(&key, a, b, m)?;
                let h = a.hadamard(b);
                let series = CoeffSeries::new(coeffs.to_vec(), Some(h.singularity.norm()));
                terms.push(Arc::new(HolonomicElement::from_series(&h, &series)));
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { Arc::new(LinearCombination::sum(terms)) })
    }
}

/// Evaluates cases in parallel, keeping their order.
pub fn par_cases<T: Sync>(items: &[T], f: impl Fn(&T) -> Case + Sync + Send) -> Vec<Case> {
    items.par_iter().map(f).collect()
}

/// Turns an evaluation error into a failed case.
pub fn guarded(id: String, inputs: serde_json::Value, tol: f64, f: impl FnOnce() -> monodromy::Result<Case>) -> Case {
    f().unwrap_or_else(|e| Case::failed(id, inputs, tol, e))
}

pub fn cjson(z: C64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}
