use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{AlgebraicElement, AlgebroGeometricElement, Hypergeometric2F1, LogBranch, PolylogElement, PowerBranch};
use crate::continuation::{Element, LinearCombination};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraicFamily {
    ShiftedSqrt,
    Cubic,
}

/// Serializable description of a zoo element, `{"family": …, "parameters": …}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "parameters", rename_all = "kebab-case")]
pub enum ZooDescriptor {
    Power { alpha: Complex64, a: Complex64 },
    Log { alpha: Complex64 },
    Polylog { k: u32, normalized: bool },
    AlgebroGeometric { alpha: Complex64, a: Complex64, n: u32, phi: Vec<Complex64> },
    Algebraic { name: AlgebraicFamily },
    Gauss { a: Complex64, b: Complex64, c: Complex64 },
    Sum { terms: Vec<ZooDescriptor> },
}

impl ZooDescriptor {
    pub fn power(alpha: f64, a: f64) -> Self {
        Self::Power { alpha: Complex64::new(alpha, 0.0), a: Complex64::new(a, 0.0) }
    }

    pub fn build(&self) -> Result<Element> {
        Ok(match self {
            Self::Power { alpha, a } => Arc::new(PowerBranch::new(*alpha, *a)),
            Self::Log { alpha } => Arc::new(LogBranch { alpha: *alpha, scale: Complex64::new(1.0, 0.0) }),
            Self::Polylog { k, normalized } => Arc::new(PolylogElement::new(*k, *normalized)?),
            Self::AlgebroGeometric { alpha, a, n, phi } => Arc::new(AlgebroGeometricElement::new(*alpha, *a, *n, phi.clone())?),
            Self::Algebraic { name: AlgebraicFamily::ShiftedSqrt } => Arc::new(AlgebraicElement::shifted_sqrt()),
            Self::Algebraic { name: AlgebraicFamily::Cubic } => Arc::new(AlgebraicElement::cubic()),
            Self::Gauss { a, b, c } => Arc::new(Hypergeometric2F1::new(*a, *b, *c)?.element()),
            Self::Sum { terms } => Arc::new(LinearCombination::sum(terms.iter().map(|t| t.build()).collect::<Result<_>>()?)),
        })
    }

    /// Compact JSON text, used as a cache key.
    pub fn key(&self) -> String {
        serde_json::to_string(self).expect("descriptors serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_and_round_trip() {
        let d = ZooDescriptor::power(1.0, 0.5);
        let text = d.key();
        assert_eq!(text, r#"{"family":"power","parameters":{"alpha":[1.0,0.0],"a":[0.5,0.0]}}"#);
        let back: ZooDescriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        let s = ZooDescriptor::Sum { terms: vec![d, ZooDescriptor::Algebraic { name: AlgebraicFamily::Cubic }] };
        assert_eq!(s.build().unwrap().singularities().len(), 3);
    }
}
