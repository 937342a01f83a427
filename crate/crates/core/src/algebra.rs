//! The polynomial angular momentum algebra
//! `[J3, J±] = ±J±`, `[J+, J-] = c_0 + c_1 J3 + ... + c_n J3^n`.

use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{int, serde_text, ExactScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("degree {n} needs {} coefficients, got {len}", n + 1)]
    LengthMismatch { n: usize, len: usize },
    #[error("leading coefficient c_{n} is zero")]
    ZeroLeadingCoefficient { n: usize },
    #[error("higgs preset needs c3 != 0; use an explicit degree-1 algebra instead")]
    DegenerateHiggs,
}

/// Degree `n` and structure constants `c_0..c_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebra", into = "RawAlgebra")]
pub struct AlgebraSpec {
    n: usize,
    coeffs: Vec<ExactScalar>,
}

/// Named special cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preset {
    Su2,
    Su11,
    Higgs {
        c1: ExactScalar,
        c3: ExactScalar,
    },
    Quadratic {
        c0: ExactScalar,
        c1: ExactScalar,
        c2: ExactScalar,
    },
}

impl AlgebraSpec {
    pub fn new(n: usize, coeffs: Vec<ExactScalar>) -> Result<Self, AlgebraError> {
        if coeffs.len() != n + 1 {
            return Err(AlgebraError::LengthMismatch {
                n,
                len: coeffs.len(),
            });
        }
        if n > 0 && coeffs[n].is_zero() {
            return Err(AlgebraError::ZeroLeadingCoefficient { n });
        }
        Ok(Self { n, coeffs })
    }

    pub fn preset(preset: Preset) -> Result<Self, AlgebraError> {
        match preset {
            Preset::Su2 => Self::new(1, vec![int(0), int(2)]),
            Preset::Su11 => Self::new(1, vec![int(0), int(-2)]),
            Preset::Higgs { c1, c3 } => {
                if c3.is_zero() {
                    return Err(AlgebraError::DegenerateHiggs);
                }
                Self::new(3, vec![int(0), c1, int(0), c3])
            }
            Preset::Quadratic { c0, c1, c2 } => Self::new(2, vec![c0, c1, c2]),
        }
    }

    pub fn su2() -> Self {
        Self::preset(Preset::Su2).expect("su2 is valid")
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &ExactScalar {
        &self.coeffs[i]
    }

    /// Nonzero terms `(i, c_i)` of the right-hand side polynomial.
    pub fn rhs_coefficient_table(&self) -> Vec<(usize, ExactScalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    /// Evaluates `sum c_i x^i`.
    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * x + c)
    }

    /// Largest `r` whose `D_r` term can appear in the closed-form brackets,
    /// i.e. `floor(n/2) - 1` (may be `-1`).
    pub fn dr_limit(&self) -> i64 {
        (self.n / 2) as i64 - 1
    }
}

pub fn make_algebra(n: usize, coeffs: Vec<ExactScalar>) -> Result<AlgebraSpec, AlgebraError> {
    AlgebraSpec::new(n, coeffs)
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    n: usize,
    #[serde(with = "serde_text::vec")]
    coeffs: Vec<ExactScalar>,
}

impl TryFrom<RawAlgebra> for AlgebraSpec {
    type Error = AlgebraError;
    fn try_from(raw: RawAlgebra) -> Result<Self, Self::Error> {
        AlgebraSpec::new(raw.n, raw.coeffs)
    }
}

impl From<AlgebraSpec> for RawAlgebra {
    fn from(a: AlgebraSpec) -> Self {
        RawAlgebra {
            n: a.n,
            coeffs: a.coeffs,
        }
    }
}
