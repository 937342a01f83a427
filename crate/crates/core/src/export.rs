//! Byte-deterministic JSON matrix export and its parser.
//!
//! Layout: `algebra`, `kind`, `param`, `caps`, `basis_order`, `operators`
//! (entries `[row, col, "p/q"]` sorted by column then row), `margins`, and a
//! `substitution` string only for substituted three-boson realizations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraSpec;
use crate::fock::{Column, FockError, SpaceSpec, SparseOperator};
use crate::pbw::Generator;
use crate::realizations::RealizationSet;
use crate::scalar::{format_scalar, parse_scalar, serde_text, ExactScalar, ScalarParseError};

pub const BASIS_ORDER: &str = "lex_last_fastest";

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("malformed export document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarParseError),
    #[error(transparent)]
    Space(#[from] FockError),
    #[error("unsupported basis order {0:?}")]
    BasisOrder(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Operators {
    #[serde(rename = "J3")]
    pub j3: Vec<(usize, usize, String)>,
    #[serde(rename = "J+")]
    pub jplus: Vec<(usize, usize, String)>,
    #[serde(rename = "J-")]
    pub jminus: Vec<(usize, usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportDocument {
    pub algebra: AlgebraSpec,
    pub kind: String,
    #[serde(with = "serde_text::option")]
    pub param: Option<ExactScalar>,
    pub caps: Vec<u32>,
    pub basis_order: String,
    pub operators: Operators,
    pub margins: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub substitution: Option<String>,
}

fn entries(op: &SparseOperator) -> Vec<(usize, usize, String)> {
    op.entries()
        .map(|(col, row, v)| (row, col, format_scalar(v)))
        .collect()
}

impl ExportDocument {
    pub fn from_realization(r: &RealizationSet) -> Self {
        Self {
            algebra: r.alg.clone(),
            kind: r.kind.name().to_owned(),
            param: r.kind.param().cloned(),
            caps: r.space.caps().to_vec(),
            basis_order: BASIS_ORDER.to_owned(),
            operators: Operators {
                j3: entries(&r.j3),
                jplus: entries(&r.jplus),
                jminus: entries(&r.jminus),
            },
            margins: r.margins.clone(),
            substitution: r.substitution.as_ref().map(ToString::to_string),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string(self).expect("export serializes");
        text.push('\n');
        text
    }

    pub fn parse(text: &str) -> Result<Self, ExportError> {
        let doc: Self = serde_json::from_str(text)?;
        if doc.basis_order != BASIS_ORDER {
            return Err(ExportError::BasisOrder(doc.basis_order));
        }
        Ok(doc)
    }

    pub fn space(&self) -> Result<SpaceSpec, ExportError> {
        Ok(SpaceSpec::new(&self.caps)?)
    }

    /// Rebuilds one generator's matrix from the stored entries.
    pub fn operator(&self, gen: Generator) -> Result<SparseOperator, ExportError> {
        let space = self.space()?;
        let list = match gen {
            Generator::J3 => &self.operators.j3,
            Generator::Jplus => &self.operators.jplus,
            Generator::Jminus => &self.operators.jminus,
        };
        let mut columns: Vec<Column> = vec![Vec::new(); space.dim()];
        for (row, col, v) in list {
            let slot = columns.get_mut(*col).ok_or(FockError::IndexOutOfRange {
                row: *row,
                col: *col,
                dim: space.dim(),
            })?;
            slot.push((*row, parse_scalar(v)?));
        }
        Ok(SparseOperator::from_columns(&space, columns)?)
    }
}

/// Serializes a realization in the export format.
pub fn export_json(r: &RealizationSet) -> String {
    ExportDocument::from_realization(r).to_json()
}
