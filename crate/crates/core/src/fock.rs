//! Box-truncated bosonic Fock spaces and exact sparse operators on them.
//!
//! Basis states are ordered lexicographically with the last mode varying
//! fastest; that order is part of the matrix export format. Operators use
//! the unnormalized convention `a+|m> = |m+1>`, `a|m> = m|m-1>`. Raising
//! past a cap maps to zero, so identities only hold on the interior returned
//! by [`SpaceSpec::safe_subspace`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{map_range, Execution};
use crate::scalar::{binomial, int, ExactScalar};

pub const MAX_MODES: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("a space needs between 1 and {MAX_MODES} modes, got {0}")]
    ModeCount(usize),
    #[error("operators act on different spaces: {left:?} vs {right:?}")]
    SpaceMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("entry ({row}, {col}) outside a space of dimension {dim}")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },
}

/// Occupation numbers `(m_1, .., m_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FockState(pub Vec<u32>);

impl FockState {
    pub fn vacuum(modes: usize) -> Self {
        FockState(vec![0; modes])
    }

    pub fn occ(&self, mode: usize) -> u32 {
        self.0[mode]
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ">")
    }
}

/// Truncated box `0 <= m_i <= caps[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    caps: Vec<u32>,
    strides: Vec<usize>,
    dim: usize,
}

impl SpaceSpec {
    pub fn new(caps: &[u32]) -> Result<Self, FockError> {
        if caps.is_empty() || caps.len() > MAX_MODES {
            return Err(FockError::ModeCount(caps.len()));
        }
        let mut strides = vec![1usize; caps.len()];
        for i in (0..caps.len() - 1).rev() {
            strides[i] = strides[i + 1] * (caps[i + 1] as usize + 1);
        }
        let dim = strides[0] * (caps[0] as usize + 1);
        Ok(Self {
            caps: caps.to_vec(),
            strides,
            dim,
        })
    }

    pub fn modes(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn stride(&self, mode: usize) -> usize {
        self.strides[mode]
    }

    pub fn index(&self, state: &FockState) -> Option<usize> {
        if state.0.len() != self.modes() {
            return None;
        }
        let mut idx = 0;
        for ((&m, &cap), &stride) in state.0.iter().zip(&self.caps).zip(&self.strides) {
            if m > cap {
                return None;
            }
            idx += m as usize * stride;
        }
        Some(idx)
    }

    /// Index of a signed occupation tuple, `None` when outside the box.
    pub fn index_signed(&self, occ: &[i64]) -> Option<usize> {
        let mut idx = 0;
        for ((&m, &cap), &stride) in occ.iter().zip(&self.caps).zip(&self.strides) {
            if m < 0 || m > cap as i64 {
                return None;
            }
            idx += m as usize * stride;
        }
        Some(idx)
    }

    pub fn state(&self, index: usize) -> FockState {
        assert!(index < self.dim, "basis index {index} out of range");
        FockState(
            self.caps
                .iter()
                .zip(&self.strides)
                .map(|(&cap, &stride)| ((index / stride) % (cap as usize + 1)) as u32)
                .collect(),
        )
    }

    pub fn occupation(&self, index: usize, mode: usize) -> u32 {
        ((index / self.strides[mode]) % (self.caps[mode] as usize + 1)) as u32
    }

    pub fn enumerate_basis(&self) -> Vec<FockState> {
        (0..self.dim).map(|i| self.state(i)).collect()
    }

    /// Basis indices with `m_i + margins[i] <= caps[i]` for every mode.
    pub fn safe_subspace(&self, margins: &[u32]) -> Vec<usize> {
        assert_eq!(margins.len(), self.modes(), "one margin per mode");
        (0..self.dim)
            .filter(|&i| {
                (0..self.modes()).all(|mode| {
                    self.occupation(i, mode) as u64 + margins[mode] as u64 <= self.caps[mode] as u64
                })
            })
            .collect()
    }
}

/// Sparse column: `(row, value)` pairs sorted by row, no zeros.
pub type Column = Vec<(usize, ExactScalar)>;

/// Accumulates `(row, value)` contributions into a canonical [`Column`].
#[derive(Debug, Default)]
pub struct ColumnBuilder {
    acc: BTreeMap<usize, ExactScalar>,
}

impl ColumnBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, row: usize, value: ExactScalar) {
        if value.is_zero() {
            return;
        }
        let slot = self.acc.entry(row).or_insert_with(ExactScalar::zero);
        *slot += value;
    }

    pub fn add_column(&mut self, column: &[(usize, ExactScalar)], factor: &ExactScalar) {
        for (row, v) in column {
            self.add(*row, v * factor);
        }
    }

    pub fn finish(self) -> Column {
        self.acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

pub fn column_add(a: &[(usize, ExactScalar)], b: &[(usize, ExactScalar)]) -> Column {
    let mut acc = ColumnBuilder::new();
    acc.add_column(a, &ExactScalar::one());
    acc.add_column(b, &ExactScalar::one());
    acc.finish()
}

pub fn column_sub(a: &[(usize, ExactScalar)], b: &[(usize, ExactScalar)]) -> Column {
    let mut acc = ColumnBuilder::new();
    acc.add_column(a, &ExactScalar::one());
    acc.add_column(b, &int(-1));
    acc.finish()
}

pub fn unit_column(index: usize) -> Column {
    vec![(index, ExactScalar::one())]
}

/// Exact sparse linear map on a truncated Fock space, stored by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseOperator {
    space: SpaceSpec,
    columns: Vec<Column>,
}

impl SparseOperator {
    pub fn zero(space: &SpaceSpec) -> Self {
        Self {
            space: space.clone(),
            columns: vec![Vec::new(); space.dim()],
        }
    }

    pub fn identity(space: &SpaceSpec) -> Self {
        Self::scalar(space, &ExactScalar::one())
    }

    pub fn scalar(space: &SpaceSpec, value: &ExactScalar) -> Self {
        Self::diagonal(space, |_| value.clone())
    }

    pub fn diagonal<F>(space: &SpaceSpec, f: F) -> Self
    where
        F: Fn(&FockState) -> ExactScalar,
    {
        let columns = (0..space.dim())
            .map(|c| {
                let v = f(&space.state(c));
                if v.is_zero() {
                    Vec::new()
                } else {
                    vec![(c, v)]
                }
            })
            .collect();
        Self {
            space: space.clone(),
            columns,
        }
    }

    /// Builds an operator from its action on each basis state. Targets are
    /// signed occupation tuples; those outside the box are dropped.
    pub fn from_action<F>(space: &SpaceSpec, f: F) -> Self
    where
        F: Fn(&FockState) -> Vec<(Vec<i64>, ExactScalar)>,
    {
        let columns = (0..space.dim())
            .map(|c| {
                let mut acc = ColumnBuilder::new();
                for (target, v) in f(&space.state(c)) {
                    if let Some(row) = space.index_signed(&target) {
                        acc.add(row, v);
                    }
                }
                acc.finish()
            })
            .collect();
        Self {
            space: space.clone(),
            columns,
        }
    }

    /// Builds an operator from raw `(row, value)` columns, canonicalizing them.
    pub fn from_columns(space: &SpaceSpec, columns: Vec<Column>) -> Result<Self, FockError> {
        let dim = space.dim();
        if columns.len() != dim {
            return Err(FockError::IndexOutOfRange {
                row: 0,
                col: columns.len(),
                dim,
            });
        }
        let mut out = Vec::with_capacity(dim);
        for (col, column) in columns.into_iter().enumerate() {
            let mut acc = ColumnBuilder::new();
            for (row, v) in column {
                if row >= dim {
                    return Err(FockError::IndexOutOfRange { row, col, dim });
                }
                acc.add(row, v);
            }
            out.push(acc.finish());
        }
        Ok(Self {
            space: space.clone(),
            columns: out,
        })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn column(&self, col: usize) -> &[(usize, ExactScalar)] {
        &self.columns[col]
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> ExactScalar {
        self.columns[col]
            .binary_search_by_key(&row, |(r, _)| *r)
            .map(|pos| self.columns[col][pos].1.clone())
            .unwrap_or_else(|_| ExactScalar::zero())
    }

    /// `(col, row, value)` triples in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (c, *r, v)))
    }

    /// Matrix-vector product on a sparse column.
    pub fn apply(&self, v: &[(usize, ExactScalar)]) -> Column {
        let mut acc = ColumnBuilder::new();
        for (k, x) in v {
            acc.add_column(&self.columns[*k], x);
        }
        acc.finish()
    }

    fn check_space(&self, other: &Self) -> Result<(), FockError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(FockError::SpaceMismatch {
                left: self.space.caps.clone(),
                right: other.space.caps.clone(),
            })
        }
    }

    fn zip_columns<F>(&self, other: &Self, f: F) -> Self
    where
        F: Fn(&[(usize, ExactScalar)], &[(usize, ExactScalar)]) -> Column,
    {
        Self {
            space: self.space.clone(),
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FockError> {
        self.check_space(other)?;
        Ok(self.zip_columns(other, column_add))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FockError> {
        self.check_space(other)?;
        Ok(self.zip_columns(other, column_sub))
    }

    pub fn scale(&self, factor: &ExactScalar) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.space);
        }
        Self {
            space: self.space.clone(),
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|(r, v)| (*r, v * factor)).collect())
                .collect(),
        }
    }

    /// `self * other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self, FockError> {
        self.compose_with(other, Execution::default())
    }

    pub fn compose_with(&self, other: &Self, exec: Execution) -> Result<Self, FockError> {
        self.check_space(other)?;
        let columns = map_range(exec, self.space.dim(), |c| self.apply(&other.columns[c]));
        Ok(Self {
            space: self.space.clone(),
            columns,
        })
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, FockError> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        ab.checked_sub(&ba)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::identity(&self.space);
        for _ in 0..exp {
            acc = self * &acc;
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.space.dim()];
        for (c, r, v) in self.entries() {
            columns[r].push((c, v.clone()));
        }
        // columns were visited in increasing c, so each new column is sorted
        Self {
            space: self.space.clone(),
            columns,
        }
    }
}

impl Add for &SparseOperator {
    type Output = SparseOperator;
    fn add(self, rhs: &SparseOperator) -> SparseOperator {
        self.checked_add(rhs).expect("operator spaces must match")
    }
}

impl Sub for &SparseOperator {
    type Output = SparseOperator;
    fn sub(self, rhs: &SparseOperator) -> SparseOperator {
        self.checked_sub(rhs).expect("operator spaces must match")
    }
}

impl Mul for &SparseOperator {
    type Output = SparseOperator;
    fn mul(self, rhs: &SparseOperator) -> SparseOperator {
        self.compose(rhs).expect("operator spaces must match")
    }
}

impl Neg for &SparseOperator {
    type Output = SparseOperator;
    fn neg(self) -> SparseOperator {
        self.scale(&int(-1))
    }
}

fn assert_mode(space: &SpaceSpec, mode: usize) {
    assert!(
        mode < space.modes(),
        "mode {mode} out of range for a {}-mode space",
        space.modes()
    );
}

/// `a+_mode`; columns at the cap are empty.
pub fn creation(space: &SpaceSpec, mode: usize) -> SparseOperator {
    assert_mode(space, mode);
    let stride = space.stride(mode);
    let cap = space.caps()[mode];
    let columns = (0..space.dim())
        .map(|c| {
            if space.occupation(c, mode) < cap {
                vec![(c + stride, ExactScalar::one())]
            } else {
                Vec::new()
            }
        })
        .collect();
    SparseOperator {
        space: space.clone(),
        columns,
    }
}

/// `a_mode`, with `a|m> = m|m-1>`.
pub fn annihilation(space: &SpaceSpec, mode: usize) -> SparseOperator {
    assert_mode(space, mode);
    let stride = space.stride(mode);
    let columns = (0..space.dim())
        .map(|c| match space.occupation(c, mode) {
            0 => Vec::new(),
            m => vec![(c - stride, int(m as i64))],
        })
        .collect();
    SparseOperator {
        space: space.clone(),
        columns,
    }
}

pub fn number(space: &SpaceSpec, mode: usize) -> SparseOperator {
    assert_mode(space, mode);
    SparseOperator::diagonal(space, |s| int(s.occ(mode) as i64))
}

/// `exp(a_mode)`: `|m> -> sum_k binom(m, k) |k>`. Only lowers, so no
/// truncation loss.
pub fn exp_annihilation(space: &SpaceSpec, mode: usize) -> SparseOperator {
    assert_mode(space, mode);
    let stride = space.stride(mode);
    let columns = (0..space.dim())
        .map(|c| {
            let m = space.occupation(c, mode);
            (0..=m)
                .map(|k| {
                    (
                        c - (m - k) as usize * stride,
                        ExactScalar::from_integer(binomial(m, k)),
                    )
                })
                .collect()
        })
        .collect();
    SparseOperator {
        space: space.clone(),
        columns,
    }
}

/// `sum_i coeffs[i] * op^i`, with `op^0` the identity.
pub fn apply_polynomial(op: &SparseOperator, coeffs: &[ExactScalar]) -> SparseOperator {
    let space = op.space();
    let mut acc = SparseOperator::zero(space);
    for c in coeffs.iter().rev() {
        acc = &(op * &acc) + &SparseOperator::scalar(space, c);
    }
    acc
}
