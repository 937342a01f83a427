//! Power sums and the closed-form brackets used by the boson realizations.
//!
//! The realizations replace sums like `sum_{j<m1} (j - m2)^s` by closed-form
//! polynomials in the occupation numbers. The non-trivial coefficients are the
//! constants `D_r` multiplying `s(s-1)...(s-2r) M^(s-2r-1)` in
//! `sum_{j<M} j^s = M^(s+1)/(s+1) - M^s/2 + sum_r D_r ...`. They are derived
//! here by an exact linear solve against direct summation; nothing is
//! hard-coded except the [`REFERENCE_DR`] table used for discrepancy flags.

use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{falling_product, int, pow, ratio, serde_text, ExactScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaulhaberError {
    #[error("power-sum system for D_0..D_{rmax} is inconsistent or singular")]
    Inconsistent { rmax: usize },
    #[error("derived D_r fail the power-sum identity at s={s}, M={m}")]
    IdentityFailed { s: u32, m: u64 },
    #[error("bracket needs D_{needed} but the table stops at D_{}", *available as i64 - 1)]
    TableTooShort { needed: usize, available: usize },
}

/// Commonly quoted values of `D_0..D_4` (numerator, denominator). The third
/// entry is known to circulate with the opposite sign.
pub const REFERENCE_DR: [(i64, i64); 5] = [
    (1, 12),
    (-1, 720),
    (-1, 30240),
    (-1, 1_209_600),
    (1, 47_900_160),
];

/// `sum_{j=0}^{m-1} j^s`, with `0^0 = 1`.
pub fn power_sum(s: u32, m: u64) -> ExactScalar {
    let mut acc = BigInt::zero();
    for j in 0..m {
        acc += num::traits::pow(BigInt::from(j), s as usize);
    }
    ExactScalar::from_integer(acc)
}

/// `sum_{j=0}^{m1-1} (j - m2)^s`.
pub fn shifted_power_sum(s: u32, m1: u64, m2: i64) -> ExactScalar {
    let mut acc = BigInt::zero();
    for j in 0..m1 {
        acc += num::traits::pow(BigInt::from(j as i64 - m2), s as usize);
    }
    ExactScalar::from_integer(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrDiscrepancy {
    pub r: usize,
    #[serde(with = "serde_text")]
    pub derived: ExactScalar,
    #[serde(with = "serde_text")]
    pub reference: ExactScalar,
}

/// `D_0..D_rmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrTable {
    #[serde(with = "serde_text::vec")]
    values: Vec<ExactScalar>,
}

impl DrTable {
    /// Wraps arbitrary values without checking them. Used to inject faults.
    pub fn from_values(values: Vec<ExactScalar>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[ExactScalar] {
        &self.values
    }

    pub fn get(&self, r: usize) -> Option<&ExactScalar> {
        self.values.get(r)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entries that differ from [`REFERENCE_DR`].
    pub fn discrepancies(&self) -> Vec<DrDiscrepancy> {
        self.values
            .iter()
            .zip(REFERENCE_DR.iter())
            .enumerate()
            .filter_map(|(r, (v, &(p, q)))| {
                let reference = ratio(p, q);
                (*v != reference).then(|| DrDiscrepancy {
                    r,
                    derived: v.clone(),
                    reference,
                })
            })
            .collect()
    }

    /// Closed-form `sum_{j<m} j^s` for `s >= 1` using this table.
    pub fn faulhaber(&self, s: u32, m: u64) -> ExactScalar {
        let big_m = int(m as i64);
        let s_i = s as i64;
        let mut acc = pow(&big_m, s + 1) / int(s_i + 1) - pow(&big_m, s) / int(2);
        for (r, d) in self.values.iter().enumerate() {
            let exp = s_i - 2 * r as i64 - 1;
            if exp < 1 {
                break;
            }
            let prod = ExactScalar::from_integer(falling_product(s_i, 2 * r as u32 + 1));
            acc += d * prod * pow(&big_m, exp as u32);
        }
        acc
    }
}

/// Derives `D_0..D_rmax` from direct power sums.
///
/// Row block `r` uses `s = 2r + 2` and `M = 1..=s+2`; the joint system is
/// solved exactly and the result is checked for every `1 <= s <= 2 rmax + 2`,
/// `0 <= M <= 20`.
pub fn derive_dr(rmax: usize) -> Result<DrTable, FaulhaberError> {
    let unknowns = rmax + 1;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for r in 0..=rmax {
        let s = 2 * r as u32 + 2;
        for m in 1..=(s as u64 + 2) {
            let big_m = int(m as i64);
            let row: Vec<ExactScalar> = (0..unknowns)
                .map(|t| {
                    let exp = s as i64 - 2 * t as i64 - 1;
                    if exp < 1 {
                        ExactScalar::zero()
                    } else {
                        ExactScalar::from_integer(falling_product(s as i64, 2 * t as u32 + 1))
                            * pow(&big_m, exp as u32)
                    }
                })
                .collect();
            let target =
                power_sum(s, m) - pow(&big_m, s + 1) / int(s as i64 + 1) + pow(&big_m, s) / int(2);
            rows.push(row);
            rhs.push(target);
        }
    }
    let values = solve_exact(rows, rhs).ok_or(FaulhaberError::Inconsistent { rmax })?;
    let table = DrTable { values };
    for s in 1..=(2 * rmax as u32 + 2) {
        for m in 0..=20 {
            if table.faulhaber(s, m) != power_sum(s, m) {
                return Err(FaulhaberError::IdentityFailed { s, m });
            }
        }
    }
    Ok(table)
}

/// Gauss-Jordan elimination on a possibly overdetermined system. Returns the
/// unique solution if the system is consistent with full column rank.
fn solve_exact(mut a: Vec<Vec<ExactScalar>>, mut b: Vec<ExactScalar>) -> Option<Vec<ExactScalar>> {
    let cols = a.first().map_or(0, Vec::len);
    let rows = a.len();
    let mut pivot_row = 0;
    for col in 0..cols {
        let pivot = (pivot_row..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, pivot);
        b.swap(pivot_row, pivot);
        let inv = ExactScalar::one() / &a[pivot_row][col];
        for x in &mut a[pivot_row][col..] {
            *x = &*x * &inv;
        }
        b[pivot_row] = &b[pivot_row] * &inv;
        for r in 0..rows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            let pivot_vals = a[pivot_row][col..].to_vec();
            for (x, p) in a[r][col..].iter_mut().zip(&pivot_vals) {
                *x -= &factor * p;
            }
            let delta = &factor * &b[pivot_row];
            b[r] -= delta;
        }
        pivot_row += 1;
    }
    if b[pivot_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(b.into_iter().take(cols).collect())
}

/// Which closed-form bracket to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketVariant {
    /// Three- and two-boson central form, in `m2` and `m2 - m1`.
    TwoVar,
    /// Lowering two-boson form, in `-m1`.
    NegSingle,
    /// Single-boson form, in `m1`.
    Single,
}

/// `sum_{q=0}^{e-1} x^(e-1-q) y^q`, i.e. `(x^e - y^e)/(x - y)`; zero for `e <= 0`.
fn quotient_sum(x: &ExactScalar, y: &ExactScalar, e: i64) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for q in 0..e.max(0) {
        acc += pow(x, (e - 1 - q) as u32) * pow(y, q as u32);
    }
    acc
}

/// `base^e`, or zero when `e < 0` (dropped term).
fn monomial(base: &ExactScalar, e: i64) -> ExactScalar {
    if e < 0 {
        ExactScalar::zero()
    } else {
        pow(base, e as u32)
    }
}

/// Evaluates one bracket at occupation numbers `(m1, m2)` for exponent
/// `s = i - h`, summing the `D_r` terms for `r <= rlimit`. `m2` is ignored by
/// the single-mode variants.
pub fn bracket_value(
    variant: BracketVariant,
    s: u32,
    m1: u64,
    m2: u64,
    dr: &DrTable,
    rlimit: i64,
) -> Result<ExactScalar, FaulhaberError> {
    let s_i = s as i64;
    let s_plus = int(s_i + 1);
    let half = ratio(1, 2);
    let (mut acc, tail): (ExactScalar, Box<dyn Fn(i64) -> ExactScalar>) = match variant {
        BracketVariant::TwoVar => {
            let x = int(m2 as i64);
            let y = int(m2 as i64 - m1 as i64);
            let head = quotient_sum(&x, &y, s_i + 1) / &s_plus + quotient_sum(&x, &y, s_i) * &half;
            // D_r term: q runs to s - 2(r+1), i.e. quotient_sum with e = s - 2r - 1
            (
                head,
                Box::new(move |r| quotient_sum(&x, &y, s_i - 2 * r - 1)),
            )
        }
        BracketVariant::NegSingle => {
            let base = int(-(m1 as i64));
            let head = monomial(&base, s_i) / &s_plus + monomial(&base, s_i - 1) * &half;
            (head, Box::new(move |r| monomial(&base, s_i - 2 * r - 2)))
        }
        BracketVariant::Single => {
            let base = int(m1 as i64);
            let head = monomial(&base, s_i) / &s_plus - monomial(&base, s_i - 1) * &half;
            (head, Box::new(move |r| monomial(&base, s_i - 2 * r - 2)))
        }
    };
    for r in 0..=rlimit {
        // contributes only when the falling product is nonzero and the
        // exponent/q-range is non-empty
        if s_i - 2 * r - 1 < 1 {
            break;
        }
        let d = dr.get(r as usize).ok_or(FaulhaberError::TableTooShort {
            needed: r as usize,
            available: dr.len(),
        })?;
        let prod = ExactScalar::from_integer(falling_product(s_i, 2 * r as u32 + 1));
        acc += d * prod * tail(r);
    }
    Ok(acc)
}

/// `(-1)^e` as a scalar.
pub(crate) fn sign_pow(e: i64) -> ExactScalar {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}
