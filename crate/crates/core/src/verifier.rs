//! Exact pass/fail checks over realizations.
//!
//! Every check scans basis columns of an explicitly computed safe subspace in
//! basis order and records the first mismatching entry with both sides'
//! exact values. An empty subspace yields [`CheckStatus::Vacuous`], never
//! `Passed`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraSpec;
use crate::exec::{map_slice, Execution};
use crate::faulhaber::{DrDiscrepancy, DrTable};
use crate::fock::{
    apply_polynomial, column_add, column_sub, unit_column, Column, ColumnBuilder, SpaceSpec,
    SparseOperator,
};
use crate::pbw::{
    commute_lowering_raising, induced_action_i1, induced_action_i2, induced_action_i3, swap_power,
    Generator, Ideal, QuotientMonomial, Sign,
};
use crate::realizations::{RealizationKind, RealizationSet};
use crate::scalar::{int, serde_text, ExactScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("expected a {expected} realization, got {found}")]
    KindMismatch { expected: String, found: String },
    #[error("realizations live on different spaces")]
    SpaceMismatch,
    #[error("realizations were built for different algebras")]
    AlgebraMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    Vacuous,
}

/// First mismatching entry: column `state`, row `entry`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub state: Vec<u32>,
    pub entry: Vec<u32>,
    #[serde(with = "serde_text")]
    pub lhs: ExactScalar,
    #[serde(with = "serde_text")]
    pub rhs: ExactScalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub states_checked: usize,
    pub status: CheckStatus,
    pub passed: bool,
    pub first_failure: Option<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub kind: String,
    #[serde(with = "serde_text::option")]
    pub param: Option<ExactScalar>,
    pub algebra: AlgebraSpec,
    pub caps: Vec<u32>,
    pub margins: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub substitution: Option<String>,
}

impl Subject {
    pub fn of(r: &RealizationSet) -> Self {
        Self {
            kind: r.kind.name().to_owned(),
            param: r.kind.param().cloned(),
            algebra: r.alg.clone(),
            caps: r.space.caps().to_vec(),
            margins: r.margins.clone(),
            substitution: r.substitution.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrProvenance {
    #[serde(with = "serde_text::vec")]
    pub values: Vec<ExactScalar>,
    pub discrepancies: Vec<DrDiscrepancy>,
}

impl From<&DrTable> for DrProvenance {
    fn from(dr: &DrTable) -> Self {
        Self {
            values: dr.values().to_vec(),
            discrepancies: dr.discrepancies(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: Subject,
    pub checks: Vec<CheckResult>,
    pub dr_provenance: Option<DrProvenance>,
}

impl VerificationReport {
    pub fn new(subject: Subject) -> Self {
        Self {
            subject,
            checks: Vec::new(),
            dr_provenance: None,
        }
    }

    pub fn with_dr(mut self, dr: &DrTable) -> Self {
        self.dr_provenance = Some(dr.into());
        self
    }

    /// Appends another report's checks.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// `Failed` if any check failed, else `Vacuous` if any was vacuous.
    pub fn status(&self) -> CheckStatus {
        if self.checks.iter().any(|c| c.status == CheckStatus::Failed) {
            CheckStatus::Failed
        } else if self.checks.is_empty()
            || self.checks.iter().any(|c| c.status == CheckStatus::Vacuous)
        {
            CheckStatus::Vacuous
        } else {
            CheckStatus::Passed
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == CheckStatus::Passed
    }

    pub fn first_failed(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status == CheckStatus::Failed)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// First row where two canonical columns differ.
fn first_mismatch(
    a: &[(usize, ExactScalar)],
    b: &[(usize, ExactScalar)],
) -> Option<(usize, ExactScalar, ExactScalar)> {
    let zero = || int(0);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ra, va)), Some((rb, vb))) if ra == rb => {
                if va != vb {
                    return Some((*ra, va.clone(), vb.clone()));
                }
                i += 1;
                j += 1;
            }
            (Some((ra, va)), Some((rb, _))) if ra < rb => return Some((*ra, va.clone(), zero())),
            (Some(_), Some((rb, vb))) => return Some((*rb, zero(), vb.clone())),
            (Some((ra, va)), None) => return Some((*ra, va.clone(), zero())),
            (None, Some((rb, vb))) => return Some((*rb, zero(), vb.clone())),
            (None, None) => unreachable!(),
        }
    }
    None
}

struct Sweep<'a> {
    space: &'a SpaceSpec,
    columns: Vec<usize>,
    exec: Execution,
}

impl Sweep<'_> {
    /// Runs `sides(col) -> (lhs, rhs)` over the sweep's columns.
    fn run<F>(&self, name: impl Into<String>, sides: F) -> CheckResult
    where
        F: Fn(usize) -> (Column, Column) + Sync + Send,
    {
        let name = name.into();
        if self.columns.is_empty() {
            return CheckResult {
                name,
                states_checked: 0,
                status: CheckStatus::Vacuous,
                passed: false,
                first_failure: None,
            };
        }
        let outcomes = map_slice(self.exec, &self.columns, |&c| {
            let (lhs, rhs) = sides(c);
            first_mismatch(&lhs, &rhs).map(|(row, l, r)| Failure {
                state: self.space.state(c).0,
                entry: self.space.state(row).0,
                lhs: l,
                rhs: r,
            })
        });
        let first_failure = outcomes.into_iter().flatten().next();
        let passed = first_failure.is_none();
        CheckResult {
            name,
            states_checked: self.columns.len(),
            status: if passed {
                CheckStatus::Passed
            } else {
                CheckStatus::Failed
            },
            passed,
            first_failure,
        }
    }
}

/// Applies `ops` right to left, so `ops[last]` acts first.
fn apply_word(ops: &[&SparseOperator], v: Column) -> Column {
    ops.iter().rev().fold(v, |acc, op| op.apply(&acc))
}

fn negate(v: &[(usize, ExactScalar)]) -> Column {
    v.iter().map(|(r, x)| (*r, -x)).collect()
}

/// Defining relations on `safe_subspace(space, margins)`.
pub fn check_algebra(r: &RealizationSet) -> VerificationReport {
    check_algebra_with(r, Execution::default())
}

pub fn check_algebra_with(r: &RealizationSet, exec: Execution) -> VerificationReport {
    let sweep = Sweep {
        space: &r.space,
        columns: r.space.safe_subspace(&r.margins),
        exec,
    };
    let (j3, jp, jm) = (&r.j3, &r.jplus, &r.jminus);
    let rhs_poly = apply_polynomial(j3, r.alg.coeffs());
    let mut report = VerificationReport::new(Subject::of(r));
    report.checks.push(sweep.run("[J3,J+] = J+", |c| {
        let e = unit_column(c);
        let lhs = column_sub(
            &apply_word(&[j3, jp], e.clone()),
            &apply_word(&[jp, j3], e.clone()),
        );
        (lhs, jp.apply(&e))
    }));
    report.checks.push(sweep.run("[J3,J-] = -J-", |c| {
        let e = unit_column(c);
        let lhs = column_sub(
            &apply_word(&[j3, jm], e.clone()),
            &apply_word(&[jm, j3], e.clone()),
        );
        (lhs, negate(&jm.apply(&e)))
    }));
    report.checks.push(sweep.run("[J+,J-] = sum c_i J3^i", |c| {
        let e = unit_column(c);
        let lhs = column_sub(
            &apply_word(&[jp, jm], e.clone()),
            &apply_word(&[jm, jp], e.clone()),
        );
        (lhs, rhs_poly.column(c).to_vec())
    }));
    report
}

/// Entrywise equality of the operator-form three-boson realization with the
/// column-built Fock representation, on columns whose images are untruncated.
pub fn check_fock_equivalence(
    b: &RealizationSet,
    f: &RealizationSet,
) -> Result<VerificationReport, VerifyError> {
    check_fock_equivalence_with(b, f, Execution::default())
}

pub fn check_fock_equivalence_with(
    b: &RealizationSet,
    f: &RealizationSet,
    exec: Execution,
) -> Result<VerificationReport, VerifyError> {
    if b.kind != RealizationKind::ThreeBoson || b.substitution.is_some() {
        return Err(VerifyError::KindMismatch {
            expected: "three_boson".into(),
            found: b.kind.name().into(),
        });
    }
    if f.kind != RealizationKind::Fock3 {
        return Err(VerifyError::KindMismatch {
            expected: "fock3".into(),
            found: f.kind.name().into(),
        });
    }
    if b.space != f.space {
        return Err(VerifyError::SpaceMismatch);
    }
    if b.alg != f.alg {
        return Err(VerifyError::AlgebraMismatch);
    }
    let sweep = Sweep {
        space: &b.space,
        columns: b.space.safe_subspace(&b.step_raise()),
        exec,
    };
    let mut report = VerificationReport::new(Subject::of(b));
    for gen in Generator::ALL {
        let (ob, of) = (b.generator(gen), f.generator(gen));
        report
            .checks
            .push(sweep.run(format!("fock {}", gen.label()), |c| {
                (ob.column(c).to_vec(), of.column(c).to_vec())
            }));
    }
    Ok(report)
}

/// Matrix columns of a reduced realization against the symbolic induced
/// action on the matching quotient basis.
pub fn check_quotient_equivalence(
    b: &RealizationSet,
    ideal: Ideal,
) -> Result<VerificationReport, VerifyError> {
    check_quotient_equivalence_with(b, ideal, Execution::default())
}

pub fn check_quotient_equivalence_with(
    b: &RealizationSet,
    ideal: Ideal,
    exec: Execution,
) -> Result<VerificationReport, VerifyError> {
    let param = match (&b.kind, ideal) {
        (RealizationKind::TwoBosonCentral(p), Ideal::I1)
        | (RealizationKind::TwoBosonLowering(p), Ideal::I2)
        | (RealizationKind::SingleBoson(p), Ideal::I3) => p.clone(),
        _ => {
            return Err(VerifyError::KindMismatch {
                expected: format!("realization for {ideal:?}"),
                found: b.kind.name().into(),
            })
        }
    };
    let space = &b.space;
    let sweep = Sweep {
        space,
        columns: space.safe_subspace(&b.step_raise()),
        exec,
    };
    let monomial = |c: usize| {
        let st = space.state(c);
        match ideal {
            Ideal::I1 => QuotientMonomial::i1(st.occ(0), st.occ(1)),
            Ideal::I2 => QuotientMonomial::i2(st.occ(0), st.occ(1)),
            Ideal::I3 => QuotientMonomial::i3(st.occ(0)),
        }
    };
    let mut report = VerificationReport::new(Subject::of(b));
    for gen in Generator::ALL {
        let op = b.generator(gen);
        let param = &param;
        report.checks.push(
            sweep.run(format!("quotient {ideal:?} {}", gen.label()), |c| {
                let x = monomial(c);
                let image = match ideal {
                    Ideal::I1 => induced_action_i1(&b.alg, param, gen, x),
                    Ideal::I2 => induced_action_i2(&b.alg, param, gen, x),
                    Ideal::I3 => induced_action_i3(&b.alg, param, gen, x),
                }
                .expect("monomial built for this ideal");
                let mut expected = ColumnBuilder::new();
                for (y, v) in image.iter() {
                    let row = space
                        .index(&crate::fock::FockState(y.occupation()))
                        .expect("window keeps induced images inside the box");
                    expected.add(row, v.clone());
                }
                (op.column(c).to_vec(), expected.finish())
            }),
        );
    }
    Ok(report)
}

/// Both reordering identities with the realization's generators substituted:
/// `(J3+j)^l J±^m - J±^m (J3+j)^l = sum_{i<l} binom(l,i)(±m)^(l-i) J±^m (J3+j)^i`
/// and `[J-, J+^m] = -J+^(m-1) sum_{i,k<m} c_i (J3+k)^i`, for `1 <= l <= lmax`,
/// `0 <= j <= 2`, `1 <= m <= mmax`.
pub fn check_ordering_identities(r: &RealizationSet, lmax: u32, mmax: u32) -> VerificationReport {
    check_ordering_identities_with(r, lmax, mmax, Execution::default())
}

pub fn check_ordering_identities_with(
    r: &RealizationSet,
    lmax: u32,
    mmax: u32,
    exec: Execution,
) -> VerificationReport {
    let margins: Vec<u32> = r.step_raise().iter().map(|s| s * (lmax + mmax)).collect();
    let sweep = Sweep {
        space: &r.space,
        columns: r.space.safe_subspace(&margins),
        exec,
    };
    let mut subject = Subject::of(r);
    subject.margins = margins;
    let mut report = VerificationReport::new(subject);
    let id = SparseOperator::identity(&r.space);
    for shift in 0..=2u32 {
        let shifted = &r.j3 + &id.scale(&int(shift as i64));
        for sign in [Sign::Plus, Sign::Minus] {
            let ladder = match sign {
                Sign::Plus => &r.jplus,
                Sign::Minus => &r.jminus,
            };
            for l in 1..=lmax {
                for m in 1..=mmax {
                    let data = swap_power(l, shift, sign, m);
                    let sym = if sign == Sign::Plus { '+' } else { '-' };
                    let name = format!("swap l={l} j={shift} {sym} m={m}");
                    report.checks.push(sweep.run(name, |c| {
                        let ladder_m = |v: Column| (0..m).fold(v, |acc, _| ladder.apply(&acc));
                        let mut powers = vec![unit_column(c)];
                        for _ in 0..l {
                            let next = shifted.apply(powers.last().unwrap());
                            powers.push(next);
                        }
                        let left =
                            (0..l).fold(ladder_m(unit_column(c)), |acc, _| shifted.apply(&acc));
                        let lhs = column_sub(&left, &ladder_m(powers[l as usize].clone()));
                        let mut rhs = ColumnBuilder::new();
                        for (i, coeff) in data.coeffs.iter().enumerate() {
                            rhs.add_column(&ladder_m(powers[i].clone()), coeff);
                        }
                        (lhs, rhs.finish())
                    }));
                }
            }
        }
    }
    for m in 1..=mmax {
        let data = commute_lowering_raising(&r.alg, m).expect("m >= 1");
        let poly = apply_polynomial(&r.j3, &data.poly);
        report
            .checks
            .push(sweep.run(format!("lowering-raising m={m}"), |c| {
                let raise = |v: Column, k: u32| (0..k).fold(v, |acc, _| r.jplus.apply(&acc));
                let e = unit_column(c);
                let lhs = column_sub(
                    &r.jminus.apply(&raise(e.clone(), m)),
                    &raise(r.jminus.apply(&e), m),
                );
                let rhs = negate(&raise(poly.column(c).to_vec(), data.raising_power));
                (lhs, rhs)
            }));
    }
    report
}

/// Compares two realizations' generators on a set of columns; used for
/// substitution cross-checks.
pub fn compare_generators(
    name: &str,
    a: &RealizationSet,
    b: &RealizationSet,
    columns: Vec<usize>,
) -> Result<CheckResult, VerifyError> {
    if a.space != b.space {
        return Err(VerifyError::SpaceMismatch);
    }
    let sweep = Sweep {
        space: &a.space,
        columns,
        exec: Execution::default(),
    };
    Ok(sweep.run(name, |c| {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for gen in Generator::ALL {
            lhs = column_add(
                &lhs,
                &offset(a.generator(gen).column(c), a.space.dim(), gen),
            );
            rhs = column_add(
                &rhs,
                &offset(b.generator(gen).column(c), a.space.dim(), gen),
            );
        }
        (lhs, rhs)
    }))
}

fn offset(col: &[(usize, ExactScalar)], dim: usize, gen: Generator) -> Column {
    let k = match gen {
        Generator::J3 => 0,
        Generator::Jplus => 1,
        Generator::Jminus => 2,
    };
    col.iter().map(|(r, v)| (r + k * dim, v.clone())).collect()
}
