//! Boson realizations of the algebra as sparse operator triples.
//!
//! * [`build_fock_rep`]: the master action transported to `|m1,m2,m3>`.
//! * [`build_three_boson`]: `J3 = a3+ + n1 - n2`, `J+ = a1+`,
//!   `J- = a2+ + sum_{h,i} (-1)^(i-h+1) c_i binom(i,h) (a3+)^h a1 [bracket]`.
//! * [`build_two_boson_central`]: the same with `a3+ -> Λ` on two modes.
//! * [`build_two_boson_lowering`]: `J3 = a2+ + n1`, `J- = λ e^(a2) + ...`.
//! * [`build_single_boson`]: `J3 = κ + n1`, `J- = -a1 [bracket]`.
//! * [`substitute_mode3`]: three-boson form with `a3+` replaced by a
//!   polynomial in `a3+` and `a3`.
//!
//! Diagonal brackets are evaluated at integer occupations and act first, i.e.
//! products are applied right to left as written.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::Zero;
use thiserror::Error;

use crate::algebra::AlgebraSpec;
use crate::faulhaber::{bracket_value, sign_pow, BracketVariant, DrTable, FaulhaberError};
use crate::fock::{
    annihilation, creation, exp_annihilation, number, FockState, SpaceSpec, SparseOperator,
};
use crate::pbw::{lowering_sums, Generator, Ideal};
use crate::scalar::{binomial, format_scalar, int, parse_scalar, pow, ExactScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error("{kind} realization needs {expected} modes, got {got}")]
    ModeCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Bracket(#[from] FaulhaberError),
    #[error("mode-3 substitution needs an unsubstituted three-boson realization, got {0}")]
    NotThreeBoson(&'static str),
    #[error("invalid substitution polynomial {0:?}: expected `(p,q,coeff);...`")]
    BadPolynomial(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealizationKind {
    Fock3,
    ThreeBoson,
    TwoBosonCentral(ExactScalar),
    TwoBosonLowering(ExactScalar),
    SingleBoson(ExactScalar),
}

impl RealizationKind {
    pub fn name(&self) -> &'static str {
        match self {
            RealizationKind::Fock3 => "fock3",
            RealizationKind::ThreeBoson => "three_boson",
            RealizationKind::TwoBosonCentral(_) => "two_boson_central",
            RealizationKind::TwoBosonLowering(_) => "two_boson_lowering",
            RealizationKind::SingleBoson(_) => "single_boson",
        }
    }

    pub fn param(&self) -> Option<&ExactScalar> {
        match self {
            RealizationKind::TwoBosonCentral(p)
            | RealizationKind::TwoBosonLowering(p)
            | RealizationKind::SingleBoson(p) => Some(p),
            _ => None,
        }
    }

    pub fn modes(&self) -> usize {
        match self {
            RealizationKind::Fock3 | RealizationKind::ThreeBoson => 3,
            RealizationKind::TwoBosonCentral(_) | RealizationKind::TwoBosonLowering(_) => 2,
            RealizationKind::SingleBoson(_) => 1,
        }
    }

    /// Quotient whose induced representation this realization reproduces.
    pub fn ideal(&self) -> Option<Ideal> {
        match self {
            RealizationKind::TwoBosonCentral(_) => Some(Ideal::I1),
            RealizationKind::TwoBosonLowering(_) => Some(Ideal::I2),
            RealizationKind::SingleBoson(_) => Some(Ideal::I3),
            _ => None,
        }
    }
}

/// One term `coeff * (a+)^raise * a^lower`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeTerm {
    pub raise: u32,
    pub lower: u32,
    pub coeff: ExactScalar,
}

/// Polynomial in one mode's creation and annihilation operators, normal
/// ordered as written.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModePolynomial {
    pub terms: Vec<ModeTerm>,
}

impl ModePolynomial {
    pub fn new(terms: Vec<(u32, u32, ExactScalar)>) -> Self {
        Self {
            terms: terms
                .into_iter()
                .map(|(raise, lower, coeff)| ModeTerm {
                    raise,
                    lower,
                    coeff,
                })
                .collect(),
        }
    }

    /// `f = a+`.
    pub fn creation() -> Self {
        Self::new(vec![(1, 0, int(1))])
    }

    pub fn constant(value: ExactScalar) -> Self {
        Self::new(vec![(0, 0, value)])
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_zero())
    }

    /// Largest net occupation increase of any term.
    pub fn net_raise(&self) -> u32 {
        self.terms
            .iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| t.raise.saturating_sub(t.lower))
            .max()
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| t.raise + t.lower)
            .max()
            .unwrap_or(0)
    }

    pub fn operator(&self, space: &SpaceSpec, mode: usize) -> SparseOperator {
        let up = creation(space, mode);
        let down = annihilation(space, mode);
        let mut acc = SparseOperator::zero(space);
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            let term = &up.pow(t.raise) * &down.pow(t.lower);
            acc = &acc + &term.scale(&t.coeff);
        }
        acc
    }
}

impl fmt::Display for ModePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "({},{},{})", t.raise, t.lower, format_scalar(&t.coeff))?;
        }
        Ok(())
    }
}

impl FromStr for ModePolynomial {
    type Err = RealizationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || RealizationError::BadPolynomial(text.to_owned());
        let mut terms = Vec::new();
        for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let inner = chunk
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .ok_or_else(bad)?;
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            let [p, q, c] = parts.as_slice() else {
                return Err(bad());
            };
            terms.push((
                p.parse().map_err(|_| bad())?,
                q.parse().map_err(|_| bad())?,
                parse_scalar(c).map_err(|_| bad())?,
            ));
        }
        Ok(Self::new(terms))
    }
}

/// Generator triple on a truncated Fock space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationSet {
    pub kind: RealizationKind,
    pub space: SpaceSpec,
    pub j3: SparseOperator,
    pub jplus: SparseOperator,
    pub jminus: SparseOperator,
    pub alg: AlgebraSpec,
    /// Safe-subspace margins for words of length two: twice the largest
    /// per-mode occupation increase of any single generator.
    pub margins: Vec<u32>,
    pub substitution: Option<ModePolynomial>,
}

impl RealizationSet {
    pub fn generator(&self, gen: Generator) -> &SparseOperator {
        match gen {
            Generator::J3 => &self.j3,
            Generator::Jplus => &self.jplus,
            Generator::Jminus => &self.jminus,
        }
    }

    /// Largest per-mode raise of a single generator.
    pub fn step_raise(&self) -> Vec<u32> {
        self.margins.iter().map(|m| m / 2).collect()
    }
}

/// Deliberate corruptions used to show the checks are not vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Negates the alternating sign `(-1)^(i-h+1)` in the lowering operator.
    FlipAlternatingSign,
}

fn expect_modes(
    space: &SpaceSpec,
    kind: &'static str,
    expected: usize,
) -> Result<(), RealizationError> {
    if space.modes() == expected {
        Ok(())
    } else {
        Err(RealizationError::ModeCount {
            kind,
            expected,
            got: space.modes(),
        })
    }
}

/// What multiplies `a1 [bracket]` for power `h` in the central-type lowering
/// operator: an operator power (`(a3+)^h`, `f^h`) or a scalar power (`Λ^h`).
enum Factor<'a> {
    Operator(&'a SparseOperator),
    Scalar(&'a ExactScalar),
}

fn row_at(rows: &HashMap<(u32, u32), Vec<ExactScalar>>, m1: u32, m2: u32, h: usize) -> ExactScalar {
    rows[&(m1, m2)][h].clone()
}

/// Builds realizations for one algebra and `D_r` table.
pub struct RealizationBuilder<'a> {
    alg: &'a AlgebraSpec,
    dr: &'a DrTable,
    fault: Fault,
}

impl<'a> RealizationBuilder<'a> {
    pub fn new(alg: &'a AlgebraSpec, dr: &'a DrTable) -> Self {
        Self {
            alg,
            dr,
            fault: Fault::None,
        }
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = fault;
        self
    }

    fn alternating(&self, s: usize) -> ExactScalar {
        let sign = sign_pow(s as i64 + 1);
        match self.fault {
            Fault::None => sign,
            Fault::FlipAlternatingSign => -sign,
        }
    }

    /// `sum_{i>=h} (-1)^(i-h+1) c_i binom(i,h) bracket(variant, i-h; m1, m2)`
    /// for every `h`, tabulated over the occupation grid of modes 1 and 2.
    fn bracket_rows(
        &self,
        variant: BracketVariant,
        caps1: u32,
        caps2: u32,
        signed: bool,
    ) -> Result<HashMap<(u32, u32), Vec<ExactScalar>>, RealizationError> {
        let n = self.alg.degree();
        let rlimit = self.alg.dr_limit();
        let mut table = HashMap::new();
        for m1 in 0..=caps1 {
            for m2 in 0..=caps2 {
                let mut row = Vec::with_capacity(n + 1);
                for h in 0..=n {
                    let mut acc = ExactScalar::zero();
                    for i in h..=n {
                        let c = self.alg.coeff(i);
                        if c.is_zero() {
                            continue;
                        }
                        let s = i - h;
                        let b = bracket_value(
                            variant, s as u32, m1 as u64, m2 as u64, self.dr, rlimit,
                        )?;
                        let mut term =
                            c * ExactScalar::from_integer(binomial(i as u32, h as u32)) * b;
                        if signed {
                            term *= self.alternating(s);
                        }
                        acc += term;
                    }
                    row.push(acc);
                }
                table.insert((m1, m2), row);
            }
        }
        Ok(table)
    }

    /// `a2+ + sum_h factor_h a1 Δ_h`, with `Δ_h` the diagonal two-variable bracket.
    fn central_lowering(
        &self,
        space: &SpaceSpec,
        factor: Factor<'_>,
    ) -> Result<SparseOperator, RealizationError> {
        let caps = space.caps();
        let rows = self.bracket_rows(BracketVariant::TwoVar, caps[0], caps[1], true)?;
        let a1 = annihilation(space, 0);
        let mut jminus = creation(space, 1);
        let mut power = SparseOperator::identity(space);
        for h in 0..=self.alg.degree() {
            let diag = SparseOperator::diagonal(space, |st| row_at(&rows, st.occ(0), st.occ(1), h));
            if !diag.is_zero() {
                let lowered = &a1 * &diag;
                let term = match factor {
                    Factor::Operator(_) => &power * &lowered,
                    Factor::Scalar(value) => lowered.scale(&pow(value, h as u32)),
                };
                jminus = &jminus + &term;
            }
            if let Factor::Operator(op) = factor {
                power = op * &power;
            }
        }
        Ok(jminus)
    }

    fn three_mode(
        &self,
        space: &SpaceSpec,
        subst: Option<&ModePolynomial>,
    ) -> Result<RealizationSet, RealizationError> {
        expect_modes(space, "three_boson", 3)?;
        let raise3 = match subst {
            Some(f) => f.operator(space, 2),
            None => creation(space, 2),
        };
        let j3 = &(&raise3 + &number(space, 0)) - &number(space, 1);
        let jplus = creation(space, 0);
        let jminus = self.central_lowering(space, Factor::Operator(&raise3))?;
        let per_step = match subst {
            Some(f) => self.alg.degree().max(1) as u32 * f.net_raise(),
            None => self.alg.degree().max(1) as u32,
        };
        Ok(RealizationSet {
            kind: RealizationKind::ThreeBoson,
            space: space.clone(),
            j3,
            jplus,
            jminus,
            alg: self.alg.clone(),
            margins: vec![2, 2, 2 * per_step],
            substitution: subst.cloned(),
        })
    }

    pub fn three_boson(&self, space: &SpaceSpec) -> Result<RealizationSet, RealizationError> {
        self.three_mode(space, None)
    }

    pub fn substituted(
        &self,
        f: &ModePolynomial,
        space: &SpaceSpec,
    ) -> Result<RealizationSet, RealizationError> {
        if f.is_empty() {
            log::warn!("empty mode-3 substitution: the result is the Λ = 0 realization");
        }
        self.three_mode(space, Some(f))
    }

    pub fn two_boson_central(
        &self,
        lambda: &ExactScalar,
        space: &SpaceSpec,
    ) -> Result<RealizationSet, RealizationError> {
        expect_modes(space, "two_boson_central", 2)?;
        let j3 = &(&SparseOperator::scalar(space, lambda) + &number(space, 0)) - &number(space, 1);
        let jplus = creation(space, 0);
        let jminus = self.central_lowering(space, Factor::Scalar(lambda))?;
        Ok(RealizationSet {
            kind: RealizationKind::TwoBosonCentral(lambda.clone()),
            space: space.clone(),
            j3,
            jplus,
            jminus,
            alg: self.alg.clone(),
            margins: vec![2, 2],
            substitution: None,
        })
    }

    pub fn two_boson_lowering(
        &self,
        lambda: &ExactScalar,
        space: &SpaceSpec,
    ) -> Result<RealizationSet, RealizationError> {
        expect_modes(space, "two_boson_lowering", 2)?;
        let raise2 = creation(space, 1);
        let j3 = &raise2 + &number(space, 0);
        let jplus = creation(space, 0);
        let rows = self.bracket_rows(BracketVariant::NegSingle, space.caps()[0], 0, true)?;
        let a1 = annihilation(space, 0);
        let mut jminus = exp_annihilation(space, 1).scale(lambda);
        let mut power = SparseOperator::identity(space);
        for h in 0..=self.alg.degree() {
            let diag = SparseOperator::diagonal(space, |st| row_at(&rows, st.occ(0), 0, h));
            if !diag.is_zero() {
                jminus = &jminus + &(&a1 * &(&diag * &power));
            }
            power = &raise2 * &power;
        }
        Ok(RealizationSet {
            kind: RealizationKind::TwoBosonLowering(lambda.clone()),
            space: space.clone(),
            j3,
            jplus,
            jminus,
            alg: self.alg.clone(),
            margins: vec![2, 2 * self.alg.degree().max(1) as u32],
            substitution: None,
        })
    }

    pub fn single_boson(
        &self,
        kappa: &ExactScalar,
        space: &SpaceSpec,
    ) -> Result<RealizationSet, RealizationError> {
        expect_modes(space, "single_boson", 1)?;
        let j3 = &SparseOperator::scalar(space, kappa) + &number(space, 0);
        let jplus = creation(space, 0);
        let rows = self.bracket_rows(BracketVariant::Single, space.caps()[0], 0, false)?;
        let diag = SparseOperator::diagonal(space, |st| {
            let row = &rows[&(st.occ(0), 0)];
            let mut acc = ExactScalar::zero();
            for (h, v) in row.iter().enumerate() {
                acc += v * pow(kappa, h as u32);
            }
            -acc
        });
        let jminus = &annihilation(space, 0) * &diag;
        Ok(RealizationSet {
            kind: RealizationKind::SingleBoson(kappa.clone()),
            space: space.clone(),
            j3,
            jplus,
            jminus,
            alg: self.alg.clone(),
            margins: vec![2],
            substitution: None,
        })
    }
}

/// Master action transported to the three-mode Fock space, column by column.
pub fn build_fock_rep(
    alg: &AlgebraSpec,
    space: &SpaceSpec,
) -> Result<RealizationSet, RealizationError> {
    expect_modes(space, "fock3", 3)?;
    let occ =
        |st: &FockState| -> [i64; 3] { [st.occ(0) as i64, st.occ(1) as i64, st.occ(2) as i64] };
    let j3 = SparseOperator::from_action(space, |st| {
        let [m1, m2, m3] = occ(st);
        vec![
            (vec![m1, m2, m3 + 1], int(1)),
            (vec![m1, m2, m3], int(m1 - m2)),
        ]
    });
    let jplus = SparseOperator::from_action(space, |st| {
        let [m1, m2, m3] = occ(st);
        vec![(vec![m1 + 1, m2, m3], int(1))]
    });
    let jminus = SparseOperator::from_action(space, |st| {
        let [m1, m2, m3] = occ(st);
        let mut out = vec![(vec![m1, m2 + 1, m3], int(1))];
        if m1 > 0 {
            for (h, t) in lowering_sums(alg, m1 as u32, m2).into_iter().enumerate() {
                out.push((vec![m1 - 1, m2, m3 + h as i64], -t));
            }
        }
        out
    });
    Ok(RealizationSet {
        kind: RealizationKind::Fock3,
        space: space.clone(),
        j3,
        jplus,
        jminus,
        alg: alg.clone(),
        margins: vec![2, 2, 2 * alg.degree().max(1) as u32],
        substitution: None,
    })
}

pub fn build_three_boson(
    alg: &AlgebraSpec,
    space: &SpaceSpec,
    dr: &DrTable,
) -> Result<RealizationSet, RealizationError> {
    RealizationBuilder::new(alg, dr).three_boson(space)
}

pub fn build_two_boson_central(
    alg: &AlgebraSpec,
    lambda: &ExactScalar,
    space: &SpaceSpec,
    dr: &DrTable,
) -> Result<RealizationSet, RealizationError> {
    RealizationBuilder::new(alg, dr).two_boson_central(lambda, space)
}

pub fn build_two_boson_lowering(
    alg: &AlgebraSpec,
    lambda: &ExactScalar,
    space: &SpaceSpec,
    dr: &DrTable,
) -> Result<RealizationSet, RealizationError> {
    RealizationBuilder::new(alg, dr).two_boson_lowering(lambda, space)
}

pub fn build_single_boson(
    alg: &AlgebraSpec,
    kappa: &ExactScalar,
    space: &SpaceSpec,
    dr: &DrTable,
) -> Result<RealizationSet, RealizationError> {
    RealizationBuilder::new(alg, dr).single_boson(kappa, space)
}

/// Rebuilds a three-boson realization with `a3+` replaced by `f(a3+, a3)`.
pub fn substitute_mode3(
    r: &RealizationSet,
    f: &ModePolynomial,
    dr: &DrTable,
) -> Result<RealizationSet, RealizationError> {
    if r.kind != RealizationKind::ThreeBoson || r.substitution.is_some() {
        return Err(RealizationError::NotThreeBoson(r.kind.name()));
    }
    RealizationBuilder::new(&r.alg, dr).substituted(f, &r.space)
}

/// Builds the realization named by `kind` (parameter taken from the kind).
pub fn build_kind(
    alg: &AlgebraSpec,
    kind: &RealizationKind,
    space: &SpaceSpec,
    dr: &DrTable,
) -> Result<RealizationSet, RealizationError> {
    let b = RealizationBuilder::new(alg, dr);
    match kind {
        RealizationKind::Fock3 => build_fock_rep(alg, space),
        RealizationKind::ThreeBoson => b.three_boson(space),
        RealizationKind::TwoBosonCentral(p) => b.two_boson_central(p, space),
        RealizationKind::TwoBosonLowering(p) => b.two_boson_lowering(p, space),
        RealizationKind::SingleBoson(p) => b.single_boson(p, space),
    }
}
