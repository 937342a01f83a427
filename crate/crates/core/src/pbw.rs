//! Symbolic layer: ordered monomials `X(m1,m2,m3) = J+^m1 J-^m2 J3^m3`, the
//! left-multiplication (master) representation on them, the two reordering
//! identities it rests on, and the representations induced on the quotients
//! by the left ideals generated by `J3 - Λ` (I1), `J- - λ` (I2) and
//! `{J-, J3 - κ}` (I3).

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraSpec;
use crate::faulhaber::{power_sum, shifted_power_sum};
use crate::scalar::{binomial, int, pow, ExactScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbwError {
    #[error("monomial belongs to ideal {found:?}, expected {expected:?}")]
    WrongIdeal { expected: Ideal, found: Ideal },
    #[error("[J-, J+^m] needs m >= 1")]
    ZeroPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    J3,
    Jplus,
    Jminus,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::J3, Generator::Jplus, Generator::Jminus];

    pub fn label(self) -> &'static str {
        match self {
            Generator::J3 => "J3",
            Generator::Jplus => "J+",
            Generator::Jminus => "J-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `X(m1, m2, m3)`; `(0,0,0)` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    pub m1: u32,
    pub m2: u32,
    pub m3: u32,
}

impl PbwMonomial {
    pub const ONE: PbwMonomial = PbwMonomial {
        m1: 0,
        m2: 0,
        m3: 0,
    };

    pub fn new(m1: u32, m2: u32, m3: u32) -> Self {
        Self { m1, m2, m3 }
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({},{},{})", self.m1, self.m2, self.m3)
    }
}

/// Finite rational combination of basis keys, zero coefficients absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, ExactScalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        let mut out = Self::zero();
        out.add_term(key, int(1));
        out
    }

    pub fn add_term(&mut self, key: K, coeff: ExactScalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(key.clone())
            .or_insert_with(ExactScalar::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &ExactScalar) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * factor);
        }
    }

    pub fn coeff(&self, key: &K) -> ExactScalar {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    pub fn scaled(&self, factor: &ExactScalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &int(1));
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        out
    }
}

pub type UeaElement = LinComb<PbwMonomial>;

/// `T_h = sum_{i=h}^n c_i binom(i,h) sum_{j=0}^{m1-1} (j - m2)^(i-h)` for
/// `h = 0..=n`: the coefficient of `X(m1-1, m2, m3+h)` in `J- X(m1,m2,m3)`.
pub fn lowering_sums(alg: &AlgebraSpec, m1: u32, m2: i64) -> Vec<ExactScalar> {
    let n = alg.degree();
    (0..=n)
        .map(|h| {
            let mut acc = ExactScalar::zero();
            for i in h..=n {
                let c = alg.coeff(i);
                if c.is_zero() || m1 == 0 {
                    continue;
                }
                acc += c
                    * ExactScalar::from_integer(binomial(i as u32, h as u32))
                    * shifted_power_sum((i - h) as u32, m1 as u64, m2);
            }
            acc
        })
        .collect()
}

/// Left action of a generator on an ordered monomial.
pub fn master_action(alg: &AlgebraSpec, gen: Generator, x: PbwMonomial) -> UeaElement {
    let PbwMonomial { m1, m2, m3 } = x;
    let mut out = UeaElement::zero();
    match gen {
        Generator::J3 => {
            out.add_term(PbwMonomial::new(m1, m2, m3 + 1), int(1));
            out.add_term(x, int(m1 as i64 - m2 as i64));
        }
        Generator::Jplus => out.add_term(PbwMonomial::new(m1 + 1, m2, m3), int(1)),
        Generator::Jminus => {
            out.add_term(PbwMonomial::new(m1, m2 + 1, m3), int(1));
            if m1 > 0 {
                for (h, t) in lowering_sums(alg, m1, m2 as i64).into_iter().enumerate() {
                    out.add_term(PbwMonomial::new(m1 - 1, m2, m3 + h as u32), -t);
                }
            }
        }
    }
    out
}

/// Coefficients for `(J3 + j)^l J±^m = J±^m [(J3 + j)^l + sum_{i<l} coeffs[i] (J3 + j)^i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapPower {
    pub l: u32,
    pub shift: u32,
    pub sign: Sign,
    pub m: u32,
    /// `binom(l, i) (±m)^(l-i)` for `i = 0..l`.
    pub coeffs: Vec<ExactScalar>,
}

pub fn swap_power(l: u32, shift: u32, sign: Sign, m: u32) -> SwapPower {
    let step = int(sign.value() * m as i64);
    let coeffs = (0..l)
        .map(|i| ExactScalar::from_integer(binomial(l, i)) * pow(&step, l - i))
        .collect();
    SwapPower {
        l,
        shift,
        sign,
        m,
        coeffs,
    }
}

/// `[J-, J+^m] = -J+^(m-1) * poly(J3)` with `poly = sum_i sum_{k<m} c_i (J3+k)^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoweringRaising {
    pub raising_power: u32,
    /// Ascending coefficients of `poly` in `J3`.
    pub poly: Vec<ExactScalar>,
}

pub fn commute_lowering_raising(alg: &AlgebraSpec, m: u32) -> Result<LoweringRaising, PbwError> {
    if m == 0 {
        return Err(PbwError::ZeroPower);
    }
    let n = alg.degree();
    let poly = (0..=n)
        .map(|t| {
            let mut acc = ExactScalar::zero();
            for i in t..=n {
                acc += alg.coeff(i)
                    * ExactScalar::from_integer(binomial(i as u32, t as u32))
                    * power_sum((i - t) as u32, m as u64);
            }
            acc
        })
        .collect();
    Ok(LoweringRaising {
        raising_power: m - 1,
        poly,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ideal {
    I1,
    I2,
    I3,
}

/// Basis element of a quotient: `X(m1,m2)` for I1, `X(m1,m3)` for I2,
/// `X(m1)` for I3 (`second` is then always 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientMonomial {
    pub ideal: Ideal,
    pub first: u32,
    pub second: u32,
}

impl QuotientMonomial {
    pub fn i1(m1: u32, m2: u32) -> Self {
        Self {
            ideal: Ideal::I1,
            first: m1,
            second: m2,
        }
    }

    pub fn i2(m1: u32, m3: u32) -> Self {
        Self {
            ideal: Ideal::I2,
            first: m1,
            second: m3,
        }
    }

    pub fn i3(m1: u32) -> Self {
        Self {
            ideal: Ideal::I3,
            first: m1,
            second: 0,
        }
    }

    /// Occupation numbers of the matching Fock state.
    pub fn occupation(&self) -> Vec<u32> {
        match self.ideal {
            Ideal::I1 | Ideal::I2 => vec![self.first, self.second],
            Ideal::I3 => vec![self.first],
        }
    }

    fn with(&self, first: u32, second: u32) -> Self {
        Self {
            ideal: self.ideal,
            first,
            second,
        }
    }
}

pub type QuotientElement = LinComb<QuotientMonomial>;

fn expect_ideal(x: &QuotientMonomial, expected: Ideal) -> Result<(), PbwError> {
    if x.ideal == expected {
        Ok(())
    } else {
        Err(PbwError::WrongIdeal {
            expected,
            found: x.ideal,
        })
    }
}

/// Induced action on `U / I1`, where `J3 - Λ` generates I1.
pub fn induced_action_i1(
    alg: &AlgebraSpec,
    lambda: &ExactScalar,
    gen: Generator,
    x: QuotientMonomial,
) -> Result<QuotientElement, PbwError> {
    expect_ideal(&x, Ideal::I1)?;
    let (m1, m2) = (x.first, x.second);
    let mut out = QuotientElement::zero();
    match gen {
        Generator::J3 => out.add_term(x, lambda + int(m1 as i64 - m2 as i64)),
        Generator::Jplus => out.add_term(x.with(m1 + 1, m2), int(1)),
        Generator::Jminus => {
            out.add_term(x.with(m1, m2 + 1), int(1));
            if m1 > 0 {
                let mut total = ExactScalar::zero();
                for (h, t) in lowering_sums(alg, m1, m2 as i64).iter().enumerate() {
                    total += t * pow(lambda, h as u32);
                }
                out.add_term(x.with(m1 - 1, m2), -total);
            }
        }
    }
    Ok(out)
}

/// Induced action on `U / I2`, where `J- - λ` generates I2.
pub fn induced_action_i2(
    alg: &AlgebraSpec,
    lambda: &ExactScalar,
    gen: Generator,
    x: QuotientMonomial,
) -> Result<QuotientElement, PbwError> {
    expect_ideal(&x, Ideal::I2)?;
    let (m1, m3) = (x.first, x.second);
    let mut out = QuotientElement::zero();
    match gen {
        Generator::J3 => {
            out.add_term(x.with(m1, m3 + 1), int(1));
            out.add_term(x, int(m1 as i64));
        }
        Generator::Jplus => out.add_term(x.with(m1 + 1, m3), int(1)),
        Generator::Jminus => {
            for r in 0..=m3 {
                out.add_term(
                    x.with(m1, r),
                    lambda * ExactScalar::from_integer(binomial(m3, r)),
                );
            }
            if m1 > 0 {
                for (h, t) in lowering_sums(alg, m1, 0).into_iter().enumerate() {
                    out.add_term(x.with(m1 - 1, m3 + h as u32), -t);
                }
            }
        }
    }
    Ok(out)
}

/// Induced action on `U / I3`, where `J-` and `J3 - κ` generate I3.
///
/// The lowering line carries the structure constant `c_i` in every term,
/// consistent with the master action taken modulo I3.
pub fn induced_action_i3(
    alg: &AlgebraSpec,
    kappa: &ExactScalar,
    gen: Generator,
    x: QuotientMonomial,
) -> Result<QuotientElement, PbwError> {
    expect_ideal(&x, Ideal::I3)?;
    let m1 = x.first;
    let mut out = QuotientElement::zero();
    match gen {
        Generator::J3 => out.add_term(x, kappa + int(m1 as i64)),
        Generator::Jplus => out.add_term(x.with(m1 + 1, 0), int(1)),
        Generator::Jminus => {
            if m1 > 0 {
                let mut total = ExactScalar::zero();
                for (h, t) in lowering_sums(alg, m1, 0).iter().enumerate() {
                    total += t * pow(kappa, h as u32);
                }
                out.add_term(x.with(m1 - 1, 0), -total);
            }
        }
    }
    Ok(out)
}

/// `X(m1,m2,m3) -> Λ^m3 X(m1,m2)` modulo I1.
pub fn reduce_mod_i1(element: &UeaElement, lambda: &ExactScalar) -> QuotientElement {
    let mut out = QuotientElement::zero();
    for (x, c) in element.iter() {
        out.add_term(QuotientMonomial::i1(x.m1, x.m2), c * pow(lambda, x.m3));
    }
    out
}

/// A representation given by its action on basis keys.
pub trait PbwAction {
    type Basis: Ord + Clone;

    fn act(&self, gen: Generator, x: &Self::Basis) -> Result<LinComb<Self::Basis>, PbwError>;

    fn act_on(
        &self,
        gen: Generator,
        v: &LinComb<Self::Basis>,
    ) -> Result<LinComb<Self::Basis>, PbwError> {
        let mut out = LinComb::zero();
        for (x, c) in v.iter() {
            out.add_scaled(&self.act(gen, x)?, c);
        }
        Ok(out)
    }
}

pub struct MasterRep<'a> {
    pub alg: &'a AlgebraSpec,
}

impl PbwAction for MasterRep<'_> {
    type Basis = PbwMonomial;

    fn act(&self, gen: Generator, x: &PbwMonomial) -> Result<UeaElement, PbwError> {
        Ok(master_action(self.alg, gen, *x))
    }
}

pub struct InducedRep<'a> {
    pub alg: &'a AlgebraSpec,
    pub ideal: Ideal,
    pub param: ExactScalar,
}

impl PbwAction for InducedRep<'_> {
    type Basis = QuotientMonomial;

    fn act(&self, gen: Generator, x: &QuotientMonomial) -> Result<QuotientElement, PbwError> {
        match self.ideal {
            Ideal::I1 => induced_action_i1(self.alg, &self.param, gen, *x),
            Ideal::I2 => induced_action_i2(self.alg, &self.param, gen, *x),
            Ideal::I3 => induced_action_i3(self.alg, &self.param, gen, *x),
        }
    }
}

/// Residuals of the three defining relations on one basis element:
/// `[J3,J+] - J+`, `[J3,J-] + J-`, `[J+,J-] - sum c_i J3^i`.
pub fn relation_defects<R: PbwAction>(
    rep: &R,
    alg: &AlgebraSpec,
    x: &R::Basis,
) -> Result<[LinComb<R::Basis>; 3], PbwError> {
    use Generator::*;
    let v = LinComb::basis(x.clone());
    let pair = |a: Generator, b: Generator| -> Result<LinComb<R::Basis>, PbwError> {
        let ab = rep.act_on(a, &rep.act_on(b, &v)?)?;
        let ba = rep.act_on(b, &rep.act_on(a, &v)?)?;
        Ok(ab.minus(&ba))
    };
    let r1 = pair(J3, Jplus)?.minus(&rep.act_on(Jplus, &v)?);
    let r2 = pair(J3, Jminus)?.plus(&rep.act_on(Jminus, &v)?);
    let mut rhs = LinComb::zero();
    let mut power = v.clone();
    for i in 0..=alg.degree() {
        if i > 0 {
            power = rep.act_on(J3, &power)?;
        }
        rhs.add_scaled(&power, alg.coeff(i));
    }
    let r3 = pair(Jplus, Jminus)?.minus(&rhs);
    Ok([r1, r2, r3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Preset;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    fn x(m1: u32, m2: u32, m3: u32) -> PbwMonomial {
        PbwMonomial::new(m1, m2, m3)
    }

    fn comb<K: Ord + Clone>(terms: Vec<(K, ExactScalar)>) -> LinComb<K> {
        let mut out = LinComb::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn higgs() -> AlgebraSpec {
        AlgebraSpec::preset(Preset::Higgs {
            c1: int(2),
            c3: ratio(1, 3),
        })
        .unwrap()
    }

    #[test]
    fn master_examples() {
        let su2 = AlgebraSpec::su2();
        assert_eq!(
            master_action(&su2, Generator::Jminus, x(1, 0, 0)),
            comb(vec![(x(1, 1, 0), int(1)), (x(0, 0, 1), int(-2))])
        );
        assert_eq!(
            master_action(&higgs(), Generator::Jplus, PbwMonomial::ONE),
            UeaElement::basis(x(1, 0, 0))
        );
        assert_eq!(
            master_action(&higgs(), Generator::Jminus, x(0, 5, 7)),
            UeaElement::basis(x(0, 6, 7))
        );
        assert_eq!(
            master_action(&su2, Generator::J3, x(3, 1, 0)),
            comb(vec![(x(3, 1, 1), int(1)), (x(3, 1, 0), int(2))])
        );
    }

    #[test]
    fn swap_examples() {
        assert_eq!(swap_power(1, 0, Sign::Plus, 1).coeffs, vec![int(1)]);
        assert!(swap_power(0, 3, Sign::Minus, 2).coeffs.is_empty());
        assert_eq!(
            swap_power(2, 0, Sign::Minus, 3).coeffs,
            vec![int(9), int(-6)]
        );
    }

    #[test]
    fn lowering_raising_examples() {
        let su2 = AlgebraSpec::su2();
        let c1 = commute_lowering_raising(&su2, 1).unwrap();
        assert_eq!(c1.raising_power, 0);
        assert_eq!(c1.poly, vec![int(0), int(2)]);
        let c2 = commute_lowering_raising(&su2, 2).unwrap();
        assert_eq!(c2.raising_power, 1);
        assert_eq!(c2.poly, vec![int(2), int(4)]);
        let abelian5 = AlgebraSpec::new(0, vec![int(5)]).unwrap();
        let c3 = commute_lowering_raising(&abelian5, 3).unwrap();
        assert_eq!((c3.raising_power, c3.poly), (2, vec![int(15)]));
        assert_eq!(commute_lowering_raising(&su2, 0), Err(PbwError::ZeroPower));
    }

    #[test]
    fn induced_examples() {
        let su2 = AlgebraSpec::su2();
        let j = ratio(3, 2);
        assert_eq!(
            induced_action_i1(&su2, &j, Generator::J3, QuotientMonomial::i1(0, 0)).unwrap(),
            comb(vec![(QuotientMonomial::i1(0, 0), j.clone())])
        );
        assert_eq!(
            induced_action_i1(&su2, &j, Generator::Jminus, QuotientMonomial::i1(1, 0)).unwrap(),
            comb(vec![
                (QuotientMonomial::i1(1, 1), int(1)),
                (QuotientMonomial::i1(0, 0), int(-2) * &j)
            ])
        );
        assert_eq!(
            induced_action_i1(&su2, &j, Generator::Jplus, QuotientMonomial::i1(2, 3)).unwrap(),
            QuotientElement::basis(QuotientMonomial::i1(3, 3))
        );

        let lam = ratio(-2, 3);
        assert_eq!(
            induced_action_i2(&su2, &lam, Generator::Jminus, QuotientMonomial::i2(0, 2)).unwrap(),
            comb(vec![
                (QuotientMonomial::i2(0, 0), lam.clone()),
                (QuotientMonomial::i2(0, 1), int(2) * &lam),
                (QuotientMonomial::i2(0, 2), lam.clone())
            ])
        );
        assert_eq!(
            induced_action_i2(&su2, &lam, Generator::Jminus, QuotientMonomial::i2(0, 0)).unwrap(),
            comb(vec![(QuotientMonomial::i2(0, 0), lam.clone())])
        );
        assert_eq!(
            induced_action_i2(&su2, &lam, Generator::Jminus, QuotientMonomial::i2(1, 0)).unwrap(),
            comb(vec![
                (QuotientMonomial::i2(1, 0), lam.clone()),
                (QuotientMonomial::i2(0, 1), int(-2))
            ])
        );

        let kappa = ratio(5, 7);
        assert_eq!(
            induced_action_i3(&higgs(), &kappa, Generator::J3, QuotientMonomial::i3(4)).unwrap(),
            comb(vec![(QuotientMonomial::i3(4), &kappa + int(4))])
        );
        assert!(
            induced_action_i3(&higgs(), &kappa, Generator::Jminus, QuotientMonomial::i3(0))
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            induced_action_i3(&su2, &kappa, Generator::Jminus, QuotientMonomial::i3(2)).unwrap(),
            comb(vec![(QuotientMonomial::i3(1), -(int(4) * &kappa + int(2)))])
        );

        assert_eq!(
            induced_action_i2(&su2, &kappa, Generator::J3, QuotientMonomial::i3(1)),
            Err(PbwError::WrongIdeal {
                expected: Ideal::I2,
                found: Ideal::I3
            })
        );
    }

    #[test]
    fn master_closes_on_window() {
        for alg in [AlgebraSpec::su2(), higgs()] {
            let rep = MasterRep { alg: &alg };
            for m1 in 0..4 {
                for m2 in 0..3 {
                    for m3 in 0..3 {
                        for d in relation_defects(&rep, &alg, &x(m1, m2, m3)).unwrap() {
                            assert!(d.is_zero(), "defect at {}", x(m1, m2, m3));
                        }
                    }
                }
            }
        }
    }

    fn arb_algebra() -> impl Strategy<Value = AlgebraSpec> {
        (0usize..=6).prop_flat_map(|n| {
            (
                proptest::collection::vec((-5i64..=5, 1i64..=4), n),
                (1i64..=5, 1i64..=4, proptest::bool::ANY),
            )
                .prop_map(move |(lower, (p, q, neg))| {
                    let mut coeffs: Vec<_> = lower.into_iter().map(|(p, q)| ratio(p, q)).collect();
                    let lead = if n == 0 {
                        ratio(p - 3, q)
                    } else {
                        ratio(if neg { -p } else { p }, q)
                    };
                    coeffs.push(lead);
                    AlgebraSpec::new(n, coeffs).unwrap()
                })
        })
    }

    fn arb_param() -> impl Strategy<Value = ExactScalar> {
        (-5i64..=5, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn induced_representations_close(alg in arb_algebra(), param in arb_param(), a in 0u32..=6, b in 0u32..=6) {
            for (ideal, key) in [
                (Ideal::I1, QuotientMonomial::i1(a, b)),
                (Ideal::I2, QuotientMonomial::i2(a, b)),
                (Ideal::I3, QuotientMonomial::i3(a)),
            ] {
                let rep = InducedRep { alg: &alg, ideal, param: param.clone() };
                for d in relation_defects(&rep, &alg, &key).unwrap() {
                    prop_assert!(d.is_zero(), "{:?} defect at {:?}: {:?}", ideal, key, d);
                }
            }
        }

        #[test]
        fn master_never_lowers_m2_m3(alg in arb_algebra(), m1 in 0u32..=6, m2 in 0u32..=6, m3 in 0u32..=6) {
            for gen in Generator::ALL {
                for (y, _) in master_action(&alg, gen, x(m1, m2, m3)).iter() {
                    prop_assert!(y.m2 >= m2 && y.m3 >= m3);
                }
            }
        }

        #[test]
        fn master_mod_i1_is_induced(alg in arb_algebra(), lam in arb_param(), m1 in 0u32..=6, m2 in 0u32..=6, m3 in 0u32..=3) {
            for gen in Generator::ALL {
                let reduced = reduce_mod_i1(&master_action(&alg, gen, x(m1, m2, m3)), &lam);
                let induced = induced_action_i1(&alg, &lam, gen, QuotientMonomial::i1(m1, m2))
                    .unwrap()
                    .scaled(&pow(&lam, m3));
                prop_assert_eq!(reduced, induced);
            }
        }

        #[test]
        fn master_closes_randomly(alg in arb_algebra(), m1 in 0u32..=4, m2 in 0u32..=3, m3 in 0u32..=2) {
            let rep = MasterRep { alg: &alg };
            for d in relation_defects(&rep, &alg, &x(m1, m2, m3)).unwrap() {
                prop_assert!(d.is_zero());
            }
        }
    }
}
