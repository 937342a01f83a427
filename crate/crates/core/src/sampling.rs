//! Seeded random draws for property suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraSpec;
use crate::realizations::ModePolynomial;
use crate::scalar::{ratio, ExactScalar};

pub const MAX_DEGREE: usize = 6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn random_scalar<R: Rng>(rng: &mut R) -> ExactScalar {
    ratio(rng.random_range(-5..=5), rng.random_range(1..=4))
}

pub fn random_nonzero_scalar<R: Rng>(rng: &mut R) -> ExactScalar {
    loop {
        let x = random_scalar(rng);
        if x != ratio(0, 1) {
            return x;
        }
    }
}

/// Algebra of degree `n <= max_n` with a nonzero leading coefficient.
pub fn random_algebra_up_to<R: Rng>(rng: &mut R, max_n: usize) -> AlgebraSpec {
    let n = rng.random_range(0..=max_n);
    random_algebra_of_degree(rng, n)
}

pub fn random_algebra_of_degree<R: Rng>(rng: &mut R, n: usize) -> AlgebraSpec {
    let mut coeffs: Vec<ExactScalar> = (0..n).map(|_| random_scalar(rng)).collect();
    coeffs.push(random_nonzero_scalar(rng));
    AlgebraSpec::new(n, coeffs).expect("leading coefficient is nonzero")
}

pub fn random_algebra<R: Rng>(rng: &mut R) -> AlgebraSpec {
    random_algebra_up_to(rng, MAX_DEGREE)
}

/// Non-empty `f(a+, a)` of total degree at most 2.
pub fn random_mode_polynomial<R: Rng>(rng: &mut R) -> ModePolynomial {
    const MONOMIALS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    loop {
        let mut terms = Vec::new();
        for &(p, q) in &MONOMIALS {
            if rng.random_bool(0.5) {
                terms.push((p, q, random_nonzero_scalar(rng)));
            }
        }
        let f = ModePolynomial::new(terms);
        if !f.is_empty() {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible_and_in_range() {
        let a: Vec<_> = (0..10).map(|s| random_algebra(&mut rng(s))).collect();
        let b: Vec<_> = (0..10).map(|s| random_algebra(&mut rng(s))).collect();
        assert_eq!(a, b);
        for alg in &a {
            assert!(alg.degree() <= MAX_DEGREE);
            for c in alg.coeffs() {
                assert!(c.numer().magnitude() <= &5u32.into());
                assert!(c.denom() <= &4.into());
            }
        }
        let mut r = rng(7);
        for _ in 0..20 {
            let f = random_mode_polynomial(&mut r);
            assert!(f.degree() <= 2 && !f.is_empty());
        }
    }
}
