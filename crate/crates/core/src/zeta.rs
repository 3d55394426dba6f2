//! Truncated Dirichlet series and truncated Euler product for ζ(s), real s > 1.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integer::primes_up_to;

pub const OPERATIONS: &[&str] = &["zeta_partial_sum", "euler_partial_product", "compare"];

/// Largest prime limit for which [`compare`] also runs the exact smooth-number check.
pub const SMOOTH_CHECK_PRIME_LIMIT: u64 = 5;

/// Geometric-series truncation exponent used by [`compare`]'s smooth-number check.
pub const SMOOTH_CHECK_EXPONENT: u32 = 20;

fn check_s(s: f64) -> Result<()> {
    if s.is_nan() || s <= 1.0 || s.is_infinite() {
        return Err(Error::Domain(format!(
            "s = {s}: the series only converges for real s > 1"
        )));
    }
    Ok(())
}

/// `Σ_{n=1}^{terms} n^{-s}`, accumulated smallest term first.
pub fn zeta_partial_sum(s: f64, terms: u64) -> Result<f64> {
    check_s(s)?;
    if terms == 0 {
        return Err(Error::Domain("at least one term is required".into()));
    }
    Ok((1..=terms).rev().map(|n| (n as f64).powf(-s)).sum())
}

/// `∏_{p <= prime_limit} (1 - p^{-s})^{-1}`; the empty product is 1.
pub fn euler_partial_product(s: f64, prime_limit: u64) -> Result<f64> {
    check_s(s)?;
    Ok(primes_up_to(prime_limit)?
        .into_iter()
        .map(|p| 1.0 / (1.0 - (p as f64).powf(-s)))
        .product())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaComparison {
    pub s: f64,
    pub sum_terms: u64,
    pub product_prime_limit: u64,
    pub partial_sum: f64,
    pub partial_product: f64,
    pub gap: f64,
    /// Outcome of the exact smooth-number check, run only when `s` is an
    /// integer and the prime limit is at most [`SMOOTH_CHECK_PRIME_LIMIT`].
    pub smooth_identity_exact: Option<bool>,
}

pub fn compare(s: f64, sum_terms: u64, prime_limit: u64) -> Result<ZetaComparison> {
    let partial_sum = zeta_partial_sum(s, sum_terms)?;
    let partial_product = euler_partial_product(s, prime_limit)?;
    let smooth_identity_exact =
        if prime_limit <= SMOOTH_CHECK_PRIME_LIMIT && s.fract() == 0.0 && s <= 64.0 {
            Some(smooth_number_identity(prime_limit, s as u32, SMOOTH_CHECK_EXPONENT)?.exact_match)
        } else {
            None
        };
    Ok(ZetaComparison {
        s,
        sum_terms,
        product_prime_limit: prime_limit,
        partial_sum,
        partial_product,
        gap: (partial_sum - partial_product).abs(),
        smooth_identity_exact,
    })
}

/// Exact comparison of a truncated Euler product with the sum over the
/// smooth integers it generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothIdentity {
    pub primes: Vec<u64>,
    pub exponent: u32,
    /// `∏_p Σ_{e=0}^{E} p^{-se}`.
    pub truncated_product: BigRational,
    /// `Σ n^{-s}` over the distinct `n = ∏ p^{e_p}` with every `e_p <= E`.
    pub smooth_sum: BigRational,
    /// `∏_p (1 - p^{-s})^{-1}`, exact.
    pub full_product: BigRational,
    /// Number of exponent vectors enumerated.
    pub exponent_vectors: usize,
    /// Number of distinct integers they produced; equal to `exponent_vectors`
    /// exactly when no integer arises from two exponent vectors.
    pub distinct_integers: usize,
    pub exact_match: bool,
}

impl SmoothIdentity {
    /// `full_product - smooth_sum` as a float; shrinks to zero as the exponent grows.
    pub fn tail_gap(&self) -> f64 {
        (&self.full_product - &self.smooth_sum)
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

pub fn smooth_number_identity(prime_limit: u64, s: u32, exponent: u32) -> Result<SmoothIdentity> {
    if s < 2 {
        return Err(Error::Domain(format!("s = {s}: need an integer s >= 2")));
    }
    let primes = primes_up_to(prime_limit)?;
    let inv_pow = |n: &BigUint| BigRational::new(BigInt::one(), BigInt::from(n.pow(s)));

    let mut truncated_product = BigRational::one();
    let mut full_product = BigRational::one();
    for &p in &primes {
        let p = BigUint::from(p);
        let mut series = BigRational::zero();
        let mut power = BigUint::one();
        for _ in 0..=exponent {
            series += inv_pow(&power);
            power *= &p;
        }
        truncated_product *= series;
        let ps = BigInt::from(p.pow(s));
        full_product *= BigRational::new(ps.clone(), ps - 1);
    }

    let mut integers = vec![BigUint::one()];
    for &p in &primes {
        let mut next = Vec::with_capacity(integers.len() * (exponent as usize + 1));
        for n in &integers {
            let mut m = n.clone();
            for _ in 0..=exponent {
                next.push(m.clone());
                m *= p;
            }
        }
        integers = next;
    }
    let exponent_vectors = integers.len();
    let distinct: BTreeSet<BigUint> = integers.into_iter().collect();
    let smooth_sum = distinct
        .iter()
        .fold(BigRational::zero(), |acc, n| acc + inv_pow(n));

    Ok(SmoothIdentity {
        exact_match: truncated_product == smooth_sum,
        distinct_integers: distinct.len(),
        exponent_vectors,
        primes,
        exponent,
        truncated_product,
        smooth_sum,
        full_product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_sum_examples() {
        assert_eq!(zeta_partial_sum(2.0, 1).unwrap(), 1.0);
        assert!((zeta_partial_sum(2.0, 3).unwrap() - 49.0 / 36.0).abs() < 1e-15);
        assert!(matches!(zeta_partial_sum(1.0, 3), Err(Error::Domain(_))));
        assert!(matches!(
            zeta_partial_sum(f64::NAN, 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(zeta_partial_sum(2.0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn partial_product_examples() {
        assert_eq!(euler_partial_product(2.0, 1).unwrap(), 1.0);
        assert_eq!(euler_partial_product(2.0, 0).unwrap(), 1.0);
        assert!((euler_partial_product(2.0, 2).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            euler_partial_product(0.5, 10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn trivial_comparison() {
        let c = compare(3.0, 1, 0).unwrap();
        assert_eq!((c.partial_sum, c.partial_product, c.gap), (1.0, 1.0, 0.0));
        assert_eq!(c.smooth_identity_exact, Some(true));
        assert_eq!(compare(2.5, 10, 3).unwrap().smooth_identity_exact, None);
    }

    #[test]
    fn smooth_identity_small_case() {
        // primes {2, 3}, E = 1: 1 + 1/4 + 1/9 + 1/36 = (1 + 1/4)(1 + 1/9) = 25/18
        let r = smooth_number_identity(3, 2, 1).unwrap();
        assert_eq!(r.smooth_sum, BigRational::new(25.into(), 18.into()));
        assert!(r.exact_match);
        assert_eq!(r.distinct_integers, 4);
    }
}
