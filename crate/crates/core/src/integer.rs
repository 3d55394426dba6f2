//! Exact positive-integer arithmetic: division with remainder, primality,
//! trial-division factorization, and the exhaustive factorization search that
//! serves as an executable uniqueness check.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest magnitude any operation accepts or produces.
pub const MAX_SUPPORTED: u64 = i64::MAX as u64;

/// Default upper bound for [`enumerate_prime_factorizations`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

/// Largest limit [`primes_up_to`] will sieve to.
pub const SIEVE_BUDGET: u64 = 100_000_000;

/// Primes below this are cached; trial division continues past it on a 6k±1 wheel.
const SMALL_PRIME_LIMIT: u64 = 1 << 16;

pub const OPERATIONS: &[&str] = &[
    "div_rem",
    "is_prime",
    "next_prime",
    "factor",
    "enumerate_prime_factorizations",
    "primes_up_to",
];

pub(crate) fn check_range(what: &str, n: u64) -> Result<()> {
    if n > MAX_SUPPORTED {
        return Err(Error::Range(format!(
            "{what} = {n} exceeds the supported maximum {MAX_SUPPORTED}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivRem {
    pub quotient: u64,
    pub remainder: u64,
}

/// Writes `dividend = quotient * divisor + remainder` with `0 <= remainder < divisor`.
///
/// The remainder may be zero; callers that need a strictly positive
/// remainder (the non-dividing case) test for it themselves.
pub fn div_rem(dividend: u64, divisor: u64) -> Result<DivRem> {
    if divisor == 0 {
        return Err(Error::Domain("divisor must be positive".into()));
    }
    Ok(DivRem {
        quotient: dividend / divisor,
        remainder: dividend % divisor,
    })
}

fn small_primes() -> &'static [u64] {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    CACHE.get_or_init(|| sieve(SMALL_PRIME_LIMIT))
}

fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let len = limit as usize + 1;
    let mut composite = vec![false; len];
    let mut primes = Vec::new();
    for i in 2..len {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j < len {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Candidate trial divisors in increasing order: every cached prime, then
/// numbers of the form 6k±1. Every prime appears; some composites do too
/// past the cache, which is harmless for trial division.
fn trial_divisors() -> impl Iterator<Item = u64> {
    let wheel = (SMALL_PRIME_LIMIT / 6 + 1..).flat_map(|k| [6 * k - 1, 6 * k + 1]);
    small_primes().iter().copied().chain(wheel)
}

#[inline]
fn square_exceeds(d: u64, n: u64) -> bool {
    (d as u128) * (d as u128) > n as u128
}

/// `true` iff `n >= 2` and no `d` with `1 < d < n` divides `n`. 0 and 1 are not prime.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in trial_divisors() {
        if square_exceeds(d, n) {
            return true;
        }
        if n.is_multiple_of(d) {
            return false;
        }
    }
    unreachable!("trial divisors are unbounded")
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> Result<u64> {
    let mut candidate = n;
    loop {
        candidate = candidate
            .checked_add(1)
            .filter(|&c| c <= MAX_SUPPORTED)
            .ok_or_else(|| {
                Error::Range(format!("no prime above {n} within the supported range"))
            })?;
        if is_prime(candidate) {
            return Ok(candidate);
        }
    }
}

/// All primes `<= limit` in increasing order.
pub fn primes_up_to(limit: u64) -> Result<Vec<u64>> {
    if limit > SIEVE_BUDGET {
        return Err(Error::Resource(format!(
            "sieve limit {limit} exceeds the budget {SIEVE_BUDGET}"
        )));
    }
    if limit < SMALL_PRIME_LIMIT {
        let cached = small_primes();
        let end = cached.partition_point(|&p| p <= limit);
        return Ok(cached[..end].to_vec());
    }
    Ok(sieve(limit))
}

/// A positive integer as strictly increasing primes with positive exponents.
/// The empty factorization represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u32)>", into = "Vec<(u64, u32)>")]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking the
    /// canonical-form invariants.
    pub fn from_pairs(factors: Vec<(u64, u32)>) -> Result<Self> {
        for window in factors.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(Error::Domain("primes must be strictly increasing".into()));
            }
        }
        for &(p, e) in &factors {
            if e == 0 {
                return Err(Error::Domain(format!("exponent of {p} must be positive")));
            }
            if !is_prime(p) {
                return Err(Error::Domain(format!("{p} is not prime")));
            }
        }
        let f = Self { factors };
        f.value()?;
        Ok(f)
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` (zero when `p` is absent).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map_or(0, |i| self.factors[i].1)
    }

    /// Distinct primes, increasing.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Primes repeated according to their exponents, non-decreasing.
    pub fn to_multiset(&self) -> Vec<u64> {
        self.factors
            .iter()
            .flat_map(|&(p, e)| std::iter::repeat_n(p, e as usize))
            .collect()
    }

    /// Reconstructs the represented integer.
    pub fn value(&self) -> Result<u64> {
        let mut acc: u64 = 1;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc = acc
                    .checked_mul(p)
                    .filter(|&v| v <= MAX_SUPPORTED)
                    .ok_or_else(|| Error::Range("factorization value overflows".into()))?;
            }
        }
        Ok(acc)
    }
}

impl TryFrom<Vec<(u64, u32)>> for Factorization {
    type Error = Error;

    fn try_from(factors: Vec<(u64, u32)>) -> Result<Self> {
        Self::from_pairs(factors)
    }
}

impl From<Factorization> for Vec<(u64, u32)> {
    fn from(f: Factorization) -> Self {
        f.factors
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

/// Factors `n` by trial division up to the square root of the remaining cofactor.
pub fn factor(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("0 has no prime factorization".into()));
    }
    check_range("n", n)?;
    let mut rest = n;
    let mut factors = Vec::new();
    for d in trial_divisors() {
        if square_exceeds(d, rest) {
            break;
        }
        let mut e = 0;
        while rest.is_multiple_of(d) {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

/// Outcome of the exhaustive factorization search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationSearch {
    pub n: u64,
    /// Distinct multisets of primes (each sorted) whose product is `n`.
    pub multisets: Vec<Vec<u64>>,
    /// Number of ordered prime sequences the search walked to completion.
    pub orderings_explored: u64,
}

impl FactorizationSearch {
    pub fn is_unique(&self) -> bool {
        self.multisets.len() == 1
    }
}

/// Every multiset of primes whose product is `n`, found by peeling off each
/// prime divisor in every possible order.
///
/// Prime divisors are located by scanning for divisors, never through
/// [`factor`], and all orderings are visited before collapsing to
/// multisets, so a second factorization would show up if one existed.
pub fn enumerate_prime_factorizations(n: u64, bound: u64) -> Result<FactorizationSearch> {
    let bound = bound.min(MAX_SUPPORTED);
    if n < 2 || n > bound {
        return Err(Error::Range(format!(
            "n = {n} is outside the enumeration range [2, {bound}]"
        )));
    }
    let mut sequences = Vec::new();
    let mut path = Vec::new();
    walk_orderings(n, &mut path, &mut sequences);

    let orderings_explored = sequences.len() as u64;
    let multisets: BTreeSet<Vec<u64>> = sequences
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect();
    Ok(FactorizationSearch {
        n,
        multisets: multisets.into_iter().collect(),
        orderings_explored,
    })
}

fn walk_orderings(m: u64, path: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if m == 1 {
        out.push(path.clone());
        return;
    }
    for p in prime_divisors_by_scan(m) {
        path.push(p);
        walk_orderings(m / p, path, out);
        path.pop();
    }
}

/// Prime divisors of `m >= 2`, found by pairing each divisor `d <= sqrt(m)`
/// with its cofactor.
fn prime_divisors_by_scan(m: u64) -> Vec<u64> {
    let mut found = BTreeSet::new();
    let mut d = 2;
    while !square_exceeds(d, m) {
        if m.is_multiple_of(d) {
            if is_prime(d) {
                found.insert(d);
            }
            let co = m / d;
            if is_prime(co) {
                found.insert(co);
            }
        }
        d += 1;
    }
    if is_prime(m) {
        found.insert(m);
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_examples() {
        assert_eq!(
            div_rem(17, 5).unwrap(),
            DivRem {
                quotient: 3,
                remainder: 2
            }
        );
        assert_eq!(
            div_rem(10, 5).unwrap(),
            DivRem {
                quotient: 2,
                remainder: 0
            }
        );
        assert_eq!(
            div_rem(3, 7).unwrap(),
            DivRem {
                quotient: 0,
                remainder: 3
            }
        );
        assert!(matches!(div_rem(3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(17489));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(17484));
        assert!(is_prime(2));
        assert!(is_prime(65537));
        assert!(!is_prime(65537 * 65539));
        // largest prime below 2^63
        assert!(is_prime(9_223_372_036_854_775_783));
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime(17483).unwrap(), 17489);
        assert_eq!(next_prime(1).unwrap(), 2);
        assert_eq!(next_prime(0).unwrap(), 2);
        assert_eq!(next_prime(13).unwrap(), 17);
    }

    #[test]
    fn next_prime_reports_range_error() {
        assert!(matches!(
            next_prime(9_223_372_036_854_775_783),
            Err(Error::Range(_))
        ));
        assert!(matches!(next_prime(u64::MAX), Err(Error::Range(_))));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(6).unwrap().pairs(), &[(2, 1), (3, 1)]);
        assert!(factor(1).unwrap().is_one());
        assert_eq!(factor(17489).unwrap().pairs(), &[(17489, 1)]);
        assert_eq!(factor(6).unwrap().to_string(), "2^1 * 3^1");
        assert_eq!(factor(1).unwrap().to_string(), "1");
        assert!(matches!(factor(0), Err(Error::Domain(_))));
        assert!(matches!(factor(MAX_SUPPORTED + 1), Err(Error::Range(_))));
    }

    #[test]
    fn factor_handles_cofactors_past_the_cache() {
        let n = 65_537 * 4_294_967_291;
        let f = factor(n).unwrap();
        assert_eq!(f.pairs(), &[(65_537, 1), (4_294_967_291, 1)]);
        assert_eq!(f.value().unwrap(), n);
        assert_eq!(
            factor(MAX_SUPPORTED).unwrap().value().unwrap(),
            MAX_SUPPORTED
        );
    }

    #[test]
    fn factorization_rejects_non_canonical_pairs() {
        assert!(Factorization::from_pairs(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(4, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 0)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 64)]).is_err());
        assert_eq!(
            Factorization::from_pairs(vec![(2, 3)])
                .unwrap()
                .value()
                .unwrap(),
            8
        );
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_prime_factorizations(6, 100).unwrap().multisets,
            vec![vec![2, 3]]
        );
        assert_eq!(
            enumerate_prime_factorizations(2, 100).unwrap().multisets,
            vec![vec![2]]
        );
        let s = enumerate_prime_factorizations(360, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(s.multisets, vec![vec![2, 2, 2, 3, 3, 5]]);
        // 6! / (3! 2! 1!) distinct orderings of {2,2,2,3,3,5}
        assert_eq!(s.orderings_explored, 60);
    }

    #[test]
    fn enumeration_rejects_out_of_range() {
        assert!(matches!(
            enumerate_prime_factorizations(1, 100),
            Err(Error::Range(_))
        ));
        assert!(matches!(
            enumerate_prime_factorizations(101, 100),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn primes_up_to_examples() {
        assert_eq!(primes_up_to(10).unwrap(), vec![2, 3, 5, 7]);
        assert!(primes_up_to(1).unwrap().is_empty());
        assert!(primes_up_to(0).unwrap().is_empty());
        assert_eq!(*primes_up_to(17490).unwrap().last().unwrap(), 17489);
        assert_eq!(primes_up_to(100_000).unwrap().len(), 9592);
        assert!(matches!(
            primes_up_to(SIEVE_BUDGET + 1),
            Err(Error::Resource(_))
        ));
    }
}
