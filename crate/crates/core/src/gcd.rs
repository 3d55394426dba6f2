//! Greatest common divisors computed three independent ways, Bézout
//! certificates built two ways, and Euclid's lemma as a decision procedure.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integer::{check_range, div_rem, factor, is_prime, Factorization};

/// Default limit on each argument of [`bezout_by_search`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000;

/// Default limit on each argument of [`verify_common_divisors_divide_gcd`].
pub const DEFAULT_COMMON_DIVISOR_BUDGET: u64 = 100_000;

pub const OPERATIONS: &[&str] = &[
    "gcd_euclid",
    "gcd_by_factorization",
    "bezout_by_search",
    "bezout_extended",
    "euclid_lemma",
    "verify_common_divisors_divide_gcd",
    "prime_divides_factor_via_bezout",
];

fn check_positive(a: u64, b: u64) -> Result<()> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("arguments must be positive".into()));
    }
    check_range("a", a)?;
    check_range("b", b)
}

/// Witness `x*a + y*b = g` with `g = gcd(a, b)`.
///
/// Certificates are kept in canonical form: `1 <= x <= b/g`. When `b/g > 1`
/// this is the same as `0 <= x < b/g`; when `b | a` it picks `x = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutCertificate {
    a: u64,
    b: u64,
    g: u64,
    x: i64,
    y: i64,
}

impl BezoutCertificate {
    /// Rewrites any witness of `x*a + y*b = g` into canonical form.
    fn canonical(a: u64, b: u64, g: u64, x: i128) -> Self {
        let period = (b / g) as i128;
        let x = (x - 1).rem_euclid(period) + 1;
        let y = (g as i128 - x * a as i128) / b as i128;
        Self {
            a,
            b,
            g,
            x: x as i64,
            y: y as i64,
        }
    }

    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    pub fn g(&self) -> u64 {
        self.g
    }
    pub fn x(&self) -> i64 {
        self.x
    }
    pub fn y(&self) -> i64 {
        self.y
    }

    /// Checks the identity and that `g` divides both arguments.
    pub fn verify(&self) -> bool {
        let lhs = self.x as i128 * self.a as i128 + self.y as i128 * self.b as i128;
        self.g > 0
            && lhs == self.g as i128
            && self.a.is_multiple_of(self.g)
            && self.b.is_multiple_of(self.g)
    }
}

/// Euclid's algorithm by repeated division with remainder.
pub fn gcd_euclid(a: u64, b: u64) -> Result<u64> {
    check_positive(a, b)?;
    let (mut r0, mut r1) = (a, b);
    while r1 != 0 {
        let step = div_rem(r0, r1)?;
        (r0, r1) = (r1, step.remainder);
    }
    Ok(r0)
}

/// Product of `p^min(r, s)` over the primes of `a = prod p^r` and `b = prod p^s`.
pub fn gcd_by_factorization(a: u64, b: u64) -> Result<u64> {
    check_positive(a, b)?;
    let (fa, fb) = (factor(a)?, factor(b)?);
    let mut shared = BTreeMap::new();
    for p in fa.primes().chain(fb.primes()) {
        let t = fa.exponent_of(p).min(fb.exponent_of(p));
        if t > 0 {
            shared.insert(p, t);
        }
    }
    Factorization::from_pairs(shared.into_iter().collect())?.value()
}

/// Smallest positive value of `x*a + y*b`, found by searching the window
/// `x in [-b, b]`, `y in [-a, a]`.
///
/// For each `x` the best `y` is found by removing multiples of `b` from
/// `x*a` until the value lands in `1..=b`; the minimum over all `x` is kept,
/// with the first `x >= 1` reaching it winning ties.
pub fn bezout_by_search(a: u64, b: u64, budget: u64) -> Result<BezoutCertificate> {
    check_positive(a, b)?;
    if a > budget || b > budget {
        return Err(Error::Range(format!(
            "bezout search needs a, b <= {budget}, got ({a}, {b})"
        )));
    }
    let (ai, bi) = (a as i128, b as i128);
    let xs = (1..=bi).chain(std::iter::once(0)).chain((-bi..0).rev());

    let mut best: Option<(i128, i128, i128)> = None;
    for x in xs {
        let xa = x * ai;
        let value = (xa - 1).rem_euclid(bi) + 1;
        let y = (value - xa) / bi;
        if y.abs() > ai {
            continue;
        }
        if best.is_none_or(|(v, _, _)| value < v) {
            best = Some((value, x, y));
        }
    }
    let (g, x, y) = best.expect("x = 1, y = 0 is always in the window");
    Ok(BezoutCertificate {
        a,
        b,
        g: g as u64,
        x: x as i64,
        y: y as i64,
    })
}

/// Extended Euclidean algorithm, normalized to the canonical certificate.
pub fn bezout_extended(a: u64, b: u64) -> Result<BezoutCertificate> {
    check_positive(a, b)?;
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1): (i128, i128) = (1, 0);
    while r1 != 0 {
        let step = div_rem(r0, r1)?;
        (r0, r1) = (r1, step.remainder);
        (s0, s1) = (s1, s0 - step.quotient as i128 * s1);
    }
    Ok(BezoutCertificate::canonical(a, b, r0, s0))
}

/// Side of the product that a prime divides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    DividesA,
    DividesB,
    DividesBoth,
}

impl Verdict {
    fn from_flags(divides_a: bool, divides_b: bool) -> Option<Self> {
        match (divides_a, divides_b) {
            (true, true) => Some(Self::DividesBoth),
            (true, false) => Some(Self::DividesA),
            (false, true) => Some(Self::DividesB),
            (false, false) => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::DividesA => "divides_a",
            Self::DividesB => "divides_b",
            Self::DividesBoth => "divides_both",
        }
    }
}

fn check_lemma_inputs(p: u64, a: u64, b: u64) -> Result<()> {
    check_positive(a, b)?;
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    Ok(())
}

fn not_dividing(p: u64, a: u64, b: u64) -> Error {
    Error::Precondition(format!("{p} does not divide {a}*{b}"))
}

/// Decides which factor a prime dividing `a*b` divides, by descent.
///
/// Both factors are first reduced modulo `p`. A zero residue settles the
/// verdict. Otherwise both residues lie in `1..p`, every prime factor of
/// their product is smaller than `p`, the lemma is applied at each of those
/// smaller primes, and `p` is seen to be absent from the product's
/// factorization, so `p` cannot divide `a*b`.
pub fn euclid_lemma(p: u64, a: u64, b: u64) -> Result<Verdict> {
    check_lemma_inputs(p, a, b)?;
    descend(p, a, b)
}

fn descend(p: u64, a: u64, b: u64) -> Result<Verdict> {
    let ra = div_rem(a, p)?.remainder;
    let rb = div_rem(b, p)?.remainder;
    if let Some(v) = Verdict::from_flags(ra == 0, rb == 0) {
        return Ok(v);
    }

    let (fa, fb) = (factor(ra)?, factor(rb)?);
    for q in fa.primes().chain(fb.primes()) {
        debug_assert!(q < p);
        // q | ra*rb by construction; the lemma at the smaller prime must resolve it.
        descend(q, ra, rb)?;
    }
    debug_assert!(fa.exponent_of(p) + fb.exponent_of(p) == 0);
    Err(not_dividing(p, a, b))
}

/// Same contract as [`euclid_lemma`], argued through Bézout's identity:
/// if `p` does not divide `a` then `x*p + y*a = 1`, so
/// `b = x*p*b + y*a*b` is a sum of two multiples of `p`.
pub fn prime_divides_factor_via_bezout(p: u64, a: u64, b: u64) -> Result<Verdict> {
    check_lemma_inputs(p, a, b)?;
    let ab = a as u128 * b as u128;
    if !ab.is_multiple_of(p as u128) {
        return Err(not_dividing(p, a, b));
    }
    if a.is_multiple_of(p) {
        return Ok(Verdict::from_flags(true, b.is_multiple_of(p)).unwrap());
    }

    let cert = bezout_extended(p, a)?;
    debug_assert_eq!(cert.g(), 1);
    let (pb, ab) = (BigInt::from(p), BigInt::from(ab));
    let left = BigInt::from(cert.x()) * &pb * BigInt::from(b);
    let right = BigInt::from(cert.y()) * &ab;
    let zero = BigInt::from(0);
    debug_assert!(&left % &pb == zero && &right % &pb == zero);
    debug_assert_eq!(&left + &right, BigInt::from(b));
    Ok(Verdict::DividesB)
}

/// All three gcd computations side by side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdComparison {
    pub a: u64,
    pub b: u64,
    pub euclid: u64,
    pub by_factorization: u64,
    pub by_minimal_combination: u64,
}

impl GcdComparison {
    pub fn agree(&self) -> bool {
        self.euclid == self.by_factorization && self.euclid == self.by_minimal_combination
    }
}

pub fn compare_gcds(a: u64, b: u64, search_budget: u64) -> Result<GcdComparison> {
    Ok(GcdComparison {
        a,
        b,
        euclid: gcd_euclid(a, b)?,
        by_factorization: gcd_by_factorization(a, b)?,
        by_minimal_combination: bezout_by_search(a, b, search_budget)?.g(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonDivisorReport {
    pub a: u64,
    pub b: u64,
    pub gcd: u64,
    pub common_divisors: Vec<u64>,
    /// Common divisors that fail to divide the gcd; empty for the integers.
    pub counterexamples: Vec<u64>,
    pub passed: bool,
}

/// Lists every `k` with `k | a` and `k | b` and checks that each divides `gcd(a, b)`.
pub fn verify_common_divisors_divide_gcd(
    a: u64,
    b: u64,
    budget: u64,
) -> Result<CommonDivisorReport> {
    check_positive(a, b)?;
    if a > budget || b > budget {
        return Err(Error::Range(format!(
            "common-divisor scan needs a, b <= {budget}, got ({a}, {b})"
        )));
    }
    let gcd = gcd_euclid(a, b)?;
    let common_divisors: Vec<u64> = (1..=a.min(b))
        .filter(|k| a.is_multiple_of(*k) && b.is_multiple_of(*k))
        .collect();
    let counterexamples: Vec<u64> = common_divisors
        .iter()
        .copied()
        .filter(|k| gcd % k != 0)
        .collect();
    Ok(CommonDivisorReport {
        a,
        b,
        gcd,
        passed: counterexamples.is_empty(),
        common_divisors,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_gcd(a: u64, b: u64) -> u64 {
        (1..=a.min(b))
            .rev()
            .find(|d| a.is_multiple_of(*d) && b.is_multiple_of(*d))
            .unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(brute_gcd(6, 4), 2);
        assert_eq!(gcd_euclid(6, 4).unwrap(), 2);
        assert_eq!(gcd_euclid(7, 7).unwrap(), 7);
        assert_eq!(gcd_euclid(1, 99).unwrap(), 1);
        assert!(matches!(gcd_euclid(0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn gcd_by_factorization_examples() {
        assert_eq!(gcd_by_factorization(12, 18).unwrap(), 6);
        assert_eq!(gcd_by_factorization(8, 1).unwrap(), 1);
        assert_eq!(gcd_by_factorization(17489, 6).unwrap(), 1);
    }

    #[test]
    fn search_examples() {
        let c = bezout_by_search(3, 5, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!((c.g(), c.x(), c.y()), (1, 2, -1));
        assert!(c.verify());
        assert_eq!(
            bezout_by_search(4, 4, DEFAULT_SEARCH_BUDGET).unwrap().g(),
            4
        );
        assert_eq!(
            bezout_by_search(6, 4, DEFAULT_SEARCH_BUDGET).unwrap().g(),
            2
        );
        assert!(matches!(
            bezout_by_search(10_001, 4, DEFAULT_SEARCH_BUDGET),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn extended_examples() {
        let c = bezout_extended(3, 5).unwrap();
        assert_eq!((c.x(), c.y(), c.g()), (2, -1, 1));
        let c = bezout_extended(5, 5).unwrap();
        assert_eq!((c.x(), c.y(), c.g()), (1, 0, 5));
        let c = bezout_extended(10, 4).unwrap();
        assert_eq!((c.x(), c.y(), c.g()), (1, -2, 2));
    }

    #[test]
    fn extended_handles_the_top_of_the_range() {
        let big = crate::integer::MAX_SUPPORTED;
        let c = bezout_extended(big, big - 1).unwrap();
        assert_eq!(c.g(), 1);
        assert!(c.verify());
        let c = bezout_extended(1, big).unwrap();
        assert!(c.verify());
    }

    #[test]
    fn lemma_examples() {
        for lemma in [euclid_lemma, prime_divides_factor_via_bezout] {
            assert_eq!(lemma(5, 10, 3).unwrap(), Verdict::DividesA);
            assert_eq!(lemma(7, 14, 21).unwrap(), Verdict::DividesBoth);
            assert_eq!(lemma(3, 4, 15).unwrap(), Verdict::DividesB);
            assert_eq!(lemma(2, 6, 10).unwrap(), Verdict::DividesBoth);
            assert!(matches!(lemma(4, 2, 2), Err(Error::Domain(_))));
            assert!(matches!(lemma(5, 2, 3), Err(Error::Precondition(_))));
            assert!(matches!(lemma(5, 0, 3), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn descent_rejects_large_non_dividing_products() {
        assert!(matches!(
            euclid_lemma(101, 9_998, 12_345),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            euclid_lemma(101, 101 * 7 + 3, 202).unwrap(),
            Verdict::DividesB
        );
    }

    #[test]
    fn common_divisor_examples() {
        let r = verify_common_divisors_divide_gcd(12, 18, DEFAULT_COMMON_DIVISOR_BUDGET).unwrap();
        assert_eq!(r.common_divisors, vec![1, 2, 3, 6]);
        assert_eq!(r.gcd, 6);
        assert!(r.passed);
        let r = verify_common_divisors_divide_gcd(1, 1, DEFAULT_COMMON_DIVISOR_BUDGET).unwrap();
        assert_eq!(r.common_divisors, vec![1]);
        let r = verify_common_divisors_divide_gcd(30, 42, DEFAULT_COMMON_DIVISOR_BUDGET).unwrap();
        assert_eq!(r.common_divisors, vec![1, 2, 3, 6]);
        assert!(r.passed);
        assert!(matches!(
            verify_common_divisors_divide_gcd(10, 11, 10),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn comparison_record_agrees() {
        let c = compare_gcds(12, 18, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(c.agree());
        assert_eq!(c.euclid, 6);
    }
}
