//! Arithmetic in Z[√-5], enough to exhibit an element with two essentially
//! different factorizations into irreducibles.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default limit on the norm accepted by [`factorizations`].
pub const DEFAULT_NORM_BUDGET: u64 = 10_000;

pub const OPERATIONS: &[&str] = &[
    "q_add",
    "q_mul",
    "q_neg",
    "q_norm",
    "q_divides",
    "q_is_irreducible",
    "q_enumerate_factorizations",
];

/// `re + im·√-5`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct QuadInt {
    pub re: i64,
    pub im: i64,
}

fn overflow() -> Error {
    Error::Range("Z[√-5] arithmetic overflowed".into())
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| overflow())
}

impl QuadInt {
    pub const ZERO: Self = Self { re: 0, im: 0 };
    pub const ONE: Self = Self { re: 1, im: 0 };

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn is_unit(&self) -> bool {
        self.im == 0 && self.re.abs() == 1
    }

    pub fn conj(&self) -> Result<Self> {
        Ok(Self::new(
            self.re,
            self.im.checked_neg().ok_or_else(overflow)?,
        ))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(
            self.re.checked_add(other.re).ok_or_else(overflow)?,
            self.im.checked_add(other.im).ok_or_else(overflow)?,
        ))
    }

    pub fn checked_neg(&self) -> Result<Self> {
        Ok(Self::new(
            self.re.checked_neg().ok_or_else(overflow)?,
            self.im.checked_neg().ok_or_else(overflow)?,
        ))
    }

    /// `(a + b√-5)(c + d√-5) = (ac - 5bd) + (ad + bc)√-5`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, d) = (other.re as i128, other.im as i128);
        Ok(Self::new(
            narrow(a * c - 5 * b * d)?,
            narrow(a * d + b * c)?,
        ))
    }

    /// `re² + 5·im²`.
    pub fn norm(&self) -> Result<u64> {
        let (a, b) = (self.re as i128, self.im as i128);
        u64::try_from(a * a + 5 * b * b).map_err(|_| overflow())
    }

    /// The quotient `self / d` when it lies in Z[√-5].
    ///
    /// Computes `self · conj(d)` and checks that both components are
    /// divisible by `norm(d)`.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>> {
        if d.is_zero() {
            return Err(Error::Domain("division by zero in Z[√-5]".into()));
        }
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, e) = (d.re as i128, d.im as i128);
        let n = c * c + 5 * e * e;
        let re = a * c + 5 * b * e;
        let im = b * c - a * e;
        if re % n != 0 || im % n != 0 {
            return Ok(None);
        }
        Ok(Some(Self::new(narrow(re / n)?, narrow(im / n)?)))
    }

    /// Whether `d` divides `self`.
    pub fn is_divisible_by(&self, d: &Self) -> Result<bool> {
        Ok(self.exact_div(d)?.is_some())
    }

    /// Representative of `{q, -q}` with `re > 0`, or `re == 0` and `im > 0`.
    pub fn canonical_associate(&self) -> Result<Self> {
        if self.re > 0 || (self.re == 0 && self.im >= 0) {
            Ok(*self)
        } else {
            self.checked_neg()
        }
    }

    fn is_canonical(&self) -> bool {
        self.re > 0 || (self.re == 0 && self.im > 0)
    }

    /// No factorization into two non-units exists.
    ///
    /// Checks every element whose norm is a proper divisor of `norm(self)`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.norm()?;
        if n <= 1 {
            return Err(Error::Domain(format!(
                "{self} is zero or a unit; irreducibility is undefined"
            )));
        }
        for k in proper_divisors(n) {
            for r in elements_of_norm(k) {
                if self.is_divisible_by(&r)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Divisors `k` of `n` with `1 < k < n`.
fn proper_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Every element with the given norm, in canonical associate form.
pub fn elements_of_norm(k: u64) -> Vec<QuadInt> {
    let mut out = Vec::new();
    let mut b: u64 = 0;
    while 5 * b * b <= k {
        let rest = k - 5 * b * b;
        let a = rest.isqrt();
        if a * a == rest {
            for (re, im) in [(a as i64, b as i64), (a as i64, -(b as i64))] {
                let q = QuadInt::new(re, im);
                if q.is_canonical() && !out.contains(&q) {
                    out.push(q);
                }
            }
        }
        b += 1;
    }
    out.sort();
    out
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{}√-5", coefficient(im)),
            (re, im) if im < 0 => write!(f, "{re}-{}√-5", coefficient(-im)),
            (re, im) => write!(f, "{re}+{}√-5", coefficient(im)),
        }
    }
}

fn coefficient(c: i64) -> String {
    match c {
        1 => String::new(),
        -1 => "-".into(),
        c => c.to_string(),
    }
}

impl QuadInt {
    /// The `a,b` text form used on the command line.
    pub fn to_pair_string(&self) -> String {
        format!("{},{}", self.re, self.im)
    }
}

impl FromStr for QuadInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (re, im) = s
            .split_once(',')
            .ok_or_else(|| Error::Domain(format!("expected `a,b`, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Domain(format!("bad integer `{t}`: {e}")))
        };
        Ok(Self::new(parse(re)?, parse(im)?))
    }
}

/// `unit · ∏ factors`, with each factor irreducible and canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RingFactorization {
    pub unit: QuadInt,
    /// Sorted, so equal multisets compare equal.
    pub factors: Vec<QuadInt>,
}

impl RingFactorization {
    pub fn product(&self) -> Result<QuadInt> {
        self.factors
            .iter()
            .try_fold(self.unit, |acc, f| acc.checked_mul(f))
    }
}

impl fmt::Display for RingFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .factors
            .iter()
            .map(|q| format!("({q})"))
            .collect::<Vec<_>>()
            .join(" * ");
        match (self.unit.re, body.is_empty()) {
            (_, true) => write!(f, "{}", self.unit),
            (1, false) => f.write_str(&body),
            (_, false) => write!(f, "-{body}"),
        }
    }
}

/// All factorizations of `q` into irreducibles, up to order and units.
pub fn factorizations(q: QuadInt, budget: u64) -> Result<Vec<RingFactorization>> {
    if q.is_zero() {
        return Err(Error::Domain("0 has no factorization".into()));
    }
    let n = q.norm()?;
    if n > budget {
        return Err(Error::Range(format!(
            "norm {n} exceeds the enumeration budget {budget}"
        )));
    }
    let mut out = Vec::new();
    for factors in factor_multisets(q)? {
        let product = factors
            .iter()
            .try_fold(QuadInt::ONE, |acc, f| acc.checked_mul(f))?;
        let unit = q
            .exact_div(&product)?
            .filter(QuadInt::is_unit)
            .expect("product of irreducible divisors recovers q up to a unit");
        out.push(RingFactorization { unit, factors });
    }
    out.sort();
    Ok(out)
}

fn factor_multisets(q: QuadInt) -> Result<BTreeSet<Vec<QuadInt>>> {
    let n = q.norm()?;
    let mut out = BTreeSet::new();
    if n == 1 {
        out.insert(Vec::new());
        return Ok(out);
    }
    let mut norms = proper_divisors(n);
    norms.push(n);
    for k in norms {
        for r in elements_of_norm(k) {
            let Some(rest) = q.exact_div(&r)? else {
                continue;
            };
            debug_assert_eq!(n % k, 0);
            if !r.is_irreducible()? {
                continue;
            }
            for mut chain in factor_multisets(rest)? {
                chain.push(r);
                chain.sort();
                out.insert(chain);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: QuadInt = QuadInt::new(2, 0);
    const THREE: QuadInt = QuadInt::new(3, 0);
    const ONE_PLUS: QuadInt = QuadInt::new(1, 1);
    const ONE_MINUS: QuadInt = QuadInt::new(1, -1);

    #[test]
    fn product_of_conjugates_is_six() {
        assert_eq!(
            ONE_PLUS.checked_mul(&ONE_MINUS).unwrap(),
            QuadInt::new(6, 0)
        );
        assert_eq!(ONE_PLUS.norm().unwrap(), 6);
        let q = QuadInt::new(-7, 4);
        assert_eq!(q.checked_mul(&QuadInt::ONE).unwrap(), q);
    }

    #[test]
    fn divisibility_examples() {
        assert!(!ONE_PLUS.is_divisible_by(&TWO).unwrap());
        assert!(!ONE_MINUS.is_divisible_by(&THREE).unwrap());
        assert!(QuadInt::new(6, 0).is_divisible_by(&ONE_PLUS).unwrap());
        assert!(matches!(
            TWO.is_divisible_by(&QuadInt::ZERO),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(TWO.is_irreducible().unwrap());
        assert!(ONE_PLUS.is_irreducible().unwrap());
        assert!(!QuadInt::new(6, 0).is_irreducible().unwrap());
        assert!(matches!(
            QuadInt::ONE.is_irreducible(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            QuadInt::ZERO.is_irreducible(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn factorizations_of_six_and_nine() {
        let six = factorizations(QuadInt::new(6, 0), DEFAULT_NORM_BUDGET).unwrap();
        let sets: Vec<_> = six.iter().map(|f| f.factors.clone()).collect();
        assert_eq!(sets, vec![vec![ONE_MINUS, ONE_PLUS], vec![TWO, THREE]]);

        let nine = factorizations(QuadInt::new(9, 0), DEFAULT_NORM_BUDGET).unwrap();
        let sets: Vec<_> = nine.iter().map(|f| f.factors.clone()).collect();
        assert_eq!(
            sets,
            vec![
                vec![QuadInt::new(2, -1), QuadInt::new(2, 1)],
                vec![THREE, THREE]
            ]
        );

        let two = factorizations(TWO, DEFAULT_NORM_BUDGET).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].factors, vec![TWO]);
    }

    #[test]
    fn factorization_tracks_the_unit() {
        let f = factorizations(QuadInt::new(-2, 0), DEFAULT_NORM_BUDGET).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].unit, QuadInt::new(-1, 0));
        assert_eq!(f[0].product().unwrap(), QuadInt::new(-2, 0));
        assert!(matches!(
            factorizations(QuadInt::new(200, 0), DEFAULT_NORM_BUDGET),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn units_are_plus_minus_one() {
        for re in -20..=20 {
            for im in -20..=20 {
                let q = QuadInt::new(re, im);
                assert_eq!(q.norm().unwrap() == 1, q.is_unit());
            }
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!("1,-1".parse::<QuadInt>().unwrap(), ONE_MINUS);
        assert_eq!(ONE_MINUS.to_string(), "1-√-5");
        assert_eq!(QuadInt::new(0, -2).to_string(), "-2√-5");
        assert_eq!(QuadInt::new(2, 3).to_string(), "2+3√-5");
        assert!("3".parse::<QuadInt>().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = QuadInt::new(i64::MAX, 0);
        assert!(matches!(big.checked_mul(&big), Err(Error::Range(_))));
        assert!(matches!(
            QuadInt::new(i64::MIN, 0).checked_neg(),
            Err(Error::Range(_))
        ));
    }
}
