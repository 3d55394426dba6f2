#![allow(dead_code)]

use factoria::trig::TrigPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let n: i64 = rng.gen_range(-6..=6);
    let d: i64 = rng.gen_range(1..=4);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Random polynomial of degree at most `max_degree`, top pair forced nonzero
/// half the time so that full-degree cases are common.
pub fn random_trig<R: Rng>(rng: &mut R, max_degree: usize) -> TrigPoly {
    let degree = rng.gen_range(0..=max_degree);
    let mut terms: Vec<_> = (0..degree)
        .map(|_| (small_rational(rng), small_rational(rng)))
        .collect();
    if let Some(top) = terms.last_mut() {
        if rng.gen_bool(0.5) {
            top.0 = BigRational::from_integer(BigInt::from(rng.gen_range(1..=3)));
        }
    }
    TrigPoly::new(small_rational(rng), terms)
}

/// Largest `d` dividing both, by scanning downward.
pub fn brute_gcd(a: u64, b: u64) -> u64 {
    (1..=a.min(b))
        .rev()
        .find(|d| a.is_multiple_of(*d) && b.is_multiple_of(*d))
        .unwrap()
}

/// ζ(2) from an independent 30-digit computation.
pub const ZETA_2: f64 = 1.644_934_066_848_226_4;
