//! Exact arithmetic on real trigonometric polynomials with rational
//! coefficients, and a divisibility test through the Laurent image
//! `z = e^{ix}`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const OPERATIONS: &[&str] = &[
    "t_add",
    "t_scale",
    "t_mul",
    "t_divides",
    "t_is_unit",
    "verify_trotter_witness",
];

/// Gaussian rational `re + i·im`.
pub type Gaussian = Complex<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

/// `a0 + Σ_{k=1..n} (a_k cos kx + b_k sin kx)` with the top pair nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrigPoly {
    a0: BigRational,
    /// `(a_k, b_k)` for `k = 1..=n`.
    terms: Vec<(BigRational, BigRational)>,
}

impl TrigPoly {
    pub fn new(a0: BigRational, terms: Vec<(BigRational, BigRational)>) -> Self {
        let mut p = Self { a0, terms };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self
            .terms
            .last()
            .is_some_and(|(a, b)| a.is_zero() && b.is_zero())
        {
            self.terms.pop();
        }
    }

    pub fn zero() -> Self {
        Self::constant(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self {
            a0: c,
            terms: Vec::new(),
        }
    }

    /// `cos(kx)` for `k >= 1`; `k = 0` gives the constant 1.
    pub fn cos(k: usize) -> Self {
        Self::monomial(k, rat(1), rat(0))
    }

    /// `sin(kx)` for `k >= 1`; `k = 0` gives zero.
    pub fn sin(k: usize) -> Self {
        Self::monomial(k, rat(0), rat(1))
    }

    fn monomial(k: usize, a: BigRational, b: BigRational) -> Self {
        if k == 0 {
            return Self::constant(a);
        }
        let mut terms = vec![(rat(0), rat(0)); k];
        terms[k - 1] = (a, b);
        Self::new(rat(0), terms)
    }

    pub fn degree(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.a0.is_zero()
    }

    /// Units of the ring are exactly the nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.terms.is_empty() && !self.a0.is_zero()
    }

    pub fn a0(&self) -> &BigRational {
        &self.a0
    }

    /// Cosine coefficient `a_k`; `a_0` for `k = 0`.
    pub fn cos_coeff(&self, k: usize) -> BigRational {
        match k {
            0 => self.a0.clone(),
            k => self
                .terms
                .get(k - 1)
                .map_or_else(BigRational::zero, |t| t.0.clone()),
        }
    }

    /// Sine coefficient `b_k`; zero for `k = 0`.
    pub fn sin_coeff(&self, k: usize) -> BigRational {
        match k {
            0 => BigRational::zero(),
            k => self
                .terms
                .get(k - 1)
                .map_or_else(BigRational::zero, |t| t.1.clone()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(
            &self.a0 * c,
            self.terms.iter().map(|(a, b)| (a * c, b * c)).collect(),
        )
    }

    /// Multiplication through the product-to-sum identities
    ///
    /// ```text
    /// cos jx cos kx = ½cos(j-k)x + ½cos(j+k)x
    /// sin jx sin kx = ½cos(j-k)x - ½cos(j+k)x
    /// sin jx cos kx = ½sin(j+k)x + ½sin(j-k)x
    /// ```
    ///
    /// with the constant term treated as the `k = 0` cosine.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = self.degree() + other.degree();
        let mut cos = vec![BigRational::zero(); n + 1];
        let mut sin = vec![BigRational::zero(); n + 1];
        let h = half();

        let mut add_cos = |k: i64, c: BigRational| cos[k.unsigned_abs() as usize] += c;
        for j in 0..=self.degree() {
            let (aj, bj) = (self.cos_coeff(j), self.sin_coeff(j));
            for k in 0..=other.degree() {
                let (ak, bk) = (other.cos_coeff(k), other.sin_coeff(k));
                let (ji, ki) = (j as i64, k as i64);
                if !aj.is_zero() && !ak.is_zero() {
                    let c = &aj * &ak * &h;
                    add_cos(ji - ki, c.clone());
                    add_cos(ji + ki, c);
                }
                if !bj.is_zero() && !bk.is_zero() {
                    let c = &bj * &bk * &h;
                    add_cos(ji - ki, c.clone());
                    add_cos(ji + ki, -c);
                }
            }
        }
        // sin(m x) with negative m flips sign
        let mut add_sin = |m: i64, c: BigRational| {
            if m < 0 {
                sin[m.unsigned_abs() as usize] -= c;
            } else {
                sin[m as usize] += c;
            }
        };
        for j in 0..=self.degree() {
            for k in 0..=other.degree() {
                let (ji, ki) = (j as i64, k as i64);
                // sin jx · cos kx
                let (bj, ak) = (self.sin_coeff(j), other.cos_coeff(k));
                if !bj.is_zero() && !ak.is_zero() {
                    let c = &bj * &ak * &h;
                    add_sin(ji + ki, c.clone());
                    add_sin(ji - ki, c);
                }
                // cos jx · sin kx
                let (aj, bk) = (self.cos_coeff(j), other.sin_coeff(k));
                if !aj.is_zero() && !bk.is_zero() {
                    let c = &aj * &bk * &h;
                    add_sin(ki + ji, c.clone());
                    add_sin(ki - ji, c);
                }
            }
        }
        let a0 = std::mem::take(&mut cos[0]);
        let terms = cos.into_iter().zip(sin).skip(1).collect();
        Self::new(a0, terms)
    }

    /// Multiplication by convolving the Laurent images.
    pub fn mul_via_laurent(&self, other: &Self) -> Self {
        self.to_laurent()
            .mul(&other.to_laurent())
            .to_trig()
            .expect("the product of conjugate-symmetric images is conjugate-symmetric")
    }

    /// `c_0 = a_0`, `c_k = (a_k - i·b_k)/2`, `c_{-k} = conj(c_k)`.
    pub fn to_laurent(&self) -> LaurentRep {
        let n = self.degree();
        let mut coeffs = vec![Gaussian::zero(); 2 * n + 1];
        coeffs[n] = Gaussian::new(self.a0.clone(), BigRational::zero());
        let h = half();
        for (k, (a, b)) in self.terms.iter().enumerate().map(|(i, t)| (i + 1, t)) {
            let ck = Gaussian::new(a * &h, -(b * &h));
            coeffs[n - k] = ck.conj();
            coeffs[n + k] = ck;
        }
        LaurentRep {
            low: -(n as i64),
            coeffs,
        }
    }

    /// Floating-point value at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        self.terms
            .iter()
            .enumerate()
            .fold(f(&self.a0), |acc, (i, (a, b))| {
                let k = (i + 1) as f64;
                acc + f(a) * (k * x).cos() + f(b) * (k * x).sin()
            })
    }

    /// Human-readable form such as `1/2 - 1/2cos(2x)`.
    pub fn pretty(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        let mut push = |c: &BigRational, label: String| {
            if c.is_zero() {
                return;
            }
            let mag = c.abs();
            let body = match (label.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => label,
                (false, false) => format!("{mag}{label}"),
            };
            parts.push((c.is_negative(), body));
        };
        push(&self.a0, String::new());
        for (i, (a, b)) in self.terms.iter().enumerate() {
            let k = i + 1;
            let arg = if k == 1 {
                "x".to_string()
            } else {
                format!("{k}x")
            };
            push(a, format!("cos({arg})"));
            push(b, format!("sin({arg})"));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    /// When `self` divides `g`, the quotient `h` with `self·h = g`.
    ///
    /// Both sides are mapped to Laurent polynomials in `z = e^{ix}`, the
    /// powers of `z` are stripped, and the remaining polynomials are divided
    /// exactly over the Gaussian rationals. `z` is a unit, so divisibility of
    /// the stripped polynomials is equivalent to divisibility in the ring.
    pub fn divides(&self, g: &Self) -> Result<Option<Self>> {
        if self.is_zero() {
            return Err(Error::Domain("the zero polynomial divides nothing".into()));
        }
        if g.is_zero() {
            return Ok(Some(Self::zero()));
        }
        let (f_low, f_poly) = self.to_laurent().strip_z_power();
        let (g_low, g_poly) = g.to_laurent().strip_z_power();
        let (quotient, remainder) = poly_div_rem(&g_poly, &f_poly);
        if !remainder.iter().all(Zero::is_zero) {
            return Ok(None);
        }
        let h = LaurentRep {
            low: g_low - f_low,
            coeffs: quotient,
        }
        .to_trig()
        .expect("exact quotients of conjugate-symmetric polynomials are conjugate-symmetric");
        assert_eq!(&self.mul(&h), g, "quotient failed re-verification");
        Ok(Some(h))
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;

    fn add(self, other: &TrigPoly) -> TrigPoly {
        let n = self.degree().max(other.degree());
        let terms = (1..=n)
            .map(|k| {
                (
                    self.cos_coeff(k) + other.cos_coeff(k),
                    self.sin_coeff(k) + other.sin_coeff(k),
                )
            })
            .collect();
        TrigPoly::new(&self.a0 + &other.a0, terms)
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;

    fn neg(self) -> TrigPoly {
        self.scale(&rat(-1))
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;

    fn sub(self, other: &TrigPoly) -> TrigPoly {
        self + &(-other)
    }
}

/// Laurent polynomial `Σ c_k z^k` for `k = low..low+len`.
///
/// Images of trigonometric polynomials are conjugate-symmetric:
/// `low = -n` and `c_{-k} = conj(c_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentRep {
    low: i64,
    coeffs: Vec<Gaussian>,
}

impl LaurentRep {
    pub fn coefficient(&self, k: i64) -> Gaussian {
        usize::try_from(k - self.low)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(Gaussian::zero)
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![Gaussian::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        Self {
            low: self.low + other.low,
            coeffs,
        }
    }

    pub fn is_conjugate_symmetric(&self) -> bool {
        let (lo, hi) = self.trimmed_span();
        if lo > hi {
            return true;
        }
        lo == -hi && (0..=hi).all(|k| self.coefficient(-k) == self.coefficient(k).conj())
    }

    /// Lowest and highest powers with nonzero coefficients; `lo > hi` when zero.
    fn trimmed_span(&self) -> (i64, i64) {
        let first = self.coeffs.iter().position(|c| !c.is_zero());
        let last = self.coeffs.iter().rposition(|c| !c.is_zero());
        match (first, last) {
            (Some(f), Some(l)) => (self.low + f as i64, self.low + l as i64),
            _ => (0, -1),
        }
    }

    /// Back to `a0 + Σ (a_k cos kx + b_k sin kx)`, using `a_k = 2·Re c_k`
    /// and `b_k = -2·Im c_k`. Fails unless conjugate-symmetric.
    pub fn to_trig(&self) -> Result<TrigPoly> {
        if !self.is_conjugate_symmetric() {
            return Err(Error::Domain(
                "Laurent polynomial is not the image of a real trigonometric polynomial".into(),
            ));
        }
        let (_, hi) = self.trimmed_span();
        let c0 = self.coefficient(0);
        let two = rat(2);
        let terms = (1..=hi.max(0))
            .map(|k| {
                let c = self.coefficient(k);
                (&c.re * &two, -(&c.im * &two))
            })
            .collect();
        Ok(TrigPoly::new(c0.re, terms))
    }

    /// `(m, p)` with `self = z^m · p(z)` and `p(0) != 0`; `p` in ascending order.
    fn strip_z_power(&self) -> (i64, Vec<Gaussian>) {
        let (lo, hi) = self.trimmed_span();
        let coeffs = (lo..=hi).map(|k| self.coefficient(k)).collect();
        (lo, coeffs)
    }
}

/// Long division of ascending-coefficient polynomials over the Gaussian
/// rationals. `den` must have a nonzero leading coefficient.
fn poly_div_rem(num: &[Gaussian], den: &[Gaussian]) -> (Vec<Gaussian>, Vec<Gaussian>) {
    let lead = den.last().expect("nonzero divisor");
    if num.len() < den.len() {
        return (vec![Gaussian::zero()], num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![Gaussian::zero(); num.len() - den.len() + 1];
    for shift in (0..quot.len()).rev() {
        let c = &rem[shift + den.len() - 1] / lead;
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= &c * d;
        }
        quot[shift] = c;
    }
    rem.truncate(den.len() - 1);
    (quot, rem)
}

/// Results of checking `sin²x = (1 - cos x)(1 + cos x)` and that `sin x`
/// divides neither factor on the right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrotterReport {
    pub product: String,
    pub squares_agree: bool,
    pub sin_does_not_divide_one_minus_cos: bool,
    pub sin_does_not_divide_one_plus_cos: bool,
    pub no_factor_is_unit: bool,
}

impl TrotterReport {
    pub fn all_pass(&self) -> bool {
        self.squares_agree
            && self.sin_does_not_divide_one_minus_cos
            && self.sin_does_not_divide_one_plus_cos
            && self.no_factor_is_unit
    }
}

pub fn verify_trotter_witness() -> TrotterReport {
    let sin = TrigPoly::sin(1);
    let one_minus_cos = &TrigPoly::one() - &TrigPoly::cos(1);
    let one_plus_cos = &TrigPoly::one() + &TrigPoly::cos(1);

    let left = sin.mul(&sin);
    let right = one_minus_cos.mul(&one_plus_cos);
    let divides = |g: &TrigPoly| sin.divides(g).expect("sin x is nonzero").is_some();
    TrotterReport {
        product: left.pretty(),
        squares_agree: left == right,
        sin_does_not_divide_one_minus_cos: !divides(&one_minus_cos),
        sin_does_not_divide_one_plus_cos: !divides(&one_plus_cos),
        no_factor_is_unit: [&sin, &one_minus_cos, &one_plus_cos]
            .iter()
            .all(|p| !p.is_unit()),
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |e: &dyn fmt::Display| Error::Domain(format!("bad rational `{s}`: {e}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|e| bad(&e))?;
            let d: BigInt = d.trim().parse().map_err(|e| bad(&e))?;
            if d.is_zero() {
                return Err(bad(&"zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|e| bad(&e))?)),
    }
}

/// Coefficient-list form `a0;a1,b1;a2,b2;...` with rationals written `p/q`.
impl FromStr for TrigPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut groups = s.split(';');
        let a0 = parse_rational(groups.next().unwrap_or_default())?;
        let terms = groups
            .map(|g| {
                let (a, b) = g
                    .split_once(',')
                    .ok_or_else(|| Error::Domain(format!("expected `a,b`, got `{g}`")))?;
                Ok((parse_rational(a)?, parse_rational(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(a0, terms))
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a0)?;
        for (a, b) in &self.terms {
            write!(f, ";{a},{b}")?;
        }
        Ok(())
    }
}

impl Serialize for TrigPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TrigPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TrigPoly {
        s.parse().unwrap()
    }

    #[test]
    fn sin_squared_is_half_minus_half_cos_2x() {
        let sin = TrigPoly::sin(1);
        let sq = sin.mul(&sin);
        assert_eq!(sq, p("1/2;0,0;-1/2,0"));
        assert_eq!(sq.pretty(), "1/2 - 1/2cos(2x)");
        // sample against the floating sin²
        for i in 0..64 {
            let x = i as f64 * std::f64::consts::PI / 16.0;
            assert!((sq.eval(x) - x.sin().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn pythagorean_product_is_the_same_object() {
        let left = &TrigPoly::one() - &TrigPoly::cos(1);
        let right = &TrigPoly::one() + &TrigPoly::cos(1);
        assert_eq!(left.mul(&right), p("1/2;0,0;-1/2,0"));
        let f = p("3;1/2,-2;0,7");
        assert_eq!(f.mul(&TrigPoly::one()), f);
    }

    #[test]
    fn division_examples() {
        let sin = TrigPoly::sin(1);
        assert_eq!(sin.divides(&p("1;-1,0")).unwrap(), None);
        assert_eq!(sin.divides(&p("1;1,0")).unwrap(), None);
        assert_eq!(
            sin.divides(&p("1/2;0,0;-1/2,0")).unwrap(),
            Some(sin.clone())
        );
        assert!(matches!(
            TrigPoly::zero().divides(&sin),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            sin.divides(&TrigPoly::zero()).unwrap(),
            Some(TrigPoly::zero())
        );
        let c = TrigPoly::constant(rat(4));
        assert_eq!(c.divides(&sin).unwrap(), Some(p("0;0,1/4")));
    }

    #[test]
    fn units_are_nonzero_constants() {
        assert!(TrigPoly::constant(rat(3)).is_unit());
        assert!(!TrigPoly::zero().is_unit());
        assert!(!TrigPoly::sin(1).is_unit());
    }

    #[test]
    fn laurent_image_of_sin() {
        // (z² - 1)/(2i z) = -i/2 z + i/2 z⁻¹
        let l = TrigPoly::sin(1).to_laurent();
        assert_eq!(l.low(), -1);
        assert_eq!(l.high(), 1);
        assert_eq!(l.coefficient(1), Gaussian::new(rat(0), -half()));
        assert_eq!(l.coefficient(-1), Gaussian::new(rat(0), half()));
        assert!(l.coefficient(0).is_zero());
        assert_eq!(l.to_trig().unwrap(), TrigPoly::sin(1));
    }

    #[test]
    fn asymmetric_laurent_is_rejected() {
        let l = LaurentRep {
            low: 0,
            coeffs: vec![Gaussian::zero(), Gaussian::one()],
        };
        assert!(!l.is_conjugate_symmetric());
        assert!(l.to_trig().is_err());
    }

    #[test]
    fn canonical_form_strips_zero_tail() {
        let f = p("1;2,0;0,0;0/5,0");
        assert_eq!(f.degree(), 1);
        assert_eq!(f.to_string(), "1;2,0");
        assert_eq!(p("0").degree(), 0);
        assert!(p("0;0,0").is_zero());
    }

    #[test]
    fn trotter_witness_passes() {
        let r = verify_trotter_witness();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.product, "1/2 - 1/2cos(2x)");
    }

    #[test]
    fn bad_text_is_rejected() {
        assert!("1;2".parse::<TrigPoly>().is_err());
        assert!("1/0".parse::<TrigPoly>().is_err());
        assert!("x".parse::<TrigPoly>().is_err());
    }
}
