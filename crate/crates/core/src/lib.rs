//! Computational checks of unique factorization in the integers and of its
//! failure in Z[√-5] and in the ring of trigonometric polynomials.
//!
//! * [`integer`]: division with remainder, primality, factorization, and an
//!   exhaustive search showing each integer has one prime factorization.
//! * [`gcd`]: gcds three ways, Bézout certificates two ways, Euclid's lemma.
//! * [`quadratic`]: arithmetic in Z[√-5] and factorization enumeration.
//! * [`trig`]: exact trigonometric polynomials and a divisibility test.
//! * [`zeta`]: truncated zeta sums against truncated Euler products.
//! * [`cli`]: the `factoria` command line.

pub mod cli;
pub mod error;
pub mod gcd;
pub mod integer;
pub mod quadratic;
pub mod trig;
pub mod zeta;

pub use error::{Error, Result};
