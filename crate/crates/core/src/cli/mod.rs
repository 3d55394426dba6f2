//! Command-line front end. Every library operation is reachable from one
//! subcommand, and every subcommand prints an [`OutputEnvelope`].

mod envelope;

use std::collections::BTreeMap;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

pub use envelope::{OutputEnvelope, Status};

use crate::error::Result;
use crate::quadratic::{self, QuadInt};
use crate::trig::{self, TrigPoly};
use crate::{gcd, integer, zeta};

#[derive(Debug, Parser)]
#[command(
    name = "factoria",
    version,
    about = "Unique factorization, Bezout certificates, and where they fail"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Override the enumeration / search budget of the chosen command.
    #[arg(long, global = true, env = "FACTORIA_BOUND")]
    bound: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GcdMethod {
    Euclid,
    Factorization,
    Search,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BezoutMethod {
    Extended,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LemmaRoute {
    Descent,
    Bezout,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MulRoute {
    ProductToSum,
    Laurent,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prime factorization by trial division.
    Factor { n: u64 },
    /// Smallest prime strictly greater than N.
    NextPrime { n: u64 },
    /// Primality by trial division.
    IsPrime { n: u64 },
    /// Quotient and remainder of A by D.
    Divrem { a: u64, d: u64 },
    /// Every multiset of primes with product N, by exhaustive search.
    Factorizations { n: u64 },
    /// All primes up to LIMIT.
    Primes { limit: u64 },
    /// gcd of A and B by one method, or all three side by side.
    Gcd {
        a: u64,
        b: u64,
        #[arg(long, value_enum, default_value_t = GcdMethod::All)]
        method: GcdMethod,
    },
    /// Bezout certificate x*A + y*B = gcd(A, B).
    Bezout {
        a: u64,
        b: u64,
        #[arg(long, value_enum, default_value_t = BezoutMethod::Extended)]
        method: BezoutMethod,
    },
    /// Which of A, B the prime P divides, given P | A*B.
    EuclidLemma {
        p: u64,
        a: u64,
        b: u64,
        #[arg(long, value_enum, default_value_t = LemmaRoute::Descent)]
        via: LemmaRoute,
    },
    /// Check that every common divisor of A and B divides their gcd.
    GcdCheck { a: u64, b: u64 },
    /// Arithmetic in Z[sqrt(-5)]; elements are written `a,b` for a + b*sqrt(-5).
    Zring {
        #[command(subcommand)]
        op: ZringOp,
    },
    /// Trigonometric polynomials written `a0;a1,b1;a2,b2;...` with rationals `p/q`.
    Trig {
        #[command(subcommand)]
        op: TrigOp,
    },
    /// Truncated zeta sums and Euler products for real s > 1.
    Zeta {
        #[command(subcommand)]
        op: ZetaOp,
    },
}

#[derive(Debug, Subcommand)]
enum ZringOp {
    Add {
        #[arg(allow_hyphen_values = true)]
        x: QuadInt,
        #[arg(allow_hyphen_values = true)]
        y: QuadInt,
    },
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: QuadInt,
        #[arg(allow_hyphen_values = true)]
        y: QuadInt,
    },
    Neg {
        #[arg(allow_hyphen_values = true)]
        x: QuadInt,
    },
    Norm {
        #[arg(allow_hyphen_values = true)]
        x: QuadInt,
    },
    /// Whether D divides N.
    Divides {
        #[arg(allow_hyphen_values = true)]
        d: QuadInt,
        #[arg(allow_hyphen_values = true)]
        n: QuadInt,
    },
    Irreducible {
        #[arg(allow_hyphen_values = true)]
        x: QuadInt,
    },
    /// All factorizations into irreducibles, up to order and units.
    Factorizations {
        #[arg(allow_hyphen_values = true)]
        x: QuadInt,
    },
}

#[derive(Debug, Subcommand)]
enum TrigOp {
    Add {
        #[arg(allow_hyphen_values = true)]
        f: TrigPoly,
        #[arg(allow_hyphen_values = true)]
        g: TrigPoly,
    },
    Scale {
        #[arg(allow_hyphen_values = true, value_parser = trig::parse_rational)]
        c: BigRational,
        #[arg(allow_hyphen_values = true)]
        f: TrigPoly,
    },
    Mul {
        #[arg(allow_hyphen_values = true)]
        f: TrigPoly,
        #[arg(allow_hyphen_values = true)]
        g: TrigPoly,
        #[arg(long, value_enum, default_value_t = MulRoute::ProductToSum)]
        route: MulRoute,
    },
    /// Whether F divides G, with the quotient when it does.
    Divides {
        #[arg(allow_hyphen_values = true)]
        f: TrigPoly,
        #[arg(allow_hyphen_values = true)]
        g: TrigPoly,
    },
    IsUnit {
        #[arg(allow_hyphen_values = true)]
        f: TrigPoly,
    },
    /// sin^2 x = (1 - cos x)(1 + cos x) with sin x dividing neither factor.
    Witness,
}

#[derive(Debug, Subcommand)]
enum ZetaOp {
    Sum {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long)]
        terms: u64,
    },
    Product {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long)]
        primes: u64,
    },
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long)]
        terms: u64,
        #[arg(long)]
        primes: u64,
    },
}

/// Library operation and a command line that exercises it.
pub struct Route {
    pub operation: &'static str,
    pub argv: &'static [&'static str],
}

/// Every library operation and the subcommand that reaches it.
pub const REGISTRY: &[Route] = &[
    Route {
        operation: "div_rem",
        argv: &["divrem", "17", "5"],
    },
    Route {
        operation: "is_prime",
        argv: &["is-prime", "17489"],
    },
    Route {
        operation: "next_prime",
        argv: &["next-prime", "17483"],
    },
    Route {
        operation: "factor",
        argv: &["factor", "6"],
    },
    Route {
        operation: "enumerate_prime_factorizations",
        argv: &["factorizations", "360"],
    },
    Route {
        operation: "primes_up_to",
        argv: &["primes", "10"],
    },
    Route {
        operation: "gcd_euclid",
        argv: &["gcd", "6", "4", "--method", "euclid"],
    },
    Route {
        operation: "gcd_by_factorization",
        argv: &["gcd", "12", "18", "--method", "factorization"],
    },
    Route {
        operation: "bezout_by_search",
        argv: &["bezout", "3", "5", "--method", "search"],
    },
    Route {
        operation: "bezout_extended",
        argv: &["bezout", "3", "5", "--method", "extended"],
    },
    Route {
        operation: "euclid_lemma",
        argv: &["euclid-lemma", "3", "4", "15", "--via", "descent"],
    },
    Route {
        operation: "prime_divides_factor_via_bezout",
        argv: &["euclid-lemma", "3", "4", "15", "--via", "bezout"],
    },
    Route {
        operation: "verify_common_divisors_divide_gcd",
        argv: &["gcd-check", "12", "18"],
    },
    Route {
        operation: "q_add",
        argv: &["zring", "add", "1,1", "1,-1"],
    },
    Route {
        operation: "q_mul",
        argv: &["zring", "mul", "1,1", "1,-1"],
    },
    Route {
        operation: "q_neg",
        argv: &["zring", "neg", "1,1"],
    },
    Route {
        operation: "q_norm",
        argv: &["zring", "norm", "1,1"],
    },
    Route {
        operation: "q_divides",
        argv: &["zring", "divides", "2,0", "1,1"],
    },
    Route {
        operation: "q_is_irreducible",
        argv: &["zring", "irreducible", "2,0"],
    },
    Route {
        operation: "q_enumerate_factorizations",
        argv: &["zring", "factorizations", "6,0"],
    },
    Route {
        operation: "t_add",
        argv: &["trig", "add", "1;0,0", "0;1,0"],
    },
    Route {
        operation: "t_scale",
        argv: &["trig", "scale", "1/2", "0;0,1"],
    },
    Route {
        operation: "t_mul",
        argv: &["trig", "mul", "0;0,1", "0;0,1"],
    },
    Route {
        operation: "t_divides",
        argv: &["trig", "divides", "0;0,1", "1;-1,0"],
    },
    Route {
        operation: "t_is_unit",
        argv: &["trig", "is-unit", "3"],
    },
    Route {
        operation: "verify_trotter_witness",
        argv: &["trig", "witness"],
    },
    Route {
        operation: "zeta_partial_sum",
        argv: &["zeta", "sum", "--s", "2", "--terms", "3"],
    },
    Route {
        operation: "euler_partial_product",
        argv: &["zeta", "product", "--s", "2", "--primes", "2"],
    },
    Route {
        operation: "compare",
        argv: &[
            "zeta", "compare", "--s", "3", "--terms", "1", "--primes", "0",
        ],
    },
];

/// Exit code plus the text destined for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first), runs the command and renders its envelope.
///
/// Exit code 0 on success, 1 when the operation reports an error, 2 for usage errors.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let envelope = execute(&cli.command, cli.bound);
    let stdout = match cli.format {
        Format::Json => envelope.to_json() + "\n",
        Format::Plain => envelope.to_plain(),
    };
    let code = if envelope.status == Status::Ok { 0 } else { 1 };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

type Inputs = BTreeMap<String, Value>;

fn inputs<const N: usize>(pairs: [(&str, Value); N]) -> Inputs {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn finish(command: &str, inputs: Inputs, result: Result<Value>) -> OutputEnvelope {
    match result {
        Ok(v) => OutputEnvelope::ok(command, inputs, v),
        Err(e) => OutputEnvelope::failed(command, inputs, &e),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library results serialize")
}

fn execute(command: &Command, bound: Option<u64>) -> OutputEnvelope {
    let budget = |default: u64| bound.unwrap_or(default);
    match command {
        Command::Factor { n } => finish(
            "factor",
            inputs([("n", json!(n))]),
            integer::factor(*n).map(|f| json!(f.to_string())),
        ),
        Command::NextPrime { n } => finish(
            "next-prime",
            inputs([("n", json!(n))]),
            integer::next_prime(*n).map(|p| json!(p)),
        ),
        Command::IsPrime { n } => finish(
            "is-prime",
            inputs([("n", json!(n))]),
            Ok(json!(integer::is_prime(*n))),
        ),
        Command::Divrem { a, d } => finish(
            "divrem",
            inputs([("a", json!(a)), ("d", json!(d))]),
            integer::div_rem(*a, *d).map(|r| to_value(&r)),
        ),
        Command::Factorizations { n } => finish(
            "factorizations",
            inputs([("n", json!(n))]),
            integer::enumerate_prime_factorizations(*n, budget(integer::DEFAULT_ENUMERATION_BOUND))
                .map(|s| {
                    json!({
                        "multisets": s.multisets,
                        "orderings_explored": s.orderings_explored,
                        "unique": s.is_unique(),
                    })
                }),
        ),
        Command::Primes { limit } => finish(
            "primes",
            inputs([("limit", json!(limit))]),
            integer::primes_up_to(*limit).map(|ps| json!({ "count": ps.len(), "primes": ps })),
        ),
        Command::Gcd { a, b, method } => {
            let ins = inputs([
                ("a", json!(a)),
                ("b", json!(b)),
                ("method", json!(format!("{method:?}").to_lowercase())),
            ]);
            let search_budget = budget(gcd::DEFAULT_SEARCH_BUDGET);
            let result = match method {
                GcdMethod::Euclid => gcd::gcd_euclid(*a, *b).map(|g| json!(g)),
                GcdMethod::Factorization => gcd::gcd_by_factorization(*a, *b).map(|g| json!(g)),
                GcdMethod::Search => {
                    gcd::bezout_by_search(*a, *b, search_budget).map(|c| json!(c.g()))
                }
                GcdMethod::All => gcd::compare_gcds(*a, *b, search_budget).map(|c| {
                    let mut v = to_value(&c);
                    v["agree"] = json!(c.agree());
                    v
                }),
            };
            finish("gcd", ins, result)
        }
        Command::Bezout { a, b, method } => {
            let ins = inputs([
                ("a", json!(a)),
                ("b", json!(b)),
                ("method", json!(format!("{method:?}").to_lowercase())),
            ]);
            let cert = match method {
                BezoutMethod::Extended => gcd::bezout_extended(*a, *b),
                BezoutMethod::Search => {
                    gcd::bezout_by_search(*a, *b, budget(gcd::DEFAULT_SEARCH_BUDGET))
                }
            };
            let result =
                cert.map(|c| json!({ "x": c.x(), "y": c.y(), "g": c.g(), "verified": c.verify() }));
            finish("bezout", ins, result)
        }
        Command::EuclidLemma { p, a, b, via } => {
            let ins = inputs([
                ("p", json!(p)),
                ("a", json!(a)),
                ("b", json!(b)),
                ("via", json!(format!("{via:?}").to_lowercase())),
            ]);
            let verdict = match via {
                LemmaRoute::Descent => gcd::euclid_lemma(*p, *a, *b),
                LemmaRoute::Bezout => gcd::prime_divides_factor_via_bezout(*p, *a, *b),
            };
            finish("euclid-lemma", ins, verdict.map(|v| json!(v.as_str())))
        }
        Command::GcdCheck { a, b } => finish(
            "gcd-check",
            inputs([("a", json!(a)), ("b", json!(b))]),
            gcd::verify_common_divisors_divide_gcd(
                *a,
                *b,
                budget(gcd::DEFAULT_COMMON_DIVISOR_BUDGET),
            )
            .map(|r| to_value(&r)),
        ),
        Command::Zring { op } => zring(op, budget(quadratic::DEFAULT_NORM_BUDGET)),
        Command::Trig { op } => trig_command(op),
        Command::Zeta { op } => zeta_command(op),
    }
}

fn q(x: &QuadInt) -> Value {
    json!(x.to_pair_string())
}

fn zring(op: &ZringOp, budget: u64) -> OutputEnvelope {
    match op {
        ZringOp::Add { x, y } => finish(
            "zring add",
            inputs([("x", q(x)), ("y", q(y))]),
            x.checked_add(y).map(|r| q(&r)),
        ),
        ZringOp::Mul { x, y } => finish(
            "zring mul",
            inputs([("x", q(x)), ("y", q(y))]),
            x.checked_mul(y).map(|r| q(&r)),
        ),
        ZringOp::Neg { x } => finish(
            "zring neg",
            inputs([("x", q(x))]),
            x.checked_neg().map(|r| q(&r)),
        ),
        ZringOp::Norm { x } => finish(
            "zring norm",
            inputs([("x", q(x))]),
            x.norm().map(|n| json!(n)),
        ),
        ZringOp::Divides { d, n } => finish(
            "zring divides",
            inputs([("d", q(d)), ("n", q(n))]),
            n.is_divisible_by(d).map(|b| json!(b)),
        ),
        ZringOp::Irreducible { x } => finish(
            "zring irreducible",
            inputs([("x", q(x))]),
            x.is_irreducible().map(|b| json!(b)),
        ),
        ZringOp::Factorizations { x } => finish(
            "zring factorizations",
            inputs([("x", q(x))]),
            quadratic::factorizations(*x, budget).map(|fs| {
                let classes: Vec<Value> = fs
                    .iter()
                    .map(|f| {
                        json!({
                            "unit": q(&f.unit),
                            "factors": f.factors.iter().map(q).collect::<Vec<_>>(),
                            "text": f.to_string(),
                        })
                    })
                    .collect();
                json!({ "count": fs.len(), "classes": classes })
            }),
        ),
    }
}

fn t(f: &TrigPoly) -> Value {
    json!(f.to_string())
}

fn trig_command(op: &TrigOp) -> OutputEnvelope {
    match op {
        TrigOp::Add { f, g } => finish(
            "trig add",
            inputs([("f", t(f)), ("g", t(g))]),
            Ok(t(&(f + g))),
        ),
        TrigOp::Scale { c, f } => finish(
            "trig scale",
            inputs([("c", json!(c.to_string())), ("f", t(f))]),
            Ok(t(&f.scale(c))),
        ),
        TrigOp::Mul { f, g, route } => {
            let product = match route {
                MulRoute::ProductToSum => f.mul(g),
                MulRoute::Laurent => f.mul_via_laurent(g),
            };
            let route = match route {
                MulRoute::ProductToSum => "product-to-sum",
                MulRoute::Laurent => "laurent",
            };
            finish(
                "trig mul",
                inputs([("f", t(f)), ("g", t(g)), ("route", json!(route))]),
                Ok(json!({ "product": product.to_string(), "text": product.pretty() })),
            )
        }
        TrigOp::Divides { f, g } => finish(
            "trig divides",
            inputs([("f", t(f)), ("g", t(g))]),
            f.divides(g).map(|h| match h {
                Some(h) => json!({ "divides": true, "quotient": h.to_string() }),
                None => json!({ "divides": false }),
            }),
        ),
        TrigOp::IsUnit { f } => finish(
            "trig is-unit",
            inputs([("f", t(f))]),
            Ok(json!(f.is_unit())),
        ),
        TrigOp::Witness => {
            let report = trig::verify_trotter_witness();
            let mut v = to_value(&report);
            v["all_pass"] = json!(report.all_pass());
            finish("trig witness", Inputs::new(), Ok(v))
        }
    }
}

fn zeta_command(op: &ZetaOp) -> OutputEnvelope {
    match op {
        ZetaOp::Sum { s, terms } => finish(
            "zeta sum",
            inputs([("s", json!(s)), ("terms", json!(terms))]),
            zeta::zeta_partial_sum(*s, *terms).map(|v| json!(v)),
        ),
        ZetaOp::Product { s, primes } => finish(
            "zeta product",
            inputs([("s", json!(s)), ("primes", json!(primes))]),
            zeta::euler_partial_product(*s, *primes).map(|v| json!(v)),
        ),
        ZetaOp::Compare { s, terms, primes } => finish(
            "zeta compare",
            inputs([
                ("s", json!(s)),
                ("terms", json!(terms)),
                ("primes", json!(primes)),
            ]),
            zeta::compare(*s, *terms, *primes).map(|c| to_value(&c)),
        ),
    }
}
