//! Exact multivariate polynomials over `Q`, `F_p` and `Q(zeta)`.

mod jet;
mod json;
pub mod matrix;
mod parse;
mod poly;
mod radical;
mod scalar;

pub use jet::solve_implicit;
pub use json::{BigIntText, PolyJson, TermJson};
pub use parse::{format, parse, parse_auto};
pub use poly::{indexed_vars, vars, Monomial, Poly, Vars};
pub use radical::{RadicalExt, Radicands};
pub use scalar::{Field, Fp, HasZeta3, QZeta3, Rational, RationalAlgebra, Ring};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right}")]
    Arity { left: usize, right: usize },
    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("{0}")]
    Domain(String),
    #[error("cannot reduce {coeff} modulo {p}")]
    Reduction { coeff: String, p: u32 },
}

impl Poly<Rational> {
    /// Coefficientwise reduction modulo `P`.
    pub fn reduce_mod<const P: u32>(&self) -> Result<Poly<Fp<P>>, PolyError> {
        self.try_map_coeffs(|c| {
            Fp::<P>::try_from_rational(c).ok_or_else(|| PolyError::Reduction {
                coeff: c.to_string(),
                p: P,
            })
        })
    }

    /// Image under the embedding of `Q` into a larger ring.
    pub fn embed_coeffs<R: RationalAlgebra>(&self) -> Poly<R> {
        self.map_coeffs(R::from_rational)
    }

    /// The smallest positive integer clearing all denominators.
    pub fn common_denominator(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms().fold(num_bigint::BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()))
    }
}

/// Primes with a compiled `Fp` instantiation.
pub const SUPPORTED_PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 101, 103];

/// Runs `$body` with `$P` bound to the const prime `$p`, or evaluates
/// `$fallback` when `$p` is not in [`SUPPORTED_PRIMES`].
#[macro_export]
macro_rules! with_prime {
    ($p:expr, $P:ident => $body:expr, _ => $fallback:expr) => {
        match $p {
            2 => { const $P: u32 = 2; $body }
            3 => { const $P: u32 = 3; $body }
            5 => { const $P: u32 = 5; $body }
            7 => { const $P: u32 = 7; $body }
            11 => { const $P: u32 = 11; $body }
            13 => { const $P: u32 = 13; $body }
            101 => { const $P: u32 = 101; $body }
            103 => { const $P: u32 = 103; $body }
            _ => $fallback,
        }
    };
}
