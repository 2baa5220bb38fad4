//! Exact arithmetic: rationals, Laurent polynomials in half-step variables,
//! truncated power series and sparse polynomial matrices.

mod matrix;
mod monomial;
mod parse;
mod poly;
pub mod render;
mod series;

use num_bigint::BigInt;
use thiserror::Error;

pub use matrix::{lex_subsets, permutation_sign, PolyMatrix};
pub use monomial::Monomial;
pub use parse::{parse_poly, PolyParseError};
pub use poly::MultiPoly;
pub use series::{exp_substitute, TruncatedSeries};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisionError {
    pub dividend: MultiPoly,
    pub divisor: MultiPoly,
    /// Non-zero part left over by the division algorithm.
    pub remainder: MultiPoly,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("variable context mismatch: {left} vs {right} variables")]
    ContextMismatch { left: usize, right: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division: remainder {}", render::render_expanded(&.0.remainder, &VarNames::default_for(.0.remainder.nvars())))]
    Division(Box<DivisionError>),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor order {k} exceeds matrix dimensions {rows}x{cols}")]
    MinorOrder { k: usize, rows: usize, cols: usize },
    #[error("matrix too large for subset memoisation ({0} columns, limit 64)")]
    TooLarge(usize),
    #[error("{0}")]
    Shape(String),
}

/// Names used when parsing and rendering polynomials. Index k names `t_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarNames(Vec<String>);

impl VarNames {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Self {
        VarNames(names.into_iter().map(Into::into).collect())
    }

    /// `t1 .. tn`.
    pub fn default_for(n: usize) -> Self {
        VarNames((1..=n).map(|k| format!("t{k}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, k: usize) -> &str {
        &self.0[k]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    /// Resolves a name; `t<k>` is always accepted as an alias of index k-1.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.0.iter().position(|n| n == name) {
            return Some(i);
        }
        let k: usize = name.strip_prefix('t')?.parse().ok()?;
        (k >= 1 && k <= self.0.len()).then(|| k - 1)
    }
}
