//! Exact counting of M-th roots of the identity in finite classical groups.
//!
//! For a classical group G(q) over a field of odd characteristic and an
//! exponent M, the number of solutions of x^M = 1 is governed by a
//! generating function whose coefficients are exact rationals: the
//! proportion of solutions in dimension n sits at z^n.  This crate builds
//! those series from first principles (divisor classification, centralizer
//! orders, cycle-index factorizations), enumerates the contributing
//! conjugacy-class data directly, and cross-checks everything against a
//! brute-force matrix enumeration over the actual finite groups.
//!
//! The series engine in [`qseries`] is generic over the coefficient ring;
//! the two instantiations used throughout are aliased below.

pub mod cli;
pub mod crosscheck;
pub mod genfun;
pub mod numtheory;
pub mod oracle;
pub mod partitions;
pub mod qseries;

pub use genfun::GroupFamily;

/// Arbitrary-precision integer used for group orders and root counts.
pub type Int = num_bigint::BigInt;

/// Exact rational used for proportions and centralizer reciprocals.
pub type Rat = num_rational::BigRational;

/// Truncated power series with rational coefficients (proportions).
pub type RatSeries = qseries::Series<Rat>;

/// Truncated power series with integer coefficients (class counts).
pub type IntSeries = qseries::Series<Int>;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("exponent M must be at least 1")]
    ZeroExponent,

    #[error("q = {0} is not an odd prime power")]
    BadFieldSize(u64),

    #[error("t = {t} and q = {q} must be coprime here")]
    NotCoprime { t: u64, q: u64 },

    #[error("family {0:?} is not supported by this operation")]
    UnsupportedFamily(GroupFamily),

    #[error("truncation order {0} exceeds the supported maximum {1}")]
    TruncationTooLarge(usize, usize),

    #[error("requires gcd(M, q) = 1, got M = {m}, q = {q}")]
    NotSemisimpleCase { m: u64, q: u64 },

    #[error("closed form requires an odd prime M with q = -1 mod M, got M = {m}, q = {q}")]
    PrimeCaseHypothesis { m: u64, q: u64 },

    #[error("dimension {dim} is invalid for family {family:?}")]
    BadDimension { dim: usize, family: GroupFamily },

    #[error("candidate space of size {candidates} exceeds the oracle budget {budget} (set ROOTCOUNT_BUDGET to raise it)")]
    BudgetExceeded { candidates: u128, budget: u64 },

    #[error("the oracle only enumerates groups over prime fields, got q = {0}")]
    OracleFieldUnsupported(u64),

    #[error("matrix is not invertible, so it has no multiplicative order")]
    Singular,
}
