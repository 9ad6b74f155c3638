//! Divisor arithmetic behind the root-counting series.
//!
//! Solving x^M = 1 over characteristic p splits into a semisimple part
//! (order dividing the prime-to-p part t of M) and a unipotent part
//! (order a power of p).  The semisimple side is controlled by how the
//! d-th cyclotomic polynomial factors over the relevant field, for each
//! d | t.  This module provides:
//!
//! - [`split_root_problem`]: the M = t * p^r decomposition,
//! - [`mult_order`] / [`min_negation_exponent`]: the field-theoretic
//!   invariants of a divisor,
//! - [`classify_divisors`]: the per-divisor factor shapes and counts that
//!   the generating-function builders consume.

use crate::genfun::GroupFamily;
use crate::{Error, Int};
use num_bigint::BigInt;

/// An exponent M split against the characteristic of F_q: M = t * p^r with
/// gcd(t, p) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootProblem {
    pub m: u64,
    pub q: u64,
    /// Characteristic of F_q.
    pub p: u64,
    /// Prime-to-p part of M.
    pub t: u64,
    /// p-adic valuation of M.
    pub r: u32,
}

impl RootProblem {
    /// Largest Jordan block size compatible with x^M = 1, namely p^r.
    pub fn unipotent_bound(&self) -> u64 {
        self.p.pow(self.r)
    }
}

/// Splits M into its prime-to-p and p-power parts over F_q.
///
/// # Errors
/// Rejects M = 0 and any q that is not an odd prime power.
pub fn split_root_problem(m: u64, q: u64) -> Result<RootProblem, Error> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    let p = odd_prime_base(q).ok_or(Error::BadFieldSize(q))?;
    let mut t = m;
    let mut r = 0u32;
    while t.is_multiple_of(p) {
        t /= p;
        r += 1;
    }
    Ok(RootProblem { m, q, p, t, r })
}

/// The characteristic p when q is an odd prime power, else None.
pub fn odd_prime_base(q: u64) -> Option<u64> {
    if q < 3 || q.is_multiple_of(2) {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    (rest == 1).then_some(p)
}

fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n >= 2);
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// Multiplicative order of q modulo d.  By convention the order is 1 when
/// d <= 2 (the group of units is trivial there for odd q).
///
/// # Panics
/// If gcd(q, d) != 1; callers must only pass divisors prime to q.
pub fn mult_order(q: u64, d: u64) -> u64 {
    if d <= 2 {
        return 1;
    }
    assert!(
        num_integer::gcd(q, d) == 1,
        "mult_order requires gcd(q, d) = 1, got q = {q}, d = {d}"
    );
    let q = q % d;
    let mut pw = q;
    let mut e = 1u64;
    while pw != 1 {
        pw = mulmod(pw, q, d);
        e += 1;
    }
    e
}

/// Smallest s >= 1 with q^s = -1 mod d, or None when no power of q is -1.
///
/// For d <= 2 the congruence is vacuous (1 = -1 mod d holds for d <= 2) and
/// the minimum is 1.  When the result is Some(s) and d > 2, the
/// multiplicative order of q mod d is exactly 2s.
pub fn min_negation_exponent(q: u64, d: u64) -> Option<u64> {
    if d <= 2 {
        return Some(1);
    }
    assert!(
        num_integer::gcd(q, d) == 1,
        "min_negation_exponent requires gcd(q, d) = 1, got q = {q}, d = {d}"
    );
    let e = mult_order(q, d);
    let q = q % d;
    let mut pw = q;
    for s in 1..=e {
        if pw == d - 1 {
            return Some(s);
        }
        pw = mulmod(pw, q, d);
    }
    None
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(mut n: u64) -> u64 {
    assert!(n >= 1);
    let mut phi = 1u64;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut pk = 1;
            while n.is_multiple_of(d) {
                n /= d;
                pk *= d;
            }
            phi *= pk - pk / d;
        }
        d += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

/// Divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Shape of the cyclotomic factors contributed by one divisor d of t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorKind {
    /// d = 1 or d = 2: the eigenvalue +1 or -1, a single linear slot.
    Linear { sign: i8 },
    /// Sp/O families: every irreducible factor of the d-th cyclotomic
    /// polynomial is self-reciprocal of even degree 2m.
    SelfDual { m: u64 },
    /// Unitary family: every factor over F_{q^2} is conjugate-self-reciprocal
    /// of odd degree s.
    SelfConjugate { s: u64 },
    /// Factors that are swapped with a distinct partner by the relevant
    /// involution; `deg` is the degree of one factor over the ground field
    /// used by its centralizer.
    Paired { deg: u64 },
}

/// One divisor d | t together with everything the series builders need:
/// its order data, factor shape, and how many identical factor slots it
/// contributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub d: u64,
    /// Multiplicative order of q mod d.
    pub e: u64,
    pub phi: u64,
    pub kind: FactorKind,
    /// Number of identical generating-function factors for this divisor.
    /// Paired factors are counted per pair.
    pub factor_count: u64,
}

impl DivisorClass {
    /// Dimension contributed per unit of partition size in a block with
    /// this shape.
    pub fn block_dim(&self, family: GroupFamily) -> u64 {
        match (&self.kind, family) {
            (FactorKind::Linear { .. }, _) => 1,
            (FactorKind::SelfDual { m }, _) => 2 * m,
            (FactorKind::SelfConjugate { s }, _) => *s,
            (FactorKind::Paired { deg }, GroupFamily::Gl) => *deg,
            (FactorKind::Paired { deg }, _) => 2 * deg,
        }
    }

    /// Signed base of the block centralizer: negative values mean the
    /// centralizer order is a general-linear order evaluated at a negative
    /// argument (a unitary group order up to sign).
    pub fn centralizer_base(&self, family: GroupFamily, q: u64) -> Int {
        let q = BigInt::from(q);
        match (&self.kind, family) {
            (FactorKind::Linear { .. }, GroupFamily::Unitary) => -q,
            (FactorKind::Linear { .. }, _) => q,
            (FactorKind::SelfDual { m }, _) => -q.pow(*m as u32),
            (FactorKind::SelfConjugate { s }, _) => -q.pow(*s as u32),
            (FactorKind::Paired { deg }, GroupFamily::Unitary) => q.pow(2 * *deg as u32),
            (FactorKind::Paired { deg }, _) => q.pow(*deg as u32),
        }
    }
}

/// Classifies every divisor of t by the shape of its cyclotomic factors
/// relative to the given family over F_q.
///
/// # Errors
/// Requires gcd(t, q) = 1 and an odd prime power q.
pub fn classify_divisors(
    t: u64,
    q: u64,
    family: GroupFamily,
) -> Result<Vec<DivisorClass>, Error> {
    odd_prime_base(q).ok_or(Error::BadFieldSize(q))?;
    if num_integer::gcd(t, q) != 1 {
        return Err(Error::NotCoprime { t, q });
    }
    let mut out = Vec::new();
    for d in divisors(t) {
        let e = mult_order(q, d);
        let phi = euler_phi(d);
        let (kind, factor_count) = if d <= 2 {
            (
                FactorKind::Linear {
                    sign: if d == 1 { 1 } else { -1 },
                },
                1,
            )
        } else {
            match family {
                GroupFamily::Gl => {
                    assert!(phi.is_multiple_of(e));
                    (FactorKind::Paired { deg: e }, phi / e)
                }
                GroupFamily::Sp
                | GroupFamily::OrthoSum
                | GroupFamily::OrthoPlus
                | GroupFamily::OrthoMinus
                | GroupFamily::OrthoOdd => match min_negation_exponent(q, d) {
                    Some(m) => {
                        assert!(e == 2 * m && phi.is_multiple_of(e));
                        (FactorKind::SelfDual { m }, phi / e)
                    }
                    None => {
                        assert!(phi.is_multiple_of(2 * e));
                        (FactorKind::Paired { deg: e }, phi / (2 * e))
                    }
                },
                GroupFamily::Unitary => match min_negation_exponent(q, d) {
                    Some(s) if s % 2 == 1 => {
                        assert!(phi.is_multiple_of(s));
                        (FactorKind::SelfConjugate { s }, phi / s)
                    }
                    _ => {
                        // Degree over F_{q^2}.
                        let deg = mult_order(mulmod(q % d.max(1), q, d.max(1)), d);
                        assert!(phi.is_multiple_of(2 * deg));
                        (FactorKind::Paired { deg }, phi / (2 * deg))
                    }
                },
            }
        };
        out.push(DivisorClass {
            d,
            e,
            phi,
            kind,
            factor_count,
        });
    }
    Ok(out)
}
