//! Integer partitions, signed partitions, and block centralizer orders.
//!
//! Conjugacy data in the classical groups is indexed by partitions: a
//! plain partition per irreducible factor for general-linear-type blocks,
//! and a partition with signs attached to certain part sizes for the
//! symplectic/orthogonal eigenvalue-(+-1) blocks.  The two centralizer
//! order functions here are the engine room of every series builder:
//!
//! - [`centralizer_gl`]: the general-linear block centralizer, valid for
//!   negative bases as well (unitary centralizers are general-linear
//!   centralizers at a negated base, up to a predictable sign),
//! - [`centralizer_signed`]: the symplectic/orthogonal block centralizer
//!   built from a signed partition.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::genfun::GroupFamily;
use crate::qseries::group_order;
use crate::{Int, Rat};

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition, checking the weakly decreasing invariant.
    pub fn new(parts: Vec<u64>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "parts must be positive and weakly decreasing: {parts:?}"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Multiplicity of `part` among the parts.
    pub fn multiplicity(&self, part: u64) -> u64 {
        self.parts.iter().filter(|&&p| p == part).count() as u64
    }

    /// Distinct part sizes in decreasing order with multiplicities.
    pub fn multiplicities(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((size, count)) if *size == p => *count += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let max = self.parts[0];
        let parts = (1..=max)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u64)
            .collect();
        Partition::new(parts)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

/// All partitions of n with optional bounds on the largest part and the
/// number of parts, in lexicographically decreasing order.
///
/// n = 0 yields exactly the empty partition.
pub fn gen_partitions(n: u64, max_part: Option<u64>, max_len: Option<usize>) -> Vec<Partition> {
    let cap = max_part.unwrap_or(n).min(n);
    let slots = max_len.unwrap_or(n as usize);
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(
        remaining: u64,
        cap: u64,
        slots: usize,
        prefix: &mut Vec<u64>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        if slots == 0 || cap == 0 {
            return;
        }
        let hi = cap.min(remaining);
        for part in (1..=hi).rev() {
            prefix.push(part);
            rec(remaining - part, part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    rec(n, cap, slots, &mut prefix, &mut out);
    out
}

/// Number of partitions of n (no bounds); a convenience for tests.
pub fn partition_count(n: u64) -> u64 {
    gen_partitions(n, None, None).len() as u64
}

/// Which signed-partition discipline a block obeys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignedKind {
    /// Odd parts have even multiplicity; signs attach to even part sizes.
    Symplectic,
    /// Even parts have even multiplicity; signs attach to odd part sizes.
    Orthogonal,
}

/// A plus or minus label on a part size.
pub type Sign = i8;

/// A partition with a sign attached to each part size of the appropriate
/// parity (one sign per part size, not per occurrence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPartition {
    pub kind: SignedKind,
    pub partition: Partition,
    /// (part size, sign) for every signed size, in decreasing size order.
    pub signs: Vec<(u64, Sign)>,
}

impl SignedPartition {
    pub fn size(&self) -> u64 {
        self.partition.size()
    }

    /// Sign attached to a part size, if that size is signed.
    pub fn sign_of(&self, part: u64) -> Option<Sign> {
        self.signs
            .iter()
            .find(|&&(p, _)| p == part)
            .map(|&(_, s)| s)
    }
}

impl std::fmt::Display for SignedPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.partition.is_empty() {
            return write!(f, "()");
        }
        let strs: Vec<String> = self
            .partition
            .parts()
            .iter()
            .map(|&p| match self.sign_of(p) {
                Some(1) => format!("{p}+"),
                Some(_) => format!("{p}-"),
                None => p.to_string(),
            })
            .collect();
        write!(f, "({})", strs.join(","))
    }
}

/// True when the underlying partition satisfies the parity discipline of
/// the kind (before signs are attached).
pub fn is_valid_signed_shape(kind: SignedKind, partition: &Partition) -> bool {
    partition.multiplicities().iter().all(|&(size, mult)| {
        let needs_even_mult = match kind {
            SignedKind::Symplectic => size % 2 == 1,
            SignedKind::Orthogonal => size % 2 == 0,
        };
        !needs_even_mult || mult % 2 == 0
    })
}

/// All signed partitions of n for the given kind, with an optional bound
/// on the largest part.  Shapes come out in the order of
/// [`gen_partitions`]; for each shape, signs run through all assignments
/// with + before - on the largest signed size first.
pub fn gen_signed(kind: SignedKind, n: u64, max_part: Option<u64>) -> Vec<SignedPartition> {
    let mut out = Vec::new();
    for shape in gen_partitions(n, max_part, None) {
        if !is_valid_signed_shape(kind, &shape) {
            continue;
        }
        let signed_sizes: Vec<u64> = shape
            .multiplicities()
            .iter()
            .map(|&(size, _)| size)
            .filter(|&size| match kind {
                SignedKind::Symplectic => size % 2 == 0,
                SignedKind::Orthogonal => size % 2 == 1,
            })
            .collect();
        let k = signed_sizes.len() as u32;
        for mask in 0..(1u64 << k) {
            let signs = signed_sizes
                .iter()
                .enumerate()
                .map(|(i, &size)| (size, if mask >> i & 1 == 0 { 1i8 } else { -1i8 }))
                .collect();
            out.push(SignedPartition {
                kind,
                partition: shape.clone(),
                signs,
            });
        }
    }
    out
}

/// Centralizer order of a general-linear-type block with Jordan data
/// `lambda` over a base of absolute value at least 2.
///
/// For base b this is b^{sum of squared conjugate parts} times
/// prod_i prod_{j=1}^{m_i} (1 - b^{-j}).  Negative bases are meaningful:
/// the value is then a unitary centralizer order times (-1)^{size}.
pub fn centralizer_gl(lambda: &Partition, base: &Int) -> Rat {
    assert!(
        base.abs() >= BigInt::from(2),
        "centralizer base must have absolute value >= 2"
    );
    let conj = lambda.conjugate();
    let exp: u64 = conj.parts().iter().map(|&c| c * c).sum();
    let mut acc = Rat::from(base.pow(exp as u32));
    for (_, mult) in lambda.multiplicities() {
        for j in 1..=mult {
            // 1 - base^{-j} = (base^j - 1) / base^j
            let bj = base.pow(j as u32);
            acc *= Rat::new(&bj - Int::one(), bj);
        }
    }
    acc
}

/// Centralizer order of an eigenvalue-(+-1) block in a symplectic or
/// orthogonal group over F_q, from its signed partition.
///
/// The result is always a positive integer (returned as a rational for
/// uniformity with [`centralizer_gl`]); integrality is asserted.
pub fn centralizer_signed(lam: &SignedPartition, q: u64) -> Rat {
    let mults = lam.partition.multiplicities();
    // Doubled exponent of the q-power in front, tracked doubled so the
    // half-integer contributions from even part sizes stay exact.
    let mut exp2: i64 = 0;
    for (i, &(mu, m_mu)) in mults.iter().enumerate() {
        exp2 += ((mu - 1) * m_mu * m_mu) as i64;
        for &(nu, m_nu) in &mults[i + 1..] {
            // nu < mu because multiplicities() is decreasing.
            exp2 += 2 * (nu * m_mu * m_nu) as i64;
        }
    }
    let q_int = Int::from(q);
    let mut acc = Rat::one();
    for &(mu, m_mu) in &mults {
        let even_size = mu % 2 == 0;
        // Even part sizes contribute a half-integral q-power on top of the
        // group factor: +m/2 in the symplectic kind, -m/2 in the orthogonal.
        if even_size {
            exp2 += match lam.kind {
                SignedKind::Symplectic => m_mu as i64,
                SignedKind::Orthogonal => -(m_mu as i64),
            };
        }
        let ortho_here = match lam.kind {
            SignedKind::Symplectic => even_size,
            SignedKind::Orthogonal => !even_size,
        };
        if ortho_here {
            let family = match lam.sign_of(mu) {
                Some(1) => GroupFamily::OrthoPlus,
                Some(_) => GroupFamily::OrthoMinus,
                None => unreachable!("signed size {mu} has no sign"),
            };
            acc *= Rat::from(group_order(family, m_mu, &q_int));
        } else {
            // Symplectic factor; the parity discipline forces an even
            // multiplicity here, which Sp needs.
            assert!(m_mu % 2 == 0, "invalid signed partition {lam}");
            acc *= Rat::from(group_order(GroupFamily::Sp, m_mu, &q_int));
        }
    }
    assert!(exp2 % 2 == 0, "fractional q-power in centralizer of {lam}");
    let exp = exp2 / 2;
    if exp >= 0 {
        acc *= Rat::from(q_int.pow(exp as u32));
    } else {
        acc *= Rat::new(Int::one(), q_int.pow((-exp) as u32));
    }
    assert!(
        acc.denom().is_one() && acc.numer() > &Int::zero(),
        "centralizer of {lam} came out non-integral or non-positive: {acc}"
    );
    acc
}
