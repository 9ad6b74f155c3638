//! Brute-force ground truth: enumerate small classical groups element by
//! element and count roots directly.
//!
//! Everything here is deliberately independent of the series machinery: no
//! partitions, no centralizers, just matrices over a small field filtered
//! by the defining predicate of each family and powered up by repeated
//! squaring.  The candidate space has size q^{dim^2} (q^{2 dim^2} for the
//! unitary family, whose matrices live over F_{q^2}), so a budget guards
//! against hopeless requests; `ROOTCOUNT_BUDGET` raises it.

use crate::genfun::GroupFamily;
use crate::qseries::group_order;
use crate::{Error, Int};

/// Field elements are encoded as integers in [0, size): the residue itself
/// for a prime field, and a0 + a1*p representing a0 + a1*t for the
/// quadratic extension F_p[t]/(t^2 + t + c).
pub type FieldElement = u64;

/// A small finite field with all operations precomputed into tables.
#[derive(Debug, Clone)]
pub struct Field {
    p: u64,
    size: u64,
    degree: u32,
    /// Irreducible parameter c of t^2 + t + c; zero for prime fields.
    quad_c: u64,
    add: Vec<FieldElement>,
    mul: Vec<FieldElement>,
    neg: Vec<FieldElement>,
    inv: Vec<FieldElement>,
    conj: Vec<FieldElement>,
}

impl Field {
    /// The prime field F_p for odd prime p.
    pub fn prime(p: u64) -> Result<Field, Error> {
        check_odd_prime(p)?;
        Ok(Self::build(p, 1, 0))
    }

    /// The quadratic extension F_{p^2} presented as F_p[t]/(t^2 + t + c)
    /// with the smallest c making the polynomial irreducible.
    pub fn quadratic(p: u64) -> Result<Field, Error> {
        check_odd_prime(p)?;
        let c = (0..p)
            .find(|&c| (0..p).all(|x| (x * x + x + c) % p != 0))
            .expect("some monic quadratic t^2 + t + c is irreducible over F_p");
        Ok(Self::build(p, 2, c))
    }

    fn build(p: u64, degree: u32, quad_c: u64) -> Field {
        let size = p.pow(degree);
        let n = size as usize;
        let mut field = Field {
            p,
            size,
            degree,
            quad_c,
            add: vec![0; n * n],
            mul: vec![0; n * n],
            neg: vec![0; n],
            inv: vec![0; n],
            conj: (0..size).collect(),
        };
        for a in 0..size {
            for b in 0..size {
                field.add[(a * size + b) as usize] = field.add_slow(a, b);
                field.mul[(a * size + b) as usize] = field.mul_slow(a, b);
            }
        }
        for a in 0..size {
            field.neg[a as usize] = field.add_inverse(a);
            if a != 0 {
                field.inv[a as usize] = field.pow(a, size - 2);
            }
        }
        if degree == 2 {
            for a in 0..size {
                field.conj[a as usize] = field.pow(a, p);
            }
        }
        field
    }

    fn add_slow(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            (a + b) % self.p
        } else {
            let (a0, a1) = (a % self.p, a / self.p);
            let (b0, b1) = (b % self.p, b / self.p);
            (a0 + b0) % self.p + ((a1 + b1) % self.p) * self.p
        }
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            (a * b) % self.p
        } else {
            // (a0 + a1 t)(b0 + b1 t) with t^2 = -t - c.
            let p = self.p;
            let (a0, a1) = (a % p, a / p);
            let (b0, b1) = (b % p, b / p);
            let cross = a1 * b1 % p;
            let c0 = (a0 * b0 % p + (p - cross) * self.quad_c) % p;
            let c1 = (a0 * b1 + a1 * b0 + p * p - cross) % p;
            c0 + c1 * p
        }
    }

    fn add_inverse(&self, a: u64) -> u64 {
        if self.degree == 1 {
            (self.p - a) % self.p
        } else {
            let (a0, a1) = (a % self.p, a / self.p);
            (self.p - a0) % self.p + ((self.p - a1) % self.p) * self.p
        }
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add[(a * self.size + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul[(a * self.size + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; zero maps to zero (callers must not rely on it).
    #[inline]
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        self.inv[a as usize]
    }

    /// Frobenius conjugate x -> x^p (identity on prime fields).
    #[inline]
    pub fn conj(&self, a: FieldElement) -> FieldElement {
        self.conj[a as usize]
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// Smallest non-square in the prime field, in the natural residue order.
    pub fn smallest_nonsquare(&self) -> FieldElement {
        assert!(self.degree == 1);
        let squares: std::collections::HashSet<u64> =
            (1..self.p).map(|x| x * x % self.p).collect();
        (2..self.p)
            .find(|x| !squares.contains(x))
            .expect("odd prime fields have non-squares")
    }
}

fn check_odd_prime(p: u64) -> Result<(), Error> {
    let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if !is_prime || p == 2 {
        return Err(Error::OracleFieldUnsupported(p));
    }
    Ok(())
}

/// A square matrix over a [`Field`], row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixElement {
    pub dim: usize,
    pub entries: Vec<FieldElement>,
}

impl MatrixElement {
    pub fn zero(dim: usize) -> Self {
        MatrixElement {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &v)| v == u64::from(k / self.dim == k % self.dim))
    }

    pub fn mul(&self, rhs: &MatrixElement, field: &Field) -> MatrixElement {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let term = field.mul(a, rhs.get(k, j));
                    out.entries[i * d + j] = field.add(out.entries[i * d + j], term);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64, field: &Field) -> MatrixElement {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field);
            }
            base = base.mul(&base, field);
            e >>= 1;
        }
        acc
    }

    /// Invertibility via Gaussian elimination.
    pub fn is_invertible(&self, field: &Field) -> bool {
        let d = self.dim;
        let mut rows = self.entries.clone();
        for col in 0..d {
            let pivot = (col..d).find(|&r| rows[r * d + col] != 0);
            let pivot = match pivot {
                Some(r) => r,
                None => return false,
            };
            if pivot != col {
                for j in 0..d {
                    rows.swap(pivot * d + j, col * d + j);
                }
            }
            let inv = field.inv(rows[col * d + col]);
            for r in (col + 1)..d {
                let factor = field.mul(rows[r * d + col], inv);
                if factor == 0 {
                    continue;
                }
                for j in col..d {
                    let sub = field.mul(factor, rows[col * d + j]);
                    rows[r * d + j] = field.add(rows[r * d + j], field.neg(sub));
                }
            }
        }
        true
    }
}

/// The invariant form of a family, stored sparsely: row k has its single
/// nonzero at column `col[k]` with value `weight[k]`.
#[derive(Debug, Clone)]
pub struct FormSpec {
    pub family: GroupFamily,
    pub dim: usize,
    col: Vec<usize>,
    weight: Vec<FieldElement>,
}

impl FormSpec {
    /// Dense matrix of the form, for display and tests.
    pub fn dense(&self) -> MatrixElement {
        let mut m = MatrixElement::zero(self.dim);
        for k in 0..self.dim {
            m.set(k, self.col[k], self.weight[k]);
        }
        m
    }

    fn entry(&self, i: usize, j: usize) -> FieldElement {
        if self.col[i] == j {
            self.weight[i]
        } else {
            0
        }
    }
}

/// The pinned invariant form for each family needing one:
/// - Sp: antidiagonal, +1 on the top half, -1 on the bottom half,
/// - O+ (even dim): the all-ones antidiagonal (hyperbolic),
/// - O- (even dim): a hyperbolic antidiagonal around a central
///   diag(1, -delta) block with delta the smallest non-square,
/// - O-odd: the all-ones antidiagonal,
/// - U: the all-ones antidiagonal over the quadratic field.
pub fn form_spec(family: GroupFamily, dim: usize, field: &Field) -> Option<FormSpec> {
    let mut col: Vec<usize> = (0..dim).map(|k| dim - 1 - k).collect();
    let mut weight: Vec<FieldElement> = vec![1; dim];
    match family {
        GroupFamily::Gl => return None,
        GroupFamily::Sp => {
            assert!(dim.is_multiple_of(2));
            for w in &mut weight[dim / 2..] {
                *w = field.neg(1);
            }
        }
        GroupFamily::OrthoPlus | GroupFamily::OrthoOdd | GroupFamily::Unitary => {}
        GroupFamily::OrthoMinus => {
            assert!(dim.is_multiple_of(2));
            let n = dim / 2;
            col[n - 1] = n - 1;
            col[n] = n;
            weight[n] = field.neg(field.smallest_nonsquare());
        }
        GroupFamily::OrthoSum => return None,
    }
    Some(FormSpec {
        family,
        dim,
        col,
        weight,
    })
}

/// Does a preserve the bilinear form: transpose(a) * J * a == J?
fn preserves_bilinear(a: &MatrixElement, form: &FormSpec, field: &Field) -> bool {
    let d = a.dim;
    for i in 0..d {
        for j in 0..d {
            // (Jt a)_{kj} summed against column i of a, using the sparse J.
            let mut s = 0u64;
            for k in 0..d {
                let left = a.get(k, i);
                if left == 0 {
                    continue;
                }
                let right = a.get(form.col[k], j);
                s = field.add(s, field.mul(left, field.mul(form.weight[k], right)));
            }
            if s != form.entry(i, j) {
                return false;
            }
        }
    }
    true
}

/// Does a preserve the hermitian form: a * J * conj(a)^t == J?
fn preserves_hermitian(a: &MatrixElement, form: &FormSpec, field: &Field) -> bool {
    let d = a.dim;
    for i in 0..d {
        for j in 0..d {
            let mut s = 0u64;
            for k in 0..d {
                let left = a.get(i, k);
                if left == 0 {
                    continue;
                }
                // J's row k has its nonzero at col[k].
                let right = field.conj(a.get(j, form.col[k]));
                s = field.add(s, field.mul(left, field.mul(form.weight[k], right)));
            }
            if s != form.entry(i, j) {
                return false;
            }
        }
    }
    true
}

/// Budget and parallelism knobs for the enumeration.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Maximum admissible candidate count q^{dim^2 * field degree}.
    pub budget: u64,
    /// Worker threads for the candidate scan.
    pub jobs: usize,
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

impl OracleConfig {
    /// Default configuration with the budget overridable through the
    /// ROOTCOUNT_BUDGET environment variable.
    pub fn from_env() -> Self {
        let budget = std::env::var("ROOTCOUNT_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        OracleConfig {
            budget,
            ..Default::default()
        }
    }
}

/// The field a family's matrices live over.
pub fn field_for(family: GroupFamily, q: u64) -> Result<Field, Error> {
    match family {
        GroupFamily::Unitary => Field::quadratic(q),
        _ => Field::prime(q),
    }
}

fn check_dim(family: GroupFamily, dim: usize) -> Result<(), Error> {
    let ok = match family {
        GroupFamily::Gl | GroupFamily::Unitary => dim >= 1,
        GroupFamily::Sp | GroupFamily::OrthoPlus | GroupFamily::OrthoMinus => {
            dim >= 2 && dim.is_multiple_of(2)
        }
        GroupFamily::OrthoOdd => dim % 2 == 1,
        GroupFamily::OrthoSum => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::BadDimension { dim, family })
    }
}

/// Lists every element of the group by scanning all q^{dim^2} candidate
/// matrices, in increasing candidate order (row-major digits, least
/// significant entry first).
///
/// # Errors
/// Rejects non-prime q, dimensions of the wrong parity, the `OrthoSum`
/// pseudo-family, and candidate spaces beyond the budget.
pub fn enumerate_group(
    family: GroupFamily,
    dim: usize,
    q: u64,
    cfg: &OracleConfig,
) -> Result<Vec<MatrixElement>, Error> {
    check_dim(family, dim)?;
    let field = field_for(family, q)?;
    let total: u128 = (field.size() as u128).pow((dim * dim) as u32);
    if total > cfg.budget as u128 {
        return Err(Error::BudgetExceeded {
            candidates: total,
            budget: cfg.budget,
        });
    }
    let form = form_spec(family, dim, &field);
    let pred = move |m: &MatrixElement, f: &Field| match family {
        GroupFamily::Gl => m.is_invertible(f),
        GroupFamily::Unitary => preserves_hermitian(m, form.as_ref().unwrap(), f),
        _ => preserves_bilinear(m, form.as_ref().unwrap(), f),
    };
    Ok(scan(&field, dim, total as u64, cfg.jobs.max(1), &pred))
}

/// Parallel scan over candidate indices; chunks are concatenated in index
/// order, so the output is deterministic regardless of the job count.
fn scan<F>(field: &Field, dim: usize, total: u64, jobs: usize, pred: &F) -> Vec<MatrixElement>
where
    F: Fn(&MatrixElement, &Field) -> bool + Sync,
{
    let jobs = jobs.min(total.max(1) as usize).max(1);
    let chunk = total / jobs as u64 + 1;
    let mut results: Vec<Vec<MatrixElement>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..jobs as u64 {
            let start = w * chunk;
            let end = ((w + 1) * chunk).min(total);
            let field_ref = &field;
            handles.push(scope.spawn(move || {
                let mut found = Vec::new();
                let mut m = MatrixElement::zero(dim);
                for idx in start..end {
                    decode(idx, field_ref.size(), &mut m);
                    if pred(&m, field_ref) {
                        found.push(m.clone());
                    }
                }
                found
            }));
        }
        for h in handles {
            results.push(h.join().expect("scan worker panicked"));
        }
    });
    results.concat()
}

/// Writes the candidate with the given index into `m` (row-major base-size
/// digits, entry (0,0) least significant).
fn decode(idx: u64, size: u64, m: &mut MatrixElement) {
    let mut rest = idx;
    for e in m.entries.iter_mut() {
        *e = rest % size;
        rest /= size;
    }
}

/// Number of x in the group with x^M = 1, by direct exponentiation.
pub fn count_mth_roots(
    family: GroupFamily,
    dim: usize,
    q: u64,
    m: u64,
    cfg: &OracleConfig,
) -> Result<u64, Error> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    let field = field_for(family, q)?;
    let group = enumerate_group(family, dim, q, cfg)?;
    Ok(group
        .iter()
        .filter(|x| x.pow(m, &field).is_identity())
        .count() as u64)
}

/// Root counts split by element type.  The identity is counted once, in
/// the semisimple bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitCounts {
    /// Order coprime to the characteristic (includes the identity).
    pub semisimple: u64,
    /// Order a positive power of the characteristic.
    pub unipotent: u64,
    /// Everything else.
    pub mixed: u64,
}

impl SplitCounts {
    pub fn total(&self) -> u64 {
        self.semisimple + self.unipotent + self.mixed
    }
}

/// Splits the M-th roots among already-enumerated elements by whether
/// their order is prime to p, a power of p, or mixed.
pub fn split_root_elements(group: &[MatrixElement], field: &Field, m: u64) -> SplitCounts {
    assert!(m >= 1);
    let p = field.characteristic();
    let mut split = SplitCounts {
        semisimple: 0,
        unipotent: 0,
        mixed: 0,
    };
    for x in group {
        if !x.pow(m, field).is_identity() {
            continue;
        }
        // The order of a root divides M, so scan M's divisors.
        let order = crate::numtheory::divisors(m)
            .into_iter()
            .find(|&d| x.pow(d, field).is_identity())
            .expect("x^M = 1 guarantees the order divides M");
        if num_integer::gcd(order, p) == 1 {
            split.semisimple += 1;
        } else if is_p_power(order, p) {
            split.unipotent += 1;
        } else {
            split.mixed += 1;
        }
    }
    split
}

/// Splits the M-th roots by whether their order is prime to p, a power of
/// p, or mixed.
pub fn count_split_roots(
    family: GroupFamily,
    dim: usize,
    q: u64,
    m: u64,
    cfg: &OracleConfig,
) -> Result<SplitCounts, Error> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    let field = field_for(family, q)?;
    let group = enumerate_group(family, dim, q, cfg)?;
    Ok(split_root_elements(&group, &field, m))
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Number of elements of p-power order (including the identity): the
/// unipotent census of the group.
pub fn count_unipotent(
    family: GroupFamily,
    dim: usize,
    q: u64,
    cfg: &OracleConfig,
) -> Result<u64, Error> {
    let field = field_for(family, q)?;
    let p = field.characteristic();
    let group = enumerate_group(family, dim, q, cfg)?;
    // x is unipotent iff x^{p^k} = 1 once p^k reaches the dimension.
    let mut pk = 1u64;
    while pk < dim as u64 {
        pk *= p;
    }
    Ok(group
        .iter()
        .filter(|x| x.pow(pk, &field).is_identity())
        .count() as u64)
}

/// Multiplicative order of an invertible matrix, by iteration.
///
/// # Errors
/// [`Error::Singular`] when the matrix is not invertible.
pub fn element_order(field: &Field, x: &MatrixElement) -> Result<u64, Error> {
    if !x.is_invertible(field) {
        return Err(Error::Singular);
    }
    // The order divides |GL_dim| over this field; saturate the cap rather
    // than worry about overflow, iteration stops at the true order anyway.
    let cap = group_order(GroupFamily::Gl, x.dim as u64, &Int::from(field.size()));
    let cap = u64::try_from(&cap).unwrap_or(u64::MAX);
    let mut acc = x.clone();
    let mut k = 1u64;
    while !acc.is_identity() {
        acc = acc.mul(x, field);
        k += 1;
        assert!(k <= cap, "order iteration exceeded the group order bound");
    }
    Ok(k)
}
