//! Generating functions for M-th roots of the identity.
//!
//! Everything here is graded by matrix dimension: the coefficient of z^n
//! is the proportion (or count) attached to the group of n-by-n matrices
//! in the chosen family.  The builders multiply one factor per divisor
//! class slot, where each factor sums over the partitions that can decorate
//! a block of that shape:
//!
//! - [`root_proportion_series`]: proportion of x with x^M = 1 per dimension,
//!   either for all roots or restricted to semisimple ones,
//! - [`semisimple_class_series`]: number of conjugacy classes of such roots
//!   when gcd(M, q) = 1,
//! - [`ortho_diff_semisimple_series`]: the plus-minus difference series for
//!   the two even orthogonal types,
//! - [`bounded_partition_series`]: partition counts with bounded parts (the
//!   unipotent block spectrum),
//! - [`enumerate_root_classes`]: the individual class data behind the
//!   coefficients, with exact centralizer orders,
//! - [`prime_case_proportion`]: an independent closed-form evaluation for
//!   prime M with q = -1 mod M.
//!
//! Conventions for the series coefficients:
//! - GL and U: coefficient of z^n is the proportion in dimension n.
//! - Sp: odd coefficients vanish; the coefficient of z^{2k} is the
//!   proportion in Sp_{2k}.
//! - OrthoSum: the coefficient of z^n is the sum of the proportions over
//!   the two types for even n, and twice the common proportion for odd n.

use num_traits::{One, Signed, Zero};

use crate::numtheory::{
    classify_divisors, min_negation_exponent, odd_prime_base, split_root_problem, DivisorClass,
    FactorKind,
};
use crate::partitions::{
    centralizer_gl, centralizer_signed, gen_partitions, gen_signed, Partition, SignedKind,
    SignedPartition,
};
use crate::qseries::{geometric_series, group_order, rat_to_int};
use crate::{Error, Int, IntSeries, Rat, RatSeries};

/// Families of classical groups handled by the series builders and the
/// oracle.  `OrthoSum` is the even-dimensional pair O+ and O- taken
/// together (plus the single odd-dimensional group at odd n); the three
/// individual orthogonal variants are oracle-side handles and have no
/// generating function of their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    Gl,
    Unitary,
    Sp,
    OrthoSum,
    OrthoPlus,
    OrthoMinus,
    OrthoOdd,
}

impl GroupFamily {
    pub fn label(self) -> &'static str {
        match self {
            GroupFamily::Gl => "gl",
            GroupFamily::Unitary => "u",
            GroupFamily::Sp => "sp",
            GroupFamily::OrthoSum => "o-sum",
            GroupFamily::OrthoPlus => "o+",
            GroupFamily::OrthoMinus => "o-",
            GroupFamily::OrthoOdd => "o-odd",
        }
    }
}

impl std::fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Whether a proportion series counts every root or only semisimple ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootScope {
    All,
    SemisimpleOnly,
}

/// Truncation orders beyond this are refused; partition enumeration cost
/// grows quickly and nothing in the acceptance surface needs more.
pub const MAX_TRUNC: usize = 128;

fn check_trunc(trunc: usize) -> Result<(), Error> {
    if trunc > MAX_TRUNC {
        Err(Error::TruncationTooLarge(trunc, MAX_TRUNC))
    } else {
        Ok(())
    }
}

/// Proportion of elements x with x^M = 1, per dimension, as a truncated
/// series (see the module docs for the per-family grading conventions).
///
/// With [`RootScope::SemisimpleOnly`] the unipotent parts are frozen at the
/// identity and the factors collapse to reciprocal group orders; this path
/// deliberately avoids the partition machinery so the two scopes
/// cross-check each other when gcd(M, q) = 1.
pub fn root_proportion_series(
    family: GroupFamily,
    q: u64,
    m: u64,
    trunc: usize,
    scope: RootScope,
) -> Result<RatSeries, Error> {
    check_trunc(trunc)?;
    match family {
        GroupFamily::Gl | GroupFamily::Unitary | GroupFamily::Sp | GroupFamily::OrthoSum => {}
        other => return Err(Error::UnsupportedFamily(other)),
    }
    let rp = split_root_problem(m, q)?;
    let classes = classify_divisors(rp.t, q, family)?;
    let bound = rp.unipotent_bound();
    let mut series = RatSeries::one(trunc);
    for class in &classes {
        let factor = match scope {
            RootScope::All => full_factor(family, class, q, bound, trunc),
            RootScope::SemisimpleOnly => semisimple_factor(family, class, q, trunc),
        };
        series = series.mul(&factor.pow(class.factor_count));
    }
    Ok(series)
}

/// One generating-function factor in the all-roots scope: a sum over
/// partitions bounded by the largest allowed Jordan block.
fn full_factor(
    family: GroupFamily,
    class: &DivisorClass,
    q: u64,
    bound: u64,
    trunc: usize,
) -> RatSeries {
    match (&class.kind, family) {
        (FactorKind::Linear { .. }, GroupFamily::Sp) => {
            signed_block_factor(SignedKind::Symplectic, q, bound, trunc)
        }
        (FactorKind::Linear { .. }, GroupFamily::OrthoSum) => {
            signed_block_factor(SignedKind::Orthogonal, q, bound, trunc)
        }
        // GL blocks take the centralizer base as-is; everything with a
        // negative base (unitary-type centralizers) alternates, and the two
        // signs cancel into strictly positive terms.
        _ => {
            let base = class.centralizer_base(family, q);
            let alternating = base.is_negative();
            plain_block_factor(&base, class.block_dim(family), bound, trunc, alternating)
        }
    }
}

/// 1 + sum over nonempty bounded partitions of
/// (+-1)^{|lambda|} z^{|lambda| * block_dim} / centralizer.
fn plain_block_factor(
    base: &Int,
    block_dim: u64,
    bound: u64,
    trunc: usize,
    alternating: bool,
) -> RatSeries {
    debug_assert!(block_dim >= 1);
    let mut f = RatSeries::zero(trunc);
    f.add_term(0, Rat::one());
    let mut units = 1u64;
    while units * block_dim <= trunc as u64 {
        let mut total = Rat::zero();
        for lam in gen_partitions(units, Some(bound), None) {
            total += Rat::one() / centralizer_gl(&lam, base);
        }
        if alternating && units % 2 == 1 {
            total = -total;
        }
        f.add_term((units * block_dim) as usize, total);
        units += 1;
    }
    f
}

/// The eigenvalue-(+-1) factor for symplectic/orthogonal families: a sum
/// over signed partitions with bounded parts, graded by partition size.
fn signed_block_factor(kind: SignedKind, q: u64, bound: u64, trunc: usize) -> RatSeries {
    let mut f = RatSeries::zero(trunc);
    for n in 0..=trunc as u64 {
        let mut total = Rat::zero();
        for lam in gen_signed(kind, n, Some(bound)) {
            total += Rat::one() / centralizer_signed(&lam, q);
        }
        f.add_term(n as usize, total);
    }
    f
}

/// One factor in the semisimple-only scope: reciprocal group orders,
/// no partition enumeration.
fn semisimple_factor(
    family: GroupFamily,
    class: &DivisorClass,
    q: u64,
    trunc: usize,
) -> RatSeries {
    let qi = Int::from(q);
    let base_abs = class.centralizer_base(family, q).abs();
    let block_dim = class.block_dim(family);
    match (&class.kind, family) {
        (FactorKind::Linear { .. }, GroupFamily::Gl) => {
            order_sum_factor(|k| group_order(GroupFamily::Gl, k, &qi), 1, trunc, false)
        }
        (FactorKind::Linear { .. }, GroupFamily::Unitary) => {
            order_sum_factor(|k| group_order(GroupFamily::Unitary, k, &qi), 1, trunc, false)
        }
        (FactorKind::Linear { .. }, GroupFamily::Sp) => {
            order_sum_factor(|k| group_order(GroupFamily::Sp, 2 * k, &qi), 2, trunc, false)
        }
        (FactorKind::Linear { .. }, GroupFamily::OrthoSum) => {
            ortho_linear_semisimple(q, trunc, false)
        }
        (FactorKind::Linear { .. }, _) => {
            unreachable!("series are only built for GL, U, Sp, and the orthogonal sum")
        }
        (FactorKind::SelfDual { .. }, _) | (FactorKind::SelfConjugate { .. }, _) => {
            order_sum_factor(
                |k| group_order(GroupFamily::Unitary, k, &base_abs),
                block_dim,
                trunc,
                false,
            )
        }
        (FactorKind::Paired { .. }, _) => order_sum_factor(
            |k| group_order(GroupFamily::Gl, k, &base_abs),
            block_dim,
            trunc,
            false,
        ),
    }
}

/// 1 + sum_{k >= 1} (+-1)^k z^{k * block_dim} / order(k).
fn order_sum_factor<F: Fn(u64) -> Int>(
    order_of: F,
    block_dim: u64,
    trunc: usize,
    twist: bool,
) -> RatSeries {
    let mut f = RatSeries::zero(trunc);
    f.add_term(0, Rat::one());
    let mut k = 1u64;
    while k * block_dim <= trunc as u64 {
        let mut term = Rat::new(Int::one(), order_of(k));
        if twist && k % 2 == 1 {
            term = -term;
        }
        f.add_term((k * block_dim) as usize, term);
        k += 1;
    }
    f
}

/// The semisimple eigenvalue-(+-1) factor for the orthogonal pair: both
/// types contribute in even dimensions, the single odd-dimensional group
/// twice in odd ones.  With `diff` the minus type is subtracted instead,
/// which kills the odd terms.
fn ortho_linear_semisimple(q: u64, trunc: usize, diff: bool) -> RatSeries {
    let qi = Int::from(q);
    let mut f = RatSeries::zero(trunc);
    f.add_term(0, Rat::one());
    for n in 1..=trunc as u64 {
        let term = if n % 2 == 0 {
            let plus = Rat::new(Int::one(), group_order(GroupFamily::OrthoPlus, n, &qi));
            let minus = Rat::new(Int::one(), group_order(GroupFamily::OrthoMinus, n, &qi));
            if diff {
                plus - minus
            } else {
                plus + minus
            }
        } else if diff {
            Rat::zero()
        } else {
            Rat::new(Int::from(2), group_order(GroupFamily::OrthoOdd, n, &qi))
        };
        f.add_term(n as usize, term);
    }
    f
}

/// Difference of the semisimple root proportions between the plus and
/// minus even orthogonal types: the coefficient of z^{2k} is
/// (proportion in O+_{2k}) - (proportion in O-_{2k}).
///
/// # Errors
/// Requires gcd(M, q) = 1; only the semisimple difference has a product
/// formula.
pub fn ortho_diff_semisimple_series(q: u64, m: u64, trunc: usize) -> Result<RatSeries, Error> {
    check_trunc(trunc)?;
    let rp = split_root_problem(m, q)?;
    if rp.r != 0 {
        return Err(Error::NotSemisimpleCase { m, q });
    }
    let classes = classify_divisors(rp.t, q, GroupFamily::OrthoSum)?;
    let mut series = RatSeries::one(trunc);
    for class in &classes {
        let base_abs = class.centralizer_base(GroupFamily::OrthoSum, q).abs();
        let block_dim = class.block_dim(GroupFamily::OrthoSum);
        let factor = match &class.kind {
            FactorKind::Linear { .. } => ortho_linear_semisimple(q, trunc, true),
            // Self-dual factors flip sign per block multiplicity in the
            // difference; paired factors are type-blind.
            FactorKind::SelfDual { .. } => order_sum_factor(
                |k| group_order(GroupFamily::Unitary, k, &base_abs),
                block_dim,
                trunc,
                true,
            ),
            FactorKind::Paired { .. } => order_sum_factor(
                |k| group_order(GroupFamily::Gl, k, &base_abs),
                block_dim,
                trunc,
                false,
            ),
            FactorKind::SelfConjugate { .. } => {
                unreachable!("orthogonal classification never yields conjugate-self-reciprocal factors")
            }
        };
        series = series.mul(&factor.pow(class.factor_count));
    }
    Ok(series)
}

/// Number of conjugacy classes of M-th roots of the identity per dimension,
/// for gcd(M, q) = 1 (each class is semisimple, so the count is a product
/// of geometric factors counting multiplicity spectra).
pub fn semisimple_class_series(
    family: GroupFamily,
    q: u64,
    m: u64,
    trunc: usize,
) -> Result<IntSeries, Error> {
    check_trunc(trunc)?;
    match family {
        GroupFamily::Gl | GroupFamily::Unitary | GroupFamily::Sp => {}
        other => return Err(Error::UnsupportedFamily(other)),
    }
    let rp = split_root_problem(m, q)?;
    if rp.r != 0 {
        return Err(Error::NotSemisimpleCase { m, q });
    }
    let classes = classify_divisors(rp.t, q, family)?;
    let mut series = IntSeries::one(trunc);
    for class in &classes {
        // An eigenvalue +-1 block in Sp always has even dimension; every
        // other step is the block dimension itself.
        let step = match (&class.kind, family) {
            (FactorKind::Linear { .. }, GroupFamily::Sp) => 2,
            _ => class.block_dim(family),
        } as usize;
        let factor: IntSeries = geometric_series(step, trunc);
        series = series.mul(&factor.pow(class.factor_count));
    }
    Ok(series)
}

/// Number of partitions of each r <= trunc with all parts at most
/// `max_part`: the spectrum of unipotent Jordan shapes with x^{p^e} = 1
/// once p^e >= max_part.
pub fn bounded_partition_series(max_part: u64, trunc: usize) -> IntSeries {
    let mut series = IntSeries::one(trunc);
    let mut t = 1u64;
    while t <= max_part && t <= trunc as u64 {
        let factor: IntSeries = geometric_series(t as usize, trunc);
        series = series.mul(&factor);
        t += 1;
    }
    series
}

/// A partition decorating one block slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockPartition {
    Plain(Partition),
    Signed(SignedPartition),
}

impl std::fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BlockPartition::Plain(p) => write!(f, "{p}"),
            BlockPartition::Signed(s) => write!(f, "{s}"),
        }
    }
}

/// One block of a root class: which divisor class it sits in, which of the
/// identical factor slots, and the partition on that slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAssignment {
    pub class_index: usize,
    pub slot: u64,
    pub lambda: BlockPartition,
}

/// A conjugacy class of M-th roots in dimension n: its block decomposition
/// and exact centralizer order.  The class size is the group order divided
/// by the centralizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDatum {
    pub blocks: Vec<BlockAssignment>,
    pub centralizer: Int,
    pub dimension: u64,
}

/// Enumerates every conjugacy class of x with x^M = 1 in the dimension-n
/// group of the family (GL, Sp, or U), in a deterministic order.
///
/// The sum of group_order / centralizer over the result is the exact root
/// count; this is the class-level cross-check between the series and the
/// brute-force oracle.
pub fn enumerate_root_classes(
    family: GroupFamily,
    q: u64,
    m: u64,
    dim: u64,
) -> Result<Vec<ClassDatum>, Error> {
    match family {
        GroupFamily::Gl | GroupFamily::Unitary | GroupFamily::Sp => {}
        other => return Err(Error::UnsupportedFamily(other)),
    }
    let rp = split_root_problem(m, q)?;
    let classes = classify_divisors(rp.t, q, family)?;
    let bound = rp.unipotent_bound();

    // Precompute, per slot, every decoration with its dimension and
    // centralizer contribution.  Identical slots share an option table.
    struct SlotOptions {
        class_index: usize,
        slots: u64,
        // (dimension used, centralizer, partition), nonempty options only.
        options: Vec<(u64, Int, BlockPartition)>,
    }
    let mut tables: Vec<SlotOptions> = Vec::new();
    for (class_index, class) in classes.iter().enumerate() {
        let mut options = Vec::new();
        match (&class.kind, family) {
            (FactorKind::Linear { .. }, GroupFamily::Sp) => {
                for n in 1..=dim {
                    for lam in gen_signed(SignedKind::Symplectic, n, Some(bound)) {
                        let c = rat_to_int(&centralizer_signed(&lam, q));
                        options.push((n, c, BlockPartition::Signed(lam)));
                    }
                }
            }
            _ => {
                let base = class.centralizer_base(family, q);
                let block_dim = class.block_dim(family);
                let mut units = 1u64;
                while units * block_dim <= dim {
                    for lam in gen_partitions(units, Some(bound), None) {
                        let c = rat_to_int(&centralizer_gl(&lam, &base)).abs();
                        options.push((units * block_dim, c, BlockPartition::Plain(lam)));
                    }
                    units += 1;
                }
            }
        }
        tables.push(SlotOptions {
            class_index,
            slots: class.factor_count,
            options,
        });
    }

    // Walk the slots in order; each takes one option or stays empty.
    struct Walk<'a> {
        tables: &'a [SlotOptions],
        dim: u64,
        blocks: Vec<BlockAssignment>,
        out: Vec<ClassDatum>,
    }
    impl Walk<'_> {
        fn recurse(&mut self, table_idx: usize, slot: u64, remaining: u64, centralizer: Int) {
            let tables = self.tables;
            if table_idx == tables.len() {
                if remaining == 0 {
                    self.out.push(ClassDatum {
                        blocks: self.blocks.clone(),
                        centralizer,
                        dimension: self.dim,
                    });
                }
                return;
            }
            let table = &tables[table_idx];
            let (next_idx, next_slot) = if slot + 1 < table.slots {
                (table_idx, slot + 1)
            } else {
                (table_idx + 1, 0)
            };
            // Leave this slot empty.
            self.recurse(next_idx, next_slot, remaining, centralizer.clone());
            for (used, c, lambda) in &table.options {
                if *used > remaining {
                    continue;
                }
                self.blocks.push(BlockAssignment {
                    class_index: table.class_index,
                    slot,
                    lambda: lambda.clone(),
                });
                self.recurse(next_idx, next_slot, remaining - used, centralizer.clone() * c);
                self.blocks.pop();
            }
        }
    }
    let mut walk = Walk {
        tables: &tables,
        dim,
        blocks: Vec::new(),
        out: Vec::new(),
    };
    walk.recurse(0, 0, dim, Int::one());
    Ok(walk.out)
}

/// Exact root count in dimension n obtained by summing class sizes from
/// [`enumerate_root_classes`].
pub fn count_from_classes(family: GroupFamily, q: u64, m: u64, dim: u64) -> Result<Int, Error> {
    let data = enumerate_root_classes(family, q, m, dim)?;
    let order = group_order(family, dim, &Int::from(q));
    let mut total = Int::zero();
    for datum in &data {
        let (quot, rem) = num_integer::Integer::div_rem(&order, &datum.centralizer);
        assert!(rem.is_zero(), "centralizer does not divide the group order");
        total += quot;
    }
    Ok(total)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Closed-form proportion of M-th roots for an odd prime M with
/// q = -1 (mod M), evaluated directly (no series convolution): the
/// cyclotomic part contributes (M-1)/2 quadratic slots whose multiplicity
/// spectra are summed with multinomial weights.
///
/// For GL, `dim` is the matrix dimension n; for Sp it must be even.
/// Cross-checks [`root_proportion_series`] on a completely different
/// evaluation route.
pub fn prime_case_proportion(
    family: GroupFamily,
    dim: u64,
    q: u64,
    m: u64,
) -> Result<Rat, Error> {
    odd_prime_base(q).ok_or(Error::BadFieldSize(q))?;
    if !(is_prime(m) && m % 2 == 1 && m >= 3 && q % m == m - 1) {
        return Err(Error::PrimeCaseHypothesis { m, q });
    }
    let slots = (m - 1) / 2;
    let qi = Int::from(q);
    match family {
        GroupFamily::Gl => {
            // The +1 eigenvalue block has dimension j (same parity as n);
            // the rest is split among quadratic slots over F_{q^2}.
            let q2 = (&qi) * (&qi);
            let mut total = Rat::zero();
            for j in 0..=dim {
                if !(dim - j).is_multiple_of(2) {
                    continue;
                }
                let rest = (dim - j) / 2;
                let linear = Rat::new(Int::one(), group_order(GroupFamily::Gl, j, &qi));
                total += linear
                    * slot_assignment_sum(rest, slots, |part| {
                        Rat::new(Int::one(), group_order(GroupFamily::Gl, part, &q2))
                    });
            }
            Ok(total)
        }
        GroupFamily::Sp => {
            if !dim.is_multiple_of(2) {
                return Err(Error::BadDimension {
                    dim: dim as usize,
                    family,
                });
            }
            // q = -1 mod M makes the minimal negation exponent 1, so every
            // quadratic slot is self-dual with unitary centralizers over
            // F_q; the hypothesis leaves no paired branch to take.
            debug_assert_eq!(min_negation_exponent(q, m), Some(1));
            let k = dim / 2;
            let mut total = Rat::zero();
            for j in 0..=k {
                let linear = Rat::new(Int::one(), group_order(GroupFamily::Sp, 2 * j, &qi));
                total += linear
                    * slot_assignment_sum(k - j, slots, |part| {
                        Rat::new(Int::one(), group_order(GroupFamily::Unitary, part, &qi))
                    });
            }
            Ok(total)
        }
        other => Err(Error::UnsupportedFamily(other)),
    }
}

/// Sum over all ways to hand out a total multiplicity of `total` among
/// `slots` labeled slots: for each partition with at most `slots` parts,
/// the number of assignments times the product of per-part weights.
fn slot_assignment_sum<F: Fn(u64) -> Rat>(total: u64, slots: u64, weight: F) -> Rat {
    let mut acc = Rat::zero();
    for lam in gen_partitions(total, None, Some(slots as usize)) {
        let mut ways = Int::one();
        // slots * (slots-1) * ... over the distinct parts, divided by the
        // multiplicities' factorials: the multinomial count of labelings.
        let mut used = 0u64;
        let mut denom = Int::one();
        for (_, mult) in lam.multiplicities() {
            for _ in 0..mult {
                ways *= Int::from(slots - used);
                used += 1;
            }
            denom *= factorial(mult);
        }
        let (count, rem) = num_integer::Integer::div_rem(&ways, &denom);
        assert!(rem.is_zero());
        let mut term = Rat::from(count);
        for &part in lam.parts() {
            term *= weight(part);
        }
        acc += term;
    }
    acc
}

fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}
