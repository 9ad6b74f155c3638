//! Truncated formal power series and closed-form classical group orders.
//!
//! All generating functions in this crate are graded by matrix dimension
//! and truncated at a fixed order, so a dense coefficient vector is the
//! right representation.  The coefficient ring is generic: proportions use
//! exact rationals, class counts use big integers; see the aliases at the
//! crate root.

use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::genfun::GroupFamily;
use crate::{Int, Rat};

/// Coefficient ring bound for [`Series`]: the usual ring operations plus
/// clones.  Blanket-implemented; `BigInt` and `BigRational` both qualify.
pub trait Coeff:
    Clone + Zero + One + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + AddAssign
{
}

impl<T> Coeff for T where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + AddAssign
{
}

/// A power series truncated at a fixed order: coefficients of z^0 .. z^N.
///
/// Arithmetic requires both operands to share the same truncation order;
/// mixing orders is a caller bug and panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Series<T> {
    /// The zero series truncated at order `trunc`.
    pub fn zero(trunc: usize) -> Self {
        Series {
            coeffs: vec![T::zero(); trunc + 1],
        }
    }

    /// The constant series 1.
    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, T::one(), trunc)
    }

    /// The series c * z^k; a `k` beyond the truncation order simply
    /// truncates to zero.
    pub fn monomial(k: usize, c: T, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from the coefficients of z^0 .. z^N (N inferred).
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Series { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of z^n.
    pub fn coeff(&self, n: usize) -> &T {
        assert!(n <= self.trunc(), "coefficient index beyond truncation");
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, value: T) {
        assert!(n <= self.trunc(), "coefficient index beyond truncation");
        self.coeffs[n] = value;
    }

    /// Adds `c * z^k` in place.
    pub fn add_term(&mut self, k: usize, c: T) {
        if k <= self.trunc() {
            self.coeffs[k] += c;
        }
    }

    /// Cauchy product, truncated.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.trunc(),
            rhs.trunc(),
            "series truncation orders must match"
        );
        let n = self.trunc();
        let mut out = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let term = self.coeffs[i].clone() * rhs.coeffs[j].clone();
                out.coeffs[i + j] += term;
            }
        }
        out
    }

    /// k-th power by repeated squaring; `pow(0)` is the constant 1.
    pub fn pow(&self, k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.trunc());
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.trunc(),
            rhs.trunc(),
            "series truncation orders must match"
        );
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Series { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.trunc(),
            rhs.trunc(),
            "series truncation orders must match"
        );
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Series { coeffs }
    }
}

impl<T: Coeff> Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, rhs: &Series<T>) -> Series<T> {
        Series::mul(self, rhs)
    }
}

impl<T: Coeff> Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, rhs: &Series<T>) -> Series<T> {
        Series::add(self, rhs)
    }
}

impl<T: Coeff> Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, rhs: &Series<T>) -> Series<T> {
        Series::sub(self, rhs)
    }
}

/// The geometric series 1 / (1 - z^t), truncated: coefficient 1 at every
/// multiple of t.
pub fn geometric_series<T: Coeff>(t: usize, trunc: usize) -> Series<T> {
    assert!(t >= 1, "geometric step must be at least 1");
    let mut s = Series::zero(trunc);
    let mut k = 0;
    while k <= trunc {
        s.set_coeff(k, T::one());
        k += t;
    }
    s
}

/// Order of the classical group of the given family in dimension n over a
/// base of size `base` (which must be at least 2).
///
/// Dimension here is always the natural matrix dimension: Sp and the even
/// orthogonal families require even n, the odd orthogonal family odd n.
/// For odd n the two orthogonal types coincide, and both signed variants
/// return that common order.  By convention every family has order 1 in
/// dimension 0.
///
/// # Panics
/// On base < 2, on a parity mismatch between family and dimension, and on
/// `OrthoSum`, which is a pair of groups rather than one.
pub fn group_order(family: GroupFamily, n: u64, base: &Int) -> Int {
    assert!(base >= &BigInt::from(2), "group orders need a base >= 2");
    if n == 0 {
        return Int::one();
    }
    match family {
        GroupFamily::Gl => {
            // prod_{i=0}^{n-1} (base^n - base^i)
            let bn = base.pow(n as u32);
            let mut acc = Int::one();
            for i in 0..n {
                acc *= &bn - base.pow(i as u32);
            }
            acc
        }
        GroupFamily::Unitary => {
            // base^{n(n-1)/2} * prod_{i=1}^{n} (base^i - (-1)^i)
            let mut acc = base.pow((n * (n - 1) / 2) as u32);
            for i in 1..=n {
                let sign = if i % 2 == 0 { Int::one() } else { -Int::one() };
                acc *= base.pow(i as u32) - sign;
            }
            acc
        }
        GroupFamily::Sp => {
            assert!(n.is_multiple_of(2), "symplectic groups need even dimension");
            let k = n / 2;
            let mut acc = base.pow((k * k) as u32);
            for i in 1..=k {
                acc *= base.pow(2 * i as u32) - Int::one();
            }
            acc
        }
        GroupFamily::OrthoPlus | GroupFamily::OrthoMinus => {
            if n % 2 == 1 {
                return odd_ortho_order(n, base);
            }
            let k = n / 2;
            let eps = if family == GroupFamily::OrthoPlus {
                Int::one()
            } else {
                -Int::one()
            };
            let mut acc = Int::from(2) * base.pow((k * (k - 1)) as u32);
            acc *= base.pow(k as u32) - eps;
            for i in 1..k {
                acc *= base.pow(2 * i as u32) - Int::one();
            }
            acc
        }
        GroupFamily::OrthoOdd => {
            assert!(n % 2 == 1, "this family is the odd-dimensional orthogonal group");
            odd_ortho_order(n, base)
        }
        GroupFamily::OrthoSum => {
            panic!("OrthoSum is a pair of groups; ask for a signed type or OrthoOdd")
        }
    }
}

fn odd_ortho_order(n: u64, base: &Int) -> Int {
    let k = (n - 1) / 2;
    let mut acc = Int::from(2) * base.pow((k * k) as u32);
    for i in 1..=k {
        acc *= base.pow(2 * i as u32) - Int::one();
    }
    acc
}

/// 1 / order as a rational, a convenience used all over the builders.
pub fn inverse_order(family: GroupFamily, n: u64, base: &Int) -> Rat {
    Rat::new(Int::one(), group_order(family, n, base))
}

/// Renders a rational as "num/den" with the sign on the numerator.
pub fn rat_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses the "num/den" form produced by [`rat_string`].
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = s.split_once('/')?;
    let numer: Int = n.parse().ok()?;
    let denom: Int = d.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Rat::new(numer, denom))
}

/// True when the rational is a (non-negative or any) integer.
pub fn rat_is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Extracts the integer value of a rational known to be integral.
///
/// # Panics
/// If the rational is not an integer.
pub fn rat_to_int(x: &Rat) -> Int {
    assert!(rat_is_integer(x), "expected an integer, got {x}");
    x.numer().clone()
}

/// |x| for big integers, used when a signed centralizer value is known to
/// carry a predictable sign.
pub fn int_abs(x: &Int) -> Int {
    x.abs()
}
