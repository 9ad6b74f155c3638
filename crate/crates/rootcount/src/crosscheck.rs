//! Cross-validation wiring: the same root count computed along independent
//! routes and compared exactly.
//!
//! For GL, U, and Sp a root count has three sources: the coefficient of the
//! proportion series times the group order, the sum of class sizes from the
//! explicit class enumeration, and a brute-force matrix scan when the
//! candidate space fits the budget.  For the orthogonal families the series
//! computes the plus/minus *sum* of proportions, so the oracle counts both
//! forms and the comparison happens at the level of that sum, with the
//! semisimple difference series separating the two forms when gcd(M, q) = 1.

use num_traits::{One, Zero};

use crate::genfun::{
    count_from_classes, ortho_diff_semisimple_series, root_proportion_series, GroupFamily,
    RootScope,
};
use crate::numtheory::split_root_problem;
use crate::oracle::{count_mth_roots, OracleConfig};
use crate::partitions::{
    centralizer_gl, centralizer_signed, gen_partitions, gen_signed, SignedKind,
};
use crate::qseries::{geometric_series, group_order, rat_to_int, Series};
use crate::{Error, Int, Rat, RatSeries};

/// One dimension's comparison for GL, U, or Sp: series route, class route,
/// and (when affordable) the oracle count.
#[derive(Debug, Clone)]
pub struct DimensionCheck {
    pub dim: u64,
    pub proportion: Rat,
    pub series_count: Int,
    pub class_count: Int,
    /// None when the scan is over budget or the field size is not prime.
    pub oracle_count: Option<u64>,
    pub ok: bool,
}

/// Converts a proportion coefficient to an exact element count.
///
/// # Panics
/// When the product is not an integer, which would mean the series is wrong.
pub fn proportion_to_count(family: GroupFamily, dim: u64, q: u64, coeff: &Rat) -> Int {
    let order = group_order(family, dim, &Int::from(q));
    rat_to_int(&(coeff * Rat::from_integer(order)))
}

fn oracle_count_if_feasible(
    family: GroupFamily,
    dim: u64,
    q: u64,
    m: u64,
    cfg: &OracleConfig,
) -> Result<Option<u64>, Error> {
    match count_mth_roots(family, dim as usize, q, m, cfg) {
        Ok(c) => Ok(Some(c)),
        Err(Error::BudgetExceeded { .. }) | Err(Error::OracleFieldUnsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Compares the series, class-enumeration, and oracle root counts for every
/// dimension up to `max_dim` (even dimensions only for Sp).
pub fn check_family(
    family: GroupFamily,
    q: u64,
    m: u64,
    max_dim: u64,
    cfg: &OracleConfig,
) -> Result<Vec<DimensionCheck>, Error> {
    match family {
        GroupFamily::Gl | GroupFamily::Unitary | GroupFamily::Sp => {}
        other => return Err(Error::UnsupportedFamily(other)),
    }
    let series = root_proportion_series(family, q, m, max_dim as usize, RootScope::All)?;
    let step = if family == GroupFamily::Sp { 2 } else { 1 };
    let mut checks = Vec::new();
    let mut dim = step;
    while dim <= max_dim {
        let coeff = series.coeff(dim as usize).clone();
        let series_count = proportion_to_count(family, dim, q, &coeff);
        let class_count = count_from_classes(family, q, m, dim)?;
        let oracle_count = oracle_count_if_feasible(family, dim, q, m, cfg)?;
        let ok = series_count == class_count
            && oracle_count.is_none_or(|c| Int::from(c) == series_count);
        checks.push(DimensionCheck {
            dim,
            proportion: coeff,
            series_count,
            class_count,
            oracle_count,
            ok,
        });
        dim += step;
    }
    Ok(checks)
}

/// One dimension's comparison for the orthogonal pair.
#[derive(Debug, Clone)]
pub struct OrthoDimensionCheck {
    pub dim: u64,
    /// Coefficient of the plus/minus proportion-sum series.
    pub sum_coeff: Rat,
    /// The same combination rebuilt from oracle counts, when affordable.
    pub oracle_sum: Option<Rat>,
    /// Per-form separation through the semisimple difference series:
    /// Some(true) when each form's oracle proportion matches (sum +- diff)/2,
    /// None when the difference series does not apply or the scan is over
    /// budget.
    pub per_form_ok: Option<bool>,
    pub ok: bool,
}

/// Checks the orthogonal proportion-sum series against brute-force counts
/// of both forms, and separates the forms via the difference series when
/// gcd(M, q) = 1.
pub fn check_ortho(
    q: u64,
    m: u64,
    max_dim: u64,
    cfg: &OracleConfig,
) -> Result<Vec<OrthoDimensionCheck>, Error> {
    let sum = root_proportion_series(GroupFamily::OrthoSum, q, m, max_dim as usize, RootScope::All)?;
    let rp = split_root_problem(m, q)?;
    let diff: Option<RatSeries> = if rp.r == 0 {
        Some(ortho_diff_semisimple_series(q, m, max_dim as usize)?)
    } else {
        None
    };
    let mut checks = Vec::new();
    for dim in 1..=max_dim {
        let sum_coeff = sum.coeff(dim as usize).clone();
        let (oracle_sum, per_form_ok);
        if dim % 2 == 0 {
            let plus = oracle_count_if_feasible(GroupFamily::OrthoPlus, dim, q, m, cfg)?;
            let minus = oracle_count_if_feasible(GroupFamily::OrthoMinus, dim, q, m, cfg)?;
            oracle_sum = match (plus, minus) {
                (Some(p), Some(n)) => {
                    let plus_order = group_order(GroupFamily::OrthoPlus, dim, &Int::from(q));
                    let minus_order = group_order(GroupFamily::OrthoMinus, dim, &Int::from(q));
                    Some(
                        Rat::new(Int::from(p), plus_order)
                            + Rat::new(Int::from(n), minus_order),
                    )
                }
                _ => None,
            };
            per_form_ok = match (&diff, plus, minus) {
                (Some(d), Some(p), Some(n)) => {
                    let half = Rat::new(Int::one(), Int::from(2));
                    let d_coeff = d.coeff(dim as usize).clone();
                    let plus_order = group_order(GroupFamily::OrthoPlus, dim, &Int::from(q));
                    let minus_order = group_order(GroupFamily::OrthoMinus, dim, &Int::from(q));
                    let want_plus = (sum_coeff.clone() + d_coeff.clone()) * half.clone();
                    let want_minus = (sum_coeff.clone() - d_coeff) * half;
                    Some(
                        Rat::new(Int::from(p), plus_order) == want_plus
                            && Rat::new(Int::from(n), minus_order) == want_minus,
                    )
                }
                _ => None,
            };
        } else {
            let count = oracle_count_if_feasible(GroupFamily::OrthoOdd, dim, q, m, cfg)?;
            let order = group_order(GroupFamily::OrthoOdd, dim, &Int::from(q));
            // Both odd-dimensional forms are conjugate, so the sum
            // convention counts the same group twice.
            oracle_sum =
                count.map(|c| Rat::new(Int::from(2) * Int::from(c), order));
            // The difference of identical proportions must vanish.
            per_form_ok = diff
                .as_ref()
                .map(|d| d.coeff(dim as usize).is_zero());
        }
        let ok = oracle_sum.as_ref().is_none_or(|s| *s == sum_coeff)
            && per_form_ok != Some(false);
        checks.push(OrthoDimensionCheck {
            dim,
            sum_coeff,
            oracle_sum,
            per_form_ok,
            ok,
        });
    }
    Ok(checks)
}

/// Result of one internal consistency suite.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn suite(name: &'static str, run: impl FnOnce() -> Result<String, String>) -> SuiteResult {
    match run() {
        Ok(detail) => SuiteResult {
            name,
            ok: true,
            detail,
        },
        Err(detail) => SuiteResult {
            name,
            ok: false,
            detail,
        },
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(label: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got:?}, want {want:?}"))
    }
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Runs every internal consistency suite and reports per-suite results.
pub fn selftest() -> Vec<SuiteResult> {
    let cfg = OracleConfig::default();
    vec![
        suite("series-algebra", || {
            for t in 1..=3usize {
                let geo: Series<Rat> = geometric_series(t, 24);
                let mut one_minus = RatSeries::one(24);
                one_minus.add_term(t, -Rat::one());
                expect(
                    &format!("(1 - z^{t}) * geometric"),
                    one_minus.mul(&geo),
                    RatSeries::one(24),
                )?;
            }
            Ok("geometric series inverses".into())
        }),
        suite("unipotent-mass", || {
            // Class sizes of unipotent classes sum to q^{n(n-1)} in GL_n
            // and q^{2k^2} in Sp_2k.
            for n in 1..=4u64 {
                let order = group_order(GroupFamily::Gl, n, &Int::from(3));
                let mut total = Int::zero();
                for lam in gen_partitions(n, None, None) {
                    total += rat_to_int(&(Rat::from_integer(order.clone())
                        / centralizer_gl(&lam, &Int::from(3))));
                }
                expect(&format!("GL_{n}(3)"), total, Int::from(3u64.pow((n * (n - 1)) as u32)))?;
            }
            let order = group_order(GroupFamily::Sp, 4, &Int::from(3));
            let mut total = Int::zero();
            for lam in gen_signed(SignedKind::Symplectic, 4, None) {
                total += rat_to_int(&(Rat::from_integer(order.clone())
                    / centralizer_signed(&lam, 3)));
            }
            expect("Sp_4(3)", total, Int::from(3u64.pow(8)))?;
            Ok("unipotent class sizes sum to the Steinberg power".into())
        }),
        suite("golden-proportions", || {
            let s = root_proportion_series(GroupFamily::Gl, 3, 2, 2, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect("GL_2(3) M=2", s.coeff(2).clone(), rat(7, 24))?;
            let s = root_proportion_series(GroupFamily::Sp, 3, 3, 2, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect("Sp_2(3) M=3", s.coeff(2).clone(), rat(3, 8))?;
            let s = root_proportion_series(GroupFamily::Sp, 3, 4, 2, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect("Sp_2(3) M=4", s.coeff(2).clone(), rat(1, 3))?;
            let s = root_proportion_series(GroupFamily::Unitary, 3, 4, 2, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect("U_2(3) M=4", s.coeff(2).clone(), rat(5, 12))?;
            let s = root_proportion_series(GroupFamily::Gl, 13, 7, 2, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect("GL_2(13) M=7", s.coeff(2).clone(), rat(469, 26208))?;
            let s = root_proportion_series(GroupFamily::Sp, 13, 7, 2, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect("Sp_2(13) M=7", s.coeff(2).clone(), rat(469, 2184))?;
            let s = root_proportion_series(GroupFamily::OrthoSum, 3, 2, 3, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect(
                "O+-(3) M=2 sum",
                s.coeffs().to_vec(),
                vec![rat(1, 1), rat(2, 1), rat(7, 4), rat(5, 6)],
            )?;
            let d = ortho_diff_semisimple_series(3, 2, 2).map_err(|e| e.to_string())?;
            expect("O+- (3) M=2 diff", d.coeff(2).clone(), rat(1, 4))?;
            Ok("frozen anchor coefficients".into())
        }),
        suite("saturation", || {
            let s = root_proportion_series(GroupFamily::Gl, 3, 24, 2, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect("GL_2(3) M=24", s.coeff(2).clone(), Rat::one())?;
            let s = root_proportion_series(GroupFamily::Sp, 3, 12, 2, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect("Sp_2(3) M=12", s.coeff(2).clone(), Rat::one())?;
            let s = root_proportion_series(GroupFamily::Unitary, 3, 24, 2, RootScope::All)
                .map_err(|e| e.to_string())?;
            expect("U_2(3) M=24", s.coeff(2).clone(), Rat::one())?;
            Ok("exponent multiples saturate at proportion 1".into())
        }),
        suite("oracle-anchors", || {
            let pairs: &[(GroupFamily, usize, u64, u64, u64)] = &[
                (GroupFamily::Gl, 2, 3, 2, 14),
                (GroupFamily::Unitary, 2, 3, 4, 40),
                (GroupFamily::OrthoPlus, 2, 3, 2, 4),
                (GroupFamily::Sp, 2, 3, 3, 9),
            ];
            for &(family, dim, q, m, want) in pairs {
                let got =
                    count_mth_roots(family, dim, q, m, &cfg).map_err(|e| e.to_string())?;
                expect(&format!("{family} dim={dim} q={q} M={m}"), got, want)?;
            }
            Ok("brute-force counts at pinned points".into())
        }),
        suite("triple-check", || {
            for (family, q, m) in [
                (GroupFamily::Gl, 3, 4),
                (GroupFamily::Sp, 3, 6),
                (GroupFamily::Unitary, 3, 8),
            ] {
                let checks = check_family(family, q, m, 2, &cfg).map_err(|e| e.to_string())?;
                for c in &checks {
                    if !c.ok {
                        return Err(format!(
                            "{family} q={q} M={m} dim={}: series {} class {} oracle {:?}",
                            c.dim, c.series_count, c.class_count, c.oracle_count
                        ));
                    }
                }
            }
            for c in check_ortho(3, 2, 3, &cfg).map_err(|e| e.to_string())? {
                if !c.ok {
                    return Err(format!("orthogonal dim={}: sum {}", c.dim, c.sum_coeff));
                }
            }
            Ok("series, class, and oracle routes agree".into())
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_checks_hold_on_small_wild_cases() {
        let cfg = OracleConfig::default();
        // M divisible by the characteristic, so unipotent parts are live.
        let checks = check_family(GroupFamily::Gl, 3, 12, 3, &cfg).unwrap();
        assert_eq!(checks.len(), 3);
        for c in &checks {
            assert!(c.ok, "dim {}: {:?}", c.dim, c);
            assert!(c.oracle_count.is_some(), "GL_3(3) is well within budget");
        }
        let checks = check_family(GroupFamily::Sp, 3, 12, 2, &cfg).unwrap();
        assert_eq!(checks.len(), 1);
        assert!(checks[0].ok);
        assert_eq!(checks[0].series_count, Int::from(24));
        let checks = check_family(GroupFamily::Unitary, 3, 6, 2, &cfg).unwrap();
        for c in &checks {
            assert!(c.ok, "dim {}: {:?}", c.dim, c);
        }
    }

    #[test]
    fn family_check_skips_oracle_over_budget() {
        let tight = OracleConfig {
            budget: 1000,
            jobs: 1,
        };
        let checks = check_family(GroupFamily::Gl, 3, 2, 3, &tight).unwrap();
        assert!(checks[0].oracle_count.is_some(), "3^1 candidates fit");
        assert!(checks[1].oracle_count.is_some(), "3^4 = 81 candidates fit");
        assert!(checks[2].oracle_count.is_none(), "3^9 is over budget 1000");
        assert!(checks.iter().all(|c| c.ok));
    }

    #[test]
    fn family_check_skips_oracle_on_prime_powers() {
        let cfg = OracleConfig::default();
        let checks = check_family(GroupFamily::Gl, 9, 2, 2, &cfg).unwrap();
        for c in &checks {
            assert!(c.oracle_count.is_none());
            assert!(c.ok, "series and class routes still agree over F_9");
        }
    }

    #[test]
    fn ortho_checks_hold_with_form_separation() {
        let cfg = OracleConfig::default();
        let checks = check_ortho(3, 2, 4, &cfg).unwrap();
        assert_eq!(checks.len(), 4);
        for c in &checks {
            assert!(c.ok, "dim {}: {:?}", c.dim, c);
            assert!(c.oracle_sum.is_some());
            assert_eq!(c.per_form_ok, Some(true));
        }
        // Wild case: gcd(M, q) > 1 disables the difference series but the
        // sum check still runs.
        let checks = check_ortho(3, 6, 3, &cfg).unwrap();
        for c in &checks {
            assert!(c.ok, "dim {}: {:?}", c.dim, c);
            assert!(c.per_form_ok.is_none());
        }
    }

    #[test]
    fn selftest_passes() {
        let results = selftest();
        assert_eq!(results.len(), 6);
        for r in &results {
            assert!(r.ok, "{}: {}", r.name, r.detail);
        }
    }
}
