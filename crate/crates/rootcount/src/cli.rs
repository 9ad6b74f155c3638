//! Command-line surface: generating-function tables, brute-force counts,
//! route-against-route verification, divisor classification, and the
//! internal selftest, in TSV or JSON.
//!
//! Exit codes: 0 on success, 1 when a verification or selftest comparison
//! fails, 2 for usage errors and infeasible requests (over-budget scans,
//! unsupported parameter combinations).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::crosscheck::{check_family, check_ortho, proportion_to_count, selftest};
use crate::genfun::{
    ortho_diff_semisimple_series, root_proportion_series, semisimple_class_series, GroupFamily,
    RootScope,
};
use crate::numtheory::{classify_divisors, split_root_problem, FactorKind};
use crate::oracle::{enumerate_group, field_for, split_root_elements, OracleConfig};
use crate::qseries::{group_order, rat_string, rat_to_int};
use crate::{Error, Int, Rat, RatSeries};

#[derive(Parser)]
#[command(
    name = "rootcount",
    version,
    about = "Exact counts and proportions of M-th roots of the identity in finite classical groups"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Families with a generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesFamilyArg {
    Gl,
    U,
    Sp,
    #[value(name = "o-sum")]
    OSum,
    /// Semisimple-only difference of O+ and O- proportions.
    #[value(name = "o-diff-ss")]
    ODiffSs,
}

/// Concrete matrix groups the oracle can enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleFamilyArg {
    Gl,
    U,
    Sp,
    #[value(name = "o+")]
    OPlus,
    #[value(name = "o-")]
    OMinus,
    #[value(name = "o-odd")]
    OOdd,
}

/// Families `verify` and `divisors` accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckFamilyArg {
    Gl,
    U,
    Sp,
    #[value(name = "o-sum")]
    OSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate root proportions (and counts) per dimension from the
    /// generating function.
    Genfun {
        #[arg(long, value_enum)]
        family: SeriesFamilyArg,
        /// Field size (any odd prime power).
        #[arg(long)]
        q: u64,
        /// The exponent M of x^M = 1.
        #[arg(long)]
        m: u64,
        /// Largest matrix dimension to tabulate.
        #[arg(long)]
        max_dim: u64,
        /// Count only roots of order prime to the characteristic.
        #[arg(long)]
        semisimple_only: bool,
        /// Add a conjugacy-class-count column (needs gcd(M, q) = 1).
        #[arg(long)]
        classes: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Count roots by enumerating one matrix group element by element,
    /// reporting the count, its proportion of the group, and the split by
    /// semisimple / unipotent / mixed order type.
    Oracle {
        #[arg(long, value_enum)]
        family: OracleFamilyArg,
        /// Matrix dimension of the group.
        #[arg(long)]
        dim: usize,
        /// Field size (odd prime; the budget is ROOTCOUNT_BUDGET or 10^8).
        #[arg(long)]
        q: u64,
        /// The exponent M of x^M = 1.
        #[arg(long)]
        m: u64,
        /// Worker threads for the scan.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Recompute every dimension along independent routes and compare;
    /// exits 1 on any mismatch.
    Verify {
        #[arg(long, value_enum)]
        family: CheckFamilyArg,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        max_dim: u64,
        /// Worker threads for the oracle scans.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Show how the divisors of the prime-to-p part of M classify for a
    /// family (factor kinds, slot counts, centralizer bases).
    Divisors {
        #[arg(long, value_enum)]
        family: CheckFamilyArg,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Run the built-in consistency suites; exits 1 on failure.
    Selftest,
}

#[derive(Serialize)]
struct OutputRow {
    dim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<String>,
    proportion: String,
}

#[derive(Serialize)]
struct OutputRecord {
    family: String,
    q: u64,
    m: u64,
    rows: Vec<OutputRow>,
}

#[derive(Serialize)]
struct SplitRecord {
    semisimple: u64,
    unipotent: u64,
    mixed: u64,
}

#[derive(Serialize)]
struct OracleRecord {
    family: String,
    q: u64,
    m: u64,
    dim: usize,
    count: String,
    proportion: String,
    split: SplitRecord,
}

#[derive(Serialize)]
struct DivisorRow {
    d: u64,
    e: u64,
    phi: u64,
    kind: String,
    slots: u64,
    block_dim: u64,
    base: String,
}

#[derive(Serialize)]
struct DivisorRecord {
    family: String,
    q: u64,
    m: u64,
    t: u64,
    r: u32,
    rows: Vec<DivisorRow>,
}

/// Parses the process arguments, runs the selected command, and converts
/// the outcome into the documented exit code.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<bool, Error> {
    match command {
        Command::Genfun {
            family,
            q,
            m,
            max_dim,
            semisimple_only,
            classes,
            format,
        } => run_genfun(family, q, m, max_dim, semisimple_only, classes, format),
        Command::Oracle {
            family,
            dim,
            q,
            m,
            jobs,
            format,
        } => run_oracle(family, dim, q, m, jobs, format),
        Command::Verify {
            family,
            q,
            m,
            max_dim,
            jobs,
        } => run_verify(family, q, m, max_dim, jobs),
        Command::Divisors { family, q, m, format } => run_divisors(family, q, m, format),
        Command::Selftest => run_selftest(),
    }
}

fn series_group_family(arg: SeriesFamilyArg) -> GroupFamily {
    match arg {
        SeriesFamilyArg::Gl => GroupFamily::Gl,
        SeriesFamilyArg::U => GroupFamily::Unitary,
        SeriesFamilyArg::Sp => GroupFamily::Sp,
        SeriesFamilyArg::OSum | SeriesFamilyArg::ODiffSs => GroupFamily::OrthoSum,
    }
}

fn oracle_group_family(arg: OracleFamilyArg) -> GroupFamily {
    match arg {
        OracleFamilyArg::Gl => GroupFamily::Gl,
        OracleFamilyArg::U => GroupFamily::Unitary,
        OracleFamilyArg::Sp => GroupFamily::Sp,
        OracleFamilyArg::OPlus => GroupFamily::OrthoPlus,
        OracleFamilyArg::OMinus => GroupFamily::OrthoMinus,
        OracleFamilyArg::OOdd => GroupFamily::OrthoOdd,
    }
}

fn check_group_family(arg: CheckFamilyArg) -> GroupFamily {
    match arg {
        CheckFamilyArg::Gl => GroupFamily::Gl,
        CheckFamilyArg::U => GroupFamily::Unitary,
        CheckFamilyArg::Sp => GroupFamily::Sp,
        CheckFamilyArg::OSum => GroupFamily::OrthoSum,
    }
}

/// Dimensions a family's table walks: every dimension, or even ones only.
fn table_dims(family: SeriesFamilyArg, max_dim: u64) -> Vec<u64> {
    let step = match family {
        SeriesFamilyArg::Sp | SeriesFamilyArg::ODiffSs => 2,
        _ => 1,
    };
    (1..=max_dim).filter(|d| d % step == 0).collect()
}

fn run_genfun(
    family_arg: SeriesFamilyArg,
    q: u64,
    m: u64,
    max_dim: u64,
    semisimple_only: bool,
    classes: bool,
    format: Format,
) -> Result<bool, Error> {
    let trunc = max_dim as usize;
    let family = series_group_family(family_arg);
    let series: RatSeries = match family_arg {
        SeriesFamilyArg::ODiffSs => ortho_diff_semisimple_series(q, m, trunc)?,
        _ => {
            let scope = if semisimple_only {
                RootScope::SemisimpleOnly
            } else {
                RootScope::All
            };
            root_proportion_series(family, q, m, trunc, scope)?
        }
    };
    let class_series = if classes {
        Some(semisimple_class_series(family, q, m, trunc)?)
    } else {
        None
    };
    let rows: Vec<OutputRow> = table_dims(family_arg, max_dim)
        .into_iter()
        .map(|dim| {
            let coeff = series.coeff(dim as usize);
            OutputRow {
                dim,
                rank: (family_arg == SeriesFamilyArg::Sp).then_some(dim / 2),
                classes: class_series
                    .as_ref()
                    .map(|s| s.coeff(dim as usize).to_string()),
                count: genfun_count(family_arg, dim, q, coeff),
                proportion: rat_string(coeff),
            }
        })
        .collect();
    let label = match family_arg {
        SeriesFamilyArg::ODiffSs => "o-diff-ss".to_string(),
        _ => family.label().to_string(),
    };
    let record = OutputRecord {
        family: label,
        q,
        m,
        rows,
    };
    match format {
        Format::Json => print_json(&record),
        Format::Tsv => {
            let mut header = vec!["dim"];
            if family_arg == SeriesFamilyArg::Sp {
                header.push("rank");
            }
            if classes {
                header.push("classes");
            }
            if family_arg != SeriesFamilyArg::ODiffSs {
                header.push("count");
            }
            header.push("proportion");
            println!("{}", header.join("\t"));
            for row in &record.rows {
                let mut cells = vec![row.dim.to_string()];
                if let Some(rank) = row.rank {
                    cells.push(rank.to_string());
                }
                if let Some(c) = &row.classes {
                    cells.push(c.clone());
                }
                if family_arg != SeriesFamilyArg::ODiffSs {
                    cells.push(row.count.clone().unwrap_or_default());
                }
                cells.push(row.proportion.clone());
                println!("{}", cells.join("\t"));
            }
        }
    }
    Ok(true)
}

/// The exact element count behind a proportion coefficient, when one group
/// carries it: always for GL/U/Sp, only in odd dimensions for the
/// orthogonal sum (both odd forms are the same group), never for the
/// difference series.
fn genfun_count(family_arg: SeriesFamilyArg, dim: u64, q: u64, coeff: &Rat) -> Option<String> {
    match family_arg {
        SeriesFamilyArg::Gl | SeriesFamilyArg::U | SeriesFamilyArg::Sp => {
            let family = series_group_family(family_arg);
            Some(proportion_to_count(family, dim, q, coeff).to_string())
        }
        SeriesFamilyArg::OSum if dim % 2 == 1 => {
            let order = group_order(GroupFamily::OrthoOdd, dim, &Int::from(q));
            let count = rat_to_int(&(coeff * Rat::new(order, Int::from(2))));
            Some(count.to_string())
        }
        _ => None,
    }
}

fn run_oracle(
    family_arg: OracleFamilyArg,
    dim: usize,
    q: u64,
    m: u64,
    jobs: usize,
    format: Format,
) -> Result<bool, Error> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    let family = oracle_group_family(family_arg);
    let cfg = OracleConfig {
        jobs,
        ..OracleConfig::from_env()
    };
    let field = field_for(family, q)?;
    let group = enumerate_group(family, dim, q, &cfg)?;
    let split = split_root_elements(&group, &field, m);
    let count = split.total();
    let proportion = Rat::new(Int::from(count), Int::from(group.len() as u64));
    let record = OracleRecord {
        family: family.label().to_string(),
        q,
        m,
        dim,
        count: count.to_string(),
        proportion: rat_string(&proportion),
        split: SplitRecord {
            semisimple: split.semisimple,
            unipotent: split.unipotent,
            mixed: split.mixed,
        },
    };
    match format {
        Format::Json => print_json(&record),
        Format::Tsv => {
            println!("family\tq\tm\tdim\tcount\tproportion\tsemisimple\tunipotent\tmixed");
            println!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                record.family,
                q,
                m,
                dim,
                record.count,
                record.proportion,
                record.split.semisimple,
                record.split.unipotent,
                record.split.mixed
            );
        }
    }
    Ok(true)
}

fn run_verify(
    family_arg: CheckFamilyArg,
    q: u64,
    m: u64,
    max_dim: u64,
    jobs: usize,
) -> Result<bool, Error> {
    let cfg = OracleConfig {
        jobs,
        ..OracleConfig::from_env()
    };
    let mut all_ok = true;
    match family_arg {
        CheckFamilyArg::OSum => {
            println!("dim\tsum\toracle-sum\tper-form\tstatus");
            for c in check_ortho(q, m, max_dim, &cfg)? {
                all_ok &= c.ok;
                println!(
                    "{}\t{}\t{}\t{}\t{}",
                    c.dim,
                    rat_string(&c.sum_coeff),
                    c.oracle_sum
                        .as_ref()
                        .map_or_else(|| "skipped".into(), rat_string),
                    c.per_form_ok
                        .map_or("n/a".to_string(), |ok| ok.to_string()),
                    if c.ok { "PASS" } else { "FAIL" }
                );
            }
        }
        _ => {
            let family = check_group_family(family_arg);
            println!("dim\tproportion\tseries\tclasses\toracle\tstatus");
            for c in check_family(family, q, m, max_dim, &cfg)? {
                all_ok &= c.ok;
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    c.dim,
                    rat_string(&c.proportion),
                    c.series_count,
                    c.class_count,
                    c.oracle_count
                        .map_or("skipped".to_string(), |v| v.to_string()),
                    if c.ok { "PASS" } else { "FAIL" }
                );
            }
        }
    }
    Ok(all_ok)
}

fn kind_label(kind: &FactorKind) -> String {
    match kind {
        FactorKind::Linear { sign } => {
            format!("linear({})", if *sign >= 0 { "+" } else { "-" })
        }
        FactorKind::SelfDual { m } => format!("self-dual(m={m})"),
        FactorKind::SelfConjugate { s } => format!("self-conjugate(s={s})"),
        FactorKind::Paired { deg } => format!("paired(deg={deg})"),
    }
}

fn run_divisors(family_arg: CheckFamilyArg, q: u64, m: u64, format: Format) -> Result<bool, Error> {
    let family = check_group_family(family_arg);
    let rp = split_root_problem(m, q)?;
    let classes = classify_divisors(rp.t, q, family)?;
    let rows: Vec<DivisorRow> = classes
        .iter()
        .map(|c| DivisorRow {
            d: c.d,
            e: c.e,
            phi: c.phi,
            kind: kind_label(&c.kind),
            slots: c.factor_count,
            block_dim: c.block_dim(family),
            base: c.centralizer_base(family, q).to_string(),
        })
        .collect();
    let record = DivisorRecord {
        family: family.label().to_string(),
        q,
        m,
        t: rp.t,
        r: rp.r,
        rows,
    };
    match format {
        Format::Json => print_json(&record),
        Format::Tsv => {
            println!("d\te\tphi\tkind\tslots\tblock_dim\tbase");
            for r in &record.rows {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.d, r.e, r.phi, r.kind, r.slots, r.block_dim, r.base
                );
            }
        }
    }
    Ok(true)
}

fn run_selftest() -> Result<bool, Error> {
    let mut all_ok = true;
    for result in selftest() {
        all_ok &= result.ok;
        println!(
            "{}: {} ({})",
            result.name,
            if result.ok { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    Ok(all_ok)
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output records serialize")
    );
}
