//! `qcongr`: verify q-series identities and tagged-part congruences.
//!
//! Subcommands:
//!
//! - `identities` — evaluate both sides of every registry identity and
//!   compare coefficientwise (exactly or mod m).
//! - `claims` — build residue tables for the tagged-part sequences,
//!   cross-check them against the combinatorial oracle, and scan every
//!   congruence claim.
//! - `table` — print one sequence as `n,value` CSV from the exact
//!   series engine.
//! - `oracle` — three-way agreement check: enumeration vs weighted DP
//!   vs series engine.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/configuration
//! error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qcongr::registry;
use qcongr::runner;
use qcongr_core::congruence::{ClaimStatus, HarnessError, RunSummary, DEFAULT_SCAN};
use qcongr_core::expr::{pd_expr, pdo_expr, pdot_expr, pdt_expr};
use qcongr_core::oracle::{enumerate, weighted_dp, OracleTable, DP_MAX, ENUM_MAX};
use qcongr_core::{evaluate, IdentityClaim, QExpr, Relation, Ring, VerifyReport};
use serde::Serialize;

/// Smallest accepted truncation/scan order.
const MIN_ORDER: usize = 16;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

// ---- Command line ----

#[derive(Parser)]
#[command(
    name = "qcongr",
    version,
    about = "Verify q-series identities and tagged-part congruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every identity in the registry coefficientwise.
    Identities {
        /// Truncation order override (default: each entry's stored order).
        #[arg(long)]
        order: Option<usize>,
        /// Only run entries whose id matches this `*` glob.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
        /// Alternate identity registry path (default: built-in registry).
        #[arg(long)]
        identities: Option<PathBuf>,
    },
    /// Scan every congruence claim against oracle-checked residue tables.
    Claims {
        /// Scan order: indices below this bound are tested.
        #[arg(long, default_value_t = DEFAULT_SCAN)]
        order: usize,
        /// Only run claims whose id matches this `*` glob.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
        /// Alternate claim registry path (default: built-in registry).
        #[arg(long)]
        claims: Option<PathBuf>,
    },
    /// Print a tagged-part sequence as `n,value` CSV.
    Table {
        /// Sequence name: PD, PDO, PDt, or PDOt.
        seq: String,
        /// Largest index printed.
        #[arg(long, default_value_t = 50)]
        max: usize,
        /// Series truncation order (must exceed --max).
        #[arg(long, default_value_t = 500)]
        order: usize,
    },
    /// Cross-check enumeration, weighted DP, and the series engine.
    Oracle {
        /// Compare direct enumeration for n up to this bound (max 45).
        #[arg(long, default_value_t = 40)]
        enum_max: usize,
        /// Compare the weighted DP for n up to this bound (max 5000).
        #[arg(long, default_value_t = 2000)]
        dp_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Identities { order, filter, format, threads, identities } => {
            cmd_identities(order, filter, format, threads, identities)
        }
        Command::Claims { order, filter, format, threads, claims } => {
            cmd_claims(order, filter, format, threads, claims)
        }
        Command::Table { seq, max, order } => cmd_table(&seq, max, order),
        Command::Oracle { enum_max, dp_max } => cmd_oracle(enum_max, dp_max),
    };
    ExitCode::from(code)
}

fn usage_error(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn relation_string(relation: Relation) -> String {
    match relation {
        Relation::Exact => "exact".into(),
        Relation::Mod(m) => format!("mod:{m}"),
    }
}

/// Apply an id glob, rejecting filters that select nothing.
fn apply_filter<T>(items: Vec<T>, filter: &Option<String>, id: impl Fn(&T) -> &str) -> Result<Vec<T>, String> {
    let Some(pattern) = filter else { return Ok(items) };
    let kept: Vec<T> =
        items.into_iter().filter(|item| runner::glob_match(pattern, id(item))).collect();
    if kept.is_empty() {
        return Err(format!("filter {pattern:?} matches no registry entry"));
    }
    Ok(kept)
}

// ---- identities ----

#[derive(Serialize)]
struct MismatchRow<'a> {
    index: usize,
    lhs: &'a str,
    rhs: &'a str,
}

#[derive(Serialize)]
struct IdentityRow<'a> {
    id: &'a str,
    anchor: &'a str,
    relation: String,
    order: usize,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mismatch: Option<MismatchRow<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct IdentityRun<'a> {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    order_override: Option<usize>,
    total: usize,
    passed: usize,
    failed: usize,
    elapsed_ms: u128,
    reports: Vec<IdentityRow<'a>>,
}

fn identity_line(claim: &IdentityClaim, report: &VerifyReport) -> String {
    let head = if report.pass { "[PASS]" } else { "[FAIL]" };
    let mut line = format!(
        "{head} {id}  {rel} order {order}",
        id = report.id,
        rel = report.relation,
        order = report.order
    );
    if let Some(m) = &report.mismatch {
        line.push_str(&format!(
            "  mismatch at n={}: lhs={} rhs={}",
            m.index, m.lhs, m.rhs
        ));
    }
    if let Some(e) = &report.error {
        line.push_str(&format!("  error: {e}"));
    }
    line.push_str(&format!("  :: {}", claim.anchor));
    line
}

fn cmd_identities(
    order: Option<usize>,
    filter: Option<String>,
    format: Format,
    threads: Option<usize>,
    path: Option<PathBuf>,
) -> u8 {
    if let Some(o) = order {
        if o < MIN_ORDER {
            return usage_error(format!("--order {o} is below the minimum {MIN_ORDER}"));
        }
    }
    let loaded = match &path {
        Some(p) => registry::load_identities(p),
        None => registry::parse_identities(registry::DEFAULT_IDENTITIES),
    };
    let claims = match loaded {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let claims = match apply_filter(claims, &filter, |c| &c.id) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };

    let started = Instant::now();
    let reports = runner::verify_identities(&claims, order, runner::thread_count(threads));
    let elapsed = started.elapsed();
    let passed = reports.iter().filter(|r| r.pass).count();
    let failed = reports.len() - passed;

    match format {
        Format::Text => {
            for (claim, report) in claims.iter().zip(&reports) {
                println!("{}", identity_line(claim, report));
            }
            println!(
                "identities: {} checked, {passed} passed, {failed} failed ({:.1}s)",
                reports.len(),
                elapsed.as_secs_f64()
            );
        }
        Format::Json => {
            let rows: Vec<IdentityRow> = claims
                .iter()
                .zip(&reports)
                .map(|(claim, report)| IdentityRow {
                    id: &report.id,
                    anchor: &claim.anchor,
                    relation: relation_string(report.relation),
                    order: report.order,
                    pass: report.pass,
                    mismatch: report.mismatch.as_ref().map(|m| MismatchRow {
                        index: m.index,
                        lhs: &m.lhs,
                        rhs: &m.rhs,
                    }),
                    error: report.error.as_deref(),
                })
                .collect();
            let run = IdentityRun {
                command: "identities",
                order_override: order,
                total: rows.len(),
                passed,
                failed,
                elapsed_ms: elapsed.as_millis(),
                reports: rows,
            };
            println!("{}", serde_json::to_string_pretty(&run).expect("report serialization"));
        }
    }
    if failed == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

// ---- claims ----

#[derive(Serialize)]
struct FailureRow {
    assignment: String,
    index: u64,
    value: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rhs_index: Option<u64>,
    rhs_value: u64,
}

#[derive(Serialize)]
struct ClaimRow<'a> {
    id: &'a str,
    anchor: &'a str,
    seq: String,
    #[serde(rename = "mod")]
    modulus: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    assignments: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<FailureRow>,
}

#[derive(Serialize)]
struct ClaimsRun<'a> {
    command: &'static str,
    scan: usize,
    total: usize,
    passed: u64,
    failed: u64,
    untested: u64,
    probe_failed: u64,
    ok: bool,
    elapsed_ms: u128,
    reports: Vec<ClaimRow<'a>>,
}

fn claim_status_word(status: &ClaimStatus, probe: bool) -> &'static str {
    match (status, probe) {
        (ClaimStatus::Pass { .. }, false) => "pass",
        (ClaimStatus::Pass { .. }, true) => "probe-passed",
        (ClaimStatus::Fail(_), false) => "fail",
        (ClaimStatus::Fail(_), true) => "probe-failed",
        (ClaimStatus::Untested, _) => "untested",
    }
}

fn print_claims_text(anchors: &[(String, String)], summary: &RunSummary, secs: f64) {
    for (report, (_, anchor)) in summary.reports.iter().zip(anchors) {
        let word = claim_status_word(&report.status, report.probe);
        let head = match word {
            "pass" => "[PASS]".to_string(),
            "fail" => "[FAIL]".to_string(),
            "untested" => "[UNTESTED]".to_string(),
            other => format!("[{other}]"),
        };
        let mut line =
            format!("{head} {}  {} mod {}", report.id, report.seq, report.modulus);
        match &report.status {
            ClaimStatus::Pass { assignments } => {
                line.push_str(&format!("  assignments={assignments}"));
            }
            ClaimStatus::Fail(f) => line.push_str(&format!("  {f}")),
            ClaimStatus::Untested => {
                line.push_str(&format!("  no assignment below scan {}", summary.scan));
            }
        }
        line.push_str(&format!("  :: {anchor}"));
        println!("{line}");
    }
    println!(
        "claims: {} checked, {} passed, {} failed, {} untested, {} probe-failed (scan {}, {:.1}s)",
        summary.reports.len(),
        summary.passed,
        summary.failed,
        summary.untested,
        summary.probe_failed,
        summary.scan,
        secs
    );
}

fn cmd_claims(
    scan: usize,
    filter: Option<String>,
    format: Format,
    threads: Option<usize>,
    path: Option<PathBuf>,
) -> u8 {
    if scan < MIN_ORDER {
        return usage_error(format!("--order {scan} is below the minimum {MIN_ORDER}"));
    }
    let loaded = match &path {
        Some(p) => registry::load_claims(p),
        None => registry::parse_claims(registry::DEFAULT_CLAIMS),
    };
    let claims = match loaded {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let claims = match apply_filter(claims, &filter, |c| &c.id) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };

    let started = Instant::now();
    let summary = match runner::run_claims(&claims, scan, runner::thread_count(threads)) {
        Ok(s) => s,
        Err(HarnessError::BadClaim { id, reason }) => {
            return usage_error(format!("claim {id}: {reason}"))
        }
        Err(e) => {
            eprintln!("verification could not complete: {e}");
            return EXIT_FAIL;
        }
    };
    let elapsed = started.elapsed();
    let anchors: Vec<(String, String)> =
        claims.iter().map(|c| (c.id.clone(), c.anchor.clone())).collect();

    match format {
        Format::Text => print_claims_text(&anchors, &summary, elapsed.as_secs_f64()),
        Format::Json => {
            let rows: Vec<ClaimRow> = summary
                .reports
                .iter()
                .zip(&anchors)
                .map(|(report, (_, anchor))| {
                    let (assignments, failure) = match &report.status {
                        ClaimStatus::Pass { assignments } => (Some(*assignments), None),
                        ClaimStatus::Fail(f) => (
                            None,
                            Some(FailureRow {
                                assignment: f.assignment.to_string(),
                                index: f.index,
                                value: f.value,
                                rhs_index: f.rhs_index,
                                rhs_value: f.rhs_value,
                            }),
                        ),
                        ClaimStatus::Untested => (None, None),
                    };
                    ClaimRow {
                        id: &report.id,
                        anchor,
                        seq: report.seq.to_string(),
                        modulus: report.modulus,
                        status: claim_status_word(&report.status, report.probe),
                        assignments,
                        failure,
                    }
                })
                .collect();
            let run = ClaimsRun {
                command: "claims",
                scan: summary.scan,
                total: rows.len(),
                passed: summary.passed,
                failed: summary.failed,
                untested: summary.untested,
                probe_failed: summary.probe_failed,
                ok: summary.ok(),
                elapsed_ms: elapsed.as_millis(),
                reports: rows,
            };
            println!("{}", serde_json::to_string_pretty(&run).expect("report serialization"));
        }
    }
    if summary.ok() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

// ---- table ----

fn sequence_expr(name: &str) -> Option<QExpr> {
    match name {
        "PD" => Some(pd_expr()),
        "PDO" => Some(pdo_expr()),
        "PDt" => Some(pdt_expr()),
        "PDOt" => Some(pdot_expr()),
        _ => None,
    }
}

fn cmd_table(seq: &str, max: usize, order: usize) -> u8 {
    let Some(expr) = sequence_expr(seq) else {
        return usage_error(format!("unknown sequence {seq:?} (expected PD, PDO, PDt, or PDOt)"));
    };
    if order < MIN_ORDER {
        return usage_error(format!("--order {order} is below the minimum {MIN_ORDER}"));
    }
    if max >= order {
        return usage_error(format!("--max {max} must be below --order {order}"));
    }
    let series = match evaluate(&expr, order, Ring::Exact) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("evaluation failed: {e}");
            return EXIT_FAIL;
        }
    };
    println!("n,{seq}");
    for n in 0..=max {
        println!("{n},{}", series.coeff_bigint(n).expect("in-range coefficient"));
    }
    EXIT_PASS
}

// ---- oracle ----

/// Compare two oracle columns on a shared range, reporting every
/// disagreement as `(n, method, value)` triples.
fn compare_columns(
    label_a: &str,
    a: &[num_bigint::BigInt],
    label_b: &str,
    b: &[num_bigint::BigInt],
    upto: usize,
    errors: &mut Vec<String>,
) {
    for (n, (x, y)) in a.iter().zip(b).take(upto + 1).enumerate() {
        if x != y {
            errors.push(format!("n={n}: {label_a} gives {x}, {label_b} gives {y}"));
        }
    }
}

fn cmd_oracle(enum_max: usize, dp_max: usize) -> u8 {
    if enum_max > ENUM_MAX {
        return usage_error(format!("--enum-max {enum_max} is above the bound {ENUM_MAX}"));
    }
    if dp_max > DP_MAX {
        return usage_error(format!("--dp-max {dp_max} is above the bound {DP_MAX}"));
    }
    if dp_max < enum_max {
        return usage_error(format!("--dp-max {dp_max} must be at least --enum-max {enum_max}"));
    }

    let dp = match weighted_dp(dp_max) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("weighted DP failed: {e}")),
    };
    let mut errors: Vec<String> = Vec::new();

    for n in 0..=enum_max {
        let counts = match enumerate(n) {
            Ok(c) => c,
            Err(e) => return usage_error(format!("enumeration failed: {e}")),
        };
        for (label, got, column) in [
            ("PD", counts.pd, &dp.pd),
            ("PDO", counts.pdo, &dp.pdo),
            ("PDt", counts.pd_t, &dp.pd_t),
            ("PDOt", counts.pdo_t, &dp.pdo_t),
        ] {
            if num_bigint::BigInt::from(got) != column[n] {
                errors.push(format!(
                    "n={n}: enumeration {label} gives {got}, weighted-dp gives {}",
                    column[n]
                ));
            }
        }
    }

    let series_table = match series_oracle(dp_max) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("series evaluation failed: {e}");
            return EXIT_FAIL;
        }
    };
    for (label, series_col, dp_col) in [
        ("PD", &series_table.pd, &dp.pd),
        ("PDO", &series_table.pdo, &dp.pdo),
        ("PDt", &series_table.pd_t, &dp.pd_t),
        ("PDOt", &series_table.pdo_t, &dp.pdo_t),
    ] {
        compare_columns(
            &format!("series {label}"),
            series_col,
            &format!("weighted-dp {label}"),
            dp_col,
            dp_max,
            &mut errors,
        );
    }

    if errors.is_empty() {
        println!("enumeration vs weighted-dp: agree for n <= {enum_max}");
        println!("series vs weighted-dp: agree for n <= {dp_max}");
        EXIT_PASS
    } else {
        for e in &errors {
            eprintln!("disagreement {e}");
        }
        eprintln!("oracle cross-check failed with {} disagreement(s)", errors.len());
        EXIT_FAIL
    }
}

/// Exact sequence tables computed on the series route.
fn series_oracle(max_n: usize) -> Result<OracleTable, qcongr_core::expr::EvalError> {
    let order = max_n + 1;
    let columns = [pd_expr(), pdo_expr(), pdt_expr(), pdot_expr()]
        .iter()
        .map(|expr| {
            evaluate(expr, order, Ring::Exact)
                .map(|s| (0..order).map(|n| s.coeff_bigint(n).unwrap()).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut iter = columns.into_iter();
    Ok(OracleTable {
        max_n,
        pd: iter.next().unwrap(),
        pdo: iter.next().unwrap(),
        pd_t: iter.next().unwrap(),
        pdo_t: iter.next().unwrap(),
    })
}
