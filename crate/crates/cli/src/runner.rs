//! Parallel, deterministic execution of registry workloads.
//!
//! - [`verify_identities`] — coefficientwise identity checks, fanned
//!   out over a scoped thread pool; reports come back in input order.
//! - [`run_claims`] — residue tables built once (with the oracle
//!   cross-check), then every congruence claim scanned in parallel
//!   against the shared tables.
//! - [`thread_count`] — worker-count policy for the `--threads` flag.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use qcongr_core::congruence::{
    check_claim, validate_claim, ClaimStatus, CongruenceClaim, HarnessError, RunSummary, TableSet,
};
use qcongr_core::expr::{verify, IdentityClaim, VerifyReport};

/// Resolve a requested worker count: defaults to the machine's
/// available parallelism, always at least 1.
pub fn thread_count(requested: Option<usize>) -> usize {
    let fallback = thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    requested.unwrap_or(fallback).max(1)
}

/// Run `job(0..len)` on up to `threads` workers; results are returned
/// in index order regardless of scheduling.
fn run_indexed<T, F>(len: usize, threads: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<T>>> = (0..len).map(|_| Mutex::new(None)).collect();
    thread::scope(|scope| {
        for _ in 0..threads.min(len).max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= len {
                    break;
                }
                let result = job(i);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    slots.into_iter().map(|slot| slot.into_inner().unwrap().unwrap()).collect()
}

/// Verify identities (at each one's stored order, or `order_override`)
/// on `threads` workers.
pub fn verify_identities(
    claims: &[IdentityClaim],
    order_override: Option<usize>,
    threads: usize,
) -> Vec<VerifyReport> {
    run_indexed(claims.len(), threads, |i| verify(&claims[i], order_override))
}

/// Build the needed residue tables once, cross-check them against the
/// combinatorial oracle, then check every claim in parallel. Aggregate
/// counts match the sequential harness.
pub fn run_claims(
    claims: &[CongruenceClaim],
    scan: usize,
    threads: usize,
) -> Result<RunSummary, HarnessError> {
    for claim in claims {
        validate_claim(claim)?;
    }
    let tables = TableSet::build(claims, scan)?;
    let results = run_indexed(claims.len(), threads, |i| check_claim(&claims[i], &tables, scan));

    let mut summary = RunSummary {
        scan,
        reports: Vec::with_capacity(claims.len()),
        passed: 0,
        failed: 0,
        untested: 0,
        probe_failed: 0,
    };
    for result in results {
        let report = result?;
        match (&report.status, report.probe) {
            (ClaimStatus::Pass { .. }, _) => summary.passed += 1,
            (ClaimStatus::Fail(_), false) => summary.failed += 1,
            (ClaimStatus::Fail(_), true) => summary.probe_failed += 1,
            (ClaimStatus::Untested, _) => summary.untested += 1,
        }
        summary.reports.push(report);
    }
    Ok(summary)
}

/// Shell-style `*` glob match on ids (no other metacharacters).
pub fn glob_match(pattern: &str, text: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let t: Vec<char> = text.chars().collect();
    let (mut pi, mut ti) = (0usize, 0usize);
    let mut star: Option<(usize, usize)> = None;
    while ti < t.len() {
        if pi < p.len() && p[pi] == '*' {
            star = Some((pi, ti));
            pi += 1;
        } else if pi < p.len() && p[pi] == t[ti] {
            pi += 1;
            ti += 1;
        } else if let Some((sp, st)) = star {
            pi = sp + 1;
            ti = st + 1;
            star = Some((sp, st + 1));
        } else {
            return false;
        }
    }
    while pi < p.len() && p[pi] == '*' {
        pi += 1;
    }
    pi == p.len()
}
