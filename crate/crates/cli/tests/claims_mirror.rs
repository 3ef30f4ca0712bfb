//! Cross-validation of the congruence harness against a deliberately
//! simple re-implementation: flat filtered enumeration instead of the
//! pruned recursive walk, and sequence tables evaluated directly instead
//! of through the table builder. Every shipped claim must produce the
//! same report both ways, and a corrupted table must trip the oracle
//! cross-check.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use qcongr::registry::{parse_claims, DEFAULT_CLAIMS};
use qcongr_core::congruence::{
    check_claim, ClaimRelation, ClaimStatus, CongruenceClaim, ExpForm, HarnessError, IndexForm,
    Sequence, TableSet, Tower,
};
use qcongr_core::expr::{pdot_expr, pdt_expr};
use qcongr_core::oracle::weighted_dp;
use qcongr_core::{evaluate, Ring};

/// Scan bound for the mirror run; small enough to stay fast, large
/// enough that every shipped family gets tested assignments.
const BOUND: usize = 20_000;

fn claims() -> &'static Vec<CongruenceClaim> {
    static CLAIMS: OnceLock<Vec<CongruenceClaim>> = OnceLock::new();
    CLAIMS.get_or_init(|| parse_claims(DEFAULT_CLAIMS).expect("shipped claim registry"))
}

/// Tables computed directly from the canonical generating expressions.
fn direct_tables() -> &'static BTreeMap<(Sequence, u64), Vec<u64>> {
    static TABLES: OnceLock<BTreeMap<(Sequence, u64), Vec<u64>>> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut out = BTreeMap::new();
        for claim in claims() {
            let key = (claim.seq, claim.modulus);
            if out.contains_key(&key) {
                continue;
            }
            let expr = match claim.seq {
                Sequence::PdTagged => pdt_expr(),
                Sequence::PdoTagged => pdot_expr(),
            };
            let series = evaluate(&expr, BOUND, Ring::Mod(claim.modulus)).expect("evaluates");
            out.insert(key, series.mod_coeffs().expect("modular ring").to_vec());
        }
        out
    })
}

/// Tables built by the harness itself (includes its oracle cross-check).
fn engine_tables() -> &'static TableSet {
    static TABLES: OnceLock<TableSet> = OnceLock::new();
    TABLES.get_or_init(|| TableSet::build(claims(), BOUND).expect("table build"))
}

// ---- Flat mirror ----

#[derive(Debug, PartialEq, Eq)]
struct MirrorFailure {
    vars: Vec<(String, u32)>,
    n: u64,
    index: u64,
    value: u64,
    rhs_index: Option<u64>,
    rhs_value: u64,
}

#[derive(Debug, PartialEq, Eq)]
struct MirrorOutcome {
    tested: u64,
    failure: Option<MirrorFailure>,
}

fn product(towers: &[Tower], vars: &[(String, u32)]) -> Option<u128> {
    let mut p: u128 = 1;
    for tower in towers {
        let e = match &tower.exp {
            ExpForm::Fixed(e) => *e,
            ExpForm::Linear { var, mul, add } => {
                let v = vars.iter().find(|(name, _)| name == var)?.1;
                mul.checked_mul(v)?.checked_add(*add)?
            }
        };
        for _ in 0..e {
            p = p.checked_mul(tower.base as u128)?;
        }
    }
    Some(p)
}

fn side_fits(form: &IndexForm, vars: &[(String, u32)], limit: u128) -> bool {
    product(&form.towers, vars)
        .and_then(|p| p.checked_mul((form.a + form.b) as u128))
        .is_some_and(|v| v <= limit)
}

fn fits(claim: &CongruenceClaim, vars: &[(String, u32)], limit: u128) -> bool {
    side_fits(&claim.lhs, vars, limit)
        && match &claim.relation {
            ClaimRelation::Zero => true,
            ClaimRelation::Equal(rhs) => side_fits(rhs, vars, limit),
        }
}

/// Variable names with minimums, merged over both sides, sorted by name.
fn var_mins(claim: &CongruenceClaim) -> Vec<(String, u32)> {
    let mut mins: BTreeMap<String, u32> = BTreeMap::new();
    let mut merge = |form: &IndexForm| {
        for (name, &min) in &form.vars {
            let e = mins.entry(name.clone()).or_insert(min);
            *e = (*e).max(min);
        }
    };
    merge(&claim.lhs);
    if let ClaimRelation::Equal(rhs) = &claim.relation {
        merge(rhs);
    }
    mins.into_iter().collect()
}

/// All assignments inside the box, by exhaustive filtering over a span
/// wide enough that every surviving value is certainly enumerated: each
/// tower has base >= 2 and slope >= 1, so 35 steps above the minimum
/// already overshoots any product bound below 2^35.
fn flat_assignments(claim: &CongruenceClaim, limit: u128) -> Vec<Vec<(String, u32)>> {
    const SPAN: u32 = 35;
    let mins = var_mins(claim);
    if mins.is_empty() {
        // No variables: the single empty assignment, with no box filter.
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut current: Vec<(String, u32)> = mins.clone();
    let mut odometer = vec![0u32; mins.len()];
    loop {
        for (slot, (offset, (_, min))) in
            current.iter_mut().zip(odometer.iter().zip(&mins))
        {
            slot.1 = min + offset;
        }
        if fits(claim, &current, limit) {
            out.push(current.clone());
        }
        let mut i = odometer.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            odometer[i] += 1;
            if odometer[i] < SPAN {
                break;
            }
            odometer[i] = 0;
        }
    }
}

fn mirror_check(claim: &CongruenceClaim, table: &[u64], scan: usize) -> MirrorOutcome {
    let limit = scan.min(table.len()) as u128;
    let mut tested: u64 = 0;
    for vars in flat_assignments(claim, limit) {
        let Some(lhs_p) = product(&claim.lhs.towers, &vars) else { continue };
        for n in 0u64.. {
            let lhs_index = lhs_p * (claim.lhs.a as u128 * n as u128 + claim.lhs.b as u128);
            if lhs_index >= limit {
                break;
            }
            let value = table[lhs_index as usize];
            match &claim.relation {
                ClaimRelation::Zero => {
                    tested += 1;
                    if value != 0 {
                        return MirrorOutcome {
                            tested,
                            failure: Some(MirrorFailure {
                                vars,
                                n,
                                index: lhs_index as u64,
                                value,
                                rhs_index: None,
                                rhs_value: 0,
                            }),
                        };
                    }
                }
                ClaimRelation::Equal(rhs) => {
                    let Some(rhs_p) = product(&rhs.towers, &vars) else { break };
                    let rhs_index = rhs_p * (rhs.a as u128 * n as u128 + rhs.b as u128);
                    if rhs_index >= limit {
                        continue;
                    }
                    tested += 1;
                    let rhs_value = table[rhs_index as usize];
                    if value != rhs_value {
                        return MirrorOutcome {
                            tested,
                            failure: Some(MirrorFailure {
                                vars,
                                n,
                                index: lhs_index as u64,
                                value,
                                rhs_index: Some(rhs_index as u64),
                                rhs_value,
                            }),
                        };
                    }
                }
            }
        }
    }
    MirrorOutcome { tested, failure: None }
}

// ---- Tests ----

#[test]
fn engine_and_direct_tables_agree() {
    let engine = engine_tables();
    for ((seq, modulus), column) in direct_tables() {
        let built = engine.table(*seq, *modulus).expect("engine table");
        assert_eq!(built, column.as_slice(), "table {seq} mod {modulus}");
    }
}

#[test]
fn every_claim_report_matches_the_flat_mirror() {
    let tables = engine_tables();
    for claim in claims() {
        let report = check_claim(claim, tables, BOUND).expect("well-formed claim");
        let column = &direct_tables()[&(claim.seq, claim.modulus)];
        let mirror = mirror_check(claim, column, BOUND);
        match (&report.status, &mirror) {
            (ClaimStatus::Pass { assignments }, MirrorOutcome { tested, failure: None }) => {
                assert_eq!(assignments, tested, "{}: assignment counts differ", claim.id);
                assert!(*tested > 0, "{}: pass with zero assignments", claim.id);
            }
            (ClaimStatus::Untested, MirrorOutcome { tested: 0, failure: None }) => {}
            (ClaimStatus::Fail(f), MirrorOutcome { failure: Some(m), .. }) => {
                assert_eq!(f.assignment.vars, m.vars, "{}: failing variables", claim.id);
                assert_eq!(f.assignment.n, m.n, "{}: failing n", claim.id);
                assert_eq!(f.index, m.index, "{}: failing index", claim.id);
                assert_eq!(f.value, m.value, "{}: failing value", claim.id);
                assert_eq!(f.rhs_index, m.rhs_index, "{}: companion index", claim.id);
                assert_eq!(f.rhs_value, m.rhs_value, "{}: companion value", claim.id);
            }
            (status, mirror) => {
                panic!("{}: engine says {status:?}, mirror says {mirror:?}", claim.id)
            }
        }
    }
}

#[test]
fn only_the_probe_fails_at_this_scan() {
    let tables = engine_tables();
    for claim in claims() {
        let report = check_claim(claim, tables, BOUND).expect("well-formed claim");
        if claim.probe {
            let ClaimStatus::Fail(f) = &report.status else {
                panic!("probe {} did not fail: {:?}", claim.id, report.status);
            };
            assert_eq!(f.index, 58, "probe should first break at index 58");
        } else {
            assert!(
                matches!(report.status, ClaimStatus::Pass { .. }),
                "{}: {:?}",
                claim.id,
                report.status
            );
        }
    }
}

#[test]
fn equal_families_iterate_down_to_their_base_case() {
    let t4 = &direct_tables()[&(Sequence::PdTagged, 4)];
    let bound = t4.len();
    let mut checked = 0usize;
    // Multiplying the argument by any 4^k, by 9^k, by 3^k on the
    // 288n+204 class, or by 3^l 4^k on the 24n+12 class leaves the
    // residue unchanged.
    for k in 1..=3usize {
        let p = 4usize.pow(k as u32);
        for n in 0..bound {
            let base = 12 * n;
            if p * base >= bound {
                break;
            }
            assert_eq!(t4[p * base], t4[base], "4^{k} * {base}");
            checked += 1;
        }
    }
    for k in 1..=2usize {
        let p = 9usize.pow(k as u32);
        for n in 0..bound {
            let base = 12 * n + 6;
            if p * base >= bound {
                break;
            }
            assert_eq!(t4[p * base], t4[base], "9^{k} * {base}");
            checked += 1;
        }
    }
    for k in 1..=2usize {
        let p = 3usize.pow(k as u32);
        for n in 0..bound {
            let base = 288 * n + 204;
            if p * base >= bound {
                break;
            }
            assert_eq!(t4[p * base], t4[base], "3^{k} * {base}");
            checked += 1;
        }
    }
    for l in 1..=2usize {
        for k in 0..=2usize {
            let p = 3usize.pow(l as u32) * 4usize.pow(k as u32);
            for n in 0..bound {
                let base = 24 * n + 12;
                if p * base >= bound {
                    break;
                }
                assert_eq!(t4[p * base], t4[base], "3^{l} 4^{k} * {base}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 1272, "iterated pairs in range at this bound");
}

#[test]
fn corrupted_table_is_caught_by_the_oracle_cross_check() {
    let series = evaluate(&pdt_expr(), 61, Ring::Mod(8)).expect("evaluates");
    let mut column = series.mod_coeffs().expect("modular ring").to_vec();
    column[37] = (column[37] + 1) % 8;
    let mut entries = BTreeMap::new();
    entries.insert((Sequence::PdTagged, 8u64), column);
    let tables = TableSet::from_parts(61, entries);

    let oracle = weighted_dp(60).expect("oracle table");
    let err = tables.cross_check_against(&oracle).expect_err("corruption detected");
    match &err {
        HarnessError::TableMismatch { seq, modulus, index, .. } => {
            assert_eq!(*seq, Sequence::PdTagged);
            assert_eq!(*modulus, 8);
            assert_eq!(*index, 37);
        }
        other => panic!("unexpected error {other}"),
    }
    assert!(err.to_string().contains("at n=37"), "display: {err}");
}
