//! Arithmetic-progression congruence harness.
//!
//! A [`CongruenceClaim`] states that a tagged-count sequence vanishes
//! (or matches a companion progression) modulo `m` along an index form
//! `p_1^{e_1} * ... * p_j^{e_j} * (a*n + b)`, where each exponent is
//! either fixed or linear in a named tower variable. The harness:
//!
//! - builds residue tables for every `(sequence, modulus)` pair a claim
//!   set needs, via the series engine ([`TableSet::build`]),
//! - cross-checks each table against the combinatorial oracle on a
//!   shared prefix before trusting it,
//! - enumerates every `(tower variables, n)` assignment whose evaluated
//!   index fits under the scan bound and tests the claim there
//!   ([`check_claim`]).
//!
//! Tower variables are boxed automatically: values are admitted while
//! the tower product satisfies `product * (a + b) <= scan`, so raising
//! the scan bound deepens the towers without re-tuning anything.
//! Claims flagged `probe` are reported like any other but never count
//! against the overall outcome of [`run_claims`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::expr::{evaluate_at, pdot_expr, pdt_expr, EvalError, QExpr};
use crate::oracle::{weighted_dp, OracleError, OracleTable};
use crate::ring::Ring;
use crate::series::SeriesError;

/// Default scan bound: indices tested are those below this value.
pub const DEFAULT_SCAN: usize = 50_000;

/// Tables are compared with the oracle on `n <= CROSS_CHECK_MAX`
/// (clamped to the table length).
pub const CROSS_CHECK_MAX: usize = 2_000;

/// Which tagged-count sequence a claim is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sequence {
    /// Tagged parts over partitions with designated summands.
    PdTagged,
    /// The odd-parts variant.
    PdoTagged,
}

impl Sequence {
    fn expr(self) -> QExpr {
        match self {
            Sequence::PdTagged => pdt_expr(),
            Sequence::PdoTagged => pdot_expr(),
        }
    }
}

impl core::fmt::Display for Sequence {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Sequence::PdTagged => write!(f, "PDt"),
            Sequence::PdoTagged => write!(f, "PDOt"),
        }
    }
}

/// Exponent of one tower factor: a constant, or `mul*var + add`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpForm {
    Fixed(u32),
    Linear { var: String, mul: u32, add: u32 },
}

/// One factor `base^exp` of an index form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub base: u64,
    pub exp: ExpForm,
}

/// Index family `towers * (a*n + b)` with named tower variables and
/// their minimum values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexForm {
    pub a: u64,
    pub b: u64,
    pub towers: Vec<Tower>,
    pub vars: BTreeMap<String, u32>,
}

impl IndexForm {
    /// Plain progression `a*n + b`.
    pub fn progression(a: u64, b: u64) -> IndexForm {
        IndexForm { a, b, towers: Vec::new(), vars: BTreeMap::new() }
    }
}

/// What the claim asserts about the sequence along the index form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimRelation {
    /// Value is `0 (mod m)` at every tested index.
    Zero,
    /// Value matches the companion form's value `(mod m)` at the same
    /// `(tower variables, n)` assignment.
    Equal(IndexForm),
}

/// One registry congruence claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceClaim {
    pub id: String,
    pub anchor: String,
    pub seq: Sequence,
    pub modulus: u64,
    pub lhs: IndexForm,
    pub relation: ClaimRelation,
    /// Reported informationally; a failure never fails the run.
    pub probe: bool,
}

/// Harness failure (not a claim failure — those are [`ClaimStatus::Fail`]).
#[derive(Clone, Debug, PartialEq)]
pub enum HarnessError {
    Eval(EvalError),
    Series(SeriesError),
    Oracle(OracleError),
    /// No table was built for this claim's `(sequence, modulus)`.
    MissingTable { seq: Sequence, modulus: u64 },
    /// A series-built table disagrees with the combinatorial oracle.
    TableMismatch { seq: Sequence, modulus: u64, index: usize, table: String, oracle: String },
    /// The claim itself is malformed.
    BadClaim { id: String, reason: String },
}

impl core::fmt::Display for HarnessError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            HarnessError::Eval(e) => write!(f, "{e}"),
            HarnessError::Series(e) => write!(f, "{e}"),
            HarnessError::Oracle(e) => write!(f, "{e}"),
            HarnessError::MissingTable { seq, modulus } => {
                write!(f, "no table built for {seq} mod {modulus}")
            }
            HarnessError::TableMismatch { seq, modulus, index, table, oracle } => {
                write!(
                    f,
                    "table for {seq} mod {modulus} disagrees with the oracle at n={index}: \
                     series gives {table}, oracle gives {oracle}"
                )
            }
            HarnessError::BadClaim { id, reason } => write!(f, "claim {id}: {reason}"),
        }
    }
}

impl core::error::Error for HarnessError {}

impl From<EvalError> for HarnessError {
    fn from(e: EvalError) -> Self {
        HarnessError::Eval(e)
    }
}

impl From<SeriesError> for HarnessError {
    fn from(e: SeriesError) -> Self {
        HarnessError::Series(e)
    }
}

impl From<OracleError> for HarnessError {
    fn from(e: OracleError) -> Self {
        HarnessError::Oracle(e)
    }
}

// ---- Residue tables ----

/// Residue tables for every `(sequence, modulus)` pair a claim set uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSet {
    order: usize,
    entries: BTreeMap<(Sequence, u64), Vec<u64>>,
}

impl TableSet {
    /// Number of coefficients in every table.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Assemble a set from precomputed tables (no cross-check).
    pub fn from_parts(order: usize, entries: BTreeMap<(Sequence, u64), Vec<u64>>) -> TableSet {
        TableSet { order, entries }
    }

    pub fn table(&self, seq: Sequence, modulus: u64) -> Option<&[u64]> {
        self.entries.get(&(seq, modulus)).map(|v| v.as_slice())
    }

    /// Build every table `claims` needs, then cross-check each against
    /// the combinatorial oracle on the shared prefix.
    pub fn build(claims: &[CongruenceClaim], order: usize) -> Result<TableSet, HarnessError> {
        let mut needed: BTreeSet<(Sequence, u64)> = BTreeSet::new();
        for c in claims {
            needed.insert((c.seq, c.modulus));
        }
        let mut entries = BTreeMap::new();
        for &(seq, m) in &needed {
            let series = evaluate_at(&seq.expr(), order, Ring::Mod(m), "table")?;
            entries.insert((seq, m), series.mod_coeffs().unwrap().to_vec());
        }
        let set = TableSet { order, entries };
        if order > 0 && !needed.is_empty() {
            let oracle = weighted_dp(CROSS_CHECK_MAX.min(order - 1))?;
            set.cross_check_against(&oracle)?;
        }
        Ok(set)
    }

    /// Compare every table with the oracle's exact values reduced mod
    /// the table's modulus, over the indices both sides cover.
    pub fn cross_check_against(&self, oracle: &OracleTable) -> Result<(), HarnessError> {
        for (&(seq, m), table) in &self.entries {
            let column = match seq {
                Sequence::PdTagged => &oracle.pd_t,
                Sequence::PdoTagged => &oracle.pdo_t,
            };
            let big_m = BigInt::from(m);
            let upto = table.len().min(column.len());
            for n in 0..upto {
                let expect = (&column[n] % &big_m).to_u64().unwrap();
                if table[n] != expect {
                    return Err(HarnessError::TableMismatch {
                        seq,
                        modulus: m,
                        index: n,
                        table: table[n].to_string(),
                        oracle: expect.to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

// ---- Claim checking ----

/// One tested assignment of tower variables and `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub vars: Vec<(String, u32)>,
    pub n: u64,
}

impl core::fmt::Display for Assignment {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (name, v) in &self.vars {
            write!(f, "{name}={v}, ")?;
        }
        write!(f, "n={}", self.n)
    }
}

/// First assignment at which a claim failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimFailure {
    pub assignment: Assignment,
    pub index: u64,
    pub value: u64,
    /// Companion index for equality claims.
    pub rhs_index: Option<u64>,
    /// Companion value: `0` for zero claims.
    pub rhs_value: u64,
}

impl core::fmt::Display for ClaimFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self.rhs_index {
            None => write!(
                f,
                "{}: value at index {} is {} (want 0)",
                self.assignment, self.index, self.value
            ),
            Some(r) => write!(
                f,
                "{}: value {} at index {} != value {} at index {r}",
                self.assignment, self.value, self.index, self.rhs_value
            ),
        }
    }
}

/// Outcome of checking one claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimStatus {
    Pass { assignments: u64 },
    Fail(ClaimFailure),
    /// No assignment's evaluated index fits under the scan bound.
    Untested,
}

/// Per-claim result row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub id: String,
    pub seq: Sequence,
    pub modulus: u64,
    pub probe: bool,
    pub status: ClaimStatus,
}

/// Whole-run result of [`run_claims`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub scan: usize,
    pub reports: Vec<ClaimReport>,
    pub passed: u64,
    pub failed: u64,
    pub untested: u64,
    /// Failures among probe-flagged claims (informational).
    pub probe_failed: u64,
}

impl RunSummary {
    /// True when no non-probe claim failed.
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn bad(id: &str, reason: String) -> HarnessError {
    HarnessError::BadClaim { id: id.to_string(), reason }
}

/// Structural validation: positive step and modulus, prime-power-style
/// tower bases of at least 2, strictly growing tower exponents, and a
/// one-to-one correspondence between declared and referenced variables.
pub fn validate_claim(claim: &CongruenceClaim) -> Result<(), HarnessError> {
    if claim.modulus == 0 {
        return Err(bad(&claim.id, "modulus must be at least 1".into()));
    }
    let mut forms = vec![&claim.lhs];
    if let ClaimRelation::Equal(rhs) = &claim.relation {
        forms.push(rhs);
    }
    let declared = merged_vars(claim);
    let mut referenced: BTreeSet<&str> = BTreeSet::new();
    for form in &forms {
        if form.a == 0 {
            return Err(bad(&claim.id, "index form needs a >= 1".into()));
        }
        for tower in &form.towers {
            if tower.base < 2 {
                return Err(bad(&claim.id, format!("tower base {} must be >= 2", tower.base)));
            }
            if let ExpForm::Linear { var, mul, .. } = &tower.exp {
                if *mul == 0 {
                    return Err(bad(&claim.id, format!("tower exponent in {var} needs mul >= 1")));
                }
                if !declared.contains_key(var.as_str()) {
                    return Err(bad(&claim.id, format!("tower references undeclared variable {var}")));
                }
                referenced.insert(var);
            }
        }
    }
    for name in declared.keys() {
        if !referenced.contains(*name) {
            return Err(bad(&claim.id, format!("declared variable {name} is never used")));
        }
    }
    Ok(())
}

/// Union of the variable boxes of both sides (max of the minimums when
/// both declare the same name).
fn merged_vars(claim: &CongruenceClaim) -> BTreeMap<&str, u32> {
    let mut out: BTreeMap<&str, u32> = BTreeMap::new();
    for (name, min) in claim.lhs.vars.iter() {
        let e = out.entry(name.as_str()).or_insert(*min);
        *e = (*e).max(*min);
    }
    if let ClaimRelation::Equal(rhs) = &claim.relation {
        for (name, min) in rhs.vars.iter() {
            let e = out.entry(name.as_str()).or_insert(*min);
            *e = (*e).max(*min);
        }
    }
    out
}

/// Tower product for one variable assignment; `None` on overflow.
fn tower_product(towers: &[Tower], vars: &[(String, u32)]) -> Option<u128> {
    let mut p: u128 = 1;
    for t in towers {
        let e = match &t.exp {
            ExpForm::Fixed(e) => *e,
            ExpForm::Linear { var, mul, add } => {
                let v = vars.iter().find(|(n, _)| n == var).map(|(_, v)| *v)?;
                mul.checked_mul(v)?.checked_add(*add)?
            }
        };
        for _ in 0..e {
            p = p.checked_mul(t.base as u128)?;
        }
    }
    Some(p)
}

/// Does an assignment fit the automatic box `product * (a + b) <= limit`
/// on every side of the claim?
fn fits(claim: &CongruenceClaim, vars: &[(String, u32)], limit: u128) -> bool {
    let side = |form: &IndexForm| -> bool {
        match tower_product(&form.towers, vars) {
            Some(p) => p.checked_mul((form.a + form.b) as u128).is_some_and(|v| v <= limit),
            None => false,
        }
    };
    if !side(&claim.lhs) {
        return false;
    }
    match &claim.relation {
        ClaimRelation::Zero => true,
        ClaimRelation::Equal(rhs) => side(rhs),
    }
}

/// Enumerate all tower-variable assignments inside the automatic box.
fn boxed_assignments(claim: &CongruenceClaim, limit: usize) -> Vec<Vec<(String, u32)>> {
    let names: Vec<(String, u32)> =
        merged_vars(claim).into_iter().map(|(n, m)| (n.to_string(), m)).collect();
    if names.is_empty() {
        return vec![Vec::new()];
    }
    let mut current: Vec<(String, u32)> = names.clone();
    let mut out = Vec::new();
    fn rec(
        claim: &CongruenceClaim,
        names: &[(String, u32)],
        i: usize,
        current: &mut Vec<(String, u32)>,
        limit: u128,
        out: &mut Vec<Vec<(String, u32)>>,
    ) {
        if i == names.len() {
            out.push(current.clone());
            return;
        }
        let min = names[i].1;
        let mut v = min;
        loop {
            current[i].1 = v;
            // Entries past `i` sit at their minimums here, so this is
            // the smallest box value reachable below this prefix.
            if !fits(claim, current, limit) {
                break;
            }
            rec(claim, names, i + 1, current, limit, out);
            v += 1;
        }
        current[i].1 = min;
    }
    rec(claim, &names, 0, &mut current, limit as u128, &mut out);
    out
}

/// Check one claim against prebuilt tables, testing every assignment
/// whose evaluated index lies below `scan` (and below the table size).
pub fn check_claim(
    claim: &CongruenceClaim,
    tables: &TableSet,
    scan: usize,
) -> Result<ClaimReport, HarnessError> {
    validate_claim(claim)?;
    let table = tables
        .table(claim.seq, claim.modulus)
        .ok_or(HarnessError::MissingTable { seq: claim.seq, modulus: claim.modulus })?;
    let limit = scan.min(table.len());
    let mut tested: u64 = 0;
    let mut failure: Option<ClaimFailure> = None;

    'outer: for vars in boxed_assignments(claim, limit) {
        let lhs_p = match tower_product(&claim.lhs.towers, &vars) {
            Some(p) => p,
            None => continue,
        };
        let rhs = match &claim.relation {
            ClaimRelation::Zero => None,
            ClaimRelation::Equal(rhs) => Some((rhs, tower_product(&rhs.towers, &vars))),
        };
        for n in 0u64.. {
            let lhs_index = lhs_p * (claim.lhs.a as u128 * n as u128 + claim.lhs.b as u128);
            if lhs_index >= limit as u128 {
                break;
            }
            let value = table[lhs_index as usize];
            match &rhs {
                None => {
                    tested += 1;
                    if value != 0 {
                        failure = Some(ClaimFailure {
                            assignment: Assignment { vars: vars.clone(), n },
                            index: lhs_index as u64,
                            value,
                            rhs_index: None,
                            rhs_value: 0,
                        });
                        break 'outer;
                    }
                }
                Some((form, p)) => {
                    let p = match p {
                        Some(p) => *p,
                        None => break,
                    };
                    let rhs_index = p * (form.a as u128 * n as u128 + form.b as u128);
                    if rhs_index >= limit as u128 {
                        continue;
                    }
                    tested += 1;
                    let rhs_value = table[rhs_index as usize];
                    if value != rhs_value {
                        failure = Some(ClaimFailure {
                            assignment: Assignment { vars: vars.clone(), n },
                            index: lhs_index as u64,
                            value,
                            rhs_index: Some(rhs_index as u64),
                            rhs_value,
                        });
                        break 'outer;
                    }
                }
            }
        }
    }

    let status = match failure {
        Some(f) => ClaimStatus::Fail(f),
        None if tested == 0 => ClaimStatus::Untested,
        None => ClaimStatus::Pass { assignments: tested },
    };
    Ok(ClaimReport {
        id: claim.id.clone(),
        seq: claim.seq,
        modulus: claim.modulus,
        probe: claim.probe,
        status,
    })
}

/// Build the needed tables and check every claim.
pub fn run_claims(claims: &[CongruenceClaim], scan: usize) -> Result<RunSummary, HarnessError> {
    for c in claims {
        validate_claim(c)?;
    }
    let tables = TableSet::build(claims, scan)?;
    let mut summary = RunSummary {
        scan,
        reports: Vec::with_capacity(claims.len()),
        passed: 0,
        failed: 0,
        untested: 0,
        probe_failed: 0,
    };
    for c in claims {
        let report = check_claim(c, &tables, scan)?;
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

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_claim(id: &str, seq: Sequence, modulus: u64, lhs: IndexForm) -> CongruenceClaim {
        CongruenceClaim {
            id: id.into(),
            anchor: String::new(),
            seq,
            modulus,
            lhs,
            relation: ClaimRelation::Zero,
            probe: false,
        }
    }

    fn tower(base: u64, exp: ExpForm) -> Tower {
        Tower { base, exp }
    }

    #[test]
    fn plain_progression_passes_with_exact_count() {
        let claim = zero_claim("t3n", Sequence::PdTagged, 3, IndexForm::progression(3, 0));
        let summary = run_claims(&[claim], 300).unwrap();
        assert!(summary.ok());
        assert_eq!(summary.reports[0].status, ClaimStatus::Pass { assignments: 100 });
    }

    #[test]
    fn tower_box_grows_with_the_scan_bound() {
        let mut lhs = IndexForm::progression(3, 0);
        lhs.towers.push(tower(3, ExpForm::Linear { var: "l".into(), mul: 1, add: 0 }));
        lhs.vars.insert("l".into(), 0);
        let claim = zero_claim("t3l3n", Sequence::PdTagged, 3, lhs);

        let boxed = boxed_assignments(&claim, 99);
        assert_eq!(boxed.len(), 4); // 3^l * 3 <= 99 for l <= 3

        let summary = run_claims(&[claim], 99).unwrap();
        // l=0: n<=32, l=1: n<=10, l=2: n<=3, l=3: n<=1 (indices < 99).
        assert_eq!(summary.reports[0].status, ClaimStatus::Pass { assignments: 33 + 11 + 4 + 2 });
    }

    #[test]
    fn odd_exponent_towers_box_as_expected() {
        let mut lhs = IndexForm::progression(30, 11);
        lhs.towers.push(tower(2, ExpForm::Fixed(3)));
        lhs.towers.push(tower(5, ExpForm::Linear { var: "k".into(), mul: 2, add: 1 }));
        lhs.vars.insert("k".into(), 0);
        let claim = zero_claim("t5tower", Sequence::PdTagged, 27, lhs);
        let boxed = boxed_assignments(&claim, 50_000);
        // 8*5^(2k+1) * 41 <= 50000 admits k = 0 (product 40) and k = 1
        // (product 1000) but not k = 2 (product 25000).
        assert_eq!(boxed, vec![vec![("k".to_string(), 0)], vec![("k".to_string(), 1)]]);
    }

    #[test]
    fn failing_claim_reports_first_assignment() {
        let claim = zero_claim("t36n22", Sequence::PdTagged, 4, IndexForm::progression(36, 22));
        let summary = run_claims(&[claim.clone()], 300).unwrap();
        assert!(!summary.ok());
        match &summary.reports[0].status {
            ClaimStatus::Fail(f) => {
                assert_eq!(f.assignment.n, 1);
                assert_eq!(f.index, 58);
                assert_ne!(f.value, 0);
            }
            other => panic!("expected failure, got {other:?}"),
        }

        let probe = CongruenceClaim { probe: true, ..claim };
        let summary = run_claims(&[probe], 300).unwrap();
        assert!(summary.ok());
        assert_eq!(summary.probe_failed, 1);
    }

    #[test]
    fn untested_when_nothing_fits() {
        let claim = zero_claim("far", Sequence::PdTagged, 2, IndexForm::progression(1, 1000));
        let summary = run_claims(&[claim], 500).unwrap();
        assert_eq!(summary.reports[0].status, ClaimStatus::Untested);
        assert_eq!(summary.untested, 1);
        assert!(summary.ok());
    }

    #[test]
    fn modulus_one_is_vacuous() {
        let claim = zero_claim("vacuous", Sequence::PdoTagged, 1, IndexForm::progression(1, 0));
        let summary = run_claims(&[claim], 64).unwrap();
        assert_eq!(summary.reports[0].status, ClaimStatus::Pass { assignments: 64 });
    }

    #[test]
    fn equality_claims_compare_companion_indices() {
        let good = CongruenceClaim {
            id: "same".into(),
            anchor: String::new(),
            seq: Sequence::PdTagged,
            modulus: 5,
            lhs: IndexForm::progression(2, 1),
            relation: ClaimRelation::Equal(IndexForm::progression(2, 1)),
            probe: false,
        };
        let bad = CongruenceClaim {
            id: "shifted".into(),
            lhs: IndexForm::progression(1, 0),
            relation: ClaimRelation::Equal(IndexForm::progression(1, 1)),
            ..good.clone()
        };
        let summary = run_claims(&[good, bad], 200).unwrap();
        assert_eq!(summary.reports[0].status, ClaimStatus::Pass { assignments: 100 });
        match &summary.reports[1].status {
            ClaimStatus::Fail(f) => {
                // PD_t(0) = 0 but PD_t(1) = 1.
                assert_eq!(f.assignment.n, 0);
                assert_eq!(f.rhs_index, Some(1));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn malformed_claims_are_rejected() {
        let claim = zero_claim("a0", Sequence::PdTagged, 2, IndexForm::progression(0, 1));
        assert!(matches!(validate_claim(&claim), Err(HarnessError::BadClaim { .. })));

        let mut lhs = IndexForm::progression(1, 0);
        lhs.vars.insert("k".into(), 0);
        let unused = zero_claim("unused", Sequence::PdTagged, 2, lhs);
        assert!(matches!(validate_claim(&unused), Err(HarnessError::BadClaim { .. })));

        let mut lhs = IndexForm::progression(1, 0);
        lhs.towers.push(tower(2, ExpForm::Linear { var: "k".into(), mul: 1, add: 0 }));
        let undeclared = zero_claim("undeclared", Sequence::PdTagged, 2, lhs);
        assert!(matches!(validate_claim(&undeclared), Err(HarnessError::BadClaim { .. })));

        let mut lhs = IndexForm::progression(1, 0);
        lhs.towers.push(tower(1, ExpForm::Fixed(2)));
        let base1 = zero_claim("base1", Sequence::PdTagged, 2, lhs);
        assert!(matches!(validate_claim(&base1), Err(HarnessError::BadClaim { .. })));
    }

    #[test]
    fn corrupted_table_fails_the_cross_check() {
        let claims =
            [zero_claim("t3n", Sequence::PdTagged, 3, IndexForm::progression(3, 0))];
        let good = TableSet::build(&claims, 120).unwrap();
        let mut entries = good.entries.clone();
        entries.get_mut(&(Sequence::PdTagged, 3)).unwrap()[58] ^= 1;
        let tampered = TableSet::from_parts(120, entries);
        let oracle = weighted_dp(119).unwrap();
        match tampered.cross_check_against(&oracle) {
            Err(HarnessError::TableMismatch { index: 58, .. }) => {}
            other => panic!("expected mismatch at 58, got {other:?}"),
        }
    }
}
