//! JSON registries for the verification harness.
//!
//! Two file formats are defined here, each a JSON array:
//!
//! - the identity registry: entries with an expression on each side,
//!   compared coefficientwise ([`IdentityDto`] → [`IdentityClaim`]);
//! - the claim registry: congruences on the tagged-part sequences over
//!   arithmetic progressions with optional tower prefactors
//!   ([`ClaimDto`] → [`CongruenceClaim`]).
//!
//! Both registries ship compiled into the binary ([`DEFAULT_IDENTITIES`],
//! [`DEFAULT_CLAIMS`]); alternates can be loaded from disk. Parsing is
//! strict: malformed structure, zero steps, zero exponents, duplicate
//! ids, or unparseable scalars are load-time errors carrying the entry
//! id and field path.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use qcongr_core::congruence::{
    validate_claim, ClaimRelation, CongruenceClaim, ExpForm, HarnessError, IndexForm, Sequence,
    Tower,
};
use qcongr_core::expr::{IdentityClaim, QExpr, Relation};
use qcongr_core::EtaMonomial;
use serde::{Deserialize, Serialize};

/// Identity registry compiled into the binary.
pub const DEFAULT_IDENTITIES: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../registry/identities.json"));

/// Claim registry compiled into the binary.
pub const DEFAULT_CLAIMS: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../registry/claims.json"));

// ---- Errors ----

/// Registry loading failure.
#[derive(Debug)]
pub enum RegistryError {
    Io(std::io::Error),
    Json(serde_json::Error),
    /// Structurally valid JSON with invalid content, located by entry
    /// id and field path.
    Entry { id: String, reason: String },
}

impl fmt::Display for RegistryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegistryError::Io(e) => write!(f, "registry read failed: {e}"),
            RegistryError::Json(e) => write!(f, "registry JSON parse failed: {e}"),
            RegistryError::Entry { id, reason } => write!(f, "registry entry {id:?}: {reason}"),
        }
    }
}

impl std::error::Error for RegistryError {}

fn entry_err(id: &str, path: &str, reason: impl fmt::Display) -> RegistryError {
    RegistryError::Entry { id: id.into(), reason: format!("{path}: {reason}") }
}

// ---- Expression trees ----

/// One expression node. `eta` leaves denote
/// `scalar / 2^denom_log2 * q^qpow * prod f_k^e * prod a(q^k)^e * prod phi(q^k)^e`.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExprDto {
    Sum {
        children: Vec<ExprDto>,
    },
    Product {
        children: Vec<ExprDto>,
    },
    Eta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scalar: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        denom_log2: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        qpow: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eta: Option<BTreeMap<String, i32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<BTreeMap<String, i32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        phi: Option<BTreeMap<String, i32>>,
    },
    Dissect {
        m: usize,
        r: usize,
        child: Box<ExprDto>,
    },
    Substitute {
        k: usize,
        child: Box<ExprDto>,
    },
    Shift {
        e: usize,
        child: Box<ExprDto>,
    },
    Halve {
        d: u32,
        child: Box<ExprDto>,
    },
}

/// Parse the string keys of an exponent map, rejecting zero steps and
/// zero exponents.
fn exponent_map(
    id: &str,
    path: &str,
    name: &str,
    map: &Option<BTreeMap<String, i32>>,
) -> Result<Vec<(u32, i32)>, RegistryError> {
    let mut out = Vec::new();
    if let Some(map) = map {
        for (key, &e) in map {
            let step: u32 = key
                .parse()
                .ok()
                .filter(|&s| s >= 1)
                .ok_or_else(|| {
                    entry_err(id, path, format!("{name} step {key:?} is not a positive integer"))
                })?;
            if e == 0 {
                return Err(entry_err(id, path, format!("{name}[{step}] has exponent zero")));
            }
            out.push((step, e));
        }
    }
    Ok(out)
}

impl ExprDto {
    /// Convert to a core expression, validating structure along the way.
    pub fn to_expr(&self, id: &str, path: &str) -> Result<QExpr, RegistryError> {
        match self {
            ExprDto::Sum { children } | ExprDto::Product { children } => {
                let tag = if matches!(self, ExprDto::Sum { .. }) { "sum" } else { "product" };
                if children.is_empty() {
                    return Err(entry_err(id, path, format!("empty {tag}")));
                }
                let parts = children
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.to_expr(id, &format!("{path}.{tag}[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(match self {
                    ExprDto::Sum { .. } => QExpr::sum(parts),
                    _ => QExpr::product(parts),
                })
            }
            ExprDto::Eta { scalar, denom_log2, qpow, eta, a, phi } => {
                let mut m = EtaMonomial::new();
                if let Some(text) = scalar {
                    let c: BigInt = text.parse().map_err(|_| {
                        entry_err(id, path, format!("scalar {text:?} is not a decimal integer"))
                    })?;
                    m = m.with_scalar_big(c);
                }
                m = m.with_denom_log2(denom_log2.unwrap_or(0)).with_qpow(qpow.unwrap_or(0));
                for (step, e) in exponent_map(id, path, "eta", eta)? {
                    m = m.with_eta(step, e);
                }
                for (step, e) in exponent_map(id, path, "a", a)? {
                    m = m.with_theta_a(step, e);
                }
                for (step, e) in exponent_map(id, path, "phi", phi)? {
                    m = m.with_theta_phi(step, e);
                }
                Ok(QExpr::eta(m))
            }
            ExprDto::Dissect { m, r, child } => {
                if *m == 0 {
                    return Err(entry_err(id, path, "dissect step m must be positive"));
                }
                if r >= m {
                    return Err(entry_err(id, path, format!("dissect residue {r} not below {m}")));
                }
                Ok(child.to_expr(id, &format!("{path}.dissect"))?.dissect(*m, *r))
            }
            ExprDto::Substitute { k, child } => {
                if *k == 0 {
                    return Err(entry_err(id, path, "substitution power k must be positive"));
                }
                Ok(child.to_expr(id, &format!("{path}.substitute"))?.substitute(*k))
            }
            ExprDto::Shift { e, child } => {
                Ok(child.to_expr(id, &format!("{path}.shift"))?.shift(*e))
            }
            ExprDto::Halve { d, child } => {
                if *d == 0 {
                    return Err(entry_err(id, path, "halving depth d must be positive"));
                }
                Ok(child.to_expr(id, &format!("{path}.halve"))?.halve(*d))
            }
        }
    }
}

// ---- Identity registry ----

/// One identity entry as stored on disk.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityDto {
    pub id: String,
    /// ASCII quotation of the asserted formula.
    pub anchor: String,
    /// `"exact"` or `"mod:<m>"`.
    pub relation: String,
    pub order: usize,
    pub lhs: ExprDto,
    pub rhs: ExprDto,
}

fn parse_relation(id: &str, text: &str) -> Result<Relation, RegistryError> {
    if text == "exact" {
        return Ok(Relation::Exact);
    }
    if let Some(m) = text.strip_prefix("mod:") {
        let m: u64 = m
            .parse()
            .map_err(|_| entry_err(id, "relation", format!("bad modulus in {text:?}")))?;
        if m == 0 {
            return Err(entry_err(id, "relation", "modulus must be at least 1"));
        }
        return Ok(Relation::Mod(m));
    }
    Err(entry_err(id, "relation", format!("expected \"exact\" or \"mod:<m>\", got {text:?}")))
}

impl IdentityDto {
    pub fn to_claim(&self) -> Result<IdentityClaim, RegistryError> {
        if self.id.is_empty() {
            return Err(entry_err("<unnamed>", "id", "empty id"));
        }
        let relation = parse_relation(&self.id, &self.relation)?;
        if self.order < 2 {
            return Err(entry_err(&self.id, "order", "order must be at least 2"));
        }
        Ok(IdentityClaim {
            id: self.id.clone(),
            anchor: self.anchor.clone(),
            relation,
            order: self.order,
            lhs: self.lhs.to_expr(&self.id, "lhs")?,
            rhs: self.rhs.to_expr(&self.id, "rhs")?,
        })
    }
}

// ---- Claim registry ----

/// Tower exponent: `{"fixed": e}` or `{"var": name, "mul": m, "add": a}`
/// meaning `m*var + a` (defaults `mul = 1`, `add = 0`).
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ExpDto {
    Fixed {
        fixed: u32,
    },
    Linear {
        var: String,
        #[serde(default = "default_mul", skip_serializing_if = "is_one")]
        mul: u32,
        #[serde(default, skip_serializing_if = "is_zero")]
        add: u32,
    },
}

fn default_mul() -> u32 {
    1
}

fn is_one(v: &u32) -> bool {
    *v == 1
}

fn is_zero(v: &u32) -> bool {
    *v == 0
}

/// One tower factor `base^exp`.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDto {
    pub base: u64,
    pub exp: ExpDto,
}

/// Index family `prod towers * (a*n + b)`; `vars` maps each tower
/// variable to its minimum value.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IndexFormDto {
    pub a: u64,
    pub b: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub towers: Vec<TowerDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vars: BTreeMap<String, u32>,
}

impl IndexFormDto {
    fn to_form(&self) -> IndexForm {
        IndexForm {
            a: self.a,
            b: self.b,
            towers: self
                .towers
                .iter()
                .map(|t| Tower {
                    base: t.base,
                    exp: match &t.exp {
                        ExpDto::Fixed { fixed } => ExpForm::Fixed(*fixed),
                        ExpDto::Linear { var, mul, add } => {
                            ExpForm::Linear { var: var.clone(), mul: *mul, add: *add }
                        }
                    },
                })
                .collect(),
            vars: self.vars.clone(),
        }
    }
}

/// One congruence claim as stored on disk.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimDto {
    pub id: String,
    /// ASCII quotation of the asserted congruence.
    pub anchor: String,
    /// `"PDt"` or `"PDOt"`.
    pub seq: String,
    #[serde(rename = "mod")]
    pub modulus: u64,
    /// `"zero"` (no `rhs`) or `"equal"` (requires `rhs`).
    pub relation: String,
    pub lhs: IndexFormDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<IndexFormDto>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub probe: bool,
}

impl ClaimDto {
    pub fn to_claim(&self) -> Result<CongruenceClaim, RegistryError> {
        if self.id.is_empty() {
            return Err(entry_err("<unnamed>", "id", "empty id"));
        }
        let seq = match self.seq.as_str() {
            "PDt" => Sequence::PdTagged,
            "PDOt" => Sequence::PdoTagged,
            other => {
                return Err(entry_err(
                    &self.id,
                    "seq",
                    format!("expected \"PDt\" or \"PDOt\", got {other:?}"),
                ))
            }
        };
        let relation = match (self.relation.as_str(), &self.rhs) {
            ("zero", None) => ClaimRelation::Zero,
            ("zero", Some(_)) => {
                return Err(entry_err(&self.id, "rhs", "zero claims take no companion form"))
            }
            ("equal", Some(rhs)) => ClaimRelation::Equal(rhs.to_form()),
            ("equal", None) => {
                return Err(entry_err(&self.id, "rhs", "equal claims need a companion form"))
            }
            (other, _) => {
                return Err(entry_err(
                    &self.id,
                    "relation",
                    format!("expected \"zero\" or \"equal\", got {other:?}"),
                ))
            }
        };
        let claim = CongruenceClaim {
            id: self.id.clone(),
            anchor: self.anchor.clone(),
            seq,
            modulus: self.modulus,
            lhs: self.lhs.to_form(),
            relation,
            probe: self.probe,
        };
        match validate_claim(&claim) {
            Ok(()) => Ok(claim),
            Err(HarnessError::BadClaim { id, reason }) => {
                Err(RegistryError::Entry { id, reason })
            }
            Err(other) => Err(RegistryError::Entry {
                id: self.id.clone(),
                reason: format!("{other:?}"),
            }),
        }
    }
}

// ---- Loading ----

fn check_unique(ids: impl Iterator<Item = String>) -> Result<(), RegistryError> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id.clone()) {
            return Err(RegistryError::Entry { id, reason: "duplicate id".into() });
        }
    }
    Ok(())
}

/// Parse an identity registry from JSON text.
pub fn parse_identities(text: &str) -> Result<Vec<IdentityClaim>, RegistryError> {
    let dtos: Vec<IdentityDto> = serde_json::from_str(text).map_err(RegistryError::Json)?;
    check_unique(dtos.iter().map(|d| d.id.clone()))?;
    dtos.iter().map(IdentityDto::to_claim).collect()
}

/// Parse a claim registry from JSON text.
pub fn parse_claims(text: &str) -> Result<Vec<CongruenceClaim>, RegistryError> {
    let dtos: Vec<ClaimDto> = serde_json::from_str(text).map_err(RegistryError::Json)?;
    check_unique(dtos.iter().map(|d| d.id.clone()))?;
    dtos.iter().map(ClaimDto::to_claim).collect()
}

/// Load an identity registry from disk.
pub fn load_identities(path: &Path) -> Result<Vec<IdentityClaim>, RegistryError> {
    parse_identities(&fs::read_to_string(path).map_err(RegistryError::Io)?)
}

/// Load a claim registry from disk.
pub fn load_claims(path: &Path) -> Result<Vec<CongruenceClaim>, RegistryError> {
    parse_claims(&fs::read_to_string(path).map_err(RegistryError::Io)?)
}
