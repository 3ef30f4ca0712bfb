//! Symbolic q-series expressions and identity verification.
//!
//! A [`QExpr`] is a tree of sums, products, and structural operators
//! (dissection, substitution, shift, exact halving) over [`EtaMonomial`]
//! leaves. [`evaluate`] turns a tree into a [`Series`] at a requested
//! order, propagating order requirements downward — a dissection by step
//! `m` evaluates its child to order `m*order + r`, a substitution only to
//! `ceil(order/k)`, and so on — so deep progression extractions stay cheap
//! in sparse eta arithmetic.
//!
//! Halving protocol: an expression carrying a `1/2^d` prefactor cannot be
//! evaluated directly in `Mod(2^k)`. [`evaluate`] lifts the working
//! modulus to `M * 2^d` for the subtree under a [`QExpr::HalveBy`] node
//! (or an [`EtaMonomial`] with `denom_log2 > 0`), checks that every
//! coefficient is divisible by `2^d`, divides, and lands back in `Mod(M)`.
//! In the exact ring the same node is plain exact division. A failed
//! divisibility check reports the offending coefficient index and the
//! subtree path.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::eta::{eta_quotient, EtaMonomial};
use crate::ring::{Ring, MAX_MODULUS};
use crate::series::{Series, SeriesError};

/// Symbolic series expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QExpr {
    Sum(Vec<QExpr>),
    Product(Vec<QExpr>),
    Eta(EtaMonomial),
    /// `b[n] = child[m*n + r]`.
    Dissect { m: usize, r: usize, child: Box<QExpr> },
    /// `q -> q^k`.
    Substitute { k: usize, child: Box<QExpr> },
    /// Multiply by `q^e`.
    Shift { e: usize, child: Box<QExpr> },
    /// Divide every coefficient exactly by `2^d`.
    HalveBy { d: u32, child: Box<QExpr> },
}

impl QExpr {
    pub fn eta(m: EtaMonomial) -> QExpr {
        QExpr::Eta(m)
    }

    /// Integer constant leaf.
    pub fn scalar(c: i64) -> QExpr {
        QExpr::Eta(EtaMonomial::new().with_scalar(c))
    }

    /// `c * q^p` leaf.
    pub fn qmono(c: i64, p: usize) -> QExpr {
        QExpr::Eta(EtaMonomial::new().with_scalar(c).with_qpow(p))
    }

    pub fn sum(children: Vec<QExpr>) -> QExpr {
        QExpr::Sum(children)
    }

    pub fn product(children: Vec<QExpr>) -> QExpr {
        QExpr::Product(children)
    }

    pub fn dissect(self, m: usize, r: usize) -> QExpr {
        QExpr::Dissect { m, r, child: Box::new(self) }
    }

    pub fn substitute(self, k: usize) -> QExpr {
        QExpr::Substitute { k, child: Box::new(self) }
    }

    pub fn shift(self, e: usize) -> QExpr {
        QExpr::Shift { e, child: Box::new(self) }
    }

    pub fn halve(self, d: u32) -> QExpr {
        QExpr::HalveBy { d, child: Box::new(self) }
    }
}

/// Evaluation failure, carrying the path of the offending subtree
/// (e.g. `lhs.sum[1].dissect.eta`).
#[derive(Clone, Debug, PartialEq)]
pub struct EvalError {
    pub path: String,
    pub error: SeriesError,
}

impl core::fmt::Display for EvalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}: {}", self.path, self.error)
    }
}

impl core::error::Error for EvalError {}

/// Evaluate `expr` to `order` coefficients in `ring`.
pub fn evaluate(expr: &QExpr, order: usize, ring: Ring) -> Result<Series, EvalError> {
    evaluate_at(expr, order, ring, "expr")
}

/// Like [`evaluate`], with a caller-chosen path root (`lhs` / `rhs`).
pub fn evaluate_at(expr: &QExpr, order: usize, ring: Ring, root: &str) -> Result<Series, EvalError> {
    let mut path = String::from(root);
    eval(expr, order, ring, &mut path)
}

fn fail(path: &str, error: SeriesError) -> EvalError {
    EvalError { path: path.to_string(), error }
}

/// Modulus for the subtree under a halve-by-`2^d` node: `Exact` stays
/// exact, `Mod(M)` lifts to `Mod(M * 2^d)`.
fn lift_ring(ring: Ring, d: u32, path: &str) -> Result<Ring, EvalError> {
    match ring {
        Ring::Exact => Ok(Ring::Exact),
        Ring::Mod(m) => {
            if d >= 63 || m > (MAX_MODULUS >> d) {
                Err(fail(path, SeriesError::ModulusOverflow { modulus: m, pow: d }))
            } else {
                Ok(Ring::Mod(m << d))
            }
        }
    }
}

fn eval(expr: &QExpr, order: usize, ring: Ring, path: &mut String) -> Result<Series, EvalError> {
    match expr {
        QExpr::Sum(children) => {
            if children.is_empty() {
                return Err(fail(path, SeriesError::EmptyCombination));
            }
            let mut acc: Option<Series> = None;
            for (i, child) in children.iter().enumerate() {
                let len = path.len();
                path.push_str(&format!(".sum[{i}]"));
                let s = eval(child, order, ring, path)?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.add(&s).map_err(|e| fail(path, e))?,
                });
                path.truncate(len);
            }
            Ok(acc.unwrap())
        }
        QExpr::Product(children) => {
            if children.is_empty() {
                return Err(fail(path, SeriesError::EmptyCombination));
            }
            let mut acc: Option<Series> = None;
            for (i, child) in children.iter().enumerate() {
                let len = path.len();
                path.push_str(&format!(".product[{i}]"));
                let s = eval(child, order, ring, path)?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.mul(&s).map_err(|e| fail(path, e))?,
                });
                path.truncate(len);
            }
            Ok(acc.unwrap())
        }
        QExpr::Eta(m) => {
            let d = m.denom_log2;
            if d == 0 {
                return eta_quotient(m, order, ring).map_err(|e| fail(path, e));
            }
            let lifted = lift_ring(ring, d, path)?;
            let s = eta_quotient(m, order, lifted).map_err(|e| fail(path, e))?;
            s.halve_exact(d).map_err(|e| fail(path, e))
        }
        QExpr::Dissect { m, r, child } => {
            if *m == 0 {
                return Err(fail(path, SeriesError::ZeroStep { what: "dissect" }));
            }
            if *r >= *m {
                return Err(fail(path, SeriesError::ResidueOutOfRange { r: *r, m: *m }));
            }
            let len = path.len();
            path.push_str(".dissect");
            let inner = eval(child, order * *m + *r, ring, path)?;
            let out = inner.dissect(*m, *r).map_err(|e| fail(path, e))?;
            path.truncate(len);
            Ok(out)
        }
        QExpr::Substitute { k, child } => {
            if *k == 0 {
                return Err(fail(path, SeriesError::ZeroStep { what: "substitute" }));
            }
            let len = path.len();
            path.push_str(".substitute");
            let inner = eval(child, order.div_ceil(*k), ring, path)?;
            let out = inner.substitute_to(*k, order).map_err(|e| fail(path, e))?;
            path.truncate(len);
            Ok(out)
        }
        QExpr::Shift { e, child } => {
            if *e >= order {
                // Every requested coefficient lies in the zero prefix.
                return Series::zeros(ring, order).map_err(|err| fail(path, err));
            }
            let len = path.len();
            path.push_str(".shift");
            let inner = eval(child, order - *e, ring, path)?;
            path.truncate(len);
            Ok(inner.shift(*e))
        }
        QExpr::HalveBy { d, child } => {
            let lifted = lift_ring(ring, *d, path)?;
            let len = path.len();
            path.push_str(".halve");
            let inner = eval(child, order, lifted, path)?;
            let out = inner.halve_exact(*d).map_err(|e| fail(path, e))?;
            path.truncate(len);
            Ok(out)
        }
    }
}

/// How the two sides of an identity are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Exact,
    Mod(u64),
}

impl Relation {
    pub fn ring(self) -> Ring {
        match self {
            Relation::Exact => Ring::Exact,
            Relation::Mod(m) => Ring::Mod(m),
        }
    }
}

impl core::fmt::Display for Relation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Relation::Exact => write!(f, "exact"),
            Relation::Mod(m) => write!(f, "mod {m}"),
        }
    }
}

/// One registry identity: `lhs = rhs` (exactly, or coefficientwise mod m)
/// out to `order` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityClaim {
    pub id: String,
    pub anchor: String,
    pub relation: Relation,
    pub order: usize,
    pub lhs: QExpr,
    pub rhs: QExpr,
}

/// First disagreeing coefficient of a failed comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of verifying one identity.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub id: String,
    pub pass: bool,
    pub order: usize,
    pub relation: Relation,
    pub mismatch: Option<Mismatch>,
    /// Evaluation failure (surfaced as a failed report, never a panic).
    pub error: Option<String>,
}

/// Verify one identity at its stored order, or at `order_override`.
pub fn verify(claim: &IdentityClaim, order_override: Option<usize>) -> VerifyReport {
    let order = order_override.unwrap_or(claim.order);
    let ring = claim.relation.ring();
    let mut report = VerifyReport {
        id: claim.id.clone(),
        pass: false,
        order,
        relation: claim.relation,
        mismatch: None,
        error: None,
    };

    let lhs = match evaluate_at(&claim.lhs, order, ring, "lhs") {
        Ok(s) => s,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    let rhs = match evaluate_at(&claim.rhs, order, ring, "rhs") {
        Ok(s) => s,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };

    match lhs.first_mismatch(&rhs) {
        Ok(None) => report.pass = true,
        Ok(Some(index)) => {
            report.mismatch = Some(Mismatch {
                index,
                lhs: lhs.coeff_bigint(index).unwrap().to_string(),
                rhs: rhs.coeff_bigint(index).unwrap().to_string(),
            });
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

// ---- Canonical generating-function expressions ----

/// `2 * sum PD_t(n) q^n = f_3^5/(f_1^3 f_6^2) - f_6/(f_1 f_2 f_3)`:
/// the tagged-parts generating function before the global halving.
pub fn pdt_doubled_expr() -> QExpr {
    QExpr::sum(alloc::vec![
        QExpr::eta(EtaMonomial::new().with_eta(3, 5).with_eta(1, -3).with_eta(6, -2)),
        QExpr::eta(
            EtaMonomial::new()
                .with_scalar(-1)
                .with_eta(6, 1)
                .with_eta(1, -1)
                .with_eta(2, -1)
                .with_eta(3, -1),
        ),
    ])
}

/// `sum PD_t(n) q^n`.
pub fn pdt_expr() -> QExpr {
    pdt_doubled_expr().halve(1)
}

/// `sum PDO_t(n) q^n = q f_2 f_3^2 f_12^2 / (f_1^2 f_6)`.
pub fn pdot_expr() -> QExpr {
    QExpr::eta(
        EtaMonomial::new()
            .with_qpow(1)
            .with_eta(2, 1)
            .with_eta(3, 2)
            .with_eta(12, 2)
            .with_eta(1, -2)
            .with_eta(6, -1),
    )
}

/// `sum PD(n) q^n = f_6/(f_1 f_2 f_3)` — partitions with designated
/// summands (each part size gets one tagged copy).
pub fn pd_expr() -> QExpr {
    QExpr::eta(
        EtaMonomial::new().with_eta(6, 1).with_eta(1, -1).with_eta(2, -1).with_eta(3, -1),
    )
}

/// `sum PDO(n) q^n = f_4 f_6^2/(f_1 f_3 f_12)` — the odd-parts variant.
pub fn pdo_expr() -> QExpr {
    QExpr::eta(
        EtaMonomial::new()
            .with_eta(4, 1)
            .with_eta(6, 2)
            .with_eta(1, -1)
            .with_eta(3, -1)
            .with_eta(12, -1),
    )
}
