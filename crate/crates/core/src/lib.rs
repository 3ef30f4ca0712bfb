//! Truncated formal q-series engine and congruence harness for the
//! tagged-part counting sequences of partitions with designated
//! summands.
//!
//! The crate is split into independent layers:
//!
//! - [`ring`] — coefficient domains: exact big integers and `Z/M`.
//! - [`series`] — truncated power series with dissection, substitution,
//!   shifting, and exact halving.
//! - [`eta`] — sparse Euler-product kernels `f_k`, the theta series
//!   `phi` and `a`, and eta-quotient monomials.
//! - [`expr`] — symbolic expression trees, order-aware evaluation, and
//!   identity verification.
//! - [`oracle`] — combinatorial counts by direct enumeration and exact
//!   dynamic programming, independent of the series engine.
//! - [`congruence`] — arithmetic-progression claims with tower
//!   exponents, residue tables, and oracle cross-checks.
//!
//! The `series`/`eta`/`expr` route and the `oracle` route never share
//! arithmetic, so agreement between them is meaningful evidence.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod congruence;
pub mod eta;
pub mod expr;
pub mod oracle;
pub mod ring;
pub mod series;

pub use eta::EtaMonomial;
pub use expr::{evaluate, verify, IdentityClaim, QExpr, Relation, VerifyReport};
pub use ring::Ring;
pub use series::{Series, SeriesError};
