//! Command-line companion for the tagged-part q-series engine.
//!
//! The computational core (series arithmetic, eta/theta kernels,
//! combinatorial oracles, congruence scanning) lives in `qcongr-core`;
//! this crate adds everything that needs the standard library:
//!
//! - [`registry`] — the JSON file formats for identities and
//!   congruence claims, with strict load-time validation.
//! - [`runner`] — deterministic parallel execution of both kinds of
//!   registry over scoped worker threads.
//!
//! The `qcongr` binary wires these into `identities`, `claims`,
//! `table`, and `oracle` subcommands with a stable exit-code contract:
//! 0 for success, 1 for verification failure, 2 for usage or
//! configuration errors.

pub mod registry;
pub mod runner;
