//! Combinatorial oracle for partitions with designated summands.
//!
//! Everything here counts by walking partitions or by direct dynamic
//! programming over part sizes — no formal series, no eta quotients —
//! so it provides an independent check on the series engine:
//!
//! - [`enumerate`] — exhaustive walk over partitions of one `n` (small
//!   `n` only), returning all four counts at once.
//! - [`weighted_dp`] — exact big-integer tables of all four sequences
//!   up to a few thousand terms, via a product-rule sweep over part
//!   sizes.
//!
//! A partition with designated summands designates exactly one
//! occurrence of each part size that appears, so a partition with
//! distinct sizes of multiplicities `m_1..m_r` is counted `m_1*...*m_r`
//! times, and contributes `r` tagged parts to each of those copies.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

/// Largest `n` accepted by [`enumerate`].
pub const ENUM_MAX: usize = 45;

/// Largest table size accepted by [`weighted_dp`].
pub const DP_MAX: usize = 5000;

/// Out-of-range request for one of the oracle routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    EnumerationBound { n: usize, max: usize },
    TableBound { max_n: usize, max: usize },
}

impl core::fmt::Display for OracleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OracleError::EnumerationBound { n, max } => {
                write!(f, "enumeration oracle is limited to n <= {max}, got {n}")
            }
            OracleError::TableBound { max_n, max } => {
                write!(f, "dp oracle is limited to max_n <= {max}, got {max_n}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// The four designated-summand counts at a single `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactCounts {
    /// Partitions with designated summands.
    pub pd: u64,
    /// Tagged parts over those partitions.
    pub pd_t: u64,
    /// The same pair restricted to odd parts.
    pub pdo: u64,
    pub pdo_t: u64,
}

/// Count partitions of `n` with designated summands by exhaustive
/// enumeration (`n <= ENUM_MAX`).
pub fn enumerate(n: usize) -> Result<ExactCounts, OracleError> {
    if n > ENUM_MAX {
        return Err(OracleError::EnumerationBound { n, max: ENUM_MAX });
    }
    let (pd, pd_t) = walk(n, n, false);
    let (pdo, pdo_t) = walk(n, n, true);
    Ok(ExactCounts { pd, pd_t, pdo, pdo_t })
}

/// Sum `(prod of multiplicities, r * prod)` over partitions of
/// `remaining` into distinct sizes `<= max_size` (odd sizes only when
/// `odd_only`), given the recursion's accumulated weight.
fn walk(remaining: usize, max_size: usize, odd_only: bool) -> (u64, u64) {
    fn inner(remaining: usize, max_size: usize, odd_only: bool, prod: u64, r: u64, acc: &mut (u64, u64)) {
        if remaining == 0 {
            acc.0 += prod;
            acc.1 += r * prod;
            return;
        }
        let mut s = max_size.min(remaining);
        if s == 0 {
            return;
        }
        if odd_only && s % 2 == 0 {
            s -= 1;
        }
        while s >= 1 {
            for m in 1..=remaining / s {
                inner(remaining - m * s, s - 1, odd_only, prod * m as u64, r + 1, acc);
            }
            s = if odd_only { s.saturating_sub(2) } else { s - 1 };
        }
    }
    let mut acc = (0, 0);
    inner(remaining, max_size, odd_only, 1, 0, &mut acc);
    acc
}

/// Exact tables of all four sequences for `0 <= n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTable {
    pub max_n: usize,
    pub pd: Vec<BigInt>,
    pub pd_t: Vec<BigInt>,
    pub pdo: Vec<BigInt>,
    pub pdo_t: Vec<BigInt>,
}

/// Build the exact tables by dynamic programming over part sizes
/// (`max_n <= DP_MAX`).
///
/// Each size `s` multiplies the running bivariate product by
/// `1 + t*q^s/(1-q^s)^2`, where `t` marks one tagged part. Tracking the
/// pair `(A, T) = (value at t=1, d/dt at t=1)` turns that into two
/// shifted prefix-sum updates per size.
pub fn weighted_dp(max_n: usize) -> Result<OracleTable, OracleError> {
    if max_n > DP_MAX {
        return Err(OracleError::TableBound { max_n, max: DP_MAX });
    }
    let (pd, pd_t) = dp_pair(max_n, false);
    let (pdo, pdo_t) = dp_pair(max_n, true);
    Ok(OracleTable { max_n, pd, pd_t, pdo, pdo_t })
}

fn dp_pair(max_n: usize, odd_only: bool) -> (Vec<BigInt>, Vec<BigInt>) {
    let len = max_n + 1;
    let mut a = vec![BigInt::zero(); len];
    let mut t = vec![BigInt::zero(); len];
    a[0] = BigInt::from(1);

    let mut s = 1;
    while s <= max_n {
        // ea = A * q^s/(1-q^s)^2, et = T * q^s/(1-q^s)^2.
        let mut ea = shifted(&a, s);
        let mut et = shifted(&t, s);
        for _ in 0..2 {
            prefix_add(&mut ea, s);
            prefix_add(&mut et, s);
        }
        for n in s..len {
            t[n] += &et[n];
            t[n] += &ea[n];
            a[n] += &ea[n];
        }
        s += if odd_only { 2 } else { 1 };
    }
    (a, t)
}

fn shifted(v: &[BigInt], s: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); v.len()];
    for n in s..v.len() {
        out[n] = v[n - s].clone();
    }
    out
}

/// In-place multiplication by `1/(1-q^s)`.
fn prefix_add(v: &mut [BigInt], s: usize) {
    for n in s..v.len() {
        let (lo, hi) = v.split_at_mut(n);
        hi[0] += &lo[n - s];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_anchor_values() {
        // PD(4): the copies of 4, 3+1, 2+2, 2+1+1, 1+1+1+1 weighted by
        // multiplicity products are 1, 1, 2, 2, 4.
        let c = enumerate(4).unwrap();
        assert_eq!(c.pd, 10);
        assert_eq!(c.pd_t, 13);
        assert_eq!(c.pdo, 5);
        assert_eq!(c.pdo_t, 6);

        assert_eq!(enumerate(0).unwrap(), ExactCounts { pd: 1, pd_t: 0, pdo: 1, pdo_t: 0 });
    }

    #[test]
    fn tagged_rows() {
        let pd_t = [0u64, 1, 3, 6, 13, 24, 45, 77, 132, 213, 346, 537, 834];
        let pdo_t = [0u64, 1, 2, 4, 6, 10, 16, 24, 36, 52, 74, 104, 144];
        for n in 0..13 {
            let c = enumerate(n).unwrap();
            assert_eq!(c.pd_t, pd_t[n], "PD_t({n})");
            assert_eq!(c.pdo_t, pdo_t[n], "PDO_t({n})");
        }
    }

    #[test]
    fn dp_matches_enumeration() {
        let table = weighted_dp(24).unwrap();
        for n in 0..=24 {
            let c = enumerate(n).unwrap();
            assert_eq!(table.pd[n], BigInt::from(c.pd), "PD({n})");
            assert_eq!(table.pd_t[n], BigInt::from(c.pd_t), "PD_t({n})");
            assert_eq!(table.pdo[n], BigInt::from(c.pdo), "PDO({n})");
            assert_eq!(table.pdo_t[n], BigInt::from(c.pdo_t), "PDO_t({n})");
        }
    }

    #[test]
    fn dp_multiples_of_three_divisible() {
        let table = weighted_dp(400).unwrap();
        let three = BigInt::from(3);
        for n in 0..=133 {
            assert!((&table.pd_t[3 * n] % &three).is_zero(), "PD_t({})", 3 * n);
            if 3 * n + 2 <= 400 {
                assert!((&table.pd_t[3 * n + 2] % &three).is_zero(), "PD_t({})", 3 * n + 2);
            }
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert_eq!(enumerate(46), Err(OracleError::EnumerationBound { n: 46, max: 45 }));
        assert!(enumerate(45).is_ok());
        assert_eq!(weighted_dp(5001), Err(OracleError::TableBound { max_n: 5001, max: 5000 }));
    }
}
