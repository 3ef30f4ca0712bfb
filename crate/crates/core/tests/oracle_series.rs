//! Agreement between the independent computation routes: exhaustive
//! enumeration, exact dynamic programming, the series engine, and
//! divisor-sum formulas for the theta leaves.

use num_bigint::BigInt;
use qcongr_core::eta::{theta_a, theta_phi};
use qcongr_core::expr::{evaluate, pd_expr, pdo_expr, pdot_expr, pdt_expr};
use qcongr_core::oracle::{enumerate, weighted_dp};
use qcongr_core::ring::Ring;

#[test]
fn enumeration_matches_dp_to_forty() {
    let table = weighted_dp(40).unwrap();
    for n in 0..=40 {
        let c = enumerate(n).unwrap();
        assert_eq!(table.pd[n], BigInt::from(c.pd), "PD({n})");
        assert_eq!(table.pd_t[n], BigInt::from(c.pd_t), "PD_t({n})");
        assert_eq!(table.pdo[n], BigInt::from(c.pdo), "PDO({n})");
        assert_eq!(table.pdo_t[n], BigInt::from(c.pdo_t), "PDO_t({n})");
    }
}

#[test]
fn hand_counted_rows_are_pinned() {
    // Worked by hand over the partition lists of 0..=4.
    let pd = [1u64, 1, 3, 5, 10];
    let pdo = [1u64, 1, 2, 4, 5];
    for n in 0..=4 {
        let c = enumerate(n).unwrap();
        assert_eq!(c.pd, pd[n], "PD({n})");
        assert_eq!(c.pdo, pdo[n], "PDO({n})");
    }
}

#[test]
fn series_engine_matches_dp_to_two_thousand() {
    let order = 2001;
    let table = weighted_dp(2000).unwrap();
    let columns: [(&str, _, &Vec<BigInt>); 4] = [
        ("PD", pd_expr(), &table.pd),
        ("PD_t", pdt_expr(), &table.pd_t),
        ("PDO", pdo_expr(), &table.pdo),
        ("PDO_t", pdot_expr(), &table.pdo_t),
    ];
    for (name, expr, column) in columns {
        let series = evaluate(&expr, order, Ring::Exact).unwrap();
        for (n, want) in column.iter().enumerate() {
            assert_eq!(&series.coeff_bigint(n).unwrap(), want, "{name}({n})");
        }
    }
}

#[test]
fn modular_evaluation_matches_dp_columns() {
    let order = 600;
    let table = weighted_dp(order - 1).unwrap();
    for m in [2u64, 3, 4, 8, 9, 27] {
        let series = evaluate(&pdt_expr(), order, Ring::Mod(m)).unwrap();
        let coeffs = series.mod_coeffs().unwrap();
        for (n, want) in table.pd_t.iter().enumerate() {
            let want = want % BigInt::from(m);
            assert_eq!(BigInt::from(coeffs[n]), want, "PD_t({n}) mod {m}");
        }
    }
}

/// Number of divisors of `n` congruent to `r` mod 3.
fn divisors_mod3(n: usize, r: usize) -> i64 {
    (1..=n).filter(|d| n % d == 0 && d % 3 == r).count() as i64
}

#[test]
fn cubic_theta_matches_its_divisor_sum() {
    let order = 600;
    let a = theta_a(order, Ring::Exact).unwrap();
    for n in 0..order {
        let want = if n == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(6 * (divisors_mod3(n, 1) - divisors_mod3(n, 2)))
        };
        assert_eq!(a.coeff_bigint(n).unwrap(), want, "a(q) coefficient {n}");
    }
}

#[test]
fn phi_counts_signed_square_roots() {
    let order = 1000;
    let phi = theta_phi(order, Ring::Exact).unwrap();
    for n in 0..order {
        let is_square = (0..).map(|k| k * k).take_while(|&s| s <= n).any(|s| s == n);
        let want = if n == 0 {
            1
        } else if is_square {
            2
        } else {
            0
        };
        assert_eq!(phi.coeff_bigint(n).unwrap(), BigInt::from(want), "phi coefficient {n}");
    }
}
