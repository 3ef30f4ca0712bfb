//! Euler products and theta series.
//!
//! `f_k` denotes the Euler product `(q^k; q^k)_inf = prod_{j>=1} (1 - q^{kj})`.
//! By the pentagonal number theorem its expansion is the sparse signed sum
//! `sum_{j in Z} (-1)^j q^{k j(3j-1)/2}`, which gives two O(N*sqrt(N/k))
//! kernels:
//!
//! * [`eta_mul`] with `e = +1` — multiply a series by `f_k` (signed shifted
//!   adds over pentagonal offsets);
//! * [`eta_mul`] with `e = -1` — divide by `f_k` via the forward recurrence.
//!
//! [`eta_quotient`] evaluates a whole [`EtaMonomial`]
//! `c/2^d * q^p * prod f_k^{e_k} * prod a(q^k)^{., } * prod phi(q^k)^{.}`
//! by successive sparse passes (never dense powering of `f_k`). The
//! two theta families come from direct lattice enumeration so they stay
//! independent of the eta route:
//!
//! * [`theta_phi`]: `phi(q) = sum_{n in Z} q^{n^2}`;
//! * [`theta_a`]: `a(q) = sum_{m,n in Z} q^{m^2 + mn + n^2}` (the cubic
//!   theta function).
//!
//! Note on the `1/2^d` prefactor: [`eta_quotient`] deliberately does *not*
//! divide by `2^d`. Halving interacts with the working modulus, so the
//! identity layer lifts the modulus, evaluates, and calls
//! [`Series::halve_exact`] itself; see `expr`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ring::{CoeffRing, Ring};
use crate::series::{Raw, Repr, Series, SeriesError};

/// Pentagonal exponents `step * j(3j-1)/2 < limit` for `j = 0, ±1, ±2, ...`
/// in increasing order, paired with `true` when the term is subtracted
/// (odd `j`).
pub fn pentagonal_terms(step: usize, limit: usize) -> Vec<(usize, bool)> {
    let mut terms = Vec::new();
    if limit > 0 {
        terms.push((0, false));
    }
    for j in 1usize.. {
        let g1 = step * (j * (3 * j - 1) / 2);
        let g2 = step * (j * (3 * j + 1) / 2);
        let negative = j % 2 == 1;
        if g1 >= limit {
            break;
        }
        terms.push((g1, negative));
        if g2 < limit {
            terms.push((g2, negative));
        }
    }
    terms
}

/// The series of `f_k` itself.
pub fn eta_series(k: usize, order: usize, ring: Ring) -> Result<Series, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroStep { what: "eta_series" });
    }
    let mut coeffs = alloc::vec![BigInt::ZERO; order];
    for (g, negative) in pentagonal_terms(k, order) {
        coeffs[g] = if negative { BigInt::from(-1) } else { BigInt::from(1) };
    }
    Series::from_bigints(ring, &coeffs)
}

fn eta_mul_raw<R: CoeffRing>(a: &Raw<R>, terms: &[(usize, bool)]) -> Raw<R> {
    let ring = a.ring.clone();
    let order = a.order();
    let mut out = Raw::zeros(ring.clone(), order);
    for &(g, negative) in terms {
        for n in g..order {
            if negative {
                let v = a.coeffs[n - g].clone();
                ring.sub_assign(&mut out.coeffs[n], &v);
            } else {
                let v = a.coeffs[n - g].clone();
                ring.add_assign(&mut out.coeffs[n], &v);
            }
        }
    }
    out
}

fn eta_div_raw<R: CoeffRing>(a: &Raw<R>, terms: &[(usize, bool)]) -> Raw<R> {
    // b = a / f_k from a[n] = sum_g sign_g b[n - g]  (g = 0 term has sign +):
    // b[n] = a[n] - sum_{g > 0} sign_g b[n - g].
    let ring = a.ring.clone();
    let order = a.order();
    let mut out = Raw::zeros(ring.clone(), order);
    for n in 0..order {
        let mut v = a.coeffs[n].clone();
        for &(g, negative) in &terms[1..] {
            if g > n {
                break;
            }
            let prev = out.coeffs[n - g].clone();
            if negative {
                ring.add_assign(&mut v, &prev);
            } else {
                ring.sub_assign(&mut v, &prev);
            }
        }
        out.coeffs[n] = v;
    }
    out
}

/// Multiply (`e = +1`) or divide (`e = -1`) by `f_k` in a single sparse pass.
pub fn eta_mul(s: &Series, k: usize, e: i64) -> Result<Series, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroStep { what: "eta_mul" });
    }
    if e != 1 && e != -1 {
        return Err(SeriesError::EtaExponent { e });
    }
    let terms = pentagonal_terms(k, s.order().max(1));
    Ok(match &s.repr {
        Repr::Exact(a) => Series {
            repr: Repr::Exact(if e == 1 { eta_mul_raw(a, &terms) } else { eta_div_raw(a, &terms) }),
        },
        Repr::Mod(a) => Series {
            repr: Repr::Mod(if e == 1 { eta_mul_raw(a, &terms) } else { eta_div_raw(a, &terms) }),
        },
    })
}

/// `phi(q^k) = 1 + 2 sum_{n >= 1} q^{k n^2}`.
pub fn theta_phi_step(k: usize, order: usize, ring: Ring) -> Result<Series, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroStep { what: "theta_phi" });
    }
    let mut s = Series::one(ring, order)?;
    let two = BigInt::from(2);
    for n in 1usize.. {
        let Some(sq) = n.checked_mul(n).and_then(|v| v.checked_mul(k)) else { break };
        if sq >= order {
            break;
        }
        s = s.add(&Series::monomial(ring, &two, sq, order)?)?;
    }
    Ok(s)
}

/// `phi(q)`, see [`theta_phi_step`].
pub fn theta_phi(order: usize, ring: Ring) -> Result<Series, SeriesError> {
    theta_phi_step(1, order, ring)
}

/// `a(q^k)` for the cubic theta `a(q) = sum_{m,n} q^{m^2 + mn + n^2}`,
/// by direct enumeration of the hexagonal lattice.
pub fn theta_a_step(k: usize, order: usize, ring: Ring) -> Result<Series, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroStep { what: "theta_a" });
    }
    ring.validate()?;
    let q_limit = order.div_ceil(k); // values v with k*v < order
    let mut counts = alloc::vec![0i64; q_limit];
    // m^2 + mn + n^2 >= 3*max(m^2, n^2)/4, so |m|, |n| <= sqrt(4Q/3).
    let bound = ((4 * q_limit as u64 + 2) / 3).isqrt() as i64 + 1;
    for m in -bound..=bound {
        for n in -bound..=bound {
            let v = m * m + m * n + n * n;
            if (v as usize) < q_limit {
                counts[v as usize] += 1;
            }
        }
    }
    let mut coeffs = alloc::vec![BigInt::ZERO; order];
    for (v, &c) in counts.iter().enumerate() {
        if c != 0 {
            coeffs[k * v] = BigInt::from(c);
        }
    }
    Series::from_bigints(ring, &coeffs)
}

/// `a(q)`, see [`theta_a_step`].
pub fn theta_a(order: usize, ring: Ring) -> Result<Series, SeriesError> {
    theta_a_step(1, order, ring)
}

/// One multiplicative building block:
/// `scalar / 2^denom_log2 * q^qpow * prod_k f_k^{eta[k]}
///  * prod_k a(q^k)^{theta_a[k]} * prod_k phi(q^k)^{theta_phi[k]}`.
///
/// Maps are keyed by the step `k`; zero exponents are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaMonomial {
    pub scalar: BigInt,
    pub denom_log2: u32,
    pub qpow: usize,
    pub eta: BTreeMap<u32, i32>,
    pub theta_a: BTreeMap<u32, i32>,
    pub theta_phi: BTreeMap<u32, i32>,
}

impl Default for EtaMonomial {
    fn default() -> Self {
        EtaMonomial {
            scalar: BigInt::from(1),
            denom_log2: 0,
            qpow: 0,
            eta: BTreeMap::new(),
            theta_a: BTreeMap::new(),
            theta_phi: BTreeMap::new(),
        }
    }
}

impl EtaMonomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_scalar(mut self, c: i64) -> Self {
        self.scalar = BigInt::from(c);
        self
    }

    pub fn with_scalar_big(mut self, c: BigInt) -> Self {
        self.scalar = c;
        self
    }

    pub fn with_denom_log2(mut self, d: u32) -> Self {
        self.denom_log2 = d;
        self
    }

    pub fn with_qpow(mut self, p: usize) -> Self {
        self.qpow = p;
        self
    }

    /// Add `e` to the exponent of `f_k`; entries that cancel are removed.
    pub fn with_eta(mut self, k: u32, e: i32) -> Self {
        bump(&mut self.eta, k, e);
        self
    }

    pub fn with_theta_a(mut self, k: u32, e: i32) -> Self {
        bump(&mut self.theta_a, k, e);
        self
    }

    pub fn with_theta_phi(mut self, k: u32, e: i32) -> Self {
        bump(&mut self.theta_phi, k, e);
        self
    }
}

fn bump(map: &mut BTreeMap<u32, i32>, k: u32, e: i32) {
    let v = map.entry(k).or_insert(0);
    *v += e;
    if *v == 0 {
        map.remove(&k);
    }
}

/// Evaluate an [`EtaMonomial`] to the given order, ignoring `denom_log2`
/// (see the module notes). Eta factors are applied as `|e|` successive
/// sparse passes, positive exponents before negative ones; theta factors
/// are combined by dense multiplication.
pub fn eta_quotient(m: &EtaMonomial, order: usize, ring: Ring) -> Result<Series, SeriesError> {
    ring.validate()?;
    for map in [&m.eta, &m.theta_a, &m.theta_phi] {
        if map.keys().any(|&k| k == 0) {
            return Err(SeriesError::ZeroStep { what: "eta_quotient factor" });
        }
    }

    let mut out = Series::monomial(ring, &m.scalar, m.qpow, order)?;
    if m.scalar.is_zero() {
        return Ok(out);
    }

    // Numerator eta passes first keeps intermediate series integral in
    // spirit; the division recurrence is exact either way.
    for (&k, &e) in m.eta.iter().filter(|(_, &e)| e > 0) {
        for _ in 0..e {
            out = eta_mul(&out, k as usize, 1)?;
        }
    }
    for (&k, &e) in m.eta.iter().filter(|(_, &e)| e < 0) {
        for _ in 0..(-e) {
            out = eta_mul(&out, k as usize, -1)?;
        }
    }

    for (&k, &e) in &m.theta_a {
        let t = theta_a_step(k as usize, order, ring)?;
        out = out.mul(&t.pow(e as i64)?)?;
    }
    for (&k, &e) in &m.theta_phi {
        let t = theta_phi_step(k as usize, order, ring)?;
        out = out.mul(&t.pow(e as i64)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn euler_product_first_thirteen_coefficients() {
        let f1 = eta_series(1, 13, Ring::Exact).unwrap();
        let expect: Vec<BigInt> =
            [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(f1.coeffs_bigint(), expect);
    }

    #[test]
    fn eta_series_of_step_k_is_substitution() {
        let f1 = eta_series(1, 40, Ring::Exact).unwrap();
        let f5 = eta_series(5, 200, Ring::Exact).unwrap();
        assert_eq!(f1.substitute_to(5, 200).unwrap(), f5);
    }

    #[test]
    fn dividing_by_f1_counts_partitions() {
        // Independent oracle: textbook coin-style DP for p(n).
        let n = 32usize;
        let mut p = vec![0u64; n];
        p[0] = 1;
        for s in 1..n {
            for v in s..n {
                p[v] += p[v - s];
            }
        }
        let one = Series::one(Ring::Exact, n).unwrap();
        let inv_f1 = eta_mul(&one, 1, -1).unwrap();
        for (i, &pi) in p.iter().enumerate() {
            assert_eq!(inv_f1.coeff_bigint(i).unwrap(), BigInt::from(pi), "p({i})");
        }
    }

    #[test]
    fn sparse_multiply_then_divide_round_trips() {
        let s = Series::from_i64(Ring::Mod(27), &[1, 5, 2, 0, 7, 26, 3, 3, 1, 0, 4, 11]).unwrap();
        for k in [1usize, 2, 3, 5] {
            let up = eta_mul(&s, k, 1).unwrap();
            let back = eta_mul(&up, k, -1).unwrap();
            assert_eq!(back, s, "k={k}");
        }
    }

    #[test]
    fn eta_mul_rejects_other_exponents() {
        let s = Series::one(Ring::Exact, 4).unwrap();
        assert!(matches!(eta_mul(&s, 1, 2), Err(SeriesError::EtaExponent { e: 2 })));
        assert!(matches!(eta_mul(&s, 0, 1), Err(SeriesError::ZeroStep { .. })));
    }

    #[test]
    fn phi_theta_row() {
        let phi = theta_phi(10, Ring::Exact).unwrap();
        let expect: Vec<BigInt> =
            [1, 2, 0, 0, 2, 0, 0, 0, 0, 2].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(phi.coeffs_bigint(), expect);
    }

    #[test]
    fn cubic_theta_row() {
        let a = theta_a(8, Ring::Exact).unwrap();
        let expect: Vec<BigInt> =
            [1, 6, 0, 6, 6, 0, 0, 12].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(a.coeffs_bigint(), expect);
    }

    #[test]
    fn quotient_with_trivial_monomial() {
        let m = EtaMonomial::new().with_scalar(-3).with_qpow(2);
        let s = eta_quotient(&m, 5, Ring::Exact).unwrap();
        assert_eq!(s, Series::from_i64(Ring::Exact, &[0, 0, -3, 0, 0]).unwrap());
    }

    #[test]
    fn quotient_matches_naive_route() {
        // f_2^3 / f_1^2 both by sparse passes and by dense pow/invert.
        let order = 60;
        let m = EtaMonomial::new().with_eta(2, 3).with_eta(1, -2);
        let fast = eta_quotient(&m, order, Ring::Exact).unwrap();
        let f1 = eta_series(1, order, Ring::Exact).unwrap();
        let f2 = eta_series(2, order, Ring::Exact).unwrap();
        let slow = f2.pow(3).unwrap().mul(&f1.pow(-2).unwrap()).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn exponent_bump_drops_cancelled_entries() {
        let m = EtaMonomial::new().with_eta(2, 1).with_eta(2, -1).with_eta(3, 2);
        assert!(!m.eta.contains_key(&2));
        assert_eq!(m.eta.get(&3), Some(&2));
    }
}
