//! Coefficient rings for truncated series.
//!
//! Two rings are supported:
//!
//! * [`Ring::Exact`] — arbitrary-precision signed integers.
//! * [`Ring::Mod`] — integers modulo `M` with `1 <= M <= 2^62`, residues
//!   normalized to `[0, M)`. The bound leaves headroom so a product of two
//!   residues fits in `u128` and a sum of two residues fits in `u64`.

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Largest admissible modulus, `2^62`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Descriptor of the coefficient ring a series lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Arbitrary-precision integers.
    Exact,
    /// Integers modulo the given `M`.
    Mod(u64),
}

impl Ring {
    pub fn is_exact(self) -> bool {
        matches!(self, Ring::Exact)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Ring::Exact => None,
            Ring::Mod(m) => Some(m),
        }
    }

    /// Check the modulus bound (`Exact` is always valid).
    pub fn validate(self) -> Result<(), InvalidModulus> {
        match self {
            Ring::Exact => Ok(()),
            Ring::Mod(m) if m >= 1 && m <= MAX_MODULUS => Ok(()),
            Ring::Mod(m) => Err(InvalidModulus(m)),
        }
    }
}

impl core::fmt::Display for Ring {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Ring::Exact => write!(f, "exact"),
            Ring::Mod(m) => write!(f, "mod {m}"),
        }
    }
}

/// Modulus outside `1..=2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvalidModulus(pub u64);

/// Ring operations shared by the series kernels. The trait is internal;
/// users see only the dynamic [`crate::series::Series`] front end.
pub(crate) trait CoeffRing: Clone + PartialEq {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn to_bigint(&self, v: &Self::Elem) -> BigInt;
    fn to_display(&self, v: &Self::Elem) -> String {
        self.to_bigint(v).to_string()
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem);
    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem);
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse, if `a` is a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// Arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ExactRing;

impl CoeffRing for ExactRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::ZERO
    }

    fn one(&self) -> BigInt {
        BigInt::from(1)
    }

    fn from_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }

    fn to_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }

    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }

    fn sub_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a -= b;
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn mul_add_assign(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        *acc += a * b;
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        // The units of Z are +1 and -1.
        if a.is_one_or_minus_one() {
            Some(a.clone())
        } else {
            None
        }
    }
}

trait OneOrMinusOne {
    fn is_one_or_minus_one(&self) -> bool;
}

impl OneOrMinusOne for BigInt {
    fn is_one_or_minus_one(&self) -> bool {
        self.magnitude().to_u32() == Some(1)
    }
}

/// Residues modulo `m`, stored normalized in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModRing {
    pub m: u64,
}

impl CoeffRing for ModRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.m
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.m);
        let mut r = v % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_u64().expect("residue fits in u64")
    }

    fn to_bigint(&self, v: &u64) -> BigInt {
        BigInt::from(*v)
    }

    fn add_assign(&self, a: &mut u64, b: &u64) {
        let s = *a + *b; // both < 2^62, no overflow
        *a = if s >= self.m { s - self.m } else { s };
    }

    fn sub_assign(&self, a: &mut u64, b: &u64) {
        *a = if *a >= *b { *a - *b } else { *a + self.m - *b };
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }

    fn mul_add_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - *a
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        let (g, x) = egcd(*a as i128, self.m as i128);
        if g != 1 {
            return None;
        }
        let m = self.m as i128;
        Some(x.rem_euclid(m) as u64)
    }
}

/// Extended Euclid: returns `(gcd(a, m), x)` with `a*x == gcd (mod m)`.
fn egcd(a: i128, m: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, m);
    let (mut x0, mut x1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
    }
    (r0, x0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_ring_normalizes_negative_input() {
        let r = ModRing { m: 7 };
        assert_eq!(r.from_bigint(&BigInt::from(-3)), 4);
        assert_eq!(r.from_bigint(&BigInt::from(-7)), 0);
    }

    #[test]
    fn mod_inverse_roundtrip() {
        let r = ModRing { m: 27 };
        for a in 1..27u64 {
            match r.inv(&a) {
                Some(ai) => assert_eq!(r.mul(&a, &ai), 1, "a={a}"),
                None => assert_eq!(num_integer_gcd(a, 27) == 1, false),
            }
        }
    }

    #[test]
    fn modulus_one_collapses_everything() {
        let r = ModRing { m: 1 };
        assert_eq!(r.one(), 0);
        assert_eq!(r.from_bigint(&BigInt::from(12345)), 0);
        assert_eq!(r.inv(&0), Some(0));
    }

    #[test]
    fn boundary_modulus_products_do_not_overflow() {
        let m = MAX_MODULUS;
        let r = ModRing { m: m };
        let a = m - 1;
        assert_eq!(r.mul(&a, &a), 1); // (-1)^2
        let mut s = a;
        r.add_assign(&mut s, &a);
        assert_eq!(s, m - 2);
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::Mod(0).validate().is_err());
        assert!(Ring::Mod(MAX_MODULUS + 1).validate().is_err());
        assert!(Ring::Mod(MAX_MODULUS).validate().is_ok());
        assert!(Ring::Exact.validate().is_ok());
    }

    fn num_integer_gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
}
