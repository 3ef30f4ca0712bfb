//! Truncated formal power series over an [`Ring`].
//!
//! A [`Series`] stores exactly `order` coefficients, `[q^0] .. [q^(order-1)]`;
//! `order` is the exclusive truncation bound. All arithmetic truncates
//! eagerly, and every binary operation requires both operands to live in the
//! same ring, producing a result of order `min` of the operand orders.
//!
//! Operations:
//!
//! * [`Series::linear_combine`] — integer-linear combinations.
//! * [`Series::mul`] — Cauchy product (schoolbook; orders here never make
//!   FFT worthwhile).
//! * [`Series::invert`] — reciprocal of a series with unit constant term.
//! * [`Series::pow`] — integer powers by repeated squaring; negative
//!   exponents invert first.
//! * [`Series::dissect`] — arithmetic-progression extraction
//!   `b[n] = a[m*n + r]`.
//! * [`Series::substitute`] — `q -> q^k`.
//! * [`Series::shift`] — multiplication by `q^e`.
//! * [`Series::halve_exact`] — exact division by `2^d`, with the modulus
//!   dropping by `2^d` in a modular ring.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::ring::{CoeffRing, ExactRing, InvalidModulus, ModRing, Ring};

/// Raw series over a concrete coefficient ring; the algorithm bodies live
/// here, written once and monomorphized for both rings.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Raw<R: CoeffRing> {
    pub ring: R,
    pub coeffs: Vec<R::Elem>,
}

impl<R: CoeffRing> Raw<R> {
    pub fn zeros(ring: R, order: usize) -> Self {
        let coeffs = vec![ring.zero(); order];
        Raw { ring, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zeros(self.ring.clone(), order);
        for n in 0..order {
            out.coeffs[n] = self.coeffs[n].clone();
            self.ring.add_assign(&mut out.coeffs[n], &other.coeffs[n]);
        }
        out
    }

    fn combine(terms: &[(R::Elem, &Raw<R>)]) -> Self {
        let ring = terms[0].1.ring.clone();
        let order = terms.iter().map(|(_, s)| s.order()).min().unwrap();
        let mut out = Self::zeros(ring.clone(), order);
        for (c, s) in terms {
            if ring.is_zero(c) {
                continue;
            }
            for n in 0..order {
                ring.mul_add_assign(&mut out.coeffs[n], c, &s.coeffs[n]);
            }
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let ring = self.ring.clone();
        let order = self.order().min(other.order());
        let mut out = Self::zeros(ring.clone(), order);
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                ring.mul_add_assign(&mut out.coeffs[i + j], a, b);
            }
        }
        out
    }

    fn invert(&self) -> Result<Self, SeriesError> {
        let ring = self.ring.clone();
        let c0 = self
            .coeffs
            .first()
            .ok_or(SeriesError::NonInvertible { constant: String::from("(series of order 0)") })?;
        let inv0 = ring.inv(c0).ok_or_else(|| SeriesError::NonInvertible {
            constant: ring.to_display(c0),
        })?;
        let order = self.order();
        let mut out = Self::zeros(ring.clone(), order);
        out.coeffs[0] = inv0.clone();
        for n in 1..order {
            // a[0] b[n] = -(a[1] b[n-1] + ... + a[n] b[0])
            let mut s = ring.zero();
            for j in 1..=n {
                ring.mul_add_assign(&mut s, &self.coeffs[j], &out.coeffs[n - j]);
            }
            out.coeffs[n] = ring.neg(&ring.mul(&inv0, &s));
        }
        Ok(out)
    }

    fn pow(&self, e: u64) -> Self {
        let order = self.order();
        let mut out = Self::zeros(self.ring.clone(), order);
        if order > 0 {
            out.coeffs[0] = self.ring.one();
        }
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    fn dissect(&self, m: usize, r: usize) -> Self {
        let order = self.order().saturating_sub(r).div_ceil(m);
        let mut out = Self::zeros(self.ring.clone(), order);
        for n in 0..order {
            out.coeffs[n] = self.coeffs[m * n + r].clone();
        }
        out
    }

    fn substitute_to(&self, k: usize, out_order: usize) -> Self {
        let mut out = Self::zeros(self.ring.clone(), out_order);
        for (n, c) in self.coeffs.iter().enumerate() {
            let p = k * n;
            if p >= out_order {
                break;
            }
            out.coeffs[p] = c.clone();
        }
        out
    }

    fn shift(&self, e: usize) -> Self {
        let mut out = Self::zeros(self.ring.clone(), self.order() + e);
        for (n, c) in self.coeffs.iter().enumerate() {
            out.coeffs[e + n] = c.clone();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Repr {
    Exact(Raw<ExactRing>),
    Mod(Raw<ModRing>),
}

/// A truncated formal power series in one of the two coefficient rings.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub(crate) repr: Repr,
}

/// Errors from series construction and arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// Binary operation across different rings.
    RingMismatch { left: Ring, right: Ring },
    /// Modulus outside `1..=2^62`.
    InvalidModulus(u64),
    /// `linear_combine` of an empty term list.
    EmptyCombination,
    /// `invert` (or a negative power) of a series whose constant term is
    /// not a unit.
    NonInvertible { constant: String },
    /// Dissection step or substitution stride of zero.
    ZeroStep { what: &'static str },
    /// Dissection residue `r >= m`.
    ResidueOutOfRange { r: usize, m: usize },
    /// `halve_exact` hit a coefficient not divisible by `2^d`; `index` is
    /// the first offending position.
    NonHalvable { index: usize, coefficient: String, pow: u32 },
    /// `halve_exact` in `Mod(M)` where `2^d` does not divide `M`.
    UnhalvableModulus { modulus: u64, pow: u32 },
    /// Lifting `Mod(M)` to `Mod(M * 2^d)` would exceed the modulus bound.
    ModulusOverflow { modulus: u64, pow: u32 },
    /// `substitute` asked for more coefficients than the input determines.
    SubstituteOrder { requested: usize, available: usize },
    /// `eta_mul` with a step exponent other than +1 or -1.
    EtaExponent { e: i64 },
    /// Reduction to a modulus that does not divide the source modulus.
    BadReduction { from: u64, to: u64 },
}

impl core::fmt::Display for SeriesError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        use SeriesError::*;
        match self {
            RingMismatch { left, right } => {
                write!(f, "ring mismatch: {left} vs {right}")
            }
            InvalidModulus(m) => write!(f, "invalid modulus {m} (need 1 <= M <= 2^62)"),
            EmptyCombination => write!(f, "linear combination of zero terms"),
            NonInvertible { constant } => {
                write!(f, "constant term {constant} is not a unit")
            }
            ZeroStep { what } => write!(f, "{what} requires a step of at least 1"),
            ResidueOutOfRange { r, m } => write!(f, "dissection residue {r} out of range for step {m}"),
            NonHalvable { index, coefficient, pow } => {
                write!(f, "coefficient {coefficient} at index {index} is not divisible by 2^{pow}")
            }
            UnhalvableModulus { modulus, pow } => {
                write!(f, "modulus {modulus} is not divisible by 2^{pow}")
            }
            ModulusOverflow { modulus, pow } => {
                write!(f, "lifting modulus {modulus} by 2^{pow} exceeds 2^62")
            }
            SubstituteOrder { requested, available } => {
                write!(f, "substitution output order {requested} exceeds the {available} determined coefficients")
            }
            EtaExponent { e } => write!(f, "eta_mul exponent must be +1 or -1, got {e}"),
            BadReduction { from, to } => {
                write!(f, "cannot reduce mod {from} to mod {to}: target does not divide source")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

impl From<InvalidModulus> for SeriesError {
    fn from(e: InvalidModulus) -> Self {
        SeriesError::InvalidModulus(e.0)
    }
}

impl Series {
    // ---- Constructors ----

    /// The zero series of the given order.
    pub fn zeros(ring: Ring, order: usize) -> Result<Series, SeriesError> {
        ring.validate()?;
        Ok(match ring {
            Ring::Exact => Series { repr: Repr::Exact(Raw::zeros(ExactRing, order)) },
            Ring::Mod(m) => Series { repr: Repr::Mod(Raw::zeros(ModRing { m }, order)) },
        })
    }

    /// The constant series 1.
    pub fn one(ring: Ring, order: usize) -> Result<Series, SeriesError> {
        Series::constant(ring, &BigInt::from(1), order)
    }

    pub fn constant(ring: Ring, value: &BigInt, order: usize) -> Result<Series, SeriesError> {
        Series::monomial(ring, value, 0, order)
    }

    /// `value * q^exp`, truncated at `order`.
    pub fn monomial(ring: Ring, value: &BigInt, exp: usize, order: usize) -> Result<Series, SeriesError> {
        let mut s = Series::zeros(ring, order)?;
        if exp < order {
            match &mut s.repr {
                Repr::Exact(raw) => raw.coeffs[exp] = raw.ring.from_bigint(value),
                Repr::Mod(raw) => raw.coeffs[exp] = raw.ring.from_bigint(value),
            }
        }
        Ok(s)
    }

    /// Series with the given machine-integer coefficients; order = length.
    pub fn from_i64(ring: Ring, coeffs: &[i64]) -> Result<Series, SeriesError> {
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Series::from_bigints(ring, &big)
    }

    pub fn from_bigints(ring: Ring, coeffs: &[BigInt]) -> Result<Series, SeriesError> {
        let mut s = Series::zeros(ring, coeffs.len())?;
        match &mut s.repr {
            Repr::Exact(raw) => {
                for (n, c) in coeffs.iter().enumerate() {
                    raw.coeffs[n] = raw.ring.from_bigint(c);
                }
            }
            Repr::Mod(raw) => {
                for (n, c) in coeffs.iter().enumerate() {
                    raw.coeffs[n] = raw.ring.from_bigint(c);
                }
            }
        }
        Ok(s)
    }

    // ---- Accessors ----

    pub fn ring(&self) -> Ring {
        match &self.repr {
            Repr::Exact(_) => Ring::Exact,
            Repr::Mod(raw) => Ring::Mod(raw.ring.m),
        }
    }

    /// Exclusive truncation bound: the number of stored coefficients.
    pub fn order(&self) -> usize {
        match &self.repr {
            Repr::Exact(raw) => raw.order(),
            Repr::Mod(raw) => raw.order(),
        }
    }

    /// Coefficient of `q^n` as a big integer (modular residues are lifted
    /// to their canonical representative). `None` beyond the truncation.
    pub fn coeff_bigint(&self, n: usize) -> Option<BigInt> {
        match &self.repr {
            Repr::Exact(raw) => raw.coeffs.get(n).cloned(),
            Repr::Mod(raw) => raw.coeffs.get(n).map(|&c| BigInt::from(c)),
        }
    }

    pub fn coeffs_bigint(&self) -> Vec<BigInt> {
        (0..self.order()).map(|n| self.coeff_bigint(n).unwrap()).collect()
    }

    /// Residue coefficients, when the series lives in a modular ring.
    pub fn mod_coeffs(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Exact(_) => None,
            Repr::Mod(raw) => Some(&raw.coeffs),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Exact(raw) => raw.coeffs.iter().all(|c| raw.ring.is_zero(c)),
            Repr::Mod(raw) => raw.coeffs.iter().all(|c| raw.ring.is_zero(c)),
        }
    }

    /// Copy truncated to a smaller order (no-op if already shorter).
    pub fn truncated(&self, order: usize) -> Series {
        let mut out = self.clone();
        match &mut out.repr {
            Repr::Exact(raw) => raw.coeffs.truncate(order),
            Repr::Mod(raw) => raw.coeffs.truncate(order),
        }
        out
    }

    /// Index of the first coefficient where the two series disagree, up to
    /// the smaller order.
    pub fn first_mismatch(&self, other: &Series) -> Result<Option<usize>, SeriesError> {
        self.check_same_ring(other)?;
        let order = self.order().min(other.order());
        match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => {
                Ok((0..order).find(|&n| a.coeffs[n] != b.coeffs[n]))
            }
            (Repr::Mod(a), Repr::Mod(b)) => {
                Ok((0..order).find(|&n| a.coeffs[n] != b.coeffs[n]))
            }
            _ => unreachable!("ring checked above"),
        }
    }

    fn check_same_ring(&self, other: &Series) -> Result<(), SeriesError> {
        if self.ring() != other.ring() {
            return Err(SeriesError::RingMismatch { left: self.ring(), right: other.ring() });
        }
        Ok(())
    }

    // ---- Arithmetic ----

    pub fn add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_same_ring(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => Series { repr: Repr::Exact(a.add(b)) },
            (Repr::Mod(a), Repr::Mod(b)) => Series { repr: Repr::Mod(a.add(b)) },
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series, SeriesError> {
        Series::linear_combine(&[(BigInt::from(1), self), (BigInt::from(-1), other)])
    }

    /// `sum_i c_i * s_i` over matching rings; result order is the minimum
    /// of the input orders.
    pub fn linear_combine(terms: &[(BigInt, &Series)]) -> Result<Series, SeriesError> {
        let (_, first) = terms.first().ok_or(SeriesError::EmptyCombination)?;
        for (_, s) in terms {
            first.check_same_ring(s)?;
        }
        Ok(match &first.repr {
            Repr::Exact(_) => {
                let converted: Vec<(BigInt, &Raw<ExactRing>)> = terms
                    .iter()
                    .map(|(c, s)| match &s.repr {
                        Repr::Exact(raw) => (raw.ring.from_bigint(c), raw),
                        _ => unreachable!(),
                    })
                    .collect();
                Series { repr: Repr::Exact(Raw::combine(&converted)) }
            }
            Repr::Mod(_) => {
                let converted: Vec<(u64, &Raw<ModRing>)> = terms
                    .iter()
                    .map(|(c, s)| match &s.repr {
                        Repr::Mod(raw) => (raw.ring.from_bigint(c), raw),
                        _ => unreachable!(),
                    })
                    .collect();
                Series { repr: Repr::Mod(Raw::combine(&converted)) }
            }
        })
    }

    /// Convenience wrapper over [`Series::linear_combine`] for small scalars.
    pub fn linear_combine_i64(terms: &[(i64, &Series)]) -> Result<Series, SeriesError> {
        let big: Vec<(BigInt, &Series)> = terms.iter().map(|&(c, s)| (BigInt::from(c), s)).collect();
        Series::linear_combine(&big)
    }

    pub fn scale(&self, c: &BigInt) -> Series {
        Series::linear_combine(&[(c.clone(), self)]).expect("single-term combination")
    }

    pub fn mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_same_ring(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => Series { repr: Repr::Exact(a.mul(b)) },
            (Repr::Mod(a), Repr::Mod(b)) => Series { repr: Repr::Mod(a.mul(b)) },
            _ => unreachable!(),
        })
    }

    /// Reciprocal series; requires a unit constant term.
    pub fn invert(&self) -> Result<Series, SeriesError> {
        Ok(match &self.repr {
            Repr::Exact(a) => Series { repr: Repr::Exact(a.invert()?) },
            Repr::Mod(a) => Series { repr: Repr::Mod(a.invert()?) },
        })
    }

    /// `self^e`; `pow(a, 0)` is the constant 1 and negative exponents
    /// invert first.
    pub fn pow(&self, e: i64) -> Result<Series, SeriesError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        Ok(match &base.repr {
            Repr::Exact(a) => Series { repr: Repr::Exact(a.pow(e.unsigned_abs())) },
            Repr::Mod(a) => Series { repr: Repr::Mod(a.pow(e.unsigned_abs())) },
        })
    }

    /// Extract the arithmetic progression `m*n + r`: `b[n] = a[m*n + r]`,
    /// with order `ceil((order(a) - r) / m)`.
    pub fn dissect(&self, m: usize, r: usize) -> Result<Series, SeriesError> {
        if m == 0 {
            return Err(SeriesError::ZeroStep { what: "dissect" });
        }
        if r >= m {
            return Err(SeriesError::ResidueOutOfRange { r, m });
        }
        Ok(match &self.repr {
            Repr::Exact(a) => Series { repr: Repr::Exact(a.dissect(m, r)) },
            Repr::Mod(a) => Series { repr: Repr::Mod(a.dissect(m, r)) },
        })
    }

    /// `q -> q^k`, truncated at the input order.
    pub fn substitute(&self, k: usize) -> Result<Series, SeriesError> {
        self.substitute_to(k, self.order())
    }

    /// `q -> q^k` with an explicit output order. All requested coefficients
    /// must be determined by the input: `out_order <= k * order(self)`.
    pub fn substitute_to(&self, k: usize, out_order: usize) -> Result<Series, SeriesError> {
        if k == 0 {
            return Err(SeriesError::ZeroStep { what: "substitute" });
        }
        let available = k.saturating_mul(self.order());
        if out_order > available {
            return Err(SeriesError::SubstituteOrder { requested: out_order, available });
        }
        Ok(match &self.repr {
            Repr::Exact(a) => Series { repr: Repr::Exact(a.substitute_to(k, out_order)) },
            Repr::Mod(a) => Series { repr: Repr::Mod(a.substitute_to(k, out_order)) },
        })
    }

    /// Multiply by `q^e`; order grows by `e` (no coefficients are lost).
    pub fn shift(&self, e: usize) -> Series {
        match &self.repr {
            Repr::Exact(a) => Series { repr: Repr::Exact(a.shift(e)) },
            Repr::Mod(a) => Series { repr: Repr::Mod(a.shift(e)) },
        }
    }

    /// Divide every coefficient exactly by `2^d`.
    ///
    /// In the exact ring each coefficient must be divisible by `2^d`. In
    /// `Mod(M)`, `2^d` must divide both `M` and every stored residue; the
    /// result lives in `Mod(M / 2^d)`. The error names the first offending
    /// coefficient index.
    pub fn halve_exact(&self, d: u32) -> Result<Series, SeriesError> {
        if d == 0 {
            return Ok(self.clone());
        }
        match &self.repr {
            Repr::Exact(a) => {
                let two_d = BigInt::from(1) << d;
                let mut coeffs = Vec::with_capacity(a.order());
                for (index, c) in a.coeffs.iter().enumerate() {
                    if (c % &two_d) != BigInt::ZERO {
                        return Err(SeriesError::NonHalvable {
                            index,
                            coefficient: c.to_string(),
                            pow: d,
                        });
                    }
                    coeffs.push(c / &two_d);
                }
                Ok(Series { repr: Repr::Exact(Raw { ring: ExactRing, coeffs }) })
            }
            Repr::Mod(a) => {
                let m = a.ring.m;
                if d >= 64 || m % (1u64 << d) != 0 {
                    return Err(SeriesError::UnhalvableModulus { modulus: m, pow: d });
                }
                let mask = (1u64 << d) - 1;
                let mut coeffs = Vec::with_capacity(a.order());
                for (index, &c) in a.coeffs.iter().enumerate() {
                    if c & mask != 0 {
                        return Err(SeriesError::NonHalvable {
                            index,
                            coefficient: c.to_string(),
                            pow: d,
                        });
                    }
                    coeffs.push(c >> d);
                }
                Ok(Series { repr: Repr::Mod(Raw { ring: ModRing { m: m >> d }, coeffs }) })
            }
        }
    }

    /// Image of the series in `Mod(m)`. Exact series reduce coefficientwise;
    /// a modular series reduces only to a divisor of its modulus.
    pub fn reduce_mod(&self, m: u64) -> Result<Series, SeriesError> {
        Ring::Mod(m).validate()?;
        match &self.repr {
            Repr::Exact(a) => {
                let ring = ModRing { m };
                let coeffs = a.coeffs.iter().map(|c| ring.from_bigint(c)).collect();
                Ok(Series { repr: Repr::Mod(Raw { ring, coeffs }) })
            }
            Repr::Mod(a) => {
                if a.ring.m % m != 0 {
                    return Err(SeriesError::BadReduction { from: a.ring.m, to: m });
                }
                let coeffs = a.coeffs.iter().map(|&c| c % m).collect();
                Ok(Series { repr: Repr::Mod(Raw { ring: ModRing { m }, coeffs }) })
            }
        }
    }
}
