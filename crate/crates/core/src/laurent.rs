//! Laurent polynomials over `Z` and `Z/m` with the involution `t -> t^-1`.
//!
//! Elements are stored sparsely as an exponent -> coefficient map with
//! arbitrary-precision coefficients. Zero coefficients are never stored, and
//! when a modulus `m` is present every stored coefficient lies in `[0, m)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Z[t, t^-1]` or `(Z/m)[t, t^-1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
    modulus: Option<u64>,
}

/// The decomposition `sign * t^exponent` of a unit of `Z[t, t^-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitDecomposition {
    pub sign: i8,
    #[serde(rename = "exp")]
    pub exponent: i64,
}

impl UnitDecomposition {
    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::monomial(self.sign, self.exponent)
    }

    /// The inverse unit `sign * t^-exponent`.
    pub fn inverse(self) -> Self {
        UnitDecomposition {
            sign: self.sign,
            exponent: -self.exponent,
        }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
            modulus: None,
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exponent: i64) -> Self {
        Self::from_terms([(exponent, c.into())])
    }

    /// Builds a polynomial over `Z` from `(exponent, coefficient)` pairs.
    /// Repeated exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c.into();
        }
        let mut p = LaurentPoly {
            terms: map,
            modulus: None,
        };
        p.normalize();
        p
    }

    /// Builds a polynomial over `Z/m` from `(exponent, coefficient)` pairs.
    pub fn from_terms_mod<C: Into<BigInt>>(
        terms: impl IntoIterator<Item = (i64, C)>,
        modulus: u64,
    ) -> Result<Self> {
        Self::from_terms(terms).reduce_mod(modulus)
    }

    /// Polynomial with consecutive coefficients starting at `lowest`.
    pub fn from_coeffs(lowest: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (lowest + i as i64, c)),
        )
    }

    fn normalize(&mut self) {
        if let Some(m) = self.modulus {
            let m = BigInt::from(m);
            for c in self.terms.values_mut() {
                *c = c.mod_floor(&m);
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// `(lowest, highest)` exponent, or `None` for the zero polynomial.
    pub fn degree_span(&self) -> Option<(i64, i64)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        Some((lo, hi))
    }

    /// The single term `(exponent, coefficient)` if the polynomial is a monomial.
    pub fn single_term(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Image under the involution `t -> t^-1`.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
            modulus: self.modulus,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&e, c)| self.terms.get(&-e) == Some(c))
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            *out.terms.entry(e).or_default() += c;
        }
        out.normalize();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            *out.terms.entry(e).or_default() -= c;
        }
        out.normalize();
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                *terms.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        let mut out = LaurentPoly {
            terms,
            modulus: self.modulus,
        };
        out.normalize();
        Ok(out)
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
            modulus: self.modulus,
        };
        out.normalize();
        out
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
            modulus: self.modulus,
        }
    }

    /// Integer-valued evaluation at `t = 1` (only meaningful over `Z`).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient `p / d` in `Z[t, t^-1]`, or `None` if `d` does not divide `p`.
    ///
    /// Both operands are shifted so their lowest exponent is zero; the quotient
    /// over `Q[t]` is then computed top-down and rejected as soon as a
    /// coefficient is not integral or a nonzero remainder is left.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        if let Some(m) = self.modulus.or(d.modulus) {
            return Err(Error::ModularOperand(m));
        }
        let Some((d_lo, d_hi)) = d.degree_span() else {
            return Err(Error::DivisionByZero);
        };
        let Some((p_lo, p_hi)) = self.degree_span() else {
            return Ok(Some(LaurentPoly::zero()));
        };
        if p_hi - p_lo < d_hi - d_lo {
            return Ok(None);
        }
        let d_len = (d_hi - d_lo) as usize;
        let divisor: Vec<BigInt> = (d_lo..=d_hi).map(|e| d.coeff(e)).collect();
        let mut rem: Vec<BigInt> = (p_lo..=p_hi).map(|e| self.coeff(e)).collect();
        let lead = &divisor[d_len];
        let q_len = rem.len() - d_len;
        let mut quotient = vec![BigInt::zero(); q_len];
        for i in (0..q_len).rev() {
            let top = &rem[i + d_len];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Ok(None);
            }
            for (j, dc) in divisor.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quotient[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        let shift = p_lo - d_lo;
        Ok(Some(LaurentPoly::from_terms(
            quotient
                .into_iter()
                .enumerate()
                .map(|(i, c)| (shift + i as i64, c)),
        )))
    }

    /// Whether `d` divides `self` in `Z[t, t^-1]`.
    pub fn divisible_by(&self, d: &Self) -> Result<bool> {
        Ok(self.div_exact(d)?.is_some())
    }

    /// Recognises the units `±t^k` of `Z[t, t^-1]`.
    pub fn unit_decompose(&self) -> Option<UnitDecomposition> {
        if self.modulus.is_some() {
            return None;
        }
        let (e, c) = self.single_term()?;
        if c.is_one() {
            Some(UnitDecomposition {
                sign: 1,
                exponent: e,
            })
        } else if (-c).is_one() {
            Some(UnitDecomposition {
                sign: -1,
                exponent: e,
            })
        } else {
            None
        }
    }

    /// Coefficientwise reduction into `(Z/m)[t, t^-1]`.
    ///
    /// Polynomials that already carry a modulus `n` may be reduced further when
    /// `m` divides `n`.
    pub fn reduce_mod(&self, m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        if let Some(n) = self.modulus {
            if n % m != 0 {
                return Err(Error::ModulusMismatch(Some(n), Some(m)));
            }
        }
        let mut out = LaurentPoly {
            terms: self.terms.clone(),
            modulus: Some(m),
        };
        out.normalize();
        Ok(out)
    }

    /// Lift from `Z/m` to `Z` with coefficients in `[0, m)`.
    pub fn lift(&self) -> Self {
        LaurentPoly {
            terms: self.terms.clone(),
            modulus: None,
        }
    }

    /// Lift from `Z/m` to `Z` with coefficients in `(-m/2, m/2]`.
    pub fn lift_balanced(&self) -> Self {
        let Some(m) = self.modulus else {
            return self.clone();
        };
        let m = BigInt::from(m);
        let half = &m / 2;
        LaurentPoly::from_terms(self.terms.iter().map(|(&e, c)| {
            if c > &half {
                (e, c - &m)
            } else {
                (e, c.clone())
            }
        }))
    }

    /// Returns `±t^k` as a polynomial with the same modulus as `self`.
    pub fn unit_like(&self, unit: UnitDecomposition) -> Self {
        let p = unit.to_poly();
        match self.modulus {
            Some(m) => p.reduce_mod(m).expect("modulus >= 2"),
            None => p,
        }
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

// Operator impls panic on modulus mismatch; use the `checked_*` methods when
// operands may come from different rings.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent polynomial modulus mismatch")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            Some(m) => write!(f, "LaurentPoly({self} mod {m})"),
            None => write!(f, "LaurentPoly({self})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    #[serde(rename = "mod")]
    modulus: Option<u64>,
    terms: Vec<(i64, String)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            modulus: self.modulus,
            terms: self.terms.iter().map(|(&e, c)| (e, c.to_string())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for (e, c) in repr.terms {
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid coefficient {c:?}")))?;
            terms.push((e, c));
        }
        let p = LaurentPoly::from_terms(terms);
        match repr.modulus {
            Some(m) => p.reduce_mod(m).map_err(D::Error::custom),
            None => Ok(p),
        }
    }
}
