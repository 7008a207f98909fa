//! Values in `Q(t)` and their classes in the quotient groups where linking
//! forms and quadratic refinements take values.
//!
//! * `QtModZt`: `Q(t) / Z[t, t^-1]`.
//! * `Q1`: symmetric `b = b̄` modulo `{a + ā}`.
//! * `Q1upper`: `b` with `b - b̄ = a - ā` for some Laurent polynomial `a`,
//!   modulo `Z[t, t^-1]`.
//!
//! A symmetric Laurent polynomial `c = c_0 + Σ_{k>0} c_k (t^k + t^-k)` is of
//! the form `a + ā` exactly when `c_0` is even, which turns equality in `Q1`
//! into a divisibility test plus a parity check.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// A fraction `num / den` of Laurent polynomials over `Z`.
#[derive(Clone)]
pub struct RatValue {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatValue {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if let Some(m) = num.modulus().or(den.modulus()) {
            return Err(Error::ModularOperand(m));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatValue {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_ints(num: i64, den: i64) -> Result<Self> {
        Self::new(LaurentPoly::constant(num), LaurentPoly::constant(den))
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Ok(Some(q)) = num.div_exact(&den) {
            return Self::from_poly(q);
        }
        let content = num
            .terms()
            .chain(den.terms())
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
        let (lo, hi) = den.degree_span().expect("nonzero denominator");
        let lead_negative = den.coeff(hi).is_negative();
        let mut factor = content;
        if lead_negative {
            factor = -factor;
        }
        let rescale = |p: &LaurentPoly| {
            LaurentPoly::from_terms(p.terms().map(|(e, c)| (e - lo, c / &factor)))
        };
        RatValue {
            num: rescale(&num),
            den: rescale(&den),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial, if it lies in `Z[t, t^-1]`.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den).ok().flatten()
    }

    pub fn is_integral(&self) -> bool {
        self.as_laurent().is_some()
    }

    pub fn involute(&self) -> Self {
        Self::canonical(self.num.involute(), self.den.involute())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.involute()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::canonical(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::canonical(
            &self.num * &other.den - &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::canonical(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::canonical(&self.num * p, self.den.clone())
    }

    pub fn neg(&self) -> Self {
        RatValue {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl PartialEq for RatValue {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatValue {}

impl fmt::Display for RatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &LaurentPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatValue({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QGroup {
    #[serde(rename = "QtModZt")]
    QtModZt,
    #[serde(rename = "Q1")]
    Q1,
    #[serde(rename = "Q1upper")]
    Q1Upper,
}

impl QGroup {
    pub fn name(self) -> &'static str {
        match self {
            QGroup::QtModZt => "QtModZt",
            QGroup::Q1 => "Q1",
            QGroup::Q1Upper => "Q1upper",
        }
    }
}

/// A class in one of the quotient groups, represented by any lift in `Q(t)`.
#[derive(Clone, Debug)]
pub struct QClass {
    value: RatValue,
    group: QGroup,
}

impl QClass {
    pub fn new(value: RatValue, group: QGroup) -> Result<Self> {
        let ok = match group {
            QGroup::QtModZt => true,
            QGroup::Q1 => value.is_symmetric(),
            QGroup::Q1Upper => is_q1_upper_member(&value),
        };
        if ok {
            Ok(QClass { value, group })
        } else {
            Err(Error::NotInGroup(group.name()))
        }
    }

    pub fn value(&self) -> &RatValue {
        &self.value
    }

    pub fn group(&self) -> QGroup {
        self.group
    }

    /// Image under `Q1 -> Q1upper`, `[b] -> [b]`.
    pub fn to_q1_upper(&self) -> Result<QClass> {
        match self.group {
            QGroup::Q1 | QGroup::Q1Upper => QClass::new(self.value.clone(), QGroup::Q1Upper),
            QGroup::QtModZt => Err(Error::GroupMismatch("QtModZt", "Q1upper")),
        }
    }
}

/// Decides equality of two classes in the same group.
pub fn qclass_equal(a: &QClass, b: &QClass) -> Result<bool> {
    if a.group != b.group {
        return Err(Error::GroupMismatch(a.group.name(), b.group.name()));
    }
    let Some(diff) = a.value.sub(&b.value).as_laurent() else {
        return Ok(false);
    };
    match a.group {
        QGroup::QtModZt | QGroup::Q1Upper => Ok(true),
        QGroup::Q1 => is_even_symmetric(&diff),
    }
}

/// Whether a symmetric `c` over `Z` can be written as `a + ā`.
pub fn is_even_symmetric(c: &LaurentPoly) -> Result<bool> {
    if let Some(m) = c.modulus() {
        return Err(Error::ModularOperand(m));
    }
    if !c.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(c.coeff(0).is_even())
}

/// A witness `a` with `a + ā = c` for an even symmetric `c`.
pub fn even_witness(c: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    if !is_even_symmetric(c)? {
        return Ok(None);
    }
    let half = c.coeff(0) / BigInt::from(2);
    let a = LaurentPoly::from_terms(
        c.terms()
            .filter(|(e, _)| *e > 0)
            .map(|(e, v)| (e, v.clone()))
            .chain(std::iter::once((0, half))),
    );
    Ok(Some(a))
}

/// Membership in `{b | b - b̄ = a - ā for some a}`.
pub fn is_q1_upper_member(b: &RatValue) -> bool {
    let Some(d) = b.sub(&b.involute()).as_laurent() else {
        return false;
    };
    let a = LaurentPoly::from_terms(d.terms().filter(|(e, _)| *e > 0).map(|(e, v)| (e, v.clone())));
    &a - &a.involute() == d
}

/// Membership in `{b | b - b̄ ∈ Z[t, t^-1]}`, the domain of classes that
/// symmetric linking forms take on the diagonal.
pub fn is_q1_of_quotient_member(b: &RatValue) -> bool {
    b.sub(&b.involute()).is_integral()
}

#[derive(Serialize, Deserialize)]
struct QClassRepr {
    group: QGroup,
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for QClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QClassRepr {
            group: self.group,
            num: self.value.num.clone(),
            den: self.value.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = QClassRepr::deserialize(d)?;
        let v = RatValue::new(r.num, r.den).map_err(D::Error::custom)?;
        QClass::new(v, r.group).map_err(D::Error::custom)
    }
}
