//! Words in the free product `Z/m * Z = ⟨x | x^m⟩ * ⟨t⟩` and the identification
//! of the abelianised kernel of `φ: Z/m * Z -> ⟨t⟩` with `(Z/m)[t, t^-1]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::units::square_roots_of_one;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    X,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

/// A reduced word: generators alternate, exponents are nonzero, and
/// `x`-exponents lie in `[1, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FreeProductWord {
    m: u64,
    letters: Vec<Letter>,
}

fn check_order(m: u64) -> Result<()> {
    if m < 2 {
        Err(Error::InvalidModulus(m))
    } else {
        Ok(())
    }
}

impl FreeProductWord {
    pub fn identity(m: u64) -> Result<Self> {
        check_order(m)?;
        Ok(FreeProductWord { m, letters: Vec::new() })
    }

    pub fn x(m: u64, a: i64) -> Result<Self> {
        Self::from_letters(m, [Letter { generator: Generator::X, exponent: a }])
    }

    pub fn t(m: u64, k: i64) -> Result<Self> {
        Self::from_letters(m, [Letter { generator: Generator::T, exponent: k }])
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(m: u64, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut w = Self::identity(m)?;
        for l in letters {
            w.push(l);
        }
        Ok(w)
    }

    fn push(&mut self, l: Letter) {
        let exp = match l.generator {
            Generator::X => l.exponent.rem_euclid(self.m as i64),
            Generator::T => l.exponent,
        };
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.generator == l.generator {
                let merged = match l.generator {
                    Generator::X => (last.exponent + exp).rem_euclid(self.m as i64),
                    Generator::T => last.exponent + exp,
                };
                if merged == 0 {
                    self.letters.pop();
                } else {
                    last.exponent = merged;
                }
                return;
            }
        }
        self.letters.push(Letter { generator: l.generator, exponent: exp });
    }

    pub fn order_of_x(&self) -> u64 {
        self.m
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::ModulusMismatch(Some(self.m), Some(other.m)));
        }
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        Ok(w)
    }

    pub fn inv(&self) -> Self {
        let mut w = FreeProductWord { m: self.m, letters: Vec::with_capacity(self.len()) };
        for l in self.letters.iter().rev() {
            w.push(Letter { generator: l.generator, exponent: -l.exponent });
        }
        w
    }

    /// `g w g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        &(g * self) * &g.inv()
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(&(a * b) * &a.inv()) * &b.inv()
    }

    /// Sum of the `t`-exponents.
    pub fn phi(&self) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == Generator::T)
            .map(|l| l.exponent)
            .sum()
    }

    pub fn parse(m: u64, s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens == ["1"] {
            return Self::identity(m);
        }
        for tok in tokens {
            let (g, rest) = tok.split_at(tok.chars().next().map_or(0, char::len_utf8));
            let generator = match g {
                "x" => Generator::X,
                "t" => Generator::T,
                _ => return Err(Error::WordParse(format!("unknown generator in `{tok}`"))),
            };
            let exponent = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse::<i64>()
                    .map_err(|_| Error::WordParse(format!("bad exponent in `{tok}`")))?
            } else {
                return Err(Error::WordParse(format!("unexpected `{rest}` in `{tok}`")));
            };
            letters.push(Letter { generator, exponent });
        }
        Self::from_letters(m, letters)
    }
}

impl std::ops::Mul for &FreeProductWord {
    type Output = FreeProductWord;

    fn mul(self, rhs: &FreeProductWord) -> FreeProductWord {
        self.try_mul(rhs).expect("words over different free products")
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let g = match l.generator {
                Generator::X => 'x',
                Generator::T => 't',
            };
            if l.exponent == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for FreeProductWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            m: u64,
            letters: Vec<Letter>,
        }
        let r = Repr::deserialize(d)?;
        FreeProductWord::from_letters(r.m, r.letters).map_err(serde::de::Error::custom)
    }
}

/// An element of `(Z/m)[t, t^-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingElement {
    poly: LaurentPoly,
}

impl GroupRingElement {
    pub fn new(poly: LaurentPoly) -> Result<Self> {
        match poly.modulus() {
            Some(_) => Ok(GroupRingElement { poly }),
            None => Err(Error::MissingModulus),
        }
    }

    pub fn zero(m: u64) -> Result<Self> {
        Self::new(LaurentPoly::zero().reduce_mod(m)?)
    }

    pub fn from_terms(m: u64, terms: &[(i64, i64)]) -> Result<Self> {
        Self::new(LaurentPoly::from_terms_mod(terms.iter().copied(), m)?)
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn modulus(&self) -> u64 {
        self.poly.modulus().expect("group ring elements carry a modulus")
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        GroupRingElement { poly: self.poly.shift(k) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(GroupRingElement { poly: self.poly.checked_add(&other.poly)? })
    }

    /// Additive order: the lcm of the orders of the coefficients in `Z/m`.
    pub fn additive_order(&self) -> u64 {
        let m = BigInt::from(self.modulus());
        self.poly
            .terms()
            .map(|(_, c)| (&m / c.gcd(&m)).to_u64().expect("divides m"))
            .fold(1, |acc, o| acc.lcm(&o))
    }
}

/// `Ψ`: each term `a t^i` becomes `t^i x^a t^-i`, in increasing order of `i`.
pub fn psi(p: &GroupRingElement) -> FreeProductWord {
    let m = p.modulus();
    let mut w = FreeProductWord { m, letters: Vec::new() };
    for (i, a) in p.poly.terms() {
        let a = a.to_i64().expect("coefficient below m");
        for l in [
            Letter { generator: Generator::T, exponent: i },
            Letter { generator: Generator::X, exponent: a },
            Letter { generator: Generator::T, exponent: -i },
        ] {
            w.push(l);
        }
    }
    w
}

/// `Θ`: scans a word of `ker φ`, adding `a t^e` for each letter `x^a` met
/// at running `t`-exponent `e`.
pub fn theta_scan(w: &FreeProductWord) -> Result<GroupRingElement> {
    let phi = w.phi();
    if phi != 0 {
        return Err(Error::NotInKernel(phi));
    }
    let mut e = 0i64;
    let mut terms: Vec<(i64, i64)> = Vec::new();
    for l in &w.letters {
        match l.generator {
            Generator::T => e += l.exponent,
            Generator::X => terms.push((e, l.exponent)),
        }
    }
    GroupRingElement::from_terms(w.m, &terms)
}

/// `Θ(g w g⁻¹)`, which equals `t^φ(g) Θ(w)`.
pub fn conjugation_action(g: &FreeProductWord, w: &FreeProductWord) -> Result<GroupRingElement> {
    theta_scan(&g.try_mul(w)?.try_mul(&g.inv())?)
}

/// Additive order of `Θ(w)`.
pub fn order_in_kernel_ab(w: &FreeProductWord) -> Result<u64> {
    Ok(theta_scan(w)?.additive_order())
}

/// `{a ∈ Z/m : a² = 1}`, the constants that can multiply the generator of
/// `(Z/m)[t, t^-1]` under a self-equivalence preserving `-a²/m`.
pub fn admissible_action_units(m: u64) -> Result<Vec<u64>> {
    check_order(m)?;
    Ok(square_roots_of_one(m))
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Generator::X),
            "t" => Ok(Generator::T),
            _ => Err(Error::WordParse(s.to_string())),
        }
    }
}
