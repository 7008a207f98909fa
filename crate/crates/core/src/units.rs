//! Unitary units of `(Z/m)[t, t^-1]` and the orbit classes of `(2q)`.
//!
//! For an odd prime `q`, `n ↦ θ(n) = (q-1)t^n + q` identifies `Z` with
//! `U((Z/2q)[t, t^-1]) / U(Z[t, t^-1])`. Classification goes through the CRT
//! splitting `Z/2q = Z/2 × Z/q`, where the unitary units are `t^a` and
//! `±t^b` respectively.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, UnitDecomposition};
use crate::linking::{verify_linking_isometry, TorsionIsometry};
use crate::par::{self, Execution};

/// Default bound on the number of candidates examined by [`enumerate_unitary`].
pub const DEFAULT_CANDIDATE_CAP: u128 = 10_000_000;

pub fn is_odd_prime(q: u64) -> bool {
    if q < 3 || q.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn check_odd_prime(q: u64) -> Result<()> {
    if is_odd_prime(q) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(q))
    }
}

/// `u ū = 1` in `(Z/m)[t, t^-1]`.
pub fn is_unitary(u: &LaurentPoly) -> Result<bool> {
    if u.modulus().is_none() {
        return Err(Error::MissingModulus);
    }
    Ok(u.checked_mul(&u.involute())?.is_one())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnitaryUnit {
    poly: LaurentPoly,
}

impl UnitaryUnit {
    pub fn new(poly: LaurentPoly) -> Result<Self> {
        if is_unitary(&poly)? {
            Ok(UnitaryUnit { poly })
        } else {
            Err(Error::NotUnitary)
        }
    }

    /// `±t^k` modulo `m`.
    pub fn monomial(m: u64, unit: UnitDecomposition) -> Result<Self> {
        Self::new(unit.to_poly().reduce_mod(m)?)
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.poly
    }

    pub fn modulus(&self) -> u64 {
        self.poly.modulus().expect("unitary units carry a modulus")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(UnitaryUnit {
            poly: self.poly.checked_mul(&other.poly)?,
        })
    }

    /// The inverse of a unitary unit is its involute.
    pub fn inverse(&self) -> Self {
        UnitaryUnit {
            poly: self.poly.involute(),
        }
    }

    /// Multiplication by `±t^k`.
    pub fn times_unit(&self, unit: UnitDecomposition) -> Self {
        UnitaryUnit {
            poly: &self.poly * &self.poly.unit_like(unit),
        }
    }

    /// Whether this is `±t^k`, the image of `U(Z[t, t^-1])`.
    pub fn as_trivial(&self) -> Option<UnitDecomposition> {
        let m = self.modulus();
        let (e, c) = self.poly.single_term()?;
        if c.is_one() {
            Some(UnitDecomposition { sign: 1, exponent: e })
        } else if *c == BigInt::from(m - 1) {
            Some(UnitDecomposition { sign: -1, exponent: e })
        } else {
            None
        }
    }
}

impl<'de> Deserialize<'de> for UnitaryUnit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            poly: LaurentPoly,
        }
        let r = Repr::deserialize(d)?;
        UnitaryUnit::new(r.poly).map_err(serde::de::Error::custom)
    }
}

/// The coset of `θ(k)` in `U((Z/2q)[t, t^-1]) / U(Z[t, t^-1])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitClass {
    pub k: i64,
}

/// `θ(n) = (q-1)t^n + q` modulo `2q`.
pub fn theta(n: i64, q: u64) -> Result<UnitaryUnit> {
    check_odd_prime(q)?;
    let poly = LaurentPoly::from_terms_mod([(n, BigInt::from(q - 1)), (0, BigInt::from(q))], 2 * q)?;
    UnitaryUnit::new(poly)
}

/// `θ(n)` lifted to `Z[t, t^-1]` with coefficients in `(-q, q]`.
pub fn theta_lift(n: i64, q: u64) -> Result<LaurentPoly> {
    Ok(theta(n, q)?.poly.lift_balanced())
}

fn odd_prime_half(u: &UnitaryUnit) -> Result<u64> {
    let m = u.modulus();
    if !m.is_multiple_of(2) {
        return Err(Error::InvalidModulus(m));
    }
    check_odd_prime(m / 2)?;
    Ok(m / 2)
}

/// Reduction modulo 2 and modulo `q` of a unit modulo `2q`.
pub fn crt_split(u: &UnitaryUnit) -> Result<(UnitaryUnit, UnitaryUnit)> {
    let q = odd_prime_half(u)?;
    Ok((
        UnitaryUnit::new(u.poly.reduce_mod(2)?)?,
        UnitaryUnit::new(u.poly.reduce_mod(q)?)?,
    ))
}

/// `(a, b) ↦ q a - (q-1) b` modulo `2q`, inverse to [`crt_split`].
pub fn crt_combine(a: &UnitaryUnit, b: &UnitaryUnit, q: u64) -> Result<UnitaryUnit> {
    check_odd_prime(q)?;
    if a.modulus() != 2 || b.modulus() != q {
        return Err(Error::ModulusMismatch(Some(a.modulus()), Some(b.modulus())));
    }
    let combined = &a.poly.lift().scale(&BigInt::from(q)) - &b.poly.lift().scale(&BigInt::from(q - 1));
    UnitaryUnit::new(combined.reduce_mod(2 * q)?)
}

/// The orbit class of a unitary unit modulo `2q`: writing `u ≡ t^a` mod 2
/// and `u ≡ ±t^b` mod `q`, the class is `b - a`.
pub fn classify_unit(u: &UnitaryUnit) -> Result<OrbitClass> {
    let q = odd_prime_half(u)?;
    let unexpected = |m: u64, p: &LaurentPoly| Error::UnexpectedReduction {
        modulus: m,
        poly: p.to_string(),
    };
    let (two, odd) = crt_split(u)?;
    let a = match two.as_trivial() {
        Some(d) => d.exponent,
        None => return Err(unexpected(2, two.poly())),
    };
    let b = match odd.as_trivial() {
        Some(d) => d.exponent,
        None => return Err(unexpected(q, odd.poly())),
    };
    Ok(OrbitClass { k: b - a })
}

/// Searches `|k| ≤ k_bound` for `u = ±t^j θ(k)`, returning `(±t^j, k)`.
pub fn decompose_by_theta(
    u: &UnitaryUnit,
    q: u64,
    k_bound: i64,
) -> Result<Option<(UnitDecomposition, i64)>> {
    for k in -k_bound..=k_bound {
        let rest = u.mul(&theta(k, q)?.inverse())?;
        if let Some(unit) = rest.as_trivial() {
            return Ok(Some((unit, k)));
        }
    }
    Ok(None)
}

/// `m^(2D+1)`, saturating.
pub fn candidate_count(m: u64, span: u32) -> u128 {
    (m as u128).checked_pow(2 * span + 1).unwrap_or(u128::MAX)
}

const MAX_LEN: usize = 64;

/// All unitary units modulo `m` supported on exponents `[-span, span]`, by
/// exhaustive search over the `m^(2·span+1)` coefficient vectors. The result
/// is ordered by the base-`m` index of the coefficient vector, with the
/// coefficient of `t^-span` least significant.
pub fn enumerate_unitary(m: u64, span: u32, cap: u128, exec: Execution) -> Result<Vec<UnitaryUnit>> {
    if m < 2 || m > u32::MAX as u64 {
        return Err(Error::InvalidModulus(m));
    }
    let candidates = candidate_count(m, span);
    if candidates > cap {
        return Err(Error::BudgetExceeded { candidates, cap });
    }
    let len = 2 * span as usize + 1;
    if len > MAX_LEN {
        return Err(Error::BudgetExceeded { candidates, cap });
    }
    let total = candidates as u64;
    let lowest = -(span as i64);
    let found = par::filter_map_range(exec, total, |idx| {
        let mut coeffs = [0u64; MAX_LEN];
        let mut rest = idx;
        for c in coeffs.iter_mut().take(len) {
            *c = rest % m;
            rest /= m;
        }
        unitary_coeffs(&coeffs[..len], m).then(|| {
            let poly = LaurentPoly::from_terms_mod(
                coeffs[..len].iter().enumerate().map(|(i, &c)| (lowest + i as i64, c)),
                m,
            )
            .expect("valid modulus");
            UnitaryUnit { poly }
        })
    });
    Ok(found)
}

/// `Σ_i a_i a_{i+k} ≡ [k = 0]` for every shift `k`, checked from the largest
/// shift down since that fails fastest.
fn unitary_coeffs(a: &[u64], m: u64) -> bool {
    let n = a.len();
    for k in (0..n).rev() {
        let mut s = 0u64;
        for i in 0..n - k {
            s = (s + a[i] * a[i + k] % m) % m;
        }
        if s != u64::from(k == 0) % m {
            return false;
        }
    }
    true
}

/// `{a ∈ Z/m : a² = 1}`, in increasing order.
pub fn square_roots_of_one(m: u64) -> Vec<u64> {
    (0..m).filter(|&a| (a as u128 * a as u128) % m as u128 == 1 % m as u128).collect()
}

/// A representative unit modulo `±t^k`, with whether multiplication by it
/// preserves the quadratic refinement on `(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRep {
    pub unit: LaurentPoly,
    pub quadratic: bool,
}

/// `U(Z[t, t^-1]/p) / U(Z[t, t^-1])`, to the extent it is computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitSet {
    /// `p = ±1`: the boundary is trivial.
    Trivial,
    /// `p = ±2q`: infinite cyclic, generated by the class of `θ(1)`.
    InfiniteCyclic {
        q: u64,
        generator: OrbitClass,
        generator_unit: UnitaryUnit,
        generator_verified: bool,
    },
    /// Other constants: orbit representatives found with support in
    /// `[-span, span]`. Not claimed to be complete.
    Enumerated { modulus: u64, span: u32, reps: Vec<OrbitRep> },
    /// Non-constant `p`: integer lifts `u` with `p | uū - 1`, coefficients in
    /// `[-coeff_bound, coeff_bound]` and support in `[-span, span]`, pairwise
    /// distinct modulo `p` and `±t^k`.
    Witnesses {
        p: LaurentPoly,
        span: u32,
        coeff_bound: i64,
        witnesses: Vec<LaurentPoly>,
    },
}

impl OrbitSet {
    /// `"Z"`, `"trivial"`, or `"partial"`.
    pub fn summary(&self) -> &'static str {
        match self {
            OrbitSet::Trivial => "trivial",
            OrbitSet::InfiniteCyclic { .. } => "Z",
            OrbitSet::Enumerated { .. } | OrbitSet::Witnesses { .. } => "partial",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitBounds {
    pub span: u32,
    pub coeff_bound: i64,
    pub cap: u128,
}

impl Default for OrbitBounds {
    fn default() -> Self {
        OrbitBounds {
            span: 1,
            coeff_bound: 2,
            cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

/// Rotate to lowest exponent 0 and choose the sign so the lowest coefficient
/// is the smaller of `c` and `m - c`.
fn normalize_mod_trivial(u: &LaurentPoly, m: u64) -> LaurentPoly {
    let (lo, _) = u.degree_span().expect("units are nonzero");
    let shifted = u.shift(-lo);
    let c = shifted.coeff(0);
    if c > BigInt::from(m) - &c {
        (-shifted).reduce_mod(m).expect("valid modulus")
    } else {
        shifted
    }
}

pub fn rank_one_orbit_set(p: &LaurentPoly, bounds: OrbitBounds, exec: Execution) -> Result<OrbitSet> {
    if p.modulus().is_some() {
        return Err(Error::ModularOperand(p.modulus().unwrap_or(0)));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if let Some((0, c)) = p.single_term() {
        let m = c.abs().to_u64().ok_or(Error::InvalidModulus(u64::MAX))?;
        if m == 1 {
            return Ok(OrbitSet::Trivial);
        }
        if m % 2 == 0 && is_odd_prime(m / 2) {
            let q = m / 2;
            let generator_unit = theta(1, q)?;
            let h = TorsionIsometry::rank_one(p.clone(), generator_unit.poly.lift_balanced())?;
            let generator_verified =
                classify_unit(&generator_unit)? == OrbitClass { k: 1 } && verify_linking_isometry(&h, true)?;
            return Ok(OrbitSet::InfiniteCyclic {
                q,
                generator: OrbitClass { k: 1 },
                generator_unit,
                generator_verified,
            });
        }
        let mut reps: Vec<LaurentPoly> = enumerate_unitary(m, bounds.span, bounds.cap, exec)?
            .into_iter()
            .map(|u| normalize_mod_trivial(&u.poly, m))
            .collect();
        reps.sort_by_key(|r| (r.len(), r.degree_span(), r.to_string()));
        reps.dedup();
        let reps = reps
            .into_iter()
            .map(|unit| {
                let h = TorsionIsometry::rank_one(p.clone(), unit.lift_balanced())?;
                let quadratic = p.coeff(0).is_even() && verify_linking_isometry(&h, true)?;
                Ok(OrbitRep { unit, quadratic })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(OrbitSet::Enumerated {
            modulus: m,
            span: bounds.span,
            reps,
        });
    }
    Ok(OrbitSet::Witnesses {
        p: p.clone(),
        span: bounds.span,
        coeff_bound: bounds.coeff_bound,
        witnesses: polynomial_witnesses(p, bounds)?,
    })
}

fn polynomial_witnesses(p: &LaurentPoly, bounds: OrbitBounds) -> Result<Vec<LaurentPoly>> {
    let len = 2 * bounds.span + 1;
    let width = (2 * bounds.coeff_bound + 1) as u128;
    let total = width.checked_pow(len).unwrap_or(u128::MAX);
    if total > bounds.cap {
        return Err(Error::BudgetExceeded {
            candidates: total,
            cap: bounds.cap,
        });
    }
    let mut found: Vec<LaurentPoly> = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut terms = Vec::with_capacity(len as usize);
        for i in 0..len {
            let c = (rest % width) as i64 - bounds.coeff_bound;
            rest /= width;
            terms.push((i as i64 - bounds.span as i64, c));
        }
        let u = LaurentPoly::from_terms(terms);
        if u.is_zero() {
            continue;
        }
        let defect = &(&u * &u.involute()) - &LaurentPoly::one();
        if !defect.divisible_by(p)? {
            continue;
        }
        let mut duplicate = false;
        for w in &found {
            for sign in [1i8, -1] {
                for k in -2 * (bounds.span as i64)..=2 * (bounds.span as i64) {
                    let moved = w * &UnitDecomposition { sign, exponent: k }.to_poly();
                    if (&u - &moved).divisible_by(p)? {
                        duplicate = true;
                    }
                }
            }
        }
        if !duplicate {
            found.push(u);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp_mod(lowest: i64, c: &[i64], m: u64) -> LaurentPoly {
        LaurentPoly::from_coeffs(lowest, c).reduce_mod(m).unwrap()
    }

    fn unit(lowest: i64, c: &[i64], m: u64) -> UnitaryUnit {
        UnitaryUnit::new(lp_mod(lowest, c, m)).unwrap()
    }

    #[test]
    fn primes() {
        let odd: Vec<u64> = (0..30).filter(|&q| is_odd_prime(q)).collect();
        assert_eq!(odd, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn unitary_examples() {
        assert!(is_unitary(&lp_mod(0, &[3, 2], 6)).unwrap());
        assert!(is_unitary(&LaurentPoly::monomial(1, 7).reduce_mod(10).unwrap()).unwrap());
        assert!(!is_unitary(&lp_mod(0, &[2], 6)).unwrap());
        assert_eq!(is_unitary(&LaurentPoly::one()), Err(Error::MissingModulus));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(1, 3).unwrap().poly(), &lp_mod(0, &[3, 2], 6));
        for q in [3, 5, 7, 11] {
            assert_eq!(theta(0, q).unwrap().as_trivial(), Some(UnitDecomposition { sign: -1, exponent: 0 }));
        }
        assert_eq!(theta(1, 4), Err(Error::NotOddPrime(4)));
        assert_eq!(theta_lift(1, 3).unwrap(), LaurentPoly::from_coeffs(0, &[3, 2]));
        assert_eq!(theta_lift(0, 3).unwrap(), LaurentPoly::constant(-1));
    }

    #[test]
    fn crt_examples() {
        let (a, b) = crt_split(&theta(1, 3).unwrap()).unwrap();
        assert_eq!(a.poly(), &lp_mod(0, &[1], 2));
        assert_eq!(b.poly(), &lp_mod(1, &[2], 3));
        assert_eq!(crt_combine(&a, &b, 3).unwrap(), theta(1, 3).unwrap());

        // q t^m - (q-1)(ε t^n) = q t^m + (q-1)(-ε) t^n
        let q = 5;
        for (m, n, eps) in [(0, 1, 1i8), (2, -1, -1), (-3, 3, 1)] {
            let a = UnitaryUnit::monomial(2, UnitDecomposition { sign: 1, exponent: m }).unwrap();
            let b = UnitaryUnit::monomial(q, UnitDecomposition { sign: -eps, exponent: n }).unwrap();
            let expected = &LaurentPoly::monomial(q as i64, m) + &LaurentPoly::monomial((q as i64 - 1) * eps as i64, n);
            assert_eq!(crt_combine(&a, &b, q).unwrap().poly(), &expected.reduce_mod(2 * q).unwrap());
        }
        assert!(crt_split(&unit(0, &[1], 8)).is_err());
    }

    #[test]
    fn classify_examples() {
        let u = theta(1, 3).unwrap().times_unit(UnitDecomposition { sign: -1, exponent: -2 });
        assert_eq!(classify_unit(&u).unwrap(), OrbitClass { k: 1 });
        for q in [3, 5, 7] {
            let t5 = UnitaryUnit::monomial(2 * q, UnitDecomposition { sign: 1, exponent: 5 }).unwrap();
            assert_eq!(classify_unit(&t5).unwrap(), OrbitClass { k: 0 });
        }
        assert_eq!(classify_unit(&unit(0, &[3, 0, 0, 0, 2], 6)).unwrap(), OrbitClass { k: 4 });
        for n in -10..=10 {
            assert_eq!(classify_unit(&theta(n, 7).unwrap()).unwrap(), OrbitClass { k: n });
        }
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_unitary(6, 0, DEFAULT_CANDIDATE_CAP, Execution::Auto).unwrap();
        let polys: Vec<_> = e.iter().map(|u| u.poly().clone()).collect();
        assert_eq!(polys, vec![lp_mod(0, &[1], 6), lp_mod(0, &[5], 6)]);

        let e2 = enumerate_unitary(2, 1, DEFAULT_CANDIDATE_CAP, Execution::Sequential).unwrap();
        let mut got: Vec<String> = e2.iter().map(|u| u.poly().to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["1", "t", "t^-1"]);

        assert!(matches!(
            enumerate_unitary(10, 4, DEFAULT_CANDIDATE_CAP, Execution::Auto),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_mod_6_span_1_matches_theta() {
        let seq = enumerate_unitary(6, 1, DEFAULT_CANDIDATE_CAP, Execution::Sequential).unwrap();
        let par = enumerate_unitary(6, 1, DEFAULT_CANDIDATE_CAP, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        for u in &seq {
            let k = classify_unit(u).unwrap().k;
            let (triv, k2) = decompose_by_theta(u, 3, 2).unwrap().expect("decomposes");
            assert_eq!(k, k2);
            assert_eq!(u, &theta(k, 3).unwrap().times_unit(triv));
        }
        // ±t^j for j in [-1, 1], and ±t^j θ(k) for the two-term units
        assert_eq!(seq.len(), 6 + 2 * 2 + 2 * 2 + 2 * 2);
    }

    #[test]
    fn roots_of_one() {
        assert_eq!(square_roots_of_one(6), vec![1, 5]);
        assert_eq!(square_roots_of_one(8), vec![1, 3, 5, 7]);
        assert_eq!(square_roots_of_one(2), vec![1]);
    }

    #[test]
    fn orbit_sets() {
        let b = OrbitBounds::default();
        match rank_one_orbit_set(&LaurentPoly::constant(6), b, Execution::Auto).unwrap() {
            OrbitSet::InfiniteCyclic {
                q,
                generator,
                generator_unit,
                generator_verified,
            } => {
                assert_eq!(q, 3);
                assert_eq!(generator, OrbitClass { k: 1 });
                assert_eq!(generator_unit.poly(), &lp_mod(0, &[3, 2], 6));
                assert!(generator_verified);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(rank_one_orbit_set(&LaurentPoly::one(), b, Execution::Auto).unwrap(), OrbitSet::Trivial);
        assert_eq!(rank_one_orbit_set(&LaurentPoly::constant(-1), b, Execution::Auto).unwrap().summary(), "trivial");
        match rank_one_orbit_set(&LaurentPoly::constant(8), b, Execution::Auto).unwrap() {
            OrbitSet::Enumerated { reps, .. } => {
                let three = reps.iter().find(|r| r.unit == lp_mod(0, &[3], 8)).expect("class of 3");
                assert!(!three.quadratic);
                let one = reps.iter().find(|r| r.unit.is_one()).expect("trivial class");
                assert!(one.quadratic);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(rank_one_orbit_set(&LaurentPoly::zero(), b, Execution::Auto), Err(Error::ZeroPolynomial));
        assert_eq!(rank_one_orbit_set(&LaurentPoly::t(), b, Execution::Auto), Err(Error::NotSymmetric));
    }

    #[test]
    fn polynomial_orbit_witnesses() {
        // p = t + 3 + t^-1; u = t is always a witness
        let p = LaurentPoly::from_coeffs(-1, &[1, 3, 1]);
        let OrbitSet::Witnesses { witnesses, .. } =
            rank_one_orbit_set(&p, OrbitBounds::default(), Execution::Auto).unwrap()
        else {
            panic!("expected witnesses");
        };
        assert!(!witnesses.is_empty());
        for w in &witnesses {
            assert!((&(w * &w.involute()) - &LaurentPoly::one()).divisible_by(&p).unwrap());
        }
    }
}
