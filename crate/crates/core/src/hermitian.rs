//! Hermitian forms over `Z[t, t^-1]` given by Gram matrices.
//!
//! The pairing convention is `λ(x, y) = Σ x_i G_ij ȳ_j`, so `G_ij = λ(e_i, e_j)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, UnitDecomposition};
use crate::matrix::PolyMatrix;
use crate::quotient::is_even_symmetric;

/// Whether a square matrix equals its involute-transpose.
pub fn is_hermitian(g: &PolyMatrix) -> Result<bool> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    Ok(*g == g.conj_transpose())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    gram: PolyMatrix,
}

impl HermitianForm {
    pub fn new(gram: PolyMatrix) -> Result<Self> {
        if let Some(m) = (0..gram.rows())
            .flat_map(|i| (0..gram.cols()).map(move |j| (i, j)))
            .find_map(|ij| gram[ij].modulus())
        {
            return Err(Error::ModularOperand(m));
        }
        if !is_hermitian(&gram)? {
            return Err(Error::NotHermitian);
        }
        Ok(HermitianForm { gram })
    }

    /// The rank-one form `(p)`; `p` must be symmetric.
    pub fn rank_one(p: LaurentPoly) -> Result<Self> {
        Self::new(PolyMatrix::scalar(p))
    }

    pub fn empty() -> Self {
        HermitianForm {
            gram: PolyMatrix::zeros(0, 0),
        }
    }

    /// The hyperbolic form `[[0, 1], [1, 0]]`.
    pub fn hyperbolic() -> Self {
        HermitianForm {
            gram: PolyMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
        }
    }

    pub fn gram(&self) -> &PolyMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> LaurentPoly {
        self.gram.determinant().expect("square by construction")
    }

    /// `λ̂` is injective iff the determinant is nonzero.
    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// `λ̂` is an isomorphism iff the determinant is a unit `±t^k`.
    pub fn is_nonsingular(&self) -> bool {
        self.determinant().unit_decompose().is_some()
    }

    /// Every self-pairing is `a + ā`; the cross terms pair up as `c + c̄`, so
    /// checking the diagonal suffices.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| {
            is_even_symmetric(&self.gram[(i, i)]).expect("Hermitian diagonal is symmetric")
        })
    }

    /// `λ(x, y) = xᵀ G ȳ`.
    pub fn pair(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<LaurentPoly> {
        let ybar: Vec<LaurentPoly> = y.iter().map(LaurentPoly::involute).collect();
        let gy = self.gram.mul_vec(&ybar)?;
        if x.len() != gy.len() {
            return Err(Error::DimensionMismatch("pairing".into()));
        }
        Ok(x.iter().zip(&gy).fold(LaurentPoly::zero(), |acc, (a, b)| &acc + &(a * b)))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        HermitianForm {
            gram: self.gram.block_sum(&other.gram),
        }
    }

    pub fn negate(&self) -> Self {
        HermitianForm {
            gram: self.gram.neg(),
        }
    }

    /// `G ⊕ [[0, 1], [1, 0]]`.
    pub fn stabilize_hyperbolic(&self) -> Self {
        self.direct_sum(&Self::hyperbolic())
    }

    /// Signature of the integer symmetric matrix `G(1)`.
    pub fn signature_at_one(&self) -> Result<i64> {
        integer_signature(&self.gram.eval_at_one())
    }
}

impl Serialize for HermitianForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            rank: usize,
            gram: &'a PolyMatrix,
        }
        Repr {
            rank: self.rank(),
            gram: &self.gram,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            rank: usize,
            gram: PolyMatrix,
        }
        let r = Repr::deserialize(d)?;
        if r.gram.rows() != r.rank {
            return Err(D::Error::custom(format!(
                "rank {} does not match gram with {} rows",
                r.rank,
                r.gram.rows()
            )));
        }
        HermitianForm::new(r.gram).map_err(D::Error::custom)
    }
}

/// Signature of a nondegenerate integer symmetric matrix.
///
/// Fraction-free congruence diagonalisation. When the remaining diagonal
/// vanishes, adding row/column `j` to row/column `i` gives the pivot `2 a_ij`.
pub fn integer_signature(m: &[Vec<BigInt>]) -> Result<i64> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: m.first().map_or(0, Vec::len),
        });
    }
    if (0..n).any(|i| (0..n).any(|j| m[i][j] != m[j][i])) {
        return Err(Error::NotSymmetric);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut signature = 0i64;
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => active[p],
            None => {
                let Some((i, j)) = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero())
                else {
                    return Err(Error::DegenerateAtOne);
                };
                // row_i += row_j, col_i += col_j
                let row_j = a[j].clone();
                for (x, v) in a[i].iter_mut().zip(row_j) {
                    *x += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[i] += v;
                }
                i
            }
        };
        let p = a[pivot][pivot].clone();
        signature += if p.is_positive() { 1 } else { -1 };
        active.retain(|&i| i != pivot);
        // congruence: row_i <- p row_i - a_ik row_k, then the same on columns
        let mut next = a.clone();
        for &i in &active {
            for &j in &active {
                next[i][j] = &p * (&p * &a[i][j] - &a[i][pivot] * &a[pivot][j]);
            }
        }
        a = next;
        // keep entries small: divide the active block by its content
        let g = active
            .iter()
            .flat_map(|&i| active.iter().map(move |&j| (i, j)))
            .fold(BigInt::zero(), |g, (i, j)| g.gcd(&a[i][j]));
        if g > BigInt::from(1) {
            for &i in &active {
                for &j in &active {
                    a[i][j] = &a[i][j] / &g;
                }
            }
        }
    }
    Ok(signature)
}

/// An isometry candidate `F`, required to be invertible over `Z[t, t^-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormIsometry {
    matrix: PolyMatrix,
}

impl FormIsometry {
    pub fn new(matrix: PolyMatrix) -> Result<Self> {
        if unit_determinant(&matrix)?.is_none() {
            return Err(Error::Singular);
        }
        Ok(FormIsometry { matrix })
    }

    pub fn identity(n: usize) -> Self {
        FormIsometry {
            matrix: PolyMatrix::identity(n),
        }
    }

    pub fn unit(u: UnitDecomposition) -> Self {
        FormIsometry {
            matrix: PolyMatrix::scalar(u.to_poly()),
        }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Inverse over `Z[t, t^-1]` via the adjugate.
    pub fn inverse(&self) -> Self {
        let det = unit_determinant(&self.matrix)
            .expect("square")
            .expect("invertible by construction");
        let inv_det = det.inverse().to_poly();
        let adj = self.matrix.adjugate().expect("square");
        let n = adj.rows();
        let mut out = PolyMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = &adj[(i, j)] * &inv_det;
            }
        }
        FormIsometry { matrix: out }
    }
}

fn unit_determinant(m: &PolyMatrix) -> Result<Option<UnitDecomposition>> {
    Ok(m.determinant()?.unit_decompose())
}

/// Whether `Fᵀ G1 F̄ = G0`, i.e. `λ1(Fx, Fy) = λ0(x, y)`.
///
/// Only a zero determinant is an error; a matrix with nonzero non-unit
/// determinant is simply not an isometry.
pub fn is_isometry(f: &PolyMatrix, g0: &HermitianForm, g1: &HermitianForm) -> Result<bool> {
    let n = g0.rank();
    if f.rows() != g1.rank() || f.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "F is {}x{}, forms have ranks {} and {}",
            f.rows(),
            f.cols(),
            n,
            g1.rank()
        )));
    }
    let det = f.determinant()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let pulled = f.transpose().mul(g1.gram())?.mul(&f.involute())?;
    Ok(pulled == *g0.gram() && det.unit_decompose().is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::constant(v)
    }

    fn sig(rows: &[&[i64]]) -> Result<i64> {
        let m: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        integer_signature(&m)
    }

    #[test]
    fn predicates() {
        for q in [3, 5, 7] {
            let f = HermitianForm::rank_one(c(2 * q)).unwrap();
            assert!(f.is_nondegenerate());
            assert!(f.is_even());
        }
        let h = HermitianForm::hyperbolic();
        assert!(h.is_nondegenerate() && h.is_nonsingular() && h.is_even());

        let not_h = PolyMatrix::from_rows(vec![
            vec![c(0), LaurentPoly::t()],
            vec![LaurentPoly::t(), c(0)],
        ])
        .unwrap();
        assert!(!is_hermitian(&not_h).unwrap());
        assert_eq!(HermitianForm::new(not_h), Err(Error::NotHermitian));
        assert!(is_hermitian(&PolyMatrix::zeros(1, 2)).is_err());

        assert!(!HermitianForm::rank_one(c(1)).unwrap().is_even());
    }

    #[test]
    fn union_gram_is_even() {
        let g = PolyMatrix::from_rows(vec![
            vec![LaurentPoly::from_coeffs(-1, &[-1, -2, -1]), LaurentPoly::from_coeffs(-1, &[-2, -3])],
            vec![LaurentPoly::from_coeffs(0, &[-3, -2]), c(-6)],
        ])
        .unwrap();
        let form = HermitianForm::new(g).unwrap();
        assert!(form.is_even());
        assert_eq!(form.signature_at_one().unwrap(), 0);
    }

    #[test]
    fn isometry_examples() {
        let six = HermitianForm::rank_one(c(6)).unwrap();
        let minus_t2 = PolyMatrix::scalar(LaurentPoly::monomial(-1, 2));
        assert!(is_isometry(&minus_t2, &six, &six).unwrap());
        assert!(!is_isometry(&PolyMatrix::scalar(c(3)), &six, &six).unwrap());
        assert!(is_isometry(&PolyMatrix::identity(1), &six, &six).unwrap());
        let hyp = HermitianForm::hyperbolic();
        assert!(is_isometry(&PolyMatrix::identity(2), &hyp, &hyp).unwrap());
        assert_eq!(
            is_isometry(&PolyMatrix::scalar(c(0)), &six, &six),
            Err(Error::Singular)
        );
    }

    #[test]
    fn stabilization() {
        let f = HermitianForm::rank_one(c(6)).unwrap().stabilize_hyperbolic();
        assert_eq!(
            f.gram(),
            &PolyMatrix::from_i64_rows(&[&[6, 0, 0], &[0, 0, 1], &[0, 1, 0]])
        );
        assert_eq!(HermitianForm::empty().stabilize_hyperbolic(), HermitianForm::hyperbolic());
        let twice = HermitianForm::empty().stabilize_hyperbolic().stabilize_hyperbolic();
        assert_eq!(twice.rank(), 4);
        assert_eq!(twice, HermitianForm::hyperbolic().direct_sum(&HermitianForm::hyperbolic()));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(sig(&[&[6]]).unwrap(), 1);
        assert_eq!(sig(&[&[0, 1], &[1, 0]]).unwrap(), 0);
        assert_eq!(sig(&[&[-4, -5], &[-5, -6]]).unwrap(), 0);
        assert_eq!(sig(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]).unwrap(), 3);
        assert_eq!(sig(&[&[0, 0, 1], &[0, -3, 0], &[1, 0, 0]]).unwrap(), -1);
        assert_eq!(sig(&[&[1, 1], &[1, 1]]), Err(Error::DegenerateAtOne));
        assert_eq!(sig(&[]).unwrap(), 0);
    }

    #[test]
    fn form_isometry_requires_unit_determinant() {
        assert_eq!(FormIsometry::new(PolyMatrix::scalar(c(3))), Err(Error::Singular));
        let f = FormIsometry::new(PolyMatrix::scalar(LaurentPoly::monomial(-1, 3))).unwrap();
        assert_eq!(f.inverse().matrix(), &PolyMatrix::scalar(LaurentPoly::monomial(-1, -3)));
    }

    #[test]
    fn json_shape() {
        let f = HermitianForm::rank_one(c(6)).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"rank":1,"gram":[[{"mod":null,"terms":[[0,"6"]]}]]}"#);
        let back: HermitianForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<HermitianForm>(r#"{"rank":2,"gram":[[{"mod":null,"terms":[]}]]}"#).is_err());
    }
}
