//! Dense matrices over `Z[t, t^-1]`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// A column vector over `Z[t, t^-1]`.
pub type PolyVector = Vec<LaurentPoly>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    /// A `1 x 1` matrix.
    pub fn scalar(p: LaurentPoly) -> Self {
        PolyMatrix {
            rows: 1,
            cols: 1,
            data: vec![p],
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(PolyMatrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[PolyVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {} (expected {rows})",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| LaurentPoly::constant(c)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> PolyVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Entrywise involution.
    pub fn involute(&self) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(LaurentPoly::involute).collect(),
        }
    }

    /// The involute-transpose `A*`.
    pub fn conj_transpose(&self) -> Self {
        self.transpose().involute()
    }

    pub fn neg(&self) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    acc = acc.checked_add(&self[(i, k)].checked_mul(&other[(k, j)])?)?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[LaurentPoly]) -> Result<PolyVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = LaurentPoly::zero();
                for (k, x) in v.iter().enumerate() {
                    acc = acc.checked_add(&self[(i, k)].checked_mul(x)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn block_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division is
    /// exact in `Z[t, t^-1]`.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        let mut a: Vec<Vec<LaurentPoly>> = self.to_rows();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(LaurentPoly::zero());
                };
                a.swap(k, swap);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].checked_mul(&a[i][j])?
                        .checked_sub(&a[i][k].checked_mul(&a[k][j])?)?;
                    a[i][j] = num.div_exact(&prev)?.ok_or_else(|| {
                        Error::Integrality("inexact Bareiss division".into())
                    })?;
                }
                a[i][k] = LaurentPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n - 1, n - 1);
        for (oi, i) in (0..n).filter(|&i| i != row).enumerate() {
            for (oj, j) in (0..n).filter(|&j| j != col).enumerate() {
                out[(oi, oj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Classical adjugate, so that `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut adj = Self::zeros(n, n);
        if n == 0 {
            return Ok(adj);
        }
        if n == 1 {
            adj[(0, 0)] = LaurentPoly::one();
            return Ok(adj);
        }
        for i in 0..n {
            for j in 0..n {
                let cofactor = self.minor(i, j).determinant()?;
                adj[(j, i)] = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
            }
        }
        Ok(adj)
    }

    /// Integer matrix obtained by evaluating every entry at `t = 1`.
    pub fn eval_at_one(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].eval_at_one()).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<LaurentPoly>>::deserialize(d)?;
        PolyMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Sum `Σ conj(x_i) * y_i`.
pub fn conj_dot(x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<LaurentPoly> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {}",
            x.len(),
            y.len()
        )));
    }
    let mut acc = LaurentPoly::zero();
    for (a, b) in x.iter().zip(y) {
        acc = acc.checked_add(&a.involute().checked_mul(b)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(lowest: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(lowest, c)
    }

    /// Leibniz expansion, used as an independent determinant oracle.
    fn leibniz(m: &PolyMatrix) -> LaurentPoly {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut acc = LaurentPoly::zero();
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = LaurentPoly::one();
            for (i, &pi) in p.iter().enumerate() {
                term = &term * &m[(i, pi)];
            }
            acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn determinant_matches_leibniz() {
        let m = PolyMatrix::from_rows(vec![
            vec![lp(0, &[0]), lp(-1, &[1, 2]), lp(0, &[3])],
            vec![lp(0, &[1, 1]), lp(0, &[0]), lp(1, &[-1])],
            vec![lp(-2, &[2, 0, 1]), lp(0, &[5]), lp(0, &[1, 0, 1])],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), leibniz(&m));
    }

    #[test]
    fn adjugate_identity() {
        let m = PolyMatrix::from_rows(vec![
            vec![lp(-1, &[1, 2, 1]), lp(0, &[3, 1])],
            vec![lp(-1, &[1, 3]), lp(0, &[6])],
        ])
        .unwrap();
        let det = m.determinant().unwrap();
        let prod = m.mul(&m.adjugate().unwrap()).unwrap();
        let mut expected = PolyMatrix::zeros(2, 2);
        expected[(0, 0)] = det.clone();
        expected[(1, 1)] = det;
        assert_eq!(prod, expected);
    }

    #[test]
    fn singular_determinant_is_zero() {
        let m = PolyMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(m.determinant().unwrap().is_zero());
        let z = PolyMatrix::zeros(3, 3);
        assert!(z.determinant().unwrap().is_zero());
    }

    #[test]
    fn empty_matrix() {
        let e = PolyMatrix::zeros(0, 0);
        assert!(e.determinant().unwrap().is_one());
        assert_eq!(e.block_sum(&PolyMatrix::identity(2)), PolyMatrix::identity(2));
    }

    #[test]
    fn non_square_determinant() {
        assert_eq!(
            PolyMatrix::zeros(2, 3).determinant(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }
}
