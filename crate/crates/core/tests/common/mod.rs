#![allow(dead_code)]

use linkform::{HermitianForm, LaurentPoly, PolyMatrix};
use proptest::prelude::*;

/// Integer Laurent polynomial supported on `[lo, hi]` with coefficients in `[-c, c]`.
pub fn poly(lo: i64, hi: i64, c: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(-c..=c, (hi - lo + 1) as usize)
        .prop_map(move |cs| LaurentPoly::from_coeffs(lo, &cs))
}

pub fn nonzero_poly(lo: i64, hi: i64, c: i64) -> impl Strategy<Value = LaurentPoly> {
    poly(lo, hi, c).prop_filter("nonzero", |p| !p.is_zero())
}

/// `a + ā` with `a` supported on `[0, d]`, so the result has degree at most
/// `d` and coefficients in `[-c, c]`.
pub fn even_symmetric(d: i64, c: i64) -> impl Strategy<Value = LaurentPoly> {
    (-(c / 2)..=c / 2, prop::collection::vec(-c..=c, d as usize)).prop_map(|(a0, rest)| {
        let mut coeffs = vec![a0];
        coeffs.extend(rest);
        let a = LaurentPoly::from_coeffs(0, &coeffs);
        &a + &a.involute()
    })
}

/// A nondegenerate even Hermitian form of the given rank.
pub fn even_form(rank: usize, d: i64, c: i64) -> impl Strategy<Value = HermitianForm> {
    let n_off = rank * rank.saturating_sub(1) / 2;
    (
        prop::collection::vec(even_symmetric(d, c), rank),
        prop::collection::vec(poly(-d, d, c), n_off),
    )
        .prop_map(move |(diag, off)| {
            let mut g = PolyMatrix::zeros(rank, rank);
            let mut it = off.into_iter();
            for i in 0..rank {
                g[(i, i)] = diag[i].clone();
                for j in i + 1..rank {
                    let p = it.next().expect("enough entries");
                    g[(j, i)] = p.involute();
                    g[(i, j)] = p;
                }
            }
            HermitianForm::new(g).expect("Hermitian by construction")
        })
        .prop_filter("nondegenerate", |f| f.is_nondegenerate())
}

pub fn vector(n: usize, d: i64, c: i64) -> impl Strategy<Value = Vec<LaurentPoly>> {
    prop::collection::vec(poly(-d, d, c), n)
}

pub fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13])
}
