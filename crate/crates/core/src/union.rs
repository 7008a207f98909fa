//! The algebraic union `λ0 ∪_h -λ1` of two nondegenerate forms glued along
//! an isometry `h` of their boundary linking forms.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hermitian::{is_isometry, FormIsometry, HermitianForm};
use crate::laurent::{LaurentPoly, UnitDecomposition};
use crate::linking::{boundary_action, verify_linking_isometry, LinkingPresentation, TorsionIsometry};
use crate::matrix::{PolyMatrix, PolyVector};

/// A free basis of `ker(hπ0 - π1) ⊆ H0* ⊕ H1*`: the vectors `(e_i, L e_i)`
/// followed by `(0, G1 f_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionBasis {
    pub vectors: Vec<(PolyVector, PolyVector)>,
}

impl UnionBasis {
    pub fn new(h: &TorsionIsometry) -> Self {
        let n0 = h.source().rank();
        let n1 = h.target().rank();
        let l = h.matrix();
        let g1 = h.target().gram();
        let mut vectors = Vec::with_capacity(n0 + n1);
        for i in 0..n0 {
            vectors.push((unit_vector(n0, i), l.column(i)));
        }
        for j in 0..n1 {
            vectors.push((vec![LaurentPoly::zero(); n0], g1.column(j)));
        }
        UnionBasis { vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn unit_vector(n: usize, i: usize) -> PolyVector {
    (0..n)
        .map(|k| if k == i { LaurentPoly::one() } else { LaurentPoly::zero() })
        .collect()
}

/// Gram matrix of the union on [`UnionBasis`]. Entries are
/// `∂λ0(x0, y0) - ∂λ1(x1, y1)`, computed exactly in `Q(t)` and required to be
/// Laurent polynomials.
pub fn union_gram(h: &TorsionIsometry) -> Result<HermitianForm> {
    if !verify_linking_isometry(h, false)? {
        return Err(Error::NotLinkingIsometry);
    }
    let basis = UnionBasis::new(h);
    gram_on_basis(h.source(), h.target(), &basis)
}

fn gram_on_basis(
    p0: &LinkingPresentation,
    p1: &LinkingPresentation,
    basis: &UnionBasis,
) -> Result<HermitianForm> {
    let n = basis.len();
    let mut gram = PolyMatrix::zeros(n, n);
    for (i, (x0, x1)) in basis.vectors.iter().enumerate() {
        for (j, (y0, y1)) in basis.vectors.iter().enumerate() {
            let v = p0.pair_value(x0, y0)?.sub(&p1.pair_value(x1, y1)?);
            gram[(i, j)] = v
                .as_laurent()
                .ok_or_else(|| Error::Integrality(format!("union entry ({i}, {j}) = {v}")))?;
        }
    }
    HermitianForm::new(gram)
}

/// `[[(1 - uū)/p, -ū], [-u, -p]]`, the union of `(p)` with itself along
/// multiplication by `u`, computed by direct fraction arithmetic.
pub fn rank_one_union_gram(p: &LaurentPoly, u: &LaurentPoly) -> Result<PolyMatrix> {
    let top = &LaurentPoly::one() - &(u * &u.involute());
    let a = top
        .div_exact(p)?
        .ok_or_else(|| Error::Integrality(format!("{p} does not divide {top}")))?;
    PolyMatrix::from_rows(vec![vec![a, -u.involute()], vec![-u.clone(), -p.clone()]])
}

/// Whether the union is even. The forms must be even, `h` must preserve the
/// boundary pairing, and `f`, if supplied, must be a form isometry `G0 -> G1`.
/// `h` need not preserve the quadratic refinement, so this also exposes the
/// failure of evenness for symmetric-only gluings.
pub fn check_union_even(h: &TorsionIsometry, f: Option<&FormIsometry>) -> Result<bool> {
    let (p0, p1) = (h.source(), h.target());
    if !p0.form().is_even() || !p1.form().is_even() {
        return Err(Error::NotEven);
    }
    if let Some(f) = f {
        if !is_isometry(f.matrix(), p0.form(), p1.form())? {
            return Err(Error::NotIsometry);
        }
    }
    Ok(union_gram(h)?.is_even())
}

/// `h ∘ ∂F⁻¹`, a self-isometry of the target's linking form.
pub fn reglue_by_form_isometry(h: &TorsionIsometry, f: &FormIsometry) -> Result<TorsionIsometry> {
    // validates F; the inverse of (Fᵀ)⁻¹ is Fᵀ
    boundary_action(f, h.source(), h.target())?;
    let df_inv = TorsionIsometry::new(
        f.matrix().transpose(),
        h.target().clone(),
        h.source().clone(),
    )?;
    h.compose(&df_inv)
}

/// Determinant up to units: `±t^k`, or not a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetClass {
    Unit(UnitDecomposition),
    NonUnit,
}

impl DetClass {
    pub fn of(det: &LaurentPoly) -> Self {
        det.unit_decompose().map_or(DetClass::NonUnit, DetClass::Unit)
    }

    pub fn is_unit(self) -> bool {
        matches!(self, DetClass::Unit(_))
    }
}

impl Serialize for DetClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DetClass::Unit(u) => u.serialize(s),
            DetClass::NonUnit => s.serialize_str("nonunit"),
        }
    }
}

/// Everything reported about a union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionSummary {
    pub basis: UnionBasis,
    pub gram: HermitianForm,
    pub even: bool,
    pub det_class: DetClass,
    /// `None` when `G(1)` is degenerate.
    pub signature_at_1: Option<i64>,
}

impl UnionSummary {
    pub fn new(h: &TorsionIsometry) -> Result<Self> {
        let gram = union_gram(h)?;
        let signature_at_1 = match gram.signature_at_one() {
            Ok(s) => Some(s),
            Err(Error::DegenerateAtOne) => None,
            Err(e) => return Err(e),
        };
        Ok(UnionSummary {
            basis: UnionBasis::new(h),
            even: gram.is_even(),
            det_class: DetClass::of(&gram.determinant()),
            signature_at_1,
            gram,
        })
    }
}
