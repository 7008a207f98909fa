//! Boundary linking forms of nondegenerate Hermitian forms.
//!
//! Elements of the torsion module `coker(λ̂) = Z[t, t^-1]^n / G Z[t, t^-1]^n`
//! are coordinate vectors modulo the columns of `G`. The boundary pairing is
//! `∂λ(x, y) = x̄ᵀ G⁻¹ y`, computed as `x̄ᵀ adj(G) y / det(G)`, and the
//! quadratic refinement is `μ∂(y) = ∂λ(y, y)` read in `Q1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{is_isometry, FormIsometry, HermitianForm};
use crate::laurent::LaurentPoly;
use crate::matrix::{conj_dot, PolyMatrix, PolyVector};
use crate::quotient::{qclass_equal, QClass, QGroup, RatValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingPresentation {
    form: HermitianForm,
    det: LaurentPoly,
    adj: PolyMatrix,
}

impl LinkingPresentation {
    pub fn new(form: HermitianForm) -> Result<Self> {
        let det = form.determinant();
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        let adj = form.gram().adjugate()?;
        Ok(LinkingPresentation { form, det, adj })
    }

    /// Presentation of the rank-one form `(p)`.
    pub fn rank_one(p: LaurentPoly) -> Result<Self> {
        Self::new(HermitianForm::rank_one(p)?)
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn gram(&self) -> &PolyMatrix {
        self.form.gram()
    }

    pub fn det(&self) -> &LaurentPoly {
        &self.det
    }

    pub fn adj(&self) -> &PolyMatrix {
        &self.adj
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    fn check_len(&self, x: &[LaurentPoly]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// The unique `u` with `G u = x`, if it exists over `Z[t, t^-1]`.
    pub fn preimage(&self, x: &[LaurentPoly]) -> Result<Option<PolyVector>> {
        self.check_len(x)?;
        self.adj
            .mul_vec(x)?
            .iter()
            .map(|c| c.div_exact(&self.det))
            .collect::<Result<Option<PolyVector>>>()
    }

    /// Whether `x` represents zero in the cokernel.
    pub fn in_image(&self, x: &[LaurentPoly]) -> Result<bool> {
        Ok(self.preimage(x)?.is_some())
    }

    /// `x̄ᵀ G⁻¹ y` as an exact element of `Q(t)`.
    pub fn pair_value(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<RatValue> {
        self.check_len(x)?;
        self.check_len(y)?;
        let num = conj_dot(x, &self.adj.mul_vec(y)?)?;
        RatValue::new(num, self.det.clone())
    }

    /// `∂λ([x], [y])` in `Q(t)/Z[t, t^-1]`.
    pub fn boundary_pair(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<QClass> {
        QClass::new(self.pair_value(x, y)?, QGroup::QtModZt)
    }

    /// `μ∂([y])` in `Q1`; only defined for even forms.
    pub fn mu_partial(&self, y: &[LaurentPoly]) -> Result<QClass> {
        if !self.form.is_even() {
            return Err(Error::NotEven);
        }
        QClass::new(self.pair_value(y, y)?, QGroup::Q1)
    }

    /// The Blanchfield pairing of the boundary, `Bl = -∂λ`.
    pub fn blanchfield_pair(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<QClass> {
        QClass::new(self.pair_value(x, y)?.neg(), QGroup::QtModZt)
    }

    /// The induced refinement of the Blanchfield pairing, `μ_Bl = -μ∂`.
    pub fn blanchfield_mu(&self, y: &[LaurentPoly]) -> Result<QClass> {
        let mu = self.mu_partial(y)?;
        QClass::new(mu.value().neg(), QGroup::Q1)
    }

    fn basis_vector(&self, i: usize) -> PolyVector {
        (0..self.rank())
            .map(|k| if k == i { LaurentPoly::one() } else { LaurentPoly::zero() })
            .collect()
    }

    /// The standard generators `e_i` of the cokernel.
    pub fn generators(&self) -> Vec<PolyVector> {
        (0..self.rank()).map(|i| self.basis_vector(i)).collect()
    }
}

impl Serialize for LinkingPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            form: &'a HermitianForm,
        }
        Repr { form: &self.form }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinkingPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            form: HermitianForm,
        }
        let r = Repr::deserialize(d)?;
        LinkingPresentation::new(r.form).map_err(serde::de::Error::custom)
    }
}

/// A module map `coker(λ̂0) -> coker(λ̂1)` given by a coordinate matrix `L`
/// with `L · im(G0) ⊆ im(G1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionIsometry {
    matrix: PolyMatrix,
    source: LinkingPresentation,
    target: LinkingPresentation,
}

impl TorsionIsometry {
    pub fn new(
        matrix: PolyMatrix,
        source: LinkingPresentation,
        target: LinkingPresentation,
    ) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        let image = matrix.mul(source.gram())?;
        for j in 0..image.cols() {
            if !target.in_image(&image.column(j))? {
                return Err(Error::DoesNotDescend);
            }
        }
        Ok(TorsionIsometry {
            matrix,
            source,
            target,
        })
    }

    /// Multiplication by `u` on the cokernel of `(p)`.
    pub fn rank_one(p: LaurentPoly, u: LaurentPoly) -> Result<Self> {
        let pres = LinkingPresentation::rank_one(p)?;
        Self::new(PolyMatrix::scalar(u), pres.clone(), pres)
    }

    pub fn identity(p: &LinkingPresentation) -> Self {
        TorsionIsometry {
            matrix: PolyMatrix::identity(p.rank()),
            source: p.clone(),
            target: p.clone(),
        }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &LinkingPresentation {
        &self.source
    }

    pub fn target(&self) -> &LinkingPresentation {
        &self.target
    }

    pub fn apply(&self, x: &[LaurentPoly]) -> Result<PolyVector> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &TorsionIsometry) -> Result<TorsionIsometry> {
        if self.source != other.target {
            return Err(Error::DimensionMismatch("composition of unrelated presentations".into()));
        }
        Ok(TorsionIsometry {
            matrix: self.matrix.mul(&other.matrix)?,
            source: other.source.clone(),
            target: self.target.clone(),
        })
    }

    /// JSON certificate `{"matrix", "quadratic"}`.
    pub fn certificate(&self) -> Result<IsometryCertificate> {
        let quadratic = self.source.form().is_even()
            && self.target.form().is_even()
            && verify_linking_isometry(self, true)?;
        Ok(IsometryCertificate {
            matrix: self.matrix.clone(),
            quadratic,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryCertificate {
    pub matrix: PolyMatrix,
    pub quadratic: bool,
}

/// Checks `∂λ1(h e_i, h e_j) = ∂λ0(e_i, e_j)` for all generator pairs and,
/// if `quadratic`, `μ1(h x) = μ0(x)` for every `e_i` and `e_i + e_j`.
pub fn verify_linking_isometry(h: &TorsionIsometry, quadratic: bool) -> Result<bool> {
    let p0 = &h.source;
    let p1 = &h.target;
    let gens = p0.generators();
    let images: Vec<PolyVector> = gens.iter().map(|e| h.apply(e)).collect::<Result<_>>()?;
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            let before = p0.boundary_pair(&gens[i], &gens[j])?;
            let after = p1.boundary_pair(&images[i], &images[j])?;
            if !qclass_equal(&before, &after)? {
                return Ok(false);
            }
        }
    }
    if !quadratic {
        return Ok(true);
    }
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let (x, hx) = if i == j {
                (gens[i].clone(), images[i].clone())
            } else {
                (add_vec(&gens[i], &gens[j]), add_vec(&images[i], &images[j]))
            };
            if !qclass_equal(&p0.mu_partial(&x)?, &p1.mu_partial(&hx)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn add_vec(x: &[LaurentPoly], y: &[LaurentPoly]) -> PolyVector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// The induced map `∂F = (F*)⁻¹` on cokernels. In cokernel coordinates this
/// is the matrix `(Fᵀ)⁻¹`.
pub fn boundary_action(
    f: &FormIsometry,
    p0: &LinkingPresentation,
    p1: &LinkingPresentation,
) -> Result<TorsionIsometry> {
    if !is_isometry(f.matrix(), p0.form(), p1.form())? {
        return Err(Error::NotIsometry);
    }
    let matrix = f.inverse().matrix().transpose();
    TorsionIsometry::new(matrix, p0.clone(), p1.clone())
}
