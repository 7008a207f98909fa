//! Linking forms, Blanchfield pairings and unitary units over `Z[t, t^-1]`.
//!
//! Hermitian forms over the Laurent ring boundary to torsion linking forms.
//! Gluing two forms along an isometry of their boundaries gives a closed
//! form; the gluing classes for `(2q)` are distinguished via the group of
//! unitary units of `Z/2q[t, t^-1]`.

pub mod error;
pub mod hermitian;
pub mod laurent;
pub mod linking;
pub mod matrix;
pub mod par;
pub mod quotient;
pub mod union;
pub mod units;
pub mod words;

pub use error::{Error, Result};
pub use hermitian::{is_hermitian, is_isometry, FormIsometry, HermitianForm};
pub use laurent::{LaurentPoly, UnitDecomposition};
pub use linking::{LinkingPresentation, TorsionIsometry};
pub use matrix::{PolyMatrix, PolyVector};
pub use quotient::{qclass_equal, QClass, QGroup, RatValue};
pub use units::{OrbitClass, UnitaryUnit};
pub use words::{FreeProductWord, GroupRingElement};
