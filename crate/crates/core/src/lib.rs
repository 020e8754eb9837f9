//! Left-invariant paracontact metric structures on three-dimensional Lie groups.
//!
//! Every computation is generic over [`Scalar`], so the same code runs in exact
//! rational arithmetic ([`Exact`]) or in `f64` with tolerance-based comparisons.

pub mod classify;
pub mod error;
pub mod geometry;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod paracontact;
pub mod scalar;
pub mod tensor;

pub use classify::{classify, Classification, Verdict};
pub use error::{Error, Result};
pub use geometry::{levi_civita, Connection, CurvatureTensor, RicciData};
pub use lie::StructureConstants;
pub use linalg::{BilinearForm, Covector, Endomorphism, Matrix3, Vec3};
pub use models::{FamilyId, ModelFamily};
pub use paracontact::{Analysis, Identity, IdentityReport, LieFrameModel, StructureOperators};
pub use scalar::{Defect, Exact, Scalar, ScalarMode};
pub use tensor::{DenseTensor, Slot};
