//! Zero-dimensional quotient rings as finite dimensional algebras:
//! minimal polynomials, nilradicals, primitive idempotents and component
//! counts.

mod algebra;
mod components;
mod idempotent;

pub use algebra::{quotient_algebra, Element, FiniteAlgebra};
pub use components::{components_over_subring, ring_components, ComponentCount, GenericPresentation};
pub use idempotent::{component_count, idempotent_decomposition, is_local, IdempotentDecomposition};

use crate::polycore::{FieldError, PolyError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ArtinianError {
    #[error("ideal is not zero-dimensional: no pure power of `{variable}` among the leading terms")]
    NotZeroDimensional { variable: String },
    #[error("the quotient is the zero ring")]
    ZeroRing,
    #[error("no splitting element found and connectedness not certified ({found} blocks so far)")]
    ProbeExhausted { found: usize },
    #[error("not finite over the polynomial subring: {0}")]
    NotFiniteOverSubring(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("idempotent lifting did not converge")]
    LiftFailed,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<FieldError> for ArtinianError {
    fn from(e: FieldError) -> Self {
        ArtinianError::Poly(PolyError::Field(e))
    }
}
