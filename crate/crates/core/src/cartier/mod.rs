//! Ranks of the Laurent part `LI(A, B)` of the relative Cartier divisor
//! group: fiber stalks, the four computation routes, vanishing of the
//! polynomial part, Laurent stability and consistency checks.

mod combinatorics;
mod li;
mod ni;
mod stalk;

pub use combinatorics::{decomposition_terms, product_rank, tower_check, DecompositionTerms, TowerVerdict};
pub use li::{
    li_auto, li_conductor_square, li_finite_connected, li_five_term, li_hensel_local,
    li_reduce_red, li_via_reduction, rank_data_from_hints,
};
pub use ni::{laurent_stability, ni_verdict, LaurentStability, NIStatus, NIVerdict, StabilityVerdict};
pub use stalk::{generic_stalk, stalk_rank, StalkReport};

use serde::{Deserialize, Serialize};

use crate::artinian::ArtinianError;
use crate::extensions::ExtensionError;
use crate::polycore::PolyError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CartierError {
    #[error("not a supported prime: {0}")]
    NotPrime(String),
    #[error("A is not an Artinian local ring: {0}")]
    NotArtinianLocal(String),
    #[error("missing hints: {0}")]
    MissingHints(String),
    #[error("not zero-dimensional: {0}")]
    NotZeroDimensional(String),
    #[error("rank data violates an invariant: {0}")]
    InvariantViolation(String),
    #[error("radical unavailable: {0}")]
    RadicalUnavailable(String),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Artinian(#[from] ArtinianError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl CartierError {
    pub fn is_resource_limit(&self) -> bool {
        match self {
            CartierError::Extension(e) => e.is_resource_limit(),
            CartierError::Artinian(ArtinianError::Poly(p)) | CartierError::Poly(p) => {
                p.is_resource_limit()
            }
            _ => false,
        }
    }

    /// Errors that only mean "this route does not apply".
    pub(crate) fn is_inapplicable(&self) -> bool {
        matches!(
            self,
            CartierError::NotArtinianLocal(_)
                | CartierError::MissingHints(_)
                | CartierError::NotZeroDimensional(_)
                | CartierError::NotPrime(_)
                | CartierError::Extension(ExtensionError::MissingHints(_))
                | CartierError::Extension(ExtensionError::Degenerate(_))
                | CartierError::Artinian(ArtinianError::NotZeroDimensional { .. })
                | CartierError::Artinian(ArtinianError::NotFiniteOverSubring(_))
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Rank {
    Known(u64),
    Unknown(String),
}

impl Rank {
    pub fn known(&self) -> Option<u64> {
        match self {
            Rank::Known(r) => Some(*r),
            Rank::Unknown(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LIMethod {
    HenselLocalFormula,
    FiniteConnected,
    ConductorSquare,
    FiveTermSequence,
    ReductionToReduced,
}

impl LIMethod {
    pub fn name(self) -> &'static str {
        match self {
            LIMethod::HenselLocalFormula => "hensel",
            LIMethod::FiniteConnected => "connected",
            LIMethod::ConductorSquare => "conductor",
            LIMethod::FiveTermSequence => "fiveterm",
            LIMethod::ReductionToReduced => "reduced",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    None,
    HenselLocal {
        b_components: usize,
    },
    FiniteConnected {
        stalks: Vec<StalkReport>,
        exhaustive: bool,
    },
    ConductorSquare {
        conductor: Vec<String>,
        a_components: usize,
        b_components: usize,
    },
    FiveTerm {
        data: RankData,
    },
    Reduction {
        inner: Box<LIResult>,
    },
    Product {
        ranks: Vec<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LIResult {
    pub rank: Rank,
    pub method: Option<LIMethod>,
    /// False when the rank is only certified over the supplied primes.
    pub certified: bool,
    pub certificate: Certificate,
    pub hints_consumed: Vec<String>,
    pub notes: Vec<String>,
}

impl LIResult {
    pub(crate) fn known(method: LIMethod, rank: u64, certificate: Certificate) -> Self {
        LIResult {
            rank: Rank::Known(rank),
            method: Some(method),
            certified: true,
            certificate,
            hints_consumed: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn unknown(method: Option<LIMethod>, reason: String, certificate: Certificate) -> Self {
        LIResult {
            rank: Rank::Unknown(reason),
            method,
            certified: false,
            certificate,
            hints_consumed: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// The rank when it is fully certified.
    pub fn certified_rank(&self) -> Option<u64> {
        if self.certified {
            self.rank.known()
        } else {
            None
        }
    }
}

/// Inputs of the five-term sequence `1 -> LU(A) -> LU(B) -> LI -> LPic(A) -> LPic(B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankData {
    pub c_a: u64,
    pub c_b: u64,
    pub lpic_a: u64,
    pub lpic_b: u64,
    pub lpic_kernel: u64,
}

impl RankData {
    pub fn validate(&self) -> Result<(), CartierError> {
        if self.c_a > self.c_b {
            return Err(CartierError::InvariantViolation(format!(
                "c_A = {} exceeds c_B = {}",
                self.c_a, self.c_b
            )));
        }
        if self.lpic_kernel > self.lpic_a {
            return Err(CartierError::InvariantViolation(format!(
                "kernel rank {} exceeds LPic(A) rank {}",
                self.lpic_kernel, self.lpic_a
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::extensions::{ExtensionPresentation, Hints};
    use crate::polycore::parse_polynomial;

    pub use crate::extensions::fixtures::*;

    pub fn with_conductor_hints(mut e: ExtensionPresentation, b: &str, p: &str, q: &str) -> ExtensionPresentation {
        let gens = vec![b_poly(&e, "1"), b_poly(&e, b)];
        let fr = vec![
            (a_poly(&e, "1"), a_poly(&e, "1")),
            (parse_polynomial(p, e.a_ring()).unwrap(), parse_polynomial(q, e.a_ring()).unwrap()),
        ];
        e.hints = Hints {
            finite: Some(true),
            birational: Some(true),
            module_generators: Some(gens),
            fractions: Some(fr),
            ..e.hints.clone()
        };
        e
    }

    pub fn finite(mut e: ExtensionPresentation) -> ExtensionPresentation {
        e.hints.finite = Some(true);
        e
    }

    pub fn node_h() -> ExtensionPresentation {
        with_conductor_hints(node(), "t", "y", "x")
    }

    pub fn cusp_h() -> ExtensionPresentation {
        with_conductor_hints(cusp(), "t", "y", "x")
    }
}
