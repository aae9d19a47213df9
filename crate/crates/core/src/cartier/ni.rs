use serde::{Deserialize, Serialize};

use super::li::li_auto;
use super::{CartierError, LIResult, Rank};
use crate::artinian::{quotient_algebra, ArtinianError};
use crate::extensions::{find_witness, nil_comparison, ExtensionPresentation, NilComparison, WitnessKind};
use crate::polycore::Ideal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "bound", rename_all = "snake_case")]
pub enum NIStatus {
    Zero,
    NonZero,
    UnknownUpToBound(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NIVerdict {
    pub status: NIStatus,
    pub witness: Option<String>,
    pub nil_reason: Option<String>,
    pub notes: Vec<String>,
}

/// Vanishing of `NI(A, B)`, i.e. seminormality of A in B.
pub fn ni_verdict(ext: &ExtensionPresentation, bound: u32) -> Result<NIVerdict, CartierError> {
    let mut notes = Vec::new();
    match nil_comparison(ext)? {
        NilComparison::Differ { witness } => {
            return Ok(NIVerdict {
                status: NIStatus::NonZero,
                witness: None,
                nil_reason: Some(format!("the nilpotent {} of B is not in A", witness)),
                notes,
            })
        }
        NilComparison::Unknown { reason } => notes.push(format!("nilradicals: {}", reason)),
        NilComparison::Equal => {}
    }
    if let Some(w) = find_witness(ext, WitnessKind::Seminormal, bound)? {
        return Ok(NIVerdict {
            status: NIStatus::NonZero,
            witness: Some(w.to_string()),
            nil_reason: None,
            notes,
        });
    }
    if ext.is_identity()? {
        notes.push("A = B".into());
        return Ok(NIVerdict {
            status: NIStatus::Zero,
            witness: None,
            nil_reason: None,
            notes,
        });
    }
    if notes.is_empty() {
        if let Ok(alg) = quotient_algebra(&ext.a.ideal) {
            match alg.is_reduced() {
                Ok(true) => {
                    notes.push(
                        "A is a reduced Artinian ring with the same nilradical as B, hence seminormal in B"
                            .into(),
                    );
                    return Ok(NIVerdict {
                        status: NIStatus::Zero,
                        witness: None,
                        nil_reason: None,
                        notes,
                    });
                }
                Ok(false) | Err(ArtinianError::Unsupported(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    notes.push(format!("no seminormality witness of degree at most {}", bound));
    Ok(NIVerdict {
        status: NIStatus::UnknownUpToBound(bound),
        witness: None,
        nil_reason: None,
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityVerdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentStability {
    pub verdict: StabilityVerdict,
    /// The side that fails (`"li"` or `"ni"`), or the undecided one.
    pub reason: Option<String>,
    pub li: LIResult,
    pub ni: NIVerdict,
}

/// `I(A, B) = I(A[t,1/t], B[t,1/t])` holds exactly when both LI and NI
/// vanish.
pub fn laurent_stability(
    ext: &ExtensionPresentation,
    primes: &[Ideal],
    bound: u32,
) -> Result<LaurentStability, CartierError> {
    let li = li_auto(ext, primes)?;
    let ni = ni_verdict(ext, bound)?;
    let li_rank = li.certified_rank();
    let (verdict, reason) = if let Rank::Known(r) = li.rank {
        if r > 0 {
            (StabilityVerdict::No, Some(format!("li: rank {}", r)))
        } else if ni.status == NIStatus::NonZero {
            (StabilityVerdict::No, Some("ni: nonzero".into()))
        } else if li_rank == Some(0) && ni.status == NIStatus::Zero {
            (StabilityVerdict::Yes, None)
        } else if li_rank.is_none() {
            (StabilityVerdict::Unknown, Some("li: rank 0 only over supplied primes".into()))
        } else {
            (StabilityVerdict::Unknown, Some("ni: undecided up to the bound".into()))
        }
    } else if ni.status == NIStatus::NonZero {
        (StabilityVerdict::No, Some("ni: nonzero".into()))
    } else {
        (StabilityVerdict::Unknown, Some("li: rank unknown".into()))
    };
    Ok(LaurentStability {
        verdict,
        reason,
        li,
        ni,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn ni_examples() {
        let c = ni_verdict(&cusp(), 4).unwrap();
        assert_eq!(c.status, NIStatus::NonZero);
        assert_eq!(c.witness.as_deref(), Some("t"));
        let fat = ni_verdict(&ext(&[], &[], &["u"], &["u^2"], &[]), 4).unwrap();
        assert_eq!(fat.status, NIStatus::NonZero);
        assert!(fat.nil_reason.is_some());
        let n = ni_verdict(&node(), 4).unwrap();
        assert_eq!(n.status, NIStatus::UnknownUpToBound(4));
        assert!(n.witness.is_none());
        let split = ni_verdict(&ext(&[], &[], &["u"], &["u^2 - u"], &[]), 4).unwrap();
        assert_eq!(split.status, NIStatus::Zero);
    }

    #[test]
    fn stability_examples() {
        let c = laurent_stability(&cusp_h(), &[], 4).unwrap();
        assert_eq!(c.verdict, StabilityVerdict::No);
        let id = ext(&["t"], &[], &["t"], &[], &["t"]);
        assert_eq!(laurent_stability(&id, &[], 4).unwrap().verdict, StabilityVerdict::Yes);
        let n = laurent_stability(&node_h(), &[], 4).unwrap();
        assert_eq!(n.verdict, StabilityVerdict::No);
        assert_eq!(n.reason.as_deref(), Some("li: rank 1"));
    }
}
