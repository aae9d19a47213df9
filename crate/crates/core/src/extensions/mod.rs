//! Ring extensions `A ⊂ B` given by presentations and generator images:
//! subalgebra membership, seminormal and anodal witnesses, bounded closures,
//! conductors and nilradical comparison.

mod closure;
mod conductor;
mod membership;

pub use closure::{closure_search, find_witness, ClosureResult, WitnessKind};
pub use conductor::{conductor, nil_comparison, reduce_mod_conductor, Conductor, NilComparison};
pub(crate) use conductor::hypersurface_reduced;
pub use membership::{is_anodal_witness, is_seminormal_witness, SubalgebraMembership, WitnessCheck};

use std::sync::Arc;

use crate::artinian::ArtinianError;
use crate::polycore::{fresh_name, Ideal, MonomialOrder, PolyError, PolyRing, Polynomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("A is over {a} but B is over {b}")]
    FieldMismatch { a: String, b: String },
    #[error("expected {expected} images (one per variable of A), got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("map is not well defined: relation {relation} of A does not vanish in B")]
    NotWellDefined { relation: String },
    #[error("map is not injective: {element} is in the kernel but not in the ideal of A")]
    NotInjective { element: String },
    #[error("missing hints: {0}")]
    MissingHints(String),
    #[error("certificate check failed: {0}")]
    CertificateFailure(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Artinian(#[from] ArtinianError),
}

impl ExtensionError {
    pub fn is_resource_limit(&self) -> bool {
        match self {
            ExtensionError::Poly(p) => p.is_resource_limit(),
            ExtensionError::Artinian(ArtinianError::Poly(p)) => p.is_resource_limit(),
            _ => false,
        }
    }
}

/// `field[vars] / ideal`.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub ideal: Ideal,
}

impl RingPresentation {
    pub fn new(ideal: Ideal) -> Self {
        RingPresentation { ideal }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }
}

/// Optional facts about an extension that the toolkit cannot derive.
#[derive(Clone, Debug, Default)]
pub struct Hints {
    pub finite: Option<bool>,
    pub birational: Option<bool>,
    /// Elements of B generating it as an A-module.
    pub module_generators: Option<Vec<Polynomial>>,
    /// `(numerator, denominator)` in A for each module generator.
    pub fractions: Option<Vec<(Polynomial, Polynomial)>>,
    pub lpic_a_rank: Option<u64>,
    pub lpic_b_rank: Option<u64>,
    pub lpic_kernel_rank: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Injectivity {
    Verified,
    /// Elimination ran out of budget and the caller asked to assume it.
    Assumed,
}

/// The ring `k[Bvars, Avars]` with `I_B + (a_i - image_i)` and a block
/// order eliminating the B variables.
#[derive(Clone, Debug)]
pub(crate) struct TagData {
    pub ring: Arc<PolyRing>,
    pub ideal: Ideal,
    pub nb: usize,
}

impl TagData {
    fn new(
        a_ring: &Arc<PolyRing>,
        b: &RingPresentation,
        images: &[Polynomial],
    ) -> Result<Self, ExtensionError> {
        let b_ring = b.ring();
        let nb = b_ring.nvars();
        let mut names: Vec<String> = b_ring.vars().to_vec();
        for v in a_ring.vars() {
            let probe = PolyRing::new(b_ring.field().clone(), &names, MonomialOrder::Lex)?;
            let name = if probe.var_index(v).is_none() {
                v.clone()
            } else {
                fresh_name(&probe, &format!("{}_a", v))
            };
            names.push(name);
        }
        let ring = b_ring.derive(&names, MonomialOrder::Block { prefix: nb })?;
        let into: Vec<usize> = (0..nb).collect();
        let mut gens: Vec<Polynomial> = b
            .ideal
            .generators()
            .iter()
            .map(|g| g.rename_into(&ring, &into))
            .collect();
        for (i, img) in images.iter().enumerate() {
            let tag = Polynomial::var(&ring, nb + i);
            gens.push(tag.sub(&img.rename_into(&ring, &into)));
        }
        let ideal = Ideal::new(&ring, gens);
        Ok(TagData { ring, ideal, nb })
    }

    pub fn lift_b(&self, f: &Polynomial) -> Polynomial {
        let into: Vec<usize> = (0..self.nb).collect();
        f.rename_into(&self.ring, &into)
    }

    /// Generators of `ker(k[A] -> B)` in A's ring.
    fn kernel(&self, a_ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>, PolyError> {
        let gb = self.ideal.groebner()?;
        let na = a_ring.nvars();
        let back: Vec<usize> = (0..self.nb).map(|_| 0).chain(0..na).collect();
        Ok(gb
            .iter()
            .filter(|p| p.support()[..self.nb].iter().all(|u| !u))
            .map(|p| p.rename_into(a_ring, &back))
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionPresentation {
    pub a: RingPresentation,
    pub b: RingPresentation,
    /// Image in B's ring of each variable of A.
    pub images: Vec<Polynomial>,
    pub hints: Hints,
    pub injectivity: Injectivity,
    pub(crate) tag: TagData,
}

impl ExtensionPresentation {
    /// Checks that the map is well defined and injective.
    pub fn new(
        a: RingPresentation,
        b: RingPresentation,
        images: Vec<Polynomial>,
        hints: Hints,
        assume_injective: bool,
    ) -> Result<Self, ExtensionError> {
        if a.ring().field() != b.ring().field() {
            return Err(ExtensionError::FieldMismatch {
                a: a.ring().field().to_string(),
                b: b.ring().field().to_string(),
            });
        }
        if images.len() != a.ring().nvars() {
            return Err(ExtensionError::ImageCount {
                expected: a.ring().nvars(),
                got: images.len(),
            });
        }
        for rel in a.ideal.generators() {
            let img = rel.substitute(b.ring(), &images);
            if !b.ideal.contains(&img)? {
                return Err(ExtensionError::NotWellDefined {
                    relation: rel.to_string(),
                });
            }
        }
        let tag = TagData::new(a.ring(), &b, &images)?;
        let injectivity = match tag.kernel(a.ring()) {
            Ok(kernel) => {
                for k in kernel {
                    if !a.ideal.contains(&k)? {
                        return Err(ExtensionError::NotInjective {
                            element: k.to_string(),
                        });
                    }
                }
                Injectivity::Verified
            }
            Err(e) if e.is_resource_limit() && assume_injective => Injectivity::Assumed,
            Err(e) => return Err(e.into()),
        };
        Ok(ExtensionPresentation {
            a,
            b,
            images,
            hints,
            injectivity,
            tag,
        })
    }

    /// Builds `A' = k[vars]/ker` for the given images, so the map is
    /// injective by construction.
    pub fn from_images(
        a_ring: &Arc<PolyRing>,
        b: RingPresentation,
        images: Vec<Polynomial>,
        hints: Hints,
    ) -> Result<Self, ExtensionError> {
        let tag = TagData::new(a_ring, &b, &images)?;
        let kernel = tag.kernel(a_ring)?;
        let a = RingPresentation::new(Ideal::new(a_ring, kernel));
        Ok(ExtensionPresentation {
            a,
            b,
            images,
            hints,
            injectivity: Injectivity::Verified,
            tag,
        })
    }

    pub fn a_ring(&self) -> &Arc<PolyRing> {
        self.a.ring()
    }

    pub fn b_ring(&self) -> &Arc<PolyRing> {
        self.b.ring()
    }

    /// Image in B of an element of A's ring.
    pub fn map_to_b(&self, f: &Polynomial) -> Polynomial {
        f.substitute(self.b_ring(), &self.images)
    }

    /// True when every variable of B lies in A, i.e. `A = B`.
    pub fn is_identity(&self) -> Result<bool, ExtensionError> {
        for i in 0..self.b_ring().nvars() {
            let v = Polynomial::var(self.b_ring(), i);
            if !self.contains(&v)?.member {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::polycore::{parse_polynomial, Field};

    pub fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(Field::rationals(), vars, MonomialOrder::Grevlex).unwrap()
    }

    pub fn ext(
        avars: &[&str],
        arels: &[&str],
        bvars: &[&str],
        brels: &[&str],
        images: &[&str],
    ) -> ExtensionPresentation {
        let ar = ring(avars);
        let br = ring(bvars);
        let a = RingPresentation::new(Ideal::parse(&ar, arels).unwrap());
        let b = RingPresentation::new(Ideal::parse(&br, brels).unwrap());
        let imgs = images.iter().map(|s| parse_polynomial(s, &br).unwrap()).collect();
        ExtensionPresentation::new(a, b, imgs, Hints::default(), false).unwrap()
    }

    pub fn node() -> ExtensionPresentation {
        ext(&["x", "y"], &["y^2 - x^3 - x^2"], &["t"], &[], &["t^2 - 1", "t^3 - t"])
    }

    pub fn cusp() -> ExtensionPresentation {
        ext(&["x", "y"], &["y^2 - x^3"], &["t"], &[], &["t^2", "t^3"])
    }

    pub fn b_poly(e: &ExtensionPresentation, s: &str) -> Polynomial {
        parse_polynomial(s, e.b_ring()).unwrap()
    }

    pub fn a_poly(e: &ExtensionPresentation, s: &str) -> Polynomial {
        parse_polynomial(s, e.a_ring()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::polycore::parse_polynomial;

    #[test]
    fn construction_checks() {
        let _ = node();
        let ar = ring(&["x"]);
        let br = ring(&["t"]);
        let a = RingPresentation::new(Ideal::parse(&ar, &["x^2"]).unwrap());
        let b = RingPresentation::new(Ideal::zero(&br));
        let err = ExtensionPresentation::new(
            a,
            b,
            vec![parse_polynomial("t", &br).unwrap()],
            Hints::default(),
            false,
        )
        .unwrap_err();
        assert!(matches!(err, ExtensionError::NotWellDefined { .. }));

        let q = ring(&[]);
        let a = RingPresentation::new(Ideal::zero(&ar));
        let b = RingPresentation::new(Ideal::zero(&q));
        let err = ExtensionPresentation::new(
            a,
            b,
            vec![Polynomial::zero(&q)],
            Hints::default(),
            false,
        )
        .unwrap_err();
        assert_eq!(
            err,
            ExtensionError::NotInjective {
                element: "x".into()
            }
        );
    }

    #[test]
    fn shared_variable_names() {
        let e = ext(&["x"], &[], &["x", "y"], &["y^2 - x^2"], &["x"]);
        assert!(e.contains(&b_poly(&e, "x^3")).unwrap().member);
        assert!(!e.contains(&b_poly(&e, "y")).unwrap().member);
        assert!(e.contains(&b_poly(&e, "y^2 + x")).unwrap().member);
    }
}
