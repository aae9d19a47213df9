use serde::{Deserialize, Serialize};

use super::CartierError;
use crate::artinian::{
    idempotent_decomposition, quotient_algebra, FiniteAlgebra, ring_components, ArtinianError, ComponentCount,
    GenericPresentation,
};
use crate::extensions::ExtensionPresentation;
use crate::polycore::{Ideal, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StalkReport {
    pub prime: String,
    pub generic: bool,
    pub residue_field: String,
    pub fiber_components: ComponentCount,
    /// Components of the fiber minus one; `None` when the count is unknown.
    pub stalk_rank: Option<u64>,
    /// Henselized-stalk semantics need a finite extension; otherwise only
    /// the fiber component count is meaningful.
    pub henselized: bool,
}

fn report(
    ext: &ExtensionPresentation,
    prime: String,
    generic: bool,
    residue_field: String,
    fiber_components: ComponentCount,
) -> StalkReport {
    let stalk_rank = match &fiber_components {
        ComponentCount::Empty => Some(0),
        ComponentCount::Count(n) => Some(n.saturating_sub(1) as u64),
        ComponentCount::Unknown(_) => None,
    };
    StalkReport {
        prime,
        generic,
        residue_field,
        fiber_components,
        stalk_rank,
        henselized: ext.hints.finite == Some(true),
    }
}

/// `k[a]/(m)` when the algebra is a field.
fn field_name(alg: &FiniteAlgebra) -> Option<String> {
    let (_, m) = alg.primitive_element()?;
    let k = alg.field();
    Some(if m.degree() == Some(1) {
        k.to_string()
    } else {
        format!("{}[a]/({})", k, m.format(k, "a"))
    })
}

/// Stalk at a maximal ideal of A (given by generators in A's ring); the
/// zero ideal is accepted when A is a field.
pub fn stalk_rank(ext: &ExtensionPresentation, prime: &Ideal) -> Result<StalkReport, CartierError> {
    if prime.ring() != ext.a_ring() {
        return Err(CartierError::NotPrime(format!(
            "{} is not an ideal of {}",
            prime,
            ext.a_ring()
        )));
    }
    let quotient = ext.a.ideal.sum(prime);
    let residue = match quotient_algebra(&quotient) {
        Ok(alg) => alg,
        Err(ArtinianError::ZeroRing) => {
            return Err(CartierError::NotPrime(format!("{} is the unit ideal of A", prime)))
        }
        Err(ArtinianError::NotZeroDimensional { .. }) => {
            return Err(CartierError::NotPrime(format!(
                "A/{} is not zero-dimensional; only maximal ideals and the generic point are supported",
                prime
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let Some(field) = field_name(&residue) else {
        return Err(CartierError::NotPrime(format!("A/{} is not a field", prime)));
    };
    let pushed: Vec<Polynomial> = prime.generators().iter().map(|g| ext.map_to_b(g)).collect();
    let fiber = ext.b.ideal.add_generators(&pushed);
    let count = ring_components(&fiber)?;
    Ok(report(ext, prime.to_string(), false, field, count))
}

/// Stalk at the generic point of a one-dimensional domain A: the fiber
/// `B ⊗ k(v)` for the first variable `v` of A with `A ⊗ k(v)` a field and A
/// free of `k[v]`-torsion, which makes `A ⊗ k(v) = Frac(A)`.
pub fn generic_stalk(ext: &ExtensionPresentation) -> Result<StalkReport, CartierError> {
    let ia = &ext.a.ideal;
    let a_ring = ext.a_ring();
    if ia.missing_pure_power()?.is_none() {
        return stalk_rank(ext, &Ideal::zero(a_ring));
    }
    let mut reason = String::from("A is not a domain finite over a one-variable polynomial ring");
    for v in 0..a_ring.nvars() {
        let gp = match GenericPresentation::new(ia, v) {
            Ok(gp) => gp,
            Err(ArtinianError::NotFiniteOverSubring(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let Some(frac) = field_name(&gp.algebra()?) else {
            reason = format!("A ⊗ k({}) is not a field, so A is not a domain", a_ring.vars()[v]);
            continue;
        };
        if !gp.torsion_free()? {
            reason = format!("A has k[{}]-torsion, so A is not a domain", a_ring.vars()[v]);
            continue;
        }
        let tag = &ext.tag;
        let count = match GenericPresentation::new(&tag.ideal, tag.nb + v) {
            Ok(fiber) => {
                let alg = fiber.algebra()?;
                match idempotent_decomposition(&alg) {
                    Ok(d) => ComponentCount::Count(d.count()),
                    Err(ArtinianError::ProbeExhausted { .. }) => ComponentCount::Unknown(
                        "generic fiber could not be decomposed".into(),
                    ),
                    Err(ArtinianError::Unsupported(r)) => ComponentCount::Unknown(r),
                    Err(e) => return Err(e.into()),
                }
            }
            Err(ArtinianError::NotFiniteOverSubring(r)) => {
                ComponentCount::Unknown(format!("generic fiber is not finite: {}", r))
            }
            Err(e) => return Err(e.into()),
        };
        return Ok(report(ext, "(0)".into(), true, frac, count));
    }
    Err(CartierError::NotPrime(format!("generic point unavailable: {}", reason)))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn prime(e: &ExtensionPresentation, gens: &[&str]) -> Ideal {
        Ideal::parse(e.a_ring(), gens).unwrap()
    }

    #[test]
    fn node_stalk() {
        let e = finite(node());
        let s = stalk_rank(&e, &prime(&e, &["x", "y"])).unwrap();
        assert_eq!(s.fiber_components, ComponentCount::Count(2));
        assert_eq!(s.stalk_rank, Some(1));
        assert!(s.henselized);
        let g = generic_stalk(&e).unwrap();
        assert_eq!(g.stalk_rank, Some(0));
    }

    #[test]
    fn crossing_lines_table() {
        let e = finite(ext(&["x"], &[], &["x", "y"], &["y^2 - x^2"], &["x"]));
        let at0 = stalk_rank(&e, &prime(&e, &["x"])).unwrap();
        assert_eq!(at0.fiber_components, ComponentCount::Count(1));
        assert_eq!(at0.stalk_rank, Some(0));
        let at1 = stalk_rank(&e, &prime(&e, &["x - 1"])).unwrap();
        assert_eq!(at1.stalk_rank, Some(1));
        let g = generic_stalk(&e).unwrap();
        assert_eq!(g.fiber_components, ComponentCount::Count(2));
        assert_eq!(g.stalk_rank, Some(1));
        assert_eq!(g.residue_field, "QQ(x)");
    }

    #[test]
    fn laurent_squaring() {
        let e = finite(ext(
            &["s", "s1"],
            &["s*s1 - 1"],
            &["x", "x1"],
            &["x*x1 - 1"],
            &["x^2", "x1^2"],
        ));
        let s = stalk_rank(&e, &prime(&e, &["s - 1"])).unwrap();
        assert_eq!(s.stalk_rank, Some(1));
        assert_eq!(generic_stalk(&e).unwrap().stalk_rank, Some(0));
    }

    #[test]
    fn non_finite_fibers() {
        let e = ext(&["x"], &[], &["x", "b", "e"], &["e^2 - e - b*x"], &["x"]);
        let at0 = stalk_rank(&e, &prime(&e, &["x"])).unwrap();
        assert_eq!(at0.fiber_components, ComponentCount::Count(2));
        assert!(!at0.henselized);
        let at1 = stalk_rank(&e, &prime(&e, &["x - 1"])).unwrap();
        assert_eq!(at1.fiber_components, ComponentCount::Count(1));
    }

    #[test]
    fn rejects_non_maximal() {
        let e = node();
        assert!(matches!(
            stalk_rank(&e, &prime(&e, &["x"])),
            Err(CartierError::NotPrime(_))
        ));
        assert!(matches!(
            stalk_rank(&e, &prime(&e, &["1"])),
            Err(CartierError::NotPrime(_))
        ));
        let two = ext(&["x"], &["x^2 - x"], &["x"], &["x^2 - x"], &["x"]);
        assert!(matches!(generic_stalk(&two), Err(CartierError::NotPrime(_))));
    }
}
