use serde::{Deserialize, Serialize};

use super::{ExtensionError, ExtensionPresentation, Hints, RingPresentation};
use crate::artinian::{quotient_algebra, ArtinianError};
use crate::polycore::groebner::divrem;
use crate::polycore::{Ideal, Monomial, PolyError, Polynomial};

#[derive(Clone, Debug)]
pub struct Conductor {
    /// The conductor as an ideal of A's polynomial ring (it contains the
    /// relations of A).
    pub ideal: Ideal,
    /// Generators modulo the relations of A.
    pub generators: Vec<Polynomial>,
    pub is_unit: bool,
}

/// `c = ∩_j ((I_A + (q_j)) : p_j)` from the fraction hints `b_j = p_j/q_j`,
/// followed by the certificate `c * b_j ⊆ A`.
pub fn conductor(ext: &ExtensionPresentation) -> Result<Conductor, ExtensionError> {
    let a_ring = ext.a_ring().clone();
    let (gens, fracs) = match (&ext.hints.module_generators, &ext.hints.fractions) {
        (Some(g), Some(f)) => (g, f),
        _ => {
            if ext.is_identity()? {
                return Ok(Conductor {
                    ideal: Ideal::unit(&a_ring),
                    generators: vec![Polynomial::one(&a_ring)],
                    is_unit: true,
                });
            }
            return Err(ExtensionError::MissingHints(
                "the conductor needs module_generators and fractions".into(),
            ));
        }
    };
    if gens.len() != fracs.len() {
        return Err(ExtensionError::MissingHints(format!(
            "{} module generators but {} fractions",
            gens.len(),
            fracs.len()
        )));
    }
    let ib = &ext.b.ideal;
    for (bj, (p, q)) in gens.iter().zip(fracs) {
        let pb = ext.map_to_b(p);
        let qb = ext.map_to_b(q);
        if ib.contains(&qb)? {
            return Err(ExtensionError::CertificateFailure(format!(
                "denominator {} vanishes in B",
                q
            )));
        }
        if !ib.contains(&pb.sub(&qb.mul(bj)))? {
            return Err(ExtensionError::CertificateFailure(format!(
                "{} is not ({})/({}) in B",
                bj, p, q
            )));
        }
    }
    let ia = &ext.a.ideal;
    let mut acc: Option<Ideal> = None;
    for (p, q) in fracs {
        let c = ia.add_generators(std::slice::from_ref(q)).colon_poly(p)?;
        acc = Some(match acc {
            None => c,
            Some(prev) => prev.intersect(&c)?,
        });
    }
    let ideal = acc.unwrap_or_else(|| Ideal::unit(&a_ring)).reduced()?;
    let is_unit = ideal.is_unit()?;
    let mut generators = Vec::new();
    for g in ideal.groebner()? {
        let r = ia.normal_form(g)?;
        if !r.is_zero() && !generators.contains(&r) {
            generators.push(r);
        }
    }
    for g in &generators {
        let gb = ext.map_to_b(g);
        for bj in gens {
            if !ext.contains(&gb.mul(bj))?.member {
                return Err(ExtensionError::CertificateFailure(format!(
                    "({}) * ({}) is not in A",
                    g, bj
                )));
            }
        }
    }
    Ok(Conductor {
        ideal,
        generators,
        is_unit,
    })
}

/// `A/c ⊂ B/cB`, with both construction checks redone.
pub fn reduce_mod_conductor(
    ext: &ExtensionPresentation,
) -> Result<(ExtensionPresentation, Conductor), ExtensionError> {
    let c = conductor(ext)?;
    if c.is_unit {
        return Err(ExtensionError::Degenerate(
            "the conductor is the unit ideal, so both quotients are zero".into(),
        ));
    }
    let a = RingPresentation::new(ext.a.ideal.add_generators(&c.generators));
    let pushed: Vec<Polynomial> = c.generators.iter().map(|g| ext.map_to_b(g)).collect();
    let b = RingPresentation::new(ext.b.ideal.add_generators(&pushed));
    let hints = Hints {
        finite: ext.hints.finite,
        ..Hints::default()
    };
    let reduced = ExtensionPresentation::new(a, b, ext.images.clone(), hints, false)?;
    Ok((reduced, c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NilComparison {
    Equal,
    /// A nilpotent of B outside A.
    Differ { witness: String },
    Unknown { reason: String },
}

/// Greatest common divisor of two polynomials through `(f) ∩ (g) = (lcm)`.
fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.is_zero() {
        return Ok(g.monic());
    }
    if g.is_zero() {
        return Ok(f.monic());
    }
    let r = f.ring();
    let meet = Ideal::new(r, vec![f.clone()]).intersect(&Ideal::new(r, vec![g.clone()]))?;
    let lcm = meet.groebner()?[0].clone();
    let (q, rem) = divrem(&f.mul(g), &lcm);
    debug_assert!(rem.is_zero());
    Ok(q.monic())
}

fn partial(f: &Polynomial, i: usize) -> Polynomial {
    let field = f.field();
    let terms = f
        .terms()
        .iter()
        .filter(|(m, _)| m.exps()[i] > 0)
        .map(|(m, c)| {
            let mut e = m.exps().to_vec();
            let k = e[i];
            e[i] -= 1;
            (Monomial::from_exps(&e), field.mul(c, &field.from_int(k as i64)))
        })
        .collect();
    Polynomial::from_terms(f.ring(), terms)
}

/// Whether `k[x]/(f)` is reduced (characteristic zero only).
pub(crate) fn hypersurface_reduced(f: &Polynomial) -> Result<Option<bool>, PolyError> {
    if f.field().characteristic() != 0 {
        return Ok(None);
    }
    let mut g = f.clone();
    for i in 0..f.ring().nvars() {
        g = poly_gcd(&g, &partial(f, i))?;
        if g.is_constant() {
            return Ok(Some(true));
        }
    }
    Ok(Some(g.is_constant()))
}

/// Compares `nil(A)` with `nil(B)`; since `nil(A) ⊆ nil(B)` always, they are
/// equal exactly when every nilpotent of B lies in A.
pub fn nil_comparison(ext: &ExtensionPresentation) -> Result<NilComparison, ExtensionError> {
    let ib = &ext.b.ideal;
    if ib.is_zero_ideal() {
        return Ok(NilComparison::Equal);
    }
    if ib.missing_pure_power()?.is_none() {
        let alg = match quotient_algebra(ib) {
            Ok(a) => a,
            Err(ArtinianError::ZeroRing) => return Ok(NilComparison::Equal),
            Err(e) => return Err(e.into()),
        };
        let nil = match alg.nilradical() {
            Ok(n) => n,
            Err(ArtinianError::Unsupported(r)) => return Ok(NilComparison::Unknown { reason: r }),
            Err(e) => return Err(e.into()),
        };
        for v in nil {
            let p = alg.to_poly(&v);
            if !ext.contains(&p)?.member {
                return Ok(NilComparison::Differ {
                    witness: p.to_string(),
                });
            }
        }
        return Ok(NilComparison::Equal);
    }
    let gb = ib.groebner()?;
    if gb.len() == 1 {
        match hypersurface_reduced(&gb[0])? {
            Some(true) => return Ok(NilComparison::Equal),
            Some(false) => {
                return Ok(NilComparison::Unknown {
                    reason: "B is a non-reduced hypersurface; its nilradical is not computed".into(),
                })
            }
            None => {}
        }
    }
    Ok(NilComparison::Unknown {
        reason: "B is neither zero-dimensional nor a reduced hypersurface".into(),
    })
}
