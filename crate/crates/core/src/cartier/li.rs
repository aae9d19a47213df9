use super::stalk::{generic_stalk, stalk_rank, StalkReport};
use super::{CartierError, Certificate, LIMethod, LIResult, RankData};
use crate::artinian::{
    components_over_subring, idempotent_decomposition, quotient_algebra, ring_components,
    ArtinianError, ComponentCount, FiniteAlgebra,
};
use crate::extensions::{conductor, hypersurface_reduced, ExtensionPresentation, RingPresentation};
use crate::polycore::{Ideal, Polynomial};

fn known_count(c: ComponentCount, what: &str) -> Result<usize, Option<String>> {
    match c {
        ComponentCount::Count(n) => Ok(n),
        ComponentCount::Empty => Err(Some(format!("{} is the zero ring", what))),
        ComponentCount::Unknown(r) => Err(Some(format!("components of {} unknown: {}", what, r))),
    }
}

fn artinian_local(ext: &ExtensionPresentation) -> Result<FiniteAlgebra, CartierError> {
    let alg = match quotient_algebra(&ext.a.ideal) {
        Ok(a) => a,
        Err(ArtinianError::NotZeroDimensional { .. }) => {
            return Err(CartierError::NotArtinianLocal("A is not zero-dimensional".into()))
        }
        Err(e) => return Err(e.into()),
    };
    let count = match idempotent_decomposition(&alg) {
        Ok(d) => d.count(),
        Err(ArtinianError::ProbeExhausted { .. }) => {
            return Err(CartierError::NotArtinianLocal(
                "locality of A could not be certified".into(),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    if count != 1 {
        return Err(CartierError::NotArtinianLocal(format!(
            "A has {} components",
            count
        )));
    }
    Ok(alg)
}

/// `LI = H^0(Spec B, Z)/Z` over an Artinian local A.
pub fn li_hensel_local(ext: &ExtensionPresentation) -> Result<LIResult, CartierError> {
    artinian_local(ext)?;
    let b = match quotient_algebra(&ext.b.ideal) {
        Ok(b) => b,
        Err(ArtinianError::NotZeroDimensional { variable }) => {
            return Err(CartierError::NotZeroDimensional(format!(
                "B is not finite over its field (variable {})",
                variable
            )))
        }
        Err(e) => return Err(e.into()),
    };
    match idempotent_decomposition(&b) {
        Ok(d) => {
            let n = d.count();
            Ok(LIResult::known(
                LIMethod::HenselLocalFormula,
                n as u64 - 1,
                Certificate::HenselLocal { b_components: n },
            ))
        }
        Err(ArtinianError::ProbeExhausted { .. }) => Ok(LIResult::unknown(
            Some(LIMethod::HenselLocalFormula),
            "components of B could not be certified".into(),
            Certificate::None,
        )),
        Err(e) => Err(e.into()),
    }
}

/// Maximal ideals of a zero-dimensional A: `nil(A) + (1 - e)` for each
/// primitive idempotent `e`.
fn maximal_ideals(ext: &ExtensionPresentation, alg: &FiniteAlgebra) -> Result<Vec<Ideal>, CartierError> {
    let nil = alg.nilradical()?;
    let dec = idempotent_decomposition(alg)?;
    let one = alg.one();
    let nil_polys: Vec<Polynomial> = nil.iter().map(|v| alg.to_poly(v)).collect();
    Ok(dec
        .idempotents
        .iter()
        .map(|e| {
            let mut gens = nil_polys.clone();
            gens.push(alg.to_poly(&alg.sub(&one, e)));
            gens.retain(|g| !g.is_zero());
            Ideal::new(ext.a_ring(), gens)
        })
        .collect())
}

/// Vanishing of LI from connected fibers. Over an Artinian A the maximal
/// ideals are enumerated exhaustively; otherwise the supplied primes and
/// the generic point are checked and a rank 0 is certified over those only.
pub fn li_finite_connected(
    ext: &ExtensionPresentation,
    primes: &[Ideal],
) -> Result<LIResult, CartierError> {
    if ext.hints.finite != Some(true) {
        return Err(CartierError::MissingHints(
            "the connectedness criterion needs finite = true".into(),
        ));
    }
    let mut stalks: Vec<StalkReport> = Vec::new();
    let mut notes = Vec::new();
    let exhaustive = match quotient_algebra(&ext.a.ideal) {
        Ok(alg) => {
            for m in maximal_ideals(ext, &alg)? {
                stalks.push(stalk_rank(ext, &m)?);
            }
            true
        }
        Err(ArtinianError::NotZeroDimensional { .. }) => {
            for p in primes {
                if p.is_zero_ideal() {
                    continue;
                }
                stalks.push(stalk_rank(ext, p)?);
            }
            match generic_stalk(ext) {
                Ok(s) => stalks.push(s),
                Err(CartierError::NotPrime(r)) => notes.push(r),
                Err(e) => return Err(e),
            }
            false
        }
        Err(e) => return Err(e.into()),
    };
    let mut result = if let Some(s) = stalks.iter().find(|s| s.stalk_rank.is_none()) {
        LIResult::unknown(
            Some(LIMethod::FiniteConnected),
            format!("fiber components unknown at {}", s.prime),
            Certificate::None,
        )
    } else if let Some(s) = stalks.iter().find(|s| s.stalk_rank != Some(0)) {
        LIResult::unknown(
            Some(LIMethod::FiniteConnected),
            format!(
                "stalk rank {} at {}; the connectedness criterion gives no vanishing",
                s.stalk_rank.unwrap(),
                s.prime
            ),
            Certificate::None,
        )
    } else if stalks.is_empty() {
        LIResult::unknown(
            Some(LIMethod::FiniteConnected),
            "no primes to check".into(),
            Certificate::None,
        )
    } else {
        let mut r = LIResult::known(LIMethod::FiniteConnected, 0, Certificate::None);
        if !exhaustive {
            r.certified = false;
            notes.push("certified over supplied primes only".into());
        }
        r
    };
    result.certificate = Certificate::FiniteConnected { stalks, exhaustive };
    result.hints_consumed.push("finite".into());
    result.notes.extend(notes);
    Ok(result)
}

/// `rank = c(B/cB) - c(A/c)` after reducing modulo the conductor.
pub fn li_conductor_square(ext: &ExtensionPresentation) -> Result<LIResult, CartierError> {
    if ext.is_identity()? {
        let mut r = LIResult::known(
            LIMethod::ConductorSquare,
            0,
            Certificate::ConductorSquare {
                conductor: vec!["1".into()],
                a_components: 0,
                b_components: 0,
            },
        );
        r.notes.push("A = B: the conductor is the unit ideal".into());
        return Ok(r);
    }
    if ext.hints.finite != Some(true) || ext.hints.birational != Some(true) {
        return Err(CartierError::MissingHints(
            "the conductor route needs finite = true and birational = true".into(),
        ));
    }
    let c = conductor(ext)?;
    let gens: Vec<String> = c.generators.iter().map(|g| g.to_string()).collect();
    if c.is_unit {
        let mut r = LIResult::known(
            LIMethod::ConductorSquare,
            0,
            Certificate::ConductorSquare {
                conductor: gens,
                a_components: 0,
                b_components: 0,
            },
        );
        r.notes.push("the conductor is the unit ideal".into());
        return Ok(r);
    }
    let a_mod = ext.a.ideal.add_generators(&c.generators);
    if a_mod.missing_pure_power()?.is_some() {
        return Err(CartierError::NotZeroDimensional(
            "A/c is not Artinian; the conductor is too small".into(),
        ));
    }
    let pushed: Vec<Polynomial> = c.generators.iter().map(|g| ext.map_to_b(g)).collect();
    let b_mod = ext.b.ideal.add_generators(&pushed);
    if b_mod.missing_pure_power()?.is_some() {
        return Err(CartierError::NotZeroDimensional(
            "B/cB is not Artinian".into(),
        ));
    }
    let counts = (
        known_count(components_over_subring(&a_mod, &[])?, "A/c"),
        known_count(components_over_subring(&b_mod, &[])?, "B/cB"),
    );
    let mut r = match counts {
        (Ok(ca), Ok(cb)) => {
            if cb < ca {
                return Err(CartierError::InvariantViolation(format!(
                    "c(B/cB) = {} is below c(A/c) = {}",
                    cb, ca
                )));
            }
            LIResult::known(
                LIMethod::ConductorSquare,
                (cb - ca) as u64,
                Certificate::ConductorSquare {
                    conductor: gens,
                    a_components: ca,
                    b_components: cb,
                },
            )
        }
        (Err(e), _) | (_, Err(e)) => LIResult::unknown(
            Some(LIMethod::ConductorSquare),
            e.unwrap_or_default(),
            Certificate::None,
        ),
    };
    r.hints_consumed
        .extend(["finite", "birational", "module_generators", "fractions"].map(String::from));
    Ok(r)
}

/// `rank = (c_B - c_A) + rank ker(LPic A -> LPic B)`.
pub fn li_five_term(data: &RankData) -> Result<LIResult, CartierError> {
    data.validate()?;
    Ok(LIResult::known(
        LIMethod::FiveTermSequence,
        data.c_b - data.c_a + data.lpic_kernel,
        Certificate::FiveTerm { data: *data },
    ))
}

/// Component counts of A and B with the LPic ranks from the hints.
pub fn rank_data_from_hints(ext: &ExtensionPresentation) -> Result<RankData, CartierError> {
    let h = &ext.hints;
    let (Some(lpic_a), Some(lpic_b), Some(lpic_kernel)) =
        (h.lpic_a_rank, h.lpic_b_rank, h.lpic_kernel_rank)
    else {
        return Err(CartierError::MissingHints(
            "the five-term route needs lpic_a, lpic_b and lpic_kernel".into(),
        ));
    };
    let count = |i: &Ideal, what: &str| -> Result<u64, CartierError> {
        match ring_components(i)? {
            ComponentCount::Count(n) => Ok(n as u64),
            ComponentCount::Empty => Err(CartierError::InvariantViolation(format!(
                "{} is the zero ring",
                what
            ))),
            ComponentCount::Unknown(r) => Err(CartierError::NotZeroDimensional(format!(
                "components of {} unknown: {}",
                what, r
            ))),
        }
    };
    Ok(RankData {
        c_a: count(&ext.a.ideal, "A")?,
        c_b: count(&ext.b.ideal, "B")?,
        lpic_a,
        lpic_b,
        lpic_kernel,
    })
}

fn five_term_from_hints(ext: &ExtensionPresentation) -> Result<LIResult, CartierError> {
    let data = rank_data_from_hints(ext)?;
    let mut r = li_five_term(&data)?;
    r.hints_consumed
        .extend(["lpic_a", "lpic_b", "lpic_kernel"].map(String::from));
    Ok(r)
}

/// Tries the Artinian-local formula, the conductor square, connected
/// fibers and the five-term sequence, in that order. A rank certified only
/// over the supplied primes is kept as a fallback.
pub fn li_auto(ext: &ExtensionPresentation, primes: &[Ideal]) -> Result<LIResult, CartierError> {
    let mut attempts: Vec<String> = Vec::new();
    let mut partial: Option<LIResult> = None;
    type Route<'a> = Box<dyn Fn() -> Result<LIResult, CartierError> + 'a>;
    let routes: Vec<(LIMethod, Route)> = vec![
        (LIMethod::HenselLocalFormula, Box::new(|| li_hensel_local(ext))),
        (LIMethod::ConductorSquare, Box::new(|| li_conductor_square(ext))),
        (LIMethod::FiniteConnected, Box::new(|| li_finite_connected(ext, primes))),
        (LIMethod::FiveTermSequence, Box::new(|| five_term_from_hints(ext))),
    ];
    for (method, run) in routes {
        match run() {
            Ok(r) if r.certified_rank().is_some() => {
                let mut r = r;
                r.notes.extend(attempts);
                return Ok(r);
            }
            Ok(r) => {
                let why = match (&r.rank, r.certified) {
                    (super::Rank::Unknown(w), _) => w.clone(),
                    _ => "certified over supplied primes only".into(),
                };
                attempts.push(format!("{}: {}", method.name(), why));
                if r.rank.known().is_some() && partial.is_none() {
                    partial = Some(r);
                }
            }
            Err(e) if e.is_inapplicable() => attempts.push(format!("{}: {}", method.name(), e)),
            Err(e) => return Err(e),
        }
    }
    if let Some(mut p) = partial {
        p.notes.extend(attempts);
        return Ok(p);
    }
    let mut r = LIResult::unknown(None, "no route applies".into(), Certificate::None);
    r.notes = attempts;
    Ok(r)
}

/// Radical of a presentation ideal when it can be computed.
fn radical(ideal: &Ideal, what: &str) -> Result<Ideal, CartierError> {
    if ideal.is_zero_ideal() {
        return Ok(ideal.clone());
    }
    if ideal.missing_pure_power()?.is_none() {
        let alg = match quotient_algebra(ideal) {
            Ok(a) => a,
            Err(ArtinianError::ZeroRing) => return Ok(ideal.clone()),
            Err(e) => return Err(e.into()),
        };
        let nil = match alg.nilradical() {
            Ok(n) => n,
            Err(ArtinianError::Unsupported(r)) => return Err(CartierError::RadicalUnavailable(r)),
            Err(e) => return Err(e.into()),
        };
        let extra: Vec<Polynomial> = nil.iter().map(|v| alg.to_poly(v)).collect();
        return Ok(ideal.add_generators(&extra).reduced()?);
    }
    let gb = ideal.groebner()?;
    if gb.len() == 1 && hypersurface_reduced(&gb[0])? == Some(true) {
        return Ok(ideal.clone());
    }
    Err(CartierError::RadicalUnavailable(format!(
        "the radical of the ideal of {} is only computed for zero-dimensional or reduced hypersurface presentations",
        what
    )))
}

/// `A_red ⊂ B_red`, which has the same LI.
pub fn li_reduce_red(ext: &ExtensionPresentation) -> Result<ExtensionPresentation, CartierError> {
    let a = RingPresentation::new(radical(&ext.a.ideal, "A")?);
    let b = RingPresentation::new(radical(&ext.b.ideal, "B")?);
    Ok(ExtensionPresentation::new(
        a,
        b,
        ext.images.clone(),
        ext.hints.clone(),
        false,
    )?)
}

/// LI of the reduced extension, reported for the original one.
pub fn li_via_reduction(
    ext: &ExtensionPresentation,
    primes: &[Ideal],
) -> Result<LIResult, CartierError> {
    let red = li_reduce_red(ext)?;
    let inner = li_auto(&red, primes)?;
    Ok(LIResult {
        rank: inner.rank.clone(),
        method: Some(LIMethod::ReductionToReduced),
        certified: inner.certified,
        hints_consumed: inner.hints_consumed.clone(),
        notes: Vec::new(),
        certificate: Certificate::Reduction {
            inner: Box::new(inner),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::Rank;
    use super::*;

    #[test]
    fn hensel_examples() {
        let split = ext(&[], &[], &["u"], &["u^2 - u"], &[]);
        assert_eq!(li_hensel_local(&split).unwrap().rank, Rank::Known(1));
        let fat = ext(&[], &[], &["u"], &["u^2"], &[]);
        assert_eq!(li_hensel_local(&fat).unwrap().rank, Rank::Known(0));
        let same = ext(&[], &[], &[], &[], &[]);
        assert_eq!(li_hensel_local(&same).unwrap().rank, Rank::Known(0));
        assert!(matches!(
            li_hensel_local(&node()),
            Err(CartierError::NotArtinianLocal(_))
        ));
        let two = ext(&["e"], &["e^2 - e"], &["e"], &["e^2 - e"], &["e"]);
        assert!(matches!(
            li_hensel_local(&two),
            Err(CartierError::NotArtinianLocal(_))
        ));
    }

    #[test]
    fn connected_examples() {
        let c = finite(cusp());
        let primes: Vec<Ideal> = [vec!["x", "y"], vec!["x - 1", "y - 1"], vec![]]
            .iter()
            .map(|g| Ideal::parse(c.a_ring(), g).unwrap())
            .collect();
        let r = li_finite_connected(&c, &primes).unwrap();
        assert_eq!(r.rank, Rank::Known(0));
        assert!(!r.certified);
        let fat = finite(ext(&[], &[], &["u"], &["u^3"], &[]));
        let r = li_finite_connected(&fat, &[]).unwrap();
        assert_eq!(r.certified_rank(), Some(0));
        let n = finite(node());
        let p = Ideal::parse(n.a_ring(), &["x", "y"]).unwrap();
        let r = li_finite_connected(&n, &[p]).unwrap();
        assert!(matches!(r.rank, Rank::Unknown(_)));
    }

    #[test]
    fn conductor_examples() {
        let r = li_conductor_square(&node_h()).unwrap();
        assert_eq!(r.rank, Rank::Known(1));
        assert_eq!(
            r.certificate,
            Certificate::ConductorSquare {
                conductor: vec!["x".into(), "y".into()],
                a_components: 1,
                b_components: 2
            }
        );
        assert_eq!(li_conductor_square(&cusp_h()).unwrap().rank, Rank::Known(0));
        let id = ext(&["t"], &[], &["t"], &[], &["t"]);
        assert_eq!(li_conductor_square(&id).unwrap().rank, Rank::Known(0));
        assert!(matches!(
            li_conductor_square(&node()),
            Err(CartierError::MissingHints(_))
        ));
    }

    #[test]
    fn five_term_examples() {
        let d = |c_a, c_b, lpic_a, lpic_b, lpic_kernel| RankData {
            c_a,
            c_b,
            lpic_a,
            lpic_b,
            lpic_kernel,
        };
        assert_eq!(li_five_term(&d(1, 2, 0, 0, 0)).unwrap().rank, Rank::Known(1));
        assert_eq!(li_five_term(&d(1, 1, 1, 0, 1)).unwrap().rank, Rank::Known(1));
        assert_eq!(li_five_term(&d(1, 1, 0, 0, 0)).unwrap().rank, Rank::Known(0));
        assert!(matches!(
            li_five_term(&d(2, 1, 0, 0, 0)),
            Err(CartierError::InvariantViolation(_))
        ));
        assert!(matches!(
            li_five_term(&d(1, 1, 0, 0, 1)),
            Err(CartierError::InvariantViolation(_))
        ));
    }

    #[test]
    fn node_routes_agree() {
        let mut n = node_h();
        n.hints.lpic_a_rank = Some(1);
        n.hints.lpic_b_rank = Some(0);
        n.hints.lpic_kernel_rank = Some(1);
        let auto = li_auto(&n, &[]).unwrap();
        assert_eq!(auto.method, Some(LIMethod::ConductorSquare));
        let five = five_term_from_hints(&n).unwrap();
        assert_eq!(auto.rank, five.rank);
    }

    #[test]
    fn auto_falls_through_to_five_term() {
        let mut e = finite(ext(&["x"], &[], &["x", "y"], &["y^2 - x^2"], &["x"]));
        e.hints.lpic_a_rank = Some(0);
        e.hints.lpic_b_rank = Some(0);
        e.hints.lpic_kernel_rank = Some(0);
        let r = li_auto(&e, &[]).unwrap();
        assert_eq!(r.method, Some(LIMethod::FiveTermSequence));
        assert_eq!(r.certified_rank(), Some(0));

        let mut l = finite(ext(
            &["s", "s1"],
            &["s*s1 - 1"],
            &["x", "x1"],
            &["x*x1 - 1"],
            &["x^2", "x1^2"],
        ));
        let partial = li_auto(&l, &[]).unwrap();
        assert_eq!(partial.method, Some(LIMethod::FiniteConnected));
        assert!(!partial.certified);
        l.hints.lpic_a_rank = Some(0);
        l.hints.lpic_b_rank = Some(0);
        l.hints.lpic_kernel_rank = Some(0);
        let r = li_auto(&l, &[]).unwrap();
        assert_eq!(r.method, Some(LIMethod::FiveTermSequence));
        assert_eq!(r.certified_rank(), Some(0));
    }

    #[test]
    fn auto_without_hints_is_unknown() {
        let e = ext(&["x"], &[], &["x", "b", "e"], &["e^2 - e - b*x"], &["x"]);
        let r = li_auto(&e, &[]).unwrap();
        assert!(matches!(r.rank, Rank::Unknown(_)));
        assert_eq!(r.notes.len(), 4);
    }

    #[test]
    fn reduction() {
        let fat = ext(&[], &[], &["u"], &["u^2"], &[]);
        let red = li_reduce_red(&fat).unwrap();
        assert!(red.is_identity().unwrap());
        let r = li_via_reduction(&fat, &[]).unwrap();
        assert_eq!(r.rank, Rank::Known(0));
        assert_eq!(r.method, Some(LIMethod::ReductionToReduced));
        let e = ext(&["e"], &["e^2 - e"], &["e"], &["e^2 - e"], &["e"]);
        let same = li_reduce_red(&e).unwrap();
        assert!(same.a.ideal.same_as(&e.a.ideal).unwrap());
        assert!(same.b.ideal.same_as(&e.b.ideal).unwrap());
        let n = node();
        let same = li_reduce_red(&n).unwrap();
        assert!(same.b.ideal.same_as(&n.b.ideal).unwrap());
    }
}
