use serde::{Deserialize, Serialize};

use super::{is_anodal_witness, is_seminormal_witness, ExtensionError, ExtensionPresentation};
use super::{Hints, WitnessCheck};
use crate::polycore::{factor, fresh_name, Elem, Monomial, Polynomial, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Seminormal,
    Anodal,
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    /// `A' ⊂ B` with the witnesses adjoined to A.
    pub extension: ExtensionPresentation,
    /// Adjoined witnesses, as elements of B, in the order found.
    pub witnesses: Vec<Polynomial>,
    /// True unless `A' = B`: the absence of further witnesses is only known
    /// up to the degree bound.
    pub exhausted: bool,
    pub bound: u32,
}

/// Monomials in `n` variables of total degree `1..=bound`, by degree and
/// then lexicographically (largest first).
fn graded_lex(n: usize, bound: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exps(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for d in 1..=bound {
        let mut cur = vec![0; n];
        rec(n, 0, d, &mut cur, &mut out);
    }
    out
}

/// `r2 = lambda * r1` for a scalar lambda, if possible.
fn ratio(r1: &Polynomial, r2: &Polynomial) -> Option<Elem> {
    let field = r1.field();
    if r2.is_zero() {
        return Some(field.zero());
    }
    let (m0, c0) = r1.terms().first()?;
    let lambda = field.div(&r2.coeff(m0), c0)?;
    (r1.scale(&lambda) == *r2).then_some(lambda)
}

fn check(
    ext: &ExtensionPresentation,
    kind: WitnessKind,
    b: &Polynomial,
) -> Result<bool, ExtensionError> {
    let w = match kind {
        WitnessKind::Seminormal => is_seminormal_witness(ext, b)?,
        WitnessKind::Anodal => is_anodal_witness(ext, b)?,
    };
    Ok(w == WitnessCheck::Witness)
}

/// Candidates `alpha + beta*b` whose witness conditions reduce to scalar
/// equations because `b^2` and `b^3` are multiples of `b` modulo A.
fn affine_candidates(
    ext: &ExtensionPresentation,
    kind: WitnessKind,
    b: &Polynomial,
) -> Result<Vec<Polynomial>, ExtensionError> {
    let field = b.field().clone();
    if field.characteristic() == 2 {
        return Ok(Vec::new());
    }
    let r1 = ext.residue(b)?;
    let b2 = b.mul(b);
    let Some(lambda) = ratio(&r1, &ext.residue(&b2)?) else {
        return Ok(Vec::new());
    };
    let Some(mu) = ratio(&r1, &ext.residue(&b2.mul(b))?) else {
        return Ok(Vec::new());
    };
    let ring = b.ring();
    let half = field.inv(&field.from_int(2)).unwrap();
    let shift = |alpha: &Elem, beta: &Elem| {
        Polynomial::constant(ring, alpha.clone()).add(&b.scale(beta))
    };
    match kind {
        WitnessKind::Seminormal => {
            // b - lambda/2 works exactly when mu = 3 lambda^2 / 4
            let lhs = field.mul(&field.from_int(4), &mu);
            let rhs = field.mul(&field.from_int(3), &field.mul(&lambda, &lambda));
            if lhs == rhs {
                let alpha = field.neg(&field.mul(&lambda, &half));
                Ok(vec![shift(&alpha, &field.one())])
            } else {
                Ok(Vec::new())
            }
        }
        WitnessKind::Anodal => {
            // alpha = (1 - beta*lambda)/2 and
            // 3 alpha^2 - 2 alpha + beta (3 alpha - 1) lambda + beta^2 mu = 0
            let f = &field;
            let alpha = UniPoly::from_coeffs(vec![half.clone(), f.neg(&f.mul(&lambda, &half))]);
            let beta = UniPoly::var(f);
            let c = |x: i64| UniPoly::constant(f.from_int(x));
            let eq = c(3)
                .mul(&alpha.mul(&alpha, f), f)
                .sub(&c(2).mul(&alpha, f), f)
                .add(
                    &beta
                        .mul(&c(3).mul(&alpha, f).sub(&c(1), f), f)
                        .scale(&lambda, f),
                    f,
                )
                .add(&beta.mul(&beta, f).scale(&mu, f), f);
            let mut out = Vec::new();
            if eq.is_zero() {
                out.push(shift(&alpha.eval(&f.one(), f), &f.one()));
                return Ok(out);
            }
            let Ok(factors) = factor(&eq, f) else {
                return Ok(out);
            };
            for (g, _) in factors {
                if g.degree() == Some(1) {
                    let root = f.neg(&g.coeffs()[0]);
                    if !root.is_zero() {
                        out.push(shift(&alpha.eval(&root, f), &root));
                    }
                }
            }
            Ok(out)
        }
    }
}

/// First witness of the given kind among the bounded candidates.
pub fn find_witness(
    ext: &ExtensionPresentation,
    kind: WitnessKind,
    bound: u32,
) -> Result<Option<Polynomial>, ExtensionError> {
    let b_ring = ext.b_ring();
    let mut seen: Vec<Polynomial> = Vec::new();
    for m in graded_lex(b_ring.nvars(), bound) {
        let mono = Polynomial::term(b_ring, m, b_ring.field().one());
        let b = ext.b.ideal.normal_form(&mono)?;
        if b.is_zero() || seen.contains(&b) {
            continue;
        }
        seen.push(b.clone());
        if ext.member(&b)? {
            continue;
        }
        if check(ext, kind, &b)? {
            return Ok(Some(b));
        }
        for cand in affine_candidates(ext, kind, &b)? {
            let cand = ext.b.ideal.normal_form(&cand)?;
            if check(ext, kind, &cand)? {
                return Ok(Some(cand));
            }
        }
    }
    Ok(None)
}

fn adjoin(
    ext: &ExtensionPresentation,
    w: &Polynomial,
    k: usize,
) -> Result<ExtensionPresentation, ExtensionError> {
    let a_ring = ext.a_ring();
    let mut names: Vec<String> = a_ring.vars().to_vec();
    names.push(fresh_name(a_ring, &format!("w{}", k)));
    let new_ring = a_ring.derive(&names, a_ring.order())?;
    let mut images = ext.images.clone();
    images.push(w.clone());
    let keep: Vec<usize> = (0..a_ring.nvars()).collect();
    let hints = Hints {
        finite: ext.hints.finite,
        birational: ext.hints.birational,
        module_generators: ext.hints.module_generators.clone(),
        fractions: ext.hints.fractions.as_ref().map(|fs| {
            fs.iter()
                .map(|(p, q)| (p.rename_into(&new_ring, &keep), q.rename_into(&new_ring, &keep)))
                .collect()
        }),
        ..Hints::default()
    };
    ExtensionPresentation::from_images(&new_ring, ext.b.clone(), images, hints)
}

/// Adjoins witnesses of total degree at most `bound` until none is left.
pub fn closure_search(
    ext: &ExtensionPresentation,
    kind: WitnessKind,
    bound: u32,
) -> Result<ClosureResult, ExtensionError> {
    assert!(bound >= 1, "degree bound must be at least 1");
    let mut current = ext.clone();
    let mut witnesses = Vec::new();
    while let Some(w) = find_witness(&current, kind, bound)? {
        current = adjoin(&current, &w, witnesses.len() + 1)?;
        witnesses.push(w);
    }
    let exhausted = !current.is_identity()?;
    Ok(ClosureResult {
        extension: current,
        witnesses,
        exhausted,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn candidate_order() {
        let ms = graded_lex(2, 2);
        let shown: Vec<Vec<u32>> = ms.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(shown, vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn cusp_closure_is_everything() {
        let c = cusp();
        let r = closure_search(&c, WitnessKind::Seminormal, 3).unwrap();
        assert_eq!(r.witnesses, vec![b_poly(&c, "t")]);
        assert!(!r.exhausted);
        assert!(r.extension.is_identity().unwrap());
    }

    #[test]
    fn node_is_seminormal_up_to_bound() {
        let n = node();
        let r = closure_search(&n, WitnessKind::Seminormal, 4).unwrap();
        assert!(r.witnesses.is_empty());
        assert!(r.exhausted);
    }

    #[test]
    fn node_anodal_witness_is_affine() {
        let n = node();
        let w = find_witness(&n, WitnessKind::Anodal, 2).unwrap().unwrap();
        assert_eq!(is_anodal_witness(&n, &w).unwrap(), WitnessCheck::Witness);
        let r = closure_search(&n, WitnessKind::Anodal, 2).unwrap();
        assert_eq!(r.witnesses.len(), 1);
        assert!(!r.exhausted);
    }

    #[test]
    fn identity_has_no_witness() {
        let e = ext(&["t"], &[], &["t"], &[], &["t"]);
        let r = closure_search(&e, WitnessKind::Seminormal, 3).unwrap();
        assert!(r.witnesses.is_empty());
        assert!(!r.exhausted);
    }
}
