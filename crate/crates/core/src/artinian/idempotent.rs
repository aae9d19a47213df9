use super::algebra::{probes, Element, FiniteAlgebra};
use super::ArtinianError;
use crate::polycore::{factor, UniPoly};

/// Complete set of orthogonal primitive idempotents.
#[derive(Clone, Debug)]
pub struct IdempotentDecomposition {
    pub idempotents: Vec<Element>,
}

impl IdempotentDecomposition {
    pub fn count(&self) -> usize {
        self.idempotents.len()
    }
}

enum Probe {
    Split(Element, Element),
    Connected,
    Exhausted,
}

/// Lifts an idempotent modulo nilpotents to an exact one.
fn lift(alg: &FiniteAlgebra, mut e: Element) -> Result<Element, ArtinianError> {
    let f = alg.field();
    let three = f.from_int(3);
    let two = f.from_int(2);
    for _ in 0..=alg.dim() {
        let e2 = alg.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = alg.mul(&e2, &e);
        e = alg.sub(&alg.scale(&e2, &three), &alg.scale(&e3, &two));
    }
    if alg.is_idempotent(&e) {
        Ok(e)
    } else {
        Err(ArtinianError::LiftFailed)
    }
}

/// Tries to split the block with unit `e`.
fn split_block(
    alg: &FiniteAlgebra,
    e: &Element,
    reduced_dim: Option<usize>,
) -> Result<Probe, ArtinianError> {
    let field = alg.field();
    let dim = alg.block_dim(e);
    if dim == 1 {
        return Ok(Probe::Connected);
    }
    for x in probes(alg, e) {
        let m = alg.minimal_polynomial_with_unit(&x, e);
        let Some(g) = m.squarefree_part(field) else {
            continue;
        };
        let factors = match factor(&g, field) {
            Ok(fs) => fs,
            Err(_) => continue,
        };
        if factors.len() >= 2 {
            let g1 = factors[0].0.clone();
            let g2 = factors[1..]
                .iter()
                .fold(UniPoly::constant(field.one()), |acc, (h, _)| acc.mul(h, field));
            let (d, s, _) = UniPoly::xgcd(&g1, &g2, field);
            debug_assert!(d.degree() == Some(0));
            let approx = alg.eval_with_unit(&s.mul(&g1, field), &x, e);
            let eps = lift(alg, approx)?;
            let rest = alg.sub(e, &eps);
            if alg.is_zero(&eps) || alg.is_zero(&rest) {
                return Err(ArtinianError::LiftFailed);
            }
            return Ok(Probe::Split(eps, rest));
        }
        let deg = g.degree().unwrap_or(0);
        // k[x] is a field inside the block; if it fills the block modulo
        // nilpotents the block is local.
        if deg == dim || reduced_dim == Some(deg) {
            return Ok(Probe::Connected);
        }
    }
    Ok(Probe::Exhausted)
}

/// Splits the algebra into connected components. `ProbeExhausted` means a
/// block could neither be split nor certified connected.
pub fn idempotent_decomposition(
    alg: &FiniteAlgebra,
) -> Result<IdempotentDecomposition, ArtinianError> {
    let nil = alg.nilradical().ok();
    let mut pending = vec![alg.one()];
    let mut done = Vec::new();
    while let Some(e) = pending.pop() {
        let rdim = nil.as_ref().map(|n| alg.reduced_block_dim(&e, n));
        match split_block(alg, &e, rdim)? {
            Probe::Split(a, b) => {
                pending.push(b);
                pending.push(a);
            }
            Probe::Connected => done.push(e),
            Probe::Exhausted => {
                return Err(ArtinianError::ProbeExhausted {
                    found: done.len() + pending.len() + 1,
                })
            }
        }
    }
    Ok(IdempotentDecomposition { idempotents: done })
}

/// Number of connected components of the spectrum (rank of `H^0(Spec, Z)`).
pub fn component_count(alg: &FiniteAlgebra) -> Result<usize, ArtinianError> {
    Ok(idempotent_decomposition(alg)?.count())
}

/// True when the algebra has a single maximal ideal: one component and
/// every element is a unit or nilpotent.
pub fn is_local(alg: &FiniteAlgebra) -> Result<bool, ArtinianError> {
    Ok(component_count(alg)? == 1)
}
