//! Connected components of rings that are finite over a field or over a
//! one-variable polynomial ring.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::algebra::{quotient_algebra, Element, FiniteAlgebra};
use super::idempotent::idempotent_decomposition;
use super::ArtinianError;
use crate::polycore::{
    Elem, Field, Ideal, Monomial, MonomialOrder, PolyRing, Polynomial, UniPoly,
};

/// Most primitive generic idempotents for which all subset sums are tested.
const MAX_SUBSET_IDEMPOTENTS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ComponentCount {
    /// The zero ring.
    Empty,
    Count(usize),
    Unknown(String),
}

impl ComponentCount {
    pub fn known(&self) -> Option<usize> {
        match self {
            ComponentCount::Empty => Some(0),
            ComponentCount::Count(n) => Some(*n),
            ComponentCount::Unknown(_) => None,
        }
    }
}

impl fmt::Display for ComponentCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentCount::Empty => write!(f, "empty"),
            ComponentCount::Count(n) => write!(f, "{}", n),
            ComponentCount::Unknown(r) => write!(f, "unknown ({})", r),
        }
    }
}

/// `ring/ideal` with the variable `v` moved into the coefficient field
/// `k(v)`.
pub struct GenericPresentation {
    pub original: Ideal,
    pub free: usize,
    /// Positions of the remaining variables in the original ring.
    pub others: Vec<usize>,
    pub ring: Arc<PolyRing>,
    pub ideal: Ideal,
    /// Groebner basis of the original ideal in a block order with the
    /// other variables ahead of `v`, in the reordered ring.
    pub block_basis: Vec<Polynomial>,
    pub block_ring: Arc<PolyRing>,
}

/// Splits a polynomial in `[others..., v]` into coefficients in `k[v]`.
fn collect_in_v(p: &Polynomial, nothers: usize) -> BTreeMap<Vec<u32>, Vec<(u32, Elem)>> {
    let mut out: BTreeMap<Vec<u32>, Vec<(u32, Elem)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exps();
        out.entry(e[..nothers].to_vec())
            .or_default()
            .push((e[nothers], c.clone()));
    }
    out
}

fn unipoly_from(parts: &[(u32, Elem)], base: &Field) -> UniPoly {
    let deg = parts.iter().map(|p| p.0).max().unwrap_or(0) as usize;
    let mut coeffs = vec![base.zero(); deg + 1];
    for (e, c) in parts {
        coeffs[*e as usize] = base.add(&coeffs[*e as usize], c);
    }
    UniPoly::from_coeffs(coeffs)
}

impl GenericPresentation {
    /// Fails with `NotFiniteOverSubring` when the extended ideal is the unit
    /// ideal or not zero-dimensional.
    pub fn new(ideal: &Ideal, free: usize) -> Result<Self, ArtinianError> {
        let ring = ideal.ring();
        let base = ring.field().clone();
        let n = ring.nvars();
        let others: Vec<usize> = (0..n).filter(|&i| i != free).collect();
        let no = others.len();
        let vname = ring.vars()[free].clone();
        let kv = Field::rational_functions(&base, &vname)?;
        let other_names: Vec<String> = others.iter().map(|&i| ring.vars()[i].clone()).collect();
        let gen_ring = PolyRing::with_budget(
            kv.clone(),
            &other_names,
            MonomialOrder::Grevlex,
            ring.pair_budget(),
        )?;
        let mut block_names = other_names.clone();
        block_names.push(vname.clone());
        let block_ring = ring.derive(&block_names, MonomialOrder::Block { prefix: no })?;
        let mut pos = vec![0usize; n];
        for (j, &i) in others.iter().enumerate() {
            pos[i] = j;
        }
        pos[free] = no;
        let gens: Vec<Polynomial> = ideal
            .generators()
            .iter()
            .map(|g| g.rename_into(&block_ring, &pos))
            .collect();
        let block_basis = crate::polycore::groebner_basis(&block_ring, &gens)?;
        let one = UniPoly::constant(base.one());
        let mut gen_gens = Vec::new();
        for g in &block_basis {
            let parts = collect_in_v(g, no);
            let terms: Vec<(Monomial, Elem)> = parts
                .iter()
                .map(|(e, ps)| {
                    let c = kv.fraction(unipoly_from(ps, &base), one.clone()).unwrap();
                    (Monomial::from_exps(e), c)
                })
                .collect();
            gen_gens.push(Polynomial::from_terms(&gen_ring, terms));
        }
        let gen_ideal = Ideal::new(&gen_ring, gen_gens);
        let why = |msg: String| ArtinianError::NotFiniteOverSubring(msg);
        if gen_ideal.is_unit()? {
            return Err(why(format!(
                "`{}` is algebraic over the base field modulo the ideal",
                vname
            )));
        }
        if let Some(v) = gen_ideal.missing_pure_power()? {
            return Err(why(format!(
                "`{}` is not integral over k({})",
                other_names[v], vname
            )));
        }
        Ok(GenericPresentation {
            original: ideal.clone(),
            free,
            others,
            ring: gen_ring,
            ideal: gen_ideal,
            block_basis,
            block_ring,
        })
    }

    pub fn algebra(&self) -> Result<FiniteAlgebra, ArtinianError> {
        quotient_algebra(&self.ideal)
    }

    /// True when the ring has no `k[v]`-torsion, i.e. `I : h = I` for the
    /// product `h` of the leading coefficients in `k[v]` of the block basis.
    pub fn torsion_free(&self) -> Result<bool, ArtinianError> {
        let no = self.others.len();
        let base = self.original.ring().field().clone();
        let mut h = UniPoly::constant(base.one());
        for g in &self.block_basis {
            let parts = collect_in_v(g, no);
            let (_, lead) = parts.iter().next_back().unwrap();
            let lc = unipoly_from(lead, &base);
            h = h.mul(&lc, &base);
        }
        if h.degree() == Some(0) {
            return Ok(true);
        }
        let hp = Polynomial::from_univariate(self.original.ring(), self.free, &h);
        let colon = self.original.colon_poly(&hp)?;
        Ok(self.original.contains_ideal(&colon)?)
    }

    /// Whether `z` (coordinates in the generic algebra) comes from the
    /// original ring: with common denominator `D`, the numerator must lie in
    /// `I + (D)`.
    pub fn is_integral(&self, alg: &FiniteAlgebra, z: &[Elem]) -> Result<bool, ArtinianError> {
        let kv = alg.field();
        let base = self.original.ring().field().clone();
        let mut den = UniPoly::constant(base.one());
        for c in z {
            if let Elem::Fraction(_, d) = c {
                let g = UniPoly::gcd(&den, d, &base);
                den = den.mul(d, &base).exact_div(&g, &base);
            }
        }
        if den.degree() == Some(0) {
            return Ok(true);
        }
        let oring = self.original.ring();
        let n = oring.nvars();
        let den_elem = kv.fraction(den.clone(), UniPoly::constant(base.one())).unwrap();
        let mut terms = Vec::new();
        for (m, c) in alg.basis().iter().zip(z) {
            if c.is_zero() {
                continue;
            }
            let Elem::Fraction(num, d) = kv.mul(c, &den_elem) else {
                unreachable!("function field element")
            };
            debug_assert!(d.degree() == Some(0));
            for (k, a) in num.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut e = vec![0u32; n];
                for (j, &i) in self.others.iter().enumerate() {
                    e[i] = m.exps()[j];
                }
                e[self.free] = k as u32;
                terms.push((Monomial::from_exps(&e), a.clone()));
            }
        }
        let p = Polynomial::from_terms(oring, terms);
        let dp = Polynomial::from_univariate(oring, self.free, &den);
        Ok(self.original.add_generators(&[dp]).contains(&p)?)
    }
}

/// Components of `ring/ideal` when it becomes zero-dimensional after
/// inverting the polynomials in the single free variable.
pub fn components_over_subring(
    ideal: &Ideal,
    free_variables: &[usize],
) -> Result<ComponentCount, ArtinianError> {
    if ideal.is_unit()? {
        return Ok(ComponentCount::Empty);
    }
    match free_variables {
        [] => {
            let alg = quotient_algebra(ideal)?;
            match idempotent_decomposition(&alg) {
                Ok(d) => Ok(ComponentCount::Count(d.count())),
                Err(ArtinianError::ProbeExhausted { .. }) => Ok(ComponentCount::Unknown(
                    "no splitting element found and connectedness not certified".into(),
                )),
                Err(e) => Err(e),
            }
        }
        [v] => {
            let gp = GenericPresentation::new(ideal, *v)?;
            count_with_integrality(&gp)
        }
        _ => Err(ArtinianError::NotFiniteOverSubring(
            "only one free variable is supported".into(),
        )),
    }
}

fn count_with_integrality(gp: &GenericPresentation) -> Result<ComponentCount, ArtinianError> {
    if !gp.torsion_free()? {
        return Ok(ComponentCount::Unknown(format!(
            "the ring has torsion over k[{}]",
            gp.original.ring().vars()[gp.free]
        )));
    }
    let alg = gp.algebra()?;
    let dec = match idempotent_decomposition(&alg) {
        Ok(d) => d,
        Err(ArtinianError::ProbeExhausted { .. }) => {
            return Ok(ComponentCount::Unknown(
                "generic algebra could not be decomposed".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    let es = &dec.idempotents;
    let n = es.len();
    let mut all_integral = true;
    for e in es {
        if !gp.is_integral(&alg, e)? {
            all_integral = false;
            break;
        }
    }
    if all_integral {
        return Ok(ComponentCount::Count(n));
    }
    if n > MAX_SUBSET_IDEMPOTENTS {
        return Ok(ComponentCount::Unknown(format!(
            "{} generic idempotents is too many to test all subset sums",
            n
        )));
    }
    // atom(i) = intersection of all integral subsets containing i
    let full: u32 = (1u32 << n) - 1;
    let mut atoms = vec![full; n];
    for mask in 1..full {
        let mut z: Element = alg.zero();
        for (i, e) in es.iter().enumerate() {
            if mask & (1 << i) != 0 {
                z = alg.add(&z, e);
            }
        }
        if gp.is_integral(&alg, &z)? {
            for (i, a) in atoms.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    *a &= mask;
                }
            }
        }
    }
    let mut distinct: Vec<u32> = atoms;
    distinct.sort();
    distinct.dedup();
    Ok(ComponentCount::Count(distinct.len()))
}

/// Components of an arbitrary presented ring: directly when it is
/// zero-dimensional, otherwise through the first variable over which it is
/// finite and torsion free.
pub fn ring_components(ideal: &Ideal) -> Result<ComponentCount, ArtinianError> {
    if ideal.is_unit()? {
        return Ok(ComponentCount::Empty);
    }
    if ideal.missing_pure_power()?.is_none() {
        return components_over_subring(ideal, &[]);
    }
    let n = ideal.ring().nvars();
    let mut last_reason = String::from("ring is not finite over a one-variable polynomial ring");
    for v in 0..n {
        match GenericPresentation::new(ideal, v) {
            Ok(gp) => match count_with_integrality(&gp)? {
                ComponentCount::Unknown(r) => last_reason = r,
                c => return Ok(c),
            },
            Err(ArtinianError::NotFiniteOverSubring(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(ComponentCount::Unknown(last_reason))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(vars: &[&str], rels: &[&str]) -> Ideal {
        let r = PolyRing::new(Field::rationals(), vars, MonomialOrder::Grevlex).unwrap();
        Ideal::parse(&r, rels).unwrap()
    }

    #[test]
    fn split_over_polynomial_ring() {
        let i = ideal(&["b", "e"], &["e^2 - e"]);
        assert_eq!(components_over_subring(&i, &[0]).unwrap(), ComponentCount::Count(2));
    }

    #[test]
    fn irreducible_over_function_field() {
        let i = ideal(&["b", "e"], &["e^2 - e - 3*b"]);
        assert_eq!(components_over_subring(&i, &[0]).unwrap(), ComponentCount::Count(1));
        let j = ideal(&["b"], &[]);
        assert_eq!(components_over_subring(&j, &[0]).unwrap(), ComponentCount::Count(1));
    }

    #[test]
    fn crossing_lines_are_connected() {
        // y^2 - x^2 splits generically but its idempotents are not polynomial
        let i = ideal(&["x", "y"], &["y^2 - x^2"]);
        assert_eq!(ring_components(&i).unwrap(), ComponentCount::Count(1));
        let j = ideal(&["x", "y"], &["y^2 - 1"]);
        assert_eq!(ring_components(&j).unwrap(), ComponentCount::Count(2));
    }

    #[test]
    fn empty_and_laurent() {
        let i = ideal(&["x"], &["1"]);
        assert_eq!(ring_components(&i).unwrap(), ComponentCount::Empty);
        let j = ideal(&["s", "s1"], &["s*s1 - 1"]);
        assert_eq!(ring_components(&j).unwrap(), ComponentCount::Count(1));
    }

    #[test]
    fn torsion_is_reported() {
        // a line plus an isolated point
        let i = ideal(&["x", "y"], &["x*y", "y^2 - y"]);
        assert!(matches!(
            components_over_subring(&i, &[0]).unwrap(),
            ComponentCount::Unknown(_)
        ));
    }
}
