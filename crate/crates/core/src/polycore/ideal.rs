use std::fmt;
use std::sync::{Arc, OnceLock};

use super::groebner::{divrem, groebner_basis, reduce};
use super::monomial::MonomialOrder;
use super::parse::parse_polynomial;
use super::poly::{PolyError, PolyRing, Polynomial};

/// An ideal given by generators. The reduced Groebner basis in the ring's
/// order is computed on first use and cached; generators never change after
/// construction, so the cache never goes stale.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Result<Vec<Polynomial>, PolyError>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Self {
        for g in &gens {
            assert!(
                **g.ring() == **ring,
                "generator {} is not in {}",
                g,
                ring
            );
        }
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)])
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, gens: &[S]) -> Result<Self, PolyError> {
        let ps = gens
            .iter()
            .map(|s| parse_polynomial(s.as_ref(), ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(ring, ps))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner(&self) -> Result<&[Polynomial], PolyError> {
        self.gb
            .get_or_init(|| groebner_basis(&self.ring, &self.gens))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        Ok(reduce(f, self.groebner()?))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool, PolyError> {
        Ok(self.groebner()?.iter().any(|g| g.is_constant()))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, PolyError> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Ideal) -> Result<bool, PolyError> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// The same ideal in a ring that differs only in its term order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        let r = self.ring.with_order(order);
        Ideal::new(&r, self.gens.iter().map(|g| g.reorder(&r)).collect())
    }

    /// Ideal generated by the reduced basis (handy for printing).
    pub fn reduced(&self) -> Result<Ideal, PolyError> {
        let gb = self.groebner()?.to_vec();
        let out = Ideal::new(&self.ring, gb.clone());
        let _ = out.gb.set(Ok(gb));
        Ok(out)
    }

    /// A variable with no pure power among the leading monomials, i.e. a
    /// witness that the quotient is not finite dimensional. `None` means
    /// zero-dimensional (or the unit ideal).
    pub fn missing_pure_power(&self) -> Result<Option<usize>, PolyError> {
        let gb = self.groebner()?;
        if gb.iter().any(|g| g.is_constant()) {
            return Ok(None);
        }
        let mut seen = vec![false; self.ring.nvars()];
        for g in gb {
            if let Some(i) = g.leading_monomial().unwrap().pure_power_of() {
                seen[i] = true;
            }
        }
        Ok(seen.iter().position(|s| !s))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Intersection through a tag variable `u`, eliminating it from
    /// `u*I + (1-u)*J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, PolyError> {
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let mut names = vec![fresh_name(&self.ring, "u")];
        names.extend(self.ring.vars().iter().cloned());
        let big = self.ring.derive(&names, MonomialOrder::Block { prefix: 1 })?;
        let shift: Vec<usize> = (1..=n).collect();
        let u = Polynomial::var(&big, 0);
        let one_minus_u = Polynomial::one(&big).sub(&u);
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(u.mul(&f.rename_into(&big, &shift)));
        }
        for g in &other.gens {
            gens.push(one_minus_u.mul(&g.rename_into(&big, &shift)));
        }
        let gb = groebner_basis(&big, &gens)?;
        let back: Vec<usize> = std::iter::once(0).chain(0..n).collect();
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|p| p.degree_in(0) == Some(0))
            .map(|p| p.rename_into(&self.ring, &back))
            .collect();
        Ok(Ideal::new(&self.ring, kept))
    }

    /// `I : (g)`.
    pub fn colon_poly(&self, g: &Polynomial) -> Result<Ideal, PolyError> {
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let meet = self.intersect(&Ideal::new(&self.ring, vec![g.clone()]))?;
        let mut gens = Vec::new();
        for h in meet.generators() {
            let (q, r) = divrem(h, g);
            debug_assert!(r.is_zero(), "intersection element not divisible by g");
            gens.push(q);
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I : J`, the intersection of `I : (g)` over the generators of `J`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal, PolyError> {
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.gens {
            let c = self.colon_poly(g)?;
            acc = if acc.gens.len() == 1 && acc.gens[0].is_one() {
                c
            } else {
                acc.intersect(&c)?
            };
        }
        Ok(acc)
    }

    /// `I ∩ k[kept variables]`, returned in the ring of the kept variables
    /// (same field, grevlex).
    pub fn eliminate(&self, elim: &[usize]) -> Result<Ideal, PolyError> {
        let n = self.ring.nvars();
        let kept: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
        let kept_names: Vec<String> = kept.iter().map(|&i| self.ring.vars()[i].clone()).collect();
        let small = self.ring.derive(&kept_names, MonomialOrder::Grevlex)?;
        let (gb, _, _) = self.elimination_basis(elim)?;
        let k = elim.len();
        let mut back = vec![0usize; n];
        for j in 0..kept.len() {
            back[k + j] = j;
        }
        let gens = gb
            .iter()
            .filter(|p| p.support()[..k].iter().all(|u| !u))
            .map(|p| p.rename_into(&small, &back))
            .collect();
        Ok(Ideal::new(&small, gens))
    }

    /// Groebner basis in a block order with the `elim` variables first.
    /// Returns the basis, the reordered ring and the position map from this
    /// ring's variables into it.
    pub fn elimination_basis(
        &self,
        elim: &[usize],
    ) -> Result<EliminationBasis, PolyError> {
        let n = self.ring.nvars();
        let mut perm: Vec<usize> = elim.to_vec();
        perm.extend((0..n).filter(|i| !elim.contains(i)));
        let names: Vec<String> = perm.iter().map(|&i| self.ring.vars()[i].clone()).collect();
        let big = self.ring.derive(
            &names,
            MonomialOrder::Block {
                prefix: elim.len(),
            },
        )?;
        let mut pos = vec![0usize; n];
        for (j, &i) in perm.iter().enumerate() {
            pos[i] = j;
        }
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.rename_into(&big, &pos)).collect();
        let gb = groebner_basis(&big, &gens)?;
        Ok((gb, big, pos))
    }
}

/// A variable name not used by the ring.
/// Basis, reordered ring and variable positions.
pub type EliminationBasis = (Vec<Polynomial>, Arc<PolyRing>, Vec<usize>);

pub fn fresh_name(ring: &PolyRing, stem: &str) -> String {
    if ring.var_index(stem).is_none() {
        return stem.to_string();
    }
    (0..)
        .map(|k| format!("{}_{}", stem, k))
        .find(|n| ring.var_index(n).is_none())
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Field;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(Field::rationals(), vars, MonomialOrder::Grevlex).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn intersection_of_axes() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x"]).unwrap();
        let j = Ideal::parse(&r, &["y"]).unwrap();
        let k = i.intersect(&j).unwrap();
        assert!(k.same_as(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
    }

    #[test]
    fn colon_example() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x*y"]).unwrap();
        let c = i.colon(&Ideal::parse(&r, &["x"]).unwrap()).unwrap();
        assert!(c.same_as(&Ideal::parse(&r, &["y"]).unwrap()).unwrap());
    }

    #[test]
    fn elimination_example() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["y - x^2", "x - 1"]).unwrap();
        let e = i.eliminate(&[0]).unwrap();
        assert_eq!(e.ring().vars(), &["y".to_string()]);
        let s = e.ring().clone();
        assert!(e.same_as(&Ideal::parse(&s, &["y - 1"]).unwrap()).unwrap());
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x", "y"]).unwrap();
        assert_eq!(i.normal_form(&p(&r, "1")).unwrap(), p(&r, "1"));
        let t = ring(&["t"]);
        let j = Ideal::parse(&t, &["t^2 - 1"]).unwrap();
        assert!(j.normal_form(&p(&t, "t^3 - t")).unwrap().is_zero());
        assert!(j.contains(&p(&t, "t^2 - 1")).unwrap());
    }

    #[test]
    fn zero_dimensional_detection() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        assert_eq!(i.missing_pure_power().unwrap(), Some(1));
        let j = Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
        assert_eq!(j.missing_pure_power().unwrap(), None);
    }
}
