//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy (smallest lcm degree, then pair indices).

use std::collections::BTreeSet;
use std::sync::Arc;

use super::monomial::Monomial;
use super::poly::{PolyError, PolyRing, Polynomial};

/// Finds a basis element whose leading monomial divides `m`.
fn find_reducer<'a>(m: &Monomial, basis: &'a [Polynomial]) -> Option<&'a Polynomial> {
    basis
        .iter()
        .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
}

/// Full reduction of `f` by a list of monic polynomials. When the list is a
/// reduced Groebner basis this is the unique normal form.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, super::field::Elem)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        match find_reducer(&m, basis) {
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let q = lm.quotient_of(&m).unwrap();
                let lc = g.leading_coeff().unwrap();
                let k = field.div(&c, lc).expect("nonzero leading coefficient");
                p = p.sub(&g.mul_term(&q, &k));
            }
            None => {
                rem.push((m, c));
                let rest = p.terms()[1..].to_vec();
                p = Polynomial::from_sorted_terms(&ring, rest);
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, rem)
}

/// Division by one polynomial: `f = q*g + r` with no term of `r` divisible
/// by the leading monomial of `g`.
pub fn divrem(f: &Polynomial, g: &Polynomial) -> (Polynomial, Polynomial) {
    assert!(!g.is_zero(), "division by the zero polynomial");
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let lm = g.leading_monomial().unwrap().clone();
    let lc = g.leading_coeff().unwrap().clone();
    let mut p = f.clone();
    let mut q_terms = Vec::new();
    let mut rem = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        match lm.quotient_of(&m) {
            Some(k) => {
                let a = field.div(&c, &lc).unwrap();
                p = p.sub(&g.mul_term(&k, &a));
                q_terms.push((k, a));
            }
            None => {
                rem.push((m, c));
                let rest = p.terms()[1..].to_vec();
                p = Polynomial::from_sorted_terms(&ring, rest);
            }
        }
    }
    (
        Polynomial::from_terms(&ring, q_terms),
        Polynomial::from_sorted_terms(&ring, rem),
    )
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.field();
    let (mf, mg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = mf.lcm(mg);
    let cf = field.inv(f.leading_coeff().unwrap()).unwrap();
    let cg = field.inv(g.leading_coeff().unwrap()).unwrap();
    f.mul_term(&mf.quotient_of(&l).unwrap(), &cf)
        .sub(&g.mul_term(&mg.quotient_of(&l).unwrap(), &cg))
}

struct State {
    polys: Vec<Polynomial>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    /// `(deg lcm, i, j)` with `i < j`.
    pairs: BTreeSet<(u32, usize, usize)>,
}

impl State {
    fn lcm(&self, i: usize, j: usize) -> Monomial {
        self.lms[i].lcm(&self.lms[j])
    }

    fn active_polys(&self) -> Vec<Polynomial> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Gebauer–Möller update for a new monic polynomial.
    fn insert(&mut self, h: Polynomial) {
        let k = self.polys.len();
        let lh = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.lms.push(lh.clone());
        self.active.push(false);

        let cands: Vec<usize> = (0..k).filter(|&i| self.active[i]).collect();
        let lcms: Vec<Monomial> = cands.iter().map(|&i| self.lcm(i, k)).collect();
        // Keep (h, g) unless another pair's lcm properly divides it
        // (chain criterion); coprime pairs survive this step.
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if lh.coprime(&self.lms[cands[a]]) {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if lcms[b].divides(&lcms[a]) && (lcms[b] != lcms[a] || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // Drop pairs with equal lcm to a coprime pair, then drop coprime
        // pairs themselves (product criterion).
        let mut new_pairs = Vec::new();
        for a in 0..cands.len() {
            if !keep[a] {
                continue;
            }
            let i = cands[a];
            if lh.coprime(&self.lms[i]) {
                continue;
            }
            let shadowed = (0..cands.len()).any(|b| {
                keep[b] && lh.coprime(&self.lms[cands[b]]) && lcms[b] == lcms[a]
            });
            if !shadowed {
                new_pairs.push((lcms[a].degree(), i, k));
            }
        }
        // Old pairs made redundant by h.
        let stale: Vec<(u32, usize, usize)> = self
            .pairs
            .iter()
            .copied()
            .filter(|&(_, i, j)| {
                let l = self.lcm(i, j);
                lh.divides(&l) && self.lcm(i, k) != l && self.lcm(j, k) != l
            })
            .collect();
        for p in stale {
            self.pairs.remove(&p);
        }
        self.pairs.extend(new_pairs);
        for i in 0..k {
            if self.active[i] && lh.divides(&self.lms[i]) {
                self.active[i] = false;
            }
        }
        self.active[k] = true;
    }
}

/// The reduced monic Groebner basis of the ideal generated by `gens`,
/// sorted by decreasing leading monomial.
pub fn groebner_basis(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
) -> Result<Vec<Polynomial>, PolyError> {
    let mut input: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    if input.is_empty() {
        return Ok(Vec::new());
    }
    if input.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    input.sort_by(|a, b| {
        ring.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    input.dedup();
    let mut st = State {
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
    };
    for g in input {
        let h = reduce(&g, &st.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        st.insert(h.monic());
    }
    let budget = ring.pair_budget();
    let mut processed = 0usize;
    let mut basis = st.active_polys();
    while let Some(&pair) = st.pairs.iter().next() {
        st.pairs.remove(&pair);
        processed += 1;
        if processed > budget {
            return Err(PolyError::ResourceLimit { budget });
        }
        let (_, i, j) = pair;
        let s = s_polynomial(&st.polys[i], &st.polys[j]);
        let h = reduce(&s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        st.insert(h.monic());
        basis = st.active_polys();
    }
    Ok(interreduce(basis))
}

/// Minimalizes and tail-reduces a Groebner basis.
fn interreduce(mut g: Vec<Polynomial>) -> Vec<Polynomial> {
    g.sort_by(|a, b| {
        let r = a.ring();
        r.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if minimal
            .iter()
            .any(|q| q.leading_monomial().unwrap().divides(lm))
        {
            continue;
        }
        minimal.push(p);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p.clone())
            .collect();
        out.push(reduce(&minimal[k], &others).monic());
    }
    out.sort_by(|a, b| {
        let r = a.ring();
        r.cmp_monomials(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    out
}

/// Checks the Groebner property directly: every S-polynomial reduces to 0.
pub fn is_groebner(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if !reduce(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, Field, MonomialOrder};

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(Field::rationals(), vars, order).unwrap()
    }

    fn polys(r: &Arc<PolyRing>, ss: &[&str]) -> Vec<Polynomial> {
        ss.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    #[test]
    fn already_reduced() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let g = groebner_basis(&r, &polys(&r, &["x", "y"])).unwrap();
        assert_eq!(g, polys(&r, &["x", "y"]));
        assert!(groebner_basis(&r, &[]).unwrap().is_empty());
    }

    #[test]
    fn lex_example() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let g = groebner_basis(&r, &polys(&r, &["x^2 - 1", "x*y - 1"])).unwrap();
        assert_eq!(g, polys(&r, &["x - y", "y^2 - 1"]));
        assert!(is_groebner(&g));
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let g = groebner_basis(&r, &polys(&r, &["x*y - 1", "x"])).unwrap();
        assert_eq!(g, polys(&r, &["1"]));
    }

    #[test]
    fn budget_is_enforced() {
        let r = PolyRing::with_budget(
            Field::rationals(),
            &["x", "y", "z"],
            MonomialOrder::Lex,
            1,
        )
        .unwrap();
        let gens = polys(&r, &["x^2 + y*z - 1", "y^2 - x*z", "z^3 - x - y"]);
        assert_eq!(
            groebner_basis(&r, &gens),
            Err(PolyError::ResourceLimit { budget: 1 })
        );
    }

    #[test]
    fn cyclic3() {
        let r = ring(&["a", "b", "c"], MonomialOrder::Grevlex);
        let gens = polys(&r, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]);
        let g = groebner_basis(&r, &gens).unwrap();
        assert!(is_groebner(&g));
        for f in &gens {
            assert!(reduce(f, &g).is_zero());
        }
        let lex = ring(&["a", "b", "c"], MonomialOrder::Lex);
        let g = groebner_basis(&lex, &polys(&lex, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]))
            .unwrap();
        assert_eq!(g.last().unwrap().to_string(), "c^3 - 1");
    }

    #[test]
    fn single_division() {
        let r = ring(&["t"], MonomialOrder::Grevlex);
        let f = parse_polynomial("t^3 - t", &r).unwrap();
        let g = parse_polynomial("t^2 - 1", &r).unwrap();
        let (q, rem) = divrem(&f, &g);
        assert!(rem.is_zero());
        assert_eq!(q, parse_polynomial("t", &r).unwrap());
    }
}
