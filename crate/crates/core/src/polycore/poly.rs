//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::factor::FactorError;
use super::field::{Elem, Field, FieldError};
use super::monomial::{Monomial, MonomialOrder};
use super::parse::ParseError;
use super::unipoly::UniPoly;

pub const DEFAULT_PAIR_BUDGET: usize = 100_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("Groebner basis computation exceeded the pair budget of {budget} S-pairs")]
    ResourceLimit { budget: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

impl PolyError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            PolyError::ResourceLimit { .. } | PolyError::Factor(FactorError::ResourceLimit(_))
        )
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A polynomial ring `field[vars]` with a term order. The pair budget is a
/// resource setting and does not take part in equality.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    pair_budget: usize,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.order == other.order
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new<S: AsRef<str>>(
        field: Field,
        vars: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<Self>, PolyError> {
        Self::with_budget(field, vars, order, DEFAULT_PAIR_BUDGET)
    }

    pub fn with_budget<S: AsRef<str>>(
        field: Field,
        vars: &[S],
        order: MonomialOrder,
        pair_budget: usize,
    ) -> Result<Arc<Self>, PolyError> {
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !valid_identifier(v) {
                return Err(PolyError::InvalidVariable(v.to_string()));
            }
            if names.iter().any(|n| n == v) {
                return Err(PolyError::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Arc::new(PolyRing {
            field,
            vars: names,
            order,
            pair_budget,
        }))
    }

    /// Same field and budget, new variables and order.
    pub fn derive<S: AsRef<str>>(
        &self,
        vars: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<Self>, PolyError> {
        Self::with_budget(self.field.clone(), vars, order, self.pair_budget)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }

    pub fn with_field(&self, field: Field) -> Arc<Self> {
        Arc::new(PolyRing {
            field,
            ..self.clone()
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn pair_budget(&self) -> usize {
        self.pair_budget
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

/// Terms are kept sorted by the ring's order, largest first, with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Elem)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Elem) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_int(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, ring.field.from_int(n))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i, 1), ring.field.one())
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Self, PolyError> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Elem) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Elem)>) -> Self {
        let field = &ring.field;
        let mut acc: HashMap<Monomial, Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Elem)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms must already be sorted descending and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Elem)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Elem)> {
        self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.ring.field.is_one(&self.terms[0].1)
    }

    /// The constant coefficient value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Elem> {
        if self.terms.is_empty() {
            Some(self.ring.field.zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exps()[var]).max()
    }

    /// Which variables occur.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (u, &e) in used.iter_mut().zip(m.exps()) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn involves_only(&self, allowed: &[bool]) -> bool {
        self.terms.iter().all(|(m, _)| {
            m.exps()
                .iter()
                .zip(allowed)
                .all(|(&e, &ok)| e == 0 || ok)
        })
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "polynomial ring mismatch: {} vs {}",
            self.ring,
            other.ring
        );
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.check_ring(other);
        let field = &self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other {
                        field.neg(&b[j].1)
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other {
                field.neg(&t.1)
            } else {
                t.1.clone()
            };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Elem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    /// Multiplication by a single term keeps the order, so no sorting.
    pub fn mul_term(&self, m: &Monomial, c: &Elem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let field = &self.ring.field;
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let p = field.mul(a, b);
                let k = m.mul(n);
                match acc.get_mut(&k) {
                    Some(v) => *v = field.add(v, &p),
                    None => {
                        acc.insert(k, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Elem)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => {
                let inv = self.ring.field.inv(c).expect("nonzero field element");
                self.scale(&inv)
            }
        }
    }

    /// Same terms viewed in a ring that differs only in its order.
    pub fn reorder(&self, ring: &Arc<PolyRing>) -> Self {
        assert_eq!(ring.nvars(), self.ring.nvars());
        if Arc::ptr_eq(ring, &self.ring) {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Moves variable `i` of this ring to variable `map[i]` of `target`.
    /// Both rings must share the field.
    pub fn rename_into(&self, target: &Arc<PolyRing>, map: &[usize]) -> Self {
        debug_assert_eq!(map.len(), self.ring.nvars());
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exps().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::from_exps(&e), c.clone())
            })
            .collect();
        Self::from_terms(target, terms)
    }

    /// Moves the polynomial into `target` by matching variable names.
    pub fn rename_by_name(&self, target: &Arc<PolyRing>) -> Result<Self, PolyError> {
        let map = self
            .ring
            .vars
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .ok_or_else(|| PolyError::UnknownVariable(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.rename_into(target, &map))
    }

    /// Replaces variable `i` by `images[i]` (all in one target ring).
    /// Coefficients are mapped with `coeff_map`.
    pub fn substitute_with<F: Fn(&Elem) -> Elem>(
        &self,
        target: &Arc<PolyRing>,
        images: &[Polynomial],
        coeff_map: F,
    ) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        let tf = target.field.clone();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, coeff_map(c));
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&powers[i][1]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            for (n, d) in t.terms {
                match acc.get_mut(&n) {
                    Some(v) => *v = tf.add(v, &d),
                    None => {
                        acc.insert(n, d);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Elem)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = target.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }

    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Polynomial {
        self.substitute_with(target, images, |c| c.clone())
    }

    /// The univariate polynomial in variable `var`, if no other variable
    /// occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs: Vec<Elem> = Vec::new();
        let zero = self.ring.field.zero();
        for (m, c) in &self.terms {
            if m.exps()
                .iter()
                .enumerate()
                .any(|(i, &e)| i != var && e != 0)
            {
                return None;
            }
            let d = m.exps()[var] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, zero.clone());
            }
            coeffs[d] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    pub fn from_univariate(ring: &Arc<PolyRing>, var: usize, f: &UniPoly) -> Self {
        let n = ring.nvars();
        let terms = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (Monomial::var(n, var, d as u32), c.clone()))
            .collect();
        Self::from_terms(ring, terms)
    }

    /// Evaluates a univariate polynomial at this polynomial.
    pub fn compose_univariate(f: &UniPoly, x: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&x.ring);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(x).add(&Polynomial::constant(&x.ring, c.clone()));
        }
        acc
    }
}

fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = field.is_negative_literal(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(m, &self.ring.vars);
            if mono.is_empty() {
                write!(f, "{}", field.format(&abs))?;
            } else if field.is_one(&abs) {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", field.format(&abs), mono)?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> std::ops::$tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                Polynomial::$inner(self, rhs)
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                Polynomial::$inner(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(Field::rationals(), vars, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn identifiers_are_validated() {
        let q = Field::rationals();
        assert!(PolyRing::new(q.clone(), &["x", "y_1", "Z9"], MonomialOrder::Lex).is_ok());
        assert_eq!(
            PolyRing::new(q.clone(), &["1x"], MonomialOrder::Lex).unwrap_err(),
            PolyError::InvalidVariable("1x".into())
        );
        assert_eq!(
            PolyRing::new(q, &["x", "x"], MonomialOrder::Lex).unwrap_err(),
            PolyError::DuplicateVariable("x".into())
        );
    }

    #[test]
    fn arithmetic_cancels() {
        let r = ring(&["x", "y"]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = &x + &y;
        let e = &(&s * &s) - &(&(&x * &x) + &(&Polynomial::from_int(&r, 2) * &(&x * &y)));
        assert_eq!(e, &y * &y);
        assert!((&s - &s).is_zero());
        assert_eq!(s.pow(3).len(), 4);
    }

    #[test]
    fn display_signs() {
        let r = ring(&["x", "y"]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = &(&y * &y) - &(&x.pow(3) + &(&x * &x));
        assert_eq!(p.to_string(), "-x^3 - x^2 + y^2");
        let half = r
            .field()
            .from_ratio(&1.into(), &2.into())
            .unwrap();
        assert_eq!(x.scale(&half).to_string(), "1/2*x");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn substitution() {
        let a = ring(&["x", "y"]);
        let b = ring(&["t"]);
        let t = Polynomial::var(&b, 0);
        let one = Polynomial::one(&b);
        let images = vec![&(&t * &t) - &one, &t.pow(3) - &t];
        let x = Polynomial::var(&a, 0);
        let y = Polynomial::var(&a, 1);
        let rel = &(&y * &y) - &(&x.pow(3) + &(&x * &x));
        assert!(rel.substitute(&b, &images).is_zero());
    }
}
