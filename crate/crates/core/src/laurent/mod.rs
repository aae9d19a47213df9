//! Units of Laurent polynomial rings `R[t, 1/t]` over finite algebras and
//! their split decomposition into a unit of R, a componentwise power of t,
//! and unipotent parts in `t` and `1/t`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::artinian::{component_count, idempotent_decomposition, ArtinianError, Element, FiniteAlgebra};
use crate::polycore::{fresh_name, parse_laurent, ParseError, PolyRing, Polynomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("not a unit of the Laurent ring")]
    NotAUnit,
    #[error("components of the base are unknown: {0}")]
    Unknown(String),
    #[error("Laurent variable `{0}` clashes with a variable of the base")]
    VariableClash(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Artinian(#[from] ArtinianError),
}

/// Element of `base[t, 1/t]`; zero coefficients are never stored.
#[derive(Clone)]
pub struct LaurentElement {
    base: Arc<FiniteAlgebra>,
    var: String,
    coeffs: BTreeMap<i64, Element>,
}

impl PartialEq for LaurentElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for LaurentElement {}

impl fmt::Debug for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentElement({})", self)
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let one = self.base.one();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&k, c)| {
                let power = match k {
                    0 => String::new(),
                    1 => self.var.clone(),
                    _ => format!("{}^{}", self.var, k),
                };
                let coef = self.base.format(c);
                if k == 0 {
                    coef
                } else if *c == one {
                    power
                } else if self.base.to_poly(c).len() == 1 && !coef.contains(' ') {
                    format!("{}*{}", coef, power)
                } else {
                    format!("({})*{}", coef, power)
                }
            })
            .collect();
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            match (i, p.strip_prefix('-')) {
                (0, _) => out.push_str(p),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        write!(f, "{}", out)
    }
}

impl LaurentElement {
    pub fn new(base: &Arc<FiniteAlgebra>, var: &str, coeffs: BTreeMap<i64, Element>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !base.is_zero(c)).collect();
        LaurentElement {
            base: base.clone(),
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn zero(base: &Arc<FiniteAlgebra>, var: &str) -> Self {
        Self::new(base, var, BTreeMap::new())
    }

    pub fn constant(base: &Arc<FiniteAlgebra>, var: &str, c: Element) -> Self {
        Self::new(base, var, BTreeMap::from([(0, c)]))
    }

    pub fn one(base: &Arc<FiniteAlgebra>, var: &str) -> Self {
        Self::constant(base, var, base.one())
    }

    /// `c * t^k`.
    pub fn term(base: &Arc<FiniteAlgebra>, var: &str, c: Element, k: i64) -> Self {
        Self::new(base, var, BTreeMap::from([(k, c)]))
    }

    /// Parses an expression in the base variables and `var`, where `var`
    /// may carry negative exponents.
    pub fn parse(base: &Arc<FiniteAlgebra>, var: &str, text: &str) -> Result<Self, LaurentError> {
        let bring = base.ring();
        if bring.var_index(var).is_some() {
            return Err(LaurentError::VariableClash(var.to_string()));
        }
        let mut names: Vec<String> = bring.vars().to_vec();
        names.push(var.to_string());
        let probe = PolyRing::new(bring.field().clone(), &names, bring.order())
            .map_err(|_| LaurentError::VariableClash(var.to_string()))?;
        names.push(fresh_name(&probe, &format!("{}inv", var)));
        let ring = bring
            .derive(&names, bring.order())
            .map_err(|_| LaurentError::VariableClash(var.to_string()))?;
        let n = bring.nvars();
        let p = parse_laurent(text, &ring, n, n + 1)?;
        let mut coeffs: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (m, c) in p.terms() {
            let e = m.exps();
            let k = e[n] as i64 - e[n + 1] as i64;
            let mono = crate::polycore::Monomial::from_exps(&e[..n]);
            let t = Polynomial::term(bring, mono, c.clone());
            let entry = coeffs.entry(k).or_insert_with(|| Polynomial::zero(bring));
            *entry = entry.add(&t);
        }
        let mut out = BTreeMap::new();
        for (k, f) in coeffs {
            out.insert(k, base.from_poly(&f)?);
        }
        Ok(Self::new(base, var, out))
    }

    pub fn base(&self) -> &Arc<FiniteAlgebra> {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coefficients(&self) -> &BTreeMap<i64, Element> {
        &self.coeffs
    }

    pub fn coefficient(&self, k: i64) -> Element {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0) == Some(&self.base.one())
    }

    fn like(&self, coeffs: BTreeMap<i64, Element>) -> Self {
        Self::new(&self.base, &self.var, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            let e = c.entry(*k).or_insert_with(|| self.base.zero());
            *e = self.base.add(e, v);
        }
        self.like(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.like(self.coeffs.iter().map(|(k, v)| (*k, self.base.neg(v))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c: BTreeMap<i64, Element> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let p = self.base.mul(a, b);
                let e = c.entry(i + j).or_insert_with(|| self.base.zero());
                *e = self.base.add(e, &p);
            }
        }
        self.like(c)
    }

    pub fn scale(&self, a: &[crate::polycore::Elem]) -> Self {
        self.like(self.coeffs.iter().map(|(k, v)| (*k, self.base.mul(v, a))).collect())
    }

    /// Part supported in degrees `> 0` (`positive`) or `< 0`.
    fn part(&self, positive: bool) -> Self {
        self.like(
            self.coeffs
                .iter()
                .filter(|(k, _)| if positive { **k > 0 } else { **k < 0 })
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        )
    }

    /// `(1 + n)^-1 = sum (-n)^k` for `n` with nilpotent coefficients.
    fn inverse_unipotent(n: &Self) -> Self {
        let one = Self::one(&n.base, &n.var);
        let minus = n.neg();
        let mut acc = one.clone();
        let mut power = one;
        loop {
            power = power.mul(&minus);
            if power.is_zero() {
                return acc;
            }
            acc = acc.add(&power);
        }
    }
}

/// `x = u0 * (sum_i e_i t^{n_i}) * p_part * q_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentUnitDecomposition {
    pub u0: Element,
    /// Primitive idempotents of the base, in the order of `exponents`.
    pub idempotents: Vec<Element>,
    pub exponents: Vec<i64>,
    pub p_part: LaurentElement,
    pub q_part: LaurentElement,
}

impl LaurentUnitDecomposition {
    pub fn monomial_part(&self, base: &Arc<FiniteAlgebra>, var: &str) -> LaurentElement {
        let mut c = BTreeMap::new();
        for (e, n) in self.idempotents.iter().zip(&self.exponents) {
            let entry = c.entry(*n).or_insert_with(|| base.zero());
            *entry = base.add(entry, e);
        }
        LaurentElement::new(base, var, c)
    }

    pub fn recompose(&self) -> LaurentElement {
        let base = self.p_part.base();
        let var = self.p_part.var();
        LaurentElement::constant(base, var, self.u0.clone())
            .mul(&self.monomial_part(base, var))
            .mul(&self.p_part)
            .mul(&self.q_part)
    }
}

fn primitive_idempotents(base: &FiniteAlgebra) -> Result<Vec<Element>, LaurentError> {
    match idempotent_decomposition(base) {
        Ok(d) => Ok(d.idempotents),
        Err(ArtinianError::ProbeExhausted { found }) => Err(LaurentError::Unknown(format!(
            "decomposition stopped after {} blocks",
            found
        ))),
        Err(e) => Err(e.into()),
    }
}

/// The unique degree on component `e` where the coefficient is not
/// nilpotent, if there is exactly one.
fn component_degree(x: &LaurentElement, e: &[crate::polycore::Elem]) -> Option<i64> {
    let base = x.base();
    let mut found = None;
    for (k, c) in x.coefficients() {
        if !base.is_nilpotent(&base.mul(c, e)) {
            if found.is_some() {
                return None;
            }
            found = Some(*k);
        }
    }
    found
}

/// Invertibility in `base[t, 1/t]`: on every component the reduced image
/// must be a single term.
pub fn is_laurent_unit(x: &LaurentElement) -> Result<bool, LaurentError> {
    let es = primitive_idempotents(x.base())?;
    Ok(es.iter().all(|e| component_degree(x, e).is_some()))
}

fn inverse_in_base(base: &FiniteAlgebra, u: &[crate::polycore::Elem]) -> Option<Element> {
    let f = base.field();
    let m = base.minimal_polynomial(u);
    let m0 = m.coeff(0, f);
    if m0.is_zero() {
        return None;
    }
    // m(u) = u g(u) + m0 = 0
    let g = crate::polycore::UniPoly::from_coeffs(m.coeffs()[1..].to_vec());
    let scale = f.neg(&f.inv(&m0)?);
    Some(base.scale(&base.eval(&g, u), &scale))
}

pub fn bass_decompose(x: &LaurentElement) -> Result<LaurentUnitDecomposition, LaurentError> {
    let base = x.base().clone();
    let var = x.var().to_string();
    let es = primitive_idempotents(&base)?;
    let mut exponents = Vec::with_capacity(es.len());
    for e in &es {
        exponents.push(component_degree(x, e).ok_or(LaurentError::NotAUnit)?);
    }
    let mut shift = BTreeMap::new();
    for (e, n) in es.iter().zip(&exponents) {
        let entry = shift.entry(-n).or_insert_with(|| base.zero());
        *entry = base.add(entry, e);
    }
    let mut w = x.mul(&LaurentElement::new(&base, &var, shift));
    let mut u0 = base.one();
    let mut p = LaurentElement::one(&base, &var);
    let mut q = LaurentElement::one(&base, &var);
    // each round pushes w - 1 one step deeper into the nilradical filtration
    while !w.is_one() {
        let c = w.coefficient(0);
        let ci = inverse_in_base(&base, &c).ok_or(LaurentError::NotAUnit)?;
        u0 = base.mul(&u0, &c);
        w = w.scale(&ci);
        for positive in [true, false] {
            let tail = w.part(positive);
            if tail.is_zero() {
                continue;
            }
            let factor = LaurentElement::one(&base, &var).add(&tail);
            w = w.mul(&LaurentElement::inverse_unipotent(&tail));
            if positive {
                p = p.mul(&factor);
            } else {
                q = q.mul(&factor);
            }
        }
    }
    Ok(LaurentUnitDecomposition {
        u0,
        idempotents: es,
        exponents,
        p_part: p,
        q_part: q,
    })
}

/// Rank of `LU(R) = H^0(Spec R, Z)`.
pub fn lu_rank(base: &FiniteAlgebra) -> Result<usize, LaurentError> {
    match component_count(base) {
        Ok(n) => Ok(n),
        Err(ArtinianError::ProbeExhausted { found }) => Err(LaurentError::Unknown(format!(
            "decomposition stopped after {} blocks",
            found
        ))),
        Err(e) => Err(e.into()),
    }
}
