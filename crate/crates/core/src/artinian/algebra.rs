use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use super::ArtinianError;
use crate::polycore::linalg::{nullspace, Echelon};
use crate::polycore::{Elem, Field, FieldSpec, Ideal, Monomial, PolyRing, Polynomial, UniPoly};

/// Coordinates with respect to [`FiniteAlgebra::basis`].
pub type Element = Vec<Elem>;

/// `k[x]/I` for a zero-dimensional ideal `I`, as a finite dimensional
/// algebra over `k` with a staircase basis and structure constants.
#[derive(Clone)]
pub struct FiniteAlgebra {
    ideal: Ideal,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Sparse products `b_i * b_j` for `i <= j`.
    table: Vec<Vec<Vec<(usize, Elem)>>>,
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteAlgebra({} / {}, dim {})",
            self.ring(),
            self.ideal,
            self.dim()
        )
    }
}

/// Builds `ring / ideal`. Fails with `NotZeroDimensional` naming a variable
/// with no pure power among the leading terms, and with `ZeroRing` for the
/// unit ideal.
pub fn quotient_algebra(ideal: &Ideal) -> Result<FiniteAlgebra, ArtinianError> {
    FiniteAlgebra::new(ideal)
}

impl FiniteAlgebra {
    pub fn new(ideal: &Ideal) -> Result<Self, ArtinianError> {
        let ring = ideal.ring().clone();
        if ideal.is_unit()? {
            return Err(ArtinianError::ZeroRing);
        }
        if let Some(v) = ideal.missing_pure_power()? {
            return Err(ArtinianError::NotZeroDimensional {
                variable: ring.vars()[v].clone(),
            });
        }
        let gb = ideal.groebner()?.to_vec();
        let lms: Vec<Monomial> = gb.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let n = ring.nvars();
        let mut seen: HashMap<Monomial, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        let one = Monomial::one(n);
        seen.insert(one.clone(), ());
        queue.push_back(one);
        let mut basis = Vec::new();
        while let Some(m) = queue.pop_front() {
            for i in 0..n {
                let next = m.mul(&Monomial::var(n, i, 1));
                if seen.contains_key(&next) || lms.iter().any(|l| l.divides(&next)) {
                    continue;
                }
                seen.insert(next.clone(), ());
                queue.push_back(next);
            }
            basis.push(m);
        }
        basis.sort_by(|a, b| ring.cmp_monomials(a, b));
        let index: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let dim = basis.len();
        let field = ring.field().clone();
        let mut table = vec![Vec::new(); dim];
        for i in 0..dim {
            for j in i..dim {
                let prod = Polynomial::term(&ring, basis[i].mul(&basis[j]), field.one());
                let nf = crate::polycore::reduce(&prod, &gb);
                let coords: Vec<(usize, Elem)> = nf
                    .terms()
                    .iter()
                    .map(|(m, c)| (index[m], c.clone()))
                    .collect();
                table[i].push(coords);
            }
        }
        Ok(FiniteAlgebra {
            ideal: ideal.clone(),
            basis,
            index,
            table,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn field(&self) -> &Field {
        self.ideal.ring().field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn zero(&self) -> Element {
        vec![self.field().zero(); self.dim()]
    }

    /// The unit; always basis element 0.
    pub fn one(&self) -> Element {
        self.basis_element(0)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = self.field().one();
        v
    }

    pub fn scalar(&self, c: &Elem) -> Element {
        let mut v = self.zero();
        v[0] = c.clone();
        v
    }

    pub fn is_zero(&self, a: &[Elem]) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// Coordinates of the class of `f` (a polynomial in the algebra's ring).
    pub fn from_poly(&self, f: &Polynomial) -> Result<Element, ArtinianError> {
        let nf = self.ideal.normal_form(f)?;
        let mut v = self.zero();
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    pub fn to_poly(&self, a: &[Elem]) -> Polynomial {
        let terms = self
            .basis
            .iter()
            .zip(a)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial::from_terms(self.ring(), terms)
    }

    pub fn format(&self, a: &[Elem]) -> String {
        self.to_poly(a).to_string()
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Element {
        let f = self.field();
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> Element {
        let f = self.field();
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[Elem]) -> Element {
        let f = self.field();
        a.iter().map(|x| f.neg(x)).collect()
    }

    pub fn scale(&self, a: &[Elem], c: &Elem) -> Element {
        let f = self.field();
        a.iter().map(|x| f.mul(x, c)).collect()
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Element {
        let f = self.field();
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = f.mul(x, y);
                let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                for (k, c) in &self.table[lo][hi - lo] {
                    out[*k] = f.add(&out[*k], &f.mul(&xy, c));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Elem], e: &BigUint) -> Element {
        let mut result = self.one();
        let mut base = a.to_vec();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.mul(&result, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn pow_u64(&self, a: &[Elem], e: u64) -> Element {
        self.pow(a, &BigUint::from(e))
    }

    /// `f(a)` where `unit` plays the role of 1 (use an idempotent to
    /// evaluate inside a block).
    pub fn eval_with_unit(&self, f: &UniPoly, a: &[Elem], unit: &[Elem]) -> Element {
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, a);
            acc = self.add(&acc, &self.scale(unit, c));
        }
        acc
    }

    pub fn eval(&self, f: &UniPoly, a: &[Elem]) -> Element {
        self.eval_with_unit(f, a, &self.one())
    }

    /// Minimal polynomial of `a` inside the algebra `unit * A`.
    pub fn minimal_polynomial_with_unit(&self, a: &[Elem], unit: &[Elem]) -> UniPoly {
        let f = self.field();
        let mut ech = Echelon::new(f, self.dim());
        let mut power = unit.to_vec();
        let mut k = 0;
        loop {
            match ech.insert(&power) {
                Ok(()) => {
                    power = self.mul(&power, a);
                    k += 1;
                }
                Err(comb) => {
                    let mut coeffs: Vec<Elem> = comb.iter().map(|c| f.neg(c)).collect();
                    coeffs.resize(k, f.zero());
                    coeffs.push(f.one());
                    return UniPoly::from_coeffs(coeffs);
                }
            }
        }
    }

    /// Monic least-degree `m` with `m(a) = 0`.
    pub fn minimal_polynomial(&self, a: &[Elem]) -> UniPoly {
        self.minimal_polynomial_with_unit(a, &self.one())
    }

    pub fn is_nilpotent(&self, a: &[Elem]) -> bool {
        self.is_zero(&self.pow_u64(a, self.dim() as u64))
    }

    pub fn is_idempotent(&self, a: &[Elem]) -> bool {
        self.mul(a, a) == a
    }

    /// Trace of multiplication by `a`.
    pub fn trace(&self, a: &[Elem]) -> Elem {
        let f = self.field();
        let mut t = f.zero();
        for j in 0..self.dim() {
            let col = self.mul(a, &self.basis_element(j));
            t = f.add(&t, &col[j]);
        }
        t
    }

    /// A basis of the nilradical. Uses the trace form in characteristic
    /// zero and the Frobenius power `x -> x^(q^m)` over finite fields.
    pub fn nilradical(&self) -> Result<Vec<Element>, ArtinianError> {
        let f = self.field();
        let n = self.dim();
        if f.characteristic() == 0 {
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    let bij = self.mul(&self.basis_element(i), &self.basis_element(j));
                    row.push(self.trace(&bij));
                }
                rows.push(row);
            }
            return Ok(nullspace(f, &rows, n));
        }
        let q = match f.finite_size() {
            Some(q) => q,
            None => {
                return Err(ArtinianError::Unsupported(format!(
                    "nilradical over the imperfect field {}",
                    f
                )))
            }
        };
        let mut e = BigUint::from(q);
        while e < BigUint::from(n as u64) {
            e *= BigUint::from(q);
        }
        // x -> x^e is k-linear; its kernel is the nilradical.
        let cols: Vec<Element> = (0..n).map(|j| self.pow(&self.basis_element(j), &e)).collect();
        let rows: Vec<Element> = (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(nullspace(f, &rows, n))
    }

    pub fn is_reduced(&self) -> Result<bool, ArtinianError> {
        Ok(self.nilradical()?.is_empty())
    }

    /// Dimension of the subspace `e * A`.
    pub fn block_dim(&self, e: &[Elem]) -> usize {
        let f = self.field();
        let mut ech = Echelon::new(f, self.dim());
        for j in 0..self.dim() {
            let v = self.mul(e, &self.basis_element(j));
            let _ = ech.insert(&v);
        }
        ech.rank()
    }

    /// Dimension of `e * A` modulo its nilpotents.
    pub fn reduced_block_dim(&self, e: &[Elem], nil: &[Element]) -> usize {
        let f = self.field();
        let mut ech = Echelon::new(f, self.dim());
        for v in nil {
            let _ = ech.insert(&self.mul(e, v));
        }
        let nil_rank = ech.rank();
        for j in 0..self.dim() {
            let _ = ech.insert(&self.mul(e, &self.basis_element(j)));
        }
        ech.rank() - nil_rank
    }

    /// When the algebra is a field, presents it as `k[z]/(m)`: returns the
    /// primitive element and its minimal polynomial.
    pub fn primitive_element(&self) -> Option<(Element, UniPoly)> {
        let n = self.dim();
        if n == 1 {
            return Some((self.one(), UniPoly::var(self.field())));
        }
        for a in probes(self, &self.one()) {
            let m = self.minimal_polynomial(&a);
            if m.degree() == Some(n) {
                if let Ok(true) = crate::polycore::is_irreducible(&m, self.field()) {
                    return Some((a, m));
                }
            }
        }
        None
    }

    /// The residue field `k[z]/(m)` of a field-valued algebra, as a
    /// [`Field`]. Degree one gives back the base field.
    pub fn as_field(&self) -> Option<Field> {
        let (_, m) = self.primitive_element()?;
        if m.degree() == Some(1) {
            return Some(self.field().clone());
        }
        match self.field().spec() {
            FieldSpec::Rationals | FieldSpec::PrimeField(_) => {
                Field::simple_extension(self.field(), m, "a").ok()
            }
            _ => None,
        }
    }
}

/// Number of seeded random probes tried after basis elements and pairs.
pub(crate) const RANDOM_PROBES: usize = 48;

/// Deterministic probe sequence inside the block `e * A`: basis elements in
/// staircase order, then pairwise sums, then seeded random combinations.
pub(crate) fn probes<'a>(
    alg: &'a FiniteAlgebra,
    e: &'a [Elem],
) -> impl Iterator<Item = Element> + 'a {
    use rand::{Rng, SeedableRng};
    let n = alg.dim();
    let singles = (0..n).map(move |i| alg.mul(e, &alg.basis_element(i)));
    let pairs = (0..n).flat_map(move |i| {
        ((i + 1)..n).map(move |j| {
            let s = alg.add(&alg.basis_element(i), &alg.basis_element(j));
            alg.mul(e, &s)
        })
    });
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc0ff_ee00 ^ n as u64);
    let f = alg.field().clone();
    let randoms = (0..RANDOM_PROBES).map(move |_| {
        let v: Element = (0..n).map(|_| f.from_int(rng.gen_range(-9i64..=9))).collect();
        alg.mul(e, &v)
    });
    singles.chain(pairs).chain(randoms).filter(|v| v.iter().any(|c| !c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{MonomialOrder, PolyRing};

    fn alg(vars: &[&str], rels: &[&str]) -> FiniteAlgebra {
        let r = PolyRing::new(Field::rationals(), vars, MonomialOrder::Grevlex).unwrap();
        quotient_algebra(&Ideal::parse(&r, rels).unwrap()).unwrap()
    }

    #[test]
    fn staircase_dimensions() {
        let a = alg(&["t"], &["t^2 - 1"]);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.format(&a.basis_element(1)), "t");
        assert_eq!(alg(&["x", "y"], &["x^2", "x*y", "y^2"]).dim(), 3);
        assert_eq!(alg(&["t"], &["t^3 - t"]).dim(), 3);
    }

    #[test]
    fn not_zero_dimensional() {
        let r = PolyRing::new(Field::rationals(), &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let err = quotient_algebra(&Ideal::parse(&r, &["x^2"]).unwrap()).unwrap_err();
        assert_eq!(
            err,
            ArtinianError::NotZeroDimensional {
                variable: "y".into()
            }
        );
    }

    #[test]
    fn minimal_polynomials() {
        let a = alg(&["t"], &["t^2 - 1"]);
        let f = a.field().clone();
        assert_eq!(a.minimal_polynomial(&a.one()).format(&f, "z"), "z - 1");
        assert_eq!(a.minimal_polynomial(&a.basis_element(1)).format(&f, "z"), "z^2 - 1");
        let b = alg(&["t"], &["t^3 - t"]);
        let x = b.add(&b.basis_element(1), &b.basis_element(2));
        let m = b.minimal_polynomial(&x);
        // t + t^2 takes the values 0, 2, 0 at t = 0, 1, -1
        assert_eq!(m.format(&f, "z"), "z^2 - 2*z");
        assert!(b.is_zero(&b.eval(&m, &x)));
    }

    #[test]
    fn nilradicals() {
        let a = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(a.nilradical().unwrap().len(), 2);
        let b = alg(&["t"], &["t^2 - 1"]);
        assert!(b.is_reduced().unwrap());
        let r = PolyRing::new(Field::prime(5).unwrap(), &["t"], MonomialOrder::Grevlex).unwrap();
        let c = quotient_algebra(&Ideal::parse(&r, &["t^5"]).unwrap()).unwrap();
        assert_eq!(c.nilradical().unwrap().len(), 4);
    }

    #[test]
    fn residue_field_presentation() {
        let a = alg(&["x", "y"], &["x^2 - 2", "y - x"]);
        let k = a.as_field().unwrap();
        assert_eq!(k.to_string(), "QQ[a]/(a^2 - 2)");
    }
}
