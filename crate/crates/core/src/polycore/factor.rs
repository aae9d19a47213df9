//! Univariate factorization over the supported fields.
//!
//! * prime fields: squarefree decomposition, then Cantor–Zassenhaus;
//! * QQ: squarefree decomposition, then factoring modulo one prime larger
//!   than twice the coefficient bound and recombining (no Hensel lifting);
//! * QQ(b) and F_p(b): Kronecker substitution `b -> z^D` turns the bivariate
//!   problem into a univariate one over the base field, followed by
//!   subset recombination.
//!
//! Algebraic extension fields are not supported beyond degree one.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Elem, Field, FieldSpec};
use super::modp::{next_prime, ModPoly, Zp};
use super::unipoly::{squarefree_decomposition, UniPoly};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("factorization over {0} is not supported")]
    Unsupported(String),
    #[error("factorization exceeds the supported size: {0}")]
    ResourceLimit(String),
}

/// Largest prime the big-prime method will use.
const MAX_MODULUS_BITS: u64 = 62;
/// Recombination gives up beyond this many modular factors.
const MAX_RECOMBINATION_FACTORS: usize = 24;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients. Constants factor as the empty list.
pub fn factor(f: &UniPoly, field: &Field) -> Result<Vec<(UniPoly, usize)>, FactorError> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let parts = squarefree_decomposition(f, field)
        .ok_or_else(|| FactorError::Unsupported(format!("{} (inseparable input)", field)))?;
    let mut out = Vec::new();
    for (g, m) in parts {
        for h in factor_squarefree(&g, field)? {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.cmp(&b.0))
            .then_with(|| a.1.cmp(&b.1))
    });
    Ok(out)
}

/// True when `f` (degree >= 1) is irreducible.
pub fn is_irreducible(f: &UniPoly, field: &Field) -> Result<bool, FactorError> {
    let fs = factor(f, field)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

fn factor_squarefree(f: &UniPoly, field: &Field) -> Result<Vec<UniPoly>, FactorError> {
    let f = f.monic(field);
    if f.degree() == Some(1) {
        return Ok(vec![f]);
    }
    match field.spec() {
        FieldSpec::PrimeField(p) => {
            let zp = Zp::new(*p);
            let mp = to_modpoly(&f);
            Ok(zp
                .factor_squarefree(&mp)
                .into_iter()
                .map(|g| from_modpoly(&g, field))
                .collect())
        }
        FieldSpec::Rationals => {
            let ints = to_primitive_integer(&f);
            let factors = factor_integer_squarefree(&ints)?;
            Ok(factors
                .into_iter()
                .map(|g| from_integer_poly(&g, field).monic(field))
                .collect())
        }
        FieldSpec::RationalFunctions { base, .. } => factor_over_function_field(&f, field, base),
        FieldSpec::SimpleExtension { .. } => Err(FactorError::Unsupported(field.to_string())),
    }
}

fn to_modpoly(f: &UniPoly) -> ModPoly {
    f.coeffs()
        .iter()
        .map(|c| match c {
            Elem::Modular(v) => *v,
            _ => unreachable!("prime field coefficient"),
        })
        .collect()
}

fn from_modpoly(g: &ModPoly, field: &Field) -> UniPoly {
    UniPoly::from_coeffs(g.iter().map(|&v| Elem::Modular(v)).collect::<Vec<_>>())
        .monic(field)
}

/// Clears denominators of a rational polynomial, returning the primitive
/// integer polynomial with positive leading coefficient.
pub(crate) fn to_primitive_integer(f: &UniPoly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Elem::Rational(q) => q.clone(),
            _ => unreachable!("rational coefficient"),
        })
        .collect();
    let mut den = BigInt::one();
    for q in &rats {
        den = den.lcm(q.denom());
    }
    let mut ints: Vec<BigInt> = rats
        .iter()
        .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        content = -content;
    }
    if !content.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
    }
    ints
}

fn from_integer_poly(g: &[BigInt], field: &Field) -> UniPoly {
    UniPoly::from_coeffs(
        g.iter()
            .map(|c| Elem::Rational(BigRational::from_integer(c.clone())))
            .collect::<Vec<_>>(),
    )
    .monic(field)
}

fn primitive_part(g: &[BigInt]) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in g {
        content = content.gcd(c);
    }
    if g.last().is_some_and(|c| c.is_negative()) {
        content = -content;
    }
    if content.is_zero() {
        return g.to_vec();
    }
    g.iter().map(|c| c / &content).collect()
}

/// Exact division in Z[x]; `None` if `g` does not divide `f`.
fn int_exact_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return if f.iter().all(Zero::is_zero) { Some(vec![]) } else { None };
    }
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    let lg = &g[dg];
    for i in (dg..f.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        for (j, b) in g.iter().enumerate() {
            r[i - dg + j] -= &c * b;
        }
        q[i - dg] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

fn isqrt_ceil(n: &BigUint) -> BigUint {
    let s = n.sqrt();
    if &s * &s == *n {
        s
    } else {
        s + 1u32
    }
}

/// Factors a primitive squarefree integer polynomial with positive leading
/// coefficient into primitive irreducible integer polynomials.
pub(crate) fn factor_integer_squarefree(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>, FactorError> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let lc = f[n].clone();
    let norm2: BigUint = f.iter().map(|c| c.magnitude() * c.magnitude()).sum();
    // Mignotte: every factor g of f has |coeffs| <= 2^deg(g) * ||f||_2, and the
    // recombined candidate is (lc(f)/lc(g)) * g.
    let bound = isqrt_ceil(&norm2) * (BigUint::one() << n) * lc.magnitude() * 2u32;
    if bound.bits() >= MAX_MODULUS_BITS {
        return Err(FactorError::ResourceLimit(format!(
            "coefficient bound of {} bits for a degree {} polynomial",
            bound.bits(),
            n
        )));
    }
    let mut p = next_prime(bound.to_u64().unwrap().max(3) + 1);
    let zp = loop {
        let zp = Zp::new(p);
        let lc_mod = lc.mod_floor(&BigInt::from(p));
        if !lc_mod.is_zero() {
            let mp = reduce_mod(f, p);
            if zp.is_squarefree(&mp) {
                break zp;
            }
        }
        p = next_prime(p + 1);
    };
    let mut modular = zp.factor_squarefree(&reduce_mod(f, p));
    if modular.len() <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    if modular.len() > MAX_RECOMBINATION_FACTORS {
        return Err(FactorError::ResourceLimit(format!(
            "{} modular factors to recombine",
            modular.len()
        )));
    }
    let mut current = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut hit = None;
        for subset in Combinations::new(modular.len(), size) {
            let lc_cur = current.last().unwrap().mod_floor(&BigInt::from(p));
            let mut prod: ModPoly = vec![lc_cur.to_u64().unwrap()];
            for &i in &subset {
                prod = zp.mul(&prod, &modular[i]);
            }
            let cand = primitive_part(&symmetric_lift(&prod, p));
            if let Some(q) = int_exact_div(&current, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                current = q;
                for &i in subset.iter().rev() {
                    modular.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        found.push(primitive_part(&current));
    }
    Ok(found)
}

fn reduce_mod(f: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    let mut out: ModPoly = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    Zp::trim(&mut out);
    out
}

fn symmetric_lift(g: &ModPoly, p: u64) -> Vec<BigInt> {
    g.iter()
        .map(|&c| {
            if c > p / 2 {
                BigInt::from(c) - BigInt::from(p)
            } else {
                BigInt::from(c)
            }
        })
        .collect()
}

/// k-subsets of 0..n in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Factors a monic squarefree polynomial over `base(b)`.
fn factor_over_function_field(
    f: &UniPoly,
    field: &Field,
    base: &Field,
) -> Result<Vec<UniPoly>, FactorError> {
    let n = f.degree().unwrap();
    // clear denominators: rows[i] is the coefficient of y^i as a polynomial in b
    let mut lcm_den = UniPoly::constant(base.one());
    for c in f.coeffs() {
        if let Elem::Fraction(_, d) = c {
            let g = UniPoly::gcd(&lcm_den, d, base);
            lcm_den = lcm_den.mul(&d.exact_div(&g, base), base);
        }
    }
    let rows: Vec<UniPoly> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Elem::Fraction(num, den) => num.mul(&lcm_den.exact_div(den, base), base),
            _ => unreachable!("function field coefficient"),
        })
        .collect();
    let stride = n + 1;
    let image = kronecker_image(&rows, stride, base);
    let mut pieces: Vec<UniPoly> = Vec::new();
    for (g, m) in factor(&image, base)? {
        for _ in 0..m {
            pieces.push(g.clone());
        }
    }
    if pieces.len() > MAX_RECOMBINATION_FACTORS {
        return Err(FactorError::ResourceLimit(format!(
            "{} substituted factors to recombine",
            pieces.len()
        )));
    }
    let mut remaining = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= pieces.len() && remaining.degree().unwrap_or(0) > 1 {
        let mut hit = None;
        for subset in Combinations::new(pieces.len(), size) {
            let mut prod = UniPoly::constant(base.one());
            for &i in &subset {
                prod = prod.mul(&pieces[i], base);
            }
            let cand = kronecker_preimage(&prod, stride, field);
            let dy = cand.degree().unwrap_or(0);
            if dy == 0 || dy >= remaining.degree().unwrap() {
                continue;
            }
            let (q, r) = remaining.divrem(&cand, field);
            if r.is_zero() {
                hit = Some((subset, cand.monic(field), q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                out.push(cand);
                remaining = q.monic(field);
                for &i in subset.iter().rev() {
                    pieces.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if remaining.degree().unwrap_or(0) > 0 {
        out.push(remaining);
    }
    Ok(out)
}

fn kronecker_image(rows: &[UniPoly], stride: usize, base: &Field) -> UniPoly {
    let mut deg = 0;
    for (i, r) in rows.iter().enumerate() {
        if let Some(d) = r.degree() {
            deg = deg.max(d * stride + i);
        }
    }
    let mut coeffs = vec![base.zero(); deg + 1];
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in r.coeffs().iter().enumerate() {
            coeffs[j * stride + i] = c.clone();
        }
    }
    UniPoly::from_coeffs(coeffs)
}

fn kronecker_preimage(g: &UniPoly, stride: usize, field: &Field) -> UniPoly {
    let base = field.base().expect("function field");
    let mut rows: Vec<Vec<Elem>> = vec![Vec::new(); stride];
    for (k, c) in g.coeffs().iter().enumerate() {
        let (bdeg, ydeg) = (k / stride, k % stride);
        let row = &mut rows[ydeg];
        if row.len() <= bdeg {
            row.resize(bdeg + 1, base.zero());
        }
        row[bdeg] = c.clone();
    }
    let one = UniPoly::constant(base.one());
    UniPoly::from_coeffs(
        rows.into_iter()
            .map(|r| {
                field
                    .fraction(UniPoly::from_coeffs(r), one.clone())
                    .expect("nonzero denominator")
            })
            .collect::<Vec<_>>(),
    )
}
