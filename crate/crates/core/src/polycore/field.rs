//! Coefficient fields: the rationals, prime fields, simple algebraic
//! extensions and one-variable rational function fields.
//!
//! Fields are chosen at run time (description files name them), so elements
//! are a single enum and all arithmetic goes through a [`Field`] handle.
//! Every element has exactly one representation, which makes the derived
//! `Eq`/`Ord`/`Hash` impls meaningful.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::unipoly::UniPoly;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected QQ or FP(p))")]
    UnknownField(String),
    #[error("modulus must be monic of degree >= 1")]
    BadModulus,
    #[error("modulus is reducible over the base field")]
    Reducible,
    #[error("rational function fields are only supported over QQ or a prime field")]
    NestedFunctionField,
    #[error("denominator is zero in this field")]
    ZeroDenominator,
}

/// Elements of any supported field. Zero has a unique structural form in
/// each variant, so [`Elem::is_zero`] does not need the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rational(BigRational),
    /// Residue in `[0, p)`.
    Modular(u64),
    /// Polynomial in the generator, reduced modulo the defining polynomial.
    Algebraic(UniPoly),
    /// `num / den` with `gcd = 1` and monic denominator.
    Fraction(UniPoly, UniPoly),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rational(q) => q.is_zero(),
            Elem::Modular(v) => *v == 0,
            Elem::Algebraic(p) => p.is_zero(),
            Elem::Fraction(n, _) => n.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    SimpleExtension {
        base: Field,
        modulus: UniPoly,
        generator: String,
    },
    RationalFunctions {
        base: Field,
        variable: String,
    },
}

/// Cheaply clonable handle to a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldSpec>);

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(FieldSpec::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 || !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldSpec::PrimeField(p))))
    }

    /// `base[generator] / (modulus)`. Irreducibility is checked by factoring
    /// over the base; over QQ a factoring resource failure is tolerated and
    /// the modulus is taken as asserted.
    pub fn simple_extension(
        base: &Field,
        modulus: UniPoly,
        generator: &str,
    ) -> Result<Self, FieldError> {
        match modulus.degree() {
            Some(d) if d >= 1 && base.is_one(modulus.lc()) => {}
            _ => return Err(FieldError::BadModulus),
        }
        match super::factor::factor(&modulus, base) {
            Ok(factors) => {
                if factors.len() != 1 || factors[0].1 != 1 {
                    return Err(FieldError::Reducible);
                }
            }
            Err(_) if matches!(base.spec(), FieldSpec::Rationals) => {}
            Err(_) if matches!(base.spec(), FieldSpec::PrimeField(_)) => {
                return Err(FieldError::Reducible)
            }
            Err(_) => {}
        }
        Ok(Field(Arc::new(FieldSpec::SimpleExtension {
            base: base.clone(),
            modulus,
            generator: generator.to_string(),
        })))
    }

    pub fn rational_functions(base: &Field, variable: &str) -> Result<Self, FieldError> {
        match base.spec() {
            FieldSpec::Rationals | FieldSpec::PrimeField(_) => {}
            _ => return Err(FieldError::NestedFunctionField),
        }
        Ok(Field(Arc::new(FieldSpec::RationalFunctions {
            base: base.clone(),
            variable: variable.to_string(),
        })))
    }

    /// Parses the description-file spelling: `QQ` or `FP(p)`.
    pub fn parse(text: &str) -> Result<Self, FieldError> {
        let t = text.trim();
        if t == "QQ" {
            return Ok(Self::rationals());
        }
        if let Some(inner) = t.strip_prefix("FP(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| FieldError::UnknownField(t.to_string()))?;
            return Self::prime(p);
        }
        Err(FieldError::UnknownField(t.to_string()))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match self.spec() {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
            FieldSpec::SimpleExtension { base, .. } | FieldSpec::RationalFunctions { base, .. } => {
                base.characteristic()
            }
        }
    }

    /// Number of elements for finite fields.
    pub fn finite_size(&self) -> Option<u128> {
        match self.spec() {
            FieldSpec::PrimeField(p) => Some(*p as u128),
            FieldSpec::SimpleExtension { base, modulus, .. } => {
                let q = base.finite_size()?;
                let d = modulus.degree()? as u32;
                q.checked_pow(d)
            }
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self.spec() {
            FieldSpec::Rationals => Elem::Rational(BigRational::zero()),
            FieldSpec::PrimeField(_) => Elem::Modular(0),
            FieldSpec::SimpleExtension { .. } => Elem::Algebraic(UniPoly::zero()),
            FieldSpec::RationalFunctions { base, .. } => {
                Elem::Fraction(UniPoly::zero(), UniPoly::constant(base.one()))
            }
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self.spec() {
            FieldSpec::Rationals => Elem::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Elem::Modular(r.to_u64().unwrap_or(0))
            }
            FieldSpec::SimpleExtension { base, .. } => {
                Elem::Algebraic(UniPoly::constant(base.from_bigint(n)))
            }
            FieldSpec::RationalFunctions { base, .. } => Elem::Fraction(
                UniPoly::constant(base.from_bigint(n)),
                UniPoly::constant(base.one()),
            ),
        }
    }

    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Elem, FieldError> {
        let d = self.from_bigint(den);
        let inv = self.inv(&d).ok_or(FieldError::ZeroDenominator)?;
        Ok(self.mul(&self.from_bigint(num), &inv))
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Elem, FieldError> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// Lifts an element of the base field (extensions and function fields).
    pub fn embed_base(&self, c: &Elem) -> Elem {
        match self.spec() {
            FieldSpec::SimpleExtension { .. } => Elem::Algebraic(UniPoly::constant(c.clone())),
            FieldSpec::RationalFunctions { base, .. } => {
                Elem::Fraction(UniPoly::constant(c.clone()), UniPoly::constant(base.one()))
            }
            _ => c.clone(),
        }
    }

    /// The generator of an extension or the variable of a function field.
    pub fn generator(&self) -> Option<Elem> {
        match self.spec() {
            FieldSpec::SimpleExtension { base, modulus, .. } => {
                let x = UniPoly::monomial(base.one(), 1);
                Some(Elem::Algebraic(x.rem(modulus, base)))
            }
            FieldSpec::RationalFunctions { base, .. } => Some(Elem::Fraction(
                UniPoly::monomial(base.one(), 1),
                UniPoly::constant(base.one()),
            )),
            _ => None,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match self.spec() {
            FieldSpec::SimpleExtension { base, .. } | FieldSpec::RationalFunctions { base, .. } => {
                Some(base)
            }
            _ => None,
        }
    }

    /// Builds `num/den` in a rational function field.
    pub fn fraction(&self, num: UniPoly, den: UniPoly) -> Option<Elem> {
        match self.spec() {
            FieldSpec::RationalFunctions { base, .. } => {
                if den.is_zero() {
                    return None;
                }
                Some(normalize_fraction(num, den, base))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.is_zero()
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.spec(), a, b) {
            (FieldSpec::Rationals, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x + y),
            (FieldSpec::PrimeField(p), Elem::Modular(x), Elem::Modular(y)) => {
                Elem::Modular((x + y) % p)
            }
            (FieldSpec::SimpleExtension { base, .. }, Elem::Algebraic(x), Elem::Algebraic(y)) => {
                Elem::Algebraic(x.add(y, base))
            }
            (FieldSpec::RationalFunctions { base, .. }, Elem::Fraction(n1, d1), Elem::Fraction(n2, d2)) => {
                if d1 == d2 {
                    normalize_fraction(n1.add(n2, base), d1.clone(), base)
                } else {
                    let num = n1.mul(d2, base).add(&n2.mul(d1, base), base);
                    normalize_fraction(num, d1.mul(d2, base), base)
                }
            }
            _ => panic!("field element does not belong to {}", self),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self.spec(), a) {
            (FieldSpec::Rationals, Elem::Rational(x)) => Elem::Rational(-x),
            (FieldSpec::PrimeField(p), Elem::Modular(x)) => Elem::Modular((p - x) % p),
            (FieldSpec::SimpleExtension { base, .. }, Elem::Algebraic(x)) => {
                Elem::Algebraic(x.neg(base))
            }
            (FieldSpec::RationalFunctions { base, .. }, Elem::Fraction(n, d)) => {
                Elem::Fraction(n.neg(base), d.clone())
            }
            _ => panic!("field element does not belong to {}", self),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.spec(), a, b) {
            (FieldSpec::Rationals, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x * y),
            (FieldSpec::PrimeField(p), Elem::Modular(x), Elem::Modular(y)) => {
                Elem::Modular(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::SimpleExtension { base, modulus, .. }, Elem::Algebraic(x), Elem::Algebraic(y)) => {
                Elem::Algebraic(x.mul(y, base).rem(modulus, base))
            }
            (FieldSpec::RationalFunctions { base, .. }, Elem::Fraction(n1, d1), Elem::Fraction(n2, d2)) => {
                if n1.is_zero() || n2.is_zero() {
                    return self.zero();
                }
                normalize_fraction(n1.mul(n2, base), d1.mul(d2, base), base)
            }
            _ => panic!("field element does not belong to {}", self),
        }
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        Some(match (self.spec(), a) {
            (FieldSpec::Rationals, Elem::Rational(x)) => Elem::Rational(x.recip()),
            (FieldSpec::PrimeField(p), Elem::Modular(x)) => Elem::Modular(modinv(*x, *p)),
            (FieldSpec::SimpleExtension { base, modulus, .. }, Elem::Algebraic(x)) => {
                let (g, s, _) = UniPoly::xgcd(x, modulus, base);
                debug_assert!(g.degree() == Some(0));
                Elem::Algebraic(s.rem(modulus, base))
            }
            (FieldSpec::RationalFunctions { base, .. }, Elem::Fraction(n, d)) => {
                normalize_fraction(d.clone(), n.clone(), base)
            }
            _ => panic!("field element does not belong to {}", self),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u128) -> Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Integer-valued elements (for printing and for lifting to Z).
    pub fn as_rational(&self, a: &Elem) -> Option<BigRational> {
        match a {
            Elem::Rational(q) => Some(q.clone()),
            Elem::Modular(v) => Some(BigRational::from_integer(BigInt::from(*v))),
            _ => None,
        }
    }

    /// Textual form of an element. Compound elements are parenthesised so the
    /// result can be used as a polynomial coefficient.
    pub fn format(&self, a: &Elem) -> String {
        match (self.spec(), a) {
            (_, Elem::Rational(q)) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            (_, Elem::Modular(v)) => v.to_string(),
            (FieldSpec::SimpleExtension { base, generator, .. }, Elem::Algebraic(x)) => {
                let s = x.format(base, generator);
                if x.len() <= 1 && !s.starts_with('-') {
                    s
                } else {
                    format!("({})", s)
                }
            }
            (FieldSpec::RationalFunctions { base, variable }, Elem::Fraction(n, d)) => {
                let ns = n.format(base, variable);
                if d.degree() == Some(0) {
                    if n.len() <= 1 && !ns.starts_with('-') {
                        ns
                    } else {
                        format!("({})", ns)
                    }
                } else {
                    format!("(({})/({}))", ns, d.format(base, variable))
                }
            }
            _ => format!("{:?}", a),
        }
    }

    /// True when the printed form needs no parentheses and starts with '-'.
    pub fn is_negative_literal(&self, a: &Elem) -> bool {
        match a {
            Elem::Rational(q) => q.is_negative(),
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spec() {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "FP({})", p),
            FieldSpec::SimpleExtension {
                base,
                modulus,
                generator,
            } => write!(f, "{}[{}]/({})", base, generator, modulus.format(base, generator)),
            FieldSpec::RationalFunctions { base, variable } => write!(f, "{}({})", base, variable),
        }
    }
}

fn modinv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if t < 0 {
        t += p as i128;
    }
    t as u64
}

fn normalize_fraction(num: UniPoly, den: UniPoly, base: &Field) -> Elem {
    if num.is_zero() {
        return Elem::Fraction(UniPoly::zero(), UniPoly::constant(base.one()));
    }
    let g = UniPoly::gcd(&num, &den, base);
    let (mut n, mut d) = if g.degree() == Some(0) {
        (num, den)
    } else {
        (num.exact_div(&g, base), den.exact_div(&g, base))
    };
    let lc_inv = base.inv(d.lc()).expect("nonzero denominator");
    if !base.is_one(&lc_inv) {
        n = n.scale(&lc_inv, base);
        d = d.scale(&lc_inv, base);
    }
    Elem::Fraction(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_validation() {
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(2).is_ok());
        assert_eq!(Field::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(Field::prime(1 << 31), Err(FieldError::NotPrime(1 << 31)));
        assert!(Field::prime(2147483647).is_ok());
    }

    #[test]
    fn parse_names() {
        assert_eq!(Field::parse("QQ").unwrap(), Field::rationals());
        assert_eq!(Field::parse("FP(5)").unwrap(), Field::prime(5).unwrap());
        assert!(Field::parse("GF(5)").is_err());
        assert!(Field::parse("FP(6)").is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_int(3);
        let inv = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &inv)));
        assert_eq!(f.from_int(-1), Elem::Modular(6));
        assert_eq!(f.from_ratio(&1.into(), &7.into()), Err(FieldError::ZeroDenominator));
    }

    #[test]
    fn gaussian_rationals() {
        let q = Field::rationals();
        // x^2 + 1
        let m = UniPoly::from_coeffs(vec![q.one(), q.zero(), q.one()]);
        let k = Field::simple_extension(&q, m, "i").unwrap();
        let i = k.generator().unwrap();
        assert_eq!(k.mul(&i, &i), k.from_int(-1));
        let one_plus_i = k.add(&k.one(), &i);
        let inv = k.inv(&one_plus_i).unwrap();
        assert!(k.is_one(&k.mul(&inv, &one_plus_i)));
        // x^2 - 1 is reducible
        let bad = UniPoly::from_coeffs(vec![q.from_int(-1), q.zero(), q.one()]);
        assert_eq!(Field::simple_extension(&q, bad, "a"), Err(FieldError::Reducible));
    }

    #[test]
    fn rational_function_canonical_form() {
        let q = Field::rationals();
        let k = Field::rational_functions(&q, "b").unwrap();
        let b = k.generator().unwrap();
        // (b^2 - 1)/(b - 1) == b + 1
        let num = k.sub(&k.mul(&b, &b), &k.one());
        let den = k.sub(&b, &k.one());
        let lhs = k.div(&num, &den).unwrap();
        assert_eq!(lhs, k.add(&b, &k.one()));
        // 1/(2b) has monic denominator b
        let r = k.inv(&k.mul(&k.from_int(2), &b)).unwrap();
        match &r {
            Elem::Fraction(n, d) => {
                assert_eq!(n.lc(), &q.from_ratio(&1.into(), &2.into()).unwrap());
                assert_eq!(d.degree(), Some(1));
                assert!(q.is_one(d.lc()));
            }
            _ => unreachable!(),
        }
        assert!(Field::rational_functions(&k, "c").is_err());
    }
}
