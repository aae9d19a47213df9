//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored low degree first with no trailing zeros. The
//! polynomial does not own its field; every operation takes one.

use super::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Elem, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(degree + 1);
        coeffs.resize_with(degree, || zero_like(&c));
        coeffs.push(c);
        UniPoly { coeffs }
    }

    /// The identity polynomial `z`.
    pub fn var(field: &Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient. Panics on the zero polynomial.
    pub fn lc(&self) -> &Elem {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, i: usize, field: &Field) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_monic(&self, field: &Field) -> bool {
        !self.is_zero() && field.is_one(self.lc())
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => field.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self, field: &Field) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Self {
        self.add(&other.neg(field), field)
    }

    pub fn scale(&self, c: &Elem, field: &Field) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = field.mul(a, b);
                out[i + j] = field.add(&out[i + j], &t);
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize, field: &Field) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn divrem(&self, divisor: &Self, field: &Field) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = field.inv(divisor.lc()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = field.mul(&rem[i], &lc_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let t = field.mul(&q, d);
                rem[i - dd + j] = field.sub(&rem[i - dd + j], &t);
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self, field: &Field) -> Self {
        self.divrem(divisor, field).1
    }

    /// Quotient of an exact division (debug-asserts a zero remainder).
    pub fn exact_div(&self, divisor: &Self, field: &Field) -> Self {
        let (q, r) = self.divrem(divisor, field);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, field: &Field) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = field.inv(self.lc()).expect("nonzero");
        self.scale(&inv, field)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self, field: &Field) -> Self {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = r0.rem(&r1, field).monic(field);
            r0 = r1;
            r1 = r;
        }
        r0.monic(field)
    }

    /// Returns `(g, s, t)` with `g = s*a + t*b` monic.
    pub fn xgcd(a: &Self, b: &Self, field: &Field) -> (Self, Self, Self) {
        let one = Self::constant(field.one());
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, field);
            let s = s0.sub(&q.mul(&s1, field), field);
            let t = t0.sub(&q.mul(&t1, field), field);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = field.inv(r0.lc()).expect("nonzero");
        (
            r0.scale(&inv, field),
            s0.scale(&inv, field),
            t0.scale(&inv, field),
        )
    }

    pub fn derivative(&self, field: &Field) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| field.mul(c, &field.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Elem, field: &Field) -> Elem {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    pub fn pow(&self, mut e: u64, field: &Field) -> Self {
        let mut result = Self::constant(field.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, field);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field);
            }
        }
        result
    }

    /// Squarefree part, monic. Defined for characteristic zero and for
    /// prime fields; in other positive-characteristic fields an inseparable
    /// part cannot be extracted and `None` is returned.
    pub fn squarefree_part(&self, field: &Field) -> Option<Self> {
        let factors = squarefree_decomposition(self, field)?;
        let mut out = Self::constant(field.one());
        for (f, _) in factors {
            out = out.mul(&f, field);
        }
        Some(out)
    }

    pub fn format(&self, field: &Field, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut cs = field.format(c);
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if s.is_empty() {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            if mono.is_empty() {
                s.push_str(&cs);
            } else if cs == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&cs);
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

fn zero_like(c: &Elem) -> Elem {
    match c {
        Elem::Rational(_) => Elem::Rational(num_rational::BigRational::from_integer(0.into())),
        Elem::Modular(_) => Elem::Modular(0),
        Elem::Algebraic(_) => Elem::Algebraic(UniPoly::zero()),
        Elem::Fraction(_, d) => {
            let one = d.coeffs.last().cloned().expect("monic denominator");
            Elem::Fraction(UniPoly::zero(), UniPoly::constant(one))
        }
    }
}

/// p-th root of a polynomial whose derivative vanishes, over a finite field.
fn pth_root(f: &UniPoly, field: &Field) -> Option<UniPoly> {
    let p = field.characteristic() as usize;
    let q = field.finite_size()?;
    // a -> a^(q/p) inverts Frobenius on F_q
    let root_exp = q / p as u128;
    let mut coeffs = Vec::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        if i % p == 0 {
            coeffs.push(field.pow(c, root_exp));
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(UniPoly::from_coeffs(coeffs))
}

/// Squarefree decomposition `f = lc * prod g_i^{m_i}` with monic pairwise
/// coprime squarefree `g_i`. Multiplicities are returned ascending.
pub fn squarefree_decomposition(f: &UniPoly, field: &Field) -> Option<Vec<(UniPoly, usize)>> {
    if f.degree().unwrap_or(0) == 0 {
        return Some(Vec::new());
    }
    let f = f.monic(field);
    let p = field.characteristic() as usize;
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    let d = f.derivative(field);
    if d.is_zero() {
        // only possible in positive characteristic
        let root = pth_root(&f, field)?;
        for (g, m) in squarefree_decomposition(&root, field)? {
            out.push((g, m * p));
        }
        out.sort_by_key(|(_, m)| *m);
        return Some(out);
    }
    // Yun's algorithm, with the p-th power remainder handled recursively.
    let mut a = UniPoly::gcd(&f, &d, field);
    let mut b = f.exact_div(&a, field);
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let y = UniPoly::gcd(&b, &a, field);
        let z = b.exact_div(&y, field);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        b = y;
        a = a.exact_div(&b, field);
        i += 1;
    }
    if a.degree().unwrap_or(0) > 0 {
        if p == 0 {
            return None;
        }
        let root = pth_root(&a, field)?;
        for (g, m) in squarefree_decomposition(&root, field)? {
            // merge with existing entries of the same factor
            out.push((g, m * p));
        }
        out = merge_equal(out, field);
    }
    out.sort_by_key(|(_, m)| *m);
    Some(out)
}

fn merge_equal(list: Vec<(UniPoly, usize)>, field: &Field) -> Vec<(UniPoly, usize)> {
    // After the p-th root step a factor can appear twice with different
    // multiplicities only if it also divides an earlier Yun factor; split
    // by gcds so the result stays pairwise coprime.
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    for (g, m) in list {
        let mut rest = g;
        let mut additions = Vec::new();
        for entry in out.iter_mut() {
            let c = UniPoly::gcd(&entry.0, &rest, field);
            if c.degree().unwrap_or(0) > 0 {
                let other = entry.0.exact_div(&c, field);
                rest = rest.exact_div(&c, field);
                additions.push((c, entry.1 + m));
                entry.0 = other;
            }
        }
        out.retain(|(g, _)| g.degree().unwrap_or(0) > 0);
        out.extend(additions);
        if rest.degree().unwrap_or(0) > 0 {
            out.push((rest, m));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn poly(f: &Field, c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&v| f.from_int(v)).collect())
    }

    #[test]
    fn division_identity() {
        let f = q();
        let a = poly(&f, &[1, 0, -3, 2, 5]);
        let b = poly(&f, &[2, 1, 1]);
        let (qu, r) = a.divrem(&b, &f);
        assert_eq!(qu.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn t3_minus_t_mod_t2_minus_1() {
        let f = q();
        let a = poly(&f, &[0, -1, 0, 1]);
        let m = poly(&f, &[-1, 0, 1]);
        assert!(a.rem(&m, &f).is_zero());
    }

    #[test]
    fn xgcd_bezout() {
        let f = q();
        let a = poly(&f, &[-1, 0, 1]);
        let b = poly(&f, &[-1, 1]);
        let c = poly(&f, &[1, 1]);
        let (g, s, t) = UniPoly::xgcd(&b, &c, &f);
        assert_eq!(g, UniPoly::constant(f.one()));
        assert_eq!(s.mul(&b, &f).add(&t.mul(&c, &f), &f), g);
        assert_eq!(UniPoly::gcd(&a, &b, &f), b);
    }

    #[test]
    fn squarefree_rational() {
        let f = q();
        // (z-1)^2 (z+2)
        let p = poly(&f, &[-1, 1]).pow(2, &f).mul(&poly(&f, &[2, 1]), &f);
        let d = squarefree_decomposition(&p, &f).unwrap();
        assert_eq!(d, vec![(poly(&f, &[2, 1]), 1), (poly(&f, &[-1, 1]), 2)]);
        assert_eq!(
            p.squarefree_part(&f).unwrap(),
            poly(&f, &[-1, 1]).mul(&poly(&f, &[2, 1]), &f)
        );
    }

    #[test]
    fn squarefree_inseparable_prime_field() {
        let f = Field::prime(3).unwrap();
        // (z^3 + 2)(z + 1) = (z + 2)^3 (z + 1) over F_3
        let p = poly(&f, &[2, 0, 0, 1]).mul(&poly(&f, &[1, 1]), &f);
        let d = squarefree_decomposition(&p, &f).unwrap();
        assert_eq!(d, vec![(poly(&f, &[1, 1]), 1), (poly(&f, &[2, 1]), 3)]);
    }

    #[test]
    fn format_reads_naturally() {
        let f = q();
        assert_eq!(poly(&f, &[-1, 0, 1]).format(&f, "z"), "z^2 - 1");
        assert_eq!(poly(&f, &[0, -2]).format(&f, "z"), "-2*z");
        assert_eq!(UniPoly::zero().format(&f, "z"), "0");
    }
}
