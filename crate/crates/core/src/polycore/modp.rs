//! Polynomials over Z/p for word-sized primes, with Cantor–Zassenhaus
//! factorization. Used both for prime-field factoring and as the modular
//! image in the big-prime factorization over QQ.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixed seed so factor order and splitting are reproducible.
const SPLIT_SEED: u64 = 0x5eed_ca27_1e2b_0001;

pub type ModPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Zp {
    p: u64,
}

impl Zp {
    /// `p` must be prime and below 2^63.
    pub fn new(p: u64) -> Self {
        Zp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn addm(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    #[inline]
    pub fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    pub fn powm(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        r
    }

    pub fn invm(&self, a: u64) -> u64 {
        self.powm(a, self.p - 2)
    }

    pub fn trim(f: &mut ModPoly) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    pub fn deg(f: &ModPoly) -> Option<usize> {
        f.len().checked_sub(1)
    }

    pub fn add(&self, f: &ModPoly, g: &ModPoly) -> ModPoly {
        let n = f.len().max(g.len());
        let mut out: ModPoly = (0..n)
            .map(|i| self.addm(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn sub(&self, f: &ModPoly, g: &ModPoly) -> ModPoly {
        let n = f.len().max(g.len());
        let mut out: ModPoly = (0..n)
            .map(|i| self.subm(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn mul(&self, f: &ModPoly, g: &ModPoly) -> ModPoly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u128; f.len() + g.len() - 1];
        let p = self.p as u128;
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        let mut out: ModPoly = acc.into_iter().map(|v| v as u64).collect();
        Self::trim(&mut out);
        out
    }

    pub fn scale(&self, f: &ModPoly, c: u64) -> ModPoly {
        let mut out: ModPoly = f.iter().map(|&a| self.mulm(a, c)).collect();
        Self::trim(&mut out);
        out
    }

    pub fn divrem(&self, f: &ModPoly, g: &ModPoly) -> (ModPoly, ModPoly) {
        let dg = Self::deg(g).expect("division by zero polynomial");
        if f.len() <= dg {
            return (Vec::new(), f.clone());
        }
        let inv = self.invm(g[dg]);
        let mut r = f.clone();
        let mut q = vec![0u64; f.len() - dg];
        for i in (dg..f.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let c = self.mulm(c, inv);
            q[i - dg] = c;
            for (j, &b) in g.iter().enumerate() {
                r[i - dg + j] = self.subm(r[i - dg + j], self.mulm(c, b));
            }
        }
        r.truncate(dg);
        Self::trim(&mut r);
        Self::trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, f: &ModPoly, g: &ModPoly) -> ModPoly {
        self.divrem(f, g).1
    }

    pub fn monic(&self, f: &ModPoly) -> ModPoly {
        match f.last() {
            None => Vec::new(),
            Some(&c) => self.scale(f, self.invm(c)),
        }
    }

    pub fn gcd(&self, f: &ModPoly, g: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, f: &ModPoly) -> ModPoly {
        let mut out: ModPoly = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mulm(c, i as u64 % self.p))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn mulmod(&self, f: &ModPoly, g: &ModPoly, m: &ModPoly) -> ModPoly {
        self.rem(&self.mul(f, g), m)
    }

    pub fn powmod(&self, f: &ModPoly, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut result: ModPoly = vec![1];
        let mut base = self.rem(f, m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = self.mulmod(&result, &base, m);
            }
            if i + 1 < e.bits() {
                base = self.mulmod(&base, &base, m);
            }
        }
        self.rem(&result, m)
    }

    pub fn is_squarefree(&self, f: &ModPoly) -> bool {
        let d = self.derivative(f);
        if d.is_empty() {
            return Self::deg(f).unwrap_or(0) == 0;
        }
        Self::deg(&self.gcd(f, &d)) == Some(0)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn ddf(&self, f: &ModPoly) -> Vec<(usize, ModPoly)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x: ModPoly = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        let mut d = 0;
        while let Some(deg) = Self::deg(&rest) {
            if deg < 2 * (d + 1) {
                break;
            }
            d += 1;
            h = self.powmod(&h, &p, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if Self::deg(&g).unwrap_or(0) > 0 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((d, g));
            }
        }
        if Self::deg(&rest).unwrap_or(0) > 0 {
            let d = Self::deg(&rest).unwrap();
            out.push((d, self.monic(&rest)));
        }
        out
    }

    /// Equal-degree splitting of a product of irreducibles of degree `d`.
    pub fn edf(&self, f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let n = Self::deg(f).unwrap_or(0);
        if n <= d {
            return vec![self.monic(f)];
        }
        let exp = if self.p == 2 {
            BigUint::zero()
        } else {
            (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1
        };
        loop {
            let a: ModPoly = {
                let mut v: ModPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                Self::trim(&mut v);
                v
            };
            if Self::deg(&a).unwrap_or(0) == 0 {
                continue;
            }
            let b = if self.p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = self.rem(&a, f);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = self.mulmod(&t, &t, f);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                self.sub(&self.powmod(&a, &exp, f), &vec![1])
            };
            let g = self.gcd(f, &b);
            let dg = Self::deg(&g).unwrap_or(0);
            if dg > 0 && dg < n {
                let other = self.divrem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&other, d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_squarefree(&self, f: &ModPoly) -> Vec<ModPoly> {
        let f = self.monic(f);
        if Self::deg(&f).unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ self.p);
        let mut out = Vec::new();
        for (d, g) in self.ddf(&f) {
            out.extend(self.edf(&g, d, &mut rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// Smallest prime `>= n` (n < 2^62).
pub fn next_prime(mut n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    if n.is_multiple_of(2) {
        n += 1;
    }
    while !super::field::is_prime_u64(n) {
        n += 2;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(zp: &Zp, fs: &[ModPoly]) -> ModPoly {
        fs.iter().fold(vec![1], |acc, f| zp.mul(&acc, f))
    }

    #[test]
    fn factors_multiply_back() {
        let zp = Zp::new(101);
        // (x+1)(x+2)(x^2+3)(x^3+x+1) with x^2+3 irreducible mod 101?
        let f = expand(&zp, &[vec![1, 1], vec![2, 1], vec![3, 0, 1], vec![1, 1, 0, 1]]);
        let fs = zp.factor_squarefree(&f);
        assert_eq!(expand(&zp, &fs), f);
        for g in &fs {
            // each factor is irreducible: it has a single ddf class of its own degree
            let classes = zp.ddf(g);
            assert_eq!(classes.len(), 1);
            assert_eq!(classes[0].0, g.len() - 1);
        }
    }

    #[test]
    fn characteristic_two_splitting() {
        let zp = Zp::new(2);
        // x^4 + x = x (x+1) (x^2+x+1)
        let f: ModPoly = vec![0, 1, 0, 0, 1];
        let fs = zp.factor_squarefree(&f);
        assert_eq!(fs, vec![vec![0, 1], vec![1, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn deterministic_output() {
        let zp = Zp::new(1_000_003);
        let f = expand(&zp, &[vec![5, 1], vec![7, 1], vec![11, 1], vec![13, 0, 1]]);
        assert_eq!(zp.factor_squarefree(&f), zp.factor_squarefree(&f));
    }

    #[test]
    fn primes() {
        assert_eq!(next_prime(14), 17);
        assert_eq!(next_prime(2), 2);
        assert_eq!(next_prime(1 << 40), 1099511627791);
    }
}
