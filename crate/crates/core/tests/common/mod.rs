//! Independent oracles: a naive grevlex polynomial reducer and exhaustive
//! enumeration of idempotents in small algebras over F_p.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use std::sync::Arc;

use cartierlab::artinian::{quotient_algebra, Element, FiniteAlgebra};
use cartierlab::cli::input::{self, InputFile};
use cartierlab::laurent::LaurentElement;
use cartierlab::polycore::{Field, Ideal, MonomialOrder, PolyRing};
use cartierlab::extensions::ExtensionPresentation;
use cartierlab::polycore::{Elem, Polynomial};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact coefficient: rational or residue mod p.
#[derive(Clone, Debug, PartialEq)]
pub enum Coef {
    Q(BigRational),
    P(u64, u64),
}

impl Coef {
    fn is_zero(&self) -> bool {
        match self {
            Coef::Q(q) => q.is_zero(),
            Coef::P(v, _) => *v == 0,
        }
    }

    fn one_like(&self) -> Coef {
        match self {
            Coef::Q(_) => Coef::Q(BigRational::one()),
            Coef::P(_, p) => Coef::P(1, *p),
        }
    }

    fn add(&self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a + b),
            (Coef::P(a, p), Coef::P(b, _)) => Coef::P((a + b) % p, *p),
            _ => panic!("mixed coefficients"),
        }
    }

    fn neg(&self) -> Coef {
        match self {
            Coef::Q(a) => Coef::Q(-a),
            Coef::P(a, p) => Coef::P((p - a) % p, *p),
        }
    }

    fn mul(&self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a * b),
            (Coef::P(a, p), Coef::P(b, _)) => Coef::P(((*a as u128 * *b as u128) % *p as u128) as u64, *p),
            _ => panic!("mixed coefficients"),
        }
    }

    fn inv(&self) -> Coef {
        match self {
            Coef::Q(a) => Coef::Q(a.recip()),
            Coef::P(a, p) => {
                let mut r = 1u128;
                let (mut b, mut e) = (*a as u128, *p - 2);
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * b % *p as u128;
                    }
                    b = b * b % *p as u128;
                    e >>= 1;
                }
                Coef::P(r as u64, *p)
            }
        }
    }
}

/// Sparse polynomial keyed by exponent vectors.
pub type OPoly = BTreeMap<Vec<u32>, Coef>;

/// Degree, then reverse lexicographic.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

pub fn convert(f: &Polynomial) -> OPoly {
    let p = f.field().characteristic();
    f.terms()
        .iter()
        .map(|(m, c)| {
            let c = match c {
                Elem::Rational(q) => Coef::Q(q.clone()),
                Elem::Modular(v) => Coef::P(*v, p),
                other => panic!("unsupported coefficient {:?}", other),
            };
            (m.exps().to_vec(), c)
        })
        .collect()
}

fn leading(f: &OPoly) -> Option<(&Vec<u32>, &Coef)> {
    f.iter().max_by(|a, b| grevlex(a.0, b.0))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add_scaled(f: &mut OPoly, g: &OPoly, shift: &[u32], c: &Coef) {
    for (m, d) in g {
        let key: Vec<u32> = m.iter().zip(shift).map(|(x, y)| x + y).collect();
        let term = d.mul(c);
        let sum = match f.get(&key) {
            Some(old) => old.add(&term),
            None => term,
        };
        if sum.is_zero() {
            f.remove(&key);
        } else {
            f.insert(key, sum);
        }
    }
}

/// Full reduction of `f` by `basis`.
pub fn reduce(f: &OPoly, basis: &[OPoly]) -> OPoly {
    let mut f = f.clone();
    let mut rem = OPoly::new();
    while let Some((m, c)) = leading(&f).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = basis.iter().find_map(|g| {
            let (lm, lc) = leading(g)?;
            divides(lm, &m).then(|| (g, lm.clone(), lc.clone()))
        });
        match hit {
            Some((g, lm, lc)) => {
                let shift: Vec<u32> = m.iter().zip(&lm).map(|(x, y)| x - y).collect();
                add_scaled(&mut f, g, &shift, &c.mul(&lc.inv()).neg());
            }
            None => {
                f.remove(&m);
                rem.insert(m, c);
            }
        }
    }
    rem
}

pub fn s_poly(f: &OPoly, g: &OPoly) -> OPoly {
    let (lf, cf) = leading(f).unwrap();
    let (lg, cg) = leading(g).unwrap();
    let l: Vec<u32> = lf.iter().zip(lg).map(|(a, b)| *a.max(b)).collect();
    let sf: Vec<u32> = l.iter().zip(lf).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(lg).map(|(a, b)| a - b).collect();
    let mut out = OPoly::new();
    add_scaled(&mut out, f, &sf, &cf.inv());
    add_scaled(&mut out, g, &sg, &cg.inv().neg());
    out
}

/// Reduced Groebner basis conditions checked from scratch: generators and
/// S-polynomials reduce to zero, leading coefficients are one and no term is
/// divisible by another element's leading monomial.
pub fn check_groebner(gens: &[Polynomial], basis: &[Polynomial]) -> Result<(), String> {
    let b: Vec<OPoly> = basis.iter().map(convert).collect();
    for g in gens {
        if !reduce(&convert(g), &b).is_empty() {
            return Err(format!("generator {} does not reduce to 0", g));
        }
    }
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !reduce(&s_poly(&b[i], &b[j]), &b).is_empty() {
                return Err(format!("S({}, {}) does not reduce to 0", basis[i], basis[j]));
            }
        }
    }
    for (i, g) in b.iter().enumerate() {
        let (_, lc) = leading(g).ok_or("zero element in basis")?;
        if *lc != lc.one_like() {
            return Err(format!("{} is not monic", basis[i]));
        }
        for (j, h) in b.iter().enumerate() {
            if i == j {
                continue;
            }
            let (lh, _) = leading(h).unwrap();
            if g.keys().any(|m| divides(lh, m)) {
                return Err(format!("{} is not reduced against {}", basis[i], basis[j]));
            }
        }
    }
    Ok(())
}

/// Residues mod p of a univariate polynomial, constant term first.
pub type Uni = Vec<u64>;

fn uni_mulmod(a: &Uni, b: &Uni, f: &Uni, p: u64) -> Uni {
    let d = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let lead_inv = Coef::P(f[d], p).inv();
    let Coef::P(li, _) = lead_inv else { unreachable!() };
    for k in (d..prod.len()).rev() {
        let c = prod[k] * li % p;
        if c == 0 {
            continue;
        }
        for (i, fi) in f.iter().enumerate() {
            let idx = k - d + i;
            prod[idx] = (prod[idx] + p * p - c * fi % p) % p;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

/// Elements of `F_p[x]/(f) ⊗ F_p[y]/(g)` as `deg f × deg g` coefficient grids.
pub fn count_idempotents_tensor(f: &Uni, g: &Uni, p: u64) -> usize {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let dim = df * dg;
    let total = (p as usize).pow(dim as u32);
    let mut count = 0;
    let mut digits = vec![0u64; dim];
    for n in 0..total {
        let mut k = n;
        for d in digits.iter_mut() {
            *d = (k % p as usize) as u64;
            k /= p as usize;
        }
        // e = Σ digits[i*dg + j] x^i y^j
        let mut sq = vec![vec![0u64; dg]; df];
        for i1 in 0..df {
            for j1 in 0..dg {
                let a = digits[i1 * dg + j1];
                if a == 0 {
                    continue;
                }
                for i2 in 0..df {
                    for j2 in 0..dg {
                        let b = digits[i2 * dg + j2];
                        if b == 0 {
                            continue;
                        }
                        let mut xm = vec![0u64; i1 + i2 + 1];
                        xm[i1 + i2] = 1;
                        let mut ym = vec![0u64; j1 + j2 + 1];
                        ym[j1 + j2] = 1;
                        let xr = uni_mulmod(&xm, &vec![1], f, p);
                        let yr = uni_mulmod(&ym, &vec![1], g, p);
                        let c = a * b % p;
                        for (ix, xv) in xr.iter().enumerate() {
                            for (iy, yv) in yr.iter().enumerate() {
                                sq[ix][iy] = (sq[ix][iy] + c * xv % p * yv) % p;
                            }
                        }
                    }
                }
            }
        }
        if (0..df).all(|i| (0..dg).all(|j| sq[i][j] == digits[i * dg + j])) {
            count += 1;
        }
    }
    count
}

/// Number of primitive idempotents from the number of all idempotents.
pub fn components_from_idempotents(n: usize) -> usize {
    assert!(n.is_power_of_two(), "idempotent count {} is not a power of two", n);
    n.trailing_zeros() as usize
}

/// Text of a univariate polynomial for the library parser.
pub fn uni_text(f: &Uni, var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in f.iter().enumerate().rev() {
        if *c == 0 {
            continue;
        }
        parts.push(match i {
            0 => format!("{}", c),
            1 => format!("{}*{}", c, var),
            _ => format!("{}*{}^{}", c, var, i),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

pub fn load_extension(name: &str) -> ExtensionPresentation {
    let loaded = input::load(&corpus_dir().join(name)).unwrap();
    let InputFile::Extension(f) = loaded.file else {
        panic!("{} is not an extension description", name)
    };
    input::build_extension(&f, cartierlab::polycore::DEFAULT_PAIR_BUDGET, false).unwrap()
}

/// Every extension description in the corpus, by file name.
pub fn corpus_extensions() -> Vec<(String, ExtensionPresentation)> {
    let mut out = Vec::new();
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    for path in files {
        let loaded = input::load(&path).unwrap();
        if let InputFile::Extension(f) = loaded.file {
            let ext = input::build_extension(&f, cartierlab::polycore::DEFAULT_PAIR_BUDGET, false).unwrap();
            out.push((loaded.name, ext));
        }
    }
    out
}

/// Units `u0 * Σ e_i t^{k_i} * (1 + n1 t^a) * (1 + n2 t^-b)`.
#[derive(Clone, Debug)]
pub struct UnitSpec {
    pub scalars: Vec<i64>,
    pub nil0: (i64, i64),
    pub exponents: Vec<i64>,
    pub nil1: (i64, i64),
    pub a: i64,
    pub nil2: (i64, i64),
    pub b: i64,
}

pub struct Base {
    pub alg: Arc<FiniteAlgebra>,
    pub idempotents: Vec<Element>,
    pub nilpotents: [Element; 2],
}

impl Base {
    pub fn new(field: Field, vars: &[&str], rels: &[&str], idem: &[&str], nil: [&str; 2]) -> Self {
        let ring = PolyRing::new(field, vars, MonomialOrder::Grevlex).unwrap();
        let alg = Arc::new(quotient_algebra(&Ideal::parse(&ring, rels).unwrap()).unwrap());
        let el = |s: &str| alg.from_poly(&cartierlab::polycore::parse_polynomial(s, &ring).unwrap()).unwrap();
        Base {
            idempotents: idem.iter().map(|s| el(s)).collect(),
            nilpotents: nil.map(el),
            alg,
        }
    }

    pub fn nil(&self, c: (i64, i64)) -> Element {
        let f = self.alg.field();
        self.alg.add(
            &self.alg.scale(&self.nilpotents[0], &f.from_int(c.0)),
            &self.alg.scale(&self.nilpotents[1], &f.from_int(c.1)),
        )
    }

    pub fn unit(&self, s: &UnitSpec) -> LaurentElement {
        let (alg, f) = (&self.alg, self.alg.field());
        let mut u0 = self.nil(s.nil0);
        let mut mono = LaurentElement::zero(alg, "t");
        for (i, e) in self.idempotents.iter().enumerate() {
            u0 = alg.add(&u0, &alg.scale(e, &f.from_int(s.scalars[i])));
            mono = mono.add(&LaurentElement::term(alg, "t", e.clone(), s.exponents[i]));
        }
        let one = LaurentElement::one(alg, "t");
        let p = one.add(&LaurentElement::term(alg, "t", self.nil(s.nil1), s.a));
        let q = one.add(&LaurentElement::term(alg, "t", self.nil(s.nil2), -s.b));
        LaurentElement::constant(alg, "t", u0).mul(&mono).mul(&p).mul(&q)
    }
}

pub fn bases() -> [Base; 3] {
    [
        Base::new(Field::rationals(), &["u"], &["u^3"], &["1"], ["u", "u^2"]),
        Base::new(
            Field::rationals(),
            &["e", "u"],
            &["e^2 - e", "u^2"],
            &["e", "1 - e"],
            ["u", "e*u"],
        ),
        Base::new(
            Field::prime(5).unwrap(),
            &["x"],
            &["x^3 - x^2"],
            &["x^2", "1 - x^2"],
            ["x^2 - x", "2*x^2 - 2*x"],
        ),
    ]
}

/// `1 + (nilpotent terms on the side of sign)`.
pub fn check_parts(alg: &FiniteAlgebra, part: &LaurentElement, sign: i64) {
    for (k, c) in part.coefficients() {
        if *k == 0 {
            assert_eq!(c, &alg.one(), "constant term of a unipotent part");
        } else {
            assert_eq!(k.signum(), sign, "term on the wrong side: {}", part);
            assert!(alg.is_zero(&alg.pow_u64(c, alg.dim() as u64)), "coefficient not nilpotent: {}", part);
        }
    }
}

impl UnitSpec {
    /// Draws a unit description from `rng`.
    pub fn random<R: rand::Rng>(rng: &mut R) -> Self {
        let mut nz = || {
            let v = rng.gen_range(1i64..=3);
            if rng.gen_bool(0.5) {
                -v
            } else {
                v
            }
        };
        let scalars = vec![nz(), nz()];
        let mut pair = || (rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2));
        let (nil0, nil1, nil2) = (pair(), pair(), pair());
        UnitSpec {
            scalars,
            nil0,
            exponents: vec![rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)],
            nil1,
            a: rng.gen_range(1i64..=3),
            nil2,
            b: rng.gen_range(1i64..=3),
        }
    }
}
