//! Dense exact linear algebra over a [`Field`].

use super::field::{Elem, Field};

/// Row-reduces in place to reduced echelon form; returns pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    if !p.is_zero() {
                        let t = field.mul(&k, p);
                        *x = field.sub(x, &t);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m, ncols).len()
}

/// Basis of `{x : M x = 0}` for the matrix with the given rows.
pub fn nullspace(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&m[r][free]);
        }
        out.push(v);
    }
    out
}

/// Some `x` with `M x = b`, if one exists.
pub fn solve(field: &Field, rows: &[Vec<Elem>], b: &[Elem], ncols: usize) -> Option<Vec<Elem>> {
    let mut m: Vec<Vec<Elem>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(field, &mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][ncols].clone();
    }
    Some(x)
}

/// Incrementally built echelon basis that remembers how each stored row is
/// expressed in the vectors inserted so far. Used to find the first linear
/// dependence in a sequence.
pub struct Echelon {
    field: Field,
    dim: usize,
    /// `(row, pivot, combination of inserted vectors giving row)`
    rows: Vec<(Vec<Elem>, usize, Vec<Elem>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: &Field, dim: usize) -> Self {
        Echelon {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` by the stored rows; returns the remainder and the
    /// combination `c` of inserted vectors with `v - sum c_i v_i = remainder`.
    pub fn reduce(&self, v: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
        let f = &self.field;
        let mut w = v.to_vec();
        let mut comb = vec![f.zero(); self.inserted];
        for (row, p, rc) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let k = w[*p].clone();
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    w[j] = f.sub(&w[j], &f.mul(&k, &row[j]));
                }
            }
            for (i, c) in rc.iter().enumerate() {
                if !c.is_zero() {
                    comb[i] = f.add(&comb[i], &f.mul(&k, c));
                }
            }
        }
        (w, comb)
    }

    pub fn is_member(&self, v: &[Elem]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    /// Inserts `v`. On dependence returns `Err(c)` with `v = sum c_i v_i`
    /// over previously inserted vectors; the basis is unchanged then.
    pub fn insert(&mut self, v: &[Elem]) -> Result<(), Vec<Elem>> {
        let f = self.field.clone();
        let (w, comb) = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Err(comb);
        };
        let inv = f.inv(&w[p]).unwrap();
        let row: Vec<Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
        // row = (v - sum comb_i v_i) / w_p
        let mut rc: Vec<Elem> = comb.iter().map(|c| f.neg(&f.mul(c, &inv))).collect();
        rc.push(inv);
        for (_, _, other) in self.rows.iter_mut() {
            other.push(f.zero());
        }
        self.rows.push((row, p, rc));
        self.inserted += 1;
        Ok(())
    }
}
