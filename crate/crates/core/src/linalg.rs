//! Smith normal form over Z with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

pub type Mat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn from_i64(m: &[Vec<i64>]) -> Mat {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `u * m * v = diag(d)` with `u`, `v` unimodular, `d_i | d_(i+1)`, `d_i >= 0`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: Mat,
    pub v: Mat,
    pub v_inv: Mat,
}

struct Work {
    a: Mat,
    u: Mat,
    v: Mat,
    vi: Mat,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.a {
            r.swap(i, j);
        }
        for r in &mut self.v {
            r.swap(i, j);
        }
        self.vi.swap(i, j);
    }

    /// row_i -= q row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let rj = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&rj) {
                *x -= q * y;
            }
        }
    }

    /// col_i -= q col_j; the inverse transform gets row_j += q row_i.
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in m.iter_mut() {
                let t = q * &r[j];
                r[i] -= t;
            }
        }
        let ri = self.vi[i].clone();
        for (x, y) in self.vi[j].iter_mut().zip(&ri) {
            *x += q * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
}

pub fn smith(m: &Mat, rows: usize, cols: usize) -> Smith {
    let mut w = Work { a: m.clone(), u: identity(rows), v: identity(cols), vi: identity(cols) };
    let mut t = 0;
    while t < rows.min(cols) {
        // Least nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !w.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_sub(i, t, &q);
                    if !w.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_sub(j, t, &q);
                    if !w.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // Move the least remaining entry of row/column t to the pivot.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // Divisibility: fold a offending row into row t.
            let p = w.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&w.a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => w.row_sub(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| w.a[i][i].clone()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    Smith { rows, cols, diag, rank, u: w.u, v: w.v, v_inv: w.vi }
}

/// Basis of `{x : m x = 0}` as vectors of length `cols`.
pub fn kernel(m: &Mat, rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    let s = smith(m, rows, cols);
    (s.rank..cols).map(|j| (0..cols).map(|i| s.v[i][j].clone()).collect()).collect()
}

/// Invariant factors (`> 1`) of `span(big) / span(small)` for spanning sets
/// of vectors in `Z^dim`, where `span(small)` has finite index in
/// `span(big)`. Errors if the index is infinite or `small` is not contained.
pub fn lattice_quotient(big: &[Vec<BigInt>], small: &[Vec<BigInt>], dim: usize) -> Result<Vec<BigInt>> {
    let s = smith(&big.to_vec(), big.len(), dim);
    let r = s.rank;
    // Basis rows d_i * (row i of v^-1); coordinates of y are (y v)_i / d_i.
    let mut coords = Vec::with_capacity(small.len());
    for y in small {
        let yv: Vec<BigInt> = (0..dim)
            .map(|j| (0..dim).fold(BigInt::zero(), |acc, k| acc + &y[k] * &s.v[k][j]))
            .collect();
        if yv[r..].iter().any(|x| !x.is_zero()) {
            return domain("sublattice is not contained in the lattice");
        }
        let mut c = Vec::with_capacity(r);
        for i in 0..r {
            let (q, rem) = yv[i].div_rem(&s.diag[i]);
            if !rem.is_zero() {
                return domain("sublattice is not contained in the lattice");
            }
            c.push(q);
        }
        coords.push(c);
    }
    let t = smith(&coords, coords.len(), r);
    if t.rank < r {
        return domain(format!("quotient has free rank {}", r - t.rank));
    }
    Ok(t.diag.into_iter().filter(|d| !d.is_one()).collect())
}
