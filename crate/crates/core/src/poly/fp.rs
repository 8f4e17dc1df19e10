//! Dense polynomials over a prime field F_p, coefficients little-endian.
//!
//! Factorization is squarefree decomposition, then distinct-degree, then
//! equal-degree splitting. The equal-degree step walks candidate splitting
//! polynomials in a fixed order instead of sampling, so results are
//! reproducible.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::projective::{inv_mod, mul_mod};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly(p={}, {:?})", self.p, self.c)
    }
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    pub fn zero(p: u64) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&a| mul_mod(a, k, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = other.c.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        Self::new(self.p, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = other.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut v = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, v)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead(), p);
        let mut r = self.c.clone();
        let dd = d.deg();
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = mul_mod(r[i], inv, p);
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (j, &b) in d.c.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = (r[idx] + p - mul_mod(coef, b, p)) % p;
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let k = inv_mod(r0.lead(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, i as u64 % self.p, self.p))
            .collect();
        Self::new(self.p, v)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (mul_mod(acc, x, self.p) + a) % self.p)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_one()
    }

    /// Squarefree decomposition of a monic polynomial: pairwise coprime
    /// squarefree factors with multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let p = self.p;
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_exact(&c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        if !c.is_one() {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    /// Splits a squarefree monic polynomial into `(product, degree)` pairs,
    /// each product holding all irreducible factors of that degree.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let mut out = Vec::new();
        let pe = BigUint::from(p);
        let mut i = 1;
        while f.deg() >= 2 * i {
            h = h.pow_mod(&pe, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((g, i));
            }
            i += 1;
        }
        if f.deg() > 0 {
            let d = f.deg();
            out.push((f, d));
        }
        out
    }

    /// Candidate splitting polynomials in a fixed order: the base-p digits of
    /// 1, 2, 3, ... read as coefficient vectors, skipping constants.
    fn candidate(p: u64, index: u64) -> Self {
        let mut t = index + p;
        let mut v = Vec::new();
        while t > 0 {
            v.push(t % p);
            t /= p;
        }
        Self::new(p, v)
    }

    /// Splits a squarefree monic product of irreducibles of degree `d`.
    pub fn equal_degree(&self, d: usize) -> Vec<Self> {
        let f = self.monic();
        let n = f.deg();
        if n == d {
            return vec![f];
        }
        let p = self.p;
        let qd = BigUint::from(p).pow(d as u32);
        let half = (&qd - BigUint::one()) >> 1;
        for idx in 0.. {
            let h = Self::candidate(p, idx);
            if h.degree().unwrap_or(0) >= n {
                break;
            }
            let probe = if p == 2 {
                // Trace map h + h^2 + ... + h^(2^(d-1)).
                let mut acc = h.rem(&f);
                let mut term = acc.clone();
                for _ in 1..d {
                    term = term.mul(&term).rem(&f);
                    acc = acc.add(&term);
                }
                acc
            } else {
                h.pow_mod(&half, &f).sub(&Self::one(p))
            };
            let g = f.gcd(&probe);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let mut out = g.equal_degree(d);
                out.extend(f.div_exact(&g).equal_degree(d));
                return out;
            }
        }
        unreachable!("some polynomial of degree < deg f separates the factors")
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree and then coefficients. The leading coefficient is
    /// dropped.
    pub fn factor(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero(), "cannot factor zero");
        let mut out = Vec::new();
        for (sqf, m) in self.squarefree_decomposition() {
            for (prod, d) in sqf.distinct_degree() {
                for irr in prod.equal_degree(d) {
                    out.push((irr, m));
                }
            }
        }
        out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
        out
    }
}

/// Degree first, then coefficients from the top.
pub fn cmp_poly(a: &FpPoly, b: &FpPoly) -> Ordering {
    a.c.len()
        .cmp(&b.c.len())
        .then_with(|| a.c.iter().rev().cmp(b.c.iter().rev()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    fn recompose(p: u64, lead: u64, fac: &[(FpPoly, u32)]) -> FpPoly {
        let mut acc = FpPoly::new(p, vec![lead]);
        for (g, m) in fac {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    /// Irreducibility by brute force: no monic factor of degree 1..=deg/2.
    fn brute_irreducible(f: &FpPoly) -> bool {
        let p = f.modulus();
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for t in 0..count {
                let mut c = Vec::new();
                let mut u = t;
                for _ in 0..d {
                    c.push(u % p);
                    u /= p;
                }
                c.push(1);
                if f.rem(&FpPoly::new(p, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factor_small_examples() {
        // x^2 + 1 over F_2 = (x + 1)^2.
        let f = poly(2, &[1, 0, 1]);
        assert_eq!(f.factor(), vec![(poly(2, &[1, 1]), 2)]);
        // x^2 + 1 is irreducible over F_3.
        let f = poly(3, &[1, 0, 1]);
        assert_eq!(f.factor(), vec![(poly(3, &[1, 0, 1]), 1)]);
        // x^4 - 1 over F_5 splits into four linear factors.
        let f = poly(5, &[4, 0, 0, 0, 1]);
        let fac = f.factor();
        assert_eq!(fac.len(), 4);
        assert!(fac.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        // x^8 - x over F_2: all irreducibles of degree 1 and 3.
        let f = poly(2, &[0, 1, 0, 0, 0, 0, 0, 0, 1]);
        let degs: Vec<usize> = f.factor().iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 3, 3]);
    }

    #[test]
    fn inseparable_powers() {
        // (x + 1)^6 over F_3 has derivative-free part (x+1)^3.
        let base = poly(3, &[1, 1]);
        let mut f = FpPoly::one(3);
        for _ in 0..6 {
            f = f.mul(&base);
        }
        assert_eq!(f.factor(), vec![(base, 6)]);
    }

    #[test]
    fn ext_gcd_identity() {
        let a = poly(7, &[1, 2, 3, 1]);
        let b = poly(7, &[5, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    proptest! {
        #[test]
        fn factorization_is_complete(
            p in proptest::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
            coeffs in proptest::collection::vec(0u64..50, 2..9),
        ) {
            let f = FpPoly::new(p, coeffs);
            prop_assume!(f.degree().unwrap_or(0) >= 1);
            let fac = f.factor();
            prop_assert_eq!(recompose(p, f.lead(), &fac), f.clone());
            let total: usize = fac.iter().map(|(g, m)| g.degree().unwrap() * *m as usize).sum();
            prop_assert_eq!(total, f.degree().unwrap());
            for (i, (g, _)) in fac.iter().enumerate() {
                prop_assert_eq!(g.lead(), 1);
                prop_assert!(brute_irreducible(g));
                for (h, _) in &fac[i + 1..] {
                    prop_assert_ne!(g, h);
                }
            }
        }
    }
}
