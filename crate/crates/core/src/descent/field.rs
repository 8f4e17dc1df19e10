//! Finite fields `F_(p^d)` with tabulated arithmetic.

use serde::Serialize;

use crate::error::{capacity, domain, Result};
use crate::poly::FpPoly;
use crate::sarith::primality::is_prime_u64;

/// Largest field size with materialized tables.
pub const MAX_FIELD_SIZE: u64 = 1024;

/// Conway polynomials, little-endian coefficients, for the small fields used
/// most often; other sizes fall back to the lexicographically least monic
/// irreducible polynomial.
const MODULI: &[(u64, usize, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

/// Element `x` is the polynomial with base-`p` digits of `x` as
/// coefficients (least significant digit = constant term) modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FqField {
    p: u64,
    degree: usize,
    modulus: Vec<u64>,
    #[serde(skip)]
    add: Vec<Vec<usize>>,
    #[serde(skip)]
    mul: Vec<Vec<usize>>,
    #[serde(skip)]
    inv: Vec<usize>,
}

fn least_irreducible(p: u64, d: usize) -> Vec<u64> {
    let total = p.pow(d as u32);
    for idx in 0..total {
        let mut c: Vec<u64> = (0..d).map(|i| idx / p.pow(i as u32) % p).collect();
        c.push(1);
        let f = FpPoly::new(p, c.clone());
        let fac = f.factor();
        if fac.len() == 1 && fac[0].1 == 1 {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FqField {
    /// The field with `p^degree` elements.
    pub fn new(p: u64, degree: usize) -> Result<Self> {
        if !is_prime_u64(p) {
            return domain(format!("{p} is not prime"));
        }
        if degree == 0 {
            return domain("degree must be positive");
        }
        let size = p.checked_pow(degree as u32).filter(|&s| s <= MAX_FIELD_SIZE);
        let Some(size) = size else {
            return capacity(format!("field of order {p}^{degree} exceeds {MAX_FIELD_SIZE}"));
        };
        let modulus = MODULI
            .iter()
            .find(|(mp, md, _)| *mp == p && *md == degree)
            .map(|(_, _, m)| m.to_vec())
            .unwrap_or_else(|| if degree == 1 { vec![0, 1] } else { least_irreducible(p, degree) });
        let m = FpPoly::new(p, modulus.clone());
        let size = size as usize;
        let to_poly = |x: usize| {
            FpPoly::new(p, (0..degree).map(|i| (x as u64 / p.pow(i as u32)) % p).collect())
        };
        let from_poly = |f: &FpPoly| -> usize {
            f.coeffs().iter().rev().fold(0u64, |acc, &c| acc * p + c) as usize
        };
        let polys: Vec<FpPoly> = (0..size).map(to_poly).collect();
        let add = polys.iter().map(|a| polys.iter().map(|b| from_poly(&a.add(b))).collect()).collect();
        let mul: Vec<Vec<usize>> =
            polys.iter().map(|a| polys.iter().map(|b| from_poly(&a.mul(b).rem(&m))).collect()).collect();
        let mut inv = vec![0; size];
        for a in 1..size {
            inv[a] = (1..size).find(|&b| mul[a][b] == 1).ok_or_else(|| {
                crate::Error::Domain(format!("modulus {modulus:?} is reducible over F_{p}"))
            })?;
        }
        Ok(Self { p, degree, modulus, add, mul, inv })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.add.len()
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.add[a].iter().position(|&s| s == 0).unwrap()
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        self.inv[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let (mut base, mut e, mut acc) = (a, e, 1usize);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x -> x^q`.
    pub fn frobenius(&self, x: usize, q: u64) -> usize {
        self.pow(x, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, d) in [(2, 1), (2, 2), (3, 2), (2, 3), (5, 1), (2, 4), (5, 2), (3, 3), (13, 2)] {
            let f = FqField::new(p, d).unwrap();
            let n = f.size();
            assert_eq!(n as u64, p.pow(d as u32));
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..n {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if n <= 27 {
                        for c in 0..n {
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                            assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        }
                    }
                }
                // Frobenius is additive and x^(p^d) = x.
                assert_eq!(f.pow(a, n as u64), a);
            }
            // The multiplicative group is cyclic: some element has order n - 1.
            assert!((1..n).any(|g| (1..n as u64 - 1).all(|e| f.pow(g, e) != 1)));
        }
    }

    #[test]
    fn tabulated_moduli_are_irreducible() {
        for &(p, d, m) in MODULI {
            let fac = FpPoly::new(p, m.to_vec()).factor();
            assert_eq!(fac.len(), 1, "{p} {d}");
            assert_eq!(fac[0].1, 1);
        }
        assert!(FqField::new(4, 1).is_err());
        assert!(FqField::new(2, 11).is_err());
    }
}
