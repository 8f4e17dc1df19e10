//! Integer polynomials (little-endian `Vec<BigInt>`) and factorization of
//! squarefree primitive polynomials over Z: modular factorization at a good
//! prime, multifactor Hensel lifting, then recombination by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::FpPoly;
use crate::projective::inv_mod;
use crate::sarith::is_prime_u64;

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn degree(f: &[BigInt]) -> usize {
    f.len().saturating_sub(1)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim(v)
}

pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive_part(f: &[BigInt]) -> ZPoly {
    let g = content(f);
    if g.is_zero() {
        return Vec::new();
    }
    let g = if f.last().is_some_and(Signed::is_negative) { -g } else { g };
    f.iter().map(|c| c / &g).collect()
}

/// Exact quotient `f / g` over Z, or `None` when `g` does not divide `f`.
pub fn div_exact(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let g = trim(g.to_vec());
    if g.is_empty() {
        return None;
    }
    let mut r = trim(f.to_vec());
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < g.len() {
        return None;
    }
    let dg = g.len() - 1;
    let lg = &g[dg];
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for i in (dg..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (coef, rem) = r[i].div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        for (j, b) in g.iter().enumerate() {
            r[i - dg + j] -= &coef * b;
        }
        q[i - dg] = coef;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

fn to_fp(f: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(
        p,
        f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect(),
    )
}

fn from_fp(f: &FpPoly) -> ZPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce(f: &[BigInt], m: &BigInt) -> ZPoly {
    trim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half { r - m } else { r }
            })
            .collect(),
    )
}

/// Lifts `f = g h (mod l)`, `h` monic and `lc(g) = lc(f)`, to a factorization
/// modulo `l^k`.
fn hensel_pair(f: &[BigInt], g: &[BigInt], h: &[BigInt], l: u64, k: u32) -> (ZPoly, ZPoly) {
    let gb = to_fp(g, l);
    let hb = to_fp(h, l);
    let (one, s, t) = gb.ext_gcd(&hb);
    debug_assert!(one.is_one(), "modular factors must be coprime");
    let lb = BigInt::from(l);
    let mut g = g.to_vec();
    let mut h = h.to_vec();
    let mut m = lb.clone();
    for _ in 1..k {
        let next = &m * &lb;
        let prod = mul(&g, &h);
        let n = f.len().max(prod.len());
        let diff: ZPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                let d = a - b;
                debug_assert!((&d % &m).is_zero());
                d / &m
            })
            .collect();
        let e = to_fp(&diff, l);
        let (q, sigma) = e.mul(&s).div_rem(&hb);
        let tau = e.mul(&t).add(&q.mul(&gb));
        let add = |base: &[BigInt], delta: &FpPoly| -> ZPoly {
            let mut out = base.to_vec();
            for (i, c) in delta.coeffs().iter().enumerate() {
                if i >= out.len() {
                    out.resize(i + 1, BigInt::zero());
                }
                out[i] += &m * BigInt::from(*c);
            }
            reduce(&out, &next)
        };
        g = add(&g, &tau);
        h = add(&h, &sigma);
        m = next;
    }
    (g, h)
}

/// Lifts the modular factorization `f = lc(f) prod(factors) (mod l)` to monic
/// factors modulo `l^k`.
fn hensel_multi(f: &[BigInt], factors: &[FpPoly], l: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(l).pow(k);
    let lc = f.last().unwrap().mod_floor(&modulus);
    if factors.len() == 1 {
        let inv = lc.modinv(&modulus).expect("leading coefficient is a unit mod l");
        let scaled: ZPoly = f.iter().map(|c| c * &inv).collect();
        return vec![reduce(&scaled, &modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_l = lc.mod_floor(&BigInt::from(l)).to_u64().unwrap();
    let g0 = left
        .iter()
        .fold(FpPoly::new(l, vec![lc_l]), |acc, u| acc.mul(u));
    let h0 = right.iter().fold(FpPoly::one(l), |acc, u| acc.mul(u));
    let mut g0 = from_fp(&g0);
    *g0.last_mut().unwrap() = lc;
    let (g, h) = hensel_pair(f, &g0, &from_fp(&h0), l, k);
    let mut out = hensel_multi(&g, left, l, k);
    out.extend(hensel_multi(&h, right, l, k));
    out
}

/// Coefficient bound for factors of `f`, scaled by the leading coefficient.
fn factor_bound(f: &[BigInt]) -> BigUint {
    let norm2: BigUint = f.iter().map(|c| c.magnitude() * c.magnitude()).sum();
    let lc = f.last().unwrap().magnitude().clone();
    (norm2.sqrt() + 1u32) * (BigUint::one() << degree(f)) * lc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors over Z of a squarefree primitive polynomial with
/// positive leading coefficient. Factors are primitive with positive leading
/// coefficient, sorted by degree then coefficients.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let f = primitive_part(&trim(f.to_vec()));
    let mut out = factor_inner(&f);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    out
}

fn factor_inner(f: &[BigInt]) -> Vec<ZPoly> {
    if degree(f) <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap();
    let l = (3u64..)
        .filter(|&l| is_prime_u64(l))
        .find(|&l| {
            !(lc % l).is_zero() && to_fp(f, l).is_squarefree()
        })
        .expect("a squarefree polynomial stays squarefree modulo almost every prime");
    let lcl = lc.mod_floor(&BigInt::from(l)).to_u64().unwrap();
    let modular: Vec<FpPoly> = to_fp(f, l)
        .scale(inv_mod(lcl, l))
        .factor()
        .into_iter()
        .map(|(g, m)| {
            debug_assert_eq!(m, 1);
            g
        })
        .collect();
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let bound = BigInt::from(factor_bound(f)) * 2;
    let mut k = 1u32;
    let lb = BigInt::from(l);
    while lb.pow(k) <= bound {
        k += 1;
    }
    let modulus = lb.pow(k);
    let lifted = hensel_multi(f, &modular, l, k);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut rest = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let lc_rest = rest.last().unwrap().clone();
        let hit = subsets(remaining.len(), size).into_iter().find_map(|subset| {
            let prod = subset
                .iter()
                .fold(vec![lc_rest.clone()], |acc, &i| reduce(&mul(&acc, &remaining[i]), &modulus));
            let cand = primitive_part(&symmetric(&prod, &modulus));
            div_exact(&rest, &cand).map(|q| (subset, cand, q))
        });
        match hit {
            Some((subset, cand, quotient)) => {
                found.push(cand);
                rest = primitive_part(&quotient);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    found.push(rest);
    found
}
