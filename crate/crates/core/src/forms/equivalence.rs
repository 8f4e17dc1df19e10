//! Bounded search for equivalences `gamma . f = lambda g` with `gamma` in
//! GL2(Z_S) and `lambda` an S-unit.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::projective::GL2ZS;
use crate::sarith::{is_s_unit, valuation, SPrimeSet};

use super::{act_exact, discriminant, gauss_reduce_quadratic, BinaryForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub gamma: GL2ZS,
    pub lambda: BigRational,
}

impl Equivalence {
    /// Re-expands `gamma . f` and compares with `lambda g`.
    pub fn verify(&self, f: &BinaryForm, g: &BinaryForm) -> bool {
        let lhs = act_exact(&self.gamma, f);
        lhs.len() == g.coeffs().len()
            && lhs
                .iter()
                .zip(g.coeffs())
                .all(|(l, c)| *l == &self.lambda * BigRational::from_integer(c.clone()))
    }
}

fn height(r: &BigRational) -> BigInt {
    r.numer().abs().max(r.denom().clone())
}

/// Search order: height, then absolute value, positive before negative.
fn search_key(r: &BigRational) -> (BigInt, BigRational, bool) {
    (height(r), r.abs(), r.is_negative())
}

/// Necessary condition for equivalence: `disc(g)/disc(f)` must be a positive
/// S-unit whose valuations at S are multiples of `(n-1) gcd(n, 2)`, the gcd of
/// the exponents `n(n-1)` of `det gamma` and `2n-2` of `lambda`.
pub fn discriminant_classes_match(f: &BinaryForm, g: &BinaryForm, s: &SPrimeSet) -> Result<bool> {
    let n = f.degree();
    if n != g.degree() {
        return domain("degree mismatch");
    }
    if n < 2 {
        return Ok(true);
    }
    let (df, dg) = (discriminant(f)?, discriminant(g)?);
    if df.is_zero() || dg.is_zero() {
        return Ok(df.is_zero() == dg.is_zero());
    }
    let ratio = BigRational::new(dg, df);
    if !ratio.is_positive() || !is_s_unit(&ratio, s)? {
        return Ok(false);
    }
    let step = ((n - 1) * n.gcd(&2)) as i64;
    for &p in s.primes() {
        if valuation(&ratio, p)? % step != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// S-integers `a/d` with `|a| <= bound` and S-supported `d <= bound`.
fn entries(s: &SPrimeSet, bound: u64) -> Vec<BigRational> {
    let denoms: Vec<u64> = (1..=bound.max(1)).filter(|&d| s.supports(&d.into())).collect();
    let b = bound as i64;
    let mut out: Vec<BigRational> = denoms
        .iter()
        .flat_map(|&d| (-b..=b).map(move |a| BigRational::new(a.into(), d.into())))
        .collect();
    out.sort_by_key(search_key);
    out.dedup();
    out
}

/// S-units `±u/v` with `u, v` S-supported, coprime, at most `bound`.
fn units(s: &SPrimeSet, bound: u64) -> Vec<BigRational> {
    let supported: Vec<u64> = (1..=bound.max(1)).filter(|&d| s.supports(&d.into())).collect();
    let mut out = Vec::new();
    for &u in &supported {
        for &v in &supported {
            if u.gcd(&v) == 1 {
                for sign in [1i64, -1] {
                    out.push(BigRational::new((sign * u as i64).into(), v.into()));
                }
            }
        }
    }
    out.sort_by_key(search_key);
    out
}

fn eval_rational(f: &BinaryForm, x: &BigRational, y: &BigRational) -> BigRational {
    let n = f.degree();
    let mut acc = BigRational::zero();
    for (j, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc += BigRational::from_integer(c.clone()) * num_traits::pow(x.clone(), n - j)
                * num_traits::pow(y.clone(), j);
        }
    }
    acc
}

/// Searches for `gamma . f = lambda g` with entries of height at most `bound`
/// (numerator and S-supported denominator) and `lambda` of height at most
/// `bound`. Returns the witness of least `(height(gamma), height(lambda))`.
/// `None` means no witness within the bound, not inequivalence.
///
/// The rows of `gamma` are constrained by `f(row 1) = lambda g(1, 0)` and
/// `f(row 2) = lambda g(0, 1)`, so rows are bucketed by the value of `f`.
pub fn equivalent(f: &BinaryForm, g: &BinaryForm, s: &SPrimeSet, bound: u64) -> Result<Option<Equivalence>> {
    if !discriminant_classes_match(f, g, s)? {
        return Ok(None);
    }
    let e = entries(s, bound);
    let mut by_value: HashMap<BigRational, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..e.len() {
        for j in 0..e.len() {
            if e[i].is_zero() && e[j].is_zero() {
                continue;
            }
            by_value.entry(eval_rational(f, &e[i], &e[j])).or_default().push((i, j));
        }
    }
    let g_top = BigRational::from_integer(g.coeffs()[0].clone());
    let g_bottom = BigRational::from_integer(g.coeffs()[g.degree()].clone());
    let empty = Vec::new();
    let mut best: Option<(BigInt, BigInt, Equivalence)> = None;
    for lambda in units(s, bound) {
        let hl = height(&lambda);
        let rows1 = by_value.get(&(&lambda * &g_top)).unwrap_or(&empty);
        let rows2 = by_value.get(&(&lambda * &g_bottom)).unwrap_or(&empty);
        for &(i1, j1) in rows1 {
            for &(i2, j2) in rows2 {
                let hg = [i1, j1, i2, j2].iter().map(|&k| height(&e[k])).max().unwrap();
                if best.as_ref().is_some_and(|(bg, bl, _)| (&hg, &hl) >= (bg, bl)) {
                    continue;
                }
                let m = [e[i1].clone(), e[j1].clone(), e[i2].clone(), e[j2].clone()];
                let Ok(gamma) = GL2ZS::new(m, s.clone()) else { continue };
                let w = Equivalence { gamma, lambda: lambda.clone() };
                if w.verify(f, g) {
                    best = Some((hg, hl.clone(), w));
                }
            }
        }
    }
    Ok(best.map(|(_, _, w)| w))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Partition of `forms` into classes under `equivalent(., ., s, bound)`.
/// Forms with the same S-canonical scaling, and for quadratics the same
/// SL2(Z)-reduced form, are merged without search; the remaining classes are
/// compared pairwise through one representative each. Orbits are listed by
/// first member, members in input order.
pub fn orbit_partition(forms: &[BinaryForm], s: &SPrimeSet, bound: u64) -> Result<Vec<Vec<BinaryForm>>> {
    if let Some(f) = forms.first() {
        if forms.iter().any(|g| g.degree() != f.degree()) {
            return domain("all forms must have the same degree");
        }
    }
    let mut uf = UnionFind::new(forms.len());
    let mut bucket: BTreeMap<BinaryForm, usize> = BTreeMap::new();
    for (i, f) in forms.iter().enumerate() {
        let key = if f.degree() == 2 && !discriminant(f)?.is_zero() {
            gauss_reduce_quadratic(&f.canonical(s))?.canonical(s)
        } else {
            f.canonical(s)
        };
        match bucket.get(&key) {
            Some(&j) => {
                uf.union(i, j);
            }
            None => {
                bucket.insert(key, i);
            }
        }
    }
    let mut reps: Vec<usize> = bucket.into_values().collect();
    reps.sort_unstable();
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            let (i, j) = (reps[a], reps[b]);
            if uf.find(i) == uf.find(j) {
                continue;
            }
            if equivalent(&forms[i], &forms[j], s, bound)?.is_some() {
                uf.union(i, j);
            }
        }
    }
    let mut orbits: BTreeMap<usize, Vec<BinaryForm>> = BTreeMap::new();
    for (i, f) in forms.iter().enumerate() {
        orbits.entry(uf.find(i)).or_default().push(f.clone());
    }
    Ok(orbits.into_values().collect())
}
