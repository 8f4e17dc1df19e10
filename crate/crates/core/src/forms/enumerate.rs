//! Exhaustive enumeration of forms with S-unit discriminant.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{capacity, Result};
use crate::sarith::{is_s_unit_int, SPrimeSet};

use super::{discriminant, BinaryForm};

/// Largest number of coefficient vectors scanned in one call.
pub const ENUMERATION_LIMIT: u128 = 4_000_000_000;

fn strip_s(mut d: i128, s: &SPrimeSet) -> i128 {
    for &p in s.primes() {
        let p = p as i128;
        while d % p == 0 {
            d /= p;
        }
    }
    d
}

fn disc_small(c: &[i64]) -> Option<i128> {
    let c: Vec<i128> = c.iter().map(|&x| x as i128).collect();
    match c.len() {
        3 => Some(c[1] * c[1] - 4 * c[0] * c[2]),
        4 => {
            let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
            Some(
                18 * a * b * cc * d - 4 * b * b * b * d + b * b * cc * cc
                    - 4 * a * cc * cc * cc
                    - 27 * a * a * d * d,
            )
        }
        _ => None,
    }
}

fn accept(c: &[i64], s: &SPrimeSet, small: bool) -> bool {
    if c.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
        return false;
    }
    if small {
        if let Some(d) = disc_small(c) {
            return d != 0 && strip_s(d, s).abs() == 1;
        }
    }
    let f = BinaryForm::from_i64(c).expect("primitive vectors are nonzero");
    let d = discriminant(&f).expect("degree >= 2");
    d != BigInt::from(0) && is_s_unit_int(&d, s).expect("nonzero")
}

/// All primitive degree-`n` forms with coefficients in `[-height, height]`,
/// first nonzero coefficient positive, and S-unit discriminant. Each class
/// under S-unit scaling contributes its canonical representative, which
/// these conditions single out. Output is in lexicographic order of
/// `[a_n, ..., a_0]`.
pub fn enumerate_omega_forms(n: usize, s: &SPrimeSet, height: u64) -> Result<Vec<BinaryForm>> {
    if n < 2 {
        return crate::error::domain("degree must be at least 2");
    }
    let side = 2 * height as u128 + 1;
    if side.checked_pow(n as u32 + 1).is_none_or(|t| t > ENUMERATION_LIMIT) {
        return capacity(format!("{side}^{} coefficient vectors exceed the scan limit", n + 1));
    }
    if height == 0 {
        return Ok(Vec::new());
    }
    let h = height as i64;
    let small = height <= 1_000_000;
    // Split the scan over the two leading coefficients; rayon preserves the
    // order of the collected chunks.
    let heads: Vec<(i64, i64)> = (-h..=h).flat_map(|a| (-h..=h).map(move |b| (a, b))).collect();
    let chunks: Vec<Vec<Vec<i64>>> = heads
        .par_iter()
        .map(|&(a, b)| {
            let mut out = Vec::new();
            if a < 0 || (a == 0 && b < 0) {
                return out;
            }
            let mut c = vec![-h; n + 1];
            c[0] = a;
            c[1] = b;
            loop {
                let first = c.iter().find(|&&x| x != 0).copied().unwrap_or(0);
                if first > 0 && accept(&c, s, small) {
                    out.push(c.clone());
                }
                // Odometer over the tail.
                let mut k = n;
                loop {
                    if k < 2 {
                        return out;
                    }
                    if c[k] < h {
                        c[k] += 1;
                        break;
                    }
                    c[k] = -h;
                    k -= 1;
                }
            }
        })
        .collect();
    chunks
        .into_iter()
        .flatten()
        .map(|c| BinaryForm::from_i64(&c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::is_omega_form;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c).unwrap()
    }

    #[test]
    fn examples() {
        let empty = SPrimeSet::empty();
        let q1 = enumerate_omega_forms(2, &empty, 1).unwrap();
        assert!(q1.contains(&form(&[0, 1, 0])));
        assert!(q1.contains(&form(&[1, 1, 0])));
        for f in &q1 {
            assert_eq!(discriminant(f).unwrap(), BigInt::from(1));
        }
        assert!(enumerate_omega_forms(2, &empty, 0).unwrap().is_empty());
        assert!(enumerate_omega_forms(3, &empty, 2).unwrap().contains(&form(&[0, 1, 1, 0])));
        assert!(enumerate_omega_forms(1, &empty, 2).is_err());
        assert!(matches!(enumerate_omega_forms(2, &empty, 1 << 40), Err(crate::Error::Capacity(_))));
    }

    /// Independent filter: every vector through `is_omega_form` and the
    /// canonical scaling, sorted and deduplicated.
    #[test]
    fn matches_brute_force() {
        for (n, s, h) in [(2, "", 3), (2, "2,3", 3), (3, "", 2), (3, "2", 2), (4, "2", 1)] {
            let s: SPrimeSet = s.parse().unwrap();
            let h = h as i64;
            let mut expected = std::collections::BTreeSet::new();
            let total = (2 * h + 1).pow(n as u32 + 1);
            for idx in 0..total {
                let mut k = idx;
                let c: Vec<i64> = (0..=n)
                    .map(|_| {
                        let v = k % (2 * h + 1) - h;
                        k /= 2 * h + 1;
                        v
                    })
                    .collect();
                let Ok(f) = BinaryForm::from_i64(&c) else { continue };
                if is_omega_form(&f, &s).unwrap() {
                    expected.insert(f.canonical(&s));
                }
            }
            let got = enumerate_omega_forms(n, &s, h as u64).unwrap();
            let mut sorted = got.clone();
            sorted.sort();
            assert_eq!(got, sorted);
            assert_eq!(got.into_iter().collect::<std::collections::BTreeSet<_>>(), expected);
        }
    }
}
