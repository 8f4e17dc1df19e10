//! Factorization patterns of forms modulo a prime.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::poly::FpPoly;
use crate::projective::{big_mod, inv_mod};
use crate::sarith::primality::is_prime_u64;
use crate::sarith::valuation_int;

use super::BinaryForm;

/// One irreducible factor over F_p, as a homogeneous form `[c_d, ..., c_0]`
/// normalized so its first nonzero coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorModP {
    pub coeffs: Vec<u64>,
    pub mult: u32,
}

impl FactorModP {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPatternModP {
    pub p: u64,
    pub factors: Vec<FactorModP>,
}

impl FactorPatternModP {
    /// Sum of `degree * mult`.
    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|f| f.degree() * f.mult as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.mult == 1)
    }

    /// Sorted list of degrees with multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat(f.degree()).take(f.mult as usize))
            .collect();
        d.sort_unstable();
        d
    }
}

/// Factors `f` over F_p after dividing out the largest power of `p` in its
/// content, so that the reduction has full degree `n` as a binary form.
/// Factors of `y` record roots at infinity. Factors are sorted by degree and
/// then by coefficients.
pub fn reduce_form_mod_p(f: &BinaryForm, p: u64) -> Result<FactorPatternModP> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    let v = valuation_int(&f.content(), p)?;
    let pv = BigInt::from(p).pow(v as u32);
    let red: Vec<u64> = f.coeffs().iter().map(|c| big_mod(&(c / &pv), p)).collect();
    let n = red.len() - 1;
    let k = red.iter().take_while(|c| c.is_zero()).count();
    let mut factors = Vec::new();
    if k > 0 {
        factors.push(FactorModP { coeffs: vec![0, 1], mult: k as u32 });
    }
    // Remaining form has nonzero x^(n-k) coefficient; dehomogenize at y = 1.
    let g = FpPoly::new(p, red[k..].iter().rev().copied().collect());
    let lead = g.lead();
    let monic = g.scale(inv_mod(lead, p));
    for (u, m) in monic.factor() {
        // Monic in z, so the homogeneous form is monic in x.
        factors.push(FactorModP { coeffs: u.coeffs().iter().rev().copied().collect(), mult: m });
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs.cmp(&b.coeffs)));
    debug_assert_eq!(factors.iter().map(|f| f.degree() * f.mult as usize).sum::<usize>(), n);
    Ok(FactorPatternModP { p, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::discriminant;
    use proptest::prelude::*;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c).unwrap()
    }

    fn fac(coeffs: &[u64], mult: u32) -> FactorModP {
        FactorModP { coeffs: coeffs.to_vec(), mult }
    }

    #[test]
    fn examples() {
        let r = reduce_form_mod_p(&form(&[1, 0, -1]), 2).unwrap();
        assert_eq!(r.factors, vec![fac(&[1, 1], 2)]);
        let r = reduce_form_mod_p(&form(&[1, 0, -1]), 3).unwrap();
        assert_eq!(r.factors, vec![fac(&[1, 1], 1), fac(&[1, 2], 1)]);
        let r = reduce_form_mod_p(&form(&[1, 0, 1]), 3).unwrap();
        assert_eq!(r.factors, vec![fac(&[1, 0, 1], 1)]);
        // x y^2 mod 5: root at [0:1] once and at infinity twice.
        let r = reduce_form_mod_p(&form(&[0, 5, 1, 0]), 5).unwrap();
        assert_eq!(r.factors, vec![fac(&[0, 1], 2), fac(&[1, 0], 1)]);
        // Content divisible by p is removed first.
        let r = reduce_form_mod_p(&form(&[9, 0, 9]), 3).unwrap();
        assert_eq!(r.factors, vec![fac(&[1, 0, 1], 1)]);
        assert!(reduce_form_mod_p(&form(&[1, 0, 1]), 4).is_err());
        let json = serde_json::to_string(&reduce_form_mod_p(&form(&[1, 0, -1]), 3).unwrap()).unwrap();
        assert_eq!(json, r#"{"p":3,"factors":[{"coeffs":[1,1],"mult":1},{"coeffs":[1,2],"mult":1}]}"#);
    }

    proptest! {
        #[test]
        fn degree_and_squarefreeness(
            c in proptest::collection::vec(-40i64..=40, 2..=7),
            pi in 0usize..15,
        ) {
            prop_assume!(c.iter().any(|&x| x != 0));
            let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47][pi];
            let f = form(&c);
            let r = reduce_form_mod_p(&f, p).unwrap();
            prop_assert_eq!(r.total_degree(), f.degree());
            if f.degree() >= 2 {
                let primitive_at_p = valuation_int(&f.content(), p).unwrap() == 0;
                let d = discriminant(&f).unwrap();
                if primitive_at_p && !d.is_zero() {
                    prop_assert_eq!(r.is_squarefree(), valuation_int(&d, p).unwrap() == 0);
                }
            }
        }
    }
}
