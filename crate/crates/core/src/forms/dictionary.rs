//! Passage between squarefree split forms and their root configurations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::poly::zx;
use crate::projective::{PointConfig, ProjPoint};

use super::{discriminant, BinaryForm};

/// Irreducible factors over Q of a form without repeated factors, each
/// primitive with first nonzero coefficient positive. The content is dropped.
pub fn factor_over_q(f: &BinaryForm) -> Result<Vec<BinaryForm>> {
    if f.degree() >= 2 && discriminant(f)?.is_zero() {
        return domain(format!("form {f} has a repeated root"));
    }
    let c = f.coeffs();
    let lead_zeros = c.iter().take_while(|x| x.is_zero()).count();
    let trail_zeros = c.iter().rev().take_while(|x| x.is_zero()).count();
    let mut out = Vec::new();
    // y and x factors carry the roots [1:0] and [0:1].
    for _ in 0..lead_zeros {
        out.push(BinaryForm::from_i64(&[0, 1])?);
    }
    for _ in 0..trail_zeros {
        out.push(BinaryForm::from_i64(&[1, 0])?);
    }
    let middle = &c[lead_zeros..c.len() - trail_zeros];
    if middle.len() > 1 {
        // Little-endian in z = x/y.
        let p: Vec<BigInt> = middle.iter().rev().cloned().collect();
        for g in zx::factor_squarefree(&p) {
            let coeffs: Vec<BigInt> = g.into_iter().rev().collect();
            out.push(BinaryForm::new(coeffs)?.primitive());
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Root configuration of a squarefree form that splits over Q.
pub fn roots_config(f: &BinaryForm) -> Result<PointConfig> {
    let factors = factor_over_q(f)?;
    if factors.iter().any(|g| g.degree() > 1) {
        return Err(Error::NotSplit { degrees: factors.iter().map(BinaryForm::degree).collect() });
    }
    // b x - a y vanishes at [a:b].
    let roots = factors
        .iter()
        .map(|g| ProjPoint::normalize(-&g.coeffs()[1], g.coeffs()[0].clone()))
        .collect::<Result<Vec<_>>>()?;
    PointConfig::new(roots)
}

/// `prod (b_i x - a_i y)` over the points, primitive with first nonzero
/// coefficient positive.
pub fn config_to_form(a: &PointConfig) -> BinaryForm {
    let mut coeffs = vec![BigInt::one()];
    for p in a.points() {
        coeffs = super::hom_mul(&coeffs, &[p.b().clone(), -p.a()]);
    }
    debug_assert!(coeffs.iter().any(|c| !c.is_zero()));
    BinaryForm::new(coeffs).expect("degree >= 1, nonzero").primitive()
}
