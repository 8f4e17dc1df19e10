//! Binary n-ic forms with integer coefficients.
//!
//! A form of degree n is stored as `[a_n, ..., a_0]` for
//! `f(x, y) = sum a_i x^i y^(n-i)`; entry `j` is the coefficient of
//! `x^(n-j) y^j`. GL2 acts by row substitution, `(gamma . f)(x, y) =
//! f((x, y) gamma)`, so with `gamma = [[a, b], [c, d]]` the variables become
//! `x -> a x + c y` and `y -> b x + d y`. Under this convention
//! `roots(gamma . f) = (gamma^-1)^T . roots(f)` for the column action on
//! points.

mod dictionary;
mod enumerate;
mod equivalence;
mod quadratic;
mod reduction;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::json::{to_json_ints, JsonInt};
use crate::projective::GL2ZS;
use crate::sarith::{is_s_unit_int, s_part_split, SPrimeSet};

pub use dictionary::{config_to_form, factor_over_q, roots_config};
pub use enumerate::enumerate_omega_forms;
pub use equivalence::{discriminant_classes_match, equivalent, orbit_partition, Equivalence};
pub use quadratic::{field_disc_quadratic, gauss_reduce_quadratic};
pub use reduction::{reduce_form_mod_p, FactorModP, FactorPatternModP};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<JsonInt>", into = "Vec<JsonInt>")]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    /// Coefficients `[a_n, ..., a_0]`; degree is `len - 1 >= 1` and not every
    /// coefficient may vanish.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return domain("a binary form needs degree at least 1");
        }
        if coeffs.iter().all(Zero::is_zero) {
            return domain("the zero form is excluded");
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i y^(n-i)`.
    pub fn a(&self, i: usize) -> &BigInt {
        &self.coeffs[self.degree() - i]
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(Signed::abs).max().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let n = self.degree();
        let mut acc = BigInt::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            acc += c * x.pow((n - j) as u32) * y.pow(j as u32);
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn sign_normalized(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
        if coeffs.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
            for c in &mut coeffs {
                *c = -&*c;
            }
        }
        coeffs
    }

    /// Content divided out, first nonzero coefficient positive.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        Self { coeffs: Self::sign_normalized(self.coeffs.iter().map(|c| c / &g).collect()) }
    }

    /// Representative of the orbit of `f` under multiplication by S-units:
    /// the S-part of the content is divided out and the first nonzero
    /// coefficient made positive.
    pub fn canonical(&self, s: &SPrimeSet) -> Self {
        let (s_part, _) = s_part_split(&self.content(), s).expect("nonzero form has nonzero content");
        Self { coeffs: Self::sign_normalized(self.coeffs.iter().map(|c| c / &s_part).collect()) }
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// `f(z, 1)` as a little-endian univariate polynomial.
    pub(crate) fn dehomogenize(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Product of two forms.
    pub fn mul(&self, other: &Self) -> Self {
        Self { coeffs: hom_mul(&self.coeffs, &other.coeffs) }
    }
}

impl TryFrom<Vec<BigInt>> for BinaryForm {
    type Error = Error;

    fn try_from(v: Vec<BigInt>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<BinaryForm> for Vec<BigInt> {
    fn from(f: BinaryForm) -> Self {
        f.coeffs
    }
}

impl TryFrom<Vec<JsonInt>> for BinaryForm {
    type Error = Error;

    fn try_from(v: Vec<JsonInt>) -> Result<Self> {
        Self::new(v.into_iter().map(BigInt::try_from).collect::<Result<_>>()?)
    }
}

impl From<BinaryForm> for Vec<JsonInt> {
    fn from(f: BinaryForm) -> Self {
        to_json_ints(&f.coeffs)
    }
}

impl FromStr for BinaryForm {
    type Err = Error;

    /// Coefficient list `[a_n, ..., a_0]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [a_n, ..., a_0], got {s:?}")))?;
        let coeffs = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for BinaryForm {
    /// Coefficient-list syntax; the alternate flag `{:#}` prints a polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !f.alternate() {
            let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
            return write!(f, "[{}]", parts.join(", "));
        }
        let n = self.degree();
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (px, py) = (n - j, j);
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            let mono = |v: &str, e: usize| match e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            out.push_str(&mono("x", px));
            out.push_str(&mono("y", py));
            if mag.is_one() && px == 0 && py == 0 {
                out.push('1');
            }
        }
        write!(f, "{out}")
    }
}

/// A form up to S-unit scaling, held through its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormClass {
    pub representative: BinaryForm,
    pub s: SPrimeSet,
}

impl FormClass {
    pub fn new(f: &BinaryForm, s: &SPrimeSet) -> Self {
        Self { representative: f.canonical(s), s: s.clone() }
    }
}

/// Product of homogeneous coefficient vectors (index = power of y).
pub(crate) fn hom_mul<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Zero + for<'x> std::ops::AddAssign<&'x T>,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    let mut v = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += &(x * y);
        }
    }
    v
}

/// Exact coefficients of `gamma . f` in Z_S.
pub fn act_exact(gamma: &GL2ZS, f: &BinaryForm) -> Vec<BigRational> {
    let m = gamma.entries();
    // x -> m11 x + m21 y, y -> m12 x + m22 y.
    let lx = [m[0].clone(), m[2].clone()];
    let ly = [m[1].clone(), m[3].clone()];
    let n = f.degree();
    let mut xpow = vec![vec![BigRational::one()]];
    let mut ypow = vec![vec![BigRational::one()]];
    for i in 0..n {
        xpow.push(hom_mul(&xpow[i], &lx));
        ypow.push(hom_mul(&ypow[i], &ly));
    }
    let mut out = vec![BigRational::zero(); n + 1];
    for (j, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = BigRational::from_integer(c.clone());
        let term = hom_mul(&xpow[n - j], &ypow[j]);
        for (o, t) in out.iter_mut().zip(term) {
            *o += &c * t;
        }
    }
    out
}

/// `gamma . f`, multiplied by the least positive integer clearing the
/// denominators (an S-unit; it is 1 for integral `gamma`).
pub fn act(gamma: &GL2ZS, f: &BinaryForm) -> BinaryForm {
    let exact = act_exact(gamma, f);
    let l = exact.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let coeffs = exact
        .into_iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    BinaryForm::new(coeffs).expect("invertible substitution keeps the form nonzero")
}

/// Sylvester resultant of two little-endian polynomials taken with their
/// formal degrees `len - 1`.
pub(crate) fn resultant(p: &[BigInt], q: &[BigInt]) -> BigInt {
    let (dp, dq) = (p.len() - 1, q.len() - 1);
    let size = dp + dq;
    let mut rows = Vec::with_capacity(size);
    for i in 0..dq {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..dp {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    crate::linalg::det(rows)
}

/// Discriminant, normalized so that
/// `disc(c * prod(beta_i x - alpha_i y)) = c^(2n-2) prod_{i<j} (alpha_i beta_j - alpha_j beta_i)^2`;
/// this gives `b^2 - 4ac` for quadratics and the classical cubic formula.
///
/// A unimodular shear first makes the `x^n` coefficient nonzero; then
/// `disc = (-1)^(n(n-1)/2) Res(p, p') / lc(p)` for `p(z) = f(z, 1)`.
pub fn discriminant(f: &BinaryForm) -> Result<BigInt> {
    let n = f.degree();
    if n < 2 {
        return domain("discriminant needs degree at least 2");
    }
    let g = if f.coeffs[0].is_zero() {
        // f(1, t) is a nonzero polynomial in t of degree <= n.
        let t = (1..=n as i64)
            .find(|&t| !f.eval(&BigInt::one(), &BigInt::from(t)).is_zero())
            .expect("a nonzero form has a non-root among n + 1 values");
        let shear = GL2ZS::from_ints([1, t, 0, 1], SPrimeSet::empty()).expect("unimodular");
        act(&shear, f)
    } else {
        f.clone()
    };
    let p = g.dehomogenize();
    let dp: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    let res = resultant(&p, &dp);
    let lc = p.last().unwrap();
    let (q, r) = res.div_rem(lc);
    debug_assert!(r.is_zero());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

/// Membership of the form in the set of degree-n forms with S-unit
/// discriminant and S-unit content: the root configuration stays
/// n-element modulo every prime outside S.
pub fn is_omega_form(f: &BinaryForm, s: &SPrimeSet) -> Result<bool> {
    let d = discriminant(f)?;
    if d.is_zero() {
        return Ok(false);
    }
    Ok(is_s_unit_int(&d, s)? && is_s_unit_int(&f.content(), s)?)
}
