//! Points and finite configurations on the rational projective line, the
//! coordinate reduction map modulo a prime, and the action of GL2 over the
//! S-integers.
//!
//! Matrices act on points through column vectors:
//! `[[a, b], [c, d]] . [x : y] = [a x + b y : c x + d y]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::sarith::{factorize, is_prime_u64, is_s_unit, is_s_unit_int, SPrimeSet};

/// A point `[a : b]` of P^1(Q) with coprime integer coordinates, `b > 0` or
/// `[1 : 0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ProjPoint {
    a: BigInt,
    b: BigInt,
}

impl ProjPoint {
    /// Divides out the gcd and applies the sign rule.
    pub fn normalize(a: BigInt, b: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return domain("[0 : 0] is not a point");
        }
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / &g, b / &g);
        if b.is_negative() || (b.is_zero() && a.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(Self { a, b })
    }

    pub fn new(a: i64, b: i64) -> Result<Self> {
        Self::normalize(BigInt::from(a), BigInt::from(b))
    }

    pub fn infinity() -> Self {
        Self { a: BigInt::one(), b: BigInt::zero() }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    /// Largest absolute coordinate.
    pub fn height(&self) -> BigInt {
        self.a.abs().max(self.b.abs())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.b)
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected a:b, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
        };
        Self::normalize(parse(a)?, parse(b)?)
    }
}

impl TryFrom<String> for ProjPoint {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ProjPoint> for String {
    fn from(p: ProjPoint) -> Self {
        p.to_string()
    }
}

/// A nonempty set of distinct points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<ProjPoint>", into = "Vec<ProjPoint>")]
pub struct PointConfig {
    points: BTreeSet<ProjPoint>,
}

impl PointConfig {
    /// Rejects empty input and repeated points.
    pub fn new(points: impl IntoIterator<Item = ProjPoint>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in points {
            if !set.insert(p.clone()) {
                return domain(format!("point {p} repeated"));
            }
        }
        if set.is_empty() {
            return domain("configuration must be nonempty");
        }
        Ok(Self { points: set })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &ProjPoint> + '_ {
        self.points.iter()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    fn pairs(&self) -> impl Iterator<Item = (&ProjPoint, &ProjPoint)> + '_ {
        let pts: Vec<&ProjPoint> = self.points.iter().collect();
        (0..pts.len()).flat_map(move |i| {
            let pts = pts.clone();
            (i + 1..pts.len()).map(move |j| (pts[i], pts[j]))
        })
    }
}

impl TryFrom<Vec<ProjPoint>> for PointConfig {
    type Error = Error;

    fn try_from(v: Vec<ProjPoint>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PointConfig> for Vec<ProjPoint> {
    fn from(c: PointConfig) -> Self {
        c.points.into_iter().collect()
    }
}

impl fmt::Display for PointConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl FromStr for PointConfig {
    type Err = Error;

    /// Accepts `{a:b, c:d}` or the bare list `a:b,c:d`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let points = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<ProjPoint>>>()?;
        Self::new(points)
    }
}

/// A point of P^1(F_p), scaled so the first nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjPointModP {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

impl ProjPointModP {
    pub fn new(a: u64, b: u64, p: u64) -> Result<Self> {
        let (a, b) = (a % p, b % p);
        if a == 0 && b == 0 {
            return domain("[0 : 0] is not a point");
        }
        let lead = if a != 0 { a } else { b };
        let inv = inv_mod(lead, p);
        Ok(Self { p, a: mul_mod(a, inv, p), b: mul_mod(b, inv, p) })
    }

    /// Applies an integer matrix mod p.
    pub fn apply(&self, m: [u64; 4]) -> Result<Self> {
        let p = self.p;
        let x = (mul_mod(m[0], self.a, p) + mul_mod(m[1], self.b, p)) % p;
        let y = (mul_mod(m[2], self.a, p) + mul_mod(m[3], self.b, p)) % p;
        Self::new(x, y, p)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn big_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn rational_mod(r: &BigRational, p: u64) -> Option<u64> {
    let d = big_mod(r.denom(), p);
    (d != 0).then(|| mul_mod(big_mod(r.numer(), p), inv_mod(d, p), p))
}

/// An element of GL2(Z_S): rational entries with S-supported denominators and
/// an S-unit determinant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GL2ZS {
    m: [BigRational; 4],
    s: SPrimeSet,
}

impl GL2ZS {
    /// Entries in row-major order `m11, m12, m21, m22`.
    pub fn new(m: [BigRational; 4], s: SPrimeSet) -> Result<Self> {
        for e in &m {
            if !s.supports(e.denom().magnitude()) {
                return domain(format!("entry {e} is not an S-integer for S = {s}"));
            }
        }
        let g = Self { m, s };
        let det = g.det();
        if det.is_zero() || !is_s_unit(&det, &g.s)? {
            return domain(format!("determinant {det} is not an S-unit"));
        }
        Ok(g)
    }

    pub fn from_ints(m: [i64; 4], s: SPrimeSet) -> Result<Self> {
        Self::new(m.map(|x| BigRational::from_integer(BigInt::from(x))), s)
    }

    pub fn identity(s: SPrimeSet) -> Self {
        Self::from_ints([1, 0, 0, 1], s).expect("identity is invertible")
    }

    pub fn entries(&self) -> &[BigRational; 4] {
        &self.m
    }

    pub fn primes(&self) -> &SPrimeSet {
        &self.s
    }

    pub fn det(&self) -> BigRational {
        &self.m[0] * &self.m[3] - &self.m[1] * &self.m[2]
    }

    pub fn is_integral(&self) -> bool {
        self.m.iter().all(|e| e.is_integer())
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.s != other.s {
            return domain("matrices over different prime sets");
        }
        let (a, b) = (&self.m, &other.m);
        Self::new(
            [
                &a[0] * &b[0] + &a[1] * &b[2],
                &a[0] * &b[1] + &a[1] * &b[3],
                &a[2] * &b[0] + &a[3] * &b[2],
                &a[2] * &b[1] + &a[3] * &b[3],
            ],
            self.s.clone(),
        )
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let m = &self.m;
        Self::new(
            [&m[3] / &d, -&m[1] / &d, -&m[2] / &d, &m[0] / &d],
            self.s.clone(),
        )
        .expect("inverse of an S-unimodular matrix is S-unimodular")
    }

    pub fn transpose(&self) -> Self {
        let m = &self.m;
        Self {
            m: [m[0].clone(), m[2].clone(), m[1].clone(), m[3].clone()],
            s: self.s.clone(),
        }
    }

    /// The matrix `(gamma^-1)^T` that carries roots of `f` to roots of
    /// `gamma . f` under the form action.
    pub fn inverse_transpose(&self) -> Self {
        self.inverse().transpose()
    }

    /// Reduction mod p, defined when every entry and the determinant are
    /// p-adic units or integral at p with unit determinant.
    pub fn reduce_mod(&self, p: u64) -> Option<[u64; 4]> {
        let det = rational_mod(&self.det(), p)?;
        if det == 0 {
            return None;
        }
        let r: Vec<u64> = self.m.iter().map(|e| rational_mod(e, p)).collect::<Option<_>>()?;
        Some([r[0], r[1], r[2], r[3]])
    }

    /// `[a : b] -> [m11 a + m12 b : m21 a + m22 b]`, denominators cleared.
    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        let a = BigRational::from_integer(p.a.clone());
        let b = BigRational::from_integer(p.b.clone());
        let x = &self.m[0] * &a + &self.m[1] * &b;
        let y = &self.m[2] * &a + &self.m[3] * &b;
        let l = x.denom().lcm(y.denom());
        let xi = (x * BigRational::from_integer(l.clone())).to_integer();
        let yi = (y * BigRational::from_integer(l)).to_integer();
        ProjPoint::normalize(xi, yi).expect("invertible matrix maps points to points")
    }
}

impl fmt::Display for GL2ZS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[[{}, {}], [{}, {}]]", m[0], m[1], m[2], m[3])
    }
}

/// `alpha beta' - alpha' beta` for the normalized representatives.
pub fn cross_det(p: &ProjPoint, q: &ProjPoint) -> BigInt {
    &p.a * &q.b - &q.a * &p.b
}

/// Reduction of the coprime pair `(a, b)` mod p.
pub fn reduce_point(point: &ProjPoint, p: u64) -> Result<ProjPointModP> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    ProjPointModP::new(big_mod(&point.a, p), big_mod(&point.b, p), p)
}

/// Membership in Omega_{n,Q}(P^1; S): the reductions of the points stay
/// pairwise distinct at every prime outside S. Two normalized points collide
/// mod p exactly when p divides their cross-determinant, so the test is that
/// every pairwise cross-determinant is an S-unit.
pub fn omega_member(a: &PointConfig, s: &SPrimeSet) -> bool {
    a.pairs().all(|(p, q)| {
        is_s_unit_int(&cross_det(p, q), s).expect("distinct points have nonzero cross-determinant")
    })
}

/// Primes at which some pair of points collides.
pub fn colliding_primes(a: &PointConfig) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for (p, q) in a.pairs() {
        let d = cross_det(p, q);
        let f = factorize(&d).expect("distinct points have nonzero cross-determinant");
        for prime in f.primes() {
            out.insert(prime.to_u64().expect("cross-determinant primes are desk scale"));
        }
    }
    out
}

/// Applies `gamma` to every point. The determinant condition is enforced when
/// the matrix is built.
pub fn apply_gl2(gamma: &GL2ZS, a: &PointConfig) -> PointConfig {
    PointConfig::new(a.points().map(|p| gamma.apply_point(p)))
        .expect("an invertible map is injective on points")
}
