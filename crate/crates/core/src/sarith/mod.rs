//! Exact integer and rational arithmetic relative to a finite prime set S.

pub mod primality;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use primality::{is_prime, is_prime_u64, small_primes, TRIAL_LIMIT};

/// A finite set of rational primes, sorted ascending without duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct SPrimeSet {
    primes: Vec<u64>,
}

impl SPrimeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds the set, sorting and dropping repeated entries. Every entry must
    /// be prime.
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        if let Some(bad) = primes.iter().find(|&&p| !is_prime_u64(p)) {
            return domain(format!("{bad} is not prime"));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(Self { primes })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn contains_big(&self, p: &BigUint) -> bool {
        p.to_u64().is_some_and(|p| self.contains(p))
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    /// True when every prime factor of `n` lies in S.
    pub fn supports(&self, n: &BigUint) -> bool {
        strip_primes(n.clone(), &self.primes).is_one()
    }
}

impl TryFrom<Vec<u64>> for SPrimeSet {
    type Error = Error;

    fn try_from(primes: Vec<u64>) -> Result<Self> {
        Self::new(primes)
    }
}

impl From<SPrimeSet> for Vec<u64> {
    fn from(s: SPrimeSet) -> Self {
        s.primes
    }
}

impl FromStr for SPrimeSet {
    type Err = Error;

    /// Comma separated primes; the empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let primes = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad prime {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(primes)
    }
}

impl fmt::Display for SPrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Divides every prime of `primes` out of `n`.
fn strip_primes(mut n: BigUint, primes: &[u64]) -> BigUint {
    for &p in primes {
        let p = BigUint::from(p);
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            n = q;
        }
    }
    n
}

/// Signed prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn recompose(&self) -> BigInt {
        let mag = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        let sign = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, mag)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Exact prime factorization: trial division to 10^6, then Miller-Rabin /
/// Baillie-PSW on the cofactor and Pollard-Brent rho to split composites.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return domain("cannot factor zero");
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    if !m.is_one() {
        let mut large = Vec::new();
        split_cofactor(m, &mut large);
        large.sort();
        for p in large {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    Ok(Factorization { sign, factors })
}

fn split_cofactor(m: BigUint, out: &mut Vec<BigUint>) {
    if m.is_one() {
        return;
    }
    if is_prime(&m) {
        out.push(m);
        return;
    }
    let d = primality::pollard_brent(&m);
    let other = &m / &d;
    split_cofactor(d, out);
    split_cofactor(other, out);
}

/// Distinct prime divisors of a nonzero integer, ascending.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<BigUint>> {
    Ok(factorize(n)?.factors.into_iter().map(|(p, _)| p).collect())
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> Result<i64> {
    if n.is_zero() {
        return domain("valuation of zero");
    }
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    let mut m = n.magnitude().clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

/// Exponent of `p` in a nonzero rational; negative when `p` divides the
/// denominator.
pub fn valuation(n: &BigRational, p: u64) -> Result<i64> {
    if n.is_zero() {
        return domain("valuation of zero");
    }
    Ok(valuation_int(n.numer(), p)? - valuation_int(n.denom(), p)?)
}

/// True iff `n` has zero valuation at every prime outside S.
pub fn is_s_unit(n: &BigRational, s: &SPrimeSet) -> Result<bool> {
    if n.is_zero() {
        return domain("zero is not a unit");
    }
    Ok(s.supports(n.numer().magnitude()) && s.supports(n.denom().magnitude()))
}

pub fn is_s_unit_int(n: &BigInt, s: &SPrimeSet) -> Result<bool> {
    if n.is_zero() {
        return domain("zero is not a unit");
    }
    Ok(s.supports(n.magnitude()))
}

/// Splits `n = s_part * coprime_part` with `s_part > 0` supported on S and
/// `coprime_part` (carrying the sign) coprime to every prime of S.
pub fn s_part_split(n: &BigInt, s: &SPrimeSet) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return domain("cannot split zero");
    }
    let coprime = strip_primes(n.magnitude().clone(), s.primes());
    let s_part = n.magnitude() / &coprime;
    let sign = if n.is_negative() { Sign::Minus } else { Sign::Plus };
    Ok((BigInt::from(s_part), BigInt::from_biguint(sign, coprime)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&big(12)).unwrap();
        assert_eq!((f.sign, pairs(&f)), (1, vec![(2, 2), (3, 1)]));
        let f = factorize(&big(-1)).unwrap();
        assert_eq!((f.sign, pairs(&f)), (-1, vec![]));
        let f = factorize(&big(21504)).unwrap();
        assert_eq!(pairs(&f), vec![(2, 10), (3, 1), (7, 1)]);
        assert_eq!(f.recompose(), big(1 << 10) * 3 * 7);
        assert!(matches!(factorize(&big(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_large_cofactors() {
        // Product of two primes above the trial-division limit.
        let n = big(1_000_003) * big(1_000_033) * big(999_983);
        let f = factorize(&n).unwrap();
        assert_eq!(f.recompose(), n);
        assert_eq!(f.factors.len(), 3);
        let m127 = (BigInt::one() << 127u32) - 1u32;
        let f = factorize(&(&m127 * 6)).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.factors[2].0, m127.magnitude().clone());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(8, 1), 2).unwrap(), 3);
        assert_eq!(valuation(&rat(3, 4), 2).unwrap(), -2);
        assert_eq!(valuation(&rat(1, 1), 5).unwrap(), 0);
        assert!(valuation(&rat(0, 1), 5).is_err());
    }

    #[test]
    fn s_unit_examples() {
        let s23: SPrimeSet = "2,3".parse().unwrap();
        let s2: SPrimeSet = "2".parse().unwrap();
        assert!(is_s_unit(&rat(-1, 1), &SPrimeSet::empty()).unwrap());
        assert!(is_s_unit(&rat(12, 1), &s23).unwrap());
        assert!(!is_s_unit(&rat(12, 1), &s2).unwrap());
        assert!(is_s_unit(&rat(-3, 8), &s23).unwrap());
        assert!(!is_s_unit(&rat(1, 5), &s23).unwrap());
        assert!(is_s_unit(&rat(0, 1), &s23).is_err());
    }

    #[test]
    fn split_examples() {
        let s2: SPrimeSet = "2".parse().unwrap();
        let s23: SPrimeSet = "2,3".parse().unwrap();
        let s25: SPrimeSet = "2,5".parse().unwrap();
        assert_eq!(s_part_split(&big(24), &s2).unwrap(), (big(8), big(3)));
        assert_eq!(s_part_split(&big(7), &s23).unwrap(), (big(1), big(7)));
        assert_eq!(s_part_split(&big(-360), &s25).unwrap(), (big(40), big(-9)));
        assert!(s_part_split(&big(0), &s2).is_err());
    }

    #[test]
    fn prime_set_parsing() {
        assert!("".parse::<SPrimeSet>().unwrap().is_empty());
        assert_eq!("5, 2,5".parse::<SPrimeSet>().unwrap().primes(), &[2, 5]);
        assert!(matches!("4".parse::<SPrimeSet>(), Err(Error::Domain(_))));
        assert!(matches!("x".parse::<SPrimeSet>(), Err(Error::Parse(_))));
        assert_eq!("{3,2}".parse::<SPrimeSet>().unwrap().to_string(), "{2,3}");
    }

    fn small_set() -> impl Strategy<Value = SPrimeSet> {
        proptest::sample::subsequence(vec![2u64, 3, 5, 7, 11, 13], 0..=3)
            .prop_map(|v| SPrimeSet::new(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn factorization_recomposes(n in (-1_000_000_000_000i64..=1_000_000_000_000).prop_filter("nonzero", |n| *n != 0)) {
            let f = factorize(&big(n)).unwrap();
            prop_assert_eq!(f.recompose(), big(n));
            for (p, e) in &f.factors {
                prop_assert!(is_prime(p));
                prop_assert!(*e >= 1);
            }
            prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    proptest! {
        #[test]
        fn s_unit_is_multiplicative(a in 1i64..5000, b in 1i64..5000, sa in any::<bool>(), s in small_set()) {
            let a = if sa { -a } else { a };
            let ab = rat(a * b, 1);
            prop_assert_eq!(
                is_s_unit(&ab, &s).unwrap(),
                is_s_unit(&rat(a, 1), &s).unwrap() && is_s_unit(&rat(b, 1), &s).unwrap()
            );
        }

        #[test]
        fn valuation_is_additive(an in 1i64..10000, ad in 1i64..100, bn in 1i64..10000, bd in 1i64..100, p in proptest::sample::select(vec![2u64, 3, 5, 7])) {
            let a = rat(an, ad);
            let b = rat(bn, bd);
            prop_assert_eq!(
                valuation(&(&a * &b), p).unwrap(),
                valuation(&a, p).unwrap() + valuation(&b, p).unwrap()
            );
        }

        #[test]
        fn split_recomposes(n in (-10_000_000i64..=10_000_000).prop_filter("nonzero", |n| *n != 0), s in small_set()) {
            let (sp, cp) = s_part_split(&big(n), &s).unwrap();
            prop_assert_eq!(&sp * &cp, big(n));
            prop_assert!(s.supports(sp.magnitude()));
            for &p in s.primes() {
                prop_assert!(!(cp.magnitude() % p).is_zero());
            }
        }
    }
}
