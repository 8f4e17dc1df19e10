//! Primality testing and integer splitting.
//!
//! Miller-Rabin with the first thirteen prime bases is deterministic below
//! 3.3 * 10^24. Above that bound a strong Lucas test is added, which makes the
//! check a Baillie-PSW test (no known counterexample).

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Trial division ceiling.
pub const TRIAL_LIMIT: u32 = 1_000_000;

const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// 3_317_044_064_679_887_385_961_981: the first-13-bases Miller-Rabin bound.
fn mr_deterministic_bound() -> &'static BigUint {
    static BOUND: OnceLock<BigUint> = OnceLock::new();
    BOUND.get_or_init(|| BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap())
}

/// Primes below [`TRIAL_LIMIT`], ascending.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.then_some(i as u32))
            .collect()
    })
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let n128 = n as u128;
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    let pow = |mut b: u128, mut e: u64| {
        let mut r = 1u128;
        b %= n128;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % n128;
            }
            b = b * b % n128;
            e >>= 1;
        }
        r
    };
    // These twelve bases are deterministic for every 64-bit input.
    'outer: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n128 - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n128;
            if x == n128 - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !miller_rabin(n, &MR_BASES) {
        return false;
    }
    if n < mr_deterministic_bound() {
        return true;
    }
    strong_lucas(&BigInt::from(n.clone()))
}

fn miller_rabin(n: &BigUint, bases: &[u32]) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'outer: for &a in bases {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&BigInt::from(4)) == three && n.mod_floor(&BigInt::from(4)) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigInt) -> bool {
    let root = n.sqrt();
    if &(&root * &root) == n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 => {
                if d.magnitude() != n.magnitude() {
                    return false;
                }
            }
            _ => {}
        }
        d = if d.sign() == Sign::Minus { -d + 2u32 } else { -(d + 2u32) };
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let half = |x: BigInt| -> BigInt {
        let x: BigInt = if x.is_odd() { x + n } else { x };
        (x >> 1u32).mod_floor(n)
    };

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let odd = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(n);
    let bits = odd.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if odd.bit(i) {
            let nu = half(&p * &u + &v);
            let nv = half(&d * &u + &p * &v);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Finds a nontrivial divisor of an odd composite `n` (Brent's variant of
/// Pollard rho, deterministic sequence of increments).
pub fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let m: u64 = 64;
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!("increment sequence is unbounded")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u64_primality_matches_sieve() {
        let sieve = small_primes();
        let mut idx = 0;
        for n in 0..20_000u64 {
            let expected = idx < sieve.len() && sieve[idx] as u64 == n;
            if expected {
                idx += 1;
            }
            assert_eq!(is_prime_u64(n), expected, "n = {n}");
        }
    }

    #[test]
    fn large_primes_and_pseudoprimes() {
        // 2^89 - 1 and 2^127 - 1 are Mersenne primes.
        let m89 = (BigUint::one() << 89) - 1u32;
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m89 * &m127)));
        // Strong pseudoprime to every base up to 37.
        let psp = BigUint::parse_bytes(b"318665857834031151167461", 10).unwrap();
        assert!(!is_prime(&psp));
        // Carmichael number.
        assert!(!is_prime_u64(561));
    }

    #[test]
    fn lucas_rejects_composites_above_bound() {
        let p = BigUint::parse_bytes(b"1000000000000000000000007", 10).unwrap();
        let q = BigUint::parse_bytes(b"1000000000000000000000013", 10).unwrap();
        assert!(!strong_lucas(&BigInt::from(&p * &q)));
    }

    #[test]
    fn rho_splits_semiprime() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        let d = pollard_brent(&n);
        assert!(d > BigUint::one() && d < n);
        assert!((&n % &d).is_zero());
    }
}
