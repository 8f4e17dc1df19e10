//! Reduction theory of binary quadratic forms under SL2(Z).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::projective::GL2ZS;
use crate::sarith::{factorize, SPrimeSet};

use super::{act, discriminant, factor_over_q, BinaryForm};

type Abc = (BigInt, BigInt, BigInt);

fn abc(f: &BinaryForm) -> Abc {
    let c = f.coeffs();
    (c[0].clone(), c[1].clone(), c[2].clone())
}

fn from_abc((a, b, c): Abc) -> BinaryForm {
    BinaryForm::new(vec![a, b, c]).expect("nonzero discriminant")
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &(&r * &r) == n
    }
}

/// Positive definite reduction: `|b| <= a <= c`, `b >= 0` when `|b| = a` or
/// `a = c`.
fn reduce_definite((mut a, mut b, mut c): Abc) -> Abc {
    let d = &b * &b - BigInt::from(4) * &a * &c;
    loop {
        // b into (-a, a].
        let two_a = BigInt::from(2) * &a;
        let mut nb = b.mod_floor(&two_a);
        if nb > a {
            nb -= &two_a;
        }
        if nb != b {
            c = (&nb * &nb - &d) / (BigInt::from(4) * &a);
            b = nb;
        }
        if c < a {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if b.is_negative() && (a == c || -&b == a) {
            b = -b;
        }
        return (a, b, c);
    }
}

/// Indefinite non-square discriminant: reduction operator with exact
/// comparisons against `s = floor(sqrt(D))`.
fn rho((_a, b, c): &Abc, d: &BigInt, s: &BigInt) -> Abc {
    let two_c = BigInt::from(2) * c.abs();
    // Pick b' = -b mod 2|c| in (s - 2|c|, s] when |c| <= s, else in (-|c|, |c|].
    let top = if &c.abs() <= s { s.clone() } else { c.abs() };
    let nb = &top - (&top + b).mod_floor(&two_c);
    let na = (&nb * &nb - d) / (BigInt::from(4) * c);
    (c.clone(), nb, na)
}

fn is_reduced_indefinite((a, b, _): &Abc, s: &BigInt) -> bool {
    let two_a = BigInt::from(2) * a.abs();
    b.is_positive() && b <= s && two_a > s - b && two_a <= s + b
}

fn cycle_min(f: Abc, d: &BigInt) -> Abc {
    let s = d.sqrt();
    let mut g = f;
    while !is_reduced_indefinite(&g, &s) {
        g = rho(&g, d, &s);
    }
    let start = g.clone();
    let mut best = g.clone();
    loop {
        g = rho(&g, d, &s);
        if g == start {
            return best;
        }
        if g < best {
            best = g.clone();
        }
    }
}

/// Square discriminant `m^2`: sending a rational root to `[1:0]` by an
/// element of SL2(Z) gives `(0, b, c)` with `c` defined modulo `|b|`; the
/// preferred such triple over both roots is a class invariant.
fn square_canonical(f: &BinaryForm) -> Result<Abc> {
    let mut best: Option<Abc> = None;
    for lin in factor_over_q(f)? {
        // Linear factor u x + v y vanishes at [-v : u].
        let (alpha, beta) = (-&lin.coeffs()[1], lin.coeffs()[0].clone());
        let e = alpha.extended_gcd(&beta);
        // alpha * x + beta * y = 1, so [[alpha, beta], [-y, x]] has det 1.
        let gamma = GL2ZS::new(
            [alpha, beta, -e.y, e.x].map(num_rational::BigRational::from_integer),
            SPrimeSet::empty(),
        )?;
        let (a, b, c) = abc(&act(&gamma, f));
        debug_assert!(a.is_zero());
        let cand = (a, b.clone(), c.mod_floor(&b.abs()));
        // Prefer b > 0, then the least c.
        let key = |t: &Abc| (t.1.is_negative(), t.2.clone());
        if best.as_ref().is_none_or(|x| key(&cand) < key(x)) {
            best = Some(cand);
        }
    }
    Ok(best.expect("square discriminant forms split"))
}

/// Canonical representative of the SL2(Z)-orbit of a nondegenerate quadratic
/// form: Gauss-reduced if definite, least `(a, b, c)` on the reduction cycle
/// if indefinite with non-square discriminant, and for square discriminant
/// the normal form `(0, b, c)` with `0 <= c < |b|`, preferring `b > 0`.
pub fn gauss_reduce_quadratic(f: &BinaryForm) -> Result<BinaryForm> {
    if f.degree() != 2 {
        return domain("quadratic form expected");
    }
    let d = discriminant(f)?;
    if d.is_zero() {
        return domain(format!("degenerate form {f}"));
    }
    let t = abc(f);
    Ok(from_abc(if d.is_negative() {
        if t.0.is_positive() {
            reduce_definite(t)
        } else {
            let (a, b, c) = reduce_definite((-t.0, -t.1, -t.2));
            (-a, -b, -c)
        }
    } else if is_square(&d) {
        square_canonical(f)?
    } else {
        cycle_min(t, &d)
    }))
}

/// Fundamental discriminant of the quadratic field cut out by an irreducible
/// quadratic form.
pub fn field_disc_quadratic(q: &BinaryForm) -> Result<BigInt> {
    if q.degree() != 2 {
        return domain("quadratic form expected");
    }
    let d = discriminant(q)?;
    if d.is_zero() || is_square(&d) {
        return domain(format!("{q} is reducible over Q"));
    }
    let fac = factorize(&d)?;
    let mut kernel = BigInt::from(fac.sign);
    for (p, e) in &fac.factors {
        if e % 2 == 1 {
            kernel *= BigInt::from(p.clone());
        }
    }
    Ok(if kernel.mod_floor(&BigInt::from(4)).is_one() { kernel } else { kernel * 4 })
}
