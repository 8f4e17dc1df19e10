//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use p1omega::cohomology::{
    h1_finite, h1_finite_module, h1_zr, h1_zr_order_via_torsion, n_torsion_check, six_term_check,
    twisted_fiber_check, FiniteGroup, FiniteZModule, GGroup, GModuleZr, ShortExactSequence,
};
use p1omega::descent::{orbit_fiber_report, stabilizer, DescentModel, FqConfig};
use p1omega::forms::{
    act, config_to_form, discriminant, enumerate_omega_forms, is_omega_form, orbit_partition, reduce_form_mod_p,
    roots_config,
};
use p1omega::projective::omega_member;
use p1omega::sarith::{is_prime_u64, is_s_unit, prime_divisors};
use p1omega::{BinaryForm, Error, PointConfig, ProjPoint, SPrimeSet, GL2ZS};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    check(start.elapsed() < limit, || format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `gamma . f` by direct expansion of `f(m11 x + m21 y, m12 x + m22 y)`.
fn act_oracle(m: [i64; 4], f: &[i64]) -> Vec<BigInt> {
    let n = f.len() - 1;
    let lin = |a: i64, b: i64, e: usize| -> Vec<BigInt> {
        // (a x + b y)^e, coefficients of x^(e-i) y^i
        let mut p = vec![BigInt::one()];
        for _ in 0..e {
            let mut q = vec![BigInt::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                q[i] += c * a;
                q[i + 1] += c * b;
            }
            p = q;
        }
        p
    };
    let mut out = vec![BigInt::zero(); n + 1];
    for (j, &c) in f.iter().enumerate() {
        let u = lin(m[0], m[2], n - j);
        let v = lin(m[1], m[3], j);
        for (i, a) in u.iter().enumerate() {
            for (k, b) in v.iter().enumerate() {
                out[i + k] += a * b * c;
            }
        }
    }
    out
}

fn disc_closed_form(f: &[BigInt]) -> Option<BigInt> {
    match f {
        [a, b, c] => Some(b * b - big(4) * a * c),
        [a, b, c, d] => Some(
            b * b * c * c - big(4) * a * c * c * c - big(4) * b * b * b * d - big(27) * a * a * d * d
                + big(18) * a * b * c * d,
        ),
        _ => None,
    }
}

fn s_for(n: &BigInt) -> SPrimeSet {
    let primes = prime_divisors(n).unwrap().iter().map(|p| p.to_u64().unwrap()).collect();
    SPrimeSet::new(primes).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut closed = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=5);
        let coeffs: Vec<i64> = loop {
            let c: Vec<i64> = (0..=n).map(|_| rng.gen_range(-20..=20)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        };
        let m: [i64; 4] = loop {
            let m = [(); 4].map(|_| rng.gen_range(-5..=5));
            if m[0] * m[3] - m[1] * m[2] != 0 {
                break m;
            }
        };
        let det = big(m[0] * m[3] - m[1] * m[2]);
        let f = BinaryForm::from_i64(&coeffs).unwrap();
        let gamma = GL2ZS::from_ints(m, s_for(&det)).map_err(|e| e.to_string())?;
        let g = act(&gamma, &f);
        check(g.coeffs() == act_oracle(m, &coeffs).as_slice(), || format!("action mismatch for {f} under {m:?}"))?;
        let (df, dg) = (discriminant(&f).unwrap(), discriminant(&g).unwrap());
        let want = num_traits::pow(det.clone(), n * (n - 1)) * &df;
        check(dg == want, || format!("disc({f}) = {df}, disc(gamma f) = {dg}, gamma {m:?}"))?;
        if let Some(d) = disc_closed_form(f.coeffs()) {
            closed += 1;
            check(d == df, || format!("closed form disagrees on {f}"))?;
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("1000 pairs, {closed} also against closed forms, {:?}", start.elapsed()))
}

fn random_config(rng: &mut ChaCha8Rng, n: usize, h: i64) -> PointConfig {
    let mut set = BTreeSet::new();
    while set.len() < n {
        let (a, b) = (rng.gen_range(-h..=h), rng.gen_range(0..=h));
        if let Ok(p) = ProjPoint::normalize(big(a), big(b)) {
            set.insert(p);
        }
    }
    PointConfig::new(set).unwrap()
}

/// `g = lambda f` for some S-unit `lambda`.
fn unit_multiple(f: &BinaryForm, g: &BinaryForm, s: &SPrimeSet) -> bool {
    let Some(j) = f.coeffs().iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let lambda = BigRational::new(g.coeffs()[j].clone(), f.coeffs()[j].clone());
    if lambda.is_zero() || !is_s_unit(&lambda, s).unwrap() {
        return false;
    }
    f.coeffs()
        .iter()
        .zip(g.coeffs())
        .all(|(a, b)| BigRational::from_integer(a.clone()) * &lambda == BigRational::from_integer(b.clone()))
}

fn height_ten_sets() -> Vec<(usize, SPrimeSet)> {
    let s = |v: Vec<u64>| SPrimeSet::new(v).unwrap();
    vec![
        (2, s(vec![])),
        (2, s(vec![2, 3])),
        (3, s(vec![])),
        (3, s(vec![2])),
        (3, s(vec![2, 3])),
    ]
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let a = random_config(&mut rng, n, 50);
        let f = config_to_form(&a);
        let back = roots_config(&f).map_err(|e| format!("{a}: {e}"))?;
        check(back == a, || format!("{a} -> {f} -> {back}"))?;
    }
    let (mut split, mut total) = (0, 0);
    for (n, s) in height_ten_sets() {
        for f in enumerate_omega_forms(n, &s, 10).map_err(|e| e.to_string())? {
            total += 1;
            match roots_config(&f) {
                Ok(a) => {
                    split += 1;
                    let g = config_to_form(&a);
                    check(unit_multiple(&f, &g, &s), || format!("{f} -> {a} -> {g}"))?;
                }
                Err(Error::NotSplit { .. }) => {}
                Err(e) => return Err(format!("{f}: {e}")),
            }
        }
    }
    check(split > 0, || "no split forms in the enumeration".into())?;
    Ok(format!("500 random sets; {split} of {total} enumerated forms split"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pool = [2u64, 3, 5, 7, 11, 13];
    let (mut yes, mut no) = (0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let a = random_config(&mut rng, n, 6);
        let k = rng.gen_range(0..=3);
        let mut primes: Vec<u64> = Vec::new();
        while primes.len() < k {
            let p = pool[rng.gen_range(0..pool.len())];
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        let s = SPrimeSet::new(primes).unwrap();
        let m = omega_member(&a, &s);
        let f = config_to_form(&a);
        let w = is_omega_form(&f, &s).map_err(|e| e.to_string())?;
        check(m == w, || format!("{a} with S = {s:?}: member {m}, form test {w}"))?;
        if m {
            yes += 1;
        } else {
            no += 1;
        }
    }
    check(yes > 0 && no > 0, || format!("degenerate sample: {yes} members, {no} non-members"))?;
    Ok(format!("500 samples, {yes} members, {no} non-members"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let s = SPrimeSet::empty();
    // Independent count over the full box, both signs of the leading entry.
    let (mut plus, mut minus, mut canonical) = (0usize, 0usize, BTreeSet::new());
    for a in -100i64..=100 {
        for b in -100i64..=100 {
            for c in -100i64..=100 {
                let d = b * b - 4 * a * c;
                if d.abs() != 1 || a.gcd(&b).gcd(&c) != 1 {
                    continue;
                }
                if d == 1 {
                    plus += 1;
                } else {
                    minus += 1;
                }
                let first = [a, b, c].into_iter().find(|&x| x != 0).unwrap();
                if first > 0 {
                    canonical.insert(vec![big(a), big(b), big(c)]);
                }
            }
        }
    }
    check(minus == 0, || format!("{minus} forms of discriminant -1"))?;
    let forms = enumerate_omega_forms(2, &s, 100).map_err(|e| e.to_string())?;
    let listed: BTreeSet<Vec<BigInt>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    check(listed == canonical, || format!("enumeration has {} forms, box has {}", listed.len(), canonical.len()))?;
    for f in &forms {
        check(discriminant(f).unwrap() == BigInt::one(), || format!("{f} has discriminant != 1"))?;
    }
    let orbits = orbit_partition(&forms, &s, 2).map_err(|e| e.to_string())?;
    check(orbits.len() == 1, || format!("{} orbits", orbits.len()))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} forms up to sign ({plus} signed), 1 orbit, {:?}", forms.len(), start.elapsed()))
}

/// Number of distinct zeros of `f` on `P^1(F_p)` by evaluation.
fn zeros_mod_p(f: &BinaryForm, p: u64) -> usize {
    let pb = BigInt::from(p);
    let at_infinity = usize::from(f.coeffs()[0].mod_floor(&pb).is_zero());
    let affine = (0..p).filter(|&x| f.eval(&BigInt::from(x), &BigInt::one()).mod_floor(&pb).is_zero()).count();
    affine + at_infinity
}

fn criterion_5() -> Outcome {
    let primes: Vec<u64> = (2..=50).filter(|&p| is_prime_u64(p)).collect();
    let mut forms = Vec::new();
    for (n, s) in height_ten_sets() {
        forms.extend(enumerate_omega_forms(n, &s, 10).map_err(|e| e.to_string())?);
    }
    forms.extend(enumerate_omega_forms(4, &SPrimeSet::empty(), 3).map_err(|e| e.to_string())?);
    let (mut checked, mut at_infinity) = (0usize, 0usize);
    for f in &forms {
        for &p in &primes {
            let pat = reduce_form_mod_p(f, p).map_err(|e| e.to_string())?;
            check(pat.total_degree() == f.degree(), || format!("{f} mod {p}: degree {}", pat.total_degree()))?;
            let linear = pat.factors.iter().filter(|x| x.degree() == 1).count();
            check(linear == zeros_mod_p(f, p), || format!("{f} mod {p}: {linear} linear factors"))?;
            if (f.coeffs()[0].clone() % p).is_zero() {
                at_infinity += 1;
            }
            checked += 1;
        }
    }
    check(at_infinity > 0, || "no case with p | a_n".into())?;
    Ok(format!("{} forms x {} primes = {checked} reductions, {at_infinity} with p | a_n", forms.len(), primes.len()))
}

fn z(m: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(m))
}

fn criterion_6() -> Outcome {
    let z2 = z(2);
    // (module, expected |H^1|)
    let cases: [(u64, i64, usize); 3] = [(2, 1, 2), (3, -1, 1), (4, -1, 2)];
    for (m, act_by, want) in cases {
        let alpha: Vec<usize> = (0..m as usize).map(|x| ((x as i64 * act_by).rem_euclid(m as i64)) as usize).collect();
        let brute = h1_finite(&Arc::new(GGroup::cyclic_by(2, z(m as usize), &alpha).map_err(|e| e.to_string())?))
            .map_err(|e| e.to_string())?
            .len();
        let module = FiniteZModule::new(z2.clone(), vec![m], vec![vec![vec![1]], vec![vec![act_by]]])
            .map_err(|e| e.to_string())?;
        let linear: BigInt = h1_finite_module(&module).map_err(|e| e.to_string())?.iter().product();
        check(brute == want && linear == BigInt::from(want), || {
            format!("Z/{m} with action {act_by}: brute force {brute}, linear algebra {linear}, expected {want}")
        })?;
    }
    for (act_by, want) in [(-1i64, vec![big(2)]), (1, vec![])] {
        let m = GModuleZr::cyclic(2, vec![vec![act_by]]).map_err(|e| e.to_string())?;
        let d = h1_zr(&m).map_err(|e| e.to_string())?;
        let order: BigInt = d.iter().product();
        let via = h1_zr_order_via_torsion(&m).map_err(|e| e.to_string())?;
        check(d == want && via == order, || format!("Z with action {act_by}: {d:?}, reduction route {via}"))?;
    }
    Ok("3 finite modules and 2 lattices, both routes agree".into())
}

fn toy_sequences() -> Result<Vec<(String, ShortExactSequence)>, Error> {
    let g2 = z(2);
    let cyc = |m: usize, alpha: Vec<usize>| GGroup::cyclic_by(2, z(m), &alpha).map(Arc::new);
    let neg = |m: usize| (0..m).map(|x| (m - x) % m).collect::<Vec<_>>();
    let id = |m: usize| (0..m).collect::<Vec<_>>();
    let d4 = Arc::new(FiniteGroup::dihedral(4));
    let s3 = Arc::new(FiniteGroup::dihedral(3));
    let v4 = Arc::new(FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)));
    let mut out = Vec::new();
    let mut push = |name: &str, b: Arc<GGroup>, n: Vec<usize>| -> Result<(), Error> {
        out.push((name.to_string(), ShortExactSequence::from_normal_subgroup(b, &n)?));
        Ok(())
    };
    push("Z/2 -> Z/4 -> Z/2, trivial", cyc(4, id(4))?, vec![0, 2])?;
    push("Z/2 -> Z/4 -> Z/2, negation", cyc(4, neg(4))?, vec![0, 2])?;
    push("Z/3 -> Z/9 -> Z/3, negation", cyc(9, neg(9))?, vec![0, 3, 6])?;
    push("1 -> Z/5 -> Z/5, negation", cyc(5, neg(5))?, vec![0])?;
    push("Z/3 -> Z/3 -> 1, negation", cyc(3, neg(3))?, vec![0, 1, 2])?;
    let by_reflection = Arc::new(GGroup::cyclic_by(2, d4.clone(), &d4.conjugation(4))?);
    push("Z(D4) -> D4 -> V4, reflection", by_reflection.clone(), vec![0, 2])?;
    push("C4 -> D4 -> Z/2, reflection", by_reflection, vec![0, 1, 2, 3])?;
    push("C4 -> D4 -> Z/2, trivial", Arc::new(GGroup::trivial_action(g2.clone(), d4)), vec![0, 1, 2, 3])?;
    push("A3 -> S3 -> Z/2, reflection", Arc::new(GGroup::cyclic_by(2, s3.clone(), &s3.conjugation(3))?), vec![0, 1, 2])?;
    push("diagonal -> V4 -> Z/2, swap", Arc::new(GGroup::cyclic_by(2, v4, &[0, 2, 1, 3])?), vec![0, 3])?;
    Ok(out)
}

fn criterion_7() -> Outcome {
    let seqs = toy_sequences().map_err(|e| e.to_string())?;
    let mut torsion_cases = 0;
    for (name, seq) in &seqs {
        check(seq.b().a().order() <= 16, || format!("{name}: B too large"))?;
        let r = six_term_check(seq).map_err(|e| format!("{name}: {e}"))?;
        check(r.passes, || format!("{name}: {r:?}"))?;
        for m in [seq.a(), seq.b(), seq.c()] {
            if !m.a().is_abelian() {
                continue;
            }
            for class in h1_finite(m).map_err(|e| e.to_string())? {
                torsion_cases += 1;
                check(n_torsion_check(m, &class).map_err(|e| e.to_string())?, || {
                    format!("{name}: n-torsion witness fails for {:?}", class.representative.values())
                })?;
            }
        }
        // Every class of H^1(B) gives a twisted fibre check.
        for class in h1_finite(seq.b()).map_err(|e| e.to_string())? {
            let t = twisted_fiber_check(seq, &class.representative).map_err(|e| e.to_string())?;
            check(t.passes, || format!("{name}: twisted fibre at {:?}: {t:?}", class.representative.values()))?;
        }
    }
    check(seqs.len() >= 5, || "fewer than 5 sequences".into())?;
    Ok(format!("{} sequences pass, {torsion_cases} n-torsion witnesses verified", seqs.len()))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for n in 1..=4 {
        let r = orbit_fiber_report(n, 2, 2).map_err(|e| e.to_string())?;
        check(r.passes, || {
            format!(
                "n={n}: well-defined {}, base-invariant {}, injective {}, witnesses {}, partition {}",
                r.well_defined, r.base_invariant, r.injective, r.witnesses_verified, r.partition_consistent
            )
        })?;
        summary.push(format!("n={n}: {} ext orbits / {} base orbits", r.orbits.len(), r.base_orbits_direct));
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{}; {:?}", summary.join(", "), start.elapsed()))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn criterion_9() -> Outcome {
    let mut counted = 0;
    for q in [2u64, 3] {
        for k in [1usize, 2] {
            let m = DescentModel::new(q, k).map_err(|e| e.to_string())?;
            let big_q = m.field().size();
            for n in 1..=4.min(m.point_count()) {
                for a in m.stable_configs(n).map_err(|e| e.to_string())? {
                    let order = stabilizer(&m, &a).map_err(|e| e.to_string())?.order();
                    let ok = match n {
                        1 => order == big_q * (big_q - 1),
                        2 => order == 2 * (big_q - 1),
                        _ => order <= factorial(n),
                    };
                    check(ok, || format!("q={q} k={k} A={:?}: |M_A| = {order}", m.config_labels(&a)))?;
                    counted += 1;
                }
            }
            let borel = stabilizer(&m, &FqConfig::new(vec![m.infinity()])).map_err(|e| e.to_string())?;
            check(borel.elements.iter().all(|e| e[2] == 0), || "Borel elements must be upper triangular".into())?;
        }
    }
    Ok(format!("{counted} stabilizers"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("discriminant covariance", criterion_1),
        ("dictionary round trip", criterion_2),
        ("Omega membership vs S-unit discriminant", criterion_3),
        ("unit-discriminant quadratics form one orbit", criterion_4),
        ("reduction preserves degree", criterion_5),
        ("H^1 oracles by two routes", criterion_6),
        ("exact sequence suite", criterion_7),
        ("descent model q=2 k=2", criterion_8),
        ("stabilizer orders", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
