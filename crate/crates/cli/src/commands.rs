//! One function per subcommand. Each returns the JSON artifact together
//! with its text rendering and, for flat tables, a CSV rendering.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use p1omega::cohomology::{
    fiber_count_bound, group_order, h0, h1_finite, h1_finite_module, h1_zr, h1_zr_order_via_torsion,
    n_torsion_check, six_term_check, twisted_fiber_check, Cocycle, FiniteGroup, GGroup, ShortExactSequence,
};
use p1omega::descent::orbit_fiber_report;
use p1omega::forms::{
    config_to_form, discriminant, enumerate_omega_forms, is_omega_form, orbit_partition, reduce_form_mod_p,
    FactorPatternModP,
};
use p1omega::json::{to_json_ints, JsonInt};
use p1omega::projective::{colliding_primes, omega_member};
use p1omega::sarith::is_prime_u64;
use p1omega::{BinaryForm, Error, PointConfig, Result, SPrimeSet};

use crate::algebra_args::{parse_group, parse_module, ModuleArg};
use crate::Format;

pub struct Output {
    json: Value,
    text: String,
    csv: Option<String>,
}

impl Output {
    pub fn render(&self, format: Format) -> std::result::Result<String, String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.text.clone()),
            Format::Csv => self.csv.clone().ok_or_else(|| "csv output is only available for enumerate".to_string()),
        }
    }
}

fn parse_s(s: &str) -> Result<SPrimeSet> {
    s.parse().map_err(|e: Error| match e {
        Error::Domain(m) => Error::Parse(m),
        other => other,
    })
}

fn parse_form(s: &str) -> Result<BinaryForm> {
    s.parse().map_err(|e: Error| match e {
        Error::Domain(m) => Error::Parse(m),
        other => other,
    })
}

fn int(n: &BigInt) -> Value {
    serde_json::to_value(JsonInt::from(n)).expect("integers serialize")
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let data = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&data).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn disc_or_null(f: &BinaryForm) -> Result<Value> {
    if f.degree() < 2 {
        return Ok(Value::Null);
    }
    Ok(int(&discriminant(f)?))
}

pub fn enumerate(degree: usize, s: &str, height: u64, orbits: bool, bound: u64) -> Result<Output> {
    let s = parse_s(s)?;
    let forms = enumerate_omega_forms(degree, &s, height)?;
    let discs = forms.iter().map(discriminant).collect::<Result<Vec<_>>>()?;
    let mut json = json!({
        "degree": degree,
        "s": s,
        "height": height,
        "count": forms.len(),
        "forms": forms,
        "discriminants": discs.iter().map(int).collect::<Vec<_>>(),
    });
    let mut orbit_of = vec![None; forms.len()];
    let mut text = String::new();
    if orbits {
        let parts = orbit_partition(&forms, &s, bound)?;
        let index: BTreeMap<&BinaryForm, usize> = forms.iter().enumerate().map(|(i, f)| (f, i)).collect();
        for (o, part) in parts.iter().enumerate() {
            for f in part {
                orbit_of[index[f]] = Some(o);
            }
        }
        json["bound"] = json!(bound);
        json["orbit_count"] = json!(parts.len());
        json["orbits"] = to_value(&parts);
        text.push_str(&format!("{} forms, {} orbits\n", forms.len(), parts.len()));
    } else {
        text.push_str(&format!("{} forms\n", forms.len()));
    }
    let mut csv = String::new();
    let header: Vec<String> = (0..=degree).map(|j| format!("a{}", degree - j)).collect();
    csv.push_str(&header.join(","));
    csv.push_str(",discriminant");
    if orbits {
        csv.push_str(",orbit");
    }
    csv.push('\n');
    for (i, (f, d)) in forms.iter().zip(&discs).enumerate() {
        let cells: Vec<String> = f.coeffs().iter().map(ToString::to_string).collect();
        csv.push_str(&cells.join(","));
        csv.push_str(&format!(",{d}"));
        text.push_str(&format!("{:#}\tdisc {d}", f));
        if let Some(o) = orbit_of[i] {
            csv.push_str(&format!(",{o}"));
            text.push_str(&format!("\torbit {o}"));
        }
        csv.push('\n');
        text.push('\n');
    }
    Ok(Output { json, text, csv: Some(csv) })
}

pub fn orbits(forms: Option<&str>, input: Option<&Path>, s: &str, bound: u64) -> Result<Output> {
    let s = parse_s(s)?;
    let forms: Vec<BinaryForm> = match (forms, input) {
        (Some(list), _) => list.split(';').filter(|t| !t.trim().is_empty()).map(parse_form).collect::<Result<_>>()?,
        (None, Some(path)) => read_json(path)?,
        (None, None) => return Err(Error::Parse("need --forms or --input".into())),
    };
    let parts = orbit_partition(&forms, &s, bound)?;
    let mut text = format!("{} forms, {} orbits\n", forms.len(), parts.len());
    for (o, part) in parts.iter().enumerate() {
        let members: Vec<String> = part.iter().map(ToString::to_string).collect();
        text.push_str(&format!("orbit {o}: {}\n", members.join(" ")));
    }
    let json = json!({
        "s": s,
        "bound": bound,
        "count": forms.len(),
        "orbit_count": parts.len(),
        "orbits": parts,
    });
    Ok(Output { json, text, csv: None })
}

pub fn omega_test(points: &str, s: &str) -> Result<Output> {
    let s = parse_s(s)?;
    let a: PointConfig = points.parse().map_err(|e: Error| match e {
        Error::Domain(m) => Error::Parse(m),
        other => other,
    })?;
    let member = omega_member(&a, &s);
    let colliding: Vec<u64> = colliding_primes(&a).into_iter().filter(|&p| !s.contains(p)).collect();
    let form = config_to_form(&a);
    let form_is_omega = if form.degree() >= 2 { Value::Bool(is_omega_form(&form, &s)?) } else { Value::Null };
    let text = format!(
        "member: {member}\ncolliding primes: {colliding:?}\nform: {:#}\ndiscriminant: {}\n",
        form,
        disc_or_null(&form)?
    );
    let json = json!({
        "points": a,
        "s": s,
        "member": member,
        "colliding_primes": colliding,
        "form": form,
        "discriminant": disc_or_null(&form)?,
        "form_is_omega": form_is_omega,
    });
    Ok(Output { json, text, csv: None })
}

fn render_pattern(pat: &FactorPatternModP) -> String {
    let factors: Vec<String> = pat
        .factors
        .iter()
        .map(|f| {
            let c: Vec<String> = f.coeffs.iter().map(ToString::to_string).collect();
            if f.mult == 1 {
                format!("({})", c.join(" "))
            } else {
                format!("({})^{}", c.join(" "), f.mult)
            }
        })
        .collect();
    format!("p={}: {}", pat.p, factors.join(" "))
}

pub fn reduce(form: &str, p: Option<u64>, max_prime: Option<u64>) -> Result<Output> {
    let f = parse_form(form)?;
    let primes: Vec<u64> = match (p, max_prime) {
        (Some(p), _) => {
            if !is_prime_u64(p) {
                return Err(Error::Domain(format!("{p} is not prime")));
            }
            vec![p]
        }
        (None, Some(m)) => (2..=m).filter(|&q| is_prime_u64(q)).collect(),
        (None, None) => return Err(Error::Parse("need --p or --max-prime".into())),
    };
    let patterns = primes.iter().map(|&q| reduce_form_mod_p(&f, q)).collect::<Result<Vec<_>>>()?;
    let mut text = format!("{:#}\n", f);
    for pat in &patterns {
        text.push_str(&render_pattern(pat));
        text.push('\n');
    }
    let json = json!({
        "form": f,
        "discriminant": disc_or_null(&f)?,
        "patterns": patterns,
    });
    Ok(Output { json, text, csv: None })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    mul: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGGroup {
    g: RawGroup,
    a: RawGroup,
    action: Vec<Vec<usize>>,
}

impl RawGGroup {
    fn build(self) -> Result<Arc<GGroup>> {
        let g = Arc::new(FiniteGroup::from_table(self.g.mul)?);
        let a = Arc::new(FiniteGroup::from_table(self.a.mul)?);
        Ok(Arc::new(GGroup::new(g, a, self.action)?))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    a: RawGGroup,
    b: RawGGroup,
    c: RawGGroup,
    u: Vec<usize>,
    v: Vec<usize>,
}

pub fn h1(group: Option<&str>, module: Option<&str>, input: Option<&Path>) -> Result<Output> {
    if let Some(path) = input {
        let raw: RawGGroup = read_json(path)?;
        let m = raw.build()?;
        let classes = h1_finite(&m)?;
        let fixed = h0(&m);
        let torsion = if m.a().is_abelian() {
            let ok = classes.iter().map(|c| n_torsion_check(&m, c)).collect::<Result<Vec<_>>>()?;
            Value::Bool(ok.into_iter().all(|b| b))
        } else {
            Value::Null
        };
        let reps: Vec<&[usize]> = classes.iter().map(|c| c.representative.values()).collect();
        let text = format!("|H^0| = {}\n|H^1| = {}\n", fixed.len(), classes.len());
        let json = json!({
            "h0": fixed,
            "h1_size": classes.len(),
            "classes": reps,
            "n_torsion": torsion,
        });
        return Ok(Output { json, text, csv: None });
    }
    let (Some(gs), Some(ms)) = (group, module) else {
        return Err(Error::Parse("need --group with --module, or --input".into()));
    };
    let g = parse_group(gs)?;
    let (json, divisors) = match parse_module(ms, &g)? {
        ModuleArg::Free(m) => {
            let d = h1_zr(&m)?;
            let order = group_order(&d);
            let via_torsion = h1_zr_order_via_torsion(&m)?;
            let json = json!({
                "group": gs,
                "module": ms,
                "elementary_divisors": to_json_ints(&d),
                "order": int(&order),
                "order_via_reduction": int(&via_torsion),
                "routes_agree": order == via_torsion,
            });
            (json, d)
        }
        ModuleArg::Finite(m) => {
            let d = h1_finite_module(&m)?;
            let order = group_order(&d);
            let gg = Arc::new(m.to_ggroup()?);
            let classes = h1_finite(&gg)?;
            let json = json!({
                "group": gs,
                "module": ms,
                "elementary_divisors": to_json_ints(&d),
                "order": int(&order),
                "brute_force_classes": classes.len(),
                "routes_agree": order == BigInt::from(classes.len()),
            });
            (json, d)
        }
    };
    let parts: Vec<String> = divisors.iter().map(|d| format!("Z/{d}")).collect();
    let text = if parts.is_empty() { "H^1 = 0\n".to_string() } else { format!("H^1 = {}\n", parts.join(" + ")) };
    Ok(Output { json, text, csv: None })
}

pub fn six_term(input: &Path, twist: Option<&str>) -> Result<Output> {
    let raw: RawSequence = read_json(input)?;
    let seq = ShortExactSequence::new(raw.a.build()?, raw.b.build()?, raw.c.build()?, raw.u, raw.v)?;
    let report = six_term_check(&seq)?;
    let (lhs, rhs) = fiber_count_bound(&seq)?;
    let mut text = format!(
        "|H^1(A)|, |H^1(B)|, |H^1(C)| = {:?}\nsix-term check: {}\nfibre bound: {lhs} <= {rhs}\n",
        report.h1_sizes,
        if report.passes { "pass" } else { "FAIL" }
    );
    let mut json = json!({
        "six_term": report,
        "fiber_count_bound": { "h1_b": lhs, "twisted_sum": rhs },
    });
    if let Some(values) = twist {
        let values = values
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad cocycle value {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let f = Cocycle::new(seq.b().clone(), values)?;
        let tw = twisted_fiber_check(&seq, &f)?;
        text.push_str(&format!("twisted fibre check: {}\n", if tw.passes { "pass" } else { "FAIL" }));
        json["twisted"] = to_value(&tw);
    }
    Ok(Output { json, text, csv: None })
}

pub fn descent_report(n: usize, q: u64, k: usize) -> Result<Output> {
    let r = orbit_fiber_report(n, q, k)?;
    let mut text = format!(
        "n={n} q={q} k={k}: {} stable sets, {} extension orbits, {} base orbits\n",
        r.stable_configs,
        r.orbits.len(),
        r.base_orbits_direct
    );
    for o in &r.orbits {
        let classes: Vec<usize> = o.base_orbits.iter().map(|b| b.class).collect();
        text.push_str(&format!(
            "{{{}}}: |M_A| = {}, |H^1| = {}, fibre {} with classes {:?}\n",
            o.representative.join(", "),
            o.stabilizer_order,
            o.h1_size,
            o.base_orbits.len(),
            classes
        ));
    }
    text.push_str(&format!("checks: {}\n", if r.passes { "pass" } else { "FAIL" }));
    Ok(Output { json: to_value(&r), text, csv: None })
}
