//! Finite-field model of orbit descent: Frobenius-stable point sets on
//! `P^1(F_(q^k))`, their PGL2 stabilizers `M_A` as Galois groups, and the
//! cocycles `sigma -> F^-1 sigma(F)` attached to `B = F A`.
//!
//! Points of `P^1(F_Q)`, `Q = q^k`, are numbered `0..=Q`: `x < Q` is `[x:1]`
//! and `Q` is `[1:0]`. Field elements use the encoding of [`FqField`].

mod field;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

pub use field::{FqField, MAX_FIELD_SIZE};

use crate::cohomology::{class_index, cohomologous, h1_finite, Cocycle, FiniteGroup, GGroup};
use crate::error::{capacity, domain, Result};
use crate::sarith::primality::is_prime_u64;

/// Largest PGL2 order scanned, and largest number of n-subsets considered.
pub const SCAN_LIMIT: u128 = 10_000_000;

/// A normalized matrix `[a, b, c, d]` (row-major, first nonzero entry 1)
/// standing for its class in PGL2.
pub type Pgl2Fq = [usize; 4];

/// A set of points of `P^1(F_Q)`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FqConfig {
    points: Vec<usize>,
}

impl FqConfig {
    pub fn new(mut points: Vec<usize>) -> Self {
        points.sort_unstable();
        points.dedup();
        Self { points }
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `F_Q / F_q` with `Q = q^k`, the cyclic group generated by `x -> x^q`,
/// and the action of PGL2 on `P^1(F_Q)`.
#[derive(Debug, Clone)]
pub struct DescentModel {
    field: FqField,
    q: u64,
    k: usize,
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1 && is_prime_u64(p)).then_some((p, e))
}

impl DescentModel {
    pub fn new(q: u64, k: usize) -> Result<Self> {
        let Some((p, e)) = prime_power(q) else {
            return domain(format!("{q} is not a prime power"));
        };
        if k == 0 {
            return domain("extension degree must be positive");
        }
        let field = FqField::new(p, e * k)?;
        Ok(Self { field, q, k })
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `Q + 1`.
    pub fn point_count(&self) -> usize {
        self.field.size() + 1
    }

    pub fn infinity(&self) -> usize {
        self.field.size()
    }

    pub fn point_label(&self, pt: usize) -> String {
        if pt == self.infinity() {
            "[1:0]".into()
        } else {
            format!("[{pt}:1]")
        }
    }

    pub fn config_labels(&self, a: &FqConfig) -> Vec<String> {
        a.points.iter().map(|&p| self.point_label(p)).collect()
    }

    fn coords(&self, pt: usize) -> (usize, usize) {
        if pt == self.infinity() {
            (1, 0)
        } else {
            (pt, 1)
        }
    }

    fn point(&self, x: usize, y: usize) -> usize {
        if y == 0 {
            self.infinity()
        } else {
            self.field.mul(x, self.field.inv(y))
        }
    }

    /// `sigma^i` on a point.
    pub fn frobenius_point(&self, pt: usize, i: usize) -> usize {
        if pt == self.infinity() {
            pt
        } else {
            self.field.frobenius(pt, self.q.pow(i as u32 % self.k as u32))
        }
    }

    pub fn frobenius_config(&self, a: &FqConfig, i: usize) -> FqConfig {
        FqConfig::new(a.points.iter().map(|&p| self.frobenius_point(p, i)).collect())
    }

    pub fn is_stable(&self, a: &FqConfig) -> bool {
        self.frobenius_config(a, 1) == *a
    }

    pub fn normalize(&self, m: [usize; 4]) -> Result<Pgl2Fq> {
        let f = &self.field;
        if f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2])) == 0 {
            return domain("singular matrix");
        }
        let lead = *m.iter().find(|&&x| x != 0).unwrap();
        let s = f.inv(lead);
        Ok(m.map(|x| f.mul(x, s)))
    }

    /// Column action `[x:y] -> [a x + b y : c x + d y]`.
    pub fn apply(&self, m: &Pgl2Fq, pt: usize) -> usize {
        let f = &self.field;
        let (x, y) = self.coords(pt);
        self.point(f.add(f.mul(m[0], x), f.mul(m[1], y)), f.add(f.mul(m[2], x), f.mul(m[3], y)))
    }

    pub fn image(&self, m: &Pgl2Fq, a: &FqConfig) -> FqConfig {
        FqConfig::new(a.points.iter().map(|&p| self.apply(m, p)).collect())
    }

    pub fn compose(&self, m: &Pgl2Fq, n: &Pgl2Fq) -> Pgl2Fq {
        let f = &self.field;
        let e = |i: usize, j: usize| f.add(f.mul(m[2 * i], n[j]), f.mul(m[2 * i + 1], n[2 + j]));
        self.normalize([e(0, 0), e(0, 1), e(1, 0), e(1, 1)]).expect("product of invertibles")
    }

    pub fn inverse(&self, m: &Pgl2Fq) -> Pgl2Fq {
        let f = &self.field;
        self.normalize([m[3], f.neg(m[1]), f.neg(m[2]), m[0]]).expect("invertible")
    }

    /// `sigma^i` on entries.
    pub fn frobenius_matrix(&self, m: &Pgl2Fq, i: usize) -> Pgl2Fq {
        let e = self.q.pow(i as u32 % self.k as u32);
        m.map(|x| self.field.frobenius(x, e))
    }

    pub fn identity(&self) -> Pgl2Fq {
        [1, 0, 0, 1]
    }

    pub fn pgl2_order(&self) -> u128 {
        let n = self.field.size() as u128;
        n * (n * n - 1)
    }

    /// All of PGL2(F_Q) in lexicographic order of normalized entries.
    pub fn pgl2_elements(&self) -> Result<Vec<Pgl2Fq>> {
        if self.pgl2_order() > SCAN_LIMIT {
            return capacity(format!("|PGL2| = {} exceeds {SCAN_LIMIT}", self.pgl2_order()));
        }
        let n = self.field.size();
        let f = &self.field;
        let mut out = Vec::with_capacity(self.pgl2_order() as usize);
        for c in 1..n {
            for d in 0..n {
                out.push([0, 1, c, d]);
            }
        }
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if d != f.mul(b, c) {
                        out.push([1, b, c, d]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// PGL2(F_q): the classes fixed by Frobenius, i.e. normalized matrices
    /// with entries in F_q.
    pub fn base_elements(&self) -> Result<Vec<Pgl2Fq>> {
        Ok(self.pgl2_elements()?.into_iter().filter(|m| self.frobenius_matrix(m, 1) == *m).collect())
    }

    /// Frobenius orbits on `P^1(F_Q)`, each sorted, listed by least point.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.point_count()];
        let mut out = Vec::new();
        for p in 0..self.point_count() {
            if seen[p] {
                continue;
            }
            let mut orbit = vec![p];
            seen[p] = true;
            let mut x = self.frobenius_point(p, 1);
            while x != p {
                seen[x] = true;
                orbit.push(x);
                x = self.frobenius_point(x, 1);
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Every Frobenius-stable `n`-subset, as unions of Frobenius orbits, in
    /// lexicographic order.
    pub fn stable_configs(&self, n: usize) -> Result<Vec<FqConfig>> {
        let total = self.point_count();
        if n == 0 || n > total {
            return domain(format!("need 1 <= n <= {total}"));
        }
        if binomial(total as u128, n as u128) > SCAN_LIMIT {
            return capacity(format!("C({total}, {n}) exceeds {SCAN_LIMIT}"));
        }
        let orbits = self.point_orbits();
        let mut out = Vec::new();
        fn rec(orbits: &[Vec<usize>], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<FqConfig>) {
            if left == 0 {
                out.push(FqConfig::new(cur.clone()));
                return;
            }
            if i == orbits.len() {
                return;
            }
            if orbits[i].len() <= left {
                let keep = cur.len();
                cur.extend(&orbits[i]);
                rec(orbits, i + 1, left - orbits[i].len(), cur, out);
                cur.truncate(keep);
            }
            rec(orbits, i + 1, left, cur, out);
        }
        rec(&orbits, 0, n, &mut Vec::new(), &mut out);
        out.sort();
        Ok(out)
    }

    /// PGL2(F_Q) as a table-given group with the Frobenius action of `Z/k`.
    fn group_on(&self, elements: Vec<Pgl2Fq>) -> Result<(Arc<GGroup>, Vec<Pgl2Fq>)> {
        let index: HashMap<Pgl2Fq, usize> = elements.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let lookup = |m: Pgl2Fq| -> Result<usize> {
            index.get(&m).copied().ok_or_else(|| crate::Error::Domain("set is not closed".into()))
        };
        let mut mul = Vec::with_capacity(elements.len());
        for a in &elements {
            mul.push(elements.iter().map(|b| lookup(self.compose(a, b))).collect::<Result<Vec<_>>>()?);
        }
        let group = Arc::new(FiniteGroup::from_table_unchecked(mul));
        let action = (0..self.k)
            .map(|i| elements.iter().map(|m| lookup(self.frobenius_matrix(m, i))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let g = Arc::new(FiniteGroup::cyclic(self.k));
        Ok((Arc::new(GGroup::new(g, group, action)?), elements))
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `M_A` with its Galois action; element `i` of the group is `elements[i]`.
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    pub config: FqConfig,
    pub elements: Vec<Pgl2Fq>,
    pub ggroup: Arc<GGroup>,
}

impl StabilizerGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, m: &Pgl2Fq) -> Option<usize> {
        self.elements.binary_search(m).ok()
    }
}

/// `M_A = {F : F(A) = A}` by a full scan of PGL2(F_Q).
pub fn stabilizer(model: &DescentModel, a: &FqConfig) -> Result<StabilizerGroup> {
    if !model.is_stable(a) {
        return domain("configuration is not Frobenius-stable");
    }
    let elements: Vec<Pgl2Fq> =
        model.pgl2_elements()?.into_iter().filter(|m| model.image(m, a) == *a).collect();
    let (ggroup, elements) = model.group_on(elements)?;
    Ok(StabilizerGroup { config: a.clone(), elements, ggroup })
}

/// `sigma -> F^-1 sigma(F)`, a cocycle with values in `M_A`, for `B = F A`.
pub fn psi_cocycle(model: &DescentModel, stab: &StabilizerGroup, b: &FqConfig, f: &Pgl2Fq) -> Result<Cocycle> {
    if model.image(f, &stab.config) != *b {
        return domain("B is not the image of A under F");
    }
    if !model.is_stable(b) {
        return domain("B is not Frobenius-stable");
    }
    let finv = model.inverse(f);
    let values = (0..model.k())
        .map(|i| {
            let v = model.compose(&finv, &model.frobenius_matrix(f, i));
            stab.index_of(&v).ok_or_else(|| crate::Error::Domain("value outside M_A".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Cocycle::new(stab.ggroup.clone(), values)
}

/// Brute-force H^1 of `Z/k` acting on PGL2(F_Q) by Frobenius; true when
/// trivial.
pub fn h1_pgl2_check(q: u64, k: usize) -> Result<bool> {
    let model = DescentModel::new(q, k)?;
    if k == 1 {
        return Ok(true);
    }
    let (m, _) = model.group_on(model.pgl2_elements()?)?;
    Ok(h1_finite(&m)?.len() == 1)
}

pub fn frobenius_orbits(n: usize, q: u64, k: usize) -> Result<Vec<FqConfig>> {
    DescentModel::new(q, k)?.stable_configs(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub from: Vec<String>,
    pub to: Vec<String>,
    /// Normalized entries of `R = F_C N^-1 F_B^-1`, fixed by Frobenius.
    pub matrix: Pgl2Fq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseOrbit {
    pub representative: Vec<String>,
    pub size: usize,
    /// Index of the class of `psi` in the H^1 listing of the orbit.
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionOrbit {
    pub representative: Vec<String>,
    /// Number of Frobenius-stable configurations in the PGL2(F_Q)-orbit.
    pub stable_members: usize,
    pub stabilizer_order: usize,
    pub h1_size: usize,
    pub base_orbits: Vec<BaseOrbit>,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitFiberReport {
    pub n: usize,
    pub q: u64,
    pub k: usize,
    pub modulus: Vec<u64>,
    pub stable_configs: usize,
    pub orbits: Vec<ExtensionOrbit>,
    /// Number of PGL2(F_q)-orbits on all stable configurations, counted
    /// without reference to the extension orbits.
    pub base_orbits_direct: usize,
    pub base_orbits_summed: usize,
    pub well_defined: bool,
    pub base_invariant: bool,
    pub injective: bool,
    pub witnesses_verified: bool,
    pub partition_consistent: bool,
    pub passes: bool,
}

/// Orbits of `group` on `configs` (restricted to that set), as sorted
/// member lists in order of least member.
fn partition(model: &DescentModel, group: &[Pgl2Fq], configs: &[FqConfig]) -> Vec<Vec<FqConfig>> {
    let set: BTreeSet<&FqConfig> = configs.iter().collect();
    let mut seen: BTreeSet<FqConfig> = BTreeSet::new();
    let mut out = Vec::new();
    for a in configs {
        if seen.contains(a) {
            continue;
        }
        let orbit: BTreeSet<FqConfig> =
            group.iter().map(|m| model.image(m, a)).filter(|b| set.contains(b)).collect();
        seen.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect());
    }
    out
}

/// For every PGL2(F_Q)-orbit of Frobenius-stable n-sets: splits it into
/// PGL2(F_q)-orbits, attaches the class of `psi` to each, and checks that
/// the class does not depend on the choice of `F`, is constant on base
/// orbits, separates base orbits, and that equal classes come with the
/// base-field element `F_C N^-1 F_B^-1` carrying one set to the other.
pub fn orbit_fiber_report(n: usize, q: u64, k: usize) -> Result<OrbitFiberReport> {
    let model = DescentModel::new(q, k)?;
    let configs = model.stable_configs(n)?;
    let big = model.pgl2_elements()?;
    let base = model.base_elements()?;

    let direct = partition(&model, &base, &configs).len();
    let mut orbits = Vec::new();
    let (mut well_defined, mut base_invariant, mut injective, mut witnesses_verified) = (true, true, true, true);
    let mut summed = 0;

    for ext in partition(&model, &big, &configs) {
        let a = &ext[0];
        let stab = stabilizer(&model, a)?;
        let classes = h1_finite(&stab.ggroup)?;
        // All factorizations B = F A, grouped by B.
        let mut factorizations: BTreeMap<FqConfig, Vec<Pgl2Fq>> = BTreeMap::new();
        for m in &big {
            let b = model.image(m, a);
            if model.is_stable(&b) {
                factorizations.entry(b).or_default().push(*m);
            }
        }
        let mut class_of: BTreeMap<FqConfig, usize> = BTreeMap::new();
        let mut chosen: BTreeMap<FqConfig, (Pgl2Fq, Cocycle)> = BTreeMap::new();
        for (b, fs) in &factorizations {
            let first = psi_cocycle(&model, &stab, b, &fs[0])?;
            let c = class_index(&classes, &first)?;
            for f in &fs[1..] {
                well_defined &= cohomologous(&first, &psi_cocycle(&model, &stab, b, f)?)?.is_some();
            }
            class_of.insert(b.clone(), c);
            chosen.insert(b.clone(), (fs[0], first));
        }

        let mut base_orbits = Vec::new();
        let mut witnesses = Vec::new();
        for orbit in partition(&model, &base, &ext) {
            let rep = &orbit[0];
            let class = class_of[rep];
            let (f_b, psi_b) = &chosen[rep];
            for c in &orbit[1..] {
                base_invariant &= class_of[c] == class;
                let (f_c, psi_c) = &chosen[c];
                match cohomologous(psi_b, psi_c)? {
                    Some(nidx) => {
                        let nmat = stab.elements[nidx];
                        let r = model.compose(
                            &model.compose(f_c, &model.inverse(&nmat)),
                            &model.inverse(f_b),
                        );
                        let ok = model.frobenius_matrix(&r, 1) == r && model.image(&r, rep) == *c;
                        witnesses_verified &= ok;
                        witnesses.push(Witness {
                            from: model.config_labels(rep),
                            to: model.config_labels(c),
                            matrix: r,
                        });
                    }
                    None => base_invariant = false,
                }
            }
            base_orbits.push(BaseOrbit { representative: model.config_labels(rep), size: orbit.len(), class });
        }
        let distinct: BTreeSet<usize> = base_orbits.iter().map(|o| o.class).collect();
        injective &= distinct.len() == base_orbits.len();
        summed += base_orbits.len();
        orbits.push(ExtensionOrbit {
            representative: model.config_labels(a),
            stable_members: ext.len(),
            stabilizer_order: stab.order(),
            h1_size: classes.len(),
            base_orbits,
            witnesses,
        });
    }
    let partition_consistent = summed == direct;
    Ok(OrbitFiberReport {
        n,
        q,
        k,
        modulus: model.field().modulus().to_vec(),
        stable_configs: configs.len(),
        orbits,
        base_orbits_direct: direct,
        base_orbits_summed: summed,
        well_defined,
        base_invariant,
        injective,
        witnesses_verified,
        partition_consistent,
        passes: well_defined && base_invariant && injective && witnesses_verified && partition_consistent,
    })
}
