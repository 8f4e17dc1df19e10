//! G-groups, 1-cocycles, H^0 and H^1, and twisting.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use crate::error::{capacity, domain, Error, Result};

/// Largest number of generator assignments tried by [`cocycles`].
pub const MAX_COCYCLE_CANDIDATES: u128 = 10_000_000;

/// A group `A` with an action of `G` by automorphisms; `action[s][a]` is `s(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GGroupData", into = "GGroupData")]
pub struct GGroup {
    g: Arc<FiniteGroup>,
    a: Arc<FiniteGroup>,
    action: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GGroupData {
    g: FiniteGroup,
    a: FiniteGroup,
    action: Vec<Vec<usize>>,
}

impl TryFrom<GGroupData> for GGroup {
    type Error = Error;

    fn try_from(d: GGroupData) -> Result<Self> {
        Self::new(Arc::new(d.g), Arc::new(d.a), d.action)
    }
}

impl From<GGroup> for GGroupData {
    fn from(m: GGroup) -> Self {
        GGroupData { g: (*m.g).clone(), a: (*m.a).clone(), action: m.action }
    }
}

impl GGroup {
    pub fn new(g: Arc<FiniteGroup>, a: Arc<FiniteGroup>, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != g.order() {
            return domain("action table needs one row per element of G");
        }
        for (s, row) in action.iter().enumerate() {
            if !a.is_automorphism(row) {
                return domain(format!("element {s} of G does not act by an automorphism"));
            }
        }
        if action[g.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return domain("the identity of G must act trivially");
        }
        for s in g.elements() {
            for t in g.elements() {
                let st = g.mul(s, t);
                if a.elements().any(|x| action[st][x] != action[s][action[t][x]]) {
                    return domain(format!("action is not a homomorphism at ({s}, {t})"));
                }
            }
        }
        Ok(Self { g, a, action })
    }

    pub fn trivial_action(g: Arc<FiniteGroup>, a: Arc<FiniteGroup>) -> Self {
        let id: Vec<usize> = a.elements().collect();
        let action = vec![id; g.order()];
        Self { g, a, action }
    }

    /// Cyclic `G = Z/m` acting through powers of one automorphism `alpha`
    /// of order dividing `m`.
    pub fn cyclic_by(m: usize, a: Arc<FiniteGroup>, alpha: &[usize]) -> Result<Self> {
        let g = Arc::new(FiniteGroup::cyclic(m));
        let mut rows = vec![a.elements().collect::<Vec<_>>()];
        for i in 1..m {
            rows.push(a.elements().map(|x| alpha[rows[i - 1][x]]).collect());
        }
        Self::new(g, a, rows)
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn a(&self) -> &Arc<FiniteGroup> {
        &self.a
    }

    pub fn act(&self, s: usize, x: usize) -> usize {
        self.action[s][x]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }
}

/// A 1-cocycle `f: G -> A`, stored on every element of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle {
    #[serde(skip)]
    parent: Option<Arc<GGroup>>,
    values: Vec<usize>,
}

impl Cocycle {
    /// Validates `f(st) = f(s) s(f(t))` on all pairs.
    pub fn new(parent: Arc<GGroup>, values: Vec<usize>) -> Result<Self> {
        let (g, a) = (parent.g(), parent.a());
        if values.len() != g.order() || values.iter().any(|&x| x >= a.order()) {
            return domain("cocycle needs one value in A per element of G");
        }
        for s in g.elements() {
            for t in g.elements() {
                if values[g.mul(s, t)] != a.mul(values[s], parent.act(s, values[t])) {
                    return domain(format!("cocycle identity fails at ({s}, {t})"));
                }
            }
        }
        Ok(Self { parent: Some(parent), values })
    }

    /// The distinguished cocycle with every value the identity.
    pub fn principal(parent: Arc<GGroup>) -> Self {
        let values = vec![parent.a().identity(); parent.g().order()];
        Self { parent: Some(parent), values }
    }

    /// `s -> b^-1 s(b)`.
    pub fn coboundary(parent: Arc<GGroup>, b: usize) -> Self {
        let a = parent.a().clone();
        let values = parent.g().elements().map(|s| a.mul(a.inv(b), parent.act(s, b))).collect();
        Self { parent: Some(parent), values }
    }

    pub fn parent(&self) -> &Arc<GGroup> {
        self.parent.as_ref().expect("cocycles are built with a parent")
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, s: usize) -> usize {
        self.values[s]
    }

    /// `s -> c^-1 f(s) s(c)`, the cocycle cohomologous to `self` through `c`.
    pub fn moved_by(&self, c: usize) -> Self {
        let m = self.parent();
        let a = m.a();
        let values = m
            .g()
            .elements()
            .map(|s| a.mul(a.mul(a.inv(c), self.values[s]), m.act(s, c)))
            .collect();
        Self { parent: self.parent.clone(), values }
    }
}

/// A class in H^1, held through a representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohClass {
    pub representative: Cocycle,
}

/// Fixed subgroup `A^G`, sorted.
pub fn h0(m: &GGroup) -> Vec<usize> {
    m.a().elements().filter(|&x| m.g().elements().all(|s| m.act(s, x) == x)).collect()
}

/// Extends generator values to all of G through `f(s t) = f(s) s(f(t))`;
/// `None` when the assignment is inconsistent.
fn extend(m: &GGroup, gens: &[usize], vals: &[usize]) -> Option<Vec<usize>> {
    let (g, a) = (m.g(), m.a());
    let mut f: Vec<Option<usize>> = vec![None; g.order()];
    f[g.identity()] = Some(a.identity());
    let mut queue = std::collections::VecDeque::from([g.identity()]);
    while let Some(s) = queue.pop_front() {
        let fs = f[s].unwrap();
        for (&t, &ft) in gens.iter().zip(vals) {
            let st = g.mul(s, t);
            let v = a.mul(fs, m.act(s, ft));
            match f[st] {
                Some(w) if w != v => return None,
                Some(_) => {}
                None => {
                    f[st] = Some(v);
                    queue.push_back(st);
                }
            }
        }
    }
    f.into_iter().collect()
}

/// Every 1-cocycle, found by assigning values on the greedy generating set of
/// G (in lexicographic order of the assignment) and validating on all of G.
pub fn cocycles(m: &Arc<GGroup>) -> Result<Vec<Cocycle>> {
    let gens = m.g().generators();
    let na = m.a().order() as u128;
    let total = na.checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    if total > MAX_COCYCLE_CANDIDATES {
        return capacity(format!("{total} generator assignments exceed {MAX_COCYCLE_CANDIDATES}"));
    }
    let mut out = Vec::new();
    let mut vals = vec![0usize; gens.len()];
    for idx in 0..total {
        let mut k = idx;
        for v in vals.iter_mut().rev() {
            *v = (k % na) as usize;
            k /= na;
        }
        if let Some(values) = extend(m, &gens, &vals) {
            if let Ok(f) = Cocycle::new(m.clone(), values) {
                out.push(f);
            }
        }
    }
    Ok(out)
}

fn same_parent(f: &Cocycle, g: &Cocycle) -> Result<()> {
    if Arc::ptr_eq(f.parent(), g.parent()) || f.parent() == g.parent() {
        Ok(())
    } else {
        domain("cocycles belong to different G-groups")
    }
}

/// Some `c` with `g(s) = c^-1 f(s) s(c)` for all `s`, searching A in order.
pub fn cohomologous(f: &Cocycle, g: &Cocycle) -> Result<Option<usize>> {
    same_parent(f, g)?;
    Ok(f.parent().a().elements().find(|&c| f.moved_by(c).values == g.values))
}

/// Representatives of H^1, the principal class first, the rest in order of
/// first appearance in [`cocycles`]. Classes are separated by explicitly
/// moving each new representative through all of A.
pub fn h1_finite(m: &Arc<GGroup>) -> Result<Vec<CohClass>> {
    let all = cocycles(m)?;
    let index: HashMap<&[usize], usize> = all.iter().enumerate().map(|(i, f)| (f.values(), i)).collect();
    let mut seen = vec![false; all.len()];
    let mut reps = Vec::new();
    let principal = Cocycle::principal(m.clone());
    let order = std::iter::once(index[principal.values()]).chain(0..all.len());
    for i in order {
        if seen[i] {
            continue;
        }
        for c in m.a().elements() {
            seen[index[all[i].moved_by(c).values()]] = true;
        }
        reps.push(CohClass { representative: all[i].clone() });
    }
    Ok(reps)
}

/// Index of the class of `f` in a list produced by [`h1_finite`].
pub fn class_index(classes: &[CohClass], f: &Cocycle) -> Result<usize> {
    for (i, c) in classes.iter().enumerate() {
        if cohomologous(&c.representative, f)?.is_some() {
            return Ok(i);
        }
    }
    domain("cocycle is not in any listed class")
}

/// For abelian A with `n = |G|`, checks `f(s)^n = b^-1 s(b)` with the
/// explicit witness `b = prod_t f(t)^-1`.
pub fn n_torsion_check(m: &GGroup, class: &CohClass) -> Result<bool> {
    let a = m.a();
    if !a.is_abelian() {
        return domain("n-torsion check needs an abelian group");
    }
    let f = &class.representative;
    let n = m.g().order();
    let b = m.g().elements().fold(a.identity(), |acc, t| a.mul(acc, a.inv(f.value(t))));
    Ok(m.g().elements().all(|s| a.pow(f.value(s), n) == a.mul(a.inv(b), m.act(s, b))))
}

/// A finite set with a G-action; `action[s][x]` is `s x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSet {
    pub size: usize,
    pub action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(g: &FiniteGroup, size: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != g.order() || action.iter().any(|r| r.len() != size || r.iter().any(|&x| x >= size)) {
            return domain("action table has the wrong shape");
        }
        if (0..size).any(|x| action[g.identity()][x] != x) {
            return domain("identity must act trivially");
        }
        for s in g.elements() {
            for t in g.elements() {
                if (0..size).any(|x| action[g.mul(s, t)][x] != action[s][action[t][x]]) {
                    return domain(format!("not a G-action at ({s}, {t})"));
                }
            }
        }
        Ok(Self { size, action })
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.action.iter().all(|r| r[x] == x)).collect()
    }

    pub fn orbit_count(&self) -> usize {
        let mut seen = vec![false; self.size];
        let mut count = 0;
        for x in 0..self.size {
            if !seen[x] {
                count += 1;
                for r in &self.action {
                    seen[r[x]] = true;
                }
            }
        }
        count
    }
}

/// Twist of a G-set `X` on which `A` also acts (`a_action[a][x]`),
/// compatibly: `s(a x) = s(a) s(x)`. The twisted action is
/// `s * x = f(s) s(x)`.
pub fn twist_gset(f: &Cocycle, a_action: &[Vec<usize>], x: &GSet) -> Result<GSet> {
    let m = f.parent();
    let (g, a) = (m.g(), m.a());
    if a_action.len() != a.order() || a_action.iter().any(|r| r.len() != x.size) {
        return domain("A-action table has the wrong shape");
    }
    for s in g.elements() {
        for b in a.elements() {
            for p in 0..x.size {
                if x.action[s][a_action[b][p]] != a_action[m.act(s, b)][x.action[s][p]] {
                    return domain("the A- and G-actions are not compatible");
                }
            }
        }
    }
    let action = g
        .elements()
        .map(|s| (0..x.size).map(|p| a_action[f.value(s)][x.action[s][p]]).collect())
        .collect();
    GSet::new(g, x.size, action)
}

/// Inner twist of a G-stable normal subgroup `N` of `B` (given by its
/// elements in `B`; `N` is relabelled in that order): `s * n = f(s) s(n) f(s)^-1`.
pub fn twist_inner(f: &Cocycle, sub: &[usize]) -> Result<GGroup> {
    let m = f.parent();
    let (g, b) = (m.g(), m.a());
    if !b.is_normal(sub) {
        return domain("twisting needs a normal subgroup");
    }
    let pos: HashMap<usize, usize> = sub.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = Arc::new(b.subgroup(sub)?);
    let mut action = Vec::with_capacity(g.order());
    for s in g.elements() {
        let c = f.value(s);
        let mut row = Vec::with_capacity(sub.len());
        for &x in sub {
            let y = b.mul(b.mul(c, m.act(s, x)), b.inv(c));
            row.push(*pos.get(&y).ok_or_else(|| Error::Domain("subgroup is not G-stable".into()))?);
        }
        action.push(row);
    }
    GGroup::new(g.clone(), n, action)
}
