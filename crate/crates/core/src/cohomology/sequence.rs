//! Short exact sequences of G-groups and the exact sequence of pointed sets
//! `1 -> A^G -> B^G -> C^G -> H^1(A) -> H^1(B) -> H^1(C)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ggroup::{class_index, h0, h1_finite, twist_inner, CohClass, Cocycle, GGroup};
use crate::error::{domain, Result};

/// `1 -> A -u-> B -v-> C -> 1`, all with the same G.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SequenceData", into = "SequenceData")]
pub struct ShortExactSequence {
    a: Arc<GGroup>,
    b: Arc<GGroup>,
    c: Arc<GGroup>,
    u: Vec<usize>,
    v: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SequenceData {
    a: GGroup,
    b: GGroup,
    c: GGroup,
    u: Vec<usize>,
    v: Vec<usize>,
}

impl TryFrom<SequenceData> for ShortExactSequence {
    type Error = crate::Error;

    fn try_from(d: SequenceData) -> Result<Self> {
        Self::new(Arc::new(d.a), Arc::new(d.b), Arc::new(d.c), d.u, d.v)
    }
}

impl From<ShortExactSequence> for SequenceData {
    fn from(s: ShortExactSequence) -> Self {
        SequenceData { a: (*s.a).clone(), b: (*s.b).clone(), c: (*s.c).clone(), u: s.u, v: s.v }
    }
}

impl ShortExactSequence {
    /// Checks equivariance, injectivity of `u`, surjectivity of `v`, and
    /// `im u = ker v`.
    pub fn new(a: Arc<GGroup>, b: Arc<GGroup>, c: Arc<GGroup>, u: Vec<usize>, v: Vec<usize>) -> Result<Self> {
        let g = a.g();
        if b.g() != g || c.g() != g {
            return domain("all three G-groups need the same G");
        }
        if !a.a().is_hom(b.a(), &u) || !b.a().is_hom(c.a(), &v) {
            return domain("u and v must be homomorphisms");
        }
        if u.iter().collect::<BTreeSet<_>>().len() != u.len() {
            return domain("u is not injective");
        }
        if v.iter().collect::<BTreeSet<_>>().len() != c.a().order() {
            return domain("v is not surjective");
        }
        let image: BTreeSet<usize> = u.iter().copied().collect();
        let kernel: BTreeSet<usize> = b.a().elements().filter(|&x| v[x] == c.a().identity()).collect();
        if image != kernel {
            return domain("image of u differs from kernel of v");
        }
        for s in g.elements() {
            if a.a().elements().any(|x| u[a.act(s, x)] != b.act(s, u[x]))
                || b.a().elements().any(|x| v[b.act(s, x)] != c.act(s, v[x]))
            {
                return domain("maps are not G-equivariant");
            }
        }
        Ok(Self { a, b, c, u, v })
    }

    /// `1 -> N -> B -> B/N -> 1` for a G-stable normal subgroup `N` (elements
    /// of `B`). `N` is relabelled in the given order; cosets are numbered by
    /// their least element.
    pub fn from_normal_subgroup(b: Arc<GGroup>, n: &[usize]) -> Result<Self> {
        let bg = b.a();
        if !bg.is_normal(n) {
            return domain("not a normal subgroup");
        }
        let principal = Cocycle::principal(b.clone());
        let a = Arc::new(twist_inner(&principal, n)?);
        let mut coset_of = vec![usize::MAX; bg.order()];
        let mut reps = Vec::new();
        for x in bg.elements() {
            if coset_of[x] == usize::MAX {
                for &y in n {
                    coset_of[bg.mul(x, y)] = reps.len();
                }
                reps.push(x);
            }
        }
        let mul = reps.iter().map(|&x| reps.iter().map(|&y| coset_of[bg.mul(x, y)]).collect()).collect();
        let cg = Arc::new(super::group::FiniteGroup::from_table(mul)?);
        let action = b.g().elements().map(|s| reps.iter().map(|&x| coset_of[b.act(s, x)]).collect()).collect();
        let c = Arc::new(GGroup::new(b.g().clone(), cg, action)?);
        Self::new(a, b, c, n.to_vec(), coset_of)
    }

    pub fn a(&self) -> &Arc<GGroup> {
        &self.a
    }

    pub fn b(&self) -> &Arc<GGroup> {
        &self.b
    }

    pub fn c(&self) -> &Arc<GGroup> {
        &self.c
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    fn push(map: &[usize], target: &Arc<GGroup>, f: &Cocycle) -> Result<Cocycle> {
        Cocycle::new(target.clone(), f.values().iter().map(|&x| map[x]).collect())
    }

    /// Some `b` with `v(b) = c`.
    fn lift(&self, c: usize) -> usize {
        self.b.a().elements().find(|&x| self.v[x] == c).expect("v is surjective")
    }

    /// `delta(c) = [s -> b^-1 s(b)]` for a lift `b` of `c in C^G`, as a
    /// cocycle in A.
    pub fn delta(&self, c: usize) -> Result<Cocycle> {
        let b = self.lift(c);
        let coboundary = Cocycle::coboundary(self.b.clone(), b);
        self.pull_back(&coboundary)
    }

    /// A cocycle in B with values in `u(A)`, read as a cocycle in A.
    fn pull_back(&self, f: &Cocycle) -> Result<Cocycle> {
        let pos: BTreeMap<usize, usize> = self.u.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let values = f
            .values()
            .iter()
            .map(|x| pos.get(x).copied())
            .collect::<Option<Vec<_>>>();
        match values {
            Some(v) => Cocycle::new(self.a.clone(), v),
            None => domain("cocycle does not take values in A"),
        }
    }

    /// The action of `c in C^G` on cocycles in A: `s -> b^-1 f(s) s(b)`
    /// computed in B for a lift `b`.
    pub fn act_on_h1a(&self, c: usize, f: &Cocycle) -> Result<Cocycle> {
        let b = self.lift(c);
        let in_b = Self::push(&self.u, &self.b, f)?;
        self.pull_back(&in_b.moved_by(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixTermReport {
    pub h0_orders: [usize; 3],
    pub h1_sizes: [usize; 3],
    /// `(c, index of delta(c) in H^1(A))` for each `c` in `C^G`.
    pub delta: Vec<(usize, usize)>,
    /// Class of `u^1` and `v^1` applied to each class, by index.
    pub u1: Vec<usize>,
    pub v1: Vec<usize>,
    pub h0_exact: bool,
    pub delta_exact: bool,
    pub fibers_are_orbits: bool,
    pub kernel_v1_is_image_u1: bool,
    pub passes: bool,
}

/// Verifies every exactness statement of the sequence by enumeration.
pub fn six_term_check(seq: &ShortExactSequence) -> Result<SixTermReport> {
    let (ha, hb, hc) = (h1_finite(&seq.a)?, h1_finite(&seq.b)?, h1_finite(&seq.c)?);
    let (a0, b0, c0) = (h0(&seq.a), h0(&seq.b), h0(&seq.c));

    // 1 -> A^G -> B^G -> C^G exact as groups.
    let image_u: BTreeSet<usize> = a0.iter().map(|&x| seq.u[x]).collect();
    let kernel_v: BTreeSet<usize> = b0.iter().copied().filter(|&x| seq.v[x] == seq.c.a().identity()).collect();
    let h0_exact = image_u == kernel_v;

    // Exactness at C^G: delta(c) is trivial iff c lifts to B^G.
    let image_v: BTreeSet<usize> = b0.iter().map(|&x| seq.v[x]).collect();
    let mut delta = Vec::new();
    let mut delta_exact = true;
    for &c in &c0 {
        let d = class_index(&ha, &seq.delta(c)?)?;
        delta.push((c, d));
        delta_exact &= (d == 0) == image_v.contains(&c);
    }

    let u1 = ha
        .iter()
        .map(|k| class_index(&hb, &ShortExactSequence::push(&seq.u, &seq.b, &k.representative)?))
        .collect::<Result<Vec<_>>>()?;
    let v1 = hb
        .iter()
        .map(|k| class_index(&hc, &ShortExactSequence::push(&seq.v, &seq.c, &k.representative)?))
        .collect::<Result<Vec<_>>>()?;

    // Nonempty fibres of u^1 are the orbits of C^G on H^1(A).
    let mut fibers_are_orbits = true;
    for (i, k) in ha.iter().enumerate() {
        let orbit: BTreeSet<usize> = c0
            .iter()
            .map(|&c| class_index(&ha, &seq.act_on_h1a(c, &k.representative)?))
            .collect::<Result<_>>()?;
        let fiber: BTreeSet<usize> = (0..ha.len()).filter(|&j| u1[j] == u1[i]).collect();
        fibers_are_orbits &= orbit == fiber;
    }
    // In particular the fibre over the base point is the image of delta.
    let delta_image: BTreeSet<usize> = delta.iter().map(|&(_, d)| d).collect();
    let base_fiber: BTreeSet<usize> = (0..ha.len()).filter(|&j| u1[j] == 0).collect();
    fibers_are_orbits &= delta_image == base_fiber;

    let image_u1: BTreeSet<usize> = u1.iter().copied().collect();
    let kernel_v1: BTreeSet<usize> = (0..hb.len()).filter(|&j| v1[j] == 0).collect();
    let kernel_v1_is_image_u1 = image_u1 == kernel_v1;

    let passes = h0_exact && delta_exact && fibers_are_orbits && kernel_v1_is_image_u1;
    Ok(SixTermReport {
        h0_orders: [a0.len(), b0.len(), c0.len()],
        h1_sizes: [ha.len(), hb.len(), hc.len()],
        delta,
        u1,
        v1,
        h0_exact,
        delta_exact,
        fibers_are_orbits,
        kernel_v1_is_image_u1,
        passes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedFiberReport {
    /// Index of the class of `f` in `H^1(B)`.
    pub class_of_f: usize,
    /// Classes of `H^1(B)` with the same image under `v^1` as `f`.
    pub fiber: Vec<usize>,
    pub twisted_h1_a_size: usize,
    /// Image of `H^1(fA) -> H^1(fB) -> H^1(B)`, the last map `[g] -> [g f]`.
    pub shifted_image: Vec<usize>,
    pub twisted_sequence_passes: bool,
    pub passes: bool,
}

/// Twists the sequence by a cocycle `f` in B and checks that the fibre of
/// `v^1` through `[f]` is the basepoint-shifted image of `H^1(G, fA)`.
pub fn twisted_fiber_check(seq: &ShortExactSequence, f: &Cocycle) -> Result<TwistedFiberReport> {
    if f.parent() != &seq.b {
        return domain("the cocycle must take values in B");
    }
    let bg = seq.b.a();
    let all_b: Vec<usize> = bg.elements().collect();
    let fb = Arc::new(twist_inner(f, &all_b)?);
    let fa = Arc::new(twist_inner(f, &seq.u)?);
    // Twist C by the image of f.
    let fc_cocycle = ShortExactSequence::push(&seq.v, &seq.c, f)?;
    let all_c: Vec<usize> = seq.c.a().elements().collect();
    let fc = Arc::new(twist_inner(&fc_cocycle, &all_c)?);
    let twisted = ShortExactSequence::new(fa.clone(), fb.clone(), fc, seq.u.clone(), seq.v.clone())?;
    let twisted_sequence_passes = six_term_check(&twisted)?.passes;

    let hb = h1_finite(&seq.b)?;
    let hc = h1_finite(&seq.c)?;
    let class_of_f = class_index(&hb, f)?;
    let image_of = |k: &CohClass| -> Result<usize> {
        class_index(&hc, &ShortExactSequence::push(&seq.v, &seq.c, &k.representative)?)
    };
    let target = image_of(&hb[class_of_f])?;
    let mut fiber = Vec::new();
    for (j, k) in hb.iter().enumerate() {
        if image_of(k)? == target {
            fiber.push(j);
        }
    }

    let hfa = h1_finite(&fa)?;
    let mut shifted = BTreeSet::new();
    for k in &hfa {
        let in_fb: Vec<usize> = k.representative.values().iter().map(|&x| seq.u[x]).collect();
        let values = seq
            .b
            .g()
            .elements()
            .map(|s| bg.mul(in_fb[s], f.value(s)))
            .collect();
        shifted.insert(class_index(&hb, &Cocycle::new(seq.b.clone(), values)?)?);
    }
    let shifted_image: Vec<usize> = shifted.into_iter().collect();
    let passes = twisted_sequence_passes && shifted_image == fiber;
    Ok(TwistedFiberReport {
        class_of_f,
        fiber,
        twisted_h1_a_size: hfa.len(),
        shifted_image,
        twisted_sequence_passes,
        passes,
    })
}

/// `|H^1(B)|` against `sum |H^1(G, fA)|` over the classes in the image of
/// `v^1`, each twisted by one lift `f`. Returns `(lhs, rhs)`; the fibre
/// description forces `lhs <= rhs`.
pub fn fiber_count_bound(seq: &ShortExactSequence) -> Result<(usize, usize)> {
    let hb = h1_finite(&seq.b)?;
    let hc = h1_finite(&seq.c)?;
    let mut lifted: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, k) in hb.iter().enumerate() {
        let x = class_index(&hc, &ShortExactSequence::push(&seq.v, &seq.c, &k.representative)?)?;
        lifted.entry(x).or_insert(j);
    }
    let mut rhs = 0;
    for &j in lifted.values() {
        rhs += h1_finite(&Arc::new(twist_inner(&hb[j].representative, &seq.u)?))?.len();
    }
    Ok((hb.len(), rhs))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cohomology::group::FiniteGroup;

    fn cyc_action(mg: usize, m: usize, unit: usize) -> Arc<GGroup> {
        let a = Arc::new(FiniteGroup::cyclic(m));
        let alpha: Vec<usize> = (0..m).map(|x| x * unit % m).collect();
        Arc::new(GGroup::cyclic_by(mg, a, &alpha).unwrap())
    }

    /// The toy sequences used across tests, all of order at most 16.
    pub(crate) fn toy_sequences() -> Vec<(&'static str, ShortExactSequence)> {
        let mut out = Vec::new();
        // Z/2 -> Z/4 -> Z/2, trivial action.
        let b = Arc::new(GGroup::trivial_action(Arc::new(FiniteGroup::cyclic(2)), Arc::new(FiniteGroup::cyclic(4))));
        out.push(("Z/2 -> Z/4 -> Z/2, trivial", ShortExactSequence::from_normal_subgroup(b, &[0, 2]).unwrap()));
        // A -> A -> 1.
        let b = cyc_action(2, 3, 2);
        out.push(("Z/3 -> Z/3 -> 1, negation", ShortExactSequence::from_normal_subgroup(b, &[0, 1, 2]).unwrap()));
        // 1 -> A -> A.
        let b = cyc_action(2, 5, 4);
        out.push(("1 -> Z/5 -> Z/5, negation", ShortExactSequence::from_normal_subgroup(b, &[0]).unwrap()));
        // {±1} -> Z/4 -> Z/2 with negation.
        let b = cyc_action(2, 4, 3);
        out.push(("Z/2 -> Z/4 -> Z/2, negation", ShortExactSequence::from_normal_subgroup(b, &[0, 2]).unwrap()));
        // Z/3 -> Z/9 -> Z/3 with negation.
        let b = cyc_action(2, 9, 8);
        out.push(("Z/3 -> Z/9 -> Z/3, negation", ShortExactSequence::from_normal_subgroup(b, &[0, 3, 6]).unwrap()));
        // Z/2 acting on D4 by conjugation with a reflection, A = centre.
        let d4 = Arc::new(FiniteGroup::dihedral(4));
        let b = Arc::new(GGroup::cyclic_by(2, d4.clone(), &d4.conjugation(4)).unwrap());
        out.push(("Z(D4) -> D4 -> (Z/2)^2, reflection", ShortExactSequence::from_normal_subgroup(b.clone(), &[0, 2]).unwrap()));
        out.push(("C4 -> D4 -> Z/2, reflection", ShortExactSequence::from_normal_subgroup(b, &[0, 1, 2, 3]).unwrap()));
        // A3 -> S3 -> Z/2 with conjugation by a transposition.
        let (s3, _) = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let s3 = Arc::new(s3);
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let a3: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) != 2).collect();
        let b = Arc::new(GGroup::cyclic_by(2, s3.clone(), &s3.conjugation(t)).unwrap());
        out.push(("A3 -> S3 -> Z/2, transposition", ShortExactSequence::from_normal_subgroup(b, &a3).unwrap()));
        // Diagonal Z/2 -> (Z/2)^2 -> Z/2 with the swap.
        let v4 = Arc::new(FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)));
        let b = Arc::new(GGroup::cyclic_by(2, v4, &[0, 2, 1, 3]).unwrap());
        out.push(("diag -> (Z/2)^2 -> Z/2, swap", ShortExactSequence::from_normal_subgroup(b, &[0, 3]).unwrap()));
        // Z/3 permuting the nonzero elements of (Z/2)^2 cyclically.
        let b = Arc::new(GGroup::cyclic_by(3, Arc::new(FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2))), &[0, 2, 3, 1]).unwrap());
        out.push(("(Z/2)^2 -> (Z/2)^2 -> 1, order 3", ShortExactSequence::from_normal_subgroup(b, &[0, 1, 2, 3]).unwrap()));
        out
    }

    #[test]
    fn all_toy_sequences_pass() {
        for (name, seq) in toy_sequences() {
            let r = six_term_check(&seq).unwrap();
            assert!(r.passes, "{name}: {r:?}");
        }
    }

    #[test]
    fn z4_trivial_delta() {
        let (_, seq) = toy_sequences().remove(0);
        let r = six_term_check(&seq).unwrap();
        // Every element of Z/4 is invariant, so C^G lifts and delta is trivial.
        assert_eq!(r.delta, vec![(0, 0), (1, 0)]);
        assert_eq!(r.h1_sizes, [2, 2, 2]);
        // u^1: Hom(Z/2, Z/2) -> Hom(Z/2, Z/4) is injective.
        assert_eq!(r.u1.iter().collect::<BTreeSet<_>>().len(), 2);
    }

    #[test]
    fn rejects_non_exact_input() {
        let b = Arc::new(GGroup::trivial_action(Arc::new(FiniteGroup::cyclic(2)), Arc::new(FiniteGroup::cyclic(4))));
        let a = Arc::new(GGroup::trivial_action(Arc::new(FiniteGroup::cyclic(2)), Arc::new(FiniteGroup::cyclic(2))));
        let c = a.clone();
        // v not surjective; u not a homomorphism; {0, 1} not a subgroup.
        assert!(ShortExactSequence::new(a.clone(), b.clone(), c.clone(), vec![0, 2], vec![0, 0, 0, 0]).is_err());
        assert!(ShortExactSequence::new(a, b.clone(), c, vec![0, 1], vec![0, 1, 0, 1]).is_err());
        assert!(ShortExactSequence::from_normal_subgroup(b, &[0, 1]).is_err());
    }

    #[test]
    fn twisted_fibers() {
        for (name, seq) in toy_sequences() {
            for f in crate::cohomology::cocycles(seq.b()).unwrap() {
                let r = twisted_fiber_check(&seq, &f).unwrap();
                assert!(r.passes, "{name}: {r:?}");
            }
        }
    }

    #[test]
    fn dihedral_twist_counts() {
        let (_, seq) = toy_sequences().into_iter().find(|(n, _)| n.starts_with("Z(D4)")).unwrap();
        let hb = h1_finite(seq.b()).unwrap();
        let nonprincipal = &hb[1].representative;
        let r = twisted_fiber_check(&seq, nonprincipal).unwrap();
        assert!(r.passes);
        assert_eq!(r.fiber.len(), r.shifted_image.len());
        assert!(r.fiber.len() <= r.twisted_h1_a_size);
        let principal = twisted_fiber_check(&seq, &hb[0].representative).unwrap();
        let plain = six_term_check(&seq).unwrap();
        let image_u1: Vec<usize> = plain.u1.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        assert_eq!(principal.fiber, image_u1);
    }

    #[test]
    fn fiber_bound() {
        for (name, seq) in toy_sequences() {
            let (lhs, rhs) = fiber_count_bound(&seq).unwrap();
            assert!(lhs <= rhs, "{name}: {lhs} > {rhs}");
        }
    }
}
