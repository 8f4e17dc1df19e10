//! Finite groups given by multiplication tables.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{capacity, domain, Error, Result};

/// Largest order materialized as a table.
pub const MAX_GROUP_ORDER: usize = 5_000;

/// Elements are `0..order`; `mul[a][b]` is the product `ab`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupTable", into = "GroupTable")]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroupTable {
    mul: Vec<Vec<usize>>,
}

impl TryFrom<GroupTable> for FiniteGroup {
    type Error = Error;

    fn try_from(t: GroupTable) -> Result<Self> {
        Self::from_table(t.mul)
    }
}

impl From<FiniteGroup> for GroupTable {
    fn from(g: FiniteGroup) -> Self {
        GroupTable { mul: g.mul }
    }
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self> {
        let m = mul.len();
        if m == 0 {
            return domain("a group has at least one element");
        }
        if m > MAX_GROUP_ORDER {
            return capacity(format!("group order {m} exceeds {MAX_GROUP_ORDER}"));
        }
        if mul.iter().any(|row| row.len() != m || row.iter().any(|&x| x >= m)) {
            return domain("multiplication table must be square with entries in 0..order");
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| Error::Domain("no identity element".into()))?;
        let mut inv = vec![0; m];
        for a in 0..m {
            inv[a] = (0..m)
                .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                .ok_or_else(|| Error::Domain(format!("element {a} has no inverse")))?;
        }
        for a in 0..m {
            for b in 0..m {
                let ab = mul[a][b];
                for c in 0..m {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return domain(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(Self { mul, identity, inv })
    }

    pub(crate) fn from_table_unchecked(mul: Vec<Vec<usize>>) -> Self {
        let m = mul.len();
        let identity = (0..m).find(|&e| (0..m).all(|a| mul[e][a] == a)).expect("identity");
        let inv = (0..m).map(|a| (0..m).find(|&b| mul[a][b] == identity).expect("inverse")).collect();
        Self { mul, identity, inv }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/m` with element `i` standing for the `i`-th power of a generator.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        Self::from_table_unchecked((0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect())
    }

    /// Dihedral group of order `2m`: element `i + m*s` is `r^i t^s` with
    /// `t r t = r^-1`.
    pub fn dihedral(m: usize) -> Self {
        assert!(m >= 1);
        let n = 2 * m;
        let mul = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (i, s) = (x % m, x / m);
                        let (j, t) = (y % m, y / m);
                        // r^i t^s r^j t^t = r^(i + (-1)^s j) t^(s+t)
                        let k = if s == 0 { (i + j) % m } else { (i + m - j) % m };
                        k + m * ((s + t) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table_unchecked(mul)
    }

    /// Element `(a, b)` is `a * |other| + b`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (m, k) = (self.order(), other.order());
        let mul = (0..m * k)
            .map(|x| {
                (0..m * k)
                    .map(|y| self.mul(x / k, y / k) * k + other.mul(x % k, y % k))
                    .collect()
            })
            .collect();
        Self::from_table_unchecked(mul)
    }

    /// Group generated by permutations of `0..degree`; elements are listed
    /// in breadth-first order from the identity, and `perms` of the result
    /// gives each element's permutation.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        let degree = gens.first().map_or(0, Vec::len);
        for g in gens {
            let set: BTreeSet<_> = g.iter().copied().collect();
            if g.len() != degree || set.len() != degree || set.iter().any(|&x| x >= degree) {
                return domain("generators must be permutations of one set");
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index = std::collections::HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p: Vec<usize> = (0..degree).map(|x| g[elems[i][x]]).collect();
                if !index.contains_key(&p) {
                    if elems.len() >= MAX_GROUP_ORDER {
                        return capacity("permutation group too large to tabulate");
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        // (ab)(x) = a(b(x)).
        let mul = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| index[&(0..degree).map(|x| a[b[x]]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Ok((Self::from_table_unchecked(mul), elems))
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: repeatedly adds the least element outside the
    /// subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = self.closure(&gens);
        while sub.len() < self.order() {
            let next = self.elements().find(|x| sub.binary_search(x).is_err()).unwrap();
            gens.push(next);
            sub = self.closure(&gens);
        }
        gens
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| set.contains(&self.inv(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        self.is_subgroup(elems)
            && self
                .elements()
                .all(|g| set.iter().all(|&n| set.contains(&self.mul(self.mul(g, n), self.inv(g)))))
    }

    /// Whether `map: self -> other` is a homomorphism.
    pub fn is_hom(&self, other: &Self, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < other.order())
            && self
                .elements()
                .all(|a| self.elements().all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }

    /// Subgroup on the given elements, relabelled `0..len` in the given order.
    pub fn subgroup(&self, elems: &[usize]) -> Result<Self> {
        if !self.is_subgroup(elems) {
            return domain("not a subgroup");
        }
        let pos = |x: usize| elems.iter().position(|&e| e == x).unwrap();
        let mul = elems.iter().map(|&a| elems.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        Ok(Self::from_table_unchecked(mul))
    }

    /// Conjugation `x -> g x g^-1`.
    pub fn conjugation(&self, g: usize) -> Vec<usize> {
        self.elements().map(|x| self.mul(self.mul(g, x), self.inv(g))).collect()
    }

    pub fn is_automorphism(&self, alpha: &[usize]) -> bool {
        let set: BTreeSet<usize> = alpha.iter().copied().collect();
        set.len() == self.order() && self.is_hom(self, alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions_satisfy_axioms() {
        for g in [
            FiniteGroup::cyclic(6),
            FiniteGroup::dihedral(4),
            FiniteGroup::dihedral(3),
            FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(4)),
        ] {
            let again = FiniteGroup::from_table(g.table().to_vec()).unwrap();
            assert_eq!(again, g);
        }
        let d4 = FiniteGroup::dihedral(4);
        assert!(!d4.is_abelian());
        assert_eq!(d4.elements().filter(|&x| d4.element_order(x) == 2).count(), 5);
        assert_eq!(d4.closure(&d4.generators()).len(), 8);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        // Latin square without associativity (loop of order 5).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(t).is_err());
    }

    #[test]
    fn permutation_groups() {
        let (s3, perms) = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(perms.len(), 6);
        assert!(!s3.is_abelian());
        let a3: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) != 2).collect();
        assert!(s3.is_normal(&a3));
        assert_eq!(s3.subgroup(&a3).unwrap().order(), 3);
    }

    #[test]
    fn serde_round_trip() {
        let g = FiniteGroup::dihedral(3);
        let json = serde_json::to_string(&g).unwrap();
        let back: FiniteGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<FiniteGroup>(r#"{"mul":[[0,0],[0,0]]}"#).is_err());
    }
}
