//! H^1 of finite groups with coefficients in lattices `Z^r` and in finite
//! abelian groups `Z/n_1 + ... + Z/n_s`, by integer linear algebra.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ggroup::GGroup;
use super::group::FiniteGroup;
use crate::error::{capacity, domain, Result};
use crate::linalg::{kernel, lattice_quotient, smith, Mat};

/// Largest linear system (rows times columns) set up for H^1.
pub const MAX_SYSTEM_ENTRIES: usize = 2_000_000;

fn mat_vec(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn mat_prod(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
        .collect()
}

fn det_i64(m: &[Vec<i64>]) -> BigInt {
    let big: Mat = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    crate::linalg::det(big)
}

/// `Z^r` with G acting through integer matrices of determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModuleZr {
    g: Arc<FiniteGroup>,
    rank: usize,
    rho: Vec<Vec<Vec<i64>>>,
}

impl GModuleZr {
    pub fn new(g: Arc<FiniteGroup>, rank: usize, rho: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if rho.len() != g.order() || rho.iter().any(|m| m.len() != rank || m.iter().any(|r| r.len() != rank)) {
            return domain("need one r x r matrix per group element");
        }
        for (s, m) in rho.iter().enumerate() {
            if rank > 0 && det_i64(m).magnitude() != &num_bigint::BigUint::one() {
                return domain(format!("matrix of element {s} is not invertible over Z"));
            }
        }
        for s in g.elements() {
            for t in g.elements() {
                if rho[g.mul(s, t)] != mat_prod(&rho[s], &rho[t]) {
                    return domain(format!("rho is not a homomorphism at ({s}, {t})"));
                }
            }
        }
        Ok(Self { g, rank, rho })
    }

    /// `Z/m` acting through powers of one matrix.
    pub fn cyclic(m: usize, generator: Vec<Vec<i64>>) -> Result<Self> {
        let r = generator.len();
        let mut rho = vec![(0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect::<Vec<Vec<i64>>>()];
        for i in 1..m {
            rho.push(mat_prod(&generator, &rho[i - 1]));
        }
        Self::new(Arc::new(FiniteGroup::cyclic(m)), r, rho)
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rho(&self, s: usize) -> &[Vec<i64>] {
        &self.rho[s]
    }

    /// The finite module `(Z/n)^r` with the induced action.
    pub fn reduce(&self, n: u64) -> Result<FiniteZModule> {
        let rho = self
            .rho
            .iter()
            .map(|m| m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(n as i64)).collect()).collect())
            .collect();
        FiniteZModule::new(self.g.clone(), vec![n; self.rank], rho)
    }
}

/// Cocycle equations `f(st) - f(s) - rho(s) f(t) = 0` over Z, one block of
/// `r` rows per pair, unknowns `f(s)` in blocks of `r`.
fn cocycle_system(g: &FiniteGroup, r: usize, rho: &[Vec<Vec<i64>>]) -> Mat {
    let n = g.order();
    let mut rows = Vec::with_capacity(n * n * r);
    for s in g.elements() {
        for t in g.elements() {
            let st = g.mul(s, t);
            for i in 0..r {
                let mut row = vec![0i64; n * r];
                row[st * r + i] += 1;
                row[s * r + i] -= 1;
                for j in 0..r {
                    row[t * r + j] -= rho[s][i][j];
                }
                rows.push(row.into_iter().map(BigInt::from).collect());
            }
        }
    }
    rows
}

/// Coboundaries `s -> rho(s) e_j - e_j` for the basis vectors `e_j`.
fn coboundaries(g: &FiniteGroup, r: usize, rho: &[Vec<Vec<i64>>]) -> Mat {
    (0..r)
        .map(|j| {
            let mut v = vec![BigInt::zero(); g.order() * r];
            for s in g.elements() {
                for i in 0..r {
                    v[s * r + i] = BigInt::from(rho[s][i][j] - i64::from(i == j));
                }
            }
            v
        })
        .collect()
}

fn guard(rows: usize, cols: usize) -> Result<()> {
    if rows.saturating_mul(cols) > MAX_SYSTEM_ENTRIES {
        return capacity(format!("linear system {rows} x {cols} is too large"));
    }
    Ok(())
}

/// Elementary divisors of `H^1(G, Z^r)`, computed as `Z^1 / B^1` with `Z^1`
/// the integer kernel of the cocycle equations. Empty means trivial.
pub fn h1_zr(m: &GModuleZr) -> Result<Vec<BigInt>> {
    let (n, r) = (m.g.order(), m.rank);
    if r == 0 {
        return Ok(Vec::new());
    }
    guard(n * n * r, n * r)?;
    let sys = cocycle_system(&m.g, r, &m.rho);
    let z1 = kernel(&sys, n * n * r, n * r);
    let b1 = coboundaries(&m.g, r, &m.rho);
    let b1: Vec<Vec<BigInt>> = b1.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    if z1.is_empty() {
        return Ok(Vec::new());
    }
    lattice_quotient(&z1, &b1, n * r)
}

/// `|H^1(G, Z^r)|` by a second route: with `n = |G|` killing H^1, the
/// sequence `0 -> Z^r -n-> Z^r -> (Z/n)^r -> 0` gives
/// `|H^1| = |((Z/n)^r)^G| / n^(rank of the invariant lattice)`; the fixed
/// points are counted by brute force.
pub fn h1_zr_order_via_torsion(m: &GModuleZr) -> Result<BigInt> {
    let (n, r) = (m.g.order() as u64, m.rank);
    let total = (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if total > 10_000_000 {
        return capacity(format!("{total} residue vectors exceed the scan limit"));
    }
    let mut fixed = 0u64;
    let mut x = vec![0i64; r];
    for idx in 0..total as u64 {
        let mut k = idx;
        for xi in x.iter_mut() {
            *xi = (k % n) as i64;
            k /= n;
        }
        if m.rho.iter().all(|mat| mat_vec(mat, &x).iter().zip(&x).all(|(y, xi)| (y - xi).rem_euclid(n as i64) == 0)) {
            fixed += 1;
        }
    }
    // Rank of the invariant lattice: r minus the rank of the stacked rho(s) - 1.
    let stacked: Mat = m
        .rho
        .iter()
        .flat_map(|mat| {
            (0..r).map(move |i| (0..r).map(|j| BigInt::from(mat[i][j] - i64::from(i == j))).collect())
        })
        .collect();
    let inv_rank = r - smith(&stacked, stacked.len(), r).rank;
    let denom = BigInt::from(n).pow(inv_rank as u32);
    let fixed = BigInt::from(fixed);
    if (&fixed % &denom) != BigInt::zero() {
        return domain("fixed-point count not divisible by n^rank; action inconsistent");
    }
    Ok(fixed / denom)
}

/// `Z/n_1 + ... + Z/n_s` with G acting through integer matrices that
/// respect the moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteZModule {
    g: Arc<FiniteGroup>,
    moduli: Vec<u64>,
    rho: Vec<Vec<Vec<i64>>>,
}

impl FiniteZModule {
    pub fn new(g: Arc<FiniteGroup>, moduli: Vec<u64>, rho: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let s = moduli.len();
        if moduli.iter().any(|&n| n < 1) {
            return domain("moduli must be positive");
        }
        if rho.len() != g.order() || rho.iter().any(|m| m.len() != s || m.iter().any(|r| r.len() != s)) {
            return domain("need one s x s matrix per group element");
        }
        // Well defined: column j times n_j vanishes modulo each n_i.
        for m in &rho {
            for i in 0..s {
                for j in 0..s {
                    if (m[i][j] as i128 * moduli[j] as i128).rem_euclid(moduli[i] as i128) != 0 {
                        return domain("matrix does not respect the moduli");
                    }
                }
            }
        }
        let module = Self { g, moduli, rho };
        // Validating through the table form checks automorphisms and the
        // homomorphism law.
        module.to_ggroup()?;
        Ok(module)
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn encode(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for (xi, &n) in x.iter().zip(&self.moduli) {
            idx = idx * n as usize + xi.rem_euclid(n as i64) as usize;
        }
        idx
    }

    fn decode(&self, mut idx: usize) -> Vec<i64> {
        let mut x = vec![0i64; self.moduli.len()];
        for (xi, &n) in x.iter_mut().zip(&self.moduli).rev() {
            *xi = (idx % n as usize) as i64;
            idx /= n as usize;
        }
        x
    }

    /// The same module as a table-given G-group, elements in mixed radix.
    pub fn to_ggroup(&self) -> Result<GGroup> {
        let order = self.order();
        if order > super::group::MAX_GROUP_ORDER as u64 {
            return capacity(format!("module of order {order} too large to tabulate"));
        }
        let mut a = FiniteGroup::cyclic(1);
        for &n in &self.moduli {
            a = a.direct_product(&FiniteGroup::cyclic(n as usize));
        }
        let action = self
            .rho
            .iter()
            .map(|m| (0..order as usize).map(|e| self.encode(&mat_vec(m, &self.decode(e)))).collect())
            .collect();
        GGroup::new(self.g.clone(), Arc::new(a), action)
    }
}

/// Invariant factors of `H^1(G, M)` for a finite module `M = Z^s / N`.
/// Cochains are `Z^(s|G|)` modulo `N^|G|`; cocycles lift to the lattice
/// `L = {x : E x in N^(|G|^2)}`, coboundaries to `B + N^|G|`, and
/// `H^1 = L / (B + N^|G|)`.
pub fn h1_finite_module(m: &FiniteZModule) -> Result<Vec<BigInt>> {
    let (n, s) = (m.g.order(), m.moduli.len());
    let d = n * s;
    let eqs = n * n * s;
    guard(eqs, d + eqs)?;
    let sys = cocycle_system(&m.g, s, &m.rho);
    // [E | -diag(moduli)] in the unknowns (x, y).
    let wide: Mat = sys
        .into_iter()
        .enumerate()
        .map(|(k, mut row)| {
            let mut tail = vec![BigInt::zero(); eqs];
            tail[k] = -BigInt::from(m.moduli[k % s]);
            row.extend(tail);
            row
        })
        .collect();
    let mut lattice: Vec<Vec<BigInt>> = kernel(&wide, eqs, d + eqs).into_iter().map(|v| v[..d].to_vec()).collect();
    let relations: Vec<Vec<BigInt>> = (0..d)
        .map(|k| {
            let mut v = vec![BigInt::zero(); d];
            v[k] = BigInt::from(m.moduli[k % s]);
            v
        })
        .collect();
    lattice.extend(relations.iter().cloned());
    let mut bound = coboundaries(&m.g, s, &m.rho);
    bound.extend(relations);
    lattice_quotient(&lattice, &bound, d)
}

/// Order of a finite abelian group from its invariant factors.
pub fn group_order(divisors: &[BigInt]) -> BigInt {
    divisors.iter().fold(BigInt::one(), |acc, d| acc * d)
}

/// Exponent bound check: the order of `H^1(G, Z^r)` divides `|G|^r`.
pub fn order_divides_power(divisors: &[BigInt], n: usize, r: usize) -> bool {
    let bound = BigInt::from(n).pow(r as u32);
    (bound % group_order(divisors)).is_zero() && divisors.iter().all(|d| (BigInt::from(n) % d).is_zero())
}
