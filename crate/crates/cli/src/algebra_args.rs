//! Parsing of `--group` and `--module` arguments.

use std::sync::Arc;

use p1omega::cohomology::{FiniteGroup, FiniteZModule, GModuleZr};
use p1omega::{Error, Result};

/// A group given by name together with the word of each element in its
/// generators, so module actions need only be given on generators.
pub struct NamedGroup {
    pub group: Arc<FiniteGroup>,
    /// `(i, s)` means the element is `gen0^i gen1^s`.
    words: Vec<(usize, usize)>,
    generators: usize,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_group(arg: &str) -> Result<NamedGroup> {
    let arg = arg.trim().to_ascii_lowercase();
    let order = |t: &str| -> Result<usize> {
        t.parse::<usize>().ok().filter(|&m| m >= 1).ok_or_else(|| parse_err(format!("bad group order in {arg:?}")))
    };
    if arg == "trivial" || arg == "1" {
        return Ok(NamedGroup { group: Arc::new(FiniteGroup::trivial()), words: vec![(0, 0)], generators: 0 });
    }
    if let Some(m) = arg.strip_prefix('z') {
        let m = order(m)?;
        if m > p1omega::cohomology::MAX_GROUP_ORDER {
            return Err(Error::Capacity(format!("group order {m} too large")));
        }
        return Ok(NamedGroup { group: Arc::new(FiniteGroup::cyclic(m)), words: (0..m).map(|i| (i, 0)).collect(), generators: 1 });
    }
    if let Some(m) = arg.strip_prefix('d') {
        let m = order(m)?;
        if 2 * m > p1omega::cohomology::MAX_GROUP_ORDER {
            return Err(Error::Capacity(format!("group order {} too large", 2 * m)));
        }
        let words = (0..2 * m).map(|e| (e % m, e / m)).collect();
        return Ok(NamedGroup { group: Arc::new(FiniteGroup::dihedral(m)), words, generators: 2 });
    }
    Err(parse_err(format!("unknown group {arg:?}; expected z<m>, d<m> or trivial")))
}

pub enum ModuleArg {
    Free(GModuleZr),
    Finite(FiniteZModule),
}

type Mat = Vec<Vec<i64>>;

fn parse_matrix(t: &str, r: usize) -> Result<Mat> {
    let rows: Vec<Vec<i64>> = t
        .split('/')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| parse_err(format!("bad matrix entry {x:?}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.len() != r || rows.iter().any(|row| row.len() != r) {
        return Err(parse_err(format!("action {t:?} is not a {r} x {r} matrix")));
    }
    Ok(rows)
}

fn identity(r: usize) -> Mat {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat, modulus: Option<i64>) -> Result<Mat> {
    let r = a.len();
    let mut out = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut acc = 0i128;
            for k in 0..r {
                acc += a[i][k] as i128 * b[k][j] as i128;
            }
            if let Some(m) = modulus {
                acc = acc.rem_euclid(m as i128);
            }
            out[i][j] = i64::try_from(acc).map_err(|_| Error::Capacity("action entries overflow".into()))?;
        }
    }
    Ok(out)
}

fn mat_pow(a: &Mat, e: usize, modulus: Option<i64>) -> Result<Mat> {
    (0..e).try_fold(identity(a.len()), |acc, _| mat_mul(&acc, a, modulus))
}

/// `Z^r;action=M;...` or `Z/m^r;action=M;...`, one action per generator of
/// the group; with no action the module is trivial.
pub fn parse_module(arg: &str, g: &NamedGroup) -> Result<ModuleArg> {
    let mut parts = arg.split(';');
    let head = parts.next().unwrap_or("").trim();
    let (base, rank) = match head.split_once('^') {
        Some((b, r)) => (b.trim(), r.trim().parse::<usize>().map_err(|_| parse_err(format!("bad rank in {head:?}")))?),
        None => (head, 1),
    };
    let modulus = if base == "Z" {
        None
    } else if let Some(m) = base.strip_prefix("Z/") {
        Some(m.trim().parse::<i64>().ok().filter(|&m| m >= 2).ok_or_else(|| parse_err(format!("bad modulus in {head:?}")))?)
    } else {
        return Err(parse_err(format!("module must start with Z^r or Z/m^r, got {head:?}")));
    };
    let mut actions = Vec::new();
    for p in parts {
        let p = p.trim();
        if p.is_empty() {
            continue;
        }
        let Some(m) = p.strip_prefix("action=") else {
            return Err(parse_err(format!("unknown module field {p:?}")));
        };
        actions.push(parse_matrix(m, rank)?);
    }
    if actions.is_empty() {
        actions = vec![identity(rank); g.generators];
    }
    if actions.len() != g.generators {
        return Err(parse_err(format!("group has {} generators but {} actions were given", g.generators, actions.len())));
    }
    let one = identity(rank);
    let rho = g
        .words
        .iter()
        .map(|&(i, s)| {
            let a = if g.generators > 0 { mat_pow(&actions[0], i, modulus)? } else { one.clone() };
            let b = if g.generators > 1 { mat_pow(&actions[1], s, modulus)? } else { one.clone() };
            mat_mul(&a, &b, modulus)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match modulus {
        None => ModuleArg::Free(GModuleZr::new(g.group.clone(), rank, rho)?),
        Some(m) => ModuleArg::Finite(FiniteZModule::new(g.group.clone(), vec![m as u64; rank], rho)?),
    })
}
