//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use p1omega::cohomology::{FiniteGroup, GGroup, GModuleZr};
use p1omega::{BinaryForm, PointConfig, SPrimeSet};

/// Forms of degree 2 through 6 with moderately sized coefficients.
pub fn sample_forms() -> Vec<BinaryForm> {
    [
        &[3i64, -7, 11][..],
        &[2, 5, -9, 14],
        &[1, -3, 8, 0, -17],
        &[6, 1, -4, 13, -2, 9],
        &[5, 0, -12, 7, 3, -1, 20],
    ]
    .iter()
    .map(|c| BinaryForm::from_i64(c).expect("nonzero"))
    .collect()
}

/// Six rational points in general position.
pub fn sample_config() -> PointConfig {
    "1:0,0:1,1:1,-1:1,3:2,-5:7".parse().expect("distinct points")
}

pub fn s23() -> SPrimeSet {
    SPrimeSet::new(vec![2, 3]).expect("primes")
}

/// `Z/2` acting on the dihedral group of order 8 by conjugation with a
/// reflection.
pub fn dihedral_by_reflection() -> Arc<GGroup> {
    let d4 = Arc::new(FiniteGroup::dihedral(4));
    let alpha = d4.conjugation(4);
    Arc::new(GGroup::cyclic_by(2, d4, &alpha).expect("inner automorphism"))
}

/// `Z/3` acting on `Z^2` through the order-3 matrix `[[0, -1], [1, -1]]`.
pub fn rotation_lattice() -> GModuleZr {
    GModuleZr::cyclic(3, vec![vec![0, -1], vec![1, -1]]).expect("order 3")
}
