//! The two small systems whose Alon–Tarsi number changes under a coefficient swap.

use super::LinearSystem;
use crate::arith::{root_of_unity, FieldDescriptor, Scalar};
use crate::hypergraph::{named, Hypergraph};

fn omega_powers(rows: &[[i64; 3]]) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|r| r.iter().map(|&j| root_of_unity(3, j).unwrap()).collect())
        .collect()
}

/// The four triples of [4] over Q(ω), each bracket a permutation of (1, ω, ω²):
/// (x1+ωx2+ω²x3)(x1+ωx2+ω²x4)(ωx1+x3+ω²x4)(x2+ωx3+ω²x4). AT = 3.
pub fn tetrahedron_system() -> LinearSystem {
    let coeffs = omega_powers(&[[0, 1, 2], [0, 1, 2], [1, 0, 2], [0, 1, 2]]);
    LinearSystem::new(named::tetrahedron(), FieldDescriptor::Cyclotomic(3), coeffs).unwrap()
}

/// The same with the first two coefficients of the third bracket swapped. AT = 2.
pub fn tetrahedron_system_swapped() -> LinearSystem {
    let coeffs = omega_powers(&[[0, 1, 2], [0, 1, 2], [0, 1, 2], [0, 1, 2]]);
    LinearSystem::new(named::tetrahedron(), FieldDescriptor::Cyclotomic(3), coeffs).unwrap()
}

fn triangle() -> Hypergraph {
    Hypergraph::new(3, vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap()
}

/// (x1+x2)(2x2+x3)(x3−2x1) over Q. AT = 3.
pub fn k3_system() -> LinearSystem {
    LinearSystem::from_ints(triangle(), FieldDescriptor::Rational, &[&[1, 1], &[2, 1], &[-2, 1]]).unwrap()
}

/// (x1+x2)(x2+2x3)(x3−2x1) over Q. AT = 2.
pub fn k3_system_swapped() -> LinearSystem {
    LinearSystem::from_ints(triangle(), FieldDescriptor::Rational, &[&[1, 1], &[1, 2], &[-2, 1]]).unwrap()
}
