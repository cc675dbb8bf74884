//! Fixed inputs for the engine benchmarks.

use num_bigint::BigInt;

use mutants_core::builders::{koszul_complex, mutant_complex, MutantSpec};
use mutants_core::engine::degreewise::slice_matrix;
use mutants_core::{CochainComplex, CoefficientRing, GradedMap};

/// The first Koszul differential on `n` variables, `Λ^n -> Λ^{n-1}` shifted
/// down to the interesting end `Λ^2 -> Λ^1`.
pub fn koszul_map(n: usize) -> GradedMap {
    let c = koszul_complex(n, 2, CoefficientRing::Rationals).expect("valid Koszul complex");
    c.differentials()[n - 2].clone()
}

pub fn torus(r: usize, coefficients: CoefficientRing) -> CochainComplex {
    mutant_complex(&MutantSpec::torus(r, coefficients).expect("valid r")).expect("valid complex")
}

/// Dense integer matrix of the slice differential at `position` in degree `d`.
pub fn integer_slice(c: &CochainComplex, position: usize, d: i64) -> Vec<Vec<BigInt>> {
    slice_matrix(c, position, d)
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.numer()).collect())
        .collect()
}
