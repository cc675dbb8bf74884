//! Predicted cohomology of the stretched Koszul complexes.

use crate::error::Result;
use crate::verify::decomposition::{DecompositionSpec, Summand};

use super::complexes::MutantSpec;

/// `R ⊕ R[s_1]² ⊕ R[top]` for `r = 1`, otherwise
/// `R ⊕ m[s_1 - w] ⊕ R[top] ⊕ R[s_r + w]`, where `s_k` is the shift of the
/// exterior degree-`k` stratum.
pub fn expected_cohomology(spec: &MutantSpec) -> Result<DecompositionSpec> {
    spec.validate()?;
    let w = spec.w as i64;
    let s1 = spec.slice_shift(1);
    let top = spec.top_shift();
    let summands = if spec.r == 1 {
        vec![Summand::Free(0), Summand::Free(s1), Summand::Free(s1), Summand::Free(top)]
    } else {
        vec![
            Summand::Free(0),
            Summand::MaxIdeal(s1 - w),
            Summand::Free(top),
            Summand::Free(spec.slice_shift(spec.r) + w),
        ]
    };
    Ok(DecompositionSpec::new(spec.ring()?, summands))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;

    #[test]
    fn closed_forms() {
        let q = CoefficientRing::Rationals;
        let s = |spec: MutantSpec| expected_cohomology(&spec).unwrap().to_string();
        assert_eq!(s(MutantSpec::example_3_3(q)), "R ⊕ m[-1] ⊕ R[3] ⊕ R[4]");
        assert_eq!(s(MutantSpec::torus(4, q).unwrap()), "R ⊕ m[3] ⊕ R[13] ⊕ R[10]");
        assert_eq!(s(MutantSpec::torus(1, q).unwrap()), "R ⊕ R[2] ⊕ R[2] ⊕ R[4]");
        assert_eq!(s(MutantSpec::two_torus(1).unwrap()), "R ⊕ R[1] ⊕ R[1] ⊕ R[2]");
        assert_eq!(s(MutantSpec::two_torus(8).unwrap()), "R ⊕ m[7] ⊕ R[16] ⊕ R[9]");
    }
}
