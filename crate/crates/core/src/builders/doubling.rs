//! Doubling a presentation into a self-dual two-term complex.

use crate::complex::{build_complex, CochainComplex, ComplexChecks};
use crate::engine::symbolic::minimal_presentation;
use crate::error::{AlgebraError, Result};
use crate::graded::{GradedFreeModule, GradedMap};
use crate::presentation::ModulePresentation;

/// The doubled complex together with the data it was built from.
#[derive(Clone, Debug)]
pub struct Doubling {
    pub complex: CochainComplex,
    /// Minimal presentation `B: F1 -> F0` actually used.
    pub presentation: ModulePresentation,
    pub n: i64,
    /// The differential block `F1 -> F0`, shifted to degree +1.
    pub b: GradedMap,
    /// `Bᵀ: F0' -> F1'` with dual shifts `n - s`.
    pub b_transpose: GradedMap,
}

/// Largest generator or relation degree of a presentation.
fn max_degree(p: &ModulePresentation) -> i64 {
    p.generator_shifts().iter().chain(p.relation_shifts()).copied().max().unwrap_or(0)
}

/// Default `n`: twice the largest degree of `F0, F1` plus the variable weight.
pub fn default_doubling_n(p: &ModulePresentation) -> i64 {
    2 * max_degree(p) + p.ring().weight()
}

/// Builds `R ⊕ F1 ⊕ F0' ⊕ R[n] -> F0 ⊕ F1'` with differential
/// `diag(0, B, Bᵀ, 0)`, where primed modules are graded duals with shifts
/// `n - s`. `B` is minimalized first. With `n = None` the default is used;
/// an explicit `n` below twice the largest degree is rejected.
pub fn doubling_complex(p: &ModulePresentation, n: Option<i64>) -> Result<Doubling> {
    let min = minimal_presentation(p)?;
    let top = max_degree(&min);
    let n = n.unwrap_or_else(|| default_doubling_n(&min));
    if n < 2 * top {
        return Err(AlgebraError::ShiftTooSmall { dual: n - top, primal: top, minimum: 2 * top });
    }
    doubling_unchecked(min, n)
}

/// Same construction without the dual-shift check, for small `n` where dual
/// and primal degrees may coincide.
pub fn doubling_complex_unchecked(p: &ModulePresentation, n: i64) -> Result<Doubling> {
    doubling_unchecked(minimal_presentation(p)?, n)
}

fn doubling_unchecked(min: ModulePresentation, n: i64) -> Result<Doubling> {
    let ring = *min.ring();
    let rel = min.relations();
    // a relation of degree s becomes a generator of shift s - 1 so that B has degree +1
    let f1 = GradedFreeModule::new(ring, rel.source().shifts.iter().map(|s| s - 1).collect());
    let b = GradedMap::new(f1, rel.target().clone(), rel.entries().to_vec(), 1)?;
    let b_transpose = b.graded_transpose(n);
    let empty = GradedFreeModule::zero(ring);
    let bottom = GradedMap::zero(GradedFreeModule::new(ring, vec![0]), empty.clone(), 1);
    let top = GradedMap::zero(GradedFreeModule::new(ring, vec![n]), empty, 1);
    let d = GradedMap::direct_sum(&[bottom, b.clone(), b_transpose.clone(), top], ring, 1)?;
    let terms = vec![d.source().clone(), d.target().clone()];
    let complex = build_complex(terms, vec![d], ComplexChecks::minimal())?
        .with_labels(vec!["R ⊕ F1 ⊕ F0' ⊕ R[n]".into(), "F0 ⊕ F1'".into()]);
    Ok(Doubling { complex, presentation: min, n, b, b_transpose })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;
    use crate::engine::symbolic::{betti_table, cohomology_presentation};
    use crate::poly::Polynomial;
    use crate::ring::PolynomialRing;

    fn ring(n: usize) -> PolynomialRing {
        PolynomialRing::new(CoefficientRing::Rationals, n, 2).unwrap()
    }

    #[test]
    fn principal_relation() {
        let r = ring(2);
        let p = ModulePresentation::from_columns(r, vec![0], vec![vec![Polynomial::var(r, 0)]], None).unwrap();
        let d = doubling_complex(&p, Some(8)).unwrap();
        assert_eq!(d.complex.term(0).shifts, vec![0, 1, 8, 8]);
        assert_eq!(d.complex.term(1).shifts, vec![0, 7]);
        assert_eq!(default_doubling_n(&d.presentation), 6);
        let h0 = cohomology_presentation(&d.complex, 0).unwrap();
        // ker(t1) = 0: H^0 = R ⊕ R[8]
        assert_eq!(h0.generator_shifts(), &[0, 8]);
        assert_eq!(h0.num_relations(), 0);
        let h1 = cohomology_presentation(&d.complex, 1).unwrap();
        assert_eq!(h1.generator_shifts(), &[0, 7]);
        assert_eq!(h1.relation_shifts(), &[2, 9]);
    }

    #[test]
    fn rejects_small_n() {
        let r = ring(2);
        let p = ModulePresentation::from_columns(r, vec![0], vec![vec![Polynomial::var(r, 0)]], None).unwrap();
        assert_eq!(
            doubling_complex(&p, Some(3)).unwrap_err(),
            AlgebraError::ShiftTooSmall { dual: 1, primal: 2, minimum: 4 }
        );
    }

    #[test]
    fn free_module_doubles_to_free_pieces() {
        let r = ring(2);
        let d = doubling_complex(&ModulePresentation::free(r, vec![0, 2]), None).unwrap();
        assert_eq!(d.n, 6);
        assert!(d.complex.differentials()[0].is_zero());
        assert_eq!(d.complex.term(0).shifts, vec![0, 6, 4, 6]);
        assert_eq!(d.complex.term(1).shifts, vec![0, 2]);
    }

    #[test]
    fn skew_matrix_at_n3_contains_its_cokernel_twice() {
        let r = ring(3);
        let t = |i| Polynomial::var(r, i);
        let z = || Polynomial::zero(r);
        let cols = vec![vec![z(), t(2), t(1).neg()], vec![t(2).neg(), z(), t(0)], vec![t(1), t(0).neg(), z()]];
        let p = ModulePresentation::from_columns(r, vec![1, 1, 1], cols, None).unwrap();
        let d = doubling_complex_unchecked(&p, 3).unwrap();
        assert_eq!(d.complex.term(0).shifts, vec![0, 2, 2, 2, 2, 2, 2, 3]);
        assert_eq!(d.complex.term(1).shifts, vec![1, 1, 1, 1, 1, 1]);
        let coker = betti_table(&p).unwrap();
        let h1 = betti_table(&cohomology_presentation(&d.complex, 1).unwrap()).unwrap();
        assert_eq!(h1, coker.direct_sum(&coker));
    }
}
