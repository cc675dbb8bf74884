//! Cochain complexes of graded free modules with degree +1 differentials.

use crate::coeff::CoefficientRing;
use crate::error::{AlgebraError, Result};
use crate::graded::{GradedFreeModule, GradedMap};
use crate::ring::PolynomialRing;

/// `T_0 -> T_1 -> ... -> T_k`, every differential raising the single total
/// degree by one. Cohomological position is the index into `terms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    ring: PolynomialRing,
    terms: Vec<GradedFreeModule>,
    differentials: Vec<GradedMap>,
    labels: Vec<String>,
}

/// Which optional checks [`build_complex`] performs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComplexChecks {
    /// Reject differentials with a nonzero constant entry (image not in `m`).
    pub minimality: bool,
}

impl ComplexChecks {
    pub fn minimal() -> Self {
        ComplexChecks { minimality: true }
    }
}

/// Validates and assembles a complex: consecutive shapes match, each
/// differential has map degree +1, consecutive composites vanish, and
/// optionally every entry lies in the maximal ideal.
pub fn build_complex(
    terms: Vec<GradedFreeModule>,
    differentials: Vec<GradedMap>,
    checks: ComplexChecks,
) -> Result<CochainComplex> {
    let ring = terms
        .first()
        .map(|t| t.ring)
        .ok_or_else(|| AlgebraError::DimensionMismatch("a complex needs at least one term".into()))?;
    if differentials.len() + 1 != terms.len() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{} terms need {} differentials, got {}",
            terms.len(),
            terms.len() - 1,
            differentials.len()
        )));
    }
    for (p, d) in differentials.iter().enumerate() {
        if *d.source() != terms[p] || *d.target() != terms[p + 1] {
            return Err(AlgebraError::DimensionMismatch(format!(
                "differential at position {p} does not map term {p} to term {}",
                p + 1
            )));
        }
        if d.map_degree() != 1 {
            return Err(AlgebraError::WrongMapDegree { position: p, found: d.map_degree() });
        }
        if checks.minimality {
            if let Some((row, col)) = d.first_constant_entry() {
                return Err(AlgebraError::NotMinimal { position: p, row, col });
            }
        }
    }
    for p in 0..differentials.len().saturating_sub(1) {
        let sq = differentials[p + 1].compose(&differentials[p])?;
        if let Some((row, col)) = sq.first_nonzero() {
            return Err(AlgebraError::NonzeroSquare { position: p, row, col });
        }
    }
    let labels = (0..terms.len()).map(|p| format!("C{p}")).collect();
    Ok(CochainComplex { ring, terms, differentials, labels })
}

impl CochainComplex {
    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn terms(&self) -> &[GradedFreeModule] {
        &self.terms
    }

    pub fn term(&self, position: usize) -> &GradedFreeModule {
        &self.terms[position]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn differentials(&self) -> &[GradedMap] {
        &self.differentials
    }

    /// Differential leaving `position`, if any.
    pub fn outgoing(&self, position: usize) -> Option<&GradedMap> {
        self.differentials.get(position)
    }

    /// Differential arriving at `position`, if any.
    pub fn incoming(&self, position: usize) -> Option<&GradedMap> {
        position.checked_sub(1).and_then(|p| self.differentials.get(p))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.terms.len());
        self.labels = labels;
        self
    }

    pub fn max_shift(&self) -> i64 {
        self.terms.iter().flat_map(|t| t.shifts.iter().copied()).max().unwrap_or(0)
    }

    pub fn min_shift(&self) -> i64 {
        self.terms.iter().flat_map(|t| t.shifts.iter().copied()).min().unwrap_or(0)
    }

    /// The same complex over another coefficient ring (reduction mod p, or
    /// reading integer coefficients as rationals).
    pub fn change_coefficients(&self, coefficients: CoefficientRing) -> Result<CochainComplex> {
        let ring = self.ring.with_coefficients(coefficients);
        let terms = self.terms.iter().map(|t| t.with_ring(ring)).collect();
        let differentials =
            self.differentials.iter().map(|d| d.change_coefficients(ring)).collect::<Result<Vec<_>>>()?;
        Ok(build_complex(terms, differentials, ComplexChecks::default())?.with_labels(self.labels.clone()))
    }

    /// Replaces one differential, re-running every validity check.
    pub fn with_differential(&self, position: usize, d: GradedMap) -> Result<CochainComplex> {
        let mut diffs = self.differentials.clone();
        diffs[position] = d;
        Ok(build_complex(self.terms.clone(), diffs, ComplexChecks::default())?.with_labels(self.labels.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;
    use crate::poly::Polynomial;
    use proptest::prelude::*;

    fn ring(n: usize, w: u32) -> PolynomialRing {
        PolynomialRing::new(CoefficientRing::Rationals, n, w).unwrap()
    }

    fn example_complex() -> Result<CochainComplex> {
        let r = ring(3, 2);
        let rows: Vec<Vec<String>> = [["0", "-t3", "t2"], ["t3", "0", "-t1"], ["-t2", "t1", "0"]]
            .iter()
            .map(|row| row.iter().map(|s| s.to_string()).collect())
            .collect();
        let y = GradedFreeModule::uniform(r, 3, 2);
        let x = GradedFreeModule::uniform(r, 3, 1);
        let b = GradedMap::parse(y.clone(), x.clone(), &rows, 1)?;
        build_complex(vec![y, x], vec![b], ComplexChecks::minimal())
    }

    #[test]
    fn example_with_single_differential_is_valid() {
        let c = example_complex().unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn identity_differential_fails_minimality() {
        let r = ring(1, 1);
        let a = GradedFreeModule::new(r, vec![0]);
        let b = GradedFreeModule::new(r, vec![1]);
        let id = GradedMap::new(a.clone(), b.clone(), vec![vec![Polynomial::one(r)]], 1).unwrap();
        let err = build_complex(vec![a.clone(), b.clone()], vec![id.clone()], ComplexChecks::minimal());
        assert_eq!(err, Err(AlgebraError::NotMinimal { position: 0, row: 0, col: 0 }));
        assert!(build_complex(vec![a, b], vec![id], ComplexChecks::default()).is_ok());
    }

    #[test]
    fn wrong_map_degree_rejected() {
        let r = ring(1, 1);
        let a = GradedFreeModule::new(r, vec![0]);
        let z = GradedMap::zero(a.clone(), a.clone(), 0);
        assert!(matches!(
            build_complex(vec![a.clone(), a], vec![z], ComplexChecks::default()),
            Err(AlgebraError::WrongMapDegree { position: 0, found: 0 })
        ));
    }

    #[test]
    fn single_term_complex_is_valid() {
        let r = ring(2, 2);
        assert!(build_complex(vec![GradedFreeModule::new(r, vec![0])], vec![], ComplexChecks::minimal()).is_ok());
    }

    proptest! {
        // random homogeneous B: R[1]^2 -> R[0]^2 (linear entries, w = 1), followed by C with C∘B != 0
        #[test]
        fn nonzero_composite_is_rejected(coeffs in prop::collection::vec(-2i64..3, 12)) {
            let r = ring(2, 1);
            let lin = |a: i64, b: i64| Polynomial::parse(r, &format!("{a}*t1 + {b}*t2")).unwrap();
            let f2 = GradedFreeModule::uniform(r, 2, 0);
            let f1 = GradedFreeModule::uniform(r, 2, 0);
            let f0 = GradedFreeModule::uniform(r, 1, 0);
            let b = GradedMap::new(f2.clone(), f1.clone(), vec![
                vec![lin(coeffs[0], coeffs[1]), lin(coeffs[2], coeffs[3])],
                vec![lin(coeffs[4], coeffs[5]), lin(coeffs[6], coeffs[7])],
            ], 1).unwrap();
            let c = GradedMap::new(f1.clone(), f0.clone(), vec![
                vec![lin(coeffs[8], coeffs[9]), lin(coeffs[10], coeffs[11])],
            ], 1).unwrap();
            let composite_zero = c.compose(&b).unwrap().is_zero();
            let built = build_complex(vec![f2, f1, f0], vec![b, c], ComplexChecks::default());
            prop_assert_eq!(built.is_ok(), composite_zero);
            if !composite_zero {
                let is_square_err = matches!(built, Err(AlgebraError::NonzeroSquare { .. }));
                prop_assert!(is_square_err);
            }
        }
    }
}
