//! Graded free modules and homogeneous maps between them.
//!
//! Shift convention: `M[s]_d = M_{d-s}`, so the generator of `R[s]` sits in
//! degree `s`.

use serde::{Deserialize, Serialize};

use crate::coeff::Rational;
use crate::error::{AlgebraError, Result};
use crate::hilbert::{HilbertData, HilbertMode, HilbertSeries};
use crate::poly::{Homogeneity, Polynomial};
use crate::ring::PolynomialRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedFreeModule {
    pub ring: PolynomialRing,
    pub shifts: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(ring: PolynomialRing, shifts: Vec<i64>) -> Self {
        GradedFreeModule { ring, shifts }
    }

    pub fn zero(ring: PolynomialRing) -> Self {
        Self::new(ring, Vec::new())
    }

    /// `rank` copies of `R[shift]`.
    pub fn uniform(ring: PolynomialRing, rank: usize, shift: i64) -> Self {
        Self::new(ring, vec![shift; rank])
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn dim_at(&self, d: i64) -> u64 {
        self.shifts.iter().map(|&s| self.ring.dim_at(d - s)).sum()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::free(self.ring.num_vars, self.ring.var_weight, &self.shifts)
    }

    pub fn hilbert(&self, mode: HilbertMode) -> HilbertData {
        match mode {
            HilbertMode::ClosedForm => HilbertData::ClosedForm(self.hilbert_series()),
            HilbertMode::Truncated(max) => HilbertData::Truncated((0..=max).map(|d| self.dim_at(d) as i64).collect()),
        }
    }

    pub fn direct_sum(modules: &[GradedFreeModule], ring: PolynomialRing) -> Result<Self> {
        let mut shifts = Vec::new();
        for m in modules {
            if m.ring != ring {
                return Err(AlgebraError::RingMismatch);
            }
            shifts.extend_from_slice(&m.shifts);
        }
        Ok(Self::new(ring, shifts))
    }

    /// Dual module with shifts `n - s`.
    pub fn dual(&self, n: i64) -> Self {
        Self::new(self.ring, self.shifts.iter().map(|s| n - s).collect())
    }

    pub fn with_ring(&self, ring: PolynomialRing) -> Self {
        Self::new(ring, self.shifts.clone())
    }
}

/// A homogeneous matrix `source -> target`. Rows index target generators,
/// columns index source generators, and a nonzero entry `(i, j)` has degree
/// `source.shifts[j] + map_degree - target.shifts[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: Vec<Vec<Polynomial>>,
    map_degree: i64,
}

impl GradedMap {
    /// Builds and validates a map (per-entry homogeneity and degree).
    pub fn new(
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
        map_degree: i64,
    ) -> Result<Self> {
        let map = GradedMap { source, target, entries, map_degree };
        map.validate()?;
        Ok(map)
    }

    pub fn zero(source: GradedFreeModule, target: GradedFreeModule, map_degree: i64) -> Self {
        let ring = target.ring;
        let entries = vec![vec![Polynomial::zero(ring); source.rank()]; target.rank()];
        GradedMap { source, target, entries, map_degree }
    }

    /// Parses a JSON-style matrix of polynomial strings (rows are target generators).
    pub fn parse(
        source: GradedFreeModule,
        target: GradedFreeModule,
        rows: &[Vec<String>],
        map_degree: i64,
    ) -> Result<Self> {
        let ring = target.ring;
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, entries, map_degree)
    }

    /// Checks shapes, rings and entry degrees.
    pub fn validate(&self) -> Result<()> {
        let ring = self.target.ring;
        if self.source.ring != ring {
            return Err(AlgebraError::RingMismatch);
        }
        if self.entries.len() != self.target.rank() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "matrix has {} rows but target has rank {}",
                self.entries.len(),
                self.target.rank()
            )));
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.source.rank() {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "row {i} has {} entries but source has rank {}",
                    row.len(),
                    self.source.rank()
                )));
            }
            for (j, p) in row.iter().enumerate() {
                if *p.ring() != ring {
                    return Err(AlgebraError::RingMismatch);
                }
                let expected = self.expected_entry_degree(i, j);
                let found = p.homogeneous_degree();
                if !found.admits(expected) {
                    return Err(AlgebraError::InhomogeneousEntry { row: i, col: j, expected, found });
                }
            }
        }
        Ok(())
    }

    pub fn expected_entry_degree(&self, row: usize, col: usize) -> i64 {
        self.source.shifts[col] + self.map_degree - self.target.shifts[row]
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.target.ring
    }

    pub fn map_degree(&self) -> i64 {
        self.map_degree
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap> {
        if inner.target != self.source {
            return Err(AlgebraError::DimensionMismatch("inner target differs from outer source".into()));
        }
        let ring = *self.ring();
        let mut entries = vec![vec![Polynomial::zero(ring); inner.cols()]; self.rows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = Polynomial::zero(ring);
                for k in 0..self.cols() {
                    let a = &self.entries[i][k];
                    let b = &inner.entries[k][j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b)?)?;
                    }
                }
                *slot = acc;
            }
        }
        GradedMap::new(inner.source.clone(), self.target.clone(), entries, self.map_degree + inner.map_degree)
    }

    /// First nonzero entry, in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries.iter().enumerate().find_map(|(i, row)| row.iter().position(|p| !p.is_zero()).map(|j| (i, j)))
    }

    /// First entry with a nonzero constant term.
    pub fn first_constant_entry(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .enumerate()
            .find_map(|(i, row)| row.iter().position(|p| !p.constant_term().is_zero()).map(|j| (i, j)))
    }

    /// Graded transpose: `target^∨ -> source^∨` where a generator of shift
    /// `s` dualizes to shift `n - s`. The map degree is preserved.
    pub fn graded_transpose(&self, n: i64) -> GradedMap {
        let entries =
            (0..self.cols()).map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect()).collect();
        GradedMap { source: self.target.dual(n), target: self.source.dual(n), entries, map_degree: self.map_degree }
    }

    /// Block-diagonal sum of maps with the same map degree.
    pub fn direct_sum(maps: &[GradedMap], ring: PolynomialRing, map_degree: i64) -> Result<GradedMap> {
        let source = GradedFreeModule::direct_sum(&maps.iter().map(|m| m.source.clone()).collect::<Vec<_>>(), ring)?;
        let target = GradedFreeModule::direct_sum(&maps.iter().map(|m| m.target.clone()).collect::<Vec<_>>(), ring)?;
        let mut entries = vec![vec![Polynomial::zero(ring); source.rank()]; target.rank()];
        let (mut r0, mut c0) = (0, 0);
        for m in maps {
            if m.map_degree != map_degree && !m.is_zero() {
                return Err(AlgebraError::DimensionMismatch("summands have different map degrees".into()));
            }
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    entries[r0 + i][c0 + j] = m.entries[i][j].clone();
                }
            }
            r0 += m.rows();
            c0 += m.cols();
        }
        GradedMap::new(source, target, entries, map_degree)
    }

    /// Same matrix read over another coefficient ring (e.g. reduction mod p).
    pub fn change_coefficients(&self, ring: PolynomialRing) -> Result<GradedMap> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| Polynomial::from_terms(ring, p.terms().to_vec())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GradedMap::new(self.source.with_ring(ring), self.target.with_ring(ring), entries, self.map_degree)
    }

    /// Negates one entry. Used to inject faults in negative controls.
    pub fn with_entry(&self, row: usize, col: usize, value: Polynomial) -> Result<GradedMap> {
        let mut entries = self.entries.clone();
        entries[row][col] = value;
        GradedMap::new(self.source.clone(), self.target.clone(), entries, self.map_degree)
    }

    /// Rows as strings, for JSON output.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect()
    }

    pub fn scale(&self, c: &Rational) -> Result<GradedMap> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.scale(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GradedMap::new(self.source.clone(), self.target.clone(), entries, self.map_degree)
    }
}

/// Checks a candidate map without constructing it; see [`GradedMap::new`].
pub fn validate_graded_map(map: GradedMap) -> Result<GradedMap> {
    map.validate()?;
    Ok(map)
}

/// Degree of a homogeneous column vector viewed in `target`, if any.
pub(crate) fn column_degree(target: &GradedFreeModule, column: &[Polynomial]) -> Option<i64> {
    column.iter().zip(&target.shifts).find_map(|(p, s)| match p.homogeneous_degree() {
        Homogeneity::Degree(d) => Some(d + s),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;

    fn ring(n: usize, w: u32) -> PolynomialRing {
        PolynomialRing::new(CoefficientRing::Rationals, n, w).unwrap()
    }

    pub(crate) fn skew_matrix() -> Vec<Vec<String>> {
        [["0", "-t3", "t2"], ["t3", "0", "-t1"], ["-t2", "t1", "0"]]
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn skew_matrix_is_homogeneous_of_degree_one() {
        let r = ring(3, 2);
        let src = GradedFreeModule::uniform(r, 3, 2);
        let tgt = GradedFreeModule::uniform(r, 3, 1);
        assert!(GradedMap::parse(src.clone(), tgt, &skew_matrix(), 1).is_ok());
        let bad = GradedMap::parse(src, GradedFreeModule::uniform(r, 3, 0), &skew_matrix(), 1);
        assert!(matches!(bad, Err(AlgebraError::InhomogeneousEntry { row: 0, col: 1, expected: 3, .. })));
    }

    #[test]
    fn zero_matrix_between_arbitrary_shifts_is_valid() {
        let r = ring(2, 2);
        let z = GradedMap::zero(GradedFreeModule::new(r, vec![5, -3]), GradedFreeModule::new(r, vec![0, 7, 1]), 1);
        assert!(validate_graded_map(z).is_ok());
    }

    #[test]
    fn transpose_of_single_entry() {
        let r = ring(2, 2);
        let b = GradedMap::parse(
            GradedFreeModule::new(r, vec![2]),
            GradedFreeModule::new(r, vec![0]),
            &[vec!["t1".into()]],
            0,
        )
        .unwrap();
        let bt = b.graded_transpose(6);
        assert_eq!(bt.source().shifts, vec![6]);
        assert_eq!(bt.target().shifts, vec![4]);
        assert_eq!(bt.entry(0, 0).to_string(), "t1");
        assert!(bt.validate().is_ok());
        assert_eq!(bt.graded_transpose(6), b);
    }

    #[test]
    fn transpose_of_skew_matrix_is_its_negative() {
        let r = ring(3, 2);
        let b =
            GradedMap::parse(GradedFreeModule::uniform(r, 3, 2), GradedFreeModule::uniform(r, 3, 1), &skew_matrix(), 1)
                .unwrap();
        let bt = b.graded_transpose(3);
        assert_eq!(bt.source().shifts, vec![2, 2, 2]);
        assert_eq!(bt.target().shifts, vec![1, 1, 1]);
        assert!(bt.validate().is_ok());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*bt.entry(i, j), b.entry(i, j).neg());
            }
        }
    }

    #[test]
    fn direct_sum_hilbert_additivity() {
        let r = ring(2, 2);
        let parts = [
            GradedFreeModule::new(r, vec![0]),
            GradedFreeModule::new(r, vec![2, 2]),
            GradedFreeModule::new(r, vec![4]),
        ];
        let sum = GradedFreeModule::direct_sum(&parts, r).unwrap();
        // brute force: count (generator, a, b) with 2(a + b) + shift = d
        let brute: Vec<i64> = (0..=4)
            .map(|d| {
                sum.shifts
                    .iter()
                    .map(|s| {
                        (0..=4).flat_map(|a| (0..=4).map(move |b| (a, b))).filter(|(a, b)| 2 * (a + b) + s == d).count()
                            as i64
                    })
                    .sum()
            })
            .collect();
        assert_eq!(brute, vec![1, 0, 4, 0, 8]);
        assert_eq!(sum.hilbert(HilbertMode::Truncated(4)), HilbertData::Truncated(brute));
        assert_eq!(GradedFreeModule::direct_sum(&[], r).unwrap().rank(), 0);
    }

    #[test]
    fn composition_degrees_add() {
        let r = ring(2, 1);
        let a = GradedMap::parse(
            GradedFreeModule::new(r, vec![0]),
            GradedFreeModule::new(r, vec![0]),
            &[vec!["t1".into()]],
            1,
        )
        .unwrap();
        let c = a.compose(&a).unwrap();
        assert_eq!(c.map_degree(), 2);
        assert_eq!(c.entry(0, 0).to_string(), "t1^2");
    }
}
