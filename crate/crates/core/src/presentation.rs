//! Finitely generated graded modules presented as cokernels.

use serde::{Deserialize, Serialize};

use crate::coeff::CoefficientRing;
use crate::error::{AlgebraError, Result};
use crate::graded::{column_degree, GradedFreeModule, GradedMap};
use crate::hilbert::HilbertSeries;
use crate::poly::Polynomial;
use crate::ring::PolynomialRing;

/// `coker(relations: F1 -> F0)` where `F0` carries `generator_shifts` and the
/// relation map has degree zero (a relation column lives in the degree of its
/// source generator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    relations: GradedMap,
    minimal: bool,
}

impl ModulePresentation {
    pub fn new(relations: GradedMap) -> Result<Self> {
        if relations.map_degree() != 0 {
            return Err(AlgebraError::DimensionMismatch("relation maps must have degree zero".into()));
        }
        relations.validate()?;
        Ok(ModulePresentation { relations, minimal: false })
    }

    /// Builds a presentation from relation columns given as polynomial
    /// vectors; relation degrees are inferred from the entries unless given.
    pub fn from_columns(
        ring: PolynomialRing,
        generator_shifts: Vec<i64>,
        columns: Vec<Vec<Polynomial>>,
        relation_shifts: Option<Vec<i64>>,
    ) -> Result<Self> {
        let target = GradedFreeModule::new(ring, generator_shifts);
        let shifts = match relation_shifts {
            Some(s) => s,
            None => columns
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    column_degree(&target, c).ok_or_else(|| {
                        AlgebraError::DimensionMismatch(format!(
                            "relation {j} is zero or inhomogeneous; give its degree"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let rows = (0..target.rank()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let source = GradedFreeModule::new(ring, shifts);
        Self::new(GradedMap::new(source, target, rows, 0)?)
    }

    /// The free module with the given generator shifts.
    pub fn free(ring: PolynomialRing, shifts: Vec<i64>) -> Self {
        let target = GradedFreeModule::new(ring, shifts);
        let relations = GradedMap::zero(GradedFreeModule::zero(ring), target, 0);
        ModulePresentation { relations, minimal: true }
    }

    pub fn zero_module(ring: PolynomialRing) -> Self {
        Self::free(ring, Vec::new())
    }

    /// The maximal ideal `m = (t1, ..., tn)` shifted by `shift`, presented by
    /// its Koszul relations `t_i e_j - t_j e_i`.
    pub fn max_ideal(ring: PolynomialRing, shift: i64) -> Result<Self> {
        let n = ring.num_vars;
        let w = ring.weight();
        let gens = vec![shift + w; n];
        let mut cols = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut col = vec![Polynomial::zero(ring); n];
                col[i] = Polynomial::var(ring, j);
                col[j] = Polynomial::var(ring, i).neg();
                cols.push(col);
            }
        }
        let rel_shifts = vec![shift + 2 * w; cols.len()];
        Self::from_columns(ring, gens, cols, Some(rel_shifts))
    }

    pub fn ring(&self) -> &PolynomialRing {
        self.relations.ring()
    }

    pub fn generator_shifts(&self) -> &[i64] {
        &self.relations.target().shifts
    }

    pub fn relation_shifts(&self) -> &[i64] {
        &self.relations.source().shifts
    }

    pub fn relations(&self) -> &GradedMap {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn num_relations(&self) -> usize {
        self.relations.cols()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub(crate) fn mark_minimal(mut self) -> Self {
        self.minimal = true;
        self
    }

    /// Hilbert series of the free module on the generators minus that of
    /// the free module on the relations; exact only when the relations are
    /// independent, so callers use the engine for real presentations.
    pub fn naive_series_bound(&self) -> HilbertSeries {
        self.relations.target().hilbert_series().sub(&self.relations.source().hilbert_series())
    }

    /// Block direct sum of presentations over a common ring.
    pub fn direct_sum(parts: &[ModulePresentation], ring: PolynomialRing) -> Result<Self> {
        let maps: Vec<GradedMap> = parts.iter().map(|p| p.relations.clone()).collect();
        for p in parts {
            if *p.ring() != ring {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let relations = GradedMap::direct_sum(&maps, ring, 0)?;
        let minimal = parts.iter().all(|p| p.minimal);
        Ok(ModulePresentation { relations, minimal })
    }

    /// Extension of scalars to the ring with one more variable of the same
    /// weight (adding a trivially acting circle factor).
    pub fn add_trivial_variable(&self) -> Result<Self> {
        let ring = self.ring().extended()?;
        let rows = self
            .relations
            .entries()
            .iter()
            .map(|row| row.iter().map(|p| p.embed(ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let map =
            GradedMap::new(self.relations.source().with_ring(ring), self.relations.target().with_ring(ring), rows, 0)?;
        Ok(ModulePresentation { relations: map, minimal: self.minimal })
    }

    pub fn change_coefficients(&self, coefficients: CoefficientRing) -> Result<Self> {
        let ring = self.ring().with_coefficients(coefficients);
        Ok(ModulePresentation { relations: self.relations.change_coefficients(ring)?, minimal: false })
    }

    pub fn to_descriptor(&self) -> PresentationDescriptor {
        PresentationDescriptor {
            ring: RingDescriptor::from_ring(self.ring()),
            shifts: self.generator_shifts().to_vec(),
            relations: self.relations.to_strings(),
            relation_shifts: Some(self.relation_shifts().to_vec()),
        }
    }
}

/// `{coeff, n, w}` as used in JSON module descriptors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub coeff: String,
    pub n: usize,
    pub w: u32,
}

impl RingDescriptor {
    pub fn from_ring(ring: &PolynomialRing) -> Self {
        RingDescriptor { coeff: ring.coefficients.label(), n: ring.num_vars, w: ring.var_weight }
    }

    pub fn to_ring(&self) -> Result<PolynomialRing> {
        PolynomialRing::new(self.coeff.parse()?, self.n, self.w)
    }
}

/// JSON module descriptor: `{ring: {coeff, n, w}, shifts: [..]}` extended
/// with an optional relation matrix (rows are generators, entries are
/// polynomial strings) and optional relation degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDescriptor {
    pub ring: RingDescriptor,
    pub shifts: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_shifts: Option<Vec<i64>>,
}

impl PresentationDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))
    }

    pub fn to_presentation(&self) -> Result<ModulePresentation> {
        let ring = self.ring.to_ring()?;
        if !self.relations.is_empty() && self.relations.len() != self.shifts.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "relation matrix has {} rows for {} generators",
                self.relations.len(),
                self.shifts.len()
            )));
        }
        let ncols = self.relations.first().map_or(0, |r| r.len());
        let parsed: Vec<Vec<Polynomial>> = self
            .relations
            .iter()
            .map(|row| {
                if row.len() != ncols {
                    return Err(AlgebraError::DimensionMismatch("ragged relation matrix".into()));
                }
                row.iter().map(|s| Polynomial::parse(ring, s)).collect()
            })
            .collect::<Result<_>>()?;
        let columns = (0..ncols).map(|j| parsed.iter().map(|row| row[j].clone()).collect()).collect();
        ModulePresentation::from_columns(ring, self.shifts.clone(), columns, self.relation_shifts.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize, w: u32) -> PolynomialRing {
        PolynomialRing::new(CoefficientRing::Rationals, n, w).unwrap()
    }

    #[test]
    fn max_ideal_presentation_shape() {
        let m = ModulePresentation::max_ideal(ring(3, 2), 0).unwrap();
        assert_eq!(m.generator_shifts(), &[2, 2, 2]);
        assert_eq!(m.relation_shifts(), &[4, 4, 4]);
    }

    #[test]
    fn descriptor_round_trip() {
        let text = r#"{"ring": {"coeff": "Q", "n": 2, "w": 2}, "shifts": [0], "relations": [["t1"]]}"#;
        let p = PresentationDescriptor::from_json(text).unwrap().to_presentation().unwrap();
        assert_eq!(p.relation_shifts(), &[2]);
        let back = p.to_descriptor().to_presentation().unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn trivial_variable_extension_keeps_matrix() {
        let m = ModulePresentation::max_ideal(ring(2, 2), 0).unwrap();
        let e = m.add_trivial_variable().unwrap();
        assert_eq!(e.ring().num_vars, 3);
        assert_eq!(e.num_generators(), 2);
        assert_eq!(e.relations().to_strings(), m.relations().to_strings());
        let z = ModulePresentation::zero_module(ring(2, 2)).add_trivial_variable().unwrap();
        assert_eq!(z.num_generators(), 0);
    }

    #[test]
    fn zero_column_needs_explicit_degree() {
        let r = ring(1, 1);
        let col = vec![vec![Polynomial::zero(r)]];
        assert!(ModulePresentation::from_columns(r, vec![0], col.clone(), None).is_err());
        assert!(ModulePresentation::from_columns(r, vec![0], col, Some(vec![3])).is_ok());
    }
}
