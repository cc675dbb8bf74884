//! Closed-form direct sums of shifted free modules and shifted maximal ideals.

use std::fmt;

use serde::Serialize;

use crate::engine::symbolic::GradedBettiTable;
use crate::error::Result;
use crate::hilbert::HilbertSeries;
use crate::presentation::ModulePresentation;
use crate::ring::{binomial, PolynomialRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Summand {
    /// `R[s]`.
    Free(i64),
    /// `m[s]`, generated in degree `s + w`.
    MaxIdeal(i64),
}

/// The structural verdict of [`crate::verify::classify_module`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleClass {
    Free,
    TorsionFreeNotFree,
    HasTorsion,
}

impl fmt::Display for ModuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleClass::Free => "free",
            ModuleClass::TorsionFreeNotFree => "torsion_free_not_free",
            ModuleClass::HasTorsion => "has_torsion",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionSpec {
    pub ring: PolynomialRing,
    pub summands: Vec<Summand>,
}

impl DecompositionSpec {
    pub fn new(ring: PolynomialRing, summands: Vec<Summand>) -> Self {
        DecompositionSpec { ring, summands }
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        let (n, w) = (self.ring.num_vars, self.ring.var_weight);
        self.summands.iter().fold(HilbertSeries::zero(n, w), |acc, s| {
            acc.add(&match *s {
                Summand::Free(sh) => HilbertSeries::free(n, w, &[sh]),
                Summand::MaxIdeal(sh) => HilbertSeries::max_ideal(n, w, sh),
            })
        })
    }

    /// Betti table: `R[s]` contributes `β_0 = {s}`, `m[s]` the truncated
    /// Koszul resolution `β_i = C(n, i+1)` in degree `s + (i+1)w`.
    pub fn betti_table(&self) -> GradedBettiTable {
        let n = self.ring.num_vars;
        let w = self.ring.weight();
        let mut rows: Vec<Vec<i64>> = vec![Vec::new(); n.max(1)];
        for s in &self.summands {
            match *s {
                Summand::Free(sh) => rows[0].push(sh),
                Summand::MaxIdeal(sh) => {
                    for (i, row) in rows.iter_mut().enumerate() {
                        let count = binomial(n as u64, i as u64 + 1) as usize;
                        row.extend(std::iter::repeat_n(sh + (i as i64 + 1) * w, count));
                    }
                }
            }
        }
        GradedBettiTable::from_degrees(rows)
    }

    /// Rank over the fraction field: every summand has rank one.
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Analytic classification (`m` is torsion-free and, for two or more
    /// variables, not free).
    pub fn classification(&self) -> ModuleClass {
        let has_ideal = self.summands.iter().any(|s| matches!(s, Summand::MaxIdeal(_)));
        if has_ideal && self.ring.num_vars >= 2 {
            ModuleClass::TorsionFreeNotFree
        } else {
            ModuleClass::Free
        }
    }

    /// Largest degree of a minimal generator or first-order relation.
    pub fn max_degree(&self) -> i64 {
        let w = self.ring.weight();
        let two_vars = self.ring.num_vars >= 2;
        self.summands
            .iter()
            .map(|s| match *s {
                Summand::Free(sh) => sh,
                Summand::MaxIdeal(sh) if two_vars => sh + 2 * w,
                Summand::MaxIdeal(sh) => sh + w,
            })
            .max()
            .unwrap_or(0)
    }

    /// A presentation of the decomposition (Koszul relations for `m`).
    pub fn presentation(&self) -> Result<ModulePresentation> {
        let parts = self
            .summands
            .iter()
            .map(|s| match *s {
                Summand::Free(sh) => Ok(ModulePresentation::free(self.ring, vec![sh])),
                Summand::MaxIdeal(sh) => ModulePresentation::max_ideal(self.ring, sh),
            })
            .collect::<Result<Vec<_>>>()?;
        ModulePresentation::direct_sum(&parts, self.ring)
    }
}

impl fmt::Display for DecompositionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| match *s {
                Summand::Free(0) => "R".to_string(),
                Summand::Free(sh) => format!("R[{sh}]"),
                Summand::MaxIdeal(0) => "m".to_string(),
                Summand::MaxIdeal(sh) => format!("m[{sh}]"),
            })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;
    use crate::engine::symbolic::betti_table;

    fn example() -> DecompositionSpec {
        let ring = PolynomialRing::new(CoefficientRing::Rationals, 3, 2).unwrap();
        DecompositionSpec::new(ring, vec![Summand::Free(0), Summand::MaxIdeal(-1), Summand::Free(3), Summand::Free(4)])
    }

    #[test]
    fn closed_forms() {
        let d = example();
        assert_eq!(d.to_string(), "R ⊕ m[-1] ⊕ R[3] ⊕ R[4]");
        assert_eq!(d.hilbert_series().truncate(5), vec![1, 3, 3, 7, 7, 13]);
        assert_eq!(
            d.betti_table(),
            GradedBettiTable::from_degrees(vec![vec![0, 1, 1, 1, 3, 4], vec![3, 3, 3], vec![5]])
        );
        assert_eq!(d.classification(), ModuleClass::TorsionFreeNotFree);
        assert_eq!(d.max_degree(), 4);
        assert_eq!(d.rank(), 4);
    }

    #[test]
    fn betti_table_agrees_with_engine_on_presentation() {
        let d = example();
        assert_eq!(betti_table(&d.presentation().unwrap()).unwrap(), d.betti_table());
    }
}
