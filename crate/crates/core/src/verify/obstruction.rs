//! The degree-one counting obstruction to being the cohomology of a
//! minimal free model: if `H` embeds in `H^*(X^T) ⊗ R` with `R` generated
//! in even degrees, then `dim H^1` is at most the rank of `H^odd`.

use serde::Serialize;

use crate::engine::symbolic::{presentation_hilbert, rank_of_module};
use crate::error::Result;
use crate::graded::{GradedFreeModule, GradedMap};
use crate::hilbert::HilbertMode;
use crate::presentation::ModulePresentation;

use super::decomposition::{DecompositionSpec, Summand};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    /// False when the variables have odd weight (no parity splitting).
    pub applicable: bool,
    pub dim_h1: i64,
    pub odd_rank: i64,
    pub obstructed: bool,
    pub message: String,
}

fn verdict(w: u32, dim_h1: i64, odd_rank: i64) -> ObstructionReport {
    if w % 2 == 1 {
        return ObstructionReport {
            applicable: false,
            dim_h1,
            odd_rank,
            obstructed: false,
            message: "not applicable: variables of odd degree mix parities".into(),
        };
    }
    let obstructed = dim_h1 > odd_rank;
    let message = if obstructed {
        format!("dim H^1 = {dim_h1} > rk H^odd = {odd_rank}: not realizable as minimal Hirsch-Brown model")
    } else {
        format!("dim H^1 = {dim_h1} <= rk H^odd = {odd_rank}: no obstruction")
    };
    ObstructionReport { applicable: true, dim_h1, odd_rank, obstructed, message }
}

/// Obstruction report for a closed-form decomposition.
pub fn realizability_obstruction(h: &DecompositionSpec) -> ObstructionReport {
    let dim_h1 = h.hilbert_series().value_at(1);
    let w = h.ring.weight();
    let odd_rank = h
        .summands
        .iter()
        .filter(|s| match **s {
            Summand::Free(sh) => sh.rem_euclid(2) == 1,
            // m[s] lives in degrees s + kw, of the parity of s when w is even
            Summand::MaxIdeal(sh) => (sh + w).rem_euclid(2) == 1,
        })
        .count() as i64;
    verdict(h.ring.var_weight, dim_h1, odd_rank)
}

/// Obstruction report for a presented module. With `w` even, homogeneous
/// relations never mix generators of different parity, so the odd part is
/// the sub-presentation on odd generators and odd relations.
pub fn obstruction_from_presentation(m: &ModulePresentation) -> Result<ObstructionReport> {
    let ring = *m.ring();
    let dim_h1 = presentation_hilbert(m, HilbertMode::Truncated(1))?.truncated(1).get(1).copied().unwrap_or(0);
    if ring.var_weight % 2 == 1 {
        return Ok(verdict(ring.var_weight, dim_h1, 0));
    }
    let rel = m.relations();
    let rows: Vec<usize> = (0..rel.rows()).filter(|&i| rel.target().shifts[i].rem_euclid(2) == 1).collect();
    let cols: Vec<usize> = (0..rel.cols()).filter(|&j| rel.source().shifts[j].rem_euclid(2) == 1).collect();
    let entries = rows.iter().map(|&i| cols.iter().map(|&j| rel.entry(i, j).clone()).collect()).collect();
    let odd = GradedMap::new(
        GradedFreeModule::new(ring, cols.iter().map(|&j| rel.source().shifts[j]).collect()),
        GradedFreeModule::new(ring, rows.iter().map(|&i| rel.target().shifts[i]).collect()),
        entries,
        0,
    )?;
    let odd_rank = rank_of_module(&ModulePresentation::new(odd)?)? as i64;
    Ok(verdict(ring.var_weight, dim_h1, odd_rank))
}
