//! The filtration of `Z^l` describing `H^*(Z_r)` for the finite group case
//! and the intersection form on its middle quotient.
//!
//! `l = 2^{r+1}` fixed points; the pairing `β(a, b) = Σ (-1)^j a_j b_j` is
//! a reconstruction: it is compatible with `σ` and reproduces the
//! hyperbolic Gram matrix on the basis `v_i`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::engine::smith::smith_normal_form;
use crate::error::{AlgebraError, Result};

/// `F_0 = Z·1 ⊂ F_r = ker σ ⊂ F_{2r} = Z^l`, with `σ(e_j) = (-1)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationModel {
    pub r: u32,
    pub l: usize,
}

impl FiltrationModel {
    pub fn new(r: u32) -> Result<Self> {
        if r != 2 && r != 4 {
            return Err(AlgebraError::InvalidSpec(format!("the filtration model needs r = 2 or 4, got {r}")));
        }
        Ok(FiltrationModel { r, l: 1 << (r + 1) })
    }

    fn sign(j: usize) -> i64 {
        // 1-based coordinate j
        if j.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn sigma(&self, v: &[i64]) -> i64 {
        v.iter().enumerate().map(|(k, x)| Self::sign(k + 1) * x).sum()
    }

    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).enumerate().map(|(k, (x, y))| Self::sign(k + 1) * x * y).sum()
    }

    pub fn ones(&self) -> Vec<i64> {
        vec![1; self.l]
    }

    /// `v_i`, `i = 1..l-2`: ones at `i+1, i+2` for odd `i`, at `1..=i` for even `i`.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        (1..=self.l - 2)
            .map(|i| {
                let mut v = vec![0; self.l];
                if i % 2 == 1 {
                    v[i] = 1;
                    v[i + 1] = 1;
                } else {
                    v[..i].iter_mut().for_each(|x| *x = 1);
                }
                v
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionForm {
    pub r: u32,
    pub l: usize,
    pub gram: Vec<Vec<i64>>,
    /// Every `v_i` lies in `ker σ = F_r`.
    pub in_kernel: bool,
    /// `β(1, v_i) = 0`, so `β` descends to `F_r / F_{r-1}`.
    pub descends: bool,
    /// `1, v_1, ..., v_{l-2}` is a basis of `ker σ` (all Smith invariants 1).
    pub spans_kernel: bool,
    /// The Gram matrix is `H ⊕ ... ⊕ H` on `(v1, v2), (v3, v4), ...`.
    pub hyperbolic: bool,
    pub blocks: usize,
    /// `(l - 2) / 2 = 2^r - 1`, the connected-sum count.
    pub block_count_matches: bool,
}

impl IntersectionForm {
    pub fn passes(&self) -> bool {
        self.in_kernel && self.descends && self.spans_kernel && self.hyperbolic && self.block_count_matches
    }
}

pub fn intersection_form(r: u32) -> Result<IntersectionForm> {
    let model = FiltrationModel::new(r)?;
    let v = model.basis();
    let ones = model.ones();
    let in_kernel = v.iter().all(|x| model.sigma(x) == 0) && model.sigma(&ones) == 0;
    let descends = v.iter().all(|x| model.pairing(&ones, x) == 0);
    let mut columns = vec![ones.clone()];
    columns.extend(v.iter().cloned());
    let matrix: Vec<Vec<BigInt>> =
        (0..model.l).map(|row| columns.iter().map(|c| BigInt::from(c[row])).collect()).collect();
    let snf = smith_normal_form(&matrix);
    // ker σ is saturated of rank l - 1, so a saturated rank l - 1 sublattice of it is all of it
    let spans_kernel = in_kernel && snf.rank() == model.l - 1 && snf.invariant_factors().is_empty();
    let gram: Vec<Vec<i64>> = v.iter().map(|a| v.iter().map(|b| model.pairing(a, b)).collect()).collect();
    let hyperbolic = gram
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i / 2 == j / 2 && i != j)));
    let blocks = gram.len() / 2;
    Ok(IntersectionForm {
        r,
        l: model.l,
        gram,
        in_kernel,
        descends,
        spans_kernel,
        hyperbolic,
        blocks,
        block_count_matches: blocks == (1 << r) - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_values() {
        let f = intersection_form(2).unwrap();
        assert_eq!(f.l, 8);
        assert_eq!(f.gram.len(), 6);
        assert_eq!(f.gram[0][1], 1);
        assert_eq!(f.gram[0][0], 0);
        assert_eq!(f.gram[0][2], 0);
        assert_eq!(f.blocks, 3);
        assert!(f.passes());
    }

    #[test]
    fn r4_has_fifteen_blocks() {
        let f = intersection_form(4).unwrap();
        assert_eq!(f.gram.len(), 30);
        assert_eq!(f.blocks, 15);
        assert!(f.passes());
    }

    #[test]
    fn gram_is_symmetric_with_one_unit_per_row() {
        for r in [2, 4] {
            let g = intersection_form(r).unwrap().gram;
            for (i, row) in g.iter().enumerate() {
                assert_eq!(row[i], 0);
                assert_eq!(row.iter().filter(|&&x| x != 0).count(), 1);
                assert!(row.iter().enumerate().all(|(j, &x)| x == g[j][i]));
            }
        }
    }

    #[test]
    fn the_literal_fixed_point_count_is_too_small() {
        // with l = 2^{r-1} = 2 at r = 2 there is no middle quotient at all
        let l_literal = 1usize << (2 - 1);
        assert!(l_literal < 2 + 2 * 3);
        assert!(intersection_form(3).is_err());
    }
}
