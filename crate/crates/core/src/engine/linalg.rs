//! Sparse exact matrices and their ranks, split into connected blocks.

use crate::coeff::{Field, Rational};

/// Exact sparse matrix; `entries` holds `(row, col, value)` with nonzero
/// values, sorted by column then row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, Rational)>,
}

/// A connected block: global row and column indices plus local entries.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<(usize, usize, Rational)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries.iter().find(|(r, c, _)| *r == row && *c == col).map(|(_, _, v)| v.clone()).unwrap_or_default()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    /// Connected components of the bipartite row/column incidence graph.
    /// The matrix is block diagonal after permuting into these blocks, so
    /// rank and Smith form can be computed blockwise.
    pub(crate) fn blocks(&self) -> Vec<Block> {
        let n = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (r, c, _) in &self.entries {
            let a = find(&mut parent, *r);
            let b = find(&mut parent, self.rows + c);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Block> = Vec::new();
        let mut local = vec![0usize; n];
        // only indices touched by an entry matter; visit in canonical order
        let mut touched = vec![false; n];
        for (r, c, _) in &self.entries {
            touched[*r] = true;
            touched[self.rows + c] = true;
        }
        for x in 0..n {
            if !touched[x] {
                continue;
            }
            let root = find(&mut parent, x);
            if block_of[root] == usize::MAX {
                block_of[root] = blocks.len();
                blocks.push(Block { rows: Vec::new(), cols: Vec::new(), entries: Vec::new() });
            }
            let b = &mut blocks[block_of[root]];
            if x < self.rows {
                local[x] = b.rows.len();
                b.rows.push(x);
            } else {
                local[x] = b.cols.len();
                b.cols.push(x - self.rows);
            }
        }
        for (r, c, v) in &self.entries {
            let root = find(&mut parent, *r);
            blocks[block_of[root]].entries.push((local[*r], local[self.rows + c], v.clone()));
        }
        blocks
    }

    /// Rank over `field` (coefficients are mapped into it first).
    pub fn rank_over<F: Field>(&self, field: &F) -> usize {
        self.blocks().iter().map(|b| block_rank(field, b)).sum()
    }
}

pub(crate) fn block_rank<F: Field>(field: &F, b: &Block) -> usize {
    let mut dense = vec![vec![field.zero(); b.cols.len()]; b.rows.len()];
    for (r, c, v) in &b.entries {
        dense[*r][*c] = field.from_rational(v);
    }
    dense_rank(field, &mut dense)
}

/// Rank by Gaussian elimination; pivots are the first nonzero entry in
/// canonical row order, so the elimination path is deterministic.
pub(crate) fn dense_rank<F: Field>(field: &F, a: &mut [Vec<F::Elem>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !field.is_zero(&a[r][c])) else { continue };
        a.swap(rank, p);
        let inv = field.inv(&a[rank][c]);
        for r in rank + 1..rows {
            if field.is_zero(&a[r][c]) {
                continue;
            }
            let factor = field.mul(&a[r][c], &inv);
            let (top, rest) = a.split_at_mut(r);
            let pivot_row = &top[rank];
            for k in c..cols {
                if !field.is_zero(&pivot_row[k]) {
                    let t = field.mul(&factor, &pivot_row[k]);
                    rest[0][k] = field.sub(&rest[0][k], &t);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, RationalField};

    fn m(rows: usize, cols: usize, e: &[(usize, usize, i64)]) -> SparseMatrix {
        let mut entries: Vec<_> = e.iter().map(|&(r, c, v)| (r, c, Rational::from_int(v))).collect();
        entries.sort_by_key(|(r, c, _)| (*c, *r));
        SparseMatrix { rows, cols, entries }
    }

    #[test]
    fn rank_over_rationals_and_mod_p() {
        let a = m(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 8)]);
        assert_eq!(a.rank_over(&RationalField), 2);
        assert_eq!(a.rank_over(&PrimeField::new(2).unwrap()), 0);
        let b = m(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]);
        assert_eq!(b.rank_over(&RationalField), 1);
    }

    #[test]
    fn blocks_split_disconnected_parts() {
        let a = m(3, 3, &[(0, 0, 1), (2, 1, 1), (2, 2, 1)]);
        let blocks = a.blocks();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].rows, vec![0]);
        assert_eq!(blocks[1].cols, vec![1, 2]);
        assert_eq!(a.rank_over(&RationalField), 2);
    }
}
