//! Exterior algebra slices: subsets of `{1..n}` as bitmasks.

use std::collections::BTreeMap;

use crate::coeff::Rational;
use crate::error::Result;
use crate::poly::Polynomial;
use crate::ring::{binomial, PolynomialRing};

/// Which exterior degrees to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExteriorRange {
    /// `Λ`: degrees `0..=n`.
    Full,
    /// `Λ^∨ = Λ / Λ^n`: degrees `0..n`.
    Vee,
    /// `Λ^◇`: degrees `1..n`.
    Diamond,
}

impl ExteriorRange {
    pub fn degrees(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            ExteriorRange::Full => 0..=n,
            ExteriorRange::Vee => 0..=n - 1,
            ExteriorRange::Diamond => 1..=n - 1,
        }
    }
}

/// All `k`-subsets of `{0..n}` in lexicographic order of their sorted
/// elements (`{0,1} < {0,2} < {1,2}`).
pub fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, cur: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, cur | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Elements of a subset in increasing order.
pub fn elements(s: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s >> i & 1 == 1)
}

/// A range of exterior degrees on `n` generators, each degree-`k` stratum
/// carried at total degree `k · gen_weight` plus an offset chosen by the
/// caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorSlice {
    pub n: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub gen_weight: i64,
}

impl ExteriorSlice {
    pub fn new(n: usize, range: ExteriorRange, gen_weight: i64) -> Self {
        let r = range.degrees(n);
        ExteriorSlice { n, k_min: *r.start(), k_max: *r.end(), gen_weight }
    }

    /// Basis subsets, by degree then lexicographically.
    pub fn basis(&self) -> Vec<u32> {
        (self.k_min..=self.k_max).flat_map(|k| subsets(self.n, k)).collect()
    }

    pub fn stratum_rank(&self, k: usize) -> u64 {
        if (self.k_min..=self.k_max).contains(&k) {
            binomial(self.n as u64, k as u64)
        } else {
            0
        }
    }

    pub fn total_rank(&self) -> u64 {
        (self.k_min..=self.k_max).map(|k| self.stratum_rank(k)).sum()
    }
}

/// Rank per exterior degree for the requested range.
pub fn exterior_ranks(n: usize, which: ExteriorRange) -> BTreeMap<usize, u64> {
    which.degrees(n).map(|k| (k, binomial(n as u64, k as u64))).collect()
}

/// Sign of removing `i` from `s`: `(-1)^(position of i in s, 1-based, minus 1)`.
pub fn contraction_sign(s: u32, i: usize) -> i64 {
    let below = (s & ((1u32 << i) - 1)).count_ones();
    if below.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Matrix of the contraction `ι(e_S) = Σ_{i∈S} sign(i, S) t_i e_{S∖i}` from
/// `Λ^k` to `Λ^{k-1}` in the lexicographic bases: rows index `(k-1)`-subsets,
/// columns `k`-subsets.
pub fn contraction(ring: PolynomialRing, n: usize, k: usize) -> Result<Vec<Vec<Polynomial>>> {
    let cols = subsets(n, k);
    let rows = subsets(n, k - 1);
    let row_of: BTreeMap<u32, usize> = rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut out = vec![vec![Polynomial::zero(ring); cols.len()]; rows.len()];
    for (j, &s) in cols.iter().enumerate() {
        for i in elements(s) {
            let t = Polynomial::var(ring, i);
            out[row_of[&(s & !(1 << i))]][j] = t.scale(&Rational::from_int(contraction_sign(s, i)))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;

    #[test]
    fn ranks() {
        assert_eq!(exterior_ranks(3, ExteriorRange::Diamond), BTreeMap::from([(1, 3), (2, 3)]));
        assert_eq!(exterior_ranks(3, ExteriorRange::Vee).values().sum::<u64>(), 7);
        assert_eq!(exterior_ranks(3, ExteriorRange::Vee).values().copied().collect::<Vec<_>>(), vec![1, 3, 3]);
        assert_eq!(exterior_ranks(2, ExteriorRange::Diamond).values().sum::<u64>(), 2);
        for n in 1..10 {
            assert_eq!(ExteriorSlice::new(n, ExteriorRange::Full, 1).total_rank(), 1 << n);
            assert_eq!(ExteriorSlice::new(n, ExteriorRange::Vee, 1).total_rank(), (1 << n) - 1);
            assert_eq!(ExteriorSlice::new(n, ExteriorRange::Diamond, 1).basis().len(), (1 << n) - 2);
        }
    }

    #[test]
    fn lexicographic_subsets() {
        assert_eq!(subsets(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(subsets(3, 0), vec![0]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn contraction_squares_to_zero() {
        let r = PolynomialRing::new(CoefficientRing::Rationals, 4, 2).unwrap();
        for k in 2..=4 {
            let a = contraction(r, 4, k).unwrap();
            let b = contraction(r, 4, k - 1).unwrap();
            for i in 0..b.len() {
                for j in 0..a[0].len() {
                    let mut s = Polynomial::zero(r);
                    for (m, bm) in b[i].iter().enumerate() {
                        s = s.add(&bm.mul(&a[m][j]).unwrap()).unwrap();
                    }
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn contraction_of_e23() {
        let r = PolynomialRing::new(CoefficientRing::Rationals, 3, 2).unwrap();
        let c = contraction(r, 3, 2).unwrap();
        // column of {2,3} (index 2): t2 e3 - t3 e2
        let col: Vec<String> = c.iter().map(|row| row[2].to_string()).collect();
        assert_eq!(col, vec!["0", "-t3", "t2"]);
    }
}
