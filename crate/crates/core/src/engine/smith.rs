//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `u * a * v = d` with `d` diagonal, nonnegative, each entry dividing the
/// next; `u` and `v` are products of elementary unimodular operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// The first `rank` diagonal entries (all nonzero).
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries greater than one.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Checks `u * a * v` equals the diagonal matrix by explicit
    /// multiplication.
    pub fn verify(&self, a: &[Vec<BigInt>]) -> bool {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        if rows == 0 || cols == 0 {
            return true;
        }
        let ua = mat_mul(&self.u, a);
        let uav = mat_mul(&ua, &self.v);
        (0..rows).all(|i| {
            (0..cols).all(|j| {
                let want = if i == j && i < self.diagonal.len() { self.diagonal[i].clone() } else { BigInt::zero() };
                uav[i][j] == want
            })
        })
    }
}

pub(crate) fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); n];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[j] += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// `row[dst] -= q * row[src]`.
fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (s, d) = if src < dst {
        let (a, b) = m.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = m.split_at_mut(src);
        (&b[0], &mut a[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form of `a` (rows of equal length).
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut d: Vec<Vec<BigInt>> = a.to_vec();
    let mut uv = Some((identity(rows), identity(cols)));
    let diagonal = reduce(&mut d, &mut uv, None);
    let (u, v) = uv.expect("transforms are tracked");
    SmithForm { diagonal, u, v }
}

/// The nonzero Smith diagonal of `a` without transforms. Unit pivots are
/// eliminated first (a Schur complement step, which keeps the slices of
/// sparse complexes small); the remaining core goes through [`reduce`].
pub fn smith_diagonal(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut units = 0;
    loop {
        let cols = m.first().map_or(0, |r| r.len());
        // unit in the sparsest row, so elimination fills in little
        let pivot = m
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                row.iter().position(|x| x.abs().is_one()).map(|j| (i, j, row.iter().filter(|x| !x.is_zero()).count()))
            })
            .min_by_key(|&(i, _, nnz)| (nnz, i));
        let Some((pi, pj, _)) = pivot else { break };
        let prow = m.swap_remove(pi);
        let unit = prow[pj].clone();
        for row in m.iter_mut() {
            if row[pj].is_zero() {
                continue;
            }
            let q = &row[pj] * &unit;
            for k in 0..cols {
                if !prow[k].is_zero() {
                    row[k] -= &q * &prow[k];
                }
            }
        }
        for row in m.iter_mut() {
            row.remove(pj);
        }
        m.retain(|row| row.iter().any(|x| !x.is_zero()));
        units += 1;
    }
    let mut diagonal = vec![BigInt::one(); units];
    diagonal.extend(modular_diagonal(m));
    diagonal
}

/// Rank of `a` and the absolute value of a nonzero maximal minor, by
/// fraction-free elimination (every intermediate entry is a minor of `a`).
fn rank_and_minor(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = (k..rows).find_map(|i| (k..cols).find(|&j| !a[i][j].is_zero()).map(|j| (i, j))) else {
            break;
        };
        a.swap(k, pi);
        swap_cols(&mut a, k, pj);
        for i in k + 1..rows {
            for j in k + 1..cols {
                let x = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = x / &prev;
            }
        }
        prev = a[k][k].clone();
        k += 1;
    }
    (k, prev.abs())
}

/// Smith diagonal computed modulo a nonzero maximal minor `Δ`. The forms
/// of `A` and `[A | ΔI]` agree in their first `rank` entries, because each
/// invariant factor divides `Δ`, so entries never grow past `Δ`.
fn modular_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let (rank, delta) = rank_and_minor(m.clone());
    if rank == 0 {
        return Vec::new();
    }
    for x in m.iter_mut().flatten() {
        *x = x.mod_floor(&delta);
    }
    let mut chain: Vec<BigInt> = reduce(&mut m, &mut None, Some(&delta)).iter().map(|x| x.gcd(&delta)).collect();
    chain.resize(m.len().max(rank), delta);
    chain.sort();
    chain.truncate(rank);
    chain
}

/// Row and column transforms `(u, v)`, when tracked.
type Transforms = Option<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)>;

/// Diagonalizes `d` in place and returns its nonzero diagonal, applying
/// every row operation to `u` and every column operation to `v` if given.
/// With a modulus, touched entries are reduced into `[0, modulus)`.
fn reduce(d: &mut [Vec<BigInt>], uv: &mut Transforms, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let rows = d.len();
    let cols = d.first().map_or(0, |r| r.len());
    let row_op = |d: &mut [Vec<BigInt>], uv: &mut Transforms, i: usize, t: usize, q: &BigInt| {
        row_axpy(d, i, t, q);
        if let Some(n) = modulus {
            for x in d[i].iter_mut() {
                *x = x.mod_floor(n);
            }
        }
        if let Some((u, _)) = uv {
            row_axpy(u, i, t, q);
        }
    };
    let col_op = |d: &mut [Vec<BigInt>], uv: &mut Transforms, j: usize, t: usize, q: &BigInt| {
        col_axpy(d, j, t, q);
        if let Some(n) = modulus {
            for row in d.iter_mut() {
                row[j] = row[j].mod_floor(n);
            }
        }
        if let Some((_, v)) = uv {
            col_axpy(v, j, t, q);
        }
    };
    let row_swap = |d: &mut [Vec<BigInt>], uv: &mut Transforms, a: usize, b: usize| {
        d.swap(a, b);
        if let Some((u, _)) = uv {
            u.swap(a, b);
        }
    };
    let col_swap = |d: &mut [Vec<BigInt>], uv: &mut Transforms, a: usize, b: usize| {
        swap_cols(d, a, b);
        if let Some((_, v)) = uv {
            swap_cols(v, a, b);
        }
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing submatrix, first in row-major order on ties
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap(d, uv, t, pi);
        col_swap(d, uv, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_op(d, uv, i, t, &q);
                if !d[i][t].is_zero() {
                    // remainder is smaller than the pivot: make it the pivot
                    row_swap(d, uv, t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_op(d, uv, j, t, &q);
                if !d[t][j].is_zero() {
                    col_swap(d, uv, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest; otherwise fold the offending row in
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match bad {
                Some(i) => row_op(d, uv, t, i, &-BigInt::one()),
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            if let Some((u, _)) = uv {
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        t += 1;
    }
    (0..t).map(|i| d[i][i].clone()).collect()
}

/// Rearranges a multiset of positive integers into the divisibility chain
/// with the same direct sum `⊕ Z/a_i` (pairwise gcd/lcm), dropping ones.
pub fn normalize_invariant_factors(mut factors: Vec<BigInt>) -> Vec<BigInt> {
    factors.retain(|f| !f.is_one());
    let n = factors.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = factors[i].gcd(&factors[j]);
            let l = factors[i].lcm(&factors[j]);
            factors[i] = g;
            factors[j] = l;
        }
    }
    factors.retain(|f| !f.is_one());
    factors
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = x / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}
