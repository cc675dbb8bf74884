//! The degreewise oracle: cohomology of a complex of graded free modules,
//! one total degree at a time, by exact linear algebra on the finite
//! dimensional slices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg::{block_rank, SparseMatrix};
use super::smith::{normalize_invariant_factors, smith_diagonal};
use crate::coeff::{CoefficientRing, Field, PrimeField, Rational, RationalField};
use crate::complex::CochainComplex;
use crate::error::{AlgebraError, Result};
use crate::graded::GradedFreeModule;
use crate::ring::Monomial;

/// Basis of `m` in degree `d`: generator-major, then descending monomial
/// order. Generator indices are zero-based.
pub fn basis_at_degree(m: &GradedFreeModule, d: i64) -> Vec<(usize, Monomial)> {
    m.shifts
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| m.ring.monomials_of_degree(d - s).into_iter().map(move |mon| (i, mon)))
        .collect()
}

/// Degree-`d` basis of a free module without materializing it: offsets per
/// generator and one shared sorted monomial list per polynomial degree.
struct SliceIndex {
    offsets: Vec<usize>,
    /// ascending monomial order, for binary search; index from the top
    monomials: Vec<Option<std::rc::Rc<Vec<Monomial>>>>,
    order: crate::ring::MonomialOrder,
    len: usize,
}

impl SliceIndex {
    fn new(m: &GradedFreeModule, d: i64) -> Self {
        let mut cache: BTreeMap<i64, std::rc::Rc<Vec<Monomial>>> = BTreeMap::new();
        let mut offsets = Vec::with_capacity(m.rank());
        let mut monomials = Vec::with_capacity(m.rank());
        let mut len = 0;
        for &s in &m.shifts {
            offsets.push(len);
            let e = d - s;
            let list = if e < 0 || e % m.ring.weight() != 0 {
                None
            } else {
                Some(
                    cache
                        .entry(e)
                        .or_insert_with(|| {
                            let mut v = m.ring.monomials_of_degree(e);
                            v.reverse();
                            std::rc::Rc::new(v)
                        })
                        .clone(),
                )
            };
            len += list.as_ref().map_or(0, |l| l.len());
            monomials.push(list);
        }
        SliceIndex { offsets, monomials, order: m.ring.order, len }
    }

    fn gen_len(&self, i: usize) -> usize {
        self.monomials[i].as_ref().map_or(0, |l| l.len())
    }

    /// Position of `(i, mon)` in the canonical (descending) basis.
    fn index(&self, i: usize, mon: &Monomial) -> usize {
        let list = self.monomials[i].as_ref().expect("monomial in an empty graded piece");
        let asc = list.binary_search_by(|x| self.order.cmp(x, mon)).expect("monomial of the wrong degree");
        self.offsets[i] + list.len() - 1 - asc
    }

    /// The `k`-th basis element of generator `i` in canonical order.
    fn monomial(&self, i: usize, k: usize) -> Monomial {
        let list = self.monomials[i].as_ref().expect("nonempty");
        list[list.len() - 1 - k]
    }
}

/// Matrix of `δ_position` from degree `d` of its source to degree `d + 1` of
/// its target, in [`basis_at_degree`] coordinates.
pub fn slice_matrix(c: &CochainComplex, position: usize, d: i64) -> SparseMatrix {
    let delta = &c.differentials()[position];
    let src = SliceIndex::new(delta.source(), d);
    let tgt = SliceIndex::new(delta.target(), d + delta.map_degree());
    let mut entries = Vec::new();
    let mut col = 0;
    for j in 0..delta.cols() {
        for k in 0..src.gen_len(j) {
            let m = src.monomial(j, k);
            let start = entries.len();
            for i in 0..delta.rows() {
                for (em, coeff) in delta.entry(i, j).terms() {
                    entries.push((tgt.index(i, &em.mul(&m)), col, coeff.clone()));
                }
            }
            entries[start..].sort_by_key(|e| e.0);
            col += 1;
        }
    }
    SparseMatrix { rows: tgt.len, cols: src.len, entries }
}

/// Integral cohomology of one position in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralCohomology {
    pub rank: usize,
    /// Invariant factors greater than one, as a divisibility chain.
    pub torsion: Vec<BigInt>,
}

/// One row of a [`DegreewiseReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreewiseEntry {
    pub d: i64,
    pub position: usize,
    /// Field dimension, or the free rank over the integers.
    pub dim: usize,
    /// Present only over the integers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<BigInt>>,
}

/// Cohomology dimensions (or ranks and torsion) per degree and position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreewiseReport {
    pub coefficients: String,
    pub min_degree: i64,
    pub max_degree: i64,
    pub entries: Vec<DegreewiseEntry>,
}

impl DegreewiseReport {
    pub fn dim(&self, position: usize, d: i64) -> usize {
        self.entries.iter().find(|e| e.position == position && e.d == d).map_or(0, |e| e.dim)
    }

    /// Hilbert function of `H^position` over `0..=max_degree`.
    pub fn hilbert_function(&self, position: usize) -> Vec<i64> {
        (0..=self.max_degree).map(|d| self.dim(position, d) as i64).collect()
    }

    /// Sum over positions.
    pub fn total_hilbert_function(&self) -> Vec<i64> {
        let mut out = vec![0i64; (self.max_degree + 1).max(0) as usize];
        for e in &self.entries {
            if e.d >= 0 {
                out[e.d as usize] += e.dim as i64;
            }
        }
        out
    }

    pub fn has_torsion(&self) -> bool {
        self.entries.iter().any(|e| e.torsion.as_ref().is_some_and(|t| !t.is_empty()))
    }

    pub fn is_zero_at(&self, positions: &[usize]) -> bool {
        self.entries
            .iter()
            .filter(|e| positions.contains(&e.position))
            .all(|e| e.dim == 0 && e.torsion.as_ref().is_none_or(|t| t.is_empty()))
    }

    /// `{d, position, dim | rank, torsion}` rows.
    pub fn to_json(&self) -> serde_json::Value {
        let integral = self.coefficients == CoefficientRing::Integers.label();
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut o = serde_json::Map::new();
                o.insert("d".into(), e.d.into());
                o.insert("position".into(), e.position.into());
                if integral {
                    o.insert("rank".into(), e.dim.into());
                    let t: Vec<serde_json::Value> = e
                        .torsion
                        .iter()
                        .flatten()
                        .map(|x| u64::try_from(x).map_or_else(|_| x.to_string().into(), serde_json::Value::from))
                        .collect();
                    o.insert("torsion".into(), t.into());
                } else {
                    o.insert("dim".into(), e.dim.into());
                }
                serde_json::Value::Object(o)
            })
            .collect();
        serde_json::json!({
            "coefficients": self.coefficients,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "table": rows,
        })
    }
}

/// Rank of every slice `δ_p` at degree `d`, for `d` in `lo..=hi`.
fn slice_data<T: Send>(
    c: &CochainComplex,
    lo: i64,
    hi: i64,
    f: impl Fn(&SparseMatrix) -> T + Sync,
) -> BTreeMap<(usize, i64), T> {
    let jobs: Vec<(usize, i64)> = (0..c.differentials().len()).flat_map(|p| (lo..=hi).map(move |d| (p, d))).collect();
    jobs.into_par_iter().map(|(p, d)| ((p, d), f(&slice_matrix(c, p, d)))).collect::<Vec<_>>().into_iter().collect()
}

fn check_integral(c: &CochainComplex) -> Result<()> {
    for d in c.differentials() {
        for row in d.entries() {
            for p in row {
                if let Some((_, x)) = p.terms().iter().find(|(_, x)| !x.is_integer()) {
                    return Err(AlgebraError::NotIntegral(x.to_string()));
                }
            }
        }
    }
    Ok(())
}

fn default_low(c: &CochainComplex) -> i64 {
    c.min_shift().min(0)
}

fn report_over<F: Field>(c: &CochainComplex, field: &F, lo: i64, max_degree: i64) -> DegreewiseReport {
    let ranks = slice_data(c, lo - 1, max_degree, |m| m.rank_over(field));
    let mut entries = Vec::new();
    for d in lo..=max_degree {
        for p in 0..c.len() {
            let dim = c.term(p).dim_at(d) as usize;
            let out = if p < c.len() - 1 { ranks[&(p, d)] } else { 0 };
            let inc = if p > 0 { ranks[&(p - 1, d - 1)] } else { 0 };
            entries.push(DegreewiseEntry { d, position: p, dim: dim - out - inc, torsion: None });
        }
    }
    DegreewiseReport { coefficients: field.coefficient_ring().label(), min_degree: lo, max_degree, entries }
}

/// Largest prime below 2^32.
const CHECK_PRIME: u64 = 4_294_967_291;

fn report_integral(c: &CochainComplex, lo: i64, max_degree: i64) -> Result<DegreewiseReport> {
    check_integral(c)?;
    let checks = [PrimeField::new(2)?, PrimeField::new(CHECK_PRIME)?];
    let data = slice_data(c, lo - 1, max_degree, |m| {
        let mut rank = 0;
        let mut torsion = Vec::new();
        for b in m.blocks() {
            let mut dense = vec![vec![BigInt::from(0); b.cols.len()]; b.rows.len()];
            for (r, col, v) in &b.entries {
                dense[*r][*col] = v.numer();
            }
            let diagonal = smith_diagonal(&dense);
            // rank mod p counts the invariant factors prime to p, for every p
            for field in &checks {
                let p = BigInt::from(field.modulus());
                let prime_to_p = diagonal.iter().filter(|x| !x.is_multiple_of(&p)).count();
                assert_eq!(block_rank(field, &b), prime_to_p, "Smith diagonal failed its mod-{p} rank check");
            }
            rank += diagonal.len();
            torsion.extend(diagonal.into_iter().filter(|x| !x.is_one()));
        }
        IntegralCohomology { rank, torsion: normalize_invariant_factors(torsion) }
    });
    let mut entries = Vec::new();
    for d in lo..=max_degree {
        for p in 0..c.len() {
            let dim = c.term(p).dim_at(d) as usize;
            let out = if p < c.len() - 1 { data[&(p, d)].rank } else { 0 };
            let (inc, torsion) = if p > 0 {
                let s = &data[&(p - 1, d - 1)];
                (s.rank, s.torsion.clone())
            } else {
                (0, Vec::new())
            };
            // ker δ_p is saturated, so the torsion of ker/im is that of coker(δ_{p-1})
            entries.push(DegreewiseEntry { d, position: p, dim: dim - out - inc, torsion: Some(torsion) });
        }
    }
    Ok(DegreewiseReport { coefficients: CoefficientRing::Integers.label(), min_degree: lo, max_degree, entries })
}

/// Degreewise cohomology over `coefficients` (which may differ from the
/// complex's own ring: integer complexes can be read over ℚ or reduced
/// mod p, rational ones with integral entries over ℤ).
pub fn degreewise_report(
    c: &CochainComplex,
    coefficients: CoefficientRing,
    max_degree: i64,
) -> Result<DegreewiseReport> {
    let lo = default_low(c);
    match coefficients {
        CoefficientRing::Rationals => Ok(report_over(c, &RationalField, lo, max_degree)),
        CoefficientRing::PrimeField(p) => {
            let reduced = c.change_coefficients(coefficients)?;
            Ok(report_over(&reduced, &PrimeField::new(p)?, lo, max_degree))
        }
        CoefficientRing::Integers => report_integral(c, lo, max_degree),
    }
}

/// Field dimensions of `H^p` in degree `d`, per position, over the ring's
/// own coefficient field.
pub fn cohomology_at_degree_field(c: &CochainComplex, d: i64) -> Result<Vec<usize>> {
    let coeff = c.ring().coefficients;
    if !coeff.is_field() {
        return Err(AlgebraError::NotAField(coeff.label()));
    }
    let r = degreewise_report_range(c, coeff, d, d)?;
    Ok((0..c.len()).map(|p| r.dim(p, d)).collect())
}

/// Free rank and torsion of `H^p` in degree `d`, per position.
pub fn cohomology_at_degree_integer(c: &CochainComplex, d: i64) -> Result<Vec<IntegralCohomology>> {
    if c.ring().coefficients != CoefficientRing::Integers {
        return Err(AlgebraError::InvalidRing(format!("expected Z coefficients, got {}", c.ring().coefficients)));
    }
    let r = report_integral(c, d, d)?;
    Ok(r.entries
        .into_iter()
        .map(|e| IntegralCohomology { rank: e.dim, torsion: e.torsion.unwrap_or_default() })
        .collect())
}

fn degreewise_report_range(
    c: &CochainComplex,
    coefficients: CoefficientRing,
    lo: i64,
    hi: i64,
) -> Result<DegreewiseReport> {
    match coefficients {
        CoefficientRing::Rationals => Ok(report_over(c, &RationalField, lo, hi)),
        CoefficientRing::PrimeField(p) => {
            let reduced = c.change_coefficients(coefficients)?;
            Ok(report_over(&reduced, &PrimeField::new(p)?, lo, hi))
        }
        CoefficientRing::Integers => report_integral(c, lo, hi),
    }
}

/// Exactness at the requested positions for every degree up to `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub positions: Vec<usize>,
    pub report: DegreewiseReport,
    pub exact: bool,
}

pub fn check_exactness(c: &CochainComplex, positions: &[usize], max_degree: i64) -> Result<ExactnessReport> {
    let report = degreewise_report(c, c.ring().coefficients, max_degree)?;
    let exact = report.is_zero_at(positions);
    Ok(ExactnessReport { positions: positions.to_vec(), report, exact })
}

/// Dense slice with rational entries, for display and tests.
pub fn slice_dense(c: &CochainComplex, position: usize, d: i64) -> Vec<Vec<Rational>> {
    slice_matrix(c, position, d).to_dense()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, ComplexChecks};
    use crate::graded::GradedMap;
    use crate::ring::PolynomialRing;

    fn ring(c: CoefficientRing, n: usize, w: u32) -> PolynomialRing {
        PolynomialRing::new(c, n, w).unwrap()
    }

    fn skew_complex(c: CoefficientRing) -> CochainComplex {
        let r = ring(c, 3, 2);
        let rows: Vec<Vec<String>> = [["0", "-t3", "t2"], ["t3", "0", "-t1"], ["-t2", "t1", "0"]]
            .iter()
            .map(|row| row.iter().map(|s| s.to_string()).collect())
            .collect();
        let y = GradedFreeModule::uniform(r, 3, 2);
        let x = GradedFreeModule::uniform(r, 3, 1);
        let b = GradedMap::parse(y.clone(), x.clone(), &rows, 1).unwrap();
        build_complex(vec![y, x], vec![b], ComplexChecks::minimal()).unwrap()
    }

    #[test]
    fn basis_examples() {
        let r = ring(CoefficientRing::Rationals, 3, 2);
        let b = basis_at_degree(&GradedFreeModule::uniform(r, 3, 1), 1);
        assert_eq!(b, vec![(0, Monomial::one()), (1, Monomial::one()), (2, Monomial::one())]);
        assert!(basis_at_degree(&GradedFreeModule::new(r, vec![0]), 1).is_empty());
        assert_eq!(basis_at_degree(&GradedFreeModule::new(r, vec![0]), 4).len(), 6);
    }

    #[test]
    fn slice_of_skew_matrix_is_nine_by_three() {
        let c = skew_complex(CoefficientRing::Rationals);
        let m = slice_matrix(&c, 0, 2);
        assert_eq!((m.rows, m.cols), (9, 3));
        assert_eq!(m.entries.len(), 6);
        assert!(m.entries.iter().all(|(_, _, v)| v.to_i64().unwrap().abs() == 1));
        // independent placement: column j, entry (i, j) = ±t_k lands at row 3 i + (index of t_k)
        let r = ring(CoefficientRing::Rationals, 3, 2);
        let t = r.monomials_of_degree(2);
        for (i, j, k, sign) in [(1, 0, 2, 1), (2, 0, 1, -1), (0, 1, 2, -1), (2, 1, 0, 1), (0, 2, 1, 1), (1, 2, 0, -1)] {
            let row = 3 * i + t.iter().position(|m| *m == Monomial::var(k)).unwrap();
            assert_eq!(m.get(row, j), Rational::from_int(sign));
        }
    }

    #[test]
    fn zero_differential_gives_zero_slice() {
        let r = ring(CoefficientRing::Rationals, 2, 1);
        let a = GradedFreeModule::uniform(r, 2, 0);
        let z = GradedMap::zero(a.clone(), a.clone(), 1);
        let c = build_complex(vec![a.clone(), a], vec![z], ComplexChecks::default()).unwrap();
        let m = slice_matrix(&c, 0, 1);
        assert_eq!((m.rows, m.cols, m.entries.len()), (6, 4, 0));
    }

    #[test]
    fn skew_complex_low_degrees() {
        let c = skew_complex(CoefficientRing::Rationals);
        let r = degreewise_report(&c, CoefficientRing::Rationals, 5).unwrap();
        // H^1 = m[-1] and H^0 = R[4]
        assert_eq!(r.hilbert_function(1), vec![0, 3, 0, 6, 0, 10]);
        assert_eq!(r.hilbert_function(0), vec![0, 0, 0, 0, 1, 0]);
        assert_eq!(cohomology_at_degree_field(&c, 1).unwrap(), vec![0, 3]);
    }

    #[test]
    fn multiplication_by_two_has_torsion() {
        let r = ring(CoefficientRing::Integers, 1, 1);
        let a = GradedFreeModule::new(r, vec![0]);
        let b = GradedFreeModule::new(r, vec![1]);
        let two = GradedMap::new(a.clone(), b.clone(), vec![vec![crate::poly::Polynomial::constant(r, 2).unwrap()]], 1)
            .unwrap();
        let c = build_complex(vec![a, b], vec![two], ComplexChecks::default()).unwrap();
        let h = cohomology_at_degree_integer(&c, 1).unwrap();
        assert_eq!(h[1], IntegralCohomology { rank: 0, torsion: vec![BigInt::from(2)] });
        assert_eq!(h[0].rank, 0);
        // over F2 the class doubles up: one dimension in each position
        let f2 = degreewise_report(&c, CoefficientRing::PrimeField(2), 1).unwrap();
        assert_eq!((f2.dim(0, 0), f2.dim(1, 1)), (1, 1));
    }

    #[test]
    fn skew_complex_over_integers_is_torsion_free() {
        let c = skew_complex(CoefficientRing::Integers);
        let r = degreewise_report(&c, CoefficientRing::Integers, 12).unwrap();
        assert!(!r.has_torsion());
        let q = degreewise_report(&c, CoefficientRing::Rationals, 12).unwrap();
        assert_eq!(r.total_hilbert_function(), q.total_hilbert_function());
    }
}
