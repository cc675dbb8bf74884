//! Koszul complexes and the stretched ("mutant") Koszul complexes.

use std::fmt;

use crate::coeff::{CoefficientRing, Rational};
use crate::complex::{build_complex, CochainComplex, ComplexChecks};
use crate::error::{AlgebraError, Result};
use crate::graded::{GradedFreeModule, GradedMap};
use crate::poly::Polynomial;
use crate::ring::PolynomialRing;

use super::exterior::{contraction, subsets};
use super::group_algebra::{is_exterior_multiplication, u_multiplication_mod2};

/// Koszul complex on `t_1..t_n`: positions `Λ^n, ..., Λ^0`, the degree-`k`
/// stratum at shift `k(w - 1)`, differential the contraction.
pub fn koszul_complex(n: usize, w: u32, coefficients: CoefficientRing) -> Result<CochainComplex> {
    let ring = PolynomialRing::new(coefficients, n, w)?;
    let e = w as i64 - 1;
    let terms: Vec<GradedFreeModule> =
        (0..=n).rev().map(|k| GradedFreeModule::uniform(ring, subsets(n, k).len(), k as i64 * e)).collect();
    let mut diffs = Vec::new();
    for (p, k) in (1..=n).rev().enumerate() {
        diffs.push(GradedMap::new(terms[p].clone(), terms[p + 1].clone(), contraction(ring, n, k)?, 1)?);
    }
    let labels = (0..=n).rev().map(|k| format!("Λ^{k}")).collect();
    Ok(build_complex(terms, diffs, ComplexChecks::minimal())?.with_labels(labels))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `T^{r+1}` acting on `Z_r`: `w = 2`, `e = 1`.
    Torus,
    /// `(Z/2)^{r+1}` acting on `Z_r` over `F2`: `w = 1`, `e = 0`.
    TwoTorus,
    /// The hand-made complex on three weight-2 variables with slice shifts `k`.
    Example33,
}

/// A stretched Koszul complex: `R ⊕ (exterior degrees 1..r) ⊕ R[top]` on
/// `n = r + 1` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MutantSpec {
    pub variant: Variant,
    pub r: usize,
    pub coefficients: CoefficientRing,
    /// Variable weight.
    pub w: u32,
    /// Weight of an exterior generator.
    pub e: i64,
}

impl MutantSpec {
    pub fn new(variant: Variant, r: usize, coefficients: CoefficientRing) -> Result<Self> {
        let (w, e) = match variant {
            Variant::Torus | Variant::Example33 => (2, 1),
            Variant::TwoTorus => (1, 0),
        };
        let spec = MutantSpec { variant, r, coefficients, w, e };
        spec.validate()?;
        Ok(spec)
    }

    pub fn torus(r: usize, coefficients: CoefficientRing) -> Result<Self> {
        Self::new(Variant::Torus, r, coefficients)
    }

    pub fn two_torus(r: usize) -> Result<Self> {
        Self::new(Variant::TwoTorus, r, CoefficientRing::PrimeField(2))
    }

    pub fn example_3_3(coefficients: CoefficientRing) -> Self {
        Self::new(Variant::Example33, 2, coefficients).expect("fixed example is valid")
    }

    pub fn validate(&self) -> Result<()> {
        if self.w as i64 - self.e != 1 {
            return Err(AlgebraError::InvalidSpec(format!(
                "w - e must be 1 for a degree +1 differential, got w = {}, e = {}",
                self.w, self.e
            )));
        }
        match self.variant {
            Variant::Example33 if self.r != 2 => {
                return Err(AlgebraError::InvalidSpec("the three-variable example has r = 2".into()))
            }
            Variant::Torus | Variant::TwoTorus if ![1, 2, 4, 8].contains(&self.r) => {
                return Err(AlgebraError::InvalidSpec(format!("r must be 1, 2, 4 or 8, got {}", self.r)))
            }
            Variant::TwoTorus if self.coefficients != CoefficientRing::PrimeField(2) => {
                return Err(AlgebraError::InvalidSpec("the (Z/2)-torus model is defined over F2".into()))
            }
            _ => {}
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.r + 1
    }

    pub fn ring(&self) -> Result<PolynomialRing> {
        PolynomialRing::new(self.coefficients, self.n(), self.w)
    }

    /// Shift of the exterior degree-`k` stratum.
    pub fn slice_shift(&self, k: usize) -> i64 {
        let k = k as i64;
        let r = self.r as i64;
        match self.variant {
            Variant::Torus => r + k * self.e,
            Variant::TwoTorus => r,
            Variant::Example33 => k,
        }
    }

    pub fn top_shift(&self) -> i64 {
        let r = self.r as i64;
        match self.variant {
            Variant::Torus => 3 * r + 1,
            Variant::TwoTorus => 2 * r,
            Variant::Example33 => 3,
        }
    }

    /// Model identifier used in reports, e.g. `mutant-torus-r4-Q`.
    pub fn label(&self) -> String {
        match self.variant {
            Variant::Torus => format!("mutant-torus-r{}-{}", self.r, self.coefficients.label()),
            Variant::TwoTorus => format!("mutant-2torus-r{}-{}", self.r, self.coefficients.label()),
            Variant::Example33 => format!("example-3-3-{}", self.coefficients.label()),
        }
    }
}

impl fmt::Display for MutantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Contraction `Λ^k -> Λ^{k-1}` for the spec: signed for the torus variants,
/// and for the `(Z/2)` variant the transpose of the `u_i`-action derived
/// from the group algebra.
fn slice_differential(spec: &MutantSpec, ring: PolynomialRing, k: usize) -> Result<Vec<Vec<Polynomial>>> {
    let n = spec.n();
    match spec.variant {
        Variant::Torus => contraction(ring, n, k),
        Variant::Example33 => {
            let mut m = contraction(ring, n, k)?;
            if k == n - 1 {
                m = in_complement_basis(ring, n, &m)?;
            }
            Ok(m)
        }
        Variant::TwoTorus => two_torus_differential(ring, n, k),
    }
}

/// Rewrites the columns of `Λ^{n-1}` in the basis `y_i = (-1)^i e_{[n]∖i}`
/// (1-based `i`), in which the `n = 3` contraction is exactly the skew
/// matrix of cross products.
fn in_complement_basis(ring: PolynomialRing, n: usize, m: &[Vec<Polynomial>]) -> Result<Vec<Vec<Polynomial>>> {
    let cols = subsets(n, n - 1);
    let full = (1u32 << n) - 1;
    let mut out = vec![vec![Polynomial::zero(ring); n]; m.len()];
    for i in 0..n {
        let j = cols.iter().position(|&s| s == full & !(1 << i)).expect("complement subset");
        let sign = Rational::from_int(if (i + 1) % 2 == 0 { 1 } else { -1 });
        for (row, out_row) in m.iter().zip(out.iter_mut()) {
            out_row[i] = row[j].scale(&sign)?;
        }
    }
    Ok(out)
}

/// `δ = Σ t_i (u_i·)ᵀ` on `Λ^k -> Λ^{k-1}`, with the action of `u_i = 1 - g_i`
/// computed in the group algebra over `F2` and conjugated into the
/// `u`-basis. Checked to be exterior multiplication before use.
fn two_torus_differential(ring: PolynomialRing, n: usize, k: usize) -> Result<Vec<Vec<Polynomial>>> {
    let cols = subsets(n, k);
    let rows = subsets(n, k - 1);
    let mut out = vec![vec![Polynomial::zero(ring); cols.len()]; rows.len()];
    for i in 0..n {
        let mult = u_multiplication_mod2(n, i);
        if !is_exterior_multiplication(&mult, i) {
            return Err(AlgebraError::InvalidSpec(format!("u_{} does not act as exterior multiplication", i + 1)));
        }
        let t = Polynomial::var(ring, i);
        for (a, &s) in rows.iter().enumerate() {
            for (b, &target) in cols.iter().enumerate() {
                // transpose: entry (S, T) of δ is entry (T, S) of u_i·
                if mult[target as usize][s as usize] == 1 {
                    out[a][b] = out[a][b].add(&t)?;
                }
            }
        }
    }
    Ok(out)
}

/// The complex `R ⊕ Λ^r ⊕ ... ⊕ Λ^1 ⊕ R[top]` with the slice strata at the
/// shifts of `spec`, contraction inside the slice and zero maps at both ends.
pub fn mutant_complex(spec: &MutantSpec) -> Result<CochainComplex> {
    spec.validate()?;
    let ring = spec.ring()?;
    let n = spec.n();
    let r = spec.r;
    let mut terms = vec![GradedFreeModule::new(ring, vec![0])];
    let mut labels = vec!["R".to_string()];
    for k in (1..=r).rev() {
        terms.push(GradedFreeModule::uniform(ring, subsets(n, k).len(), spec.slice_shift(k)));
        labels.push(format!("Λ^{k}"));
    }
    terms.push(GradedFreeModule::new(ring, vec![spec.top_shift()]));
    labels.push(format!("R[{}]", spec.top_shift()));

    let mut diffs = vec![GradedMap::zero(terms[0].clone(), terms[1].clone(), 1)];
    for (p, k) in (2..=r).rev().enumerate() {
        let entries = slice_differential(spec, ring, k)?;
        diffs.push(GradedMap::new(terms[p + 1].clone(), terms[p + 2].clone(), entries, 1)?);
    }
    diffs.push(GradedMap::zero(terms[r].clone(), terms[r + 1].clone(), 1));
    Ok(build_complex(terms, diffs, ComplexChecks::minimal())?.with_labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::degreewise::degreewise_report;

    const Q: CoefficientRing = CoefficientRing::Rationals;

    #[test]
    fn koszul_two_variables() {
        let k = koszul_complex(2, 2, Q).unwrap();
        let ranks: Vec<usize> = k.terms().iter().map(|t| t.rank()).collect();
        assert_eq!(ranks, vec![1, 2, 1]);
        assert_eq!(k.term(0).shifts, vec![2]);
        let rep = degreewise_report(&k, Q, 8).unwrap();
        assert_eq!(rep.total_hilbert_function(), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(rep.hilbert_function(2)[0], 1);
    }

    #[test]
    fn koszul_one_variable() {
        let k = koszul_complex(1, 2, Q).unwrap();
        assert_eq!(k.differentials()[0].to_strings(), vec![vec!["t1".to_string()]]);
        let rep = degreewise_report(&k, Q, 6).unwrap();
        assert!(rep.is_zero_at(&[0]));
        assert_eq!(rep.hilbert_function(1), vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn koszul_three_variables_is_skew_up_to_basis() {
        let k = koszul_complex(3, 2, Q).unwrap();
        // columns e12, e13, e23 of the Λ² -> Λ¹ block
        let m = k.differentials()[1].to_strings();
        assert_eq!(m, vec![vec!["-t2", "-t3", "0"], vec!["t1", "0", "-t3"], vec!["0", "t1", "t2"]]);
    }

    #[test]
    fn example_complex_is_the_skew_matrix() {
        let c = mutant_complex(&MutantSpec::example_3_3(Q)).unwrap();
        let shifts: Vec<Vec<i64>> = c.terms().iter().map(|t| t.shifts.clone()).collect();
        assert_eq!(shifts, vec![vec![0], vec![2, 2, 2], vec![1, 1, 1], vec![3]]);
        let b = c.differentials()[1].to_strings();
        assert_eq!(b, vec![vec!["0", "-t3", "t2"], vec!["t3", "0", "-t1"], vec!["-t2", "t1", "0"]]);
        assert!(c.differentials()[0].is_zero() && c.differentials()[2].is_zero());
    }

    #[test]
    fn torus_r2_layout() {
        let c = mutant_complex(&MutantSpec::torus(2, Q).unwrap()).unwrap();
        let shifts: Vec<Vec<i64>> = c.terms().iter().map(|t| t.shifts.clone()).collect();
        assert_eq!(shifts, vec![vec![0], vec![4, 4, 4], vec![3, 3, 3], vec![7]]);
    }

    #[test]
    fn two_torus_r2_is_unsigned_contraction() {
        let spec = MutantSpec::two_torus(2).unwrap();
        let c = mutant_complex(&spec).unwrap();
        let shifts: Vec<Vec<i64>> = c.terms().iter().map(|t| t.shifts.clone()).collect();
        assert_eq!(shifts, vec![vec![0], vec![2, 2, 2], vec![2, 2, 2], vec![4]]);
        let m = c.differentials()[1].to_strings();
        assert_eq!(m, vec![vec!["t2", "t3", "0"], vec!["t1", "0", "t3"], vec!["0", "t1", "t2"]]);
        // every entry is linear in the t_i
        assert!(c.differentials()[1].entries().iter().flatten().all(|p| p.is_zero() || p.terms()[0].0.degree() == 1));
    }

    #[test]
    fn two_torus_matches_signed_contraction_mod_two() {
        for r in [2usize, 4] {
            let spec = MutantSpec::two_torus(r).unwrap();
            let ring = spec.ring().unwrap();
            for k in 2..=r {
                let a = two_torus_differential(ring, r + 1, k).unwrap();
                let b = contraction(ring, r + 1, k).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(MutantSpec::torus(3, Q).is_err());
        assert!(MutantSpec::new(Variant::TwoTorus, 2, Q).is_err());
        let mut bad = MutantSpec::torus(2, Q).unwrap();
        bad.e = 0;
        assert!(matches!(mutant_complex(&bad), Err(AlgebraError::InvalidSpec(_))));
    }

    #[test]
    fn r1_has_no_slice_differential() {
        let c = mutant_complex(&MutantSpec::torus(1, Q).unwrap()).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.differentials().iter().all(|d| d.is_zero()));
        assert_eq!(c.term(1).shifts, vec![2, 2]);
        assert_eq!(c.term(2).shifts, vec![4]);
    }
}
