//! Randomized invariants of the builders, engines and verifiers.

use proptest::prelude::*;

use mutants_core::builders::exterior::contraction;
use mutants_core::builders::poincare::{connected_sum_poincare, homology_poincare, Space};
use mutants_core::builders::{doubling_complex, koszul_complex, mutant_complex, MutantSpec, Variant};
use mutants_core::engine::symbolic::{
    is_free, is_torsion_free, kernel_generators, minimal_presentation, presentation_hilbert,
};
use mutants_core::verify::{cross_engine_consistency, intersection_form, verify_doubling};
use mutants_core::{CochainComplex, CoefficientRing, HilbertMode, ModulePresentation, Polynomial, PolynomialRing};

const Q: CoefficientRing = CoefficientRing::Rationals;

fn ring() -> PolynomialRing {
    PolynomialRing::new(Q, 3, 2).unwrap()
}

/// A homogeneous entry of polynomial degree `deg` (0, 1 or 2 in the variables).
fn entry(deg: usize, coeffs: &[i64]) -> Polynomial {
    let r = ring();
    let t = |i| Polynomial::var(r, i);
    let c = |k: usize| Polynomial::constant(r, coeffs[k % coeffs.len()]).unwrap();
    let mut acc = Polynomial::zero(r);
    match deg {
        0 => acc = c(0),
        1 => {
            for i in 0..3 {
                acc = acc.add(&c(i).mul(&t(i)).unwrap()).unwrap();
            }
        }
        _ => {
            let mut k = 0;
            for i in 0..3 {
                for j in i..3 {
                    acc = acc.add(&c(k).mul(&t(i)).unwrap().mul(&t(j)).unwrap()).unwrap();
                    k += 1;
                }
            }
        }
    }
    acc
}

/// Generators in degrees 0 or 2, relations one or two variable-degrees
/// above the lowest generator (constant entries allowed, so the input need
/// not be minimal).
fn arb_presentation() -> impl Strategy<Value = ModulePresentation> {
    (
        prop::collection::vec(prop::bool::ANY, 1..3),
        prop::collection::vec((1usize..3, prop::collection::vec(-2i64..3, 6)), 0..4),
    )
        .prop_map(|(high, rels)| {
            let gens: Vec<i64> = high.iter().map(|&h| if h { 2 } else { 0 }).collect();
            let low = *gens.iter().min().unwrap();
            let mut cols = Vec::new();
            let mut degrees = Vec::new();
            for (k, (lift, coeffs)) in rels.iter().enumerate() {
                let d = low + 2 * *lift as i64;
                let col: Vec<Polynomial> = gens
                    .iter()
                    .enumerate()
                    .map(|(i, &g)| {
                        let gap = (d - g) / 2;
                        if gap < 0 {
                            return Polynomial::zero(ring());
                        }
                        let rotated: Vec<i64> = coeffs.iter().cycle().skip(i + k).take(6).copied().collect();
                        entry(gap as usize, &rotated)
                    })
                    .collect();
                cols.push(col);
                degrees.push(d);
            }
            ModulePresentation::from_columns(ring(), gens, cols, Some(degrees)).unwrap()
        })
}

fn assert_square_zero(c: &CochainComplex) {
    let ds = c.differentials();
    for p in 1..ds.len() {
        let composite = ds[p].compose(&ds[p - 1]).unwrap();
        assert!(composite.is_zero(), "δ² ≠ 0 at position {p}");
    }
    for d in ds {
        d.validate().unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn minimal_presentation_is_idempotent_and_keeps_hilbert(p in arb_presentation()) {
        let m = minimal_presentation(&p).unwrap();
        prop_assert_eq!(minimal_presentation(&m).unwrap(), m.clone());
        prop_assert_eq!(
            presentation_hilbert(&m, HilbertMode::Truncated(16)).unwrap(),
            presentation_hilbert(&p, HilbertMode::Truncated(16)).unwrap()
        );
    }

    #[test]
    fn kernel_composes_to_zero(p in arb_presentation()) {
        let b = p.relations();
        let k = kernel_generators(b).unwrap();
        prop_assert!(b.compose(&k.inclusion).unwrap().is_zero());
    }

    #[test]
    fn free_implies_torsion_free(p in arb_presentation()) {
        if is_free(&p).unwrap() {
            prop_assert!(is_torsion_free(&p).unwrap().is_torsion_free());
        }
    }

    #[test]
    fn doubling_satisfies_the_hilbert_identity(p in arb_presentation()) {
        let report = verify_doubling(&p, None, "random").unwrap();
        prop_assert!(report.passed(), "{}", report.to_text());
        let d = doubling_complex(&p, None).unwrap();
        assert_square_zero(&d.complex);
    }

    #[test]
    fn engines_agree_on_doubled_complexes(p in arb_presentation()) {
        let d = doubling_complex(&p, None).unwrap();
        for check in cross_engine_consistency(&d.complex, d.n + 4).unwrap() {
            prop_assert!(check.pass, "{}: {}", check.name, check.details);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn koszul_complexes_are_complexes(n in 1usize..7, w in 1u32..4, modp in prop::bool::ANY) {
        let coeff = if modp { CoefficientRing::PrimeField(2) } else { Q };
        let c = koszul_complex(n, w, coeff).unwrap();
        assert_square_zero(&c);
        prop_assert_eq!(c.len(), n + 1);
    }

    #[test]
    fn contraction_squares_to_zero(n in 2usize..7, k in 2usize..7) {
        prop_assume!(k <= n);
        let r = PolynomialRing::new(Q, n, 2).unwrap();
        let outer = contraction(r, n, k - 1).unwrap();
        let inner = contraction(r, n, k).unwrap();
        for row in &outer {
            for j in 0..inner[0].len() {
                let mut acc = Polynomial::zero(r);
                for (m, a) in row.iter().enumerate() {
                    acc = acc.add(&a.mul(&inner[m][j]).unwrap()).unwrap();
                }
                prop_assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn mutant_builders_are_minimal_complexes(idx in 0usize..4, integral in prop::bool::ANY) {
        let r = [1usize, 2, 4, 8][idx];
        let coeff = if integral { CoefficientRing::Integers } else { Q };
        for spec in [MutantSpec::torus(r, coeff).unwrap(), MutantSpec::two_torus(r).unwrap()] {
            let c = mutant_complex(&spec).unwrap();
            assert_square_zero(&c);
            prop_assert_eq!(c.term(0).shifts.clone(), vec![0]);
            prop_assert_eq!(c.term(c.len() - 1).shifts.clone(), vec![spec.top_shift()]);
        }
    }

    #[test]
    fn connected_sums_are_poincare_symmetric(
        dim in 2u32..20,
        parts in prop::collection::vec((1u64..5, 1u32..19), 0..4),
    ) {
        let summands: Vec<(u64, (u32, u32))> =
            parts.into_iter().filter(|&(_, a)| a < dim).map(|(k, a)| (k, (a, dim - a))).collect();
        let p = connected_sum_poincare(&summands, dim).unwrap();
        prop_assert!(p.is_symmetric(dim));
        let copies: u64 = summands.iter().map(|(k, _)| k).sum();
        prop_assert_eq!(p.total(), 2 + 2 * copies as i64);
    }

    #[test]
    fn z_is_poincare_symmetric(idx in 0usize..4, two in prop::bool::ANY) {
        let r = [1u32, 2, 4, 8][idx];
        let (variant, dim) = if two { (Variant::TwoTorus, 2 * r) } else { (Variant::Torus, 3 * r + 1) };
        let z = homology_poincare(Space::Z, r, variant).unwrap();
        prop_assert!(z.is_symmetric(dim));
        prop_assert_eq!(z.degree(), Some(dim));
    }

    #[test]
    fn gram_matrices_are_symmetric_and_unimodular(idx in 0usize..2) {
        let f = intersection_form([2u32, 4][idx]).unwrap();
        let n = f.gram.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(f.gram[i][j], f.gram[j][i]);
            }
            prop_assert_eq!(f.gram[i].iter().map(|x| x.abs()).sum::<i64>(), 1);
        }
        prop_assert!(f.passes());
    }
}
