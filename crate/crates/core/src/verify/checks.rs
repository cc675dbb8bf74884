//! Verdicts on computed modules: decomposition matching, classification,
//! kernel generators and engine cross-checks.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::json;

use crate::builders::complexes::{mutant_complex, MutantSpec, Variant};
use crate::builders::exterior::{contraction, subsets};
use crate::coeff::{CoefficientRing, Rational};
use crate::complex::CochainComplex;
use crate::engine::degreewise::{degreewise_report, DegreewiseReport};
use crate::engine::symbolic::{
    betti_table, cohomology_presentations, ideal_contains, is_free, is_torsion_free, kernel_generators,
    presentation_hilbert,
};
use crate::error::{AlgebraError, Result};
use crate::hilbert::{HilbertMode, HilbertSeries};
use crate::poly::Polynomial;
use crate::presentation::ModulePresentation;

use super::decomposition::{DecompositionSpec, ModuleClass, Summand};
use super::report::Check;

/// What [`match_decomposition`] compares against the expectation.
#[derive(Clone, Copy, Debug)]
pub enum Computed<'a> {
    /// Symbolic cohomology: Hilbert function and Betti table are checked.
    Presentation(&'a ModulePresentation),
    /// Degreewise oracle: only the Hilbert function is available.
    Degreewise(&'a DegreewiseReport),
}

/// A registered map from a computed module onto one expected summand:
/// generator `i` of `source` goes to `images[i]` in `R[s]` (or in `m[s]`).
#[derive(Clone, Debug)]
pub struct ExplicitMap {
    pub description: String,
    pub source: ModulePresentation,
    pub images: Vec<Polynomial>,
    pub target: Summand,
}

fn ring_of(c: &Computed<'_>) -> Option<crate::ring::PolynomialRing> {
    match c {
        Computed::Presentation(p) => Some(*p.ring()),
        Computed::Degreewise(_) => None,
    }
}

/// Compares computed cohomology with an expected decomposition: Hilbert
/// functions up to `max_degree`, Betti tables (symbolic input only) and,
/// when given, the explicit map.
pub fn match_decomposition(
    computed: Computed<'_>,
    expected: &DecompositionSpec,
    max_degree: i64,
    explicit: Option<&ExplicitMap>,
) -> Result<Vec<Check>> {
    if ring_of(&computed).is_some_and(|r| r != expected.ring) {
        return Err(AlgebraError::RingMismatch);
    }
    let needed = expected.max_degree();
    if max_degree < needed {
        return Err(AlgebraError::DegreeBoundTooSmall { bound: max_degree, needed });
    }
    let want = expected.hilbert_series().truncate(max_degree);
    let mut checks = Vec::new();
    let got = match computed {
        Computed::Presentation(p) => presentation_hilbert(p, HilbertMode::Truncated(max_degree))?.truncated(max_degree),
        Computed::Degreewise(r) => r.total_hilbert_function().into_iter().take(max_degree as usize + 1).collect(),
    };
    checks.push(Check::new(
        "hilbert_match",
        got == want,
        json!({"expected": expected.to_string(), "computed": got, "predicted": want}),
    ));
    if let Computed::Presentation(p) = computed {
        let got = betti_table(p)?;
        let want = expected.betti_table();
        checks.push(Check::new(
            "betti_match",
            got == want,
            json!({"computed": got.to_json(), "expected": want.to_json()}),
        ));
    }
    if let Some(map) = explicit {
        checks.push(verify_explicit_map(map)?);
    }
    Ok(checks)
}

/// Well-definedness (relations map to zero), surjectivity (the target's
/// generators lie in the ideal of the images) and injectivity (equal
/// Hilbert series) of an explicit map onto `R[s]` or `m[s]`.
pub fn verify_explicit_map(map: &ExplicitMap) -> Result<Check> {
    let ring = *map.source.ring();
    let rel = map.source.relations();
    if map.images.len() != rel.rows() {
        return Err(AlgebraError::DimensionMismatch("one image per generator is required".into()));
    }
    let shift = match map.target {
        Summand::Free(s) | Summand::MaxIdeal(s) => s,
    };
    let homogeneous = map
        .images
        .iter()
        .zip(map.source.generator_shifts())
        .all(|(p, &g)| p.is_zero() || p.homogeneous_degree() == crate::poly::Homogeneity::Degree(g - shift));
    let mut well_defined = true;
    for j in 0..rel.cols() {
        let mut s = Polynomial::zero(ring);
        for (i, img) in map.images.iter().enumerate() {
            s = s.add(&rel.entry(i, j).mul(img)?)?;
        }
        well_defined &= s.is_zero();
    }
    let targets: Vec<Polynomial> = match map.target {
        Summand::Free(_) => vec![Polynomial::one(ring)],
        Summand::MaxIdeal(_) => (0..ring.num_vars).map(|i| Polynomial::var(ring, i)).collect(),
    };
    let surjective = ideal_contains(ring, &map.images, &targets)?.into_iter().all(|b| b);
    let (n, w) = (ring.num_vars, ring.var_weight);
    let target_series = match map.target {
        Summand::Free(s) => HilbertSeries::free(n, w, &[s]),
        Summand::MaxIdeal(s) => HilbertSeries::max_ideal(n, w, s),
    };
    let source_series = match presentation_hilbert(&map.source, HilbertMode::ClosedForm)? {
        crate::hilbert::HilbertData::ClosedForm(s) => s,
        crate::hilbert::HilbertData::Truncated(_) => unreachable!("closed form requested"),
    };
    let injective = surjective && source_series == target_series;
    let images: Vec<String> = map.images.iter().map(|p| p.to_string()).collect();
    Ok(Check::new(
        "explicit_iso",
        homogeneous && well_defined && surjective && injective,
        json!({
            "map": map.description,
            "images": images,
            "homogeneous": homogeneous,
            "well_defined": well_defined,
            "surjective": surjective,
            "injective": injective,
        }),
    ))
}

/// Free, torsion-free but not free, or with torsion.
pub fn classify_module(m: &ModulePresentation) -> Result<ModuleClass> {
    if is_free(m)? {
        Ok(ModuleClass::Free)
    } else if is_torsion_free(m)?.is_torsion_free() {
        Ok(ModuleClass::TorsionFreeNotFree)
    } else {
        Ok(ModuleClass::HasTorsion)
    }
}

/// Names of the basis of the top slice stratum `Λ^{n-1}`.
fn top_stratum_labels(spec: &MutantSpec) -> Vec<String> {
    let n = spec.n();
    match spec.variant {
        Variant::Example33 => (1..=n).map(|i| format!("y{i}")).collect(),
        _ => subsets(n, spec.r)
            .into_iter()
            .map(|s| {
                format!("e{}", (0..n).filter(|i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect::<String>())
            })
            .collect(),
    }
}

/// `Σ p_i·label_i`, each coefficient polynomial parenthesized if needed.
pub fn format_combination(coeffs: &[Polynomial], labels: &[String]) -> String {
    let mut out = String::new();
    for (p, l) in coeffs.iter().zip(labels) {
        if p.is_zero() {
            continue;
        }
        let s = p.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if p.num_terms() == 1 => (true, rest.to_string()),
            _ if p.num_terms() > 1 => (false, format!("({s})")),
            _ => (false, s),
        };
        let body = if body == "1" { String::new() } else { body };
        if out.is_empty() {
            out = format!("{}{body}{l}", if neg { "-" } else { "" });
        } else {
            out += &format!(" {} {body}{l}", if neg { "-" } else { "+" });
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// The kernel of the first slice differential `Λ^r -> Λ^{r-1}` is free on
/// the single element `ι(e_[n]) = Σ ±t_i·e_{[n]∖i}` in degree `s_r + w`
/// (up to a unit). For `r = 1` there is no slice differential and the
/// kernel is the whole stratum.
pub fn verify_kernel_generator(spec: &MutantSpec) -> Result<Check> {
    let c = mutant_complex(spec)?;
    let ring = *c.ring();
    let n = spec.n();
    let d = &c.differentials()[1];
    let kernel = kernel_generators(d)?;
    let degrees = kernel.inclusion.source().shifts.clone();
    if spec.r == 1 {
        let want = vec![spec.slice_shift(1); n];
        let pass = degrees == want && kernel.presentation.num_relations() == 0;
        return Ok(Check::new(
            "kernel_generator",
            pass,
            json!({"rank": degrees.len(), "degrees": degrees, "note": "no slice differential; kernel is the whole stratum"}),
        ));
    }
    let expected_degree = spec.slice_shift(spec.r) + spec.w as i64;
    // ι(e_[n]) in the basis of the stratum
    let expected: Vec<Polynomial> = match spec.variant {
        Variant::Example33 => (0..n).map(|i| Polynomial::var(ring, i)).collect(),
        _ => contraction(ring, n, n)?.into_iter().map(|row| row[0].clone()).collect(),
    };
    let labels = top_stratum_labels(spec);
    let mut details = json!({"degrees": degrees, "expected_degree": expected_degree});
    let mut pass = degrees == vec![expected_degree] && kernel.presentation.num_relations() == 0;
    if degrees.len() == 1 {
        let got = kernel.inclusion.column(0);
        let unit = unit_ratio(&got, &expected);
        pass &= unit.is_some();
        let normalized: Vec<Polynomial> = match &unit {
            Some(u) => got.iter().map(|p| p.scale(&u.inv())).collect::<Result<_>>()?,
            None => got.clone(),
        };
        details["generator"] = json!(format_combination(&normalized, &labels));
        details["unit"] = json!(unit.map(|u| u.to_string()));
    }
    Ok(Check::new("kernel_generator", pass, details))
}

/// `Some(c)` with `got = c·expected` for a nonzero constant `c`.
fn unit_ratio(got: &[Polynomial], expected: &[Polynomial]) -> Option<Rational> {
    let (g, e) = got.iter().zip(expected).find(|(_, e)| !e.is_zero())?;
    let (gm, gc) = g.leading_term()?;
    let (em, ec) = e.leading_term()?;
    if gm != em {
        return None;
    }
    let c = gc.mul(&ec.inv());
    let scaled: Vec<Polynomial> = expected.iter().map(|p| p.scale(&c)).collect::<Result<_>>().ok()?;
    (scaled.as_slice() == got).then_some(c)
}

fn symbolic_hilbert(parts: &[ModulePresentation], max_degree: i64) -> Result<Vec<Vec<i64>>> {
    parts
        .iter()
        .map(|p| Ok(presentation_hilbert(p, HilbertMode::Truncated(max_degree))?.truncated(max_degree)))
        .collect()
}

fn degreewise_hilbert(r: &DegreewiseReport, positions: usize) -> Vec<Vec<i64>> {
    (0..positions).map(|p| r.hilbert_function(p)).collect()
}

/// Degreewise reports of one complex by coefficient ring, so the checks
/// below never compute the same table twice.
pub type ReportCache = BTreeMap<String, DegreewiseReport>;

fn cached<'a>(
    cache: &'a mut ReportCache,
    c: &CochainComplex,
    coefficients: CoefficientRing,
    max_degree: i64,
) -> Result<&'a DegreewiseReport> {
    let key = coefficients.label();
    if !cache.contains_key(&key) {
        cache.insert(key.clone(), degreewise_report(c, coefficients, max_degree)?);
    }
    Ok(&cache[&key])
}

fn field_consistency(
    c: &CochainComplex,
    field: CoefficientRing,
    max_degree: i64,
    cache: &mut ReportCache,
) -> Result<Check> {
    let local = if c.ring().coefficients == field { c.clone() } else { c.change_coefficients(field)? };
    let sym = symbolic_hilbert(&cohomology_presentations(&local)?, max_degree)?;
    let deg = degreewise_hilbert(cached(cache, c, field, max_degree)?, c.len());
    let mismatch = sym
        .iter()
        .zip(&deg)
        .enumerate()
        .find_map(|(p, (a, b))| a.iter().zip(b).position(|(x, y)| x != y).map(|d| json!({"position": p, "d": d})));
    Ok(Check::new(
        format!("engines_agree_{}", field.label()),
        mismatch.is_none(),
        json!({"coefficients": field.label(), "first_mismatch": mismatch, "hilbert": deg}),
    ))
}

/// Universal coefficients for cochains: `dim_Fp H^p_d` is the free rank plus
/// the number of `p`-divisible invariant factors of `H^p_d` and of
/// `H^{p+1}_{d+1}`. The top degree is skipped since `H^{p+1}_{D+1}` is not
/// in the report.
fn universal_coefficients_mismatch(
    z: &DegreewiseReport,
    fp: &DegreewiseReport,
    p: u64,
    positions: usize,
) -> Option<serde_json::Value> {
    let count = |pos: usize, d: i64| -> usize {
        z.entries
            .iter()
            .find(|e| e.position == pos && e.d == d)
            .and_then(|e| e.torsion.as_ref())
            .map_or(0, |t| t.iter().filter(|f| (*f % p).is_zero()).count())
    };
    fp.entries.iter().filter(|e| e.d < z.max_degree).find_map(|e| {
        let up = if e.position + 1 < positions { count(e.position + 1, e.d + 1) } else { 0 };
        let predicted = z.dim(e.position, e.d) + count(e.position, e.d) + up;
        (predicted != e.dim)
            .then(|| json!({"p": p, "position": e.position, "d": e.d, "dim": e.dim, "predicted": predicted}))
    })
}

/// Symbolic and degreewise Hilbert functions of every cohomology module
/// agree for `d <= max_degree` over the complex's field and, when the
/// entries reduce mod 2, over `F2`. For complexes with integer entries the integral oracle is also checked:
/// its free rank equals the rational dimension, and its torsion predicts
/// the `F_p` dimensions for `p = 2, 3, 5`.
pub fn cross_engine_consistency(c: &CochainComplex, max_degree: i64) -> Result<Vec<Check>> {
    cross_engine_consistency_cached(c, max_degree, &mut ReportCache::new())
}

fn reducible(c: &CochainComplex, coefficients: CoefficientRing) -> Result<bool> {
    match c.change_coefficients(coefficients) {
        Ok(_) => Ok(true),
        Err(AlgebraError::NotIntegral(_) | AlgebraError::NotInvertibleModP(..)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// As [`cross_engine_consistency`], reusing and filling `cache`.
pub fn cross_engine_consistency_cached(
    c: &CochainComplex,
    max_degree: i64,
    cache: &mut ReportCache,
) -> Result<Vec<Check>> {
    let own = c.ring().coefficients;
    let base = if own == CoefficientRing::Integers { CoefficientRing::Rationals } else { own };
    let mut checks = vec![field_consistency(c, base, max_degree, cache)?];
    let f2 = CoefficientRing::PrimeField(2);
    if base != f2 && reducible(c, f2)? {
        checks.push(field_consistency(c, f2, max_degree, cache)?);
    }
    // Rational entries with denominators have no integral form to compare.
    if base == CoefficientRing::Rationals && reducible(c, CoefficientRing::Integers)? {
        let rational: Vec<usize> = cached(cache, c, base, max_degree)?.entries.iter().map(|e| e.dim).collect();
        let z = cached(cache, c, CoefficientRing::Integers, max_degree)?.clone();
        let ranks_match = z.entries.iter().map(|e| e.dim).eq(rational.iter().copied());
        let mut first_jump_mismatch = None;
        for p in [2u64, 3, 5] {
            let rp = cached(cache, c, CoefficientRing::PrimeField(p), max_degree)?;
            if let Some(m) = universal_coefficients_mismatch(&z, rp, p, c.len()) {
                first_jump_mismatch.get_or_insert(m);
            }
        }
        checks.push(Check::new(
            "integral_consistency",
            ranks_match && first_jump_mismatch.is_none(),
            json!({
                "free_rank_equals_rational_dim": ranks_match,
                "torsion_free": !z.has_torsion(),
                "sampled_primes": [2, 3, 5],
                "first_jump_mismatch": first_jump_mismatch,
            }),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::expected::expected_cohomology;
    use crate::ring::PolynomialRing;

    fn q() -> CoefficientRing {
        CoefficientRing::Rationals
    }

    #[test]
    fn classification_of_small_modules() {
        let r = PolynomialRing::new(q(), 2, 2).unwrap();
        let quotient = ModulePresentation::from_columns(r, vec![0], vec![vec![Polynomial::var(r, 0)]], None).unwrap();
        assert_eq!(classify_module(&quotient).unwrap(), ModuleClass::HasTorsion);
        assert_eq!(
            classify_module(&ModulePresentation::max_ideal(r, 0).unwrap()).unwrap(),
            ModuleClass::TorsionFreeNotFree
        );
        assert_eq!(classify_module(&ModulePresentation::free(r, vec![0, 2])).unwrap(), ModuleClass::Free);
    }

    #[test]
    fn explicit_map_onto_max_ideal() {
        let r = PolynomialRing::new(q(), 3, 2).unwrap();
        let m = ModulePresentation::max_ideal(r, -1).unwrap();
        let good = ExplicitMap {
            description: "x_i -> t_i".into(),
            source: m.clone(),
            images: (0..3).map(|i| Polynomial::var(r, i)).collect(),
            target: Summand::MaxIdeal(-1),
        };
        assert!(verify_explicit_map(&good).unwrap().pass);
        let mut bad = good.clone();
        bad.images[0] = bad.images[0].neg();
        assert!(!verify_explicit_map(&bad).unwrap().pass);
    }

    #[test]
    fn kernel_generator_of_example() {
        let c = verify_kernel_generator(&MutantSpec::example_3_3(q())).unwrap();
        assert!(c.pass, "{:?}", c.details);
        assert_eq!(c.details["generator"], "t1y1 + t2y2 + t3y3");
        assert_eq!(c.details["degrees"], json!([4]));
        let t = verify_kernel_generator(&MutantSpec::torus(2, q()).unwrap()).unwrap();
        assert!(t.pass);
        assert_eq!(t.details["degrees"], json!([6]));
        assert_eq!(t.details["generator"], "t3e12 - t2e13 + t1e23");
        let two = verify_kernel_generator(&MutantSpec::two_torus(1).unwrap()).unwrap();
        assert!(two.pass);
        assert_eq!(two.details["degrees"], json!([1, 1]));
    }

    #[test]
    fn wrong_spec_fails_at_betti() {
        let spec = MutantSpec::example_3_3(q());
        let c = mutant_complex(&spec).unwrap();
        let parts = cohomology_presentations(&c).unwrap();
        let h = ModulePresentation::direct_sum(&parts, *c.ring()).unwrap();
        let good =
            match_decomposition(Computed::Presentation(&h), &expected_cohomology(&spec).unwrap(), 20, None).unwrap();
        assert!(good.iter().all(|c| c.pass));
        let wrong = DecompositionSpec::new(
            *c.ring(),
            vec![
                Summand::Free(0),
                Summand::Free(1),
                Summand::Free(1),
                Summand::Free(1),
                Summand::Free(3),
                Summand::Free(4),
            ],
        );
        let bad = match_decomposition(Computed::Presentation(&h), &wrong, 20, None).unwrap();
        assert!(!bad.iter().find(|c| c.name == "betti_match").unwrap().pass);
        assert!(matches!(
            match_decomposition(Computed::Presentation(&h), &wrong, 3, None),
            Err(AlgebraError::DegreeBoundTooSmall { .. })
        ));
    }

    #[test]
    fn engines_agree_on_example() {
        let c = mutant_complex(&MutantSpec::example_3_3(q())).unwrap();
        let checks = cross_engine_consistency(&c, 12).unwrap();
        assert_eq!(checks.len(), 3);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }
}
