//! End-to-end verification of the built models.

use rayon::prelude::*;
use serde_json::json;

use crate::builders::complexes::{koszul_complex, mutant_complex, MutantSpec, Variant};
use crate::builders::doubling::doubling_complex;
use crate::builders::expected::expected_cohomology;
use crate::builders::poincare::{
    connected_sum_poincare, homology_poincare, torus_connected_sum, two_torus_connected_sum, Space,
};
use crate::coeff::CoefficientRing;
use crate::complex::CochainComplex;
use crate::engine::degreewise::degreewise_report;
use crate::engine::symbolic::{
    betti_table, cohomology_presentations, kernel_generators, presentation_hilbert, rank_of_module,
};
use crate::error::Result;
use crate::graded::{GradedFreeModule, GradedMap};
use crate::hilbert::{HilbertMode, HilbertSeries};
use crate::poly::Polynomial;
use crate::presentation::ModulePresentation;

use super::checks::{
    classify_module, cross_engine_consistency_cached, match_decomposition, verify_kernel_generator, Computed,
    ExplicitMap, ReportCache,
};
use super::decomposition::{DecompositionSpec, Summand};
use super::intersection::intersection_form;
use super::obstruction::realizability_obstruction;
use super::report::{Check, VerificationReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EngineChoice {
    Symbolic,
    Degreewise,
    #[default]
    Both,
}

impl EngineChoice {
    fn symbolic(self) -> bool {
        self != EngineChoice::Degreewise
    }

    fn degreewise(self) -> bool {
        self != EngineChoice::Symbolic
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Degree bound `D`; `None` uses the model's default.
    pub max_degree: Option<i64>,
    pub engine: EngineChoice,
}

/// Default degree bound `max(20, 3r + 1 + 4w)`. At `r = 8` the bound is
/// capped at the top shift: `3r + 1 = 25` for the torus, `2r = 16` for the
/// `(Z/2)` model, whose degree-one variables make slices grow fastest.
pub fn default_degree_bound(spec: &MutantSpec) -> i64 {
    let r = spec.r as i64;
    if spec.r == 8 {
        return spec.top_shift();
    }
    20.max(3 * r + 1 + 4 * spec.w as i64)
}

/// The spec over a field: integer models run their symbolic part over `Q`.
fn field_spec(spec: &MutantSpec) -> MutantSpec {
    let mut s = *spec;
    if s.coefficients == CoefficientRing::Integers {
        s.coefficients = CoefficientRing::Rationals;
    }
    s
}

fn complex_check(c: &CochainComplex) -> Check {
    let ranks: Vec<usize> = c.terms().iter().map(|t| t.rank()).collect();
    // build_complex already rejected shape, degree, δ² and minimality failures
    Check::new(
        "complex_valid",
        true,
        json!({"ranks": ranks, "labels": c.labels(), "checks": "shapes, degree +1, delta^2 = 0, entries in m"}),
    )
}

/// Verifies a stretched Koszul complex against its predicted cohomology.
pub fn verify_mutant(spec: &MutantSpec, opts: &VerifyOptions) -> Result<VerificationReport> {
    let fspec = field_spec(spec);
    let d = opts.max_degree.unwrap_or_else(|| default_degree_bound(spec));
    let mut report = VerificationReport::new(spec.label(), d);
    let c = mutant_complex(spec)?;
    let cf = if fspec == *spec { c.clone() } else { mutant_complex(&fspec)? };
    let expected = expected_cohomology(&fspec)?;
    report.push(complex_check(&c));
    report.push(Check::new("expected", true, json!({"decomposition": expected.to_string()})));
    if spec.r == 8 && opts.max_degree.is_none() {
        report.note(format!("degree bound capped at the top shift {d}"));
    }
    if opts.engine.symbolic() {
        let parts = cohomology_presentations(&cf)?;
        let h = ModulePresentation::direct_sum(&parts, *cf.ring())?;
        let explicit = (spec.r >= 2).then(|| {
            let ring = *cf.ring();
            ExplicitMap {
                description: "x_i -> t_i on the exterior degree-1 end".into(),
                source: parts[spec.r].clone(),
                images: (0..spec.n()).map(|i| Polynomial::var(ring, i)).collect(),
                target: Summand::MaxIdeal(fspec.slice_shift(1) - fspec.w as i64),
            }
        });
        report.extend(match_decomposition(Computed::Presentation(&h), &expected, d, explicit.as_ref())?);
        if spec.r >= 2 {
            let m = &parts[spec.r];
            let s1 = fspec.slice_shift(1);
            let w = fspec.w as i64;
            let gens_ok = m.generator_shifts().iter().all(|&g| g == s1) && m.num_generators() == spec.n();
            let betti = betti_table(m)?;
            let rels_ok = betti.rows.get(1).is_some_and(|row| row.keys().all(|&k| k == s1 + w));
            report.push(Check::new(
                "m_summand_degrees",
                gens_ok && rels_ok,
                json!({"generator_degree": s1, "relation_degree": s1 + w, "generators": m.num_generators(), "betti": betti.to_json()}),
            ));
        }
        let class = classify_module(&h)?;
        let want = expected.classification();
        report.push(Check::new(
            "classification",
            class == want,
            json!({"computed": class.to_string(), "expected": want.to_string()}),
        ));
        let rank = rank_of_module(&h)?;
        report.push(Check::new("rank", rank == 4, json!({"rank": rank, "expected": 4})));
        report.push(verify_kernel_generator(&fspec)?);
    }
    let mut cache = ReportCache::new();
    if opts.engine.degreewise() {
        let dw = degreewise_report(&c, spec.coefficients, d)?;
        let mut checks = match_decomposition(Computed::Degreewise(&dw), &expected, d, None)?;
        for ch in &mut checks {
            ch.name = format!("{}_degreewise", ch.name);
        }
        report.extend(checks);
        if spec.coefficients == CoefficientRing::Integers {
            report.push(Check::new(
                "integral_torsion_scan",
                !dw.has_torsion(),
                json!({"torsion_free": !dw.has_torsion(), "degrees": format!("{}..={}", dw.min_degree, d)}),
            ));
        }
        cache.insert(spec.coefficients.label(), dw);
    }
    if opts.engine == EngineChoice::Both {
        report.extend(cross_engine_consistency_cached(&cf, d, &mut cache)?);
    }
    Ok(report)
}

/// Koszul complex: exact except at the `Λ^0` end, where `H = R/m = k`.
/// Over `Z` the symbolic half runs over `Q`.
pub fn verify_koszul(
    n: usize,
    w: u32,
    coefficients: CoefficientRing,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let d = opts.max_degree.unwrap_or(20);
    let mut report = VerificationReport::new(format!("koszul-n{n}-w{w}-{}", coefficients.label()), d);
    let field = if coefficients.is_field() { coefficients } else { CoefficientRing::Rationals };
    let c = koszul_complex(n, w, field)?;
    report.push(complex_check(&c));
    let mut residue = vec![0i64; d as usize + 1];
    residue[0] = 1;
    if opts.engine.symbolic() {
        let parts = cohomology_presentations(&c)?;
        let h: Vec<Vec<i64>> = parts
            .iter()
            .map(|p| Ok(presentation_hilbert(p, HilbertMode::Truncated(d))?.truncated(d)))
            .collect::<Result<_>>()?;
        let exact = h[..n].iter().all(|v| v.iter().all(|&x| x == 0));
        report.push(Check::new(
            "exact_except_end",
            exact && h[n] == residue,
            json!({"positive_positions_zero": exact, "end": h[n]}),
        ));
    }
    let mut cache = ReportCache::new();
    if opts.engine.degreewise() {
        let dw = degreewise_report(&c, coefficients, d)?;
        let positions: Vec<usize> = (0..n).collect();
        report.push(Check::new(
            "exact_except_end_degreewise",
            dw.is_zero_at(&positions) && dw.hilbert_function(n) == residue,
            json!({"end": dw.hilbert_function(n)}),
        ));
        cache.insert(coefficients.label(), dw);
    }
    if opts.engine == EngineChoice::Both {
        report.extend(cross_engine_consistency_cached(&c, d, &mut cache)?);
    }
    Ok(report)
}

fn series_of(m: &ModulePresentation) -> Result<HilbertSeries> {
    match presentation_hilbert(m, HilbertMode::ClosedForm)? {
        crate::hilbert::HilbertData::ClosedForm(s) => Ok(s),
        crate::hilbert::HilbertData::Truncated(_) => unreachable!("closed form requested"),
    }
}

/// Doubling of a presentation: the Hilbert identity
/// `H = R ⊕ coker B ⊕ ker B ⊕ coker Bᵀ ⊕ ker Bᵀ ⊕ R[n]` with every piece
/// computed on its own, and `coker B` recovered as a summand of `H^1`.
pub fn verify_doubling(p: &ModulePresentation, n: Option<i64>, label: &str) -> Result<VerificationReport> {
    let dbl = doubling_complex(p, n)?;
    let ring = *p.ring();
    let d = dbl.n + 2 * ring.weight();
    let mut report = VerificationReport::new(format!("doubling-{label}"), d);
    report.note(format!("n = {}", dbl.n));
    report.push(complex_check(&dbl.complex));
    let parts = cohomology_presentations(&dbl.complex)?;
    let total = parts.iter().map(series_of).collect::<Result<Vec<_>>>()?;
    let h = total.iter().fold(HilbertSeries::zero(ring.num_vars, ring.var_weight), |a, s| a.add(s));

    let coker_b = &dbl.presentation;
    let ker_b = kernel_generators(&dbl.b)?.presentation;
    let bt = &dbl.b_transpose;
    // Bᵀ has degree +1; as a presentation its relations sit one degree up
    let bt_rel = GradedMap::new(
        GradedFreeModule::new(ring, bt.source().shifts.iter().map(|s| s + 1).collect()),
        bt.target().clone(),
        bt.entries().to_vec(),
        0,
    )?;
    let coker_bt = ModulePresentation::new(bt_rel)?;
    let ker_bt = kernel_generators(bt)?.presentation;
    let pieces = [coker_b, &ker_b, &coker_bt, &ker_bt];
    let mut sum = HilbertSeries::free(ring.num_vars, ring.var_weight, &[0, dbl.n]);
    for piece in pieces {
        sum = sum.add(&series_of(piece)?);
    }
    report.push(Check::new(
        "hilbert_identity",
        h == sum,
        json!({"cohomology": h.to_string(), "pieces": sum.to_string()}),
    ));
    let h1 = betti_table(&parts[1])?;
    let want = betti_table(coker_b)?.direct_sum(&betti_table(&coker_bt)?);
    report.push(Check::new(
        "coker_summand",
        h1 == want,
        json!({"h1": h1.to_json(), "coker_b_plus_coker_bt": want.to_json()}),
    ));
    let class = classify_module(coker_b)?;
    report.push(Check::new("coker_classification", true, json!({"coker_b": class.to_string()})));
    Ok(report)
}

/// Poincaré-polynomial identities for all `r`.
pub fn verify_poincare() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("poincare", 0);
    for r in [1u32, 2, 4, 8] {
        let z = homology_poincare(Space::Z, r, Variant::Torus)?;
        let dim = 3 * r + 1;
        let sum_ok = if r == 1 {
            z.to_string() == "1 + 2q^2 + q^4"
        } else {
            let (s, dim) = torus_connected_sum(r);
            connected_sum_poincare(&s, dim)? == z
        };
        report.push(Check::new(
            format!("torus_r{r}"),
            sum_ok && z.is_symmetric(dim),
            json!({"Z": z.to_string(), "connected_sum": sum_ok, "symmetric": z.is_symmetric(dim)}),
        ));
        let z2 = homology_poincare(Space::Z, r, Variant::TwoTorus)?;
        let (s, dim2) = two_torus_connected_sum(r);
        let ok2 = connected_sum_poincare(&s, dim2)? == z2 && z2.total() == 1 << (r + 1) && z2.is_symmetric(dim2);
        report.push(Check::new(
            format!("two_torus_r{r}"),
            ok2,
            json!({"Z": z2.to_string(), "total": z2.total(), "rank_A": 1u64 << (r + 1)}),
        ));
    }
    Ok(report)
}

pub fn verify_intersection_form(r: u32) -> Result<VerificationReport> {
    let f = intersection_form(r)?;
    let mut report = VerificationReport::new(format!("intersection-form-r{r}"), 0);
    report.note(format!("l = 2^(r+1) = {} fixed points (the rank count forces this value)", f.l));
    report.note("pairing sum_j (-1)^j a_j b_j is a reconstruction");
    report.push(Check::new(
        "hyperbolic_gram",
        f.passes(),
        json!({
            "size": f.gram.len(),
            "blocks": f.blocks,
            "in_kernel": f.in_kernel,
            "descends": f.descends,
            "spans_kernel": f.spans_kernel,
            "hyperbolic": f.hyperbolic,
        }),
    ));
    Ok(report)
}

/// Fires on the hand-made example, and on no geometric decomposition.
pub fn verify_obstruction() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("obstruction", 0);
    let example = expected_cohomology(&MutantSpec::example_3_3(CoefficientRing::Rationals))?;
    let rep = realizability_obstruction(&example);
    report.push(Check::new("example_flagged", rep.obstructed, serde_json::to_value(&rep).expect("serializes")));
    let mut geometric: Vec<(String, DecompositionSpec)> = Vec::new();
    for r in [1usize, 2, 4, 8] {
        let t = MutantSpec::torus(r, CoefficientRing::Rationals)?;
        geometric.push((t.label(), expected_cohomology(&t)?));
        let s = MutantSpec::two_torus(r)?;
        geometric.push((s.label(), expected_cohomology(&s)?));
    }
    let flagged: Vec<&String> =
        geometric.iter().filter(|(_, h)| realizability_obstruction(h).obstructed).map(|(l, _)| l).collect();
    report.push(Check::new("geometric_not_flagged", flagged.is_empty(), json!({"flagged": flagged})));
    Ok(report)
}

/// One entry of the default suite.
#[derive(Clone, Debug)]
pub enum SuiteItem {
    Mutant(MutantSpec),
    Koszul(usize),
    Poincare,
    IntersectionForm(u32),
    Obstruction,
}

impl SuiteItem {
    pub fn run(&self, opts: &VerifyOptions) -> Result<VerificationReport> {
        match self {
            // the integral runs are degreewise: their symbolic half repeats the Q run
            SuiteItem::Mutant(s) if s.coefficients == CoefficientRing::Integers => {
                verify_mutant(s, &VerifyOptions { engine: EngineChoice::Degreewise, ..*opts })
            }
            SuiteItem::Mutant(s) => verify_mutant(s, opts),
            SuiteItem::Koszul(n) => verify_koszul(*n, 2, CoefficientRing::Rationals, opts),
            SuiteItem::Poincare => verify_poincare(),
            SuiteItem::IntersectionForm(r) => verify_intersection_form(*r),
            SuiteItem::Obstruction => verify_obstruction(),
        }
    }
}

/// `example-3-3`; torus `r ∈ {1,2,4,8}` over `Q` and over `Z`; the
/// `(Z/2)` models over `F2`; Koszul `n ≤ 9`; Poincaré identities;
/// intersection forms; the obstruction report.
pub fn default_suite() -> Vec<SuiteItem> {
    let q = CoefficientRing::Rationals;
    let mut items = vec![SuiteItem::Mutant(MutantSpec::example_3_3(q))];
    for r in [1usize, 2, 4, 8] {
        items.push(SuiteItem::Mutant(MutantSpec::torus(r, q).expect("valid r")));
        items.push(SuiteItem::Mutant(MutantSpec::torus(r, CoefficientRing::Integers).expect("valid r")));
        items.push(SuiteItem::Mutant(MutantSpec::two_torus(r).expect("valid r")));
    }
    items.extend((1..=9).map(SuiteItem::Koszul));
    items.push(SuiteItem::Poincare);
    items.push(SuiteItem::IntersectionForm(2));
    items.push(SuiteItem::IntersectionForm(4));
    items.push(SuiteItem::Obstruction);
    items
}

/// Runs items concurrently; reports come back in item order.
pub fn run_suite(items: &[SuiteItem], opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    items.par_iter().map(|i| i.run(opts)).collect::<Vec<_>>().into_iter().collect()
}
