//! Gröbner-basis engine: kernels, minimal presentations, resolutions and
//! the structural predicates built on them. Field coefficients only.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::groebner::{minimal_generators, syzygy_basis, Groebner, Space, Term, Vector};
use super::monomial_ideal::quotient_numerator;
use super::{columns_of, map_from_columns, space_of, to_column, to_vector, with_field};
use crate::coeff::Field;
use crate::complex::CochainComplex;
use crate::error::Result;
use crate::graded::{GradedFreeModule, GradedMap};
use crate::hilbert::{HilbertData, HilbertMode, HilbertSeries};
use crate::poly::Polynomial;
use crate::presentation::ModulePresentation;
use crate::ring::{Monomial, PolynomialRing};

/// Graded Betti numbers: `rows[i][d] = β_{i,d}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBettiTable {
    pub rows: Vec<BTreeMap<i64, usize>>,
}

impl GradedBettiTable {
    pub fn from_degrees(rows: Vec<Vec<i64>>) -> Self {
        let mut table = GradedBettiTable {
            rows: rows
                .into_iter()
                .map(|degs| {
                    let mut row = BTreeMap::new();
                    for d in degs {
                        *row.entry(d).or_insert(0) += 1;
                    }
                    row
                })
                .collect(),
        };
        table.trim();
        table
    }

    fn trim(&mut self) {
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    /// `Σ_d β_{i,d}`.
    pub fn total(&self, i: usize) -> usize {
        self.rows.get(i).map_or(0, |r| r.values().sum())
    }

    /// Length of the resolution plus one (number of nonzero rows).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let mut rows = vec![BTreeMap::new(); n];
        for t in [self, other] {
            for (i, row) in t.rows.iter().enumerate() {
                for (&d, &c) in row {
                    *rows[i].entry(d).or_insert(0) += c;
                }
            }
        }
        GradedBettiTable { rows }
    }

    pub fn shifted(&self, by: i64) -> Self {
        GradedBettiTable { rows: self.rows.iter().map(|r| r.iter().map(|(&d, &c)| (d + by, c)).collect()).collect() }
    }

    /// `Σ (-1)^i β_i`.
    pub fn euler_rank(&self) -> i64 {
        (0..self.rows.len()).map(|i| if i % 2 == 0 { 1 } else { -1 } * self.total(i) as i64).sum()
    }

    /// `{i: {degree: count}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut out = serde_json::Map::new();
        for (i, row) in self.rows.iter().enumerate() {
            let r: serde_json::Map<String, serde_json::Value> =
                row.iter().map(|(d, c)| (d.to_string(), serde_json::json!(c))).collect();
            out.insert(i.to_string(), serde_json::Value::Object(r));
        }
        serde_json::Value::Object(out)
    }
}

/// Kernel of a graded map: the inclusion of its minimal generators and a
/// minimal presentation of the kernel as an abstract module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    /// Degree-zero map from the free module on the generators into the source.
    pub inclusion: GradedMap,
    pub presentation: ModulePresentation,
}

/// Outcome of [`is_torsion_free`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionCheck {
    TorsionFree,
    /// A nonzero torsion class (as a vector over the generators) together
    /// with a nonzero ring element killing it.
    Torsion {
        element: Vec<Polynomial>,
        annihilator: Polynomial,
    },
}

impl TorsionCheck {
    pub fn is_torsion_free(&self) -> bool {
        matches!(self, TorsionCheck::TorsionFree)
    }
}

/// Generators and relations in a field-specific form.
struct Raw<F: Field> {
    space: Space<F>,
    rels: Vec<Vector<F::Elem>>,
}

impl<F: Field> Raw<F> {
    fn from_presentation(field: &F, m: &ModulePresentation) -> Self {
        let space = space_of(field, m.relations().target(), 0);
        let rels = columns_of(&space, m.relations()).into_iter().filter(|v| !v.is_zero()).collect();
        Raw { space, rels }
    }

    fn into_presentation(self, ring: PolynomialRing, minimal: bool) -> Result<ModulePresentation> {
        let target = GradedFreeModule::new(ring, self.space.shifts.clone());
        let degs = self.rels.iter().map(|v| self.space.degree(v).expect("nonzero relation")).collect();
        let source = GradedFreeModule::new(ring, degs);
        let map = map_from_columns(&self.space.field, source, target, &self.rels, 0)?;
        let p = ModulePresentation::new(map)?;
        Ok(if minimal { p.mark_minimal() } else { p })
    }
}

/// Minimal generators of `ker(map)` as vectors in the source.
fn kernel_vectors<F: Field>(field: &F, map: &GradedMap) -> (Space<F>, Vec<Vector<F::Elem>>) {
    let src = space_of(field, map.source(), 0);
    // lowering the target shifts by the map degree makes every column a
    // degree-zero element sitting in the degree of its source generator
    let tgt = space_of(field, map.target(), map.map_degree());
    let cols = columns_of(&tgt, map);
    let syz = syzygy_basis(&tgt, &cols, &map.source().shifts);
    let gens = minimal_generators(&src, syz);
    (src, gens)
}

/// Minimal generators of the relations among `gens` (vectors of `space`).
fn relations_among<F: Field>(space: &Space<F>, gens: &[Vector<F::Elem>]) -> (Space<F>, Vec<Vector<F::Elem>>) {
    let degs: Vec<i64> = gens.iter().map(|g| space.degree(g).expect("nonzero generator")).collect();
    let syz = syzygy_basis(space, gens, &degs);
    let gen_space = Space::new(space.field.clone(), space.order, space.weight, degs);
    let rels = minimal_generators(&gen_space, syz);
    (gen_space, rels)
}

/// Removes generators killed by unit relations, then minimalizes the
/// relations (graded Nakayama).
fn minimalize<F: Field>(mut raw: Raw<F>) -> Raw<F> {
    let f = raw.space.field.clone();
    loop {
        let mut pivot = None;
        'search: for (j, rel) in raw.rels.iter().enumerate() {
            for t in &rel.terms {
                if t.mon.is_one() {
                    pivot = Some((j, t.comp, t.coeff.clone()));
                    break 'search;
                }
            }
        }
        let Some((j, comp, c)) = pivot else { break };
        let piv = raw.rels.swap_remove(j);
        let cinv = f.inv(&c);
        // every other relation: r <- r - (r_comp / c) * piv, clearing component comp
        for rel in raw.rels.iter_mut() {
            let hits: Vec<(Monomial, F::Elem)> =
                rel.terms.iter().filter(|t| t.comp == comp).map(|t| (t.mon, f.mul(&t.coeff, &cinv))).collect();
            for (m, a) in hits {
                let mut terms = std::mem::take(&mut rel.terms);
                raw.space.axpy_tail(&mut terms, 0, &a, &m, None, &piv.terms);
                rel.terms = terms;
            }
        }
        raw.space.shifts.remove(comp as usize);
        for rel in raw.rels.iter_mut() {
            for t in rel.terms.iter_mut() {
                debug_assert_ne!(t.comp, comp);
                if t.comp > comp {
                    t.comp -= 1;
                }
            }
        }
        raw.rels.retain(|r| !r.is_zero());
    }
    let rels = std::mem::take(&mut raw.rels);
    raw.rels = minimal_generators(&raw.space, rels);
    raw
}

/// Minimal generators and minimal relations of `ker(b)`.
pub fn kernel_generators(b: &GradedMap) -> Result<Kernel> {
    with_field!(b.ring(), |f| kernel_in(&f, b))
}

fn kernel_in<F: Field>(f: &F, b: &GradedMap) -> Result<Kernel> {
    let ring = *b.ring();
    let (src, gens) = kernel_vectors(f, b);
    let degs: Vec<i64> = gens.iter().map(|g| src.degree(g).expect("nonzero")).collect();
    let inclusion = map_from_columns(f, GradedFreeModule::new(ring, degs), b.source().clone(), &gens, 0)?;
    let (gen_space, rels) = relations_among(&src, &gens);
    let presentation = Raw { space: gen_space, rels }.into_presentation(ring, true)?;
    Ok(Kernel { inclusion, presentation })
}

/// Equivalent presentation with no unit entries and minimal relations; its
/// generator and relation degrees are `β₀` and `β₁`. Idempotent.
pub fn minimal_presentation(m: &ModulePresentation) -> Result<ModulePresentation> {
    if m.is_minimal() {
        return Ok(m.clone());
    }
    let ring = *m.ring();
    with_field!(ring, |f| minimalize(Raw::from_presentation(&f, m)).into_presentation(ring, true))
}

/// The full graded Betti table of a minimal free resolution.
pub fn betti_table(m: &ModulePresentation) -> Result<GradedBettiTable> {
    with_field!(m.ring(), |f| Ok(betti_in(&f, m)))
}

fn betti_in<F: Field>(f: &F, m: &ModulePresentation) -> GradedBettiTable {
    let raw = minimalize(Raw::from_presentation(f, m));
    let mut rows = vec![raw.space.shifts.clone()];
    let mut space = raw.space;
    let mut cols = raw.rels;
    while !cols.is_empty() {
        let (next_space, next) = relations_among(&space, &cols);
        rows.push(next_space.shifts.clone());
        space = next_space;
        cols = next;
    }
    GradedBettiTable::from_degrees(rows)
}

/// Rank over the fraction field, as the alternating sum of Betti numbers.
pub fn rank_of_module(m: &ModulePresentation) -> Result<usize> {
    let r = betti_table(m)?.euler_rank();
    debug_assert!(r >= 0);
    Ok(r as usize)
}

/// Free iff a minimal presentation has no relations.
pub fn is_free(m: &ModulePresentation) -> Result<bool> {
    Ok(minimal_presentation(m)?.num_relations() == 0)
}

/// Decides torsion-freeness through the canonical map `M -> M**`.
///
/// With `F1 -R-> F0 -> M`, the dual `M*` is `ker Rᵀ`; if its minimal
/// generators form the columns of `K1: G1 -> F0*`, then `M**` embeds in
/// `G1*` and `M -> M**` is induced by `K1ᵀ`. The second Hom is never formed
/// explicitly: the kernel of `M -> M**` (the torsion submodule, `R` being a
/// normal domain) is `ker(K1ᵀ) / im R`.
pub fn is_torsion_free(m: &ModulePresentation) -> Result<TorsionCheck> {
    with_field!(m.ring(), |f| torsion_in(&f, m))
}

fn torsion_in<F: Field>(f: &F, m: &ModulePresentation) -> Result<TorsionCheck> {
    let ring = *m.ring();
    {
        let rel = m.relations();
        let f0 = rel.target().clone();
        let rt = rel.graded_transpose(0);
        let (_, k1) = kernel_vectors(f, &rt);
        let g1: Vec<i64> = k1.iter().map(|v| space_of(f, rt.source(), 0).degree(v).expect("nonzero")).collect();
        let k1_map = map_from_columns(f, GradedFreeModule::new(ring, g1), rt.source().clone(), &k1, 0)?;
        let k1t = k1_map.graded_transpose(0);
        let (space, z) = kernel_vectors(f, &k1t);
        let image: Vec<Vector<F::Elem>> = columns_of(&space, rel);
        let mut gb = Groebner::new(space.clone());
        for v in &image {
            gb.add_generator(v.clone());
        }
        gb.complete(None);
        let Some(w) = z.into_iter().find(|v| !gb.contains(v)) else {
            return Ok(TorsionCheck::TorsionFree);
        };
        let mut cols = vec![w.clone()];
        cols.extend(image.iter().filter(|v| !v.is_zero()).cloned());
        let degs: Vec<i64> = cols.iter().map(|v| space.degree(v).expect("nonzero")).collect();
        let syz = syzygy_basis(&space, &cols, &degs);
        let ann = syz
            .iter()
            .map(|s| Vector { terms: s.terms.iter().filter(|t| t.comp == 0).cloned().collect::<Vec<Term<_>>>() })
            .find(|v| !v.is_zero())
            .expect("a torsion element has a nonzero annihilator");
        let element = to_column(f, ring, f0.rank(), &w);
        let annihilator = to_column(f, ring, 1, &ann).remove(0);
        Ok(TorsionCheck::Torsion { element, annihilator })
    }
}

/// Hilbert data of `coker(relations)` from the leading terms of a Gröbner
/// basis of the relations: closed form by the monomial-ideal numerator, or
/// a degreewise count of standard monomials.
pub fn presentation_hilbert(m: &ModulePresentation, mode: HilbertMode) -> Result<HilbertData> {
    with_field!(m.ring(), |f| Ok(hilbert_in(&f, m, mode)))
}

fn hilbert_in<F: Field>(f: &F, m: &ModulePresentation, mode: HilbertMode) -> HilbertData {
    let ring = *m.ring();
    {
        let raw = Raw::from_presentation(f, m);
        let mut gb = Groebner::new(raw.space.clone());
        for v in raw.rels {
            gb.add_generator(v);
        }
        let leads = match mode {
            HilbertMode::ClosedForm => {
                gb.complete(None);
                gb.leading_monomials()
            }
            HilbertMode::Truncated(max) => {
                gb.complete(Some(max));
                gb.leading_monomials()
            }
        };
        let shifts = &raw.space.shifts;
        let w = ring.weight();
        match mode {
            HilbertMode::ClosedForm => {
                let mut s = HilbertSeries::zero(ring.num_vars, ring.var_weight);
                for (c, &shift) in shifts.iter().enumerate() {
                    let gens = leads.get(&(c as u32)).cloned().unwrap_or_default();
                    for (e, k) in quotient_numerator(&gens, w) {
                        s.add_term(e + shift, k);
                    }
                }
                HilbertData::ClosedForm(s)
            }
            HilbertMode::Truncated(max) => {
                let dims = (0..=max)
                    .map(|d| {
                        shifts
                            .iter()
                            .enumerate()
                            .map(|(c, &shift)| {
                                let gens = leads.get(&(c as u32)).map(Vec::as_slice).unwrap_or(&[]);
                                ring.monomials_of_degree(d - shift)
                                    .iter()
                                    .filter(|mon| !gens.iter().any(|g| g.divides(mon)))
                                    .count() as i64
                            })
                            .sum()
                    })
                    .collect();
                HilbertData::Truncated(dims)
            }
        }
    }
}

/// Presentation of `H^p` for every position `p` of the complex.
pub fn cohomology_presentations(c: &CochainComplex) -> Result<Vec<ModulePresentation>> {
    (0..c.len()).map(|p| cohomology_presentation(c, p)).collect()
}

/// Minimal presentation of `H^p = ker δ_p / im δ_{p-1}`.
///
/// Kernel generators already lying in the image are dropped (they vanish in
/// `H^p`); relations on the rest are the syzygies of `[K' | D]` restricted
/// to the `K'` coordinates.
pub fn cohomology_presentation(c: &CochainComplex, p: usize) -> Result<ModulePresentation> {
    with_field!(c.ring(), |f| cohomology_in(&f, c, p))
}

fn cohomology_in<F: Field>(f: &F, c: &CochainComplex, p: usize) -> Result<ModulePresentation> {
    let ring = *c.ring();
    {
        let term = c.term(p);
        let space = space_of(f, term, 0);
        let kernel = match c.outgoing(p) {
            Some(d) => kernel_vectors(f, d).1,
            None => (0..term.rank())
                .map(|i| Vector { terms: vec![Term { comp: i as u32, mon: Monomial::one(), coeff: f.one() }] })
                .collect(),
        };
        let image: Vec<Vector<F::Elem>> = match c.incoming(p) {
            Some(d) => columns_of(&space, d).into_iter().filter(|v| !v.is_zero()).collect(),
            None => Vec::new(),
        };
        let top = kernel.iter().filter_map(|v| space.degree(v)).max();
        let mut gb = Groebner::new(space.clone());
        for v in &image {
            gb.add_generator(v.clone());
        }
        gb.complete(top);
        let kept: Vec<Vector<F::Elem>> = kernel.into_iter().filter(|v| !gb.contains(v)).collect();
        if kept.is_empty() {
            return Ok(ModulePresentation::zero_module(ring));
        }
        let k = kept.len() as u32;
        let mut cols = kept;
        cols.extend(image);
        let degs: Vec<i64> = cols.iter().map(|v| space.degree(v).expect("nonzero")).collect();
        let gen_space = Space::new(f.clone(), space.order, space.weight, degs[..k as usize].to_vec());
        let rels: Vec<Vector<F::Elem>> = syzygy_basis(&space, &cols, &degs)
            .into_iter()
            .map(|s| Vector { terms: s.terms.into_iter().filter(|t| t.comp < k).collect() })
            .filter(|v| !v.is_zero())
            .collect();
        minimalize(Raw { space: gen_space, rels }).into_presentation(ring, true)
    }
}

/// Membership of each homogeneous `target` in the ideal generated by the
/// homogeneous `gens`.
pub fn ideal_contains(ring: PolynomialRing, gens: &[Polynomial], targets: &[Polynomial]) -> Result<Vec<bool>> {
    with_field!(ring, |f| Ok(ideal_contains_in(&f, ring, gens, targets)))
}

fn ideal_contains_in<F: Field>(f: &F, ring: PolynomialRing, gens: &[Polynomial], targets: &[Polynomial]) -> Vec<bool> {
    let space = space_of(f, &GradedFreeModule::new(ring, vec![0]), 0);
    let mut gb = Groebner::new(space.clone());
    for g in gens.iter().filter(|g| !g.is_zero()) {
        gb.add_generator(to_vector(&space, std::slice::from_ref(g)));
    }
    let vs: Vec<Vector<F::Elem>> = targets.iter().map(|t| to_vector(&space, std::slice::from_ref(t))).collect();
    gb.complete(vs.iter().filter_map(|v| space.degree(v)).max());
    vs.iter().map(|v| gb.contains(v)).collect()
}
