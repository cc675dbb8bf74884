//! Homogeneous Gröbner bases of submodules of graded free modules over a
//! field, in position-over-term order.
//!
//! Component `i` ranks above component `j` when `i < j`; inside a component
//! the ring's monomial order decides. Everything here assumes homogeneous
//! input, which lets the completion run degree by degree and stop at a bound.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::coeff::Field;
use crate::ring::{Monomial, MonomialOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term<E> {
    pub comp: u32,
    pub mon: Monomial,
    pub coeff: E,
}

/// Element of a free module: terms strictly descending in module order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vector<E> {
    pub terms: Vec<Term<E>>,
}

impl<E> Vector<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term<E>> {
        self.terms.first()
    }
}

/// The ambient free module: field, monomial order, variable weight and the
/// degree of each basis vector.
#[derive(Clone, Debug)]
pub(crate) struct Space<F: Field> {
    pub field: F,
    pub order: MonomialOrder,
    pub weight: i64,
    pub shifts: Vec<i64>,
}

impl<F: Field> Space<F> {
    pub fn new(field: F, order: MonomialOrder, weight: i64, shifts: Vec<i64>) -> Self {
        Space { field, order, weight, shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn cmp(&self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.order.cmp(a.1, b.1))
    }

    pub fn term_degree(&self, comp: u32, mon: &Monomial) -> i64 {
        self.weight * mon.degree() as i64 + self.shifts[comp as usize]
    }

    pub fn degree(&self, v: &Vector<F::Elem>) -> Option<i64> {
        v.lead().map(|t| self.term_degree(t.comp, &t.mon))
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(&self, mut terms: Vec<Term<F::Elem>>) -> Vector<F::Elem> {
        terms.sort_by(|a, b| self.cmp((b.comp, &b.mon), (a.comp, &a.mon)));
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mon == t.mon => l.coeff = self.field.add(&l.coeff, &t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.coeff));
        Vector { terms: out }
    }

    /// `m * v`, optionally relocating every component through `comp_map`.
    pub fn mul_monomial(&self, v: &Vector<F::Elem>, m: &Monomial) -> Vector<F::Elem> {
        Vector {
            terms: v.terms.iter().map(|t| Term { comp: t.comp, mon: t.mon.mul(m), coeff: t.coeff.clone() }).collect(),
        }
    }

    pub fn make_monic(&self, v: &mut Vector<F::Elem>) {
        if let Some(l) = v.lead() {
            if !self.field.is_one(&l.coeff) {
                let inv = self.field.inv(&l.coeff);
                for t in v.terms.iter_mut() {
                    t.coeff = self.field.mul(&t.coeff, &inv);
                }
            }
        }
    }

    /// `dst[start..] -= c * m * src` (with components of `src` optionally
    /// offset), merging in place.
    pub fn axpy_tail(
        &self,
        dst: &mut Vec<Term<F::Elem>>,
        start: usize,
        c: &F::Elem,
        m: &Monomial,
        comp_offset: Option<u32>,
        src: &[Term<F::Elem>],
    ) {
        let f = &self.field;
        let tail: Vec<Term<F::Elem>> = dst.drain(start..).collect();
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &Term<F::Elem>| (t.comp + comp_offset.unwrap_or(0), t.mon.mul(m));
        while i < tail.len() && j < src.len() {
            let (sc, sm) = shifted(&src[j]);
            match self.cmp((tail[i].comp, &tail[i].mon), (sc, &sm)) {
                Ordering::Greater => {
                    dst.push(tail[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    dst.push(Term { comp: sc, mon: sm, coeff: f.neg(&f.mul(c, &src[j].coeff)) });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.sub(&tail[i].coeff, &f.mul(c, &src[j].coeff));
                    if !f.is_zero(&v) {
                        dst.push(Term { comp: sc, mon: sm, coeff: v });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        dst.extend_from_slice(&tail[i..]);
        while j < src.len() {
            let (sc, sm) = shifted(&src[j]);
            dst.push(Term { comp: sc, mon: sm, coeff: f.neg(&f.mul(c, &src[j].coeff)) });
            j += 1;
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    degree: i64,
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Incrementally completed homogeneous Gröbner basis.
#[derive(Clone, Debug)]
pub(crate) struct Groebner<F: Field> {
    space: Space<F>,
    basis: Vec<Vector<F::Elem>>,
    leads: Vec<(u32, Monomial)>,
    by_comp: BTreeMap<u32, Vec<usize>>,
    pairs: Vec<Pair>,
    pending: Vec<(i64, Vector<F::Elem>)>,
    completed_to: Option<i64>,
}

impl<F: Field> Groebner<F> {
    pub fn new(space: Space<F>) -> Self {
        Groebner {
            space,
            basis: Vec::new(),
            leads: Vec::new(),
            by_comp: BTreeMap::new(),
            pairs: Vec::new(),
            pending: Vec::new(),
            completed_to: None,
        }
    }

    /// Gröbner basis of the submodule generated by `gens`, fully completed.
    #[cfg(test)]
    pub fn from_generators(space: Space<F>, gens: impl IntoIterator<Item = Vector<F::Elem>>) -> Self {
        let mut gb = Self::new(space);
        for g in gens {
            gb.add_generator(g);
        }
        gb.complete(None);
        gb
    }

    pub fn add_generator(&mut self, v: Vector<F::Elem>) {
        if let Some(d) = self.space.degree(&v) {
            debug_assert!(v.terms.iter().all(|t| self.space.term_degree(t.comp, &t.mon) == d), "inhomogeneous input");
            self.pending.push((d, v));
            self.completed_to = None;
        }
    }

    fn find_reducer(&self, comp: u32, mon: &Monomial) -> Option<usize> {
        self.by_comp.get(&comp)?.iter().copied().find(|&k| self.leads[k].1.divides(mon))
    }

    /// Full normal form with respect to the current basis.
    pub fn reduce(&self, v: &Vector<F::Elem>) -> Vector<F::Elem> {
        let mut terms = v.terms.clone();
        let mut pos = 0;
        while pos < terms.len() {
            let (comp, mon) = (terms[pos].comp, terms[pos].mon);
            match self.find_reducer(comp, &mon) {
                Some(k) => {
                    let q = self.leads[k].1.quotient_of(&mon);
                    let c = terms[pos].coeff.clone();
                    self.space.axpy_tail(&mut terms, pos, &c, &q, None, &self.basis[k].terms);
                }
                None => pos += 1,
            }
        }
        Vector { terms }
    }

    fn spoly(&self, p: &Pair) -> Vector<F::Elem> {
        let (a, b) = (&self.basis[p.i], &self.basis[p.j]);
        let qa = self.leads[p.i].1.quotient_of(&p.lcm);
        let qb = self.leads[p.j].1.quotient_of(&p.lcm);
        let mut terms = self.space.mul_monomial(a, &qa).terms;
        let one = self.space.field.one();
        self.space.axpy_tail(&mut terms, 0, &one, &qb, None, &b.terms);
        Vector { terms }
    }

    fn insert(&mut self, mut h: Vector<F::Elem>) {
        self.space.make_monic(&mut h);
        let k = self.basis.len();
        let (comp, lm) = {
            let l = h.lead().expect("nonzero");
            (l.comp, l.mon)
        };
        let deg_of = |lcm: &Monomial| self.space.term_degree(comp, lcm);

        // criterion B on existing pairs of this component
        let leads = &self.leads;
        self.pairs.retain(|p| {
            if leads[p.i].0 != comp || !lm.divides(&p.lcm) {
                return true;
            }
            let li = leads[p.i].1.lcm(&lm);
            let lj = leads[p.j].1.lcm(&lm);
            li == p.lcm || lj == p.lcm
        });

        let partners: Vec<usize> = self.by_comp.get(&comp).cloned().unwrap_or_default();
        let mut fresh: Vec<Pair> = partners
            .iter()
            .map(|&i| {
                let lcm = self.leads[i].1.lcm(&lm);
                Pair { degree: deg_of(&lcm), i, j: k, lcm }
            })
            .collect();
        fresh.sort_by(|a, b| a.degree.cmp(&b.degree).then(a.i.cmp(&b.i)));
        let mut kept: Vec<Pair> = Vec::with_capacity(fresh.len());
        for (idx, p) in fresh.iter().enumerate() {
            let redundant = fresh
                .iter()
                .enumerate()
                .any(|(jdx, q)| jdx != idx && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || jdx < idx));
            if !redundant {
                kept.push(p.clone());
            }
        }
        self.pairs.extend(kept);
        self.leads.push((comp, lm));
        self.by_comp.entry(comp).or_default().push(k);
        self.basis.push(h);
    }

    /// Completes the basis through degree `bound` (or entirely).
    pub fn complete(&mut self, bound: Option<i64>) {
        loop {
            let next_pair = self.pairs.iter().map(|p| p.degree).min();
            let next_input = self.pending.iter().map(|(d, _)| *d).min();
            let d = match (next_pair, next_input) {
                (None, None) => break,
                (a, b) => a.into_iter().chain(b).min().unwrap(),
            };
            if bound.is_some_and(|b| d > b) {
                break;
            }
            let mut inputs = Vec::new();
            self.pending.retain(|(e, v)| {
                if *e == d {
                    inputs.push(v.clone());
                    false
                } else {
                    true
                }
            });
            for v in inputs {
                let nf = self.reduce(&v);
                if !nf.is_zero() {
                    self.insert(nf);
                }
            }
            loop {
                let Some(pos) = self
                    .pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.degree == d)
                    .min_by(|(_, a), (_, b)| (a.i, a.j).cmp(&(b.i, b.j)))
                    .map(|(idx, _)| idx)
                else {
                    break;
                };
                let pair = self.pairs.swap_remove(pos);
                let s = self.spoly(&pair);
                let nf = self.reduce(&s);
                if !nf.is_zero() {
                    self.insert(nf);
                }
            }
        }
        self.completed_to = bound;
        if bound.is_none() {
            self.interreduce_tails();
        }
    }

    /// Replaces each basis element by its tail-reduced form. Leading terms
    /// are unchanged, so pair bookkeeping stays valid.
    fn interreduce_tails(&mut self) {
        for k in 0..self.basis.len() {
            let v = self.basis[k].clone();
            let mut terms = v.terms;
            let mut pos = 1;
            while pos < terms.len() {
                let (comp, mon) = (terms[pos].comp, terms[pos].mon);
                match self.find_reducer(comp, &mon) {
                    Some(j) => {
                        let q = self.leads[j].1.quotient_of(&mon);
                        let c = terms[pos].coeff.clone();
                        self.space.axpy_tail(&mut terms, pos, &c, &q, None, &self.basis[j].terms);
                    }
                    None => pos += 1,
                }
            }
            self.basis[k] = Vector { terms };
        }
    }

    /// Leading monomials grouped by component, minimalized.
    pub fn leading_monomials(&self) -> BTreeMap<u32, Vec<Monomial>> {
        let mut out: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
        for (c, m) in &self.leads {
            out.entry(*c).or_default().push(*m);
        }
        for mons in out.values_mut() {
            *mons = minimalize_monomials(std::mem::take(mons));
        }
        out
    }

    pub fn contains(&self, v: &Vector<F::Elem>) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Minimal generators of the monomial ideal generated by `mons`.
pub(crate) fn minimalize_monomials(mut mons: Vec<Monomial>) -> Vec<Monomial> {
    mons.sort_by_key(|m| m.degree());
    mons.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in mons {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Syzygies of homogeneous columns `cols` (vectors in `space`), where column
/// `j` sits in degree `col_degrees[j]`. Returns a Gröbner basis of the
/// syzygy module as vectors over the column index.
///
/// Works on the augmented vectors `(col_j, e_j)` in position-over-term order
/// with the original components on top: basis elements whose leading term
/// lies in the appended block have zero original part and generate the
/// syzygies.
pub(crate) fn syzygy_basis<F: Field>(
    space: &Space<F>,
    cols: &[Vector<F::Elem>],
    col_degrees: &[i64],
) -> Vec<Vector<F::Elem>> {
    let m = space.rank() as u32;
    let mut shifts = space.shifts.clone();
    shifts.extend_from_slice(col_degrees);
    let aug = Space::new(space.field.clone(), space.order, space.weight, shifts);
    let one = space.field.one();
    let mut gb = Groebner::new(aug);
    for (j, c) in cols.iter().enumerate() {
        let mut terms = c.terms.clone();
        terms.push(Term { comp: m + j as u32, mon: Monomial::one(), coeff: one.clone() });
        gb.add_generator(Vector { terms });
    }
    gb.complete(None);
    gb.basis
        .into_iter()
        .filter(|v| v.lead().is_some_and(|t| t.comp >= m))
        .map(|v| Vector {
            terms: v.terms.into_iter().map(|t| Term { comp: t.comp - m, mon: t.mon, coeff: t.coeff }).collect(),
        })
        .collect()
}

/// A minimal homogeneous generating subset of the submodule generated by
/// `gens` (graded Nakayama): generators are scanned by degree and kept only
/// when not already in the span of the kept ones.
pub(crate) fn minimal_generators<F: Field>(space: &Space<F>, gens: Vec<Vector<F::Elem>>) -> Vec<Vector<F::Elem>> {
    let mut gens: Vec<(i64, usize, Vector<F::Elem>)> =
        gens.into_iter().enumerate().filter_map(|(i, v)| space.degree(&v).map(|d| (d, i, v))).collect();
    gens.sort_by_key(|(d, i, _)| (*d, *i));
    let mut gb = Groebner::new(space.clone());
    let mut kept = Vec::new();
    for (d, _, v) in gens {
        gb.complete(Some(d));
        let nf = gb.reduce(&v);
        if !nf.is_zero() {
            gb.add_generator(v.clone());
            kept.push(v);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rational, RationalField};

    fn qspace(rank: usize) -> Space<RationalField> {
        Space::new(RationalField, MonomialOrder::DegRevLex, 1, vec![0; rank])
    }

    fn poly(terms: &[(&[u32], i64)]) -> Vector<Rational> {
        qspace(1).from_terms(
            terms
                .iter()
                .map(|(e, c)| Term { comp: 0, mon: Monomial::from_exponents(e), coeff: Rational::from_int(*c) })
                .collect(),
        )
    }

    #[test]
    fn ideal_of_twisted_cubic_has_three_quadrics() {
        // x z - y^2, x w - y z, y w - z^2 in k[x, y, z, w]
        let gens = vec![
            poly(&[(&[1, 0, 1, 0], 1), (&[0, 2, 0, 0], -1)]),
            poly(&[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)]),
            poly(&[(&[0, 1, 0, 1], 1), (&[0, 0, 2, 0], -1)]),
        ];
        let gb = Groebner::from_generators(qspace(1), gens.clone());
        for g in &gens {
            assert!(gb.contains(g));
        }
        assert!(!gb.contains(&poly(&[(&[1, 0, 0, 0], 1)])));
        let syz = syzygy_basis(&qspace(1), &gens, &[2, 2, 2]);
        let min = minimal_generators(&Space::new(RationalField, MonomialOrder::DegRevLex, 1, vec![2, 2, 2]), syz);
        assert_eq!(min.len(), 2);
    }

    #[test]
    fn koszul_syzygies_of_variables() {
        let f = PrimeField::new(2).unwrap();
        let space = Space::new(f, MonomialOrder::DegRevLex, 1, vec![0]);
        let gens: Vec<_> =
            (0..3).map(|i| Vector { terms: vec![Term { comp: 0, mon: Monomial::var(i), coeff: 1u64 }] }).collect();
        let syz = syzygy_basis(&space, &gens, &[1, 1, 1]);
        let min = minimal_generators(&Space::new(f, MonomialOrder::DegRevLex, 1, vec![1, 1, 1]), syz);
        assert_eq!(min.len(), 3);
    }
}
