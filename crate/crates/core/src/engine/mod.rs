//! Cohomology and module-structure engines.
//!
//! [`degreewise`] is the linear-algebra oracle: it slices a complex at each
//! total degree and works over a field or over the integers. [`symbolic`]
//! works with Gröbner bases of submodules and answers structural questions
//! (kernels, minimal presentations, Betti tables, freeness) over fields.

pub mod degreewise;
pub(crate) mod groebner;
pub mod linalg;
mod monomial_ideal;
pub mod smith;
pub mod symbolic;

use crate::coeff::{Field, Rational};
use crate::error::Result;
use crate::graded::{GradedFreeModule, GradedMap};
use crate::poly::Polynomial;
use crate::ring::PolynomialRing;
use groebner::{Space, Term, Vector};

/// Runs `$body` with `$f` bound to the field engine matching the ring's
/// coefficients; integer rings are rejected.
macro_rules! with_field {
    ($ring:expr, |$f:ident| $body:expr) => {{
        match $ring.coefficients {
            $crate::coeff::CoefficientRing::Rationals => {
                let $f = $crate::coeff::RationalField;
                $body
            }
            $crate::coeff::CoefficientRing::PrimeField(p) => {
                let $f = $crate::coeff::PrimeField::new(p)?;
                $body
            }
            $crate::coeff::CoefficientRing::Integers => {
                return Err($crate::error::AlgebraError::NotAField($ring.coefficients.label()))
            }
        }
    }};
}
pub(crate) use with_field;

/// Ambient space for the free module `m`, with every shift lowered by
/// `offset` (used to view the target of a degree-`offset` map so that its
/// columns become degree-zero elements).
pub(crate) fn space_of<F: Field>(field: &F, m: &GradedFreeModule, offset: i64) -> Space<F> {
    Space::new(field.clone(), m.ring.order, m.ring.weight(), m.shifts.iter().map(|s| s - offset).collect())
}

pub(crate) fn to_vector<F: Field>(space: &Space<F>, column: &[Polynomial]) -> Vector<F::Elem> {
    let f = &space.field;
    let terms = column
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.terms().iter().map(move |(m, c)| Term { comp: i as u32, mon: *m, coeff: f.from_rational(c) })
        })
        .collect();
    space.from_terms(terms)
}

pub(crate) fn columns_of<F: Field>(space: &Space<F>, map: &GradedMap) -> Vec<Vector<F::Elem>> {
    (0..map.cols()).map(|j| to_vector(space, &map.column(j))).collect()
}

pub(crate) fn to_column<F: Field>(
    field: &F,
    ring: PolynomialRing,
    rank: usize,
    v: &Vector<F::Elem>,
) -> Vec<Polynomial> {
    let mut per: Vec<Vec<(crate::ring::Monomial, Rational)>> = vec![Vec::new(); rank];
    for t in &v.terms {
        per[t.comp as usize].push((t.mon, field.to_rational(&t.coeff)));
    }
    per.into_iter().map(|terms| Polynomial::from_sorted_terms_unchecked(ring, terms)).collect()
}

/// Assembles a degree-`map_degree` map from column vectors.
pub(crate) fn map_from_columns<F: Field>(
    field: &F,
    source: GradedFreeModule,
    target: GradedFreeModule,
    cols: &[Vector<F::Elem>],
    map_degree: i64,
) -> Result<GradedMap> {
    let ring = target.ring;
    let cols: Vec<Vec<Polynomial>> = cols.iter().map(|v| to_column(field, ring, target.rank(), v)).collect();
    let rows = (0..target.rank()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    GradedMap::new(source, target, rows, map_degree)
}
