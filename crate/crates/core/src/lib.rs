//! Exact algebra for graded modules over weighted polynomial rings, two
//! independent cohomology engines, builders for Koszul-type complexes and
//! verifiers that check computed cohomology against expected decompositions.

pub mod builders;
pub mod coeff;
pub mod complex;
pub mod engine;
pub mod error;
pub mod graded;
pub mod hilbert;
pub mod poly;
pub mod presentation;
pub mod ring;
pub mod verify;

pub use builders::{
    doubling_complex, expected_cohomology, koszul_complex, mutant_complex, Doubling, MutantSpec, PoincarePolynomial,
    Space, Variant,
};
pub use coeff::{CoefficientRing, Field, PrimeField, Rational, RationalField};
pub use complex::{build_complex, CochainComplex, ComplexChecks};
pub use engine::degreewise::{degreewise_report, DegreewiseReport};
pub use engine::smith::{smith_normal_form, SmithForm};
pub use engine::symbolic::{
    betti_table, cohomology_presentation, cohomology_presentations, kernel_generators, minimal_presentation,
    rank_of_module, GradedBettiTable,
};
pub use error::{AlgebraError, Result};
pub use graded::{validate_graded_map, GradedFreeModule, GradedMap};
pub use hilbert::{HilbertData, HilbertMode, HilbertSeries};
pub use poly::{Homogeneity, Polynomial};
pub use presentation::{ModulePresentation, PresentationDescriptor, RingDescriptor};
pub use ring::{Monomial, MonomialOrder, PolynomialRing};
pub use verify::{DecompositionSpec, ModuleClass, Summand, VerificationReport};
