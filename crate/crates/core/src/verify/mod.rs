//! Verdicts on engine output: decomposition matching, module
//! classification, the degree-one obstruction, the intersection form and
//! the suite runner that assembles them into reports.

pub mod checks;
pub mod decomposition;
pub mod intersection;
pub mod obstruction;
pub mod report;
pub mod suite;

pub use checks::{
    classify_module, cross_engine_consistency, cross_engine_consistency_cached, match_decomposition,
    verify_explicit_map, verify_kernel_generator, Computed, ExplicitMap, ReportCache,
};
pub use decomposition::{DecompositionSpec, ModuleClass, Summand};
pub use intersection::{intersection_form, FiltrationModel, IntersectionForm};
pub use obstruction::{obstruction_from_presentation, realizability_obstruction, ObstructionReport};
pub use report::{Check, VerificationReport};
pub use suite::{
    default_degree_bound, default_suite, run_suite, verify_doubling, verify_intersection_form, verify_koszul,
    verify_mutant, verify_obstruction, verify_poincare, EngineChoice, SuiteItem, VerifyOptions,
};
