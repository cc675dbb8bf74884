//! Constructors for the Koszul, stretched Koszul and doubled complexes, the
//! exterior and group algebras behind them, and their predicted invariants.

pub mod complexes;
pub mod doubling;
pub mod expected;
pub mod exterior;
pub mod group_algebra;
pub mod poincare;

pub use complexes::{koszul_complex, mutant_complex, MutantSpec, Variant};
pub use doubling::{default_doubling_n, doubling_complex, doubling_complex_unchecked, Doubling};
pub use expected::expected_cohomology;
pub use exterior::{contraction, exterior_ranks, ExteriorRange, ExteriorSlice};
pub use group_algebra::{group_algebra_omega, GroupAlgebraElement};
pub use poincare::{connected_sum_poincare, homology_poincare, PoincarePolynomial, Space};
