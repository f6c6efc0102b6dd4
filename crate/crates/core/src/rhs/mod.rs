//! States, kets and functionals on the rigged Hilbert space, and the
//! demonstrations of where the ket relations break.
//!
//! A state is its in-representation `a(E) = ⟨E⁺|φ⟩` on `E > 0` plus a model;
//! the out-representation is `b = S(E + i0) a`. Hardy-class extensions carried
//! alongside a representation certify membership in Φ⁺ (lower class, for `a`)
//! or Φ⁻ (upper class, for `b`).

mod decomposition;
mod kets;
pub mod reference;
mod state;

pub use decomposition::{
    decomposition_dependence_demo, decomposition_seminorm, infimum_seminorm, pair_free,
    DecomposedVector, DemoReport,
};
pub use kets::{
    completeness_check, delta_star, delta_star_pullback_equivalence, intersection_relation_check,
    pair, s_independence_pathology, sandwich_overlap, KetFunctional, PathologyReport,
    SandwichReport,
};
pub use state::{Membership, StateVector, INTERSECTION_LIMIT};
