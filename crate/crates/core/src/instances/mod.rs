//! Concrete relative monads used throughout the test suites.
//!
//! * [`semiring`] — scalar semirings (booleans, integers, `ℤ/m`, bounded
//!   tropical, exact naturals, saturating naturals) and their law suites;
//! * [`vec`] — vectors over a semiring, the powerset and multiset
//!   specializations, and the matrix-product comparison;
//! * [`semimodule`] — the bridge between semimodules and vector algebras;
//! * [`lam`] — well-scoped untyped λ-terms, substitution, β-reduction;
//! * [`state_cont`] — the state and continuation restrictions and the state
//!   Kleisli isomorphism.

pub mod lam;
pub mod semimodule;
pub mod semiring;
pub mod state_cont;
pub mod vec;

pub use lam::{
    beta_step, enumerate_terms, lam_relmonad, lam_rename, lam_subst, normalize, parse_term,
    NormalizeOutcome, Subst, Term,
};
pub use semimodule::{
    em_to_module, module_check, module_em_roundtrip, module_to_em, SemimoduleTable,
};
pub use semiring::{
    semiring_check, semiring_check_sampled, Booleans, Integers, NatCap, Naturals, Semiring, Trop,
    Tropical, ZMod,
};
pub use state_cont::{
    cont_check, cont_relmonad, state_kleisli_iso, state_monad, state_relmonad, StateKleisliIso,
};
pub use vec::{
    kleisli_of_matrix, mat_apply, mat_mul, matrix_of_kleisli, multiset_instance,
    multiset_relmonad_capped, powerset_relmonad, vec_kleisli_vs_product, vec_laws_sampled,
    vec_rank, vec_relmonad, vec_unrank, Matrix, VecInstance,
};
