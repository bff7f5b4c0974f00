//! Finite-category engine for relative monads.
//!
//! Everything here is desk-scale: categories are given by explicit hom-sets
//! and composition tables, functors by explicit object and arrow tables, and
//! every law is decided by exhaustive (or seeded, sampled) enumeration. The
//! crate is organised bottom-up:
//!
//! * [`finset`] — skeletal finite sets `{0, …, n-1}` and function tables;
//! * [`fincat`] — deep finite categories, functors, natural transformations;
//! * [`kan`] — left Kan extensions along a functor `J`, computed as coends
//!   by a union-find quotient, plus the skew-monoidal structure maps they
//!   induce and their coherence laws;
//! * [`relmon`] — relative monads on `J`, their laws, morphisms, the
//!   correspondence with skew monoids, restriction of ordinary monads and
//!   extension back;
//! * [`kleisli_em`] — Kleisli and Eilenberg-Moore constructions, splittings,
//!   and the comparison functors between the restricted/extended worlds;
//! * [`instances`] — concrete relative monads (vectors over a semiring,
//!   untyped λ-terms, state, continuations, powerset/multiset);
//! * [`arrows`] — Hughes arrows on a finite base and the equivalence with
//!   relative monads on the Yoneda embedding.
//!
//! Law checkers never panic on a failing law: violations are returned as
//! [`report::Check`] values carrying a printable witness.

pub mod budget;
pub mod error;
pub mod report;

pub mod finset;
pub mod unionfind;

pub mod fincat;

pub mod kan;

pub mod relmon;

pub mod kleisli_em;

pub mod instances;

pub mod arrows;

pub use budget::Budget;
pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
