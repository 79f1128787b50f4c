//! Finite lattice effect algebras and the logic they interpret.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`] holds finite partial algebras, their induced order, and the
//!   derived operations (orthosupplement, `⊖`, `⊙`, Sasaki product and arrow).
//! * [`structure`] audits weak lattice effect algebras, CI-lattices, the
//!   residuation profile, partial t-norms and pt-implications, and converts
//!   between lattice effect algebras and CI-lattices.
//! * [`laws`] runs the exhaustive law suites over a lattice effect algebra.
//! * [`logic`] parses, expands and evaluates formulas.
//! * [`kernel`] checks derivations in the Hilbert-style calculus.
//! * [`search`] enumerates small algebras up to isomorphism and looks for
//!   countermodels.
//!
//! Everything is immutable after construction. Heavy loops go through
//! [`par`], which uses rayon when the `parallel` feature is enabled.

pub mod algebra;
pub mod kernel;
pub mod laws;
pub mod logic;
pub mod par;
pub mod report;
pub mod search;
pub mod structure;

pub use algebra::{Elem, Lea, OrderStructure, PartialAlgebra, Presentation, WeakLea};
pub use logic::{Formula, Model};
pub use report::{AuditReport, LawVerdict};
