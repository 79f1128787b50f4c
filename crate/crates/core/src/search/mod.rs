//! Canonical algebras, exhaustive enumeration up to isomorphism, and
//! countermodel search.

mod canonical;
mod countermodel;
mod enumerate;
mod library;

pub use canonical::{canonical_relabeling, iso_canonical, order_canonical, relabel_weak, CanonicalForm};
pub use countermodel::{find_countermodel, Countermodel, CountermodelTask};
pub use enumerate::{
    enumerate, EnumError, Enumerated, Enumeration, EnumerationTask, TargetClass, MAX_LEA_SIZE, MAX_WEAK_SIZE,
};
pub use library::{
    boolean, canonical_library, diamond, fig1a, fig1b, library_entry, mo, mv_chain, Expected, LibraryEntry,
};
