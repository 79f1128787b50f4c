//! Audits and constructions over weak lattice effect algebras, CI-lattices,
//! partial t-norms and pt-implications.

mod ci;
mod tnorm;
mod weak;

pub use ci::{audit_ci, audit_cw, ci_from_lea, lea_from_ci, CiFile, CiStructure, ConstructionError};
pub use tnorm::{
    audit_partial_tnorm, audit_pt_implication, audit_weak_pt_implication, partial_tnorms, search_pt_implications,
    PtError, PtImplication, PtSearch, MAX_PT_SEARCH,
};
pub use weak::{audit_derived_w, audit_weak_lea, audit_weak_presentation, rd_profile, rd_uniformity, RD_LAWS};
