//! Checker for the Hilbert-style calculus: axiom schemata A1-A5, rules
//! R1-R10 (R1 split into R1a and R1b), derived lemmas with shipped
//! derivations, and semantic audits against finite models.

mod check;
mod lemmas;
mod schema;
mod soundness;

pub use check::{
    check_derivation, check_step, Derivation, DerivationError, DerivationFile, DerivationReport, DerivationStep, Goal,
    GoalVerdict, Justification, StepError, StepFile, StepVerdict,
};
pub use lemmas::{mutation_fixtures, MutationFixture, ShippedDerivation, SHIPPED};
pub use schema::{
    instantiate_schema, item, Item, ItemKind, SchemaError, Substitution, Variant, AXIOM_IDS, LEMMA_IDS, METAVARIABLES,
    RULE_IDS,
};
pub use soundness::{
    derived_rule_audit, harness_instance, item_harness, rule_harness, soundness_audit, Corpus, CorpusModel,
    HarnessConfig, HarnessReport, HarnessViolation, InvalidLine, SoundnessError, SoundnessReport, MAX_AUDIT_ATOMS,
};
