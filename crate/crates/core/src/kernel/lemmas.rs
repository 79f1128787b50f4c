use serde::Deserialize;

use super::check::{check_derivation, Derivation, Interner};
use super::schema::{apply, item, Substitution};
use crate::logic::Formula;

macro_rules! shipped {
    ($($name:literal => $lemma:literal, $variant:literal;)*) => {
        &[$(ShippedDerivation {
            name: $name,
            lemma: $lemma,
            variant: $variant,
            text: include_str!(concat!("../../data/derivations/", $name, ".json")),
        },)*]
    };
}

/// A derivation file proving one shape of a derived lemma from the base
/// system, with `p`, `q`, `r` standing for `phi`, `psi`, `chi`.
#[derive(Clone, Copy, Debug)]
pub struct ShippedDerivation {
    pub name: &'static str,
    pub lemma: &'static str,
    pub variant: usize,
    pub text: &'static str,
}

pub const SHIPPED: &[ShippedDerivation] = shipped! {
    "A6" => "A6", 0;
    "R11a" => "R11a", 0;
    "R11b" => "R11b", 0;
    "R12" => "R12", 0;
    "R13" => "R13", 0;
    "R14" => "R14", 0;
    "R14-converse" => "R14", 1;
};

impl ShippedDerivation {
    pub fn derivation(&self) -> Derivation {
        Derivation::from_json(self.text).expect("shipped derivations parse")
    }

    /// Whether the file's hypotheses are the lemma's premises and its goals
    /// the lemma's conclusions, under `phi, psi, chi := p, q, r`.
    pub fn proves_its_statement(&self) -> bool {
        let Some(it) = item(self.lemma) else { return false };
        let Some(v) = it.variants.get(self.variant) else {
            return false;
        };
        let subst: Substitution = [("phi", "p"), ("psi", "q"), ("chi", "r")]
            .iter()
            .map(|(m, a)| (m.to_string(), Formula::atom(a)))
            .collect();
        let d = self.derivation();
        let mut interner = Interner::default();
        let mut ids = |fs: &[Formula], subst: Option<&Substitution>| -> Vec<u32> {
            fs.iter()
                .map(|f| match subst {
                    Some(s) => interner.id(&apply(f, s)),
                    None => interner.id(f),
                })
                .collect()
        };
        let premises = ids(&v.premises, Some(&subst));
        let conclusions = ids(&v.conclusions, Some(&subst));
        let hyps = ids(&d.hypotheses, None);
        let goals = ids(&d.goals, None);
        let mut sorted_goals = goals.clone();
        sorted_goals.sort_unstable();
        let mut sorted_conclusions = conclusions.clone();
        sorted_conclusions.sort_unstable();
        hyps == premises && sorted_goals == sorted_conclusions && check_derivation(&d).accepted
    }
}

macro_rules! mutations {
    ($($name:literal,)*) => {
        &[$(($name, include_str!(concat!("../../data/derivations/mutations/", $name))),)*]
    };
}

const MUTATION_FILES: &[(&str, &str)] = mutations![
    "A6-r8-as-r2.json",
    "A6-wrong-context.json",
    "R11a-r1a-as-r1b.json",
    "R11b-wrong-premise.json",
    "R12-swapped-premises.json",
    "R13-r2-as-r3.json",
    "R14-wrong-chi.json",
    "R14-converse-a5-as-a4.json",
];

const MANIFEST: &str = include_str!("../../data/derivations/mutations/manifest.json");

/// A shipped derivation with one step altered, and the step the checker must
/// reject first.
#[derive(Clone, Debug, Deserialize)]
pub struct MutationFixture {
    pub file: String,
    pub base: String,
    pub rejected_at: usize,
    pub mutation: String,
    #[serde(skip)]
    pub text: &'static str,
}

pub fn mutation_fixtures() -> Vec<MutationFixture> {
    let mut out: Vec<MutationFixture> = serde_json::from_str(MANIFEST).expect("manifest parses");
    for m in &mut out {
        m.text = MUTATION_FILES
            .iter()
            .find(|(name, _)| *name == m.file)
            .map(|(_, text)| *text)
            .expect("every manifest entry is shipped");
    }
    out
}
