use std::collections::HashMap;
use std::sync::OnceLock;

use indexmap::IndexMap;
use thiserror::Error;

use crate::logic::{parse_formula, Formula};

pub const METAVARIABLES: [&str; 3] = ["phi", "psi", "chi"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItemKind {
    Axiom,
    Rule,
    /// Derived; justified by a shipped derivation file.
    Lemma,
}

/// One premises-to-conclusion shape. A biconditional premise contributes
/// both of its implications to `premises`; a biconditional conclusion lists
/// both, and a step may assert either.
#[derive(Clone, Debug)]
pub struct Variant {
    pub premises: Vec<Formula>,
    pub conclusions: Vec<Formula>,
}

#[derive(Clone, Debug)]
pub struct Item {
    pub id: &'static str,
    pub kind: ItemKind,
    /// `R14` has a forward and a converse shape; everything else has one.
    pub variants: Vec<Variant>,
}

impl Item {
    /// Metavariables occurring anywhere in the item, in canonical order.
    pub fn metavariables(&self) -> Vec<&'static str> {
        let mut used = Vec::new();
        for v in &self.variants {
            for f in v.premises.iter().chain(&v.conclusions) {
                for a in f.atoms() {
                    if let Some(m) = METAVARIABLES.iter().find(|m| ***m == *a) {
                        if !used.contains(m) {
                            used.push(*m);
                        }
                    }
                }
            }
        }
        used.sort_by_key(|m| METAVARIABLES.iter().position(|x| x == m));
        used
    }
}

type Shape = (&'static [&'static str], &'static [&'static str]);

const TABLE: &[(&str, ItemKind, &[Shape])] = &[
    ("A1", ItemKind::Axiom, &[(&[], &["phi -> phi"])]),
    ("A2", ItemKind::Axiom, &[(&[], &["phi -> ~~phi", "~~phi -> phi"])]),
    ("A3", ItemKind::Axiom, &[(&[], &["phi -> T"])]),
    ("A4", ItemKind::Axiom, &[(&[], &["phi & psi -> phi"])]),
    ("A5", ItemKind::Axiom, &[(&[], &["phi & psi -> psi"])]),
    ("R1a", ItemKind::Rule, &[(&["phi"], &["T -> phi"])]),
    ("R1b", ItemKind::Rule, &[(&["T -> phi"], &["phi"])]),
    (
        "R2",
        ItemKind::Rule,
        &[(&["phi -> psi", "psi -> chi"], &["phi -> chi"])],
    ),
    ("R3", ItemKind::Rule, &[(&["phi -> psi"], &["~psi -> ~phi"])]),
    (
        "R4",
        ItemKind::Rule,
        &[(
            &["phi -> psi"],
            &["(~phi -> psi) -> (~psi -> phi)", "(~psi -> phi) -> (~phi -> psi)"],
        )],
    ),
    ("R5", ItemKind::Rule, &[(&["phi -> psi"], &["phi -> (~phi -> psi)"])]),
    (
        "R6",
        ItemKind::Rule,
        &[(&["phi -> psi"], &["(chi &. phi) -> (chi &. psi)"])],
    ),
    (
        "R7",
        ItemKind::Rule,
        &[(
            &["phi -> psi", "psi -> phi"],
            &["(phi &. chi) -> (psi &. chi)", "(psi &. chi) -> (phi &. chi)"],
        )],
    ),
    (
        "R8",
        ItemKind::Rule,
        &[(&["phi -> psi", "phi -> chi"], &["phi -> (psi & chi)"])],
    ),
    (
        "R9",
        ItemKind::Rule,
        &[(
            &["phi -> ~psi", "phi -> ~chi", "(~phi -> psi) -> ~chi"],
            &["(~phi -> chi) -> ~psi"],
        )],
    ),
    (
        "R10",
        ItemKind::Rule,
        &[(
            &["~psi -> chi", "~phi -> (psi &. chi)"],
            &[
                "(phi &. (psi &. chi)) -> ((phi &. psi) &. chi)",
                "((phi &. psi) &. chi) -> (phi &. (psi &. chi))",
            ],
        )],
    ),
    (
        "A6",
        ItemKind::Lemma,
        &[(&[], &["phi -> (phi &. T)", "(phi &. T) -> phi"])],
    ),
    ("R11a", ItemKind::Lemma, &[(&["phi"], &["phi -> T", "T -> phi"])]),
    ("R11b", ItemKind::Lemma, &[(&["phi -> T", "T -> phi"], &["phi"])]),
    ("R12", ItemKind::Lemma, &[(&["phi", "phi -> psi"], &["psi"])]),
    ("R13", ItemKind::Lemma, &[(&["phi"], &["psi -> phi"])]),
    (
        "R14",
        ItemKind::Lemma,
        &[
            (&["phi -> psi"], &["phi -> (phi & psi)"]),
            (&["phi -> (phi & psi)"], &["phi -> psi"]),
        ],
    ),
];

pub const AXIOM_IDS: [&str; 5] = ["A1", "A2", "A3", "A4", "A5"];
pub const RULE_IDS: [&str; 11] = ["R1a", "R1b", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10"];
pub const LEMMA_IDS: [&str; 6] = ["A6", "R11a", "R11b", "R12", "R13", "R14"];

fn items() -> &'static HashMap<&'static str, Item> {
    static ITEMS: OnceLock<HashMap<&'static str, Item>> = OnceLock::new();
    ITEMS.get_or_init(|| {
        let parse = |s: &&str| parse_formula(s).expect("built-in templates parse");
        TABLE
            .iter()
            .map(|&(id, kind, shapes)| {
                let variants = shapes
                    .iter()
                    .map(|(p, c)| Variant {
                        premises: p.iter().map(parse).collect(),
                        conclusions: c.iter().map(parse).collect(),
                    })
                    .collect();
                (id, Item { id, kind, variants })
            })
            .collect()
    })
}

pub fn item(id: &str) -> Option<&'static Item> {
    items().get(id)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("unknown axiom, rule or lemma {0:?}")]
    UnknownRule(String),
    #[error("substitution gives no value for {0:?}")]
    MissingMetavariable(String),
    #[error("{0:?} is not a metavariable of this item")]
    UnexpectedMetavariable(String),
}

pub type Substitution = IndexMap<String, Formula>;

pub(crate) fn check_substitution(item: &Item, subst: &Substitution) -> Result<(), SchemaError> {
    let wanted = item.metavariables();
    for m in &wanted {
        if !subst.contains_key(*m) {
            return Err(SchemaError::MissingMetavariable(m.to_string()));
        }
    }
    if let Some(extra) = subst.keys().find(|k| !wanted.contains(&k.as_str())) {
        return Err(SchemaError::UnexpectedMetavariable(extra.clone()));
    }
    Ok(())
}

pub(crate) fn apply(f: &Formula, subst: &Substitution) -> Formula {
    let map: HashMap<String, Formula> = subst.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    f.substitute(&map)
}

/// Formulas asserted by an axiom schema (two for `A2`), or by the premise-free
/// lemma `A6`, under `subst`.
pub fn instantiate_schema(id: &str, subst: &Substitution) -> Result<Vec<Formula>, SchemaError> {
    let it = item(id).ok_or_else(|| SchemaError::UnknownRule(id.to_string()))?;
    check_substitution(it, subst)?;
    let v = &it.variants[0];
    if !v.premises.is_empty() {
        return Err(SchemaError::UnknownRule(format!(
            "{id} has premises; it is not a schema"
        )));
    }
    Ok(v.conclusions.iter().map(|c| apply(c, subst)).collect())
}
