use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::schema::{apply, check_substitution, item, ItemKind, SchemaError, Substitution};
use crate::algebra::file::read_file;
use crate::algebra::FileError;
use crate::logic::{parse_formula, Formula, Node, ParseError};

/// `{"goal": "...", "hypotheses": [...], "steps": [{"formula": "...", "by":
/// "R2", "premises": [1, 2], "subst": {"phi": "p"}}]}`. Hypotheses are numbered
/// from 1, steps continue after them. `goal` may also be a list.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationFile {
    pub goal: Goal,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hypotheses: Vec<String>,
    pub steps: Vec<StepFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Goal {
    One(String),
    Many(Vec<String>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepFile {
    pub formula: String,
    pub by: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<usize>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub subst: IndexMap<String, String>,
}

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error("{location}: {source}")]
    Formula {
        location: String,
        #[source]
        source: ParseError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom {
        id: String,
        subst: Substitution,
    },
    Rule {
        id: String,
        premises: Vec<usize>,
        subst: Substitution,
    },
    Lemma {
        id: String,
        premises: Vec<usize>,
        subst: Substitution,
    },
    /// Identifier the kernel does not know; rejected when checked.
    Unknown {
        id: String,
        premises: Vec<usize>,
        subst: Substitution,
    },
}

impl Justification {
    pub fn id(&self) -> &str {
        match self {
            Justification::Axiom { id, .. }
            | Justification::Rule { id, .. }
            | Justification::Lemma { id, .. }
            | Justification::Unknown { id, .. } => id,
        }
    }

    fn parts(&self) -> (&[usize], &Substitution) {
        match self {
            Justification::Axiom { subst, .. } => (&[], subst),
            Justification::Rule { premises, subst, .. }
            | Justification::Lemma { premises, subst, .. }
            | Justification::Unknown { premises, subst, .. } => (premises, subst),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    /// Position in the combined numbering (hypotheses first).
    pub index: usize,
    pub assertion: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub goals: Vec<Formula>,
    pub hypotheses: Vec<Formula>,
    pub steps: Vec<DerivationStep>,
}

impl DerivationFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FileError> {
        Self::from_json(&read_file(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_derivation(&self) -> Result<Derivation, DerivationError> {
        let parse = |s: &str, location: String| {
            parse_formula(s).map_err(|source| DerivationError::Formula { location, source })
        };
        let goal_texts: Vec<&String> = match &self.goal {
            Goal::One(g) => vec![g],
            Goal::Many(gs) => gs.iter().collect(),
        };
        let goals = goal_texts
            .iter()
            .enumerate()
            .map(|(i, g)| parse(g, format!("goal {}", i + 1)))
            .collect::<Result<_, _>>()?;
        let hypotheses = self
            .hypotheses
            .iter()
            .enumerate()
            .map(|(i, h)| parse(h, format!("hypothesis {}", i + 1)))
            .collect::<Result<_, _>>()?;
        let h = self.hypotheses.len();
        let mut steps = Vec::new();
        for (k, s) in self.steps.iter().enumerate() {
            let index = h + k + 1;
            let assertion = parse(&s.formula, format!("step {index}"))?;
            let mut subst = Substitution::new();
            for (m, text) in &s.subst {
                subst.insert(m.clone(), parse(text, format!("step {index}, substitution for {m}"))?);
            }
            let id = s.by.clone();
            let premises = s.premises.clone();
            let justification = match item(&id).map(|i| i.kind) {
                Some(ItemKind::Axiom) if premises.is_empty() => Justification::Axiom { id, subst },
                // an axiom cited with premises is checked like a rule and
                // fails on the premise count
                Some(ItemKind::Axiom | ItemKind::Rule) => Justification::Rule { id, premises, subst },
                Some(ItemKind::Lemma) => Justification::Lemma { id, premises, subst },
                _ => Justification::Unknown { id, premises, subst },
            };
            steps.push(DerivationStep {
                index,
                assertion,
                justification,
            });
        }
        Ok(Derivation {
            goals,
            hypotheses,
            steps,
        })
    }
}

impl Derivation {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, DerivationError> {
        DerivationFile::load(path)?.to_derivation()
    }

    pub fn from_json(text: &str) -> Result<Self, DerivationError> {
        DerivationFile::from_json(text)?.to_derivation()
    }

    /// Formula asserted at `index` (hypothesis or step).
    pub fn assertion(&self, index: usize) -> Option<&Formula> {
        let h = self.hypotheses.len();
        match index {
            0 => None,
            i if i <= h => self.hypotheses.get(i - 1),
            i => self.steps.get(i - h - 1).map(|s| &s.assertion),
        }
    }

    /// All atoms in hypotheses, steps and goals, in first-occurrence order.
    pub fn atoms(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let all = self
            .hypotheses
            .iter()
            .chain(self.steps.iter().map(|s| &s.assertion))
            .chain(&self.goals);
        for f in all {
            for a in f.atoms() {
                if !out.iter().any(|x| **x == *a) {
                    out.push(a.to_string());
                }
            }
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("{id} takes {expected} premises, {found} given")]
    PremiseCount { id: String, expected: usize, found: usize },
    #[error("premise {index} must precede the step and exist")]
    BadPremiseIndex { index: usize },
    #[error("premise {index} was rejected")]
    PremiseRejected { index: usize },
    #[error("premise {index} does not assert {pattern}")]
    PremiseNotFound { index: usize, pattern: String },
    #[error("asserted formula is none of {expected:?}")]
    ConclusionMismatch { expected: Vec<String> },
}

/// Hash-consed identities of expanded formulas, so that syntactic equality
/// after expansion is an integer comparison even for formulas whose trees
/// are exponentially large.
#[derive(Default)]
pub(crate) struct Interner {
    nodes: HashMap<(u8, u32, u32), u32>,
    atoms: HashMap<Arc<str>, u32>,
    memo: HashMap<*const Node, u32>,
    keep: Vec<Formula>,
}

impl Interner {
    pub fn id(&mut self, f: &Formula) -> u32 {
        let e = f.expand();
        self.keep.push(e.clone());
        self.core_id(&e)
    }

    fn core_id(&mut self, f: &Formula) -> u32 {
        if let Some(&i) = self.memo.get(&f.key()) {
            return i;
        }
        let key = match f.node() {
            Node::Atom(a) => {
                let next = self.atoms.len() as u32;
                (0, *self.atoms.entry(a.clone()).or_insert(next), 0)
            }
            Node::Bottom => (1, 0, 0),
            Node::Implies(a, b) => (2, self.core_id(a), self.core_id(b)),
            _ => unreachable!("expanded formulas are core"),
        };
        let next = self.nodes.len() as u32;
        let i = *self.nodes.entry(key).or_insert(next);
        self.memo.insert(f.key(), i);
        i
    }
}

/// Checks one step against the formulas asserted so far. `earlier[i]` is the
/// assertion at index `i + 1`, or `None` if that line was rejected.
pub fn check_step(step: &DerivationStep, earlier: &[Option<Formula>]) -> Result<(), StepError> {
    let mut interner = Interner::default();
    check_step_with(step, earlier, &mut interner)
}

pub(crate) fn check_step_with(
    step: &DerivationStep,
    earlier: &[Option<Formula>],
    interner: &mut Interner,
) -> Result<(), StepError> {
    let id = step.justification.id();
    let it = match (&step.justification, item(id)) {
        (Justification::Unknown { .. }, _) | (_, None) => {
            return Err(SchemaError::UnknownRule(id.to_string()).into());
        }
        (_, Some(it)) => it,
    };
    let (premises, subst) = step.justification.parts();
    check_substitution(it, subst)?;
    for &p in premises {
        if p == 0 || p >= step.index || p > earlier.len() {
            return Err(StepError::BadPremiseIndex { index: p });
        }
    }
    let target = interner.id(&step.assertion);
    let mut first_err = None;
    for v in &it.variants {
        match check_variant(v, id, premises, subst, earlier, target, interner) {
            Ok(()) => return Ok(()),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.expect("every item has a variant"))
}

fn check_variant(
    v: &super::schema::Variant,
    id: &str,
    premises: &[usize],
    subst: &Substitution,
    earlier: &[Option<Formula>],
    target: u32,
    interner: &mut Interner,
) -> Result<(), StepError> {
    if v.premises.len() != premises.len() {
        return Err(StepError::PremiseCount {
            id: id.to_string(),
            expected: v.premises.len(),
            found: premises.len(),
        });
    }
    for (pattern, &index) in v.premises.iter().zip(premises) {
        let Some(asserted) = &earlier[index - 1] else {
            return Err(StepError::PremiseRejected { index });
        };
        let want = apply(pattern, subst);
        if interner.id(asserted) != interner.id(&want) {
            return Err(StepError::PremiseNotFound {
                index,
                pattern: want.to_string(),
            });
        }
    }
    let conclusions: Vec<Formula> = v.conclusions.iter().map(|c| apply(c, subst)).collect();
    if conclusions.iter().any(|c| interner.id(c) == target) {
        Ok(())
    } else {
        Err(StepError::ConclusionMismatch {
            expected: conclusions.iter().map(|c| c.to_string()).collect(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepVerdict {
    pub index: usize,
    pub formula: String,
    pub by: String,
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationReport {
    pub accepted: bool,
    /// `theorem` when there are no hypotheses; otherwise the derivation only
    /// shows that its goal follows from the hypotheses, i.e. a derived rule.
    pub certifies: &'static str,
    pub hypotheses: Vec<String>,
    pub steps: Vec<StepVerdict>,
    pub goals: Vec<GoalVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_rejected: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoalVerdict {
    pub goal: String,
    /// Index of a step asserting the goal.
    pub asserted_at: Option<usize>,
}

impl DerivationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Checks every step in order. Rejected steps assert nothing, so later steps
/// citing them fail too; `first_rejected` points at the root cause.
pub fn check_derivation(d: &Derivation) -> DerivationReport {
    let mut interner = Interner::default();
    let mut earlier: Vec<Option<Formula>> = d.hypotheses.iter().cloned().map(Some).collect();
    let mut steps = Vec::new();
    for step in &d.steps {
        let res = check_step_with(step, &earlier, &mut interner);
        steps.push(StepVerdict {
            index: step.index,
            formula: step.assertion.to_string(),
            by: step.justification.id().to_string(),
            accepted: res.is_ok(),
            error: res.as_ref().err().map(|e| e.to_string()),
        });
        earlier.push(res.is_ok().then(|| step.assertion.clone()));
    }
    let goals: Vec<GoalVerdict> = d
        .goals
        .iter()
        .map(|g| {
            let want = interner.id(g);
            let asserted_at = d
                .steps
                .iter()
                .zip(&steps)
                .filter(|(_, v)| v.accepted)
                .find(|(s, _)| interner.id(&s.assertion) == want)
                .map(|(s, _)| s.index);
            GoalVerdict {
                goal: g.to_string(),
                asserted_at,
            }
        })
        .collect();
    let first_rejected = steps.iter().find(|s| !s.accepted).map(|s| s.index);
    let accepted = first_rejected.is_none() && goals.iter().all(|g| g.asserted_at.is_some()) && !d.goals.is_empty();
    DerivationReport {
        accepted,
        certifies: if d.hypotheses.is_empty() {
            "theorem"
        } else {
            "derived rule"
        },
        hypotheses: d.hypotheses.iter().map(|h| h.to_string()).collect(),
        steps,
        goals,
        first_rejected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn derivation(json: &str) -> Derivation {
        Derivation::from_json(json).unwrap()
    }

    #[test]
    fn transitivity_with_a_shared_middle() {
        let d = derivation(
            r#"{"goal": "p -> r", "hypotheses": ["p -> q", "q -> r"],
                "steps": [{"formula": "p -> r", "by": "R2", "premises": [1, 2],
                           "subst": {"phi": "p", "psi": "q", "chi": "r"}}]}"#,
        );
        let r = check_derivation(&d);
        assert!(r.accepted, "{}", r.to_json());
        assert_eq!(r.certifies, "derived rule");
    }

    #[test]
    fn transitivity_without_a_shared_middle() {
        let d = derivation(
            r#"{"goal": "p -> s", "hypotheses": ["p -> q", "r -> s"],
                "steps": [{"formula": "p -> s", "by": "R2", "premises": [1, 2],
                           "subst": {"phi": "p", "psi": "q", "chi": "s"}}]}"#,
        );
        let step = &d.steps[0];
        let earlier: Vec<Option<Formula>> = d.hypotheses.iter().cloned().map(Some).collect();
        assert!(matches!(
            check_step(step, &earlier),
            Err(StepError::PremiseNotFound { index: 2, .. })
        ));
        assert_eq!(check_derivation(&d).first_rejected, Some(3));
    }

    #[test]
    fn matching_is_after_expansion() {
        // p & p is p &. (p -> p) by definition
        let d = derivation(
            r#"{"goal": "(p &. (p -> p)) -> p",
                "steps": [{"formula": "(p &. (p -> p)) -> p", "by": "A4", "subst": {"phi": "p", "psi": "p"}}]}"#,
        );
        assert!(check_derivation(&d).accepted);
        assert_eq!(check_derivation(&d).certifies, "theorem");
    }

    #[test]
    fn unknown_rules_and_bad_indices() {
        let d = derivation(
            r#"{"goal": "p", "hypotheses": ["p"],
                "steps": [{"formula": "p", "by": "MP", "premises": [1]},
                          {"formula": "T -> p", "by": "R1a", "premises": [5], "subst": {"phi": "p"}}]}"#,
        );
        let r = check_derivation(&d);
        assert!(!r.accepted);
        assert!(r.steps[0].error.as_ref().unwrap().contains("unknown"));
        assert!(r.steps[1].error.as_ref().unwrap().contains("precede"));
    }

    #[test]
    fn both_directions_of_a_biconditional_are_assertable() {
        for f in ["p -> ~~p", "~~p -> p"] {
            let json =
                format!(r#"{{"goal": "{f}", "steps": [{{"formula": "{f}", "by": "A2", "subst": {{"phi": "p"}}}}]}}"#);
            assert!(check_derivation(&derivation(&json)).accepted, "{f}");
        }
    }

    #[test]
    fn goal_must_be_asserted() {
        let d =
            derivation(r#"{"goal": "q -> q", "steps": [{"formula": "p -> p", "by": "A1", "subst": {"phi": "p"}}]}"#);
        let r = check_derivation(&d);
        assert!(!r.accepted);
        assert_eq!(r.first_rejected, None);
        assert_eq!(r.goals[0].asserted_at, None);
    }

    #[test]
    fn unknown_file_fields_are_rejected() {
        assert!(DerivationFile::from_json(r#"{"goal": "p", "steps": [], "extra": 1}"#).is_err());
    }
}
