//! JSON algebra files.
//!
//! ```json
//! {"elements": ["0", "a", "a'", "1"], "zero": "0", "one": "1",
//!  "oplus": [["0", "0", "0"], ["a", "a'", "1"], ...]}
//! ```
//!
//! `oplus` lists the defined entries as `[x, y, x ⊕ y]`; every pair not
//! listed is undefined. A third component of `"undefined"` states an
//! undefined entry explicitly. Listing a pair twice is an error.
//!
//! Weak lattice effect algebras additionally carry `"order"`, a list of
//! `[x, y]` pairs meaning `x ≤ y` (closed reflexively and transitively), and
//! `"involution"`, an object mapping each label to its involute.

use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AlgebraError, Elem, OrderStructure, PartialAlgebra, Presentation, WeakLea};

pub const UNDEFINED: &str = "undefined";

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<IndexMap<String, String>>,
    pub oplus: Vec<[String; 3]>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FileError> {
        Self::from_json(&read_file(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files always serialize")
    }

    pub fn to_presentation(&self) -> Result<Presentation, FileError> {
        let labels = Labels::new(&self.elements)?;
        let zero = labels.get(&self.zero)?;
        let one = labels.get(&self.one)?;
        let table = labels.partial_table(&self.oplus)?;
        let algebra = PartialAlgebra::new(self.elements.clone(), zero, one, table)?;
        let order = match &self.order {
            None => None,
            Some(pairs) => Some(labels.order(pairs)?.leq_table().to_vec()),
        };
        let involution = match &self.involution {
            None => None,
            Some(map) => Some(labels.unary("involution", map)?),
        };
        Ok(Presentation {
            algebra,
            order,
            involution,
        })
    }

    pub fn from_algebra(alg: &PartialAlgebra) -> Self {
        AlgebraFile {
            elements: alg.labels().to_vec(),
            zero: alg.label(alg.zero()).to_string(),
            one: alg.label(alg.one()).to_string(),
            order: None,
            involution: None,
            oplus: emit_partial(alg.labels(), alg.table()),
        }
    }

    /// Emits the lattice as its covering pairs plus the involution.
    pub fn from_weak(w: &WeakLea) -> Self {
        let mut file = Self::from_algebra(w.algebra());
        file.order = Some(emit_order(w.labels(), w.order()));
        file.involution = w.order().involution().map(|inv| emit_unary(w.labels(), inv));
        file
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Label lookup shared by all table-carrying file formats.
pub(crate) struct Labels<'a> {
    labels: &'a [String],
}

impl<'a> Labels<'a> {
    pub(crate) fn new(labels: &'a [String]) -> Result<Self, FileError> {
        if labels.iter().any(|l| l == UNDEFINED) {
            return Err(FileError::Format(format!(
                "{UNDEFINED:?} is reserved and cannot label an element"
            )));
        }
        Ok(Labels { labels })
    }

    pub(crate) fn get(&self, label: &str) -> Result<Elem, FileError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(Elem::new)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()).into())
    }

    pub(crate) fn partial_table(&self, triples: &[[String; 3]]) -> Result<Vec<Option<Elem>>, FileError> {
        let n = self.labels.len();
        let mut seen = vec![false; n * n];
        let mut table = vec![None; n * n];
        for [a, b, c] in triples {
            let (x, y) = (self.get(a)?, self.get(b)?);
            let slot = x.index() * n + y.index();
            if std::mem::replace(&mut seen[slot], true) {
                return Err(AlgebraError::DuplicateEntry(a.clone(), b.clone()).into());
            }
            table[slot] = if c == UNDEFINED { None } else { Some(self.get(c)?) };
        }
        Ok(table)
    }

    /// Every pair must be listed exactly once and may not be undefined.
    pub(crate) fn total_table(&self, name: &str, triples: &[[String; 3]]) -> Result<Vec<Elem>, FileError> {
        let n = self.labels.len();
        let mut seen = vec![false; n * n];
        let mut table = vec![Elem::new(0); n * n];
        for [a, b, c] in triples {
            let (x, y) = (self.get(a)?, self.get(b)?);
            let slot = x.index() * n + y.index();
            if std::mem::replace(&mut seen[slot], true) {
                return Err(AlgebraError::DuplicateEntry(a.clone(), b.clone()).into());
            }
            if c == UNDEFINED {
                return Err(FileError::Format(format!(
                    "{name} is total but ({a}, {b}) is undefined"
                )));
            }
            table[slot] = self.get(c)?;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(FileError::Format(format!(
                "{name} is missing the entry for ({}, {})",
                self.labels[missing / n],
                self.labels[missing % n]
            )));
        }
        Ok(table)
    }

    pub(crate) fn order(&self, pairs: &[[String; 2]]) -> Result<OrderStructure, FileError> {
        let mut resolved = Vec::with_capacity(pairs.len());
        for [a, b] in pairs {
            resolved.push((self.get(a)?, self.get(b)?));
        }
        OrderStructure::from_pairs(self.labels.len(), &resolved).map_err(|v| {
            AlgebraError::NotAPartialOrder {
                kind: v.kind.to_string(),
                witness: v.witness.iter().map(|e| self.labels[e.index()].clone()).collect(),
            }
            .into()
        })
    }

    pub(crate) fn unary(&self, name: &str, map: &IndexMap<String, String>) -> Result<Vec<Elem>, FileError> {
        let n = self.labels.len();
        let mut out = vec![None; n];
        for (a, b) in map {
            let x = self.get(a)?;
            if out[x.index()].replace(self.get(b)?).is_some() {
                return Err(FileError::Format(format!("{name} maps {a:?} twice")));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| FileError::Format(format!("{name} has no entry for {:?}", self.labels[i]))))
            .collect()
    }
}

pub(crate) fn emit_partial(labels: &[String], table: &[Option<Elem>]) -> Vec<[String; 3]> {
    let n = labels.len();
    table
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| [labels[i / n].clone(), labels[i % n].clone(), labels[v.index()].clone()]))
        .collect()
}

pub(crate) fn emit_total(labels: &[String], table: &[Elem]) -> Vec<[String; 3]> {
    let n = labels.len();
    table
        .iter()
        .enumerate()
        .map(|(i, v)| [labels[i / n].clone(), labels[i % n].clone(), labels[v.index()].clone()])
        .collect()
}

pub(crate) fn emit_order(labels: &[String], order: &OrderStructure) -> Vec<[String; 2]> {
    order
        .covers()
        .into_iter()
        .map(|(a, b)| [labels[a.index()].clone(), labels[b.index()].clone()])
        .collect()
}

pub(crate) fn emit_unary(labels: &[String], map: &[Elem]) -> IndexMap<String, String> {
    map.iter()
        .enumerate()
        .map(|(i, v)| (labels[i].clone(), labels[v.index()].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = r#"{"elements":["0","1"],"zero":"0","one":"1",
        "oplus":[["0","0","0"],["0","1","1"],["1","0","1"]]}"#;

    #[test]
    fn parses_minimal_file() {
        let p = AlgebraFile::from_json(TWO).unwrap().to_presentation().unwrap();
        let a = p.algebra;
        assert_eq!(a.size(), 2);
        assert_eq!(a.oplus(a.one(), a.one()), None);
        assert_eq!(a.oplus(a.zero(), a.one()), Some(a.one()));
    }

    #[test]
    fn duplicate_pair_is_rejected() {
        let text = r#"{"elements":["0","1"],"zero":"0","one":"1",
            "oplus":[["0","0","0"],["0","0","undefined"]]}"#;
        let err = AlgebraFile::from_json(text).unwrap().to_presentation().unwrap_err();
        assert!(matches!(err, FileError::Algebra(AlgebraError::DuplicateEntry(..))));
    }

    #[test]
    fn missing_table_is_a_parse_error() {
        let text = r#"{"elements":["0","1"],"zero":"0","one":"1"}"#;
        assert!(matches!(AlgebraFile::from_json(text), Err(FileError::Json(_))));
    }

    #[test]
    fn explicit_undefined_and_unknown_label() {
        let text = r#"{"elements":["0","1"],"zero":"0","one":"1",
            "oplus":[["1","1","undefined"],["0","1","1"]]}"#;
        let p = AlgebraFile::from_json(text).unwrap().to_presentation().unwrap();
        assert_eq!(p.algebra.oplus(Elem::new(1), Elem::new(1)), None);
        let bad = r#"{"elements":["0","1"],"zero":"0","one":"2","oplus":[]}"#;
        let err = AlgebraFile::from_json(bad).unwrap().to_presentation().unwrap_err();
        assert!(matches!(err, FileError::Algebra(AlgebraError::UnknownLabel(_))));
    }

    #[test]
    fn emit_then_parse_is_identity() {
        let p = AlgebraFile::from_json(TWO).unwrap().to_presentation().unwrap();
        let again = AlgebraFile::from_algebra(&p.algebra).to_presentation().unwrap();
        assert_eq!(p, again);
    }
}
