use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Formula, Node};
use crate::algebra::file::read_file;
use crate::algebra::{AlgebraError, AlgebraFile, Elem, FileError, Lea};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("atom {0:?} has no value")]
    UnboundAtom(String),
    #[error("unknown element {0:?} in valuation")]
    UnknownElement(String),
}

/// A lattice effect algebra with values for atoms.
#[derive(Clone, Debug)]
pub struct Model {
    lea: Arc<Lea>,
    valuation: IndexMap<String, Elem>,
}

impl Model {
    pub fn new(lea: Arc<Lea>, valuation: IndexMap<String, Elem>) -> Self {
        Model { lea, valuation }
    }

    /// Valuation given by element labels.
    pub fn from_labels<'a>(
        lea: Arc<Lea>,
        valuation: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, EvalError> {
        let mut map = IndexMap::new();
        for (atom, label) in valuation {
            let e = lea
                .elem(label)
                .ok_or_else(|| EvalError::UnknownElement(label.to_string()))?;
            map.insert(atom.to_string(), e);
        }
        Ok(Model::new(lea, map))
    }

    pub fn lea(&self) -> &Lea {
        &self.lea
    }

    pub fn lea_arc(&self) -> &Arc<Lea> {
        &self.lea
    }

    pub fn valuation(&self) -> &IndexMap<String, Elem> {
        &self.valuation
    }

    /// Valuation rendered with element labels.
    pub fn valuation_labels(&self) -> IndexMap<String, String> {
        self.valuation
            .iter()
            .map(|(k, &v)| (k.clone(), self.lea.label(v).to_string()))
            .collect()
    }

    /// Value of `f`. Defined connectives are evaluated by their own clauses
    /// (`V(φ ∧· ψ) = V(φ) ⊗ V(ψ)` and so on), which agree with evaluating
    /// the expansion. Shared subterms are evaluated once.
    pub fn eval(&self, f: &Formula) -> Result<Elem, EvalError> {
        let mut memo = HashMap::new();
        self.eval_memo(f, &mut memo)
    }

    pub fn is_valid(&self, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.eval(f)? == self.lea.one())
    }

    fn eval_memo(&self, f: &Formula, memo: &mut HashMap<*const Node, Elem>) -> Result<Elem, EvalError> {
        if let Some(&v) = memo.get(&f.key()) {
            return Ok(v);
        }
        let l = &*self.lea;
        let v = match f.node() {
            Node::Atom(p) => *self
                .valuation
                .get(&**p)
                .ok_or_else(|| EvalError::UnboundAtom(p.to_string()))?,
            Node::Bottom => l.zero(),
            Node::Top => l.one(),
            Node::Neg(a) => l.sasaki_arrow(self.eval_memo(a, memo)?, l.zero()),
            Node::Implies(a, b) => l.sasaki_arrow(self.eval_memo(a, memo)?, self.eval_memo(b, memo)?),
            Node::SConj(a, b) => l.sasaki_product(self.eval_memo(a, memo)?, self.eval_memo(b, memo)?),
            Node::SDisj(a, b) => {
                let (x, y) = (self.eval_memo(a, memo)?, self.eval_memo(b, memo)?);
                l.comp(l.sasaki_product(l.comp(x), l.comp(y)))
            }
            Node::Meet(a, b) => {
                let (x, y) = (self.eval_memo(a, memo)?, self.eval_memo(b, memo)?);
                l.sasaki_product(x, l.sasaki_arrow(x, y))
            }
            Node::Join(a, b) => {
                let (x, y) = (l.comp(self.eval_memo(a, memo)?), l.comp(self.eval_memo(b, memo)?));
                l.comp(l.sasaki_product(x, l.sasaki_arrow(x, y)))
            }
        };
        memo.insert(f.key(), v);
        Ok(v)
    }
}

/// `{"algebra": <algebra file or library name>, "valuation": {"p": "2/3"}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub algebra: AlgebraSource,
    pub valuation: IndexMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    Named(String),
    Inline(AlgebraFile),
}

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("no library algebra named {0:?}")]
    UnknownName(String),
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FileError> {
        Self::from_json(&read_file(path.as_ref())?)
    }

    /// Builds the model; named algebras come from the canonical library.
    pub fn to_model(&self) -> Result<Model, ModelFileError> {
        let lea = match &self.algebra {
            AlgebraSource::Named(name) => {
                let entry =
                    crate::search::library_entry(name).ok_or_else(|| ModelFileError::UnknownName(name.clone()))?;
                let p = entry.presentation;
                Lea::new(p.algebra)?
            }
            AlgebraSource::Inline(file) => Lea::new(file.to_presentation()?.algebra)?,
        };
        let lea = Arc::new(lea);
        Ok(Model::from_labels(
            lea,
            self.valuation.iter().map(|(k, v)| (k.as_str(), v.as_str())),
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PartialAlgebra;
    use crate::logic::parse_formula;

    fn thirds() -> Arc<Lea> {
        let labels = ["0", "1/3", "2/3", "1"].map(String::from).to_vec();
        let alg = PartialAlgebra::from_fn(labels, Elem::new(0), Elem::new(3), |a, b| {
            (a.index() + b.index() <= 3).then(|| Elem::new(a.index() + b.index()))
        })
        .unwrap();
        Arc::new(Lea::new(alg).unwrap())
    }

    fn model() -> Model {
        Model::from_labels(thirds(), [("p", "2/3"), ("q", "1/3")]).unwrap()
    }

    fn val(m: &Model, s: &str) -> String {
        m.lea().label(m.eval(&parse_formula(s).unwrap()).unwrap()).to_string()
    }

    #[test]
    fn arrow_on_the_chain() {
        assert_eq!(val(&model(), "p -> q"), "2/3");
        assert_eq!(val(&model(), "p & q"), "1/3");
        assert_eq!(val(&model(), "T"), "1");
        assert_eq!(val(&model(), "_|_"), "0");
    }

    #[test]
    fn validity() {
        let m = model();
        assert!(m.is_valid(&parse_formula("p -> p").unwrap()).unwrap());
        assert!(!m.is_valid(&parse_formula("p").unwrap()).unwrap());
    }

    #[test]
    fn unbound_atom() {
        let err = model().eval(&parse_formula("p -> r").unwrap()).unwrap_err();
        assert_eq!(err, EvalError::UnboundAtom("r".into()));
    }

    #[test]
    fn derived_clauses_match_expansion() {
        let m = model();
        for s in [
            "p & q",
            "p | q",
            "p &. q",
            "p |. q",
            "~p",
            "T -> q",
            "(p & ~q) |. (q -> p)",
        ] {
            let f = parse_formula(s).unwrap();
            assert_eq!(m.eval(&f).unwrap(), m.eval(&f.expand()).unwrap(), "{s}");
        }
    }
}
