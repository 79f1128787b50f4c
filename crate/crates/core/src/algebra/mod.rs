//! Finite partial algebras `(E; ⊕, 0, 1)` and the structures built on them.

mod effect;
pub(crate) mod file;
mod order;
mod ortho;
mod weak;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use effect::{audit_effect_axioms, audit_presentation, Centers, Lea, SasakiMode};
pub use file::{AlgebraFile, FileError};
pub use order::{derive_order, OrderStructure, OrderViolation};
pub use ortho::ortholattice_embed;
pub use weak::WeakLea;

/// Carriers are capped so that elements fit in a byte.
pub const MAX_ELEMENTS: usize = 64;

/// Dense index of an element. Index order is the label order of the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u8);

impl Elem {
    pub const fn new(index: usize) -> Self {
        assert!(index < MAX_ELEMENTS);
        Elem(index as u8)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("carrier has {0} elements; at most {MAX_ELEMENTS} are supported")]
    TooLarge(usize),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("table entry for ({0}, {1}) is given more than once")]
    DuplicateEntry(String, String),
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("relation is not a partial order ({kind}): {witness:?}")]
    NotAPartialOrder { kind: String, witness: Vec<String> },
    #[error("{element} has several orthosupplement candidates {candidates:?}")]
    AmbiguousOrthosupplement { element: String, candidates: Vec<String> },
    #[error("order is not a lattice: {0:?} have no meet or join")]
    NotALattice(Vec<String>),
    #[error("no involution: {0}")]
    NoInvolution(String),
    #[error("bounds mismatch: {0}")]
    Bounds(String),
    #[error("not a lattice effect algebra: {0}")]
    NotALea(String),
    #[error("{a} is not below {b}")]
    NotBelow { a: String, b: String },
    #[error("{0} is not sharp")]
    NotSharp(String),
    #[error("Sasaki operation is inconsistent at ({a}, {b}): {detail}")]
    InconsistentSasaki { a: String, b: String, detail: String },
}

/// Carrier, designated `0` and `1`, and a partial `⊕` table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialAlgebra {
    labels: Vec<String>,
    zero: Elem,
    one: Elem,
    oplus: Vec<Option<Elem>>,
}

impl PartialAlgebra {
    /// Builds an algebra from a row-major `n × n` table.
    pub fn new(labels: Vec<String>, zero: Elem, one: Elem, oplus: Vec<Option<Elem>>) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if n > MAX_ELEMENTS {
            return Err(AlgebraError::TooLarge(n));
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        if oplus.len() != n * n {
            return Err(AlgebraError::TableShape {
                expected: n * n,
                found: oplus.len(),
            });
        }
        if zero.index() >= n || one.index() >= n || oplus.iter().flatten().any(|e| e.index() >= n) {
            return Err(AlgebraError::Bounds("element index outside the carrier".into()));
        }
        Ok(PartialAlgebra {
            labels,
            zero,
            one,
            oplus,
        })
    }

    /// Builds an algebra by evaluating `f` on every ordered pair.
    pub fn from_fn(
        labels: Vec<String>,
        zero: Elem,
        one: Elem,
        f: impl Fn(Elem, Elem) -> Option<Elem>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let table = (0..n * n).map(|i| f(Elem::new(i / n), Elem::new(i % n))).collect();
        Self::new(labels, zero, one, table)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elems(&self) -> impl DoubleEndedIterator<Item = Elem> + Clone {
        (0..self.size()).map(Elem::new)
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.index()]
    }

    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(Elem::new)
    }

    pub fn oplus(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.oplus[a.index() * self.size() + b.index()]
    }

    pub fn defined(&self, a: Elem, b: Elem) -> bool {
        self.oplus(a, b).is_some()
    }

    /// Row-major `⊕` table.
    pub fn table(&self) -> &[Option<Elem>] {
        &self.oplus
    }

    /// Copy with one table entry replaced.
    pub fn with_entry(&self, a: Elem, b: Elem, value: Option<Elem>) -> Self {
        let mut out = self.clone();
        let n = self.size();
        out.oplus[a.index() * n + b.index()] = value;
        out
    }

    /// Copy where old element `i` becomes `perm[i]`; labels travel with
    /// their elements.
    pub fn relabel(&self, perm: &[Elem]) -> Self {
        let n = self.size();
        assert_eq!(perm.len(), n);
        let mut labels = vec![String::new(); n];
        let mut table = vec![None; n * n];
        for a in self.elems() {
            labels[perm[a.index()].index()] = self.labels[a.index()].clone();
            for b in self.elems() {
                let v = self.oplus(a, b).map(|v| perm[v.index()]);
                table[perm[a.index()].index() * n + perm[b.index()].index()] = v;
            }
        }
        PartialAlgebra {
            labels,
            zero: perm[self.zero.index()],
            one: perm[self.one.index()],
            oplus: table,
        }
    }

    pub(crate) fn render(&self, tuple: &[Elem]) -> Vec<String> {
        tuple.iter().map(|&e| self.label(e).to_string()).collect()
    }
}

/// A partial algebra together with an optionally declared order and
/// involution. Weak lattice effect algebras need both, because their lattice
/// order is not in general the order induced by `⊕`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub algebra: PartialAlgebra,
    /// Declared `≤`, row-major, already closed under reflexivity and
    /// transitivity.
    pub order: Option<Vec<bool>>,
    pub involution: Option<Vec<Elem>>,
}

impl Presentation {
    pub fn bare(algebra: PartialAlgebra) -> Self {
        Presentation {
            algebra,
            order: None,
            involution: None,
        }
    }
}

impl From<PartialAlgebra> for Presentation {
    fn from(a: PartialAlgebra) -> Self {
        Presentation::bare(a)
    }
}

/// Labels `"0"`, `"1"`, ... for quick construction in tests and examples.
pub fn numeric_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}
