//! Formulas of the logic, their concrete syntax, and evaluation in models.
//!
//! The core language has atoms, `⊥` and `→`. Everything else is defined:
//!
//! | surface | definition |
//! |---|---|
//! | `~φ` | `φ -> _|_` |
//! | `T` | `~_|_` |
//! | `φ &. ψ` | `~(φ -> ~ψ)` |
//! | `φ |. ψ` | `~(~φ &. ~ψ)` |
//! | `φ & ψ` | `φ &. (φ -> ψ)` |
//! | `φ | ψ` | `~(~φ & ~ψ)` |

mod eval;
mod gen;
mod parse;
mod program;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use eval::{AlgebraSource, EvalError, Model, ModelFile, ModelFileError};
pub use gen::FormulaGen;
pub use parse::{parse_formula, ParseError};
pub use program::Program;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Atom(Arc<str>),
    Bottom,
    Top,
    Neg(Formula),
    Implies(Formula, Formula),
    /// Sasaki conjunction `∧·`.
    SConj(Formula, Formula),
    /// Sasaki disjunction `∨·`.
    SDisj(Formula, Formula),
    Meet(Formula, Formula),
    Join(Formula, Formula),
}

/// Immutable formula with shared subterms. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Formula(Arc<Node>);

impl Formula {
    pub fn new(node: Node) -> Self {
        Formula(Arc::new(node))
    }

    pub fn atom(name: &str) -> Self {
        Formula::new(Node::Atom(name.into()))
    }

    pub fn bottom() -> Self {
        Formula::new(Node::Bottom)
    }

    pub fn top() -> Self {
        Formula::new(Node::Top)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Self {
        Formula::new(Node::Neg(a))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::new(Node::Implies(a, b))
    }

    pub fn sconj(a: Formula, b: Formula) -> Self {
        Formula::new(Node::SConj(a, b))
    }

    pub fn sdisj(a: Formula, b: Formula) -> Self {
        Formula::new(Node::SDisj(a, b))
    }

    pub fn meet(a: Formula, b: Formula) -> Self {
        Formula::new(Node::Meet(a, b))
    }

    pub fn join(a: Formula, b: Formula) -> Self {
        Formula::new(Node::Join(a, b))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn key(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Whether only atoms, `⊥` and `→` occur.
    pub fn is_core(&self) -> bool {
        let mut seen = HashMap::new();
        self.is_core_memo(&mut seen)
    }

    fn is_core_memo(&self, seen: &mut HashMap<*const Node, bool>) -> bool {
        if let Some(&v) = seen.get(&self.key()) {
            return v;
        }
        let v = match self.node() {
            Node::Atom(_) | Node::Bottom => true,
            Node::Implies(a, b) => a.is_core_memo(seen) && b.is_core_memo(seen),
            _ => false,
        };
        seen.insert(self.key(), v);
        v
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<Arc<str>> {
        let mut out: Vec<Arc<str>> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.key()) {
                continue;
            }
            match f.node() {
                Node::Atom(p) => {
                    if !out.contains(p) {
                        out.push(p.clone());
                    }
                }
                Node::Bottom | Node::Top => {}
                Node::Neg(a) => stack.push(a),
                Node::Implies(a, b) | Node::SConj(a, b) | Node::SDisj(a, b) | Node::Meet(a, b) | Node::Join(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    /// Replaces atoms by formulas. Atoms not in `map` are kept.
    pub fn substitute(&self, map: &HashMap<String, Formula>) -> Formula {
        let mut memo = HashMap::new();
        self.substitute_memo(map, &mut memo)
    }

    fn substitute_memo(&self, map: &HashMap<String, Formula>, memo: &mut HashMap<*const Node, Formula>) -> Formula {
        if let Some(f) = memo.get(&self.key()) {
            return f.clone();
        }
        let out = match self.node() {
            Node::Atom(p) => map.get(&**p).cloned().unwrap_or_else(|| self.clone()),
            Node::Bottom | Node::Top => self.clone(),
            Node::Neg(a) => Formula::neg(a.substitute_memo(map, memo)),
            Node::Implies(a, b) => Formula::implies(a.substitute_memo(map, memo), b.substitute_memo(map, memo)),
            Node::SConj(a, b) => Formula::sconj(a.substitute_memo(map, memo), b.substitute_memo(map, memo)),
            Node::SDisj(a, b) => Formula::sdisj(a.substitute_memo(map, memo), b.substitute_memo(map, memo)),
            Node::Meet(a, b) => Formula::meet(a.substitute_memo(map, memo), b.substitute_memo(map, memo)),
            Node::Join(a, b) => Formula::join(a.substitute_memo(map, memo), b.substitute_memo(map, memo)),
        };
        memo.insert(self.key(), out.clone());
        out
    }

    /// Rewrites every defined connective into atoms, `⊥` and `→`. Shared
    /// subterms stay shared, so the result is a DAG of size linear in the
    /// input even where its tree form is exponential.
    pub fn expand(&self) -> Formula {
        let mut memo = HashMap::new();
        self.expand_memo(&mut memo)
    }

    fn expand_memo(&self, memo: &mut HashMap<*const Node, Formula>) -> Formula {
        if let Some(f) = memo.get(&self.key()) {
            return f.clone();
        }
        let bot = Formula::bottom;
        let not = |a: Formula| Formula::implies(a, bot());
        let sconj = |a: Formula, b: Formula| not(Formula::implies(a, not(b)));
        let out = match self.node() {
            Node::Atom(_) | Node::Bottom => self.clone(),
            Node::Top => not(bot()),
            Node::Neg(a) => not(a.expand_memo(memo)),
            Node::Implies(a, b) => {
                let (ea, eb) = (a.expand_memo(memo), b.expand_memo(memo));
                if ea.ptr_eq(a) && eb.ptr_eq(b) {
                    self.clone()
                } else {
                    Formula::implies(ea, eb)
                }
            }
            Node::SConj(a, b) => sconj(a.expand_memo(memo), b.expand_memo(memo)),
            Node::SDisj(a, b) => not(sconj(not(a.expand_memo(memo)), not(b.expand_memo(memo)))),
            Node::Meet(a, b) => {
                let ea = a.expand_memo(memo);
                let eb = b.expand_memo(memo);
                sconj(ea.clone(), Formula::implies(ea, eb))
            }
            Node::Join(a, b) => {
                let (na, nb) = (not(a.expand_memo(memo)), not(b.expand_memo(memo)));
                not(sconj(na.clone(), Formula::implies(na, nb)))
            }
        };
        memo.insert(self.key(), out.clone());
        out
    }

    /// Number of nodes in the tree form, saturating.
    pub fn tree_size(&self) -> u64 {
        let mut memo = HashMap::new();
        self.tree_size_memo(&mut memo)
    }

    fn tree_size_memo(&self, memo: &mut HashMap<*const Node, u64>) -> u64 {
        if let Some(&v) = memo.get(&self.key()) {
            return v;
        }
        let v = match self.node() {
            Node::Atom(_) | Node::Bottom | Node::Top => 1,
            Node::Neg(a) => a.tree_size_memo(memo).saturating_add(1),
            Node::Implies(a, b) | Node::SConj(a, b) | Node::SDisj(a, b) | Node::Meet(a, b) | Node::Join(a, b) => a
                .tree_size_memo(memo)
                .saturating_add(b.tree_size_memo(memo))
                .saturating_add(1),
        };
        memo.insert(self.key(), v);
        v
    }
}

impl fmt::Display for Formula {
    /// Fully parenthesised; the parser reads it back to an equal formula.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula| write!(f, "({a} {op} {b})");
        match self.node() {
            Node::Atom(p) => write!(f, "{p}"),
            Node::Bottom => write!(f, "_|_"),
            Node::Top => write!(f, "T"),
            Node::Neg(a) => write!(f, "~{a}"),
            Node::Implies(a, b) => bin(f, a, "->", b),
            Node::SConj(a, b) => bin(f, a, "&.", b),
            Node::SDisj(a, b) => bin(f, a, "|.", b),
            Node::Meet(a, b) => bin(f, a, "&", b),
            Node::Join(a, b) => bin(f, a, "|", b),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn top_expands_to_negated_bottom() {
        assert_eq!(Formula::top().expand(), p("_|_ -> _|_"));
    }

    #[test]
    fn meet_expands_through_sasaki_conjunction() {
        assert_eq!(p("p & q").expand(), p("(p -> (p -> q) -> _|_) -> _|_"));
        assert_eq!(p("~~p").expand(), p("(p -> _|_) -> _|_"));
    }

    #[test]
    fn expansion_is_idempotent_and_core() {
        let f = p("(p & (q | r)) -> ((p &. q) |. T)");
        let e = f.expand();
        assert!(e.is_core());
        assert!(!f.is_core());
        assert_eq!(e.expand(), e);
        assert!(e.expand().ptr_eq(&e));
    }

    #[test]
    fn nested_meets_stay_small_as_dags() {
        let mut f = Formula::atom("p");
        for _ in 0..40 {
            f = Formula::meet(f.clone(), Formula::atom("q"));
        }
        let e = f.expand();
        assert!(e.tree_size() > 1 << 40);
    }

    #[test]
    fn atoms_in_first_occurrence_order() {
        let names: Vec<String> = p("(q -> p) & (r | q)").atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["q", "p", "r"]);
    }

    #[test]
    fn substitution_replaces_atoms() {
        let map = HashMap::from([("phi".to_string(), p("p & q"))]);
        assert_eq!(p("phi -> phi").substitute(&map), p("(p & q) -> (p & q)"));
    }
}
