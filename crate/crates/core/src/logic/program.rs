use std::collections::HashMap;

use super::{EvalError, Formula, Node};
use crate::algebra::{Elem, Lea};

#[derive(Clone, Copy, Debug)]
enum Op {
    Atom(usize),
    Bottom,
    Top,
    Neg(usize),
    Implies(usize, usize),
    SConj(usize, usize),
    SDisj(usize, usize),
    Meet(usize, usize),
    Join(usize, usize),
}

/// Several formulas flattened into one straight-line program over shared
/// subterms, for evaluating the same formulas under many valuations.
#[derive(Clone, Debug)]
pub struct Program {
    ops: Vec<Op>,
    roots: Vec<usize>,
}

impl Program {
    /// `atoms` fixes the order of the valuation slice passed to [`Self::run`].
    pub fn compile(formulas: &[Formula], atoms: &[String]) -> Result<Self, EvalError> {
        let mut p = Program {
            ops: Vec::new(),
            roots: Vec::new(),
        };
        let mut memo = HashMap::new();
        for f in formulas {
            let r = p.push(f, atoms, &mut memo)?;
            p.roots.push(r);
        }
        Ok(p)
    }

    fn push(
        &mut self,
        f: &Formula,
        atoms: &[String],
        memo: &mut HashMap<*const Node, usize>,
    ) -> Result<usize, EvalError> {
        if let Some(&i) = memo.get(&f.key()) {
            return Ok(i);
        }
        let mut two = |a: &Formula, b: &Formula, p: &mut Program| -> Result<(usize, usize), EvalError> {
            Ok((p.push(a, atoms, memo)?, p.push(b, atoms, memo)?))
        };
        let op = match f.node() {
            Node::Atom(name) => Op::Atom(
                atoms
                    .iter()
                    .position(|a| **a == **name)
                    .ok_or_else(|| EvalError::UnboundAtom(name.to_string()))?,
            ),
            Node::Bottom => Op::Bottom,
            Node::Top => Op::Top,
            Node::Neg(a) => Op::Neg(self.push(a, atoms, memo)?),
            Node::Implies(a, b) => {
                let (x, y) = two(a, b, self)?;
                Op::Implies(x, y)
            }
            Node::SConj(a, b) => {
                let (x, y) = two(a, b, self)?;
                Op::SConj(x, y)
            }
            Node::SDisj(a, b) => {
                let (x, y) = two(a, b, self)?;
                Op::SDisj(x, y)
            }
            Node::Meet(a, b) => {
                let (x, y) = two(a, b, self)?;
                Op::Meet(x, y)
            }
            Node::Join(a, b) => {
                let (x, y) = two(a, b, self)?;
                Op::Join(x, y)
            }
        };
        self.ops.push(op);
        let i = self.ops.len() - 1;
        memo.insert(f.key(), i);
        Ok(i)
    }

    pub fn roots(&self) -> usize {
        self.roots.len()
    }

    /// Values of the compiled formulas, in compile order, written to `out`.
    /// `scratch` is reused between calls.
    pub fn run(&self, lea: &Lea, valuation: &[Elem], scratch: &mut Vec<Elem>, out: &mut Vec<Elem>) {
        scratch.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Atom(i) => valuation[i],
                Op::Bottom => lea.zero(),
                Op::Top => lea.one(),
                Op::Neg(a) => lea.sasaki_arrow(scratch[a], lea.zero()),
                Op::Implies(a, b) => lea.sasaki_arrow(scratch[a], scratch[b]),
                Op::SConj(a, b) => lea.sasaki_product(scratch[a], scratch[b]),
                Op::SDisj(a, b) => lea.comp(lea.sasaki_product(lea.comp(scratch[a]), lea.comp(scratch[b]))),
                Op::Meet(a, b) => lea.sasaki_product(scratch[a], lea.sasaki_arrow(scratch[a], scratch[b])),
                Op::Join(a, b) => {
                    let (x, y) = (lea.comp(scratch[a]), lea.comp(scratch[b]));
                    lea.comp(lea.sasaki_product(x, lea.sasaki_arrow(x, y)))
                }
            };
            scratch.push(v);
        }
        out.clear();
        out.extend(self.roots.iter().map(|&r| scratch[r]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Model};
    use crate::search::mo;
    use indexmap::IndexMap;
    use std::sync::Arc;

    #[test]
    fn agrees_with_the_tree_evaluator() {
        let lea = Arc::new(Lea::new(mo(2).algebra).unwrap());
        let fs: Vec<Formula> = ["p & (q | r)", "(p &. q) |. ~r", "p -> q -> r", "T -> _|_"]
            .iter()
            .map(|s| parse_formula(s).unwrap())
            .collect();
        let atoms: Vec<String> = ["p", "q", "r"].map(String::from).to_vec();
        let prog = Program::compile(&fs, &atoms).unwrap();
        let (mut scratch, mut out) = (Vec::new(), Vec::new());
        for x in lea.elems() {
            for y in lea.elems() {
                for z in lea.elems() {
                    prog.run(&lea, &[x, y, z], &mut scratch, &mut out);
                    let m = Model::new(
                        lea.clone(),
                        IndexMap::from([("p".into(), x), ("q".into(), y), ("r".into(), z)]),
                    );
                    let want: Vec<Elem> = fs.iter().map(|f| m.eval(f).unwrap()).collect();
                    assert_eq!(out, want);
                }
            }
        }
    }

    #[test]
    fn unknown_atoms_are_reported() {
        let f = parse_formula("p -> s").unwrap();
        assert_eq!(
            Program::compile(&[f], &["p".to_string()]).unwrap_err(),
            EvalError::UnboundAtom("s".into())
        );
    }
}
