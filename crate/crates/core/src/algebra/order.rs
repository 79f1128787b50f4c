use super::{AlgebraError, Elem, PartialAlgebra};

/// A failed partial-order or involution check on a raw relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderViolation {
    pub kind: &'static str,
    pub witness: Vec<Elem>,
}

/// A finite partial order with its meet/join tables (when it is a lattice)
/// and an involution (when one is known).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderStructure {
    n: usize,
    leq: Vec<bool>,
    meet: Option<Vec<Elem>>,
    join: Option<Vec<Elem>>,
    involution: Option<Vec<Elem>>,
}

impl OrderStructure {
    /// Validates `leq` (row-major) as a partial order and computes meets and
    /// joins by exhaustive bound search.
    pub fn from_leq(n: usize, leq: Vec<bool>) -> Result<Self, OrderViolation> {
        assert_eq!(leq.len(), n * n);
        let at = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !at(a, a) {
                return Err(OrderViolation {
                    kind: "reflexivity",
                    witness: vec![Elem::new(a)],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && at(a, b) && at(b, a) {
                    return Err(OrderViolation {
                        kind: "antisymmetry",
                        witness: vec![Elem::new(a), Elem::new(b), Elem::new(a)],
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !at(a, b) {
                    continue;
                }
                for c in 0..n {
                    if at(b, c) && !at(a, c) {
                        return Err(OrderViolation {
                            kind: "transitivity",
                            witness: vec![Elem::new(a), Elem::new(b), Elem::new(c)],
                        });
                    }
                }
            }
        }
        let mut out = OrderStructure {
            n,
            leq,
            meet: None,
            join: None,
            involution: None,
        };
        out.meet = out.bound_table(false);
        out.join = out.bound_table(true);
        Ok(out)
    }

    /// Reflexive-transitive closure of the given pairs, then [`Self::from_leq`].
    pub fn from_pairs(n: usize, pairs: &[(Elem, Elem)]) -> Result<Self, OrderViolation> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            leq[a.index() * n + b.index()] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_leq(n, leq)
    }

    fn bound_table(&self, upper: bool) -> Option<Vec<Elem>> {
        let n = self.n;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let below = |c: usize, x: usize| {
                    if upper {
                        self.leq[x * n + c]
                    } else {
                        self.leq[c * n + x]
                    }
                };
                let bounds: Vec<usize> = (0..n).filter(|&c| below(c, a) && below(c, b)).collect();
                let best = bounds.iter().copied().find(|&g| {
                    bounds.iter().all(|&c| {
                        if upper {
                            self.leq[g * n + c]
                        } else {
                            self.leq[c * n + g]
                        }
                    })
                })?;
                table.push(Elem::new(best));
            }
        }
        Some(table)
    }

    /// Attaches `inv` after checking `a'' = a` and `a ≤ b ⇒ b' ≤ a'`.
    pub fn with_involution(mut self, inv: Vec<Elem>) -> Result<Self, OrderViolation> {
        assert_eq!(inv.len(), self.n);
        for a in 0..self.n {
            if inv[inv[a].index()].index() != a {
                return Err(OrderViolation {
                    kind: "involution is not of order two",
                    witness: vec![Elem::new(a), inv[a]],
                });
            }
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if self.leq[a * self.n + b] && !self.leq[inv[b].index() * self.n + inv[a].index()] {
                    return Err(OrderViolation {
                        kind: "involution is not antitone",
                        witness: vec![Elem::new(a), Elem::new(b)],
                    });
                }
            }
        }
        self.involution = Some(inv);
        Ok(self)
    }

    pub fn without_involution(mut self) -> Self {
        self.involution = None;
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elems(&self) -> impl DoubleEndedIterator<Item = Elem> + Clone {
        (0..self.n).map(Elem::new)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.index() * self.n + b.index()]
    }

    pub fn leq_table(&self) -> &[bool] {
        &self.leq
    }

    pub fn is_lattice(&self) -> bool {
        self.meet.is_some() && self.join.is_some()
    }

    pub fn has_involution(&self) -> bool {
        self.involution.is_some()
    }

    pub fn try_meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.meet.as_ref().map(|t| t[a.index() * self.n + b.index()])
    }

    pub fn try_join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.join.as_ref().map(|t| t[a.index() * self.n + b.index()])
    }

    /// Lattice meet. Panics when the order is not a lattice.
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.try_meet(a, b).expect("order is not a lattice")
    }

    /// Lattice join. Panics when the order is not a lattice.
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.try_join(a, b).expect("order is not a lattice")
    }

    pub fn involution(&self) -> Option<&[Elem]> {
        self.involution.as_deref()
    }

    /// `a'`. Panics when no involution is attached.
    pub fn inv(&self, a: Elem) -> Elem {
        self.involution.as_ref().expect("order has no involution")[a.index()]
    }

    pub fn bottom(&self) -> Option<Elem> {
        self.elems().find(|&b| self.elems().all(|x| self.leq(b, x)))
    }

    pub fn top(&self) -> Option<Elem> {
        self.elems().find(|&t| self.elems().all(|x| self.leq(x, t)))
    }

    /// Pairs `(a, b)` with no meet or no join.
    pub fn lattice_failures(&self) -> Vec<(Elem, Elem)> {
        let fresh = OrderStructure {
            n: self.n,
            leq: self.leq.clone(),
            meet: None,
            join: None,
            involution: None,
        };
        let mut out = Vec::new();
        for a in self.elems() {
            for b in self.elems() {
                if b < a {
                    continue;
                }
                let pair = [a, b];
                let has = |upper: bool| {
                    let below = |c: Elem, x: Elem| if upper { fresh.leq(x, c) } else { fresh.leq(c, x) };
                    let bounds: Vec<Elem> = fresh.elems().filter(|&c| pair.iter().all(|&x| below(c, x))).collect();
                    bounds.iter().any(|&g| bounds.iter().all(|&c| below(c, g)))
                };
                if !has(false) || !has(true) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Covering pairs `a ⋖ b` (the Hasse diagram).
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elems() {
            for b in self.elems() {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = self
                    .elems()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// The order induced by `⊕`: `a ≤ b` iff `a ⊕ c = b` for some `c`.
///
/// Meets and joins are attached when the order is a lattice. The involution
/// is the orthosupplement map when every element has exactly one
/// orthosupplement and that map is an antitone involution; it is absent when
/// some element has none.
pub fn derive_order(alg: &PartialAlgebra) -> Result<OrderStructure, AlgebraError> {
    let n = alg.size();
    let leq = induced_leq(alg);
    let order = OrderStructure::from_leq(n, leq).map_err(|v| AlgebraError::NotAPartialOrder {
        kind: v.kind.to_string(),
        witness: alg.render(&v.witness),
    })?;
    let mut inv = Vec::with_capacity(n);
    let mut complete = true;
    for a in alg.elems() {
        let candidates: Vec<Elem> = alg.elems().filter(|&c| alg.oplus(a, c) == Some(alg.one())).collect();
        match candidates.len() {
            0 => complete = false,
            1 => inv.push(candidates[0]),
            _ => {
                return Err(AlgebraError::AmbiguousOrthosupplement {
                    element: alg.label(a).to_string(),
                    candidates: alg.render(&candidates),
                })
            }
        }
    }
    if complete {
        if let Ok(with) = order.clone().with_involution(inv) {
            return Ok(with);
        }
    }
    Ok(order)
}

pub(crate) fn induced_leq(alg: &PartialAlgebra) -> Vec<bool> {
    let n = alg.size();
    let mut leq = vec![false; n * n];
    for a in alg.elems() {
        for c in alg.elems() {
            if let Some(b) = alg.oplus(a, c) {
                leq[a.index() * n + b.index()] = true;
            }
        }
    }
    leq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::numeric_labels;

    fn e(i: usize) -> Elem {
        Elem::new(i)
    }

    fn two_element() -> PartialAlgebra {
        PartialAlgebra::from_fn(numeric_labels(2), e(0), e(1), |a, b| match (a.index(), b.index()) {
            (0, x) | (x, 0) => Some(e(x)),
            _ => None,
        })
        .unwrap()
    }

    #[test]
    fn two_element_chain() {
        let o = derive_order(&two_element()).unwrap();
        assert!(o.leq(e(0), e(1)) && !o.leq(e(1), e(0)));
        assert!(o.is_lattice());
        assert_eq!(o.meet(e(0), e(1)), e(0));
        assert_eq!(o.join(e(0), e(1)), e(1));
        assert_eq!(o.inv(e(0)), e(1));
        assert_eq!(o.inv(e(1)), e(0));
    }

    /// Thirds chain: a ⊕ b defined iff a + b ≤ 3 (in thirds).
    fn thirds() -> PartialAlgebra {
        PartialAlgebra::from_fn(numeric_labels(4), e(0), e(3), |a, b| {
            (a.index() + b.index() <= 3).then(|| e(a.index() + b.index()))
        })
        .unwrap()
    }

    #[test]
    fn mv_chain_is_linear_with_min_max() {
        let o = derive_order(&thirds()).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(o.leq(e(a), e(b)), a <= b);
                assert_eq!(o.meet(e(a), e(b)), e(a.min(b)));
                assert_eq!(o.join(e(a), e(b)), e(a.max(b)));
            }
            assert_eq!(o.inv(e(a)), e(3 - a));
        }
    }

    #[test]
    fn ambiguous_orthosupplement_is_reported() {
        // labels 0, a, b, c, 1 with a ⊕ c = b ⊕ c = 1
        let labels: Vec<String> = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        let alg = PartialAlgebra::from_fn(labels, e(0), e(4), |x, y| match (x.index(), y.index()) {
            (0, z) | (z, 0) => Some(e(z)),
            (1, 3) | (3, 1) | (2, 3) | (3, 2) => Some(e(4)),
            _ => None,
        })
        .unwrap();
        match derive_order(&alg) {
            Err(AlgebraError::AmbiguousOrthosupplement { element, candidates }) => {
                assert_eq!(element, "c");
                assert_eq!(candidates, vec!["a".to_string(), "b".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn antisymmetry_failure_is_structured() {
        // a ⊕ x = b and b ⊕ y = a makes a ≤ b ≤ a.
        let alg = PartialAlgebra::from_fn(numeric_labels(3), e(0), e(2), |x, y| match (x.index(), y.index()) {
            (0, z) | (z, 0) => Some(e(z)),
            (1, 2) => Some(e(2)),
            (2, 1) => Some(e(1)),
            _ => None,
        })
        .unwrap();
        assert!(matches!(derive_order(&alg), Err(AlgebraError::NotAPartialOrder { .. })));
    }

    #[test]
    fn from_pairs_closes_transitively() {
        let o = OrderStructure::from_pairs(3, &[(e(0), e(1)), (e(1), e(2))]).unwrap();
        assert!(o.leq(e(0), e(2)));
        assert_eq!(o.covers(), vec![(e(0), e(1)), (e(1), e(2))]);
        assert_eq!(o.bottom(), Some(e(0)));
        assert_eq!(o.top(), Some(e(2)));
    }

    #[test]
    fn non_lattice_has_no_tables() {
        // 0 < a, b < c, d < 1 with both c and d above a and b: no join of a, b.
        let p = |a: usize, b: usize| (e(a), e(b));
        let o = OrderStructure::from_pairs(
            6,
            &[p(0, 1), p(0, 2), p(1, 3), p(1, 4), p(2, 3), p(2, 4), p(3, 5), p(4, 5)],
        )
        .unwrap();
        assert!(!o.is_lattice());
        assert!(o.lattice_failures().contains(&(e(1), e(2))));
    }

    #[test]
    fn derivation_is_deterministic() {
        assert_eq!(derive_order(&thirds()).unwrap(), derive_order(&thirds()).unwrap());
    }
}
