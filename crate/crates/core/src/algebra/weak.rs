use super::order::derive_order;
use super::{AlgebraError, Elem, OrderStructure, PartialAlgebra, Presentation};

/// A partial `⊕` over a bounded involutive lattice.
///
/// Construction only checks the lattice side (bounds agree with `0` and `1`,
/// meets, joins and the involution exist). Whether `⊕` satisfies the weak
/// lattice effect algebra axioms is a matter for
/// [`crate::structure::audit_weak_lea`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakLea {
    algebra: PartialAlgebra,
    order: OrderStructure,
}

impl WeakLea {
    pub fn new(algebra: PartialAlgebra, order: OrderStructure) -> Result<Self, AlgebraError> {
        if order.size() != algebra.size() {
            return Err(AlgebraError::Bounds(format!(
                "order has {} elements, algebra has {}",
                order.size(),
                algebra.size()
            )));
        }
        if !order.is_lattice() {
            let bad = order.lattice_failures();
            let (a, b) = bad[0];
            return Err(AlgebraError::NotALattice(algebra.render(&[a, b])));
        }
        if !order.has_involution() {
            return Err(AlgebraError::NoInvolution("the lattice carries no involution".into()));
        }
        if order.bottom() != Some(algebra.zero()) || order.top() != Some(algebra.one()) {
            return Err(AlgebraError::Bounds(
                "0 and 1 must be the bottom and top of the order".into(),
            ));
        }
        Ok(WeakLea { algebra, order })
    }

    /// Uses the declared order and involution where present, the induced
    /// order and orthosupplement map otherwise.
    pub fn from_presentation(p: &Presentation) -> Result<Self, AlgebraError> {
        let alg = &p.algebra;
        let n = alg.size();
        let base = match &p.order {
            Some(leq) => OrderStructure::from_leq(n, leq.clone()).map_err(|v| AlgebraError::NotAPartialOrder {
                kind: v.kind.to_string(),
                witness: alg.render(&v.witness),
            })?,
            None => derive_order(alg)?,
        };
        let order = match &p.involution {
            Some(inv) => base
                .without_involution()
                .with_involution(inv.clone())
                .map_err(|v| AlgebraError::NoInvolution(format!("{}: {:?}", v.kind, alg.render(&v.witness))))?,
            None => base,
        };
        WeakLea::new(alg.clone(), order)
    }

    pub fn algebra(&self) -> &PartialAlgebra {
        &self.algebra
    }

    pub fn order(&self) -> &OrderStructure {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    pub fn elems(&self) -> impl DoubleEndedIterator<Item = Elem> + Clone {
        self.algebra.elems()
    }

    pub fn zero(&self) -> Elem {
        self.algebra.zero()
    }

    pub fn one(&self) -> Elem {
        self.algebra.one()
    }

    pub fn label(&self, e: Elem) -> &str {
        self.algebra.label(e)
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.order.leq(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.order.meet(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.order.join(a, b)
    }

    /// The lattice involution `a'`.
    pub fn inv(&self, a: Elem) -> Elem {
        self.order.inv(a)
    }

    pub fn oplus(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.algebra.oplus(a, b)
    }

    /// `a ⊙ b = (a' ⊕ b')'`.
    pub fn odot(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.oplus(self.inv(a), self.inv(b)).map(|v| self.inv(v))
    }

    /// `a ⊗ b = (a' ⊕ (a ∧ b'))'`.
    pub fn sasaki_product(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.oplus(self.inv(a), self.meet(a, self.inv(b))).map(|v| self.inv(v))
    }

    /// `a →s b = a' ⊕ (a ∧ b)`.
    pub fn sasaki_arrow(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.oplus(self.inv(a), self.meet(a, b))
    }

    /// Presentation carrying the full order and the involution.
    pub fn presentation(&self) -> Presentation {
        Presentation {
            algebra: self.algebra.clone(),
            order: Some(self.order.leq_table().to_vec()),
            involution: self.order.involution().map(<[Elem]>::to_vec),
        }
    }

    pub(crate) fn render(&self, tuple: &[Elem]) -> Vec<String> {
        self.algebra.render(tuple)
    }
}
