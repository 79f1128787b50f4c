use super::{AlgebraError, OrderStructure, PartialAlgebra, WeakLea};

/// Turns an ortholattice into a weak lattice effect algebra by setting
/// `a ⊕ b = a ∨ b` whenever `a ≤ b'`.
///
/// Every element must be sharp (`a ∧ a' = 0`).
pub fn ortholattice_embed(labels: Vec<String>, order: &OrderStructure) -> Result<WeakLea, AlgebraError> {
    if labels.len() != order.size() {
        return Err(AlgebraError::Bounds("label count differs from the order size".into()));
    }
    if !order.is_lattice() {
        return Err(AlgebraError::NotALattice(Vec::new()));
    }
    if !order.has_involution() {
        return Err(AlgebraError::NoInvolution(
            "an ortholattice needs an orthocomplement".into(),
        ));
    }
    let (Some(zero), Some(one)) = (order.bottom(), order.top()) else {
        return Err(AlgebraError::Bounds("order is not bounded".into()));
    };
    if let Some(a) = order.elems().find(|&a| order.meet(a, order.inv(a)) != zero) {
        return Err(AlgebraError::NotSharp(labels[a.index()].clone()));
    }
    let algebra = PartialAlgebra::from_fn(labels, zero, one, |a, b| {
        order.leq(a, order.inv(b)).then(|| order.join(a, b))
    })?;
    WeakLea::new(algebra, order.clone())
}
