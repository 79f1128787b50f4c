use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::file::{emit_order, emit_total, emit_unary, read_file, Labels};
use crate::algebra::{AlgebraError, Elem, FileError, Lea, OrderStructure, PartialAlgebra, WeakLea};
use crate::report::{AuditReport, Law};
use crate::wit;

/// A bounded lattice with total `·` and `→` tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiStructure {
    labels: Vec<String>,
    order: OrderStructure,
    dot: Vec<Elem>,
    arrow: Vec<Elem>,
}

impl CiStructure {
    /// `order` may carry an involution; without one, [`Self::involution`]
    /// falls back to `a ↦ a → 0`.
    pub fn new(
        labels: Vec<String>,
        order: OrderStructure,
        dot: Vec<Elem>,
        arrow: Vec<Elem>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if order.size() != n {
            return Err(AlgebraError::TableShape {
                expected: n,
                found: order.size(),
            });
        }
        for t in [&dot, &arrow] {
            if t.len() != n * n {
                return Err(AlgebraError::TableShape {
                    expected: n * n,
                    found: t.len(),
                });
            }
        }
        if !order.is_lattice() {
            let (a, b) = order.lattice_failures()[0];
            return Err(AlgebraError::NotALattice(vec![
                labels[a.index()].clone(),
                labels[b.index()].clone(),
            ]));
        }
        if order.bottom().is_none() || order.top().is_none() {
            return Err(AlgebraError::Bounds("the lattice must be bounded".into()));
        }
        Ok(CiStructure {
            labels,
            order,
            dot,
            arrow,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn order(&self) -> &OrderStructure {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elems(&self) -> impl DoubleEndedIterator<Item = Elem> + Clone {
        self.order.elems()
    }

    pub fn zero(&self) -> Elem {
        self.order.bottom().expect("bounded")
    }

    pub fn one(&self) -> Elem {
        self.order.top().expect("bounded")
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.order.leq(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.order.meet(a, b)
    }

    pub fn dot(&self, a: Elem, b: Elem) -> Elem {
        self.dot[a.index() * self.size() + b.index()]
    }

    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow[a.index() * self.size() + b.index()]
    }

    pub fn dot_table(&self) -> &[Elem] {
        &self.dot
    }

    pub fn arrow_table(&self) -> &[Elem] {
        &self.arrow
    }

    /// `a → 0` for every `a`.
    pub fn negation(&self) -> Vec<Elem> {
        self.elems().map(|a| self.arrow(a, self.zero())).collect()
    }

    /// The declared involution, else `a ↦ a → 0` when that is an involution.
    pub fn involution(&self) -> Option<Vec<Elem>> {
        if let Some(inv) = self.order.involution() {
            return Some(inv.to_vec());
        }
        let neg = self.negation();
        self.order.clone().with_involution(neg.clone()).ok().map(|_| neg)
    }
}

/// JSON form of a [`CiStructure`]. `dot` and `arrow` list every pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CiFile {
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    pub order: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<IndexMap<String, String>>,
    pub dot: Vec<[String; 3]>,
    pub arrow: Vec<[String; 3]>,
}

impl CiFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FileError> {
        Self::from_json(&read_file(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("CI files always serialize")
    }

    pub fn to_structure(&self) -> Result<CiStructure, FileError> {
        let labels = Labels::new(&self.elements)?;
        let (zero, one) = (labels.get(&self.zero)?, labels.get(&self.one)?);
        let mut order = labels.order(&self.order)?;
        if order.bottom() != Some(zero) || order.top() != Some(one) {
            return Err(AlgebraError::Bounds("0 and 1 must be the bottom and top of the order".into()).into());
        }
        if let Some(map) = &self.involution {
            let inv = labels.unary("involution", map)?;
            order = order
                .with_involution(inv)
                .map_err(|v| AlgebraError::NoInvolution(v.kind.to_string()))?;
        }
        let dot = labels.total_table("dot", &self.dot)?;
        let arrow = labels.total_table("arrow", &self.arrow)?;
        Ok(CiStructure::new(self.elements.clone(), order, dot, arrow)?)
    }

    pub fn from_structure(ci: &CiStructure) -> Self {
        let labels = ci.labels();
        CiFile {
            elements: labels.to_vec(),
            zero: labels[ci.zero().index()].clone(),
            one: labels[ci.one().index()].clone(),
            order: emit_order(labels, ci.order()),
            involution: ci.order().involution().map(|inv| emit_unary(labels, inv)),
            dot: emit_total(labels, ci.dot_table()),
            arrow: emit_total(labels, ci.arrow_table()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("no involution: none is declared and a -> 0 is not one")]
    NoInvolution,
    #[error("{law} fails at {witness:?}")]
    CiViolation { law: String, witness: Vec<String> },
    #[error("{law} fails at {witness:?}")]
    CwViolation { law: String, witness: Vec<String> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// CI1–CI6 and whether `a' := a → 0` is an involution.
pub fn audit_ci(ci: &CiStructure) -> AuditReport {
    let labels = ci.labels();
    let mut report = AuditReport::new("CI-lattice");
    let one = ci.one();

    let mut ci1 = Law::new("CI1");
    for a in ci.elems() {
        ci1.check(
            ci.dot(one, a) == a && ci.dot(a, one) == a,
            wit![a, ci.dot(one, a), ci.dot(a, one)],
        );
    }
    report.push(ci1, labels);

    let mut ci2 = Law::new("CI2");
    for a in ci.elems() {
        for b in ci.elems() {
            for c in ci.elems() {
                let lhs = ci.leq(ci.dot(a, c), b);
                let rhs = ci.leq(c, ci.arrow(a, b));
                ci2.check(lhs == rhs, wit![a, b, c]);
            }
        }
    }
    report.push(ci2, labels);

    let mut ci3 = Law::new("CI3");
    let mut ci4 = Law::new("CI4");
    let mut ci5 = Law::new("CI5");
    for a in ci.elems() {
        for b in ci.elems() {
            ci3.check(ci.leq(ci.dot(a, b), a), wit![a, b]);
            ci4.check(ci.leq(ci.dot(a, ci.arrow(a, b)), b), wit![a, b]);
            ci5.check(ci.leq(a, b) == (ci.arrow(a, b) == one), wit![a, b]);
        }
    }
    report.push(ci3, labels);
    report.push(ci4, labels);
    report.push(ci5, labels);

    let mut ci6 = Law::new("CI6");
    for a in ci.elems() {
        for b in ci.elems() {
            for c in ci.elems() {
                let lhs = ci.arrow(a, ci.meet(b, c));
                let rhs = ci.meet(ci.arrow(a, b), ci.arrow(a, c));
                ci6.check(lhs == rhs, wit![a, b, c]);
            }
        }
    }
    report.push(ci6, labels);

    let neg = ci.negation();
    let mut inv = Law::new("involutive");
    for a in ci.elems() {
        let na = neg[a.index()];
        inv.check(neg[na.index()] == a, wit![a, na, neg[na.index()]]);
        for b in ci.elems() {
            if ci.leq(a, b) {
                inv.check(ci.leq(neg[b.index()], na), wit![a, b]);
            }
        }
    }
    report.push(inv, labels);

    let base = report.passed("CI1") == Some(true) && report.passed("CI2") == Some(true);
    if base
        && ["CI3", "CI4", "CI5", "CI6"]
            .iter()
            .any(|k| report.passed(k) == Some(false))
    {
        report
            .notes
            .push("CI3-CI6 follow from CI1 and CI2; this failure is a bug".into());
    }
    report.summary = match (base, report.passed("involutive") == Some(true)) {
        (true, true) => "involutive CI-lattice".to_string(),
        (true, false) => "CI-lattice, not involutive".to_string(),
        (false, _) => format!("not a CI-lattice: fails {}", report.failed_laws().join(", ")),
    };
    report
}

/// cw1–cw5 with respect to the declared involution, or `a → 0` when none is
/// declared. Conditional laws record how many tuples met their hypothesis.
pub fn audit_cw(ci: &CiStructure) -> AuditReport {
    let labels = ci.labels();
    let mut report = AuditReport::new("cw laws");
    let Some(inv) = ci.involution() else {
        report.push_flag(
            "involution",
            false,
            Some("none declared and a -> 0 is not an involution".into()),
        );
        report.summary = "no involution".to_string();
        return report;
    };
    report.push_flag("involution", true, None);
    if ci.order().involution().is_none() {
        report.notes.push("involution taken as a -> 0".into());
    }
    let i = |a: Elem| inv[a.index()];
    let one = ci.one();

    let mut cw1 = Law::new("cw1");
    for a in ci.elems() {
        for b in ci.elems() {
            cw1.check(ci.dot(a, b) == i(ci.arrow(a, i(b))), wit![a, b]);
        }
    }
    report.push(cw1, labels);

    let mut cw2 = Law::new("cw2");
    for a in ci.elems() {
        for b in ci.elems() {
            if ci.leq(a, i(b)) {
                let sym = ci.arrow(i(a), b) == ci.arrow(i(b), a);
                cw2.check(sym && ci.leq(a, ci.arrow(i(a), b)), wit![a, b]);
            }
        }
    }
    report.push(cw2, labels);

    let mut cw3 = Law::new("cw3");
    for a in ci.elems() {
        for b in ci.elems() {
            for c in ci.elems() {
                if ci.leq(a, i(b)) && ci.leq(a, i(c)) && ci.leq(ci.arrow(i(a), b), i(c)) {
                    cw3.check(ci.leq(ci.arrow(i(a), c), i(b)), wit![a, b, c]);
                }
            }
        }
    }
    report.push(cw3, labels);

    let mut cw4 = Law::new("cw4");
    for a in ci.elems() {
        for b in ci.elems() {
            for c in ci.elems() {
                let bc = ci.dot(b, c);
                if ci.leq(i(b), c) && ci.leq(i(a), bc) {
                    cw4.check(ci.dot(a, bc) == ci.dot(ci.dot(a, b), c), wit![a, b, c]);
                }
            }
        }
    }
    report.push(cw4, labels);

    let mut cw5 = Law::new("cw5");
    for a in ci.elems() {
        cw5.check(ci.dot(a, one) == a, wit![a]);
    }
    report.push(cw5, labels);

    report.summary = if report.all_pass() {
        "cw1-cw5 hold".to_string()
    } else {
        format!("fails {}", report.failed_laws().join(", "))
    };
    report
}

/// `a ⊕ b = a' → b` for `a ≤ b'`, undefined otherwise.
///
/// With a declared involution cw1–cw5 must hold. Without one, `a' = a → 0`
/// and CI1–CI2 must hold as well; the result is then a lattice effect algebra
/// whose Sasaki arrow is `→`.
pub fn lea_from_ci(ci: &CiStructure) -> Result<WeakLea, ConstructionError> {
    let inv = ci.involution().ok_or(ConstructionError::NoInvolution)?;
    if ci.order().involution().is_none() {
        let audit = audit_ci(ci);
        for law in ["CI1", "CI2"] {
            if audit.passed(law) == Some(false) {
                return Err(ConstructionError::CiViolation {
                    law: law.into(),
                    witness: audit.witnesses(law)[0].clone(),
                });
            }
        }
    }
    let cw = audit_cw(ci);
    if let Some(law) = cw.failed_laws().first() {
        return Err(ConstructionError::CwViolation {
            law: law.to_string(),
            witness: cw.witnesses(law).first().cloned().unwrap_or_default(),
        });
    }
    let i = |a: Elem| inv[a.index()];
    let alg = PartialAlgebra::from_fn(ci.labels().to_vec(), ci.zero(), ci.one(), |a, b| {
        ci.leq(a, i(b)).then(|| ci.arrow(i(a), b))
    })?;
    let order = ci
        .order()
        .clone()
        .without_involution()
        .with_involution(inv.clone())
        .map_err(|_| ConstructionError::NoInvolution)?;
    Ok(WeakLea::new(alg, order)?)
}

/// `· = ⊗` and `→ = →s`, with the orthosupplement as the declared involution.
pub fn ci_from_lea(lea: &Lea) -> CiStructure {
    let dot = lea
        .elems()
        .flat_map(|a| lea.elems().map(move |b| (a, b)))
        .map(|(a, b)| lea.sasaki_product(a, b));
    let arrow = lea
        .elems()
        .flat_map(|a| lea.elems().map(move |b| (a, b)))
        .map(|(a, b)| lea.sasaki_arrow(a, b));
    CiStructure::new(
        lea.labels().to_vec(),
        lea.order().clone(),
        dot.collect(),
        arrow.collect(),
    )
    .expect("a lattice effect algebra is a bounded lattice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::numeric_labels;

    fn chain_lea(n: usize) -> Lea {
        let top = n - 1;
        let alg = PartialAlgebra::from_fn(numeric_labels(n), Elem::new(0), Elem::new(top), |a, b| {
            (a.index() + b.index() <= top).then(|| Elem::new(a.index() + b.index()))
        })
        .unwrap();
        Lea::new(alg).unwrap()
    }

    fn e(i: usize) -> Elem {
        Elem::new(i)
    }

    #[test]
    fn chain_gives_lukasiewicz_tables() {
        let lea = chain_lea(4);
        let ci = ci_from_lea(&lea);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(ci.dot(e(a), e(b)), e((a + b).saturating_sub(3)));
                assert_eq!(ci.arrow(e(a), e(b)), e((3 - a + b).min(3)));
            }
        }
        assert!(audit_ci(&ci).all_pass());
        assert!(audit_cw(&ci).all_pass());
    }

    #[test]
    fn round_trip_reproduces_table() {
        for n in 2..7 {
            let lea = chain_lea(n);
            let back = lea_from_ci(&ci_from_lea(&lea)).unwrap();
            assert_eq!(back.algebra().table(), lea.algebra().table());
        }
    }

    #[test]
    fn corollary_path_recovers_sasaki_arrow() {
        let lea = chain_lea(4);
        let ci = ci_from_lea(&lea);
        let bare = CiStructure::new(
            ci.labels().to_vec(),
            ci.order().clone().without_involution(),
            ci.dot_table().to_vec(),
            ci.arrow_table().to_vec(),
        )
        .unwrap();
        let w = lea_from_ci(&bare).unwrap();
        let back = Lea::from_weak(&w).unwrap();
        for a in back.elems() {
            for b in back.elems() {
                assert_eq!(back.sasaki_arrow(a, b), bare.arrow(a, b));
            }
        }
    }

    #[test]
    fn join_as_dot_fails_unit_law() {
        let order = OrderStructure::from_pairs(2, &[(e(0), e(1))]).unwrap();
        let join = vec![e(0), e(1), e(1), e(1)];
        let imp = vec![e(1), e(1), e(0), e(1)];
        let ci = CiStructure::new(numeric_labels(2), order, join, imp).unwrap();
        let r = audit_ci(&ci);
        assert_eq!(r.passed("CI1"), Some(false));
        assert_eq!(r.witnesses("CI1")[0][0], "0");
    }

    #[test]
    fn broken_arrow_is_a_cw_violation() {
        let lea = chain_lea(4);
        let ci = ci_from_lea(&lea);
        let mut arrow = ci.arrow_table().to_vec();
        // 1 -> 1 should be 3
        arrow[4 + 1] = e(2);
        let bad = CiStructure::new(ci.labels().to_vec(), ci.order().clone(), ci.dot_table().to_vec(), arrow).unwrap();
        let err = lea_from_ci(&bad).unwrap_err();
        assert!(matches!(err, ConstructionError::CwViolation { .. }), "{err}");
    }

    #[test]
    fn ci_file_round_trip() {
        let ci = ci_from_lea(&chain_lea(3));
        let file = CiFile::from_structure(&ci);
        let again = CiFile::from_json(&file.to_json()).unwrap().to_structure().unwrap();
        assert_eq!(again, ci);
    }
}
