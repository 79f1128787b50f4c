use serde::Serialize;

use super::order::{derive_order, induced_leq};
use super::{AlgebraError, Elem, OrderStructure, PartialAlgebra, Presentation, WeakLea};
use crate::report::{AuditReport, Law, WitnessItem};
use crate::wit;

/// Audits E1–E4 and the lattice property of the induced order.
pub fn audit_effect_axioms(alg: &PartialAlgebra) -> AuditReport {
    audit_presentation(&Presentation::bare(alg.clone()))
}

/// Like [`audit_effect_axioms`], but when the presentation declares an
/// involution the E3 check also reports every `a` with `a ⊕ a' ≠ 1`.
///
/// E3 witnesses are tagged: `["existence", a]`, `["uniqueness", a, x, y]`
/// (with `a ⊕ x = a ⊕ y = 1`), or `["orthosupplement", a, a', a ⊕ a']`.
pub fn audit_presentation(p: &Presentation) -> AuditReport {
    let alg = &p.algebra;
    let labels = alg.labels();
    let mut report = AuditReport::new("effect algebra axioms");
    let degenerate = alg.size() < 2 || alg.zero() == alg.one();
    report.push_flag(
        "nondegenerate",
        !degenerate,
        degenerate.then(|| "0 = 1: the one-element algebra is excluded".to_string()),
    );

    let mut e1 = Law::new("E1");
    for a in alg.elems() {
        for b in alg.elems() {
            if let Some(ab) = alg.oplus(a, b) {
                e1.check(alg.oplus(b, a) == Some(ab), wit![a, b, ab, alg.oplus(b, a)]);
            }
        }
    }
    report.push(e1, labels);

    let mut e2 = Law::new("E2");
    for a in alg.elems() {
        for b in alg.elems() {
            for c in alg.elems() {
                let Some(bc) = alg.oplus(b, c) else { continue };
                let Some(lhs) = alg.oplus(a, bc) else { continue };
                let rhs = alg.oplus(a, b).and_then(|ab| alg.oplus(ab, c));
                e2.check(rhs == Some(lhs), wit![a, b, c]);
            }
        }
    }
    report.push(e2, labels);

    let mut e3 = Law::new("E3");
    for a in alg.elems() {
        let candidates: Vec<Elem> = alg.elems().filter(|&x| alg.oplus(a, x) == Some(alg.one())).collect();
        if let Some(inv) = &p.involution {
            let ap = inv[a.index()];
            let sum = alg.oplus(a, ap);
            e3.check(sum == Some(alg.one()), || {
                vec![WitnessItem::Tag("orthosupplement"), a.into(), ap.into(), sum.into()]
            });
        }
        match candidates.as_slice() {
            [] => {
                if p.involution.is_none() {
                    e3.check(false, || vec![WitnessItem::Tag("existence"), a.into()]);
                }
            }
            [_] => e3.check(true, Vec::<Elem>::new),
            [x, y, ..] => e3.check(false, || {
                vec![WitnessItem::Tag("uniqueness"), a.into(), (*x).into(), (*y).into()]
            }),
        }
    }
    report.push(e3, labels);

    let mut e4 = Law::new("E4");
    for a in alg.elems() {
        if alg.defined(a, alg.one()) {
            e4.check(a == alg.zero(), wit![a]);
        }
    }
    report.push(e4, labels);

    let n = alg.size();
    match OrderStructure::from_leq(n, induced_leq(alg)) {
        Err(v) => {
            let mut law = Law::new("lattice");
            law.check(false, || {
                let mut w = vec![WitnessItem::Tag(v.kind)];
                w.extend(v.witness.iter().map(|&e| WitnessItem::from(e)));
                w
            });
            report.push(law, labels);
        }
        Ok(order) => {
            let mut law = Law::new("lattice");
            let failures = order.lattice_failures();
            if failures.is_empty() {
                law.check(true, Vec::<Elem>::new);
            }
            for (a, b) in failures {
                law.check(false, wit![a, b]);
            }
            report.push(law, labels);
        }
    }

    let ea = ["nondegenerate", "E1", "E2", "E3", "E4"]
        .iter()
        .all(|k| report.passed(k) == Some(true));
    report.summary = if ea && report.passed("lattice") == Some(true) {
        "lattice effect algebra".to_string()
    } else if ea {
        "effect algebra whose induced order is not a lattice".to_string()
    } else {
        format!("not an effect algebra: fails {}", report.failed_laws().join(", "))
    };
    report
}

/// Whether the Sasaki tables are cross-checked against their second
/// defining expression while being built.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SasakiMode {
    /// Compute `φ(a, b) = a ⊖ (a ∧ b')` and `(a' ⊕ (a ∧ b'))'` for every pair
    /// and compare; likewise `a' ⊕ (a ∧ b)` against `(a ⊗ b')'`.
    #[default]
    Audit,
    /// Compute one expression per operation.
    Fast,
}

/// A lattice effect algebra. Construction runs the full effect-algebra audit
/// and tabulates the Sasaki product and arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lea {
    weak: WeakLea,
    product: Vec<Elem>,
    arrow: Vec<Elem>,
}

/// Sharp elements `S(E)`, compatibility center `B(E)` and center `C(E)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Centers {
    pub sharp: Vec<String>,
    pub compatible_center: Vec<String>,
    pub center: Vec<String>,
}

impl Lea {
    pub fn new(alg: PartialAlgebra) -> Result<Self, AlgebraError> {
        Self::with_mode(alg, SasakiMode::Audit)
    }

    pub fn with_mode(alg: PartialAlgebra, mode: SasakiMode) -> Result<Self, AlgebraError> {
        let report = audit_effect_axioms(&alg);
        if !report.all_pass() {
            return Err(AlgebraError::NotALea(report.summary));
        }
        let order = derive_order(&alg)?;
        if !order.has_involution() {
            return Err(AlgebraError::NotALea("orthosupplement map is not an involution".into()));
        }
        let weak = WeakLea::new(alg, order)?;
        let n = weak.size();
        let mut product = Vec::with_capacity(n * n);
        let mut arrow = Vec::with_capacity(n * n);
        for a in weak.elems() {
            for b in weak.elems() {
                let inconsistent = |detail: &str| AlgebraError::InconsistentSasaki {
                    a: weak.label(a).to_string(),
                    b: weak.label(b).to_string(),
                    detail: detail.to_string(),
                };
                let p = weak
                    .sasaki_product(a, b)
                    .ok_or_else(|| inconsistent("a' ⊕ (a ∧ b') undefined"))?;
                let r = weak
                    .sasaki_arrow(a, b)
                    .ok_or_else(|| inconsistent("a' ⊕ (a ∧ b) undefined"))?;
                if mode == SasakiMode::Audit {
                    let m = weak.meet(a, weak.inv(b));
                    let phi = unique_difference(weak.algebra(), a, m)
                        .ok_or_else(|| inconsistent("a ⊖ (a ∧ b') undefined"))?;
                    if phi != p {
                        return Err(inconsistent("a ⊖ (a ∧ b') differs from (a' ⊕ (a ∧ b'))'"));
                    }
                    let via_product = weak.sasaki_product(a, weak.inv(b)).map(|x| weak.inv(x));
                    if via_product != Some(r) {
                        return Err(inconsistent("a' ⊕ (a ∧ b) differs from (a ⊗ b')'"));
                    }
                }
                product.push(p);
                arrow.push(r);
            }
        }
        Ok(Lea { weak, product, arrow })
    }

    /// Builds the effect algebra of `w` and checks that its induced order and
    /// orthosupplement agree with the lattice `w` was presented with.
    pub fn from_weak(w: &WeakLea) -> Result<Self, AlgebraError> {
        let lea = Lea::new(w.algebra().clone())?;
        if lea.order().leq_table() != w.order().leq_table() {
            return Err(AlgebraError::NotALea(
                "induced order differs from the presented lattice".into(),
            ));
        }
        if lea.order().involution() != w.order().involution() {
            return Err(AlgebraError::NotALea(
                "orthosupplement differs from the presented involution".into(),
            ));
        }
        Ok(lea)
    }

    pub fn as_weak(&self) -> &WeakLea {
        &self.weak
    }

    pub fn algebra(&self) -> &PartialAlgebra {
        self.weak.algebra()
    }

    pub fn order(&self) -> &OrderStructure {
        self.weak.order()
    }

    pub fn size(&self) -> usize {
        self.weak.size()
    }

    pub fn elems(&self) -> impl DoubleEndedIterator<Item = Elem> + Clone {
        self.weak.elems()
    }

    pub fn zero(&self) -> Elem {
        self.weak.zero()
    }

    pub fn one(&self) -> Elem {
        self.weak.one()
    }

    pub fn label(&self, e: Elem) -> &str {
        self.weak.label(e)
    }

    pub fn labels(&self) -> &[String] {
        self.weak.labels()
    }

    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.algebra().elem(label)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.weak.leq(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.weak.meet(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.weak.join(a, b)
    }

    /// Orthosupplement `a'`.
    pub fn comp(&self, a: Elem) -> Elem {
        self.weak.inv(a)
    }

    pub fn oplus(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.weak.oplus(a, b)
    }

    /// `b ⊖ a`: the unique `c` with `a ⊕ c = b`.
    pub fn ominus(&self, b: Elem, a: Elem) -> Result<Elem, AlgebraError> {
        if !self.leq(a, b) {
            return Err(AlgebraError::NotBelow {
                a: self.label(a).to_string(),
                b: self.label(b).to_string(),
            });
        }
        Ok(unique_difference(self.algebra(), b, a).expect("a ≤ b in an effect algebra has a unique difference"))
    }

    /// `a ⊙ b = (a' ⊕ b')'`, defined exactly when `a' ≤ b`.
    pub fn odot(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.weak.odot(a, b)
    }

    /// Sasaki product `a ⊗ b`.
    pub fn sasaki_product(&self, a: Elem, b: Elem) -> Elem {
        self.product[a.index() * self.size() + b.index()]
    }

    /// Sasaki arrow `a →s b`.
    pub fn sasaki_arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow[a.index() * self.size() + b.index()]
    }

    /// `a ∨ b = a ⊕ (b ⊖ (a ∧ b))`.
    pub fn compatible(&self, a: Elem, b: Elem) -> bool {
        let m = self.meet(a, b);
        let diff = self.ominus(b, m).expect("a ∧ b ≤ b");
        self.oplus(a, diff) == Some(self.join(a, b))
    }

    pub fn is_sharp(&self, a: Elem) -> bool {
        self.meet(a, self.comp(a)) == self.zero()
    }

    pub fn centers(&self) -> Centers {
        let sharp: Vec<Elem> = self.elems().filter(|&a| self.is_sharp(a)).collect();
        let compat: Vec<Elem> = self
            .elems()
            .filter(|&x| self.elems().all(|y| self.compatible(x, y)))
            .collect();
        let center: Vec<Elem> = compat.iter().copied().filter(|x| sharp.contains(x)).collect();
        Centers {
            sharp: self.weak.render(&sharp),
            compatible_center: self.weak.render(&compat),
            center: self.weak.render(&center),
        }
    }

    /// Elements of `C(E)`.
    pub fn center_elems(&self) -> Vec<Elem> {
        self.elems()
            .filter(|&x| self.is_sharp(x) && self.elems().all(|y| self.compatible(x, y)))
            .collect()
    }
}

/// The `c` with `a ⊕ c = b`, when exactly one exists.
fn unique_difference(alg: &PartialAlgebra, b: Elem, a: Elem) -> Option<Elem> {
    let mut found = alg.elems().filter(|&c| alg.oplus(a, c) == Some(b));
    let first = found.next()?;
    found.next().is_none().then_some(first)
}
