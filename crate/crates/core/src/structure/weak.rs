use crate::algebra::{audit_effect_axioms, Elem, Presentation, WeakLea};
use crate::report::{AuditReport, Law, LawVerdict, WitnessItem, MAX_WITNESSES};
use crate::wit;

pub const RD_LAWS: [&str; 8] = ["RD1", "RD2", "RD3", "RD4", "RD5", "RD6", "RD7", "RD8"];

/// Builds the weak structure from a presentation and audits it. A
/// presentation whose order is not a bounded involutive lattice gets a single
/// failing `involutive-lattice` verdict.
pub fn audit_weak_presentation(p: &Presentation) -> AuditReport {
    match WeakLea::from_presentation(p) {
        Ok(w) => audit_weak_lea(&w),
        Err(e) => {
            let mut report = AuditReport::new("weak lattice effect algebra");
            report.push_flag("involutive-lattice", false, Some(e.to_string()));
            report.summary = "not a bounded involutive lattice".to_string();
            report
        }
    }
}

/// Definedness (`a ⊕ b` defined iff `a ≤ b'`) and W1–W3.
pub fn audit_weak_lea(w: &WeakLea) -> AuditReport {
    let labels = w.labels();
    let mut report = AuditReport::new("weak lattice effect algebra");
    report.push_flag("involutive-lattice", true, None);

    let mut def = Law::new("definedness");
    for a in w.elems() {
        for b in w.elems() {
            let defined = w.oplus(a, b).is_some();
            def.check(defined == w.leq(a, w.inv(b)), wit![a, b]);
        }
    }
    report.push(def, labels);

    let mut w1 = Law::new("W1");
    for a in w.elems() {
        for b in w.elems() {
            if let Some(ab) = w.oplus(a, b) {
                w1.check(w.oplus(b, a) == Some(ab), wit![a, b, ab, w.oplus(b, a)]);
            }
        }
    }
    report.push(w1, labels);

    let mut w2 = Law::new("W2");
    for a in w.elems() {
        for b in w.elems() {
            for c in w.elems() {
                let Some(bc) = w.oplus(b, c) else { continue };
                let Some(lhs) = w.oplus(a, bc) else { continue };
                let rhs = w.oplus(a, b).and_then(|ab| w.oplus(ab, c));
                w2.check(rhs == Some(lhs), wit![a, b, c]);
            }
        }
    }
    report.push(w2, labels);

    let mut w3 = Law::new("W3");
    for a in w.elems() {
        let s = w.oplus(a, w.zero());
        w3.check(s == Some(a), wit![a, s]);
    }
    report.push(w3, labels);

    report.summary = if report.all_pass() {
        "weak lattice effect algebra".to_string()
    } else {
        format!(
            "not a weak lattice effect algebra: fails {}",
            report.failed_laws().join(", ")
        )
    };
    report
}

/// W4–W8. These follow from W1–W3, so a failure on a structure that passes
/// [`audit_weak_lea`] is a bug in this crate.
pub fn audit_derived_w(w: &WeakLea) -> AuditReport {
    let labels = w.labels();
    let mut report = AuditReport::new("derived weak laws");
    let le = |x: Option<Elem>, y: Elem| x.is_some_and(|x| w.leq(x, y));

    let mut w4 = Law::new("W4");
    for a in w.elems() {
        if w.oplus(a, w.one()).is_some() {
            w4.check(a == w.zero(), wit![a]);
        }
    }
    report.push(w4, labels);

    let mut w5 = Law::new("W5");
    for a in w.elems() {
        for b in w.elems() {
            let Some(c) = w.oplus(a, b) else { continue };
            let cp = w.inv(c);
            let holds = w.leq(a, c) && w.leq(b, c) && le(w.oplus(a, cp), w.inv(b)) && le(w.oplus(b, cp), w.inv(a));
            w5.check(holds, wit![a, b, c]);
        }
    }
    report.push(w5, labels);

    let mut w6 = Law::new("W6");
    for a in w.elems() {
        match w.oplus(a, w.inv(a)) {
            Some(r) => w6.check(w.leq(w.inv(r), a) && w.leq(a, r), wit![a, r]),
            None => w6.check(false, wit![a, None::<Elem>]),
        }
    }
    report.push(w6, labels);

    let mut w7 = Law::new("W7");
    for a in w.elems() {
        for b in w.elems() {
            let lhs = w.leq(a, b) && w.oplus(a, w.inv(b)) != Some(w.one());
            let rhs = w.elems().any(|c| c != w.zero() && le(w.oplus(a, c), b));
            w7.check(lhs == rhs, wit![a, b]);
        }
    }
    report.push(w7, labels);

    let mut w8 = Law::new("W8");
    for a in w.elems() {
        for b in w.elems() {
            for c in w.elems() {
                let lhs = le(w.oplus(a, c), b);
                let rhs = le(w.oplus(w.inv(b), c), w.inv(a));
                w8.check(lhs == rhs, wit![a, b, c]);
            }
        }
    }
    report.push(w8, labels);

    report.summary = if report.all_pass() {
        "W4-W8 hold".to_string()
    } else {
        report
            .notes
            .push("W4-W8 are consequences of W1-W3; a failure here on a weak lattice effect algebra is a bug".into());
        format!("fails {}", report.failed_laws().join(", "))
    };
    report
}

/// Evaluates RD1–RD8 independently of one another. The Sasaki operations are
/// computed from the lattice and the partial `⊕` by their defining formulas,
/// which are defined everywhere in a weak lattice effect algebra.
pub fn rd_profile(w: &WeakLea) -> AuditReport {
    let labels = w.labels();
    let mut report = AuditReport::new("RD profile");
    let prod = |a, b| w.sasaki_product(a, b).expect("a ∧ b' ≤ a, so a' ⊕ (a ∧ b') is defined");
    let arrow = |a, b| w.sasaki_arrow(a, b).expect("a ∧ b ≤ a, so a' ⊕ (a ∧ b) is defined");

    report.verdicts.insert("RD1".into(), rd1(w));

    let mut rd2 = Law::new("RD2");
    for a in w.elems() {
        for x in w.elems() {
            for b in w.elems() {
                let lhs = w.leq(prod(a, x), b);
                let rhs = w.leq(x, arrow(a, b));
                rd2.check(lhs == rhs, wit![a, x, b]);
            }
        }
    }
    report.push(rd2, labels);

    let mut rd3 = Law::new("RD3");
    for a in w.elems() {
        for b in w.elems() {
            for x in w.elems() {
                let ap = w.inv(a);
                let l = w.oplus(ap, w.meet(a, w.inv(x)));
                let r = w.oplus(ap, w.meet(a, b));
                let lhs = l.is_some_and(|l| w.leq(w.inv(b), l));
                let rhs = r.is_some_and(|r| w.leq(x, r));
                rd3.check(lhs == rhs, wit![a, b, x]);
            }
        }
    }
    report.push(rd3, labels);

    let mut rd4 = Law::new("RD4");
    for a in w.elems() {
        for b in w.elems() {
            rd4.check(w.leq(a, b) == (arrow(a, b) == w.one()), wit![a, b, arrow(a, b)]);
        }
    }
    report.push(rd4, labels);

    let mut rd5 = Law::new("RD5");
    for a in w.elems() {
        for b in w.elems() {
            let lhs = w.oplus(a, b) == Some(w.one());
            rd5.check(lhs == (b == w.inv(a)), wit![a, b, w.oplus(a, b)]);
        }
    }
    report.push(rd5, labels);

    let mut rd6 = Law::new("RD6");
    for a in w.elems() {
        for b in w.elems() {
            let Some(c) = w.oplus(a, b) else { continue };
            let got = w.oplus(a, w.inv(c));
            rd6.check(got == Some(w.inv(b)), wit![a, b, c, got]);
        }
    }
    report.push(rd6, labels);

    let mut rd7 = Law::new("RD7");
    for a in w.elems() {
        for b in w.elems() {
            if !w.leq(a, b) {
                continue;
            }
            let got = w.odot(w.inv(a), b).and_then(|d| w.oplus(a, d));
            rd7.check(got == Some(b), wit![a, b, got]);
        }
    }
    report.push(rd7, labels);

    let mut rd8 = Law::new("RD8");
    for a in w.elems() {
        for b in w.elems() {
            let solutions = w.elems().filter(|&c| w.oplus(a, c) == Some(b)).count();
            rd8.check(w.leq(a, b) == (solutions == 1), wit![a, b]);
        }
    }
    report.push(rd8, labels);

    report.summary = match rd_uniformity(&report) {
        Some(true) => "all RD clauses hold".to_string(),
        Some(false) => "all RD clauses fail".to_string(),
        None => format!("mixed RD profile: fails {}", report.failed_laws().join(", ")),
    };
    report
}

/// `Some(v)` when every RD verdict equals `v`, `None` for a mixed profile.
pub fn rd_uniformity(report: &AuditReport) -> Option<bool> {
    let first = report.passed(RD_LAWS[0])?;
    RD_LAWS.iter().all(|k| report.passed(k) == Some(first)).then_some(first)
}

/// RD1: the partial algebra alone is a lattice effect algebra and its
/// orthosupplement is the given involution.
fn rd1(w: &WeakLea) -> LawVerdict {
    let audit = audit_effect_axioms(w.algebra());
    let mut tested = 0;
    let mut witnesses: Vec<Vec<String>> = Vec::new();
    let mut fail = |tuple: Vec<String>| {
        if witnesses.len() < MAX_WITNESSES {
            witnesses.push(tuple);
        }
    };
    let mut violations = 0;
    for (id, v) in &audit.verdicts {
        tested += 1;
        if !v.pass {
            violations += 1;
            let mut tuple = vec![id.clone()];
            tuple.extend(v.witnesses.first().into_iter().flatten().cloned());
            fail(tuple);
        }
    }
    for a in w.elems() {
        tested += 1;
        let comps: Vec<Elem> = w.elems().filter(|&x| w.oplus(a, x) == Some(w.one())).collect();
        if comps != [w.inv(a)] {
            violations += 1;
            let mut tuple: Vec<WitnessItem> = vec![WitnessItem::Tag("orthosupplement"), a.into(), w.inv(a).into()];
            tuple.extend(comps.iter().map(|&c| WitnessItem::from(c)));
            fail(
                tuple
                    .into_iter()
                    .map(|t| match t {
                        WitnessItem::Elem(e) => w.label(e).to_string(),
                        WitnessItem::Tag(s) => s.to_string(),
                        WitnessItem::Undefined => "undefined".to_string(),
                    })
                    .collect(),
            );
        }
    }
    LawVerdict {
        pass: violations == 0,
        tested,
        violations,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{numeric_labels, OrderStructure, PartialAlgebra};

    /// Łukasiewicz chain `0 < 1 < ... < n-1` with truncated-free addition.
    fn chain(n: usize) -> WeakLea {
        let top = n - 1;
        let alg = PartialAlgebra::from_fn(numeric_labels(n), Elem::new(0), Elem::new(top), |a, b| {
            (a.index() + b.index() <= top).then(|| Elem::new(a.index() + b.index()))
        })
        .unwrap();
        let p = Presentation::bare(alg);
        WeakLea::from_presentation(&p).unwrap()
    }

    #[test]
    fn chain_passes_everything() {
        for n in 2..6 {
            let w = chain(n);
            assert!(audit_weak_lea(&w).all_pass());
            assert!(audit_derived_w(&w).all_pass());
            let rd = rd_profile(&w);
            assert_eq!(rd_uniformity(&rd), Some(true), "{}", rd.to_json());
        }
    }

    #[test]
    fn deleting_an_entry_breaks_definedness() {
        let w = chain(4);
        let alg = w.algebra().with_entry(Elem::new(1), Elem::new(2), None);
        let broken = WeakLea::new(alg, w.order().clone()).unwrap();
        let r = audit_weak_lea(&broken);
        assert_eq!(r.passed("definedness"), Some(false));
        assert_eq!(r.witnesses("definedness")[0], vec!["1", "2"]);
    }

    #[test]
    fn bad_order_is_reported_not_panicked() {
        let alg = PartialAlgebra::from_fn(numeric_labels(3), Elem::new(0), Elem::new(2), |_, _| None).unwrap();
        let mut p = Presentation::bare(alg);
        let o = OrderStructure::from_pairs(3, &[(Elem::new(0), Elem::new(1)), (Elem::new(0), Elem::new(2))]).unwrap();
        p.order = Some(o.leq_table().to_vec());
        let r = audit_weak_presentation(&p);
        assert_eq!(r.passed("involutive-lattice"), Some(false));
    }
}
