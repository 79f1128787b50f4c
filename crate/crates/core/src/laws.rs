//! Exhaustive law suites over a lattice effect algebra.
//!
//! Identifiers: `e1`–`e13` for the basic effect algebra properties, `e13b`
//! and `e14`–`e19` for `⊙` (the first `⊙` law is also commonly numbered `e13`,
//! hence the suffix), `W4`–`W8`, `CI1`–`CI6` and `involutive` for
//! `(⊗, →s)`, then `divisibility`, `strong-prelinearity`,
//! `self-adjointness`, `residuation` and `SAwedge`.

use crate::algebra::{Elem, Lea};
use crate::report::{AuditReport, Law};
use crate::structure::{audit_ci, audit_derived_w, ci_from_lea};
use crate::wit;

pub fn audit_lea_laws(lea: &Lea) -> AuditReport {
    let mut report = AuditReport::new("lattice effect algebra laws");
    effect_laws(lea, &mut report);
    odot_laws(lea, &mut report);
    report.absorb(audit_derived_w(lea.as_weak()));
    report.absorb(audit_ci(&ci_from_lea(lea)));
    sasaki_laws(lea, &mut report);
    report.summary = if report.all_pass() {
        "all laws hold".to_string()
    } else {
        format!("fails {}", report.failed_laws().join(", "))
    };
    report
}

fn effect_laws(l: &Lea, report: &mut AuditReport) {
    let labels = l.labels();
    let c = |a| l.comp(a);
    let (zero, one) = (l.zero(), l.one());
    let le = |x: Option<Elem>, y: Option<Elem>| matches!((x, y), (Some(x), Some(y)) if l.leq(x, y));

    let mut e1 = Law::new("e1");
    let mut e3 = Law::new("e3");
    let mut e4 = Law::new("e4");
    for a in l.elems() {
        e1.check(c(c(a)) == a, wit![a]);
        e3.check(l.oplus(a, zero) == Some(a), wit![a]);
        e4.check(l.oplus(a, one).is_some() == (a == zero), wit![a]);
    }
    let mut e2 = Law::new("e2");
    e2.check(c(one) == zero && c(zero) == one, wit![c(one), c(zero)]);
    report.push(e1, labels);
    report.push(e2, labels);
    report.push(e3, labels);
    report.push(e4, labels);

    let mut e5 = Law::new("e5");
    let mut e6 = Law::new("e6");
    let mut e7 = Law::new("e7");
    let mut e10 = Law::new("e10");
    let mut e11 = Law::new("e11");
    for a in l.elems() {
        for b in l.elems() {
            let ab = l.oplus(a, b);
            e5.check((ab == Some(zero)) == (a == zero && b == zero), wit![a, b, ab]);
            e6.check(ab.is_some() == l.leq(a, c(b)), wit![a, b]);
            if l.leq(a, b) {
                e7.check(l.leq(c(b), c(a)), wit![a, b]);
                let inner = l.oplus(a, c(b)).map(c);
                e10.check(inner.is_some_and(|i| l.oplus(a, i).is_some()), wit![a, b, inner]);
                let got = inner.and_then(|i| l.oplus(a, i));
                e11.check(got == Some(b), wit![a, b, got]);
            }
        }
    }

    let mut e8 = Law::new("e8");
    let mut e9 = Law::new("e9");
    let mut e12 = Law::new("e12");
    let mut e13 = Law::new("e13");
    for a in l.elems() {
        for b in l.elems() {
            for x in l.elems() {
                let (ax, bx) = (l.oplus(a, x), l.oplus(b, x));
                if ax.is_some() && ax == bx {
                    e8.check(a == b, wit![a, b, x]);
                }
                if le(ax, bx) {
                    e9.check(l.leq(a, b), wit![a, b, x]);
                }
                let lhs = l.oplus(a, b) == Some(x);
                e12.check(lhs == (l.oplus(b, c(x)) == Some(c(a))), wit![a, b, x]);
                e13.check(lhs == (l.oplus(b, c(x)).map(c) == Some(a)), wit![a, b, x]);
            }
        }
    }
    for law in [e5, e6, e7, e8, e9, e10, e11, e12, e13] {
        report.push(law, labels);
    }
}

fn odot_laws(l: &Lea, report: &mut AuditReport) {
    let labels = l.labels();
    let c = |a| l.comp(a);
    let (zero, one) = (l.zero(), l.one());

    let mut e13b = Law::new("e13b");
    let mut e14 = Law::new("e14");
    let mut e15 = Law::new("e15");
    let mut e16 = Law::new("e16");
    let mut e18 = Law::new("e18");
    for a in l.elems() {
        e14.check(l.odot(a, c(a)) == Some(zero), wit![a, l.odot(a, c(a))]);
        if l.odot(a, zero).is_some() {
            e15.check(a == one, wit![a]);
        }
        e18.check((l.odot(a, a) == Some(a)) == (a == one), wit![a, l.odot(a, a)]);
        for b in l.elems() {
            let ab = l.odot(a, b);
            if let Some(ab) = ab {
                e13b.check(l.odot(b, a) == Some(ab), wit![a, b, ab, l.odot(b, a)]);
            }
            e16.check(ab.is_some() == l.leq(c(a), b), wit![a, b]);
        }
    }

    let mut e17 = Law::new("e17");
    let mut e19 = Law::new("e19");
    for a in l.elems() {
        for b in l.elems() {
            for x in l.elems() {
                let ax = l.odot(a, x);
                if ax.is_some() && ax == l.odot(b, x) {
                    e17.check(a == b, wit![a, b, x]);
                }
                let Some(bx) = l.odot(b, x) else { continue };
                let Some(lhs) = l.odot(a, bx) else { continue };
                let rhs = l.odot(a, b).and_then(|ab| l.odot(ab, x));
                e19.check(rhs == Some(lhs), wit![a, b, x]);
            }
        }
    }
    for law in [e13b, e14, e15, e16, e17, e18, e19] {
        report.push(law, labels);
    }
}

fn sasaki_laws(l: &Lea, report: &mut AuditReport) {
    let labels = l.labels();
    let c = |a| l.comp(a);
    let p = |a, b| l.sasaki_product(a, b);
    let s = |a, b| l.sasaki_arrow(a, b);

    let mut div = Law::new("divisibility");
    let mut prelin = Law::new("strong-prelinearity");
    let mut adj = Law::new("self-adjointness");
    let mut res = Law::new("residuation");
    for a in l.elems() {
        for b in l.elems() {
            for x in l.elems() {
                if l.leq(x, a) && l.leq(x, b) {
                    div.check(l.leq(x, p(a, s(a, b))), wit![a, b, x]);
                }
                let lhs = p(s(s(a, b), x), s(s(b, a), x));
                prelin.check(l.leq(lhs, x), wit![a, b, x, lhs]);
                if l.leq(p(a, b), c(x)) {
                    adj.check(l.leq(p(a, x), c(b)), wit![a, b, x]);
                }
                res.check(l.leq(p(a, x), b) == l.leq(x, s(a, b)), wit![a, x, b]);
            }
        }
    }
    for law in [div, prelin, adj, res] {
        report.push(law, labels);
    }

    let mut wedge = Law::new("SAwedge");
    for a in l.elems() {
        for b in l.elems() {
            let m = l.meet(a, b);
            let forms = [p(a, s(a, b)), p(b, s(b, a)), c(s(a, c(s(a, b)))), c(s(b, c(s(b, a))))];
            wedge.check(forms.iter().all(|&f| f == m), wit![a, b, m]);
        }
    }
    report.push(wedge, labels);
}
