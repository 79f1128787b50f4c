use thiserror::Error;

use crate::algebra::{Elem, Lea, OrderStructure};
use crate::report::{AuditReport, Law};
use crate::wit;

/// Largest carrier for which [`search_pt_implications`] enumerates arrows.
pub const MAX_PT_SEARCH: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PtError {
    #[error("not a weak lattice effect algebra context: {0}")]
    NotWeakLEAContext(String),
    #[error("exhaustive pt-implication search is limited to {MAX_PT_SEARCH} elements, got {0}")]
    TooLarge(usize),
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
}

/// An arrow with the partial t-norm it is tied to and, optionally, the
/// companion operation for clause (R). Tables are row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtImplication {
    pub arrow: Vec<Elem>,
    pub delta: Vec<Option<Elem>>,
    pub companion: Option<Vec<Elem>>,
}

impl PtImplication {
    /// `(→s, ⊙, ⊗)`.
    pub fn sasaki(lea: &Lea) -> Self {
        let pairs: Vec<(Elem, Elem)> = lea.elems().flat_map(|a| lea.elems().map(move |b| (a, b))).collect();
        PtImplication {
            arrow: pairs.iter().map(|&(a, b)| lea.sasaki_arrow(a, b)).collect(),
            delta: pairs.iter().map(|&(a, b)| lea.odot(a, b)).collect(),
            companion: Some(pairs.iter().map(|&(a, b)| lea.sasaki_product(a, b)).collect()),
        }
    }

    fn check_shape(&self, n: usize) -> Result<(), PtError> {
        let lens = [
            Some(self.arrow.len()),
            Some(self.delta.len()),
            self.companion.as_ref().map(Vec::len),
        ];
        match lens.into_iter().flatten().find(|&l| l != n * n) {
            Some(found) => Err(PtError::TableShape { expected: n * n, found }),
            None => Ok(()),
        }
    }
}

/// Clauses (i)–(iv) of a partial t-norm on a bounded lattice.
pub fn audit_partial_tnorm(labels: &[String], order: &OrderStructure, delta: &[Option<Elem>]) -> AuditReport {
    let mut report = AuditReport::new("partial t-norm");
    let n = order.size();
    let d = |a: Elem, b: Elem| delta[a.index() * n + b.index()];
    let one = order.top().expect("bounded lattice");

    let mut unit = Law::new("unit");
    for a in order.elems() {
        unit.check(d(one, a) == Some(a), wit![a, d(one, a)]);
    }
    report.push(unit, labels);

    let mut comm = Law::new("commutativity");
    for a in order.elems() {
        for b in order.elems() {
            if let Some(ab) = d(a, b) {
                comm.check(d(b, a) == Some(ab), wit![a, b, ab, d(b, a)]);
            }
        }
    }
    report.push(comm, labels);

    let mut assoc = Law::new("associativity");
    for a in order.elems() {
        for b in order.elems() {
            for c in order.elems() {
                let Some(bc) = d(b, c) else { continue };
                let Some(lhs) = d(a, bc) else { continue };
                let rhs = d(a, b).and_then(|ab| d(ab, c));
                assoc.check(rhs == Some(lhs), wit![a, b, c]);
            }
        }
    }
    report.push(assoc, labels);

    let mut mono = Law::new("monotonicity");
    for a in order.elems() {
        for b in order.elems().filter(|&b| order.leq(a, b)) {
            for c in order.elems() {
                for e in order.elems().filter(|&e| order.leq(c, e)) {
                    if let (Some(ac), Some(be)) = (d(a, c), d(b, e)) {
                        mono.check(order.leq(ac, be), wit![a, b, c, e]);
                    }
                }
            }
        }
    }
    report.push(mono, labels);

    report.summary = if report.all_pass() {
        "partial t-norm".to_string()
    } else {
        format!("not a partial t-norm: fails {}", report.failed_laws().join(", "))
    };
    report
}

/// E, MPpt, MTpt and NGpt, plus (R) when a companion is supplied. The order
/// must carry an involution.
pub fn audit_weak_pt_implication(
    labels: &[String],
    order: &OrderStructure,
    pt: &PtImplication,
) -> Result<AuditReport, PtError> {
    let n = order.size();
    pt.check_shape(n)?;
    let inv = order
        .involution()
        .ok_or_else(|| PtError::NotWeakLEAContext("the lattice carries no involution".into()))?;
    let i = |a: Elem| inv[a.index()];
    let arrow = |a: Elem, b: Elem| pt.arrow[a.index() * n + b.index()];
    let d = |a: Elem, b: Elem| pt.delta[a.index() * n + b.index()];
    let one = order.top().expect("bounded lattice");

    let mut report = AuditReport::new("pt-implication");
    let tnorm = audit_partial_tnorm(labels, order, &pt.delta);
    let bad = tnorm.failed_laws().join(", ");
    report.push_flag("partial-t-norm", tnorm.all_pass(), (!bad.is_empty()).then_some(bad));

    let mut e = Law::new("E");
    let mut mp = Law::new("MPpt");
    let mut mt = Law::new("MTpt");
    let mut ng = Law::new("NGpt");
    for a in order.elems() {
        for b in order.elems() {
            let ab = arrow(a, b);
            e.check(order.leq(a, b) == (ab == one), wit![a, b, ab]);
            if let Some(v) = d(a, ab) {
                mp.check(order.leq(v, b), wit![a, b, v]);
            }
            if let Some(v) = d(i(b), ab) {
                mt.check(order.leq(v, i(a)), wit![a, b, v]);
            }
            if let Some(v) = d(a, i(b)) {
                ng.check(order.leq(v, i(ab)), wit![a, b, v]);
            }
        }
    }
    for law in [e, mp, mt, ng] {
        report.push(law, labels);
    }

    if let Some(comp) = &pt.companion {
        let mut r = Law::new("R");
        for a in order.elems() {
            for b in order.elems() {
                for c in order.elems() {
                    let lhs = order.leq(comp[a.index() * n + c.index()], b);
                    r.check(lhs == order.leq(c, arrow(a, b)), wit![a, b, c]);
                }
            }
        }
        report.push(r, labels);
    }

    let weak = ["partial-t-norm", "E", "MPpt", "MTpt", "NGpt"]
        .iter()
        .all(|k| report.passed(k) == Some(true));
    report.summary = match (weak, report.passed("R")) {
        (true, Some(true)) => "pt-implication".to_string(),
        (true, _) => "weak pt-implication".to_string(),
        (false, _) => format!("not a weak pt-implication: fails {}", report.failed_laws().join(", ")),
    };
    Ok(report)
}

/// The weak pt-implication audit over a lattice effect algebra, followed by
/// a comparison with the Sasaki arrow: `strictness` (`a → b ≤ a →s b`),
/// `central` (`a → b = a' ∨ b` on central elements) and `sasaki`
/// (`→` equals `→s`).
pub fn audit_pt_implication(lea: &Lea, pt: &PtImplication) -> Result<AuditReport, PtError> {
    let mut report = audit_weak_pt_implication(lea.labels(), lea.order(), pt)?;
    let labels = lea.labels();
    let n = lea.size();
    let arrow = |a: Elem, b: Elem| pt.arrow[a.index() * n + b.index()];

    let mut strict = Law::new("strictness");
    let mut sasaki = Law::new("sasaki");
    for a in lea.elems() {
        for b in lea.elems() {
            let s = lea.sasaki_arrow(a, b);
            strict.check(lea.leq(arrow(a, b), s), wit![a, b, arrow(a, b), s]);
            sasaki.check(arrow(a, b) == s, wit![a, b, arrow(a, b), s]);
        }
    }
    report.push(strict, labels);

    let center = lea.center_elems();
    let mut central = Law::new("central");
    for &a in &center {
        for &b in &center {
            let want = lea.join(lea.comp(a), b);
            central.check(arrow(a, b) == want, wit![a, b, arrow(a, b), want]);
        }
    }
    report.push(central, labels);
    report.push(sasaki, labels);
    Ok(report)
}

/// Every partial operation on the lattice passing [`audit_partial_tnorm`].
/// The row and column of `1` are forced by the unit clause and
/// commutativity; the remaining entries range over the carrier and
/// "undefined".
pub fn partial_tnorms(order: &OrderStructure) -> Vec<Vec<Option<Elem>>> {
    let n = order.size();
    let one = order.top().expect("bounded lattice");
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut base = vec![None; n * n];
    for a in order.elems() {
        base[one.index() * n + a.index()] = Some(a);
        base[a.index() * n + one.index()] = Some(a);
    }
    let free: Vec<usize> = (0..n * n)
        .filter(|&i| i / n != one.index() && i % n != one.index())
        .collect();
    let mut out = Vec::new();
    let choices = n + 1;
    let total = choices.pow(free.len() as u32);
    for code in 0..total {
        let mut t = base.clone();
        let mut c = code;
        for &slot in &free {
            let v = c % choices;
            c /= choices;
            t[slot] = (v < n).then(|| Elem::new(v));
        }
        if audit_partial_tnorm(&labels, order, &t).all_pass() {
            out.push(t);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtSearch {
    /// Arrow tables examined: `n^(n·n)`.
    pub examined: usize,
    /// Arrows that are weak pt-implications for some partial t-norm.
    pub weak: usize,
    /// Full pt-implications, each with a witnessing t-norm and its companion.
    pub found: Vec<PtImplication>,
}

/// Enumerates every total arrow table on a lattice effect algebra of at
/// most [`MAX_PT_SEARCH`] elements and keeps the pt-implications.
///
/// The companion for (R) is forced when it exists: `a ⊛ c` must be the least
/// `b` with `c ≤ a → b`.
pub fn search_pt_implications(lea: &Lea) -> Result<PtSearch, PtError> {
    let n = lea.size();
    if n > MAX_PT_SEARCH {
        return Err(PtError::TooLarge(n));
    }
    let order = lea.order();
    let tnorms = partial_tnorms(order);
    let labels = lea.labels();
    let cells = n * n;
    let examined = n.pow(cells as u32);
    let mut weak = 0;
    let mut found = Vec::new();
    for code in 0..examined {
        let mut c = code;
        let arrow: Vec<Elem> = (0..cells)
            .map(|_| {
                let v = c % n;
                c /= n;
                Elem::new(v)
            })
            .collect();
        let e_holds = lea.elems().all(|a| {
            lea.elems()
                .all(|b| lea.leq(a, b) == (arrow[a.index() * n + b.index()] == lea.one()))
        });
        if !e_holds {
            continue;
        }
        let Some(delta) = tnorms.iter().find(|d| {
            let pt = PtImplication {
                arrow: arrow.clone(),
                delta: (*d).clone(),
                companion: None,
            };
            audit_weak_pt_implication(labels, order, &pt).is_ok_and(|r| r.all_pass())
        }) else {
            continue;
        };
        weak += 1;
        if let Some(companion) = forced_companion(order, &arrow) {
            found.push(PtImplication {
                arrow,
                delta: delta.clone(),
                companion: Some(companion),
            });
        }
    }
    Ok(PtSearch { examined, weak, found })
}

/// `a ⊛ c = min { b | c ≤ a → b }`, provided that set is exactly the
/// up-set of its minimum for every `a, c`.
fn forced_companion(order: &OrderStructure, arrow: &[Elem]) -> Option<Vec<Elem>> {
    let n = order.size();
    let mut out = Vec::with_capacity(n * n);
    for a in order.elems() {
        for c in order.elems() {
            let set: Vec<Elem> = order
                .elems()
                .filter(|&b| order.leq(c, arrow[a.index() * n + b.index()]))
                .collect();
            let min = set.iter().copied().find(|&m| set.iter().all(|&b| order.leq(m, b)))?;
            if order.elems().any(|b| order.leq(min, b) != set.contains(&b)) {
                return None;
            }
            out.push(min);
        }
    }
    Some(out)
}
