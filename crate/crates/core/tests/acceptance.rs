//! Acceptance suite. Runs every criterion, prints one `PASS`/`FAIL` line per
//! criterion with the measured runtime, and exits non-zero if any fails.
//!
//! Runtime limits are pinned per criterion and count towards the verdict.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lel_core::algebra::{audit_presentation, AlgebraFile, Lea, WeakLea};
use lel_core::kernel::{
    check_derivation, derived_rule_audit, harness_instance, instantiate_schema, mutation_fixtures, rule_harness,
    soundness_audit, Corpus, CorpusModel, Derivation, HarnessConfig, AXIOM_IDS, RULE_IDS, SHIPPED,
};
use lel_core::laws::audit_lea_laws;
use lel_core::logic::parse_formula;
use lel_core::par::Exec;
use lel_core::search::{
    boolean, canonical_library, enumerate, find_countermodel, mo, mv_chain, CountermodelTask, EnumerationTask,
    TargetClass,
};
use lel_core::structure::{
    audit_cw, audit_pt_implication, audit_weak_presentation, ci_from_lea, lea_from_ci, rd_profile, rd_uniformity,
    search_pt_implications, PtImplication,
};

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

const HARNESS_INSTANCES: usize = 1000;
const HARNESS_SEED: u64 = 20_240_601;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn lea_corpus_size_5() -> Vec<(String, Lea)> {
    let mut out = Vec::new();
    for n in 2..=5 {
        let found = enumerate(&EnumerationTask::new(TargetClass::Lea, n)).unwrap();
        for (k, e) in found.algebras.iter().enumerate() {
            out.push((format!("lea_{n}_{k}"), Lea::from_weak(&e.algebra).unwrap()));
        }
    }
    out
}

/// Enumerated lattice effect algebras of size at most 5, `mv_chain(n)` for
/// `n <= 10`, `boolean(8)` and `mo(3)`.
fn law_corpus() -> Vec<(String, Lea)> {
    let mut out = lea_corpus_size_5();
    for n in 1..=10 {
        out.push((format!("mv_chain_{n}"), Lea::new(mv_chain(n)).unwrap()));
    }
    out.push(("boolean_8".into(), Lea::new(boolean(3).algebra).unwrap()));
    out.push(("mo_3".into(), Lea::new(mo(3).algebra).unwrap()));
    out
}

fn fig1_examples() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, weak_claim, tag, witness) in [
        ("fig1a", true, "uniqueness", ["a", "b", "a'"]),
        ("fig1b", true, "orthosupplement", ["a", "a'", "c"]),
    ] {
        let p = match AlgebraFile::load(data(&format!("algebras/{name}.json"))).and_then(|f| f.to_presentation()) {
            Ok(p) => p,
            Err(e) => return Outcome::new(false, format!("{name} does not load: {e}")),
        };
        let weak = audit_weak_presentation(&p);
        if weak.all_pass() != weak_claim {
            pass = false;
            let first = weak.failed_laws().first().map(|l| l.to_string()).unwrap_or_default();
            let w = weak.witnesses(&first).first().cloned().unwrap_or_default();
            notes.push(format!("{name}: weak-lea audit fails {first} at ({})", w.join(", ")));
        }
        let lea = audit_presentation(&p);
        let want: Vec<String> = std::iter::once(tag.to_string())
            .chain(witness.iter().map(|s| s.to_string()))
            .collect();
        if lea.all_pass() || !lea.witnesses("E3").contains(&want) {
            pass = false;
            notes.push(format!("{name}: lea audit lacks E3 witness ({})", want.join(", ")));
        } else {
            notes.push(format!("{name}: lea fails E3 ({})", want.join(", ")));
        }
    }
    Outcome::new(pass, notes.join("; "))
}

fn rd_uniform() -> Outcome {
    let mut subjects: Vec<(String, WeakLea)> = Vec::new();
    for n in 2..=5 {
        let found = enumerate(&EnumerationTask::new(TargetClass::WeakLea, n)).unwrap();
        for (k, e) in found.algebras.into_iter().enumerate() {
            subjects.push((format!("weak_{n}_{k}"), e.algebra));
        }
    }
    for e in canonical_library() {
        subjects.push((e.name.clone(), WeakLea::from_presentation(&e.presentation).unwrap()));
    }
    let verdicts = Exec::default().map(&subjects, |(name, w)| (name.clone(), rd_uniformity(&rd_profile(w))));
    let mixed: Vec<&str> = verdicts
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(n, _)| n.as_str())
        .collect();
    let holds = verdicts.iter().filter(|(_, v)| *v == Some(true)).count();
    Outcome::new(
        mixed.is_empty(),
        format!(
            "{} algebras, {holds} all-hold, {} all-fail, mixed: [{}]",
            verdicts.len(),
            verdicts.len() - holds - mixed.len(),
            mixed.join(", ")
        ),
    )
}

fn law_suites() -> Outcome {
    let corpus = law_corpus();
    let failures = Exec::default().map(&corpus, |(name, lea)| {
        let r = audit_lea_laws(lea);
        (!r.all_pass()).then(|| {
            let laws: Vec<String> = r
                .failed_laws()
                .iter()
                .map(|l| {
                    format!(
                        "{l} at ({})",
                        r.witnesses(l).first().map(|w| w.join(", ")).unwrap_or_default()
                    )
                })
                .collect();
            format!("{name}: {}", laws.join(", "))
        })
    });
    let failures: Vec<String> = failures.into_iter().flatten().collect();
    Outcome::new(
        failures.is_empty(),
        format!("{} algebras, violations in [{}]", corpus.len(), failures.join("; ")),
    )
}

fn ci_round_trip() -> Outcome {
    let corpus = law_corpus();
    let mut bad = Vec::new();
    for (name, lea) in &corpus {
        let ci = ci_from_lea(lea);
        if !audit_cw(&ci).all_pass() {
            bad.push(format!("{name}: cw"));
        }
        match lea_from_ci(&ci) {
            Ok(back) if back.algebra().table() == lea.algebra().table() => {}
            Ok(_) => bad.push(format!("{name}: table differs")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{} algebras, failures [{}]", corpus.len(), bad.join("; ")),
    )
}

fn calculus() -> Outcome {
    let mut bad = Vec::new();
    for s in SHIPPED {
        let path = data(&format!("derivations/{}.json", s.name));
        let d = match Derivation::load(&path) {
            Ok(d) => d,
            Err(e) => {
                bad.push(format!("{}: {e}", s.name));
                continue;
            }
        };
        if !check_derivation(&d).accepted || !s.proves_its_statement() {
            bad.push(format!("{}: not accepted", s.name));
        }
    }
    let fixtures = mutation_fixtures();
    for s in SHIPPED {
        if !fixtures.iter().any(|m| m.base == format!("{}.json", s.name)) {
            bad.push(format!("{}: no mutation fixture", s.name));
        }
    }
    for m in &fixtures {
        let d = Derivation::load(data(&format!("derivations/mutations/{}", m.file))).unwrap();
        let r = check_derivation(&d);
        if r.accepted || r.first_rejected != Some(m.rejected_at) {
            bad.push(format!(
                "{}: rejected at {:?}, want {}",
                m.file, r.first_rejected, m.rejected_at
            ));
        }
    }
    let corpus = Corpus::standard(5);
    let mut lines = 0;
    let mut valuations = 0;
    for s in SHIPPED {
        let d = s.derivation();
        let audit = if d.hypotheses.is_empty() {
            soundness_audit(&d, &corpus, Exec::default())
        } else {
            derived_rule_audit(&d, &corpus, Exec::default())
        };
        match audit {
            Ok(r) if r.sound() => {
                lines += r.lines;
                valuations += r.valuations;
            }
            Ok(r) => bad.push(format!("{}: {} invalid lines", s.name, r.invalid)),
            Err(e) => bad.push(format!("{}: {e}", s.name)),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} derivations, {} mutations, {lines} lines audited over {valuations} (model, valuation) pairs in {} models; failures [{}]",
            SHIPPED.len(),
            fixtures.len(),
            corpus.models.len(),
            bad.join("; ")
        ),
    )
}

fn harness_corpus() -> Corpus {
    let mut c = Corpus::standard(5);
    for (name, lea) in [
        ("mv_chain_10", Lea::new(mv_chain(10)).unwrap()),
        ("boolean_8", Lea::new(boolean(3).algebra).unwrap()),
        ("mo_3", Lea::new(mo(3).algebra).unwrap()),
    ] {
        c.models.push(CorpusModel {
            name: name.into(),
            lea: lea.into(),
        });
    }
    c
}

fn harness_config() -> HarnessConfig {
    HarnessConfig {
        instances: HARNESS_INSTANCES,
        seed: HARNESS_SEED,
        ..HarnessConfig::default()
    }
}

fn rule_soundness() -> Outcome {
    let corpus = harness_corpus();
    let cfg = harness_config();
    let mut bad = Vec::new();
    let mut stats = Vec::new();
    for id in AXIOM_IDS.iter().chain(&RULE_IDS) {
        let r = rule_harness(id, &corpus, &cfg).unwrap();
        if !r.sound() {
            bad.push(format!(
                "{id}: {} model / {} pointwise violations, e.g. {}",
                r.model_violations,
                r.pointwise_violations,
                serde_json::to_string(&r.examples.first()).unwrap()
            ));
        }
        if RULE_IDS.contains(id) {
            stats.push(format!("{id} {}/{}", r.premises_valid, r.checks));
            if r.premises_valid == 0 {
                bad.push(format!("{id}: premises never valid, check is vacuous"));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{HARNESS_INSTANCES} instances x {} models per item; premise-valid (instance, model) pairs: {}; failures [{}]",
            corpus.models.len(),
            stats.join(", "),
            bad.join("; ")
        ),
    )
}

fn countermodels() -> Outcome {
    let cfg = harness_config();
    let task = CountermodelTask {
        exec: Exec::Sequential,
        ..CountermodelTask::new(5)
    };
    let mut formulas = Vec::new();
    for id in AXIOM_IDS {
        for i in 0..HARNESS_INSTANCES {
            let subst = harness_instance(id, i, &cfg).unwrap();
            for f in instantiate_schema(id, &subst).unwrap() {
                formulas.push((id, f));
            }
        }
    }
    let hits = Exec::default().map(&formulas, |(id, f)| {
        let found = find_countermodel(f, &task).unwrap();
        found.map(|c| format!("{id}: {f} = {}", c.model.lea().label(c.value)))
    });
    let hits: Vec<String> = hits.into_iter().flatten().collect();
    let distributivity = parse_formula("(p & (q | r)) -> ((p & q) | (p & r))").unwrap();
    let cm = find_countermodel(&distributivity, &CountermodelTask::new(6)).unwrap();
    let cm_note = match &cm {
        Some(c) => format!("distributivity refuted at size {}", c.model.lea().size()),
        None => "distributivity has no countermodel up to size 6".into(),
    };
    Outcome::new(
        hits.is_empty() && cm.is_some(),
        format!(
            "{} axiom instances, countermodels found for [{}]; {cm_note}",
            formulas.len(),
            hits.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn enumeration() -> Outcome {
    let mut bad = Vec::new();
    let count = |n| {
        enumerate(&EnumerationTask::new(TargetClass::Lea, n))
            .unwrap()
            .algebras
            .len()
    };
    for (n, want) in [(2, 1), (3, 1)] {
        if count(n) != want || common::oracle::oracle_lea(n).len() != want {
            bad.push(format!(
                "size {n}: count {} oracle {}",
                count(n),
                common::oracle::oracle_lea(n).len()
            ));
        }
    }
    let mut counts = BTreeMap::new();
    for n in 2..=5 {
        let got = common::oracle::enumerated(TargetClass::Lea, n);
        let want = common::oracle::oracle_lea(n);
        counts.insert(n, got.len());
        if got != want {
            bad.push(format!("size {n}: {} classes, oracle {}", got.len(), want.len()));
        }
    }
    for (class, n) in [(TargetClass::Lea, 5), (TargetClass::Lea, 6), (TargetClass::WeakLea, 5)] {
        let codes = |seed: Option<u64>| {
            let mut t = EnumerationTask::new(class, n);
            t.shuffle_seed = seed;
            let mut c: Vec<String> = enumerate(&t)
                .unwrap()
                .algebras
                .iter()
                .map(|e| e.code.to_string())
                .collect();
            c.sort();
            c
        };
        let base = codes(None);
        for seed in 1..=3 {
            if codes(Some(seed)) != base {
                bad.push(format!("{class:?} size {n}: shuffle seed {seed} differs"));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "LEA classes by size {counts:?}; shuffled re-runs compared; failures [{}]",
            bad.join("; ")
        ),
    )
}

fn pt_implications() -> Outcome {
    let mut bad = Vec::new();
    let corpus = law_corpus();
    for (name, lea) in &corpus {
        match audit_pt_implication(lea, &PtImplication::sasaki(lea)) {
            Ok(r) if r.all_pass() => {}
            Ok(r) => bad.push(format!("{name}: fails {}", r.failed_laws().join(","))),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let mut found = 0;
    for e in enumerate(&EnumerationTask::new(TargetClass::Lea, 3)).unwrap().algebras {
        let lea = Lea::from_weak(&e.algebra).unwrap();
        let n = lea.size();
        let search = search_pt_implications(&lea).unwrap();
        found += search.found.len();
        for pt in &search.found {
            for a in lea.elems() {
                for b in lea.elems() {
                    let x = pt.arrow[a.index() * n + b.index()];
                    if !lea.leq(x, lea.sasaki_arrow(a, b)) {
                        bad.push(format!(
                            "size 3: a→b = {} exceeds a→s b at ({}, {})",
                            lea.label(x),
                            lea.label(a),
                            lea.label(b)
                        ));
                    }
                }
            }
        }
    }
    if found == 0 {
        bad.push("size 3: no pt-implication found".into());
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "(→s, ⊙, ⊗) audited on {} algebras; {found} pt-implications at size 3; failures [{}]",
            corpus.len(),
            bad.join("; ")
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("fig1a and fig1b", SECOND, fig1_examples),
        ("RD uniformity", 5 * MINUTE, rd_uniform),
        ("law suites", 5 * MINUTE, law_suites),
        ("CI round trip", 5 * MINUTE, ci_round_trip),
        ("calculus", 5 * MINUTE, calculus),
        ("rule soundness", 10 * MINUTE, rule_soundness),
        ("countermodel consistency", 5 * MINUTE, countermodels),
        ("enumeration", 5 * MINUTE, enumeration),
        ("pt-implications", 5 * MINUTE, pt_implications),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took < *limit;
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let timing = if in_time {
            String::new()
        } else {
            format!(" (over the {limit:?} limit)")
        };
        println!(
            "criterion {} [{}] {name}: {:.2?}{timing}; {}",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            took,
            out.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
