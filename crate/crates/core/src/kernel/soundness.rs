use std::collections::BTreeSet;
use std::sync::Arc;

use indexmap::IndexMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::check::{check_derivation, Derivation};
use super::schema::{apply, item, Item, SchemaError, Substitution, METAVARIABLES};
use crate::algebra::{Elem, Lea};
use crate::logic::{Formula, FormulaGen, Program};
use crate::par::Exec;
use crate::search::{canonical_library, enumerate, iso_canonical, EnumerationTask, TargetClass};

/// Valuations are enumerated exhaustively, so the atom count is capped.
pub const MAX_AUDIT_ATOMS: usize = 4;

const MAX_RECORDED: usize = 16;

#[derive(Clone, Debug)]
pub struct CorpusModel {
    pub name: String,
    pub lea: Arc<Lea>,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub models: Vec<CorpusModel>,
}

impl Corpus {
    /// Library lattice effect algebras with at most `max_size` elements, then
    /// every enumerated one of those sizes not isomorphic to a library entry.
    pub fn standard(max_size: usize) -> Self {
        let mut models = Vec::new();
        let mut seen = BTreeSet::new();
        for e in canonical_library() {
            if e.presentation.algebra.size() > max_size || !e.expected.lea {
                continue;
            }
            let lea = Lea::new(e.presentation.algebra).expect("tagged as a lattice effect algebra");
            if seen.insert(iso_canonical(lea.as_weak())) {
                models.push(CorpusModel {
                    name: e.name,
                    lea: Arc::new(lea),
                });
            }
        }
        for n in 2..=max_size.min(crate::search::MAX_LEA_SIZE) {
            let found = enumerate(&EnumerationTask::new(TargetClass::Lea, n)).expect("no budget set");
            for (k, e) in found.algebras.into_iter().enumerate() {
                if seen.insert(e.code) {
                    let lea = Lea::from_weak(&e.algebra).expect("enumerated as a lattice effect algebra");
                    models.push(CorpusModel {
                        name: format!("lea_{n}_{k}"),
                        lea: Arc::new(lea),
                    });
                }
            }
        }
        Corpus { models }
    }

    pub fn from_models(models: Vec<CorpusModel>) -> Self {
        Corpus { models }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SoundnessError {
    #[error("the derivation has hypotheses; it certifies a derived rule, not a theorem")]
    HasHypotheses,
    #[error("the derivation is not accepted by the checker")]
    NotAccepted,
    #[error("{0} atoms; at most {MAX_AUDIT_ATOMS} are supported")]
    TooManyAtoms(usize),
    #[error(transparent)]
    Schema(#[from] SchemaError),
}

#[derive(Clone, Debug, Serialize)]
pub struct InvalidLine {
    pub model: String,
    pub step: usize,
    pub formula: String,
    pub valuation: IndexMap<String, String>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SoundnessReport {
    pub certifies: &'static str,
    pub models: usize,
    /// (model, valuation) pairs examined.
    pub valuations: u64,
    /// Pairs in which every hypothesis is `1`; equal to `valuations` for
    /// theorems.
    pub hypotheses_hold: u64,
    pub lines: usize,
    pub invalid: u64,
    pub examples: Vec<InvalidLine>,
}

impl SoundnessReport {
    pub fn sound(&self) -> bool {
        self.invalid == 0
    }
}

/// Every line of a hypothesis-free accepted derivation must be `1` in every
/// model of `corpus` under every valuation.
pub fn soundness_audit(d: &Derivation, corpus: &Corpus, exec: Exec) -> Result<SoundnessReport, SoundnessError> {
    if !d.hypotheses.is_empty() {
        return Err(SoundnessError::HasHypotheses);
    }
    lines_audit(d, corpus, exec)
}

/// For derivations with hypotheses: in every model and valuation where all
/// hypotheses are `1`, every line must be `1`. The rules are sound in this
/// pointwise sense, so an accepted derivation must pass.
pub fn derived_rule_audit(d: &Derivation, corpus: &Corpus, exec: Exec) -> Result<SoundnessReport, SoundnessError> {
    lines_audit(d, corpus, exec)
}

fn lines_audit(d: &Derivation, corpus: &Corpus, exec: Exec) -> Result<SoundnessReport, SoundnessError> {
    if !check_derivation(d).accepted {
        return Err(SoundnessError::NotAccepted);
    }
    let atoms = d.atoms();
    if atoms.len() > MAX_AUDIT_ATOMS {
        return Err(SoundnessError::TooManyAtoms(atoms.len()));
    }
    let h = d.hypotheses.len();
    let formulas: Vec<Formula> = d
        .hypotheses
        .iter()
        .cloned()
        .chain(d.steps.iter().map(|s| s.assertion.clone()))
        .collect();
    let prog = Program::compile(&formulas, &atoms).expect("atoms collected from the derivation");
    let per_model = exec.map(&corpus.models, |m| {
        let mut tally = Tally::default();
        let (mut scratch, mut out) = (Vec::new(), Vec::new());
        for_each_valuation(&m.lea, atoms.len(), |val| {
            prog.run(&m.lea, val, &mut scratch, &mut out);
            tally.valuations += 1;
            let one = m.lea.one();
            if out[..h].iter().any(|&v| v != one) {
                return;
            }
            tally.hold += 1;
            for (k, &v) in out[h..].iter().enumerate() {
                if v != one {
                    tally.invalid += 1;
                    if tally.examples.len() < MAX_RECORDED {
                        tally.examples.push(InvalidLine {
                            model: m.name.clone(),
                            step: h + k + 1,
                            formula: formulas[h + k].to_string(),
                            valuation: render(&m.lea, &atoms, val),
                            value: m.lea.label(v).to_string(),
                        });
                    }
                }
            }
        });
        tally
    });
    let mut report = SoundnessReport {
        certifies: if h == 0 { "theorem" } else { "derived rule" },
        models: corpus.models.len(),
        valuations: 0,
        hypotheses_hold: 0,
        lines: d.steps.len(),
        invalid: 0,
        examples: Vec::new(),
    };
    for t in per_model {
        report.valuations += t.valuations;
        report.hypotheses_hold += t.hold;
        report.invalid += t.invalid;
        report.examples.extend(t.examples);
    }
    report.examples.truncate(MAX_RECORDED);
    Ok(report)
}

#[derive(Default)]
struct Tally {
    valuations: u64,
    hold: u64,
    invalid: u64,
    examples: Vec<InvalidLine>,
}

fn render(lea: &Lea, atoms: &[String], val: &[Elem]) -> IndexMap<String, String> {
    atoms
        .iter()
        .cloned()
        .zip(val.iter().map(|&e| lea.label(e).to_string()))
        .collect()
}

/// Calls `f` on every valuation of `k` atoms, last atom fastest.
pub(crate) fn for_each_valuation(lea: &Lea, k: usize, mut f: impl FnMut(&[Elem])) {
    let n = lea.size();
    let mut digits = vec![0usize; k];
    let mut val = vec![Elem::new(0); k];
    loop {
        for (v, &d) in val.iter_mut().zip(&digits) {
            *v = Elem::new(d);
        }
        f(&val);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HarnessViolation {
    pub model: String,
    pub subst: IndexMap<String, String>,
    /// `pointwise` or `model`.
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<IndexMap<String, String>>,
}

/// Random-instance check of one axiom, rule or lemma against a corpus.
#[derive(Clone, Debug, Serialize)]
pub struct HarnessReport {
    pub id: String,
    pub instances: usize,
    /// (instance, model) pairs.
    pub checks: u64,
    /// (instance, model) pairs where every premise is valid in the model.
    pub premises_valid: u64,
    /// (instance, model, valuation) triples where every premise is `1`.
    pub premises_hold_pointwise: u64,
    /// Premises valid in a model but a conclusion not valid there.
    pub model_violations: u64,
    /// Premises `1` under a valuation but a conclusion not `1` under it.
    pub pointwise_violations: u64,
    pub examples: Vec<HarnessViolation>,
}

impl HarnessReport {
    pub fn sound(&self) -> bool {
        self.model_violations == 0 && self.pointwise_violations == 0
    }
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub instances: usize,
    pub seed: u64,
    /// Depth of the random formulas substituted for metavariables.
    pub depth: usize,
    pub atoms: Vec<String>,
    pub exec: Exec,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            instances: 1000,
            seed: 0x5eed,
            depth: 2,
            atoms: ["p", "q", "r"].map(String::from).to_vec(),
            exec: Exec::default(),
        }
    }
}

/// The random substitution used for instance `i` of `id`.
pub fn harness_instance(id: &str, i: usize, cfg: &HarnessConfig) -> Result<Substitution, SchemaError> {
    let it = item(id).ok_or_else(|| SchemaError::UnknownRule(id.to_string()))?;
    Ok(draw(it, i, cfg))
}

fn draw(it: &Item, i: usize, cfg: &HarnessConfig) -> Substitution {
    let tag = it
        .id
        .bytes()
        .fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(u64::from(b)));
    let mut rng =
        ChaCha8Rng::seed_from_u64(cfg.seed ^ tag.rotate_left(17) ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let atoms: Vec<&str> = cfg.atoms.iter().map(String::as_str).collect();
    let gen = FormulaGen::new(&atoms, cfg.depth, true);
    let used = it.metavariables();
    METAVARIABLES
        .iter()
        .filter(|m| used.contains(m))
        .map(|m| (m.to_string(), gen.sample(&mut rng)))
        .collect()
}

/// Instantiates every variant of `id` with `cfg.instances` random
/// substitutions and evaluates premises and conclusions exhaustively in each
/// corpus model.
pub fn rule_harness(id: &str, corpus: &Corpus, cfg: &HarnessConfig) -> Result<HarnessReport, SchemaError> {
    let it = item(id).ok_or_else(|| SchemaError::UnknownRule(id.to_string()))?;
    Ok(item_harness(it, corpus, cfg))
}

/// [`rule_harness`] for an arbitrary item, including ones not in the
/// calculus. Substitutions are drawn as for the item's id.
pub fn item_harness(it: &Item, corpus: &Corpus, cfg: &HarnessConfig) -> HarnessReport {
    let id = it.id;
    let atoms = &cfg.atoms;
    let per_instance = cfg.exec.map_range(cfg.instances, |i| {
        let subst = draw(it, i, cfg);
        let mut t = HarnessTally::default();
        for v in &it.variants {
            let premises: Vec<Formula> = v.premises.iter().map(|p| apply(p, &subst)).collect();
            let conclusions: Vec<Formula> = v.conclusions.iter().map(|c| apply(c, &subst)).collect();
            let np = premises.len();
            let all: Vec<Formula> = premises.into_iter().chain(conclusions).collect();
            let prog = Program::compile(&all, atoms).expect("generator uses the configured atoms");
            let (mut scratch, mut out) = (Vec::new(), Vec::new());
            for m in &corpus.models {
                t.checks += 1;
                let one = m.lea.one();
                let mut premises_valid = true;
                let mut conclusion_fails: Option<Vec<Elem>> = None;
                for_each_valuation(&m.lea, atoms.len(), |val| {
                    prog.run(&m.lea, val, &mut scratch, &mut out);
                    let hold = out[..np].iter().all(|&x| x == one);
                    let concl = out[np..].iter().all(|&x| x == one);
                    premises_valid &= hold;
                    if !concl && conclusion_fails.is_none() {
                        conclusion_fails = Some(val.to_vec());
                    }
                    if hold {
                        t.pointwise_hold += 1;
                        if !concl {
                            t.pointwise_violations += 1;
                            t.push(m, &subst, "pointwise", Some(render(&m.lea, atoms, val)));
                        }
                    }
                });
                if premises_valid {
                    t.premises_valid += 1;
                    if let Some(val) = conclusion_fails {
                        t.model_violations += 1;
                        t.push(m, &subst, "model", Some(render(&m.lea, atoms, &val)));
                    }
                }
            }
        }
        t
    });
    let mut report = HarnessReport {
        id: id.to_string(),
        instances: cfg.instances,
        checks: 0,
        premises_valid: 0,
        premises_hold_pointwise: 0,
        model_violations: 0,
        pointwise_violations: 0,
        examples: Vec::new(),
    };
    for t in per_instance {
        report.checks += t.checks;
        report.premises_valid += t.premises_valid;
        report.premises_hold_pointwise += t.pointwise_hold;
        report.model_violations += t.model_violations;
        report.pointwise_violations += t.pointwise_violations;
        report.examples.extend(t.examples);
    }
    report.examples.truncate(MAX_RECORDED);
    report
}

#[derive(Default)]
struct HarnessTally {
    checks: u64,
    premises_valid: u64,
    pointwise_hold: u64,
    model_violations: u64,
    pointwise_violations: u64,
    examples: Vec<HarnessViolation>,
}

impl HarnessTally {
    fn push(
        &mut self,
        m: &CorpusModel,
        subst: &Substitution,
        kind: &'static str,
        valuation: Option<IndexMap<String, String>>,
    ) {
        if self.examples.len() < 4 {
            self.examples.push(HarnessViolation {
                model: m.name.clone(),
                subst: subst.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
                kind,
                valuation,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::SHIPPED;

    #[test]
    fn standard_corpus_of_size_five() {
        let c = Corpus::standard(5);
        let names: Vec<&str> = c.models.iter().map(|m| m.name.as_str()).collect();
        assert!(names.contains(&"two_chain") && names.contains(&"diamond"));
        assert!(c.models.iter().all(|m| m.lea.size() <= 5));
        // every lattice effect algebra with at most five elements, once
        assert_eq!(c.models.len(), 1 + 1 + 3 + 4);
    }

    #[test]
    fn theorem_audit_and_refusal() {
        let corpus = Corpus::standard(4);
        let a6 = SHIPPED.iter().find(|s| s.name == "A6").unwrap().derivation();
        let r = soundness_audit(&a6, &corpus, Exec::Sequential).unwrap();
        assert!(r.sound());
        assert_eq!(r.valuations, r.hypotheses_hold);
        let r12 = SHIPPED.iter().find(|s| s.name == "R12").unwrap().derivation();
        assert_eq!(
            soundness_audit(&r12, &corpus, Exec::Sequential).unwrap_err(),
            SoundnessError::HasHypotheses
        );
        let r = derived_rule_audit(&r12, &corpus, Exec::Sequential).unwrap();
        assert!(r.sound() && r.hypotheses_hold > 0);
    }

    #[test]
    fn small_harness_run() {
        let corpus = Corpus::standard(4);
        let cfg = HarnessConfig {
            instances: 50,
            ..HarnessConfig::default()
        };
        for id in ["A3", "R2", "R9"] {
            let r = rule_harness(id, &corpus, &cfg).unwrap();
            assert!(r.sound(), "{}", serde_json::to_string(&r).unwrap());
        }
    }

    #[test]
    fn harness_instances_are_reproducible() {
        let cfg = HarnessConfig::default();
        assert_eq!(
            harness_instance("R10", 7, &cfg).unwrap(),
            harness_instance("R10", 7, &cfg).unwrap()
        );
        assert_ne!(
            harness_instance("R10", 7, &cfg).unwrap(),
            harness_instance("R10", 8, &cfg).unwrap()
        );
    }

    #[test]
    fn an_unsound_rule_is_caught() {
        let parse = |s: &str| crate::logic::parse_formula(s).unwrap();
        let converse = Item {
            id: "converse",
            kind: crate::kernel::ItemKind::Rule,
            variants: vec![crate::kernel::Variant {
                premises: vec![parse("phi -> psi")],
                conclusions: vec![parse("psi -> phi")],
            }],
        };
        let cfg = HarnessConfig {
            instances: 200,
            ..HarnessConfig::default()
        };
        let r = item_harness(&converse, &Corpus::standard(4), &cfg);
        assert!(r.model_violations > 0 && r.pointwise_violations > 0);
        assert!(!r.examples.is_empty());
    }
}
