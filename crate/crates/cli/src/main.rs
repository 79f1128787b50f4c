//! `lel`: audits, evaluation, proof checking and model search from the shell.
//!
//! Reports go to stdout as JSON, a one-line summary goes to stderr. Exit code
//! 0 means the verdict passed, 1 that it failed (audit failed, derivation
//! rejected, countermodel found, search budget exhausted) and 2 a usage or
//! input error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lel_core::algebra::{audit_presentation, AlgebraFile, Lea, Presentation, WeakLea};
use lel_core::kernel::{
    check_derivation, derived_rule_audit, soundness_audit, Corpus, CorpusModel, Derivation, SoundnessError,
};
use lel_core::logic::{parse_formula, Formula, ModelFile};
use lel_core::par::Exec;
use lel_core::search::{
    canonical_library, enumerate, find_countermodel, library_entry, CountermodelTask, EnumError, EnumerationTask,
    TargetClass,
};
use lel_core::structure::{
    audit_ci, audit_weak_presentation, ci_from_lea, lea_from_ci, rd_profile, rd_uniformity, CiFile,
};

#[derive(Parser)]
#[command(name = "lel", version, about = "Finite lattice effect algebras and their logic")]
struct Cli {
    /// Run the exhaustive loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AuditClass {
    Lea,
    WeakLea,
    Ci,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    WeakLea,
    Lea,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    LeaToCi,
    CiToLea,
}

#[derive(Subcommand)]
enum Command {
    /// Audit an algebra file (or library name) against a class.
    Audit {
        algebra: String,
        #[arg(long, value_enum, default_value = "lea")]
        class: AuditClass,
    },
    /// Evaluate RD1-RD8 on a weak lattice effect algebra.
    RdProfile { algebra: String },
    /// Value of a formula in a model.
    Eval { model: PathBuf, formula: String },
    /// Whether a formula takes the value 1 in a model.
    Valid { model: PathBuf, formula: String },
    /// Check a derivation file.
    Check { derivation: PathBuf },
    /// Check a derivation, then evaluate every line in every corpus model.
    Soundness {
        derivation: PathBuf,
        /// Algebra files or library names; defaults to every lattice effect
        /// algebra with at most `--max-size` elements.
        #[arg(long, num_args = 1..)]
        corpus: Vec<String>,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Enumerate algebras of one size up to isomorphism.
    Enumerate {
        #[arg(long, value_enum)]
        class: Class,
        #[arg(long)]
        size: usize,
        /// Directory for one algebra file per class; without it the
        /// algebras are inlined in the report.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        time_limit_secs: Option<u64>,
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Search enumerated lattice effect algebras for a falsifying valuation.
    Countermodel {
        formula: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        time_limit_secs: Option<u64>,
    },
    /// List the built-in algebras, or print one as an algebra file.
    Library { name: Option<String> },
    /// Convert between lattice effect algebras and CI-lattices.
    Convert {
        #[arg(long, value_enum)]
        direction: Direction,
        input: String,
    },
}

struct Outcome {
    report: Value,
    summary: String,
    pass: bool,
}

impl Outcome {
    fn new(report: Value, summary: impl Into<String>, pass: bool) -> Self {
        Outcome {
            report,
            summary: summary.into(),
            pass,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match run(cli.command, exec) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.report).expect("reports serialize");
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            eprintln!("{}", out.summary);
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, exec: Exec) -> Result<Outcome> {
    match command {
        Command::Audit { algebra, class } => audit(&algebra, class),
        Command::RdProfile { algebra } => {
            let (name, p) = load_presentation(&algebra)?;
            let w = WeakLea::from_presentation(&p)
                .with_context(|| format!("{name} is not a bounded involutive lattice"))?;
            let report = rd_profile(&w);
            let (pass, verdict) = match rd_uniformity(&report) {
                Some(true) => (true, "all-hold"),
                Some(false) => (true, "all-fail"),
                None => (false, "mixed"),
            };
            let summary = format!("{name}: RD profile {verdict}");
            Ok(Outcome::new(
                json!({"profile": verdict, "report": report}),
                summary,
                pass,
            ))
        }
        Command::Eval { model, formula } => {
            let (m, f) = model_and_formula(&model, &formula)?;
            let v = m.eval(&f)?;
            let label = m.lea().label(v).to_string();
            let summary = format!("{f} = {label}");
            Ok(Outcome::new(
                json!({"formula": f.to_string(), "valuation": m.valuation_labels(), "value": label}),
                summary,
                true,
            ))
        }
        Command::Valid { model, formula } => {
            let (m, f) = model_and_formula(&model, &formula)?;
            let v = m.eval(&f)?;
            let valid = v == m.lea().one();
            let label = m.lea().label(v).to_string();
            let summary = format!(
                "{f} {} in the model (value {label})",
                if valid { "is valid" } else { "is not valid" }
            );
            Ok(Outcome::new(
                json!({"formula": f.to_string(), "valuation": m.valuation_labels(), "value": label, "valid": valid}),
                summary,
                valid,
            ))
        }
        Command::Check { derivation } => {
            let d = load_derivation(&derivation)?;
            let r = check_derivation(&d);
            let summary = match r.first_rejected {
                None if r.accepted => format!("accepted: certifies a {}", r.certifies),
                None => "rejected: a goal is never asserted".to_string(),
                Some(k) => format!("rejected at step {k}"),
            };
            let pass = r.accepted;
            Ok(Outcome::new(serde_json::to_value(r)?, summary, pass))
        }
        Command::Soundness {
            derivation,
            corpus,
            max_size,
        } => soundness(&derivation, &corpus, max_size, exec),
        Command::Enumerate {
            class,
            size,
            out,
            time_limit_secs,
            node_budget,
        } => {
            let class = match class {
                Class::WeakLea => TargetClass::WeakLea,
                Class::Lea => TargetClass::Lea,
            };
            let mut task = EnumerationTask::new(class, size);
            task.exec = exec;
            task.node_budget = node_budget;
            task.time_limit = time_limit_secs.map(Duration::from_secs);
            enumerate_command(&task, out.as_deref())
        }
        Command::Countermodel {
            formula,
            max_size,
            time_limit_secs,
        } => {
            let f = parse_formula(&formula).map_err(|e| anyhow!("{e}"))?;
            let task = CountermodelTask {
                max_size,
                time_limit: time_limit_secs.map(Duration::from_secs),
                exec,
            };
            match find_countermodel(&f, &task) {
                Ok(Some(c)) => {
                    let summary = format!(
                        "countermodel of size {}: {f} = {}",
                        c.model.lea().size(),
                        c.model.lea().label(c.value)
                    );
                    Ok(Outcome::new(
                        json!({"formula": f.to_string(), "max_size": max_size, "countermodel": c.to_json()}),
                        summary,
                        false,
                    ))
                }
                Ok(None) => Ok(Outcome::new(
                    json!({"formula": f.to_string(), "max_size": max_size, "countermodel": null}),
                    format!("no countermodel up to size {max_size} (bounded check, not a validity proof)"),
                    true,
                )),
                Err(e @ EnumError::BudgetExceeded { .. }) => Ok(Outcome::new(
                    json!({"formula": f.to_string(), "max_size": max_size, "error": e.to_string()}),
                    e.to_string(),
                    false,
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Library { name: None } => {
            let entries: Vec<Value> = canonical_library()
                .into_iter()
                .map(|e| json!({"name": e.name, "size": e.presentation.algebra.size(), "expected": e.expected}))
                .collect();
            let summary = format!("{} library algebras", entries.len());
            Ok(Outcome::new(Value::Array(entries), summary, true))
        }
        Command::Library { name: Some(name) } => {
            let e = library_entry(&name).ok_or_else(|| anyhow!("no library algebra named {name:?}"))?;
            let file = algebra_file(&e.presentation)?;
            let summary = format!("{name}: {} elements", e.presentation.algebra.size());
            Ok(Outcome::new(
                json!({"name": name, "expected": e.expected, "algebra": file}),
                summary,
                true,
            ))
        }
        Command::Convert { direction, input } => convert(direction, &input),
    }
}

/// A path to an algebra file, or else a library name.
fn load_presentation(arg: &str) -> Result<(String, Presentation)> {
    let path = Path::new(arg);
    if path.exists() {
        let file = AlgebraFile::load(path)?;
        let p = file.to_presentation().with_context(|| format!("reading {arg}"))?;
        return Ok((arg.to_string(), p));
    }
    match library_entry(arg) {
        Some(e) => Ok((e.name, e.presentation)),
        None => bail!("{arg}: no such file and no library algebra of that name"),
    }
}

fn algebra_file(p: &Presentation) -> Result<AlgebraFile> {
    if p.order.is_some() || p.involution.is_some() {
        Ok(AlgebraFile::from_weak(&WeakLea::from_presentation(p)?))
    } else {
        Ok(AlgebraFile::from_algebra(&p.algebra))
    }
}

fn audit(arg: &str, class: AuditClass) -> Result<Outcome> {
    let (name, report) = match class {
        AuditClass::Lea => {
            let (name, p) = load_presentation(arg)?;
            (name, audit_presentation(&p))
        }
        AuditClass::WeakLea => {
            let (name, p) = load_presentation(arg)?;
            (name, audit_weak_presentation(&p))
        }
        AuditClass::Ci => {
            let ci = CiFile::load(arg)?
                .to_structure()
                .with_context(|| format!("reading {arg}"))?;
            (arg.to_string(), audit_ci(&ci))
        }
    };
    let pass = report.all_pass();
    let summary = if pass {
        format!("{name}: {} audit passes", report.subject)
    } else {
        let laws = report.failed_laws();
        let first = laws[0];
        let witness = report
            .witnesses(first)
            .first()
            .map(|w| w.join(", "))
            .unwrap_or_default();
        format!(
            "{name}: {} audit fails {} (first witness for {first}: {witness})",
            report.subject,
            laws.join(", ")
        )
    };
    Ok(Outcome::new(serde_json::to_value(&report)?, summary, pass))
}

fn model_and_formula(model: &Path, formula: &str) -> Result<(lel_core::Model, Formula)> {
    let m = ModelFile::load(model)?
        .to_model()
        .with_context(|| format!("reading {}", model.display()))?;
    let f = parse_formula(formula).map_err(|e| anyhow!("{e}"))?;
    Ok((m, f))
}

fn load_derivation(path: &Path) -> Result<Derivation> {
    Derivation::load(path).with_context(|| format!("reading {}", path.display()))
}

fn soundness(path: &Path, corpus_args: &[String], max_size: usize, exec: Exec) -> Result<Outcome> {
    let d = load_derivation(path)?;
    let corpus = if corpus_args.is_empty() {
        Corpus::standard(max_size)
    } else {
        let mut models = Vec::new();
        for arg in corpus_args {
            let (name, p) = load_presentation(arg)?;
            let lea = Lea::new(p.algebra).with_context(|| format!("{name} is not a lattice effect algebra"))?;
            models.push(CorpusModel { name, lea: lea.into() });
        }
        Corpus::from_models(models)
    };
    let result = if d.hypotheses.is_empty() {
        soundness_audit(&d, &corpus, exec)
    } else {
        derived_rule_audit(&d, &corpus, exec)
    };
    match result {
        Ok(r) => {
            let summary = format!(
                "{}: {} invalid lines over {} (model, valuation) pairs in {} models",
                r.certifies, r.invalid, r.valuations, r.models
            );
            let pass = r.sound();
            Ok(Outcome::new(serde_json::to_value(r)?, summary, pass))
        }
        Err(SoundnessError::NotAccepted) => {
            let r = check_derivation(&d);
            Ok(Outcome::new(
                json!({"error": "the derivation is not accepted", "check": r}),
                "rejected by the checker; nothing to audit",
                false,
            ))
        }
        Err(e) => Err(e.into()),
    }
}

fn enumerate_command(task: &EnumerationTask, out: Option<&Path>) -> Result<Outcome> {
    let found = match enumerate(task) {
        Ok(found) => found,
        Err(e @ EnumError::BudgetExceeded { .. }) => {
            return Ok(Outcome::new(json!({"error": e.to_string()}), e.to_string(), false));
        }
        Err(e) => return Err(e.into()),
    };
    let class = serde_json::to_value(task.class)?;
    let class_name = class.as_str().unwrap_or_default().to_string();
    let (mut hold, mut fail, mut mixed) = (0, 0, 0);
    let mut algebras = Vec::new();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for (k, e) in found.algebras.iter().enumerate() {
        let rd = match rd_uniformity(&rd_profile(&e.algebra)) {
            Some(true) => {
                hold += 1;
                "all-hold"
            }
            Some(false) => {
                fail += 1;
                "all-fail"
            }
            None => {
                mixed += 1;
                "mixed"
            }
        };
        let file = AlgebraFile::from_weak(&e.algebra);
        match out {
            Some(dir) => {
                let name = format!("{class_name}-{}-{k}.json", task.size);
                let path = dir.join(&name);
                std::fs::write(&path, file.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
                algebras.push(json!({"code": e.code, "rd_profile": rd, "file": name}));
            }
            None => algebras.push(json!({"code": e.code, "rd_profile": rd, "algebra": file})),
        }
    }
    let census = json!({
        "size": task.size,
        "class": class,
        "count": found.algebras.len(),
        "lattices": found.lattices,
        "rd_profile": {"all_hold": hold, "all_fail": fail, "mixed": mixed},
    });
    let summary = format!("{} {class_name} classes of size {}", found.algebras.len(), task.size);
    Ok(Outcome::new(
        json!({"census": census, "algebras": algebras}),
        summary,
        true,
    ))
}

fn convert(direction: Direction, input: &str) -> Result<Outcome> {
    match direction {
        Direction::LeaToCi => {
            let (name, p) = load_presentation(input)?;
            let lea = match Lea::new(p.algebra) {
                Ok(lea) => lea,
                Err(e) => {
                    let msg = format!("{name} is not a lattice effect algebra: {e}");
                    return Ok(Outcome::new(json!({"error": msg}), msg, false));
                }
            };
            let ci = CiFile::from_structure(&ci_from_lea(&lea));
            Ok(Outcome::new(
                serde_json::to_value(ci)?,
                format!("{name}: CI-lattice of {} elements", lea.size()),
                true,
            ))
        }
        Direction::CiToLea => {
            let ci = CiFile::load(input)?
                .to_structure()
                .with_context(|| format!("reading {input}"))?;
            match lea_from_ci(&ci) {
                Ok(w) => {
                    let file = AlgebraFile::from_weak(&w);
                    Ok(Outcome::new(
                        serde_json::to_value(file)?,
                        format!("{input}: lattice effect algebra of {} elements", w.size()),
                        true,
                    ))
                }
                Err(e) => {
                    let msg = format!("{input}: {e}");
                    Ok(Outcome::new(json!({"error": e.to_string()}), msg, false))
                }
            }
        }
    }
}
