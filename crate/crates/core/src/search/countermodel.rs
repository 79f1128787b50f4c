use std::sync::Arc;
use std::time::{Duration, Instant};

use indexmap::IndexMap;
use serde::Serialize;

use super::enumerate::{enumerate, EnumError, EnumerationTask, TargetClass, MAX_LEA_SIZE};
use crate::algebra::{AlgebraFile, Elem, Lea};
use crate::logic::{Formula, Model};
use crate::par::Exec;

#[derive(Clone, Debug)]
pub struct CountermodelTask {
    pub max_size: usize,
    pub time_limit: Option<Duration>,
    pub exec: Exec,
}

impl CountermodelTask {
    pub fn new(max_size: usize) -> Self {
        CountermodelTask {
            max_size,
            time_limit: None,
            exec: Exec::default(),
        }
    }
}

/// A model in which the formula takes a value other than `1`.
#[derive(Clone, Debug)]
pub struct Countermodel {
    pub model: Model,
    pub value: Elem,
}

#[derive(Serialize)]
struct CountermodelJson {
    size: usize,
    algebra: AlgebraFile,
    valuation: IndexMap<String, String>,
    value: String,
}

impl Countermodel {
    pub fn to_json(&self) -> serde_json::Value {
        let lea = self.model.lea();
        let out = CountermodelJson {
            size: lea.size(),
            algebra: AlgebraFile::from_weak(lea.as_weak()),
            valuation: self.model.valuation_labels(),
            value: lea.label(self.value).to_string(),
        };
        serde_json::to_value(out).expect("plain data serializes")
    }
}

/// Searches enumerated lattice effect algebras by increasing size, and in
/// each the valuations of `f`'s atoms in lexicographic order, for the first
/// model where `f` is not `1`. `None` only means no countermodel exists up to
/// `max_size`.
pub fn find_countermodel(f: &Formula, task: &CountermodelTask) -> Result<Option<Countermodel>, EnumError> {
    if task.max_size > MAX_LEA_SIZE {
        return Err(EnumError::TooLarge {
            size: task.max_size,
            cap: MAX_LEA_SIZE,
        });
    }
    let start = Instant::now();
    let atoms: Vec<String> = f.atoms().iter().map(|a| a.to_string()).collect();
    for n in 2..=task.max_size {
        let mut enum_task = EnumerationTask::new(TargetClass::Lea, n);
        enum_task.exec = task.exec;
        enum_task.time_limit = task
            .time_limit
            .map(|t| t.saturating_sub(start.elapsed()).max(Duration::from_millis(1)));
        let found = enumerate(&enum_task)?;
        let leas: Vec<Arc<Lea>> = found
            .algebras
            .iter()
            .map(|e| Arc::new(Lea::from_weak(&e.algebra).expect("enumerated as a lattice effect algebra")))
            .collect();
        let hits = task.exec.map(&leas, |lea| first_failure(f, lea, &atoms));
        if let Some(hit) = hits.into_iter().flatten().next() {
            return Ok(Some(hit));
        }
        if task.time_limit.is_some_and(|t| start.elapsed() > t) {
            return Err(EnumError::BudgetExceeded {
                nodes: 0,
                elapsed_ms: start.elapsed().as_millis(),
            });
        }
    }
    Ok(None)
}

fn first_failure(f: &Formula, lea: &Arc<Lea>, atoms: &[String]) -> Option<Countermodel> {
    let n = lea.size();
    let mut digits = vec![0usize; atoms.len()];
    loop {
        let valuation = atoms
            .iter()
            .cloned()
            .zip(digits.iter().map(|&d| Elem::new(d)))
            .collect();
        let model = Model::new(lea.clone(), valuation);
        let value = model.eval(f).expect("every atom is valued");
        if value != lea.one() {
            return Some(Countermodel { model, value });
        }
        // last atom varies fastest
        let mut k = digits.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn search(s: &str, max: usize) -> Option<Countermodel> {
        find_countermodel(&parse_formula(s).unwrap(), &CountermodelTask::new(max)).unwrap()
    }

    #[test]
    fn an_atom_fails_in_the_two_element_chain() {
        let c = search("p", 4).unwrap();
        assert_eq!(c.model.lea().size(), 2);
        assert_eq!(c.model.lea().label(c.value), "0");
        assert_eq!(c.model.valuation_labels()["p"], "0");
    }

    #[test]
    fn identity_has_no_countermodel() {
        assert!(search("p -> p", 6).is_none());
    }

    #[test]
    fn distributivity_fails_in_a_small_algebra() {
        let f = parse_formula("(p & (q | r)) -> ((p & q) | (p & r))").unwrap();
        let c = find_countermodel(&f, &CountermodelTask::new(6)).unwrap().unwrap();
        assert!(c.model.lea().size() <= 6);
        assert_ne!(c.model.eval(&f).unwrap(), c.model.lea().one());
    }

    #[test]
    fn caps_are_enforced() {
        let err = find_countermodel(&parse_formula("p").unwrap(), &CountermodelTask::new(8)).unwrap_err();
        assert_eq!(err, EnumError::TooLarge { size: 8, cap: 7 });
    }
}
