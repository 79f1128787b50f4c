//! Per-law audit reports.

use indexmap::IndexMap;
use serde::Serialize;

use crate::algebra::Elem;

/// How many violating tuples a single law keeps. The violation count is
/// always exact.
pub const MAX_WITNESSES: usize = 16;

/// Outcome of one law over all tuples it quantifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawVerdict {
    pub pass: bool,
    /// Tuples that satisfied the law's hypothesis and were checked. Zero for
    /// a conditional law means the pass is vacuous.
    pub tested: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Vec<String>>,
}

/// Verdicts keyed by law identifier, in the order the laws were checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub subject: String,
    pub summary: String,
    pub verdicts: IndexMap<String, LawVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn new(subject: impl Into<String>) -> Self {
        AuditReport {
            subject: subject.into(),
            summary: String::new(),
            verdicts: IndexMap::new(),
            notes: Vec::new(),
        }
    }

    /// Records a finished law, translating witness elements into labels.
    pub fn push(&mut self, law: Law, labels: &[String]) {
        let witnesses = law
            .witnesses
            .into_iter()
            .map(|tuple| tuple.into_iter().map(|w| w.render(labels)).collect())
            .collect();
        self.verdicts.insert(
            law.id,
            LawVerdict {
                pass: law.violations == 0,
                tested: law.tested,
                violations: law.violations,
                witnesses,
            },
        );
    }

    /// Records a verdict that has no element witnesses (for example a
    /// structural precondition).
    pub fn push_flag(&mut self, id: impl Into<String>, pass: bool, detail: Option<String>) {
        self.verdicts.insert(
            id.into(),
            LawVerdict {
                pass,
                tested: 1,
                violations: usize::from(!pass),
                witnesses: if pass {
                    Vec::new()
                } else {
                    vec![detail.into_iter().collect()]
                },
            },
        );
    }

    /// Copies every verdict of `other` into this report.
    pub fn absorb(&mut self, other: AuditReport) {
        self.verdicts.extend(other.verdicts);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self, id: &str) -> Option<bool> {
        self.verdicts.get(id).map(|v| v.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.values().all(|v| v.pass)
    }

    pub fn failed_laws(&self) -> Vec<&str> {
        self.verdicts
            .iter()
            .filter(|(_, v)| !v.pass)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn witnesses(&self, id: &str) -> &[Vec<String>] {
        self.verdicts.get(id).map_or(&[], |v| v.witnesses.as_slice())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// One entry of a witness tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessItem {
    Elem(Elem),
    Undefined,
    /// Names which variant of a law a tuple witnesses.
    Tag(&'static str),
}

impl WitnessItem {
    fn render(self, labels: &[String]) -> String {
        match self {
            WitnessItem::Elem(e) => labels[e.index()].clone(),
            WitnessItem::Undefined => "undefined".to_string(),
            WitnessItem::Tag(t) => t.to_string(),
        }
    }
}

impl From<Elem> for WitnessItem {
    fn from(e: Elem) -> Self {
        WitnessItem::Elem(e)
    }
}

impl From<Option<Elem>> for WitnessItem {
    fn from(e: Option<Elem>) -> Self {
        e.map_or(WitnessItem::Undefined, WitnessItem::Elem)
    }
}

/// Accumulator for a single law while its tuples are being checked.
#[derive(Clone, Debug)]
pub struct Law {
    id: String,
    tested: usize,
    violations: usize,
    witnesses: Vec<Vec<WitnessItem>>,
}

impl Law {
    pub fn new(id: impl Into<String>) -> Self {
        Law {
            id: id.into(),
            tested: 0,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    /// Counts one tested tuple; records the witness when `holds` is false.
    pub fn check<W>(&mut self, holds: bool, witness: impl FnOnce() -> W)
    where
        W: IntoIterator,
        W::Item: Into<WitnessItem>,
    {
        self.tested += 1;
        if !holds {
            self.violations += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness().into_iter().map(Into::into).collect());
            }
        }
    }

    pub fn violations(&self) -> usize {
        self.violations
    }
}

#[macro_export]
#[doc(hidden)]
macro_rules! wit {
    ($($e:expr),* $(,)?) => {
        || -> Vec<$crate::report::WitnessItem> { vec![$($crate::report::WitnessItem::from($e)),*] }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_law_keeps_witness_and_count() {
        let labels = vec!["0".to_string(), "1".to_string()];
        let mut law = Law::new("X");
        law.check(true, wit![Elem::new(0)]);
        law.check(false, wit![Elem::new(1), None::<Elem>]);
        let mut r = AuditReport::new("t");
        r.push(law, &labels);
        let v = &r.verdicts["X"];
        assert!(!v.pass);
        assert_eq!(v.tested, 2);
        assert_eq!(v.witnesses, vec![vec!["1".to_string(), "undefined".to_string()]]);
        assert_eq!(r.failed_laws(), vec!["X"]);
    }
}
