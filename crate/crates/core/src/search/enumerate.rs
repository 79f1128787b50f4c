//! Exhaustive enumeration of small weak lattice effect algebras and lattice
//! effect algebras, one representative per isomorphism class.
//!
//! The search is order-first. Bounded lattices are generated on a naturally
//! labelled carrier (`0` first, `1` last, `x < y` only when `x` precedes
//! `y`), paired with every involution, and reduced to one representative per
//! class. Because `a ⊕ b` is defined exactly when `a ≤ b'`, the domain of
//! `⊕` is then fixed, and the table is completed by backtracking with W1 built
//! in and W2 checked on every partial assignment.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::canonical::{relabel_weak, CanonicalForm, Shape};
use crate::algebra::{Elem, Lea, OrderStructure, PartialAlgebra, WeakLea};
use crate::par::Exec;
use crate::structure::audit_weak_lea;

pub const MAX_WEAK_SIZE: usize = 6;
pub const MAX_LEA_SIZE: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetClass {
    WeakLea,
    Lea,
}

impl TargetClass {
    pub fn cap(self) -> usize {
        match self {
            TargetClass::WeakLea => MAX_WEAK_SIZE,
            TargetClass::Lea => MAX_LEA_SIZE,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationTask {
    pub size: usize,
    pub class: TargetClass,
    /// Cap on table assignments tried, summed over all workers.
    pub node_budget: Option<u64>,
    pub time_limit: Option<Duration>,
    pub exec: Exec,
    /// Relabels every generated lattice by a seeded random permutation
    /// before completing it. The output must not change.
    pub shuffle_seed: Option<u64>,
}

impl EnumerationTask {
    pub fn new(class: TargetClass, size: usize) -> Self {
        EnumerationTask {
            size,
            class,
            node_budget: None,
            time_limit: None,
            exec: Exec::default(),
            shuffle_seed: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("size must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("size {size} exceeds the cap of {cap} for this class")]
    TooLarge { size: usize, cap: usize },
    #[error("budgets must be positive")]
    ZeroBudget,
    #[error("budget exceeded after {nodes} nodes and {elapsed_ms} ms")]
    BudgetExceeded { nodes: u64, elapsed_ms: u128 },
}

#[derive(Clone, Debug)]
pub struct Enumerated {
    pub code: CanonicalForm,
    /// Canonically labelled: `0` is element 0 and `1` the last element.
    pub algebra: WeakLea,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Sorted by canonical form.
    pub algebras: Vec<Enumerated>,
    /// Bounded involutive lattices of this size, up to isomorphism.
    pub lattices: usize,
    pub nodes: u64,
}

struct Budget {
    nodes: AtomicU64,
    stop: AtomicBool,
    limit: Option<u64>,
    deadline: Option<Instant>,
}

impl Budget {
    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.limit.is_some_and(|l| k > l) {
            self.stop.store(true, Ordering::Relaxed);
        }
        if k.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d) {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }
}

/// An involutive bounded lattice in raw form, `0` at index 0 and `1` last.
#[derive(Clone, Debug)]
struct Frame {
    leq: Vec<bool>,
    inv: Vec<usize>,
    join: Vec<usize>,
}

pub fn enumerate(task: &EnumerationTask) -> Result<Enumeration, EnumError> {
    let n = task.size;
    if n < 2 {
        return Err(EnumError::TooSmall(n));
    }
    if n > task.class.cap() {
        return Err(EnumError::TooLarge {
            size: n,
            cap: task.class.cap(),
        });
    }
    if task.node_budget == Some(0) || task.time_limit == Some(Duration::ZERO) {
        return Err(EnumError::ZeroBudget);
    }
    let start = Instant::now();
    let budget = Budget {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        limit: task.node_budget,
        deadline: task.time_limit.map(|t| start + t),
    };
    let frames = frames(n, task.shuffle_seed);
    let class = task.class;
    let found = task.exec.map(&frames, |f| complete(f, class, &budget));
    let nodes = budget.nodes.load(Ordering::Relaxed);
    if budget.stop.load(Ordering::Relaxed) {
        return Err(EnumError::BudgetExceeded {
            nodes,
            elapsed_ms: start.elapsed().as_millis(),
        });
    }
    let mut merged = BTreeMap::new();
    for (code, w) in found.into_iter().flatten() {
        merged.entry(code).or_insert(w);
    }
    let algebras = merged
        .into_iter()
        .map(|(code, algebra)| Enumerated { code, algebra })
        .collect();
    Ok(Enumeration {
        algebras,
        lattices: frames.len(),
        nodes,
    })
}

/// One frame per isomorphism class of bounded involutive lattices.
fn frames(n: usize, shuffle: Option<u64>) -> Vec<Frame> {
    let top = n - 1;
    let mids: Vec<usize> = (1..top).collect();
    let pairs: Vec<(usize, usize)> = mids
        .iter()
        .flat_map(|&i| mids.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
        .collect();
    let mut rng = shuffle.map(ChaCha8Rng::seed_from_u64);
    let mut reps: BTreeMap<CanonicalForm, Frame> = BTreeMap::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
            leq[x] = true;
            leq[x * n + top] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            leq[i * n + j] = mask >> k & 1 == 1;
        }
        let closed = pairs
            .iter()
            .all(|&(i, j)| !leq[i * n + j] || (0..n).all(|k| !leq[j * n + k] || leq[i * n + k]));
        if !closed {
            continue;
        }
        let Ok(order) = OrderStructure::from_leq(n, leq.clone()) else {
            continue;
        };
        if !order.is_lattice() {
            continue;
        }
        for p in permutations(&mids) {
            let mut inv = vec![top; n];
            inv[top] = 0;
            for (k, &m) in mids.iter().enumerate() {
                inv[m] = p[k];
            }
            let inv_elems = inv.iter().map(|&i| Elem::new(i)).collect();
            if order.clone().with_involution(inv_elems).is_err() {
                continue;
            }
            let (leq, inv) = match rng.as_mut() {
                Some(rng) => shuffled(n, &leq, &inv, rng),
                None => (leq.clone(), inv),
            };
            let shape = Shape {
                n,
                leq: &leq,
                inv: &inv,
                table: None,
            };
            let code = shape.canonical().0;
            reps.entry(code).or_insert_with(|| {
                let o = OrderStructure::from_leq(n, leq.clone()).expect("still a lattice");
                let join = (0..n * n)
                    .map(|k| o.join(Elem::new(k / n), Elem::new(k % n)).index())
                    .collect();
                Frame { leq, inv, join }
            });
        }
    }
    reps.into_values().collect()
}

fn shuffled(n: usize, leq: &[bool], inv: &[usize], rng: &mut ChaCha8Rng) -> (Vec<bool>, Vec<usize>) {
    let mut mids: Vec<usize> = (1..n - 1).collect();
    mids.shuffle(rng);
    let mut to = vec![0; n];
    to[n - 1] = n - 1;
    for (k, &m) in mids.iter().enumerate() {
        to[k + 1] = m;
    }
    let mut out = vec![false; n * n];
    let mut out_inv = vec![0; n];
    for a in 0..n {
        out_inv[to[a]] = to[inv[a]];
        for b in 0..n {
            out[to[a] * n + to[b]] = leq[a * n + b];
        }
    }
    (out, out_inv)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

struct Completion<'a> {
    n: usize,
    frame: &'a Frame,
    class: TargetClass,
    slots: Vec<(usize, usize)>,
    table: Vec<Option<usize>>,
    assigned: Vec<bool>,
    out: BTreeMap<CanonicalForm, (Vec<usize>, Vec<Option<usize>>)>,
}

/// All `⊕` tables on `frame` that give an algebra of `class`.
fn complete(frame: &Frame, class: TargetClass, budget: &Budget) -> Vec<(CanonicalForm, WeakLea)> {
    let n = frame.leq.len().isqrt();
    let leq = |a: usize, b: usize| frame.leq[a * n + b];
    let mut table = vec![None; n * n];
    let mut assigned = vec![false; n * n];
    for a in 0..n {
        table[a * n] = Some(a);
        table[a] = Some(a);
        assigned[a * n] = true;
        assigned[a] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if !leq(a, frame.inv[b]) {
                assigned[a * n + b] = true;
            }
        }
    }
    let slots = (1..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .filter(|&(a, b)| leq(a, frame.inv[b]))
        .collect();
    let mut c = Completion {
        n,
        frame,
        class,
        slots,
        table,
        assigned,
        out: BTreeMap::new(),
    };
    if c.consistent() {
        c.search(0, budget);
    }
    c.out
        .into_iter()
        .filter_map(|(code, (pos, table))| {
            let w = build(n, frame, &pos, table);
            let ok = match class {
                TargetClass::WeakLea => audit_weak_lea(&w).all_pass(),
                TargetClass::Lea => Lea::from_weak(&w).is_ok(),
            };
            ok.then_some((code, w))
        })
        .collect()
}

impl Completion<'_> {
    fn search(&mut self, k: usize, budget: &Budget) {
        let n = self.n;
        if k == self.slots.len() {
            let shape = Shape {
                n,
                leq: &self.frame.leq,
                inv: &self.frame.inv,
                table: Some(&self.table),
            };
            let (code, order) = shape.canonical();
            let mut pos = vec![0; n];
            for (new, &old) in order.iter().enumerate() {
                pos[old] = new;
            }
            self.out.entry(code).or_insert_with(|| (pos, self.table.clone()));
            return;
        }
        let (a, b) = self.slots[k];
        let top = n - 1;
        let lower = self.frame.join[a * n + b];
        for v in 0..n {
            if !self.frame.leq[lower * n + v] {
                continue;
            }
            if self.class == TargetClass::Lea {
                // in an effect algebra a ⊕ b = 1 exactly when b = a'
                let comp = b == self.frame.inv[a];
                if comp != (v == top) {
                    continue;
                }
            }
            if !budget.tick() {
                return;
            }
            self.set(a, b, Some(v));
            if self.consistent() {
                self.search(k + 1, budget);
            }
            self.unset(a, b);
            if budget.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    fn set(&mut self, a: usize, b: usize, v: Option<usize>) {
        let n = self.n;
        self.table[a * n + b] = v;
        self.table[b * n + a] = v;
        self.assigned[a * n + b] = true;
        self.assigned[b * n + a] = true;
    }

    fn unset(&mut self, a: usize, b: usize) {
        self.set(a, b, None);
        let n = self.n;
        self.assigned[a * n + b] = false;
        self.assigned[b * n + a] = false;
    }

    fn get(&self, a: usize, b: usize) -> Option<Option<usize>> {
        let i = a * self.n + b;
        self.assigned[i].then_some(self.table[i])
    }

    /// W2 on every triple whose entries are already known.
    fn consistent(&self) -> bool {
        let n = self.n;
        for b in 0..n {
            for c in 0..n {
                let Some(Some(bc)) = self.get(b, c) else { continue };
                for a in 0..n {
                    let Some(lhs) = self.get(a, bc) else { continue };
                    let Some(lhs) = lhs else { continue };
                    let Some(ab) = self.get(a, b) else { continue };
                    let Some(ab) = ab else { return false };
                    let Some(rhs) = self.get(ab, c) else { continue };
                    if rhs != Some(lhs) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn build(n: usize, frame: &Frame, pos: &[usize], table: Vec<Option<usize>>) -> WeakLea {
    let labels = (0..n).map(|x| label(pos[x], n)).collect();
    let alg = PartialAlgebra::new(
        labels,
        Elem::new(0),
        Elem::new(n - 1),
        table.into_iter().map(|v| v.map(Elem::new)).collect(),
    )
    .expect("well-formed table");
    let order = OrderStructure::from_leq(n, frame.leq.clone())
        .and_then(|o| o.with_involution(frame.inv.iter().map(|&i| Elem::new(i)).collect()))
        .expect("frame is an involutive lattice");
    let w = WeakLea::new(alg, order).expect("frame bounds are 0 and 1");
    let perm: Vec<Elem> = pos.iter().map(|&p| Elem::new(p)).collect();
    relabel_weak(&w, &perm)
}

/// `0`, `a`, `b`, ... , `1` in canonical position order.
fn label(pos: usize, n: usize) -> String {
    match pos {
        0 => "0".into(),
        p if p == n - 1 => "1".into(),
        p => char::from(b'a' + (p - 1) as u8).to_string(),
    }
}
