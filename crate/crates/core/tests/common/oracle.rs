//! Brute-force enumeration of small weak and full lattice effect algebras,
//! used to cross-check the crate's enumerator.
//!
//! Apart from `enumerated`, which adapts the enumerator output, nothing here
//! uses the crate. Every labelled
//! structure with `0` at index 0 and `1` last is generated, checked against
//! the axioms directly, and quotiented by isomorphism by trying every
//! permutation of the middle elements.

use std::collections::BTreeSet;

use lel_core::search::{enumerate, EnumerationTask, TargetClass};

type Table = Vec<Option<usize>>;

struct Raw {
    n: usize,
    leq: Vec<bool>,
    inv: Vec<usize>,
    table: Table,
}

fn perms(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in perms(&rest) {
            p.push(x);
            out.push(p);
        }
    }
    out
}

/// Least encoding over all relabelings fixing `0` and `1`.
fn code(r: &Raw) -> Vec<u8> {
    let n = r.n;
    let mids: Vec<usize> = (1..n - 1).collect();
    let mut best: Option<Vec<u8>> = None;
    for p in perms(&mids) {
        let mut to = vec![0; n];
        to[n - 1] = n - 1;
        for (k, &m) in mids.iter().enumerate() {
            to[m] = p[k];
        }
        let mut leq = vec![0u8; n * n];
        let mut inv = vec![0u8; n];
        let mut table = vec![0xffu8; n * n];
        for a in 0..n {
            inv[to[a]] = to[r.inv[a]] as u8;
            for b in 0..n {
                leq[to[a] * n + to[b]] = u8::from(r.leq[a * n + b]);
                if let Some(v) = r.table[a * n + b] {
                    table[to[a] * n + to[b]] = to[v] as u8;
                }
            }
        }
        let c: Vec<u8> = leq.into_iter().chain(inv).chain(table).collect();
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    }
    best.unwrap()
}

fn is_lattice(n: usize, leq: &[bool]) -> bool {
    let le = |a: usize, b: usize| leq[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let ups: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
            if !ups.iter().any(|&j| ups.iter().all(|&c| le(j, c))) {
                return false;
            }
            let downs: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
            if !downs.iter().any(|&m| downs.iter().all(|&c| le(c, m))) {
                return false;
            }
        }
    }
    true
}

/// Bounded lattice orders with `0` first and `1` last.
fn lattices(n: usize) -> Vec<Vec<bool>> {
    let mids: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = mids
        .iter()
        .flat_map(|&i| mids.iter().filter(move |&&j| j != i).map(move |&j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
            leq[x] = true;
            leq[x * n + n - 1] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(le(a, b) && le(b, a))));
        let trans = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le(a, b) && le(b, c)) || le(a, c))));
        if antisym && trans && is_lattice(n, &leq) {
            out.push(leq);
        }
    }
    out
}

fn involutions(n: usize, leq: &[bool]) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..n).collect();
    perms(&all)
        .into_iter()
        .filter(|p| {
            (0..n).all(|a| p[p[a]] == a) && (0..n).all(|a| (0..n).all(|b| !leq[a * n + b] || leq[p[b] * n + p[a]]))
        })
        .collect()
}

/// Every symmetric table on the given free pairs.
fn tables(n: usize, base: &Table, free: &[(usize, usize)], choices: usize, mut visit: impl FnMut(&Table)) {
    let mut t = base.clone();
    let mut digits = vec![0usize; free.len()];
    loop {
        for (k, &(a, b)) in free.iter().enumerate() {
            let v = if digits[k] == n { None } else { Some(digits[k]) };
            t[a * n + b] = v;
            t[b * n + a] = v;
        }
        visit(&t);
        let mut k = 0;
        loop {
            if k == digits.len() {
                return;
            }
            digits[k] += 1;
            if digits[k] < choices {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn w2(n: usize, t: &Table) -> bool {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let Some(bc) = t[b * n + c] else { continue };
                let Some(lhs) = t[a * n + bc] else { continue };
                let rhs = t[a * n + b].and_then(|ab| t[ab * n + c]);
                if rhs != Some(lhs) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn oracle_weak(n: usize) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    for leq in lattices(n) {
        for inv in involutions(n, &leq) {
            let mut base = vec![None; n * n];
            for a in 0..n {
                base[a * n] = Some(a);
                base[a] = Some(a);
            }
            // definedness fixes the domain; every value in it is tried
            let free: Vec<(usize, usize)> = (1..n)
                .flat_map(|a| (a..n).map(move |b| (a, b)))
                .filter(|&(a, b)| leq[a * n + inv[b]])
                .collect();
            tables(n, &base, &free, n, |t| {
                if w2(n, t) {
                    out.insert(code(&Raw {
                        n,
                        leq: leq.clone(),
                        inv: inv.clone(),
                        table: t.clone(),
                    }));
                }
            });
        }
    }
    out
}

/// Effect algebras on `{0, .., n-1}` whose induced order is a lattice.
pub fn oracle_lea(n: usize) -> BTreeSet<Vec<u8>> {
    let top = n - 1;
    let mut base = vec![None; n * n];
    for a in 0..n {
        base[a * n] = Some(a);
        base[a] = Some(a);
    }
    let free: Vec<(usize, usize)> = (1..top).flat_map(|a| (a..top).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    tables(n, &base, &free, n + 1, |t| {
        let e2 = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let l = t[a * n + b].and_then(|ab| t[ab * n + c]);
                    let r = t[b * n + c].and_then(|bc| t[a * n + bc]);
                    l.is_none() || l == r
                })
            })
        });
        let comps: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).filter(|&b| t[a * n + b] == Some(top)).collect())
            .collect();
        let e3 = comps.iter().all(|c| c.len() == 1);
        let e4 = (1..n).all(|a| t[a * n + top].is_none());
        if !(e2 && e3 && e4) {
            return;
        }
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for c in 0..n {
                if let Some(b) = t[a * n + c] {
                    leq[a * n + b] = true;
                }
            }
        }
        if !is_lattice(n, &leq) {
            return;
        }
        let inv = comps.iter().map(|c| c[0]).collect();
        out.insert(code(&Raw {
            n,
            leq,
            inv,
            table: t.clone(),
        }));
    });
    out
}

pub fn enumerated(class: TargetClass, n: usize) -> BTreeSet<Vec<u8>> {
    let found = enumerate(&EnumerationTask::new(class, n)).unwrap();
    let codes: BTreeSet<Vec<u8>> = found
        .algebras
        .iter()
        .map(|e| {
            let w = &e.algebra;
            let raw = Raw {
                n,
                leq: w.order().leq_table().to_vec(),
                inv: w.elems().map(|a| w.inv(a).index()).collect(),
                table: w.algebra().table().iter().map(|v| v.map(|x| x.index())).collect(),
            };
            code(&raw)
        })
        .collect();
    assert_eq!(
        codes.len(),
        found.algebras.len(),
        "two outputs of size {n} are isomorphic"
    );
    codes
}
