//! Canonical forms up to isomorphism.
//!
//! An isomorphism is a bijection preserving `≤`, `'`, `0`, `1` and `⊕`
//! including definedness. Elements are first split into classes by
//! isomorphism-invariant keys; the canonical form is the lexicographically
//! least encoding over all relabelings that keep the class blocks in place.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{Elem, OrderStructure, PartialAlgebra, WeakLea};

/// Encoding of a structure under its least relabeling. Equal forms mean
/// isomorphic structures and conversely.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Raw view used by both the public entry points and the enumerator.
pub(crate) struct Shape<'a> {
    pub n: usize,
    pub leq: &'a [bool],
    pub inv: &'a [usize],
    pub table: Option<&'a [Option<usize>]>,
}

const UNDEFINED: u8 = 0xff;

impl Shape<'_> {
    fn key(&self, x: usize) -> [usize; 5] {
        let n = self.n;
        let down = (0..n).filter(|&y| self.leq[y * n + x]).count();
        let up = (0..n).filter(|&y| self.leq[x * n + y]).count();
        let fixed = usize::from(self.inv[x] == x);
        let (partners, to_top) = match self.table {
            Some(t) => {
                let tops: Vec<usize> = (0..n).filter(|&y| (0..n).all(|z| self.leq[z * n + y])).collect();
                let partners = (0..n).filter(|&y| t[x * n + y].is_some()).count();
                let to_top = (0..n)
                    .filter(|&y| t[x * n + y].is_some_and(|v| tops.contains(&v)))
                    .count();
                (partners, to_top)
            }
            None => (0, 0),
        };
        [down, up, fixed, partners, to_top]
    }

    /// `order[new] = old`.
    fn encode(&self, order: &[usize], pos: &[usize], out: &mut Vec<u8>) {
        let n = self.n;
        out.clear();
        out.push(n as u8);
        for &i in order {
            for &j in order {
                out.push(u8::from(self.leq[i * n + j]));
            }
        }
        for &i in order {
            out.push(pos[self.inv[i]] as u8);
        }
        if let Some(t) = self.table {
            for &i in order {
                for &j in order {
                    out.push(t[i * n + j].map_or(UNDEFINED, |v| pos[v] as u8));
                }
            }
        }
    }

    /// Least code and the relabeling that attains it.
    pub fn canonical(&self) -> (CanonicalForm, Vec<usize>) {
        let n = self.n;
        let keys: Vec<[usize; 5]> = (0..n).map(|x| self.key(x)).collect();
        let mut sorted: Vec<usize> = (0..n).collect();
        sorted.sort_by_key(|&x| (keys[x], x));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &x in &sorted {
            match blocks.last_mut() {
                Some(b) if keys[b[0]] == keys[x] => b.push(x),
                _ => blocks.push(vec![x]),
            }
        }
        let perms: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| permutations(b)).collect();
        let mut choice = vec![0usize; blocks.len()];
        let mut order = Vec::with_capacity(n);
        let mut pos = vec![0usize; n];
        let mut code = Vec::new();
        let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
        loop {
            order.clear();
            for (k, p) in perms.iter().enumerate() {
                order.extend_from_slice(&p[choice[k]]);
            }
            for (new, &old) in order.iter().enumerate() {
                pos[old] = new;
            }
            self.encode(&order, &pos, &mut code);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                best = Some((code.clone(), order.clone()));
            }
            // odometer over the per-block permutations
            let mut k = 0;
            loop {
                if k == choice.len() {
                    let (code, order) = best.expect("at least one relabeling");
                    return (CanonicalForm(code), order);
                }
                choice[k] += 1;
                if choice[k] < perms[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
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

fn raw(w: &WeakLea) -> (Vec<usize>, Vec<Option<usize>>) {
    let inv = w.elems().map(|a| w.inv(a).index()).collect();
    let table = w.algebra().table().iter().map(|v| v.map(Elem::index)).collect();
    (inv, table)
}

/// Canonical form of `w` (order, involution and table).
pub fn iso_canonical(w: &WeakLea) -> CanonicalForm {
    canonical_relabeling(w).0
}

/// Canonical form and `order`, where `order[i]` is the element that takes
/// position `i` in the canonical labeling.
pub fn canonical_relabeling(w: &WeakLea) -> (CanonicalForm, Vec<Elem>) {
    let (inv, table) = raw(w);
    let shape = Shape {
        n: w.size(),
        leq: w.order().leq_table(),
        inv: &inv,
        table: Some(&table),
    };
    let (code, order) = shape.canonical();
    (code, order.into_iter().map(Elem::new).collect())
}

/// Canonical form of a bounded lattice with involution, ignoring `⊕`.
pub fn order_canonical(order: &OrderStructure) -> Option<CanonicalForm> {
    let inv: Vec<usize> = order.involution()?.iter().map(|e| e.index()).collect();
    let shape = Shape {
        n: order.size(),
        leq: order.leq_table(),
        inv: &inv,
        table: None,
    };
    Some(shape.canonical().0)
}

/// Copy of `w` in which old element `i` moves to position `perm[i]`; labels
/// travel along.
pub fn relabel_weak(w: &WeakLea, perm: &[Elem]) -> WeakLea {
    let n = w.size();
    let alg: PartialAlgebra = w.algebra().relabel(perm);
    let mut leq = vec![false; n * n];
    let mut inv = vec![Elem::new(0); n];
    for a in w.elems() {
        inv[perm[a.index()].index()] = perm[w.inv(a).index()];
        for b in w.elems() {
            leq[perm[a.index()].index() * n + perm[b.index()].index()] = w.leq(a, b);
        }
    }
    let order = OrderStructure::from_leq(n, leq)
        .and_then(|o| o.with_involution(inv))
        .expect("relabeling preserves the lattice");
    WeakLea::new(alg, order).expect("relabeling preserves bounds")
}
