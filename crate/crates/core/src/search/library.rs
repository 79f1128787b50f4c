//! Named algebras used as fixtures, corpora and CLI shortcuts.

use serde::Serialize;

use crate::algebra::{ortholattice_embed, AlgebraFile, Elem, OrderStructure, PartialAlgebra, Presentation};

const FIG1A: &str = include_str!("../../data/algebras/fig1a.json");
const FIG1B: &str = include_str!("../../data/algebras/fig1b.json");

/// Outcomes the audits are expected to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub weak_lea: bool,
    /// Law the weak audit fails first, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_failure: Option<&'static str>,
    pub lea: bool,
    /// Law the lattice effect algebra audit fails first, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lea_failure: Option<&'static str>,
}

const LEA: Expected = Expected {
    weak_lea: true,
    weak_failure: None,
    lea: true,
    lea_failure: None,
};

#[derive(Clone, Debug)]
pub struct LibraryEntry {
    pub name: String,
    pub presentation: Presentation,
    pub expected: Expected,
}

pub fn canonical_library() -> Vec<LibraryEntry> {
    let fig1a_expected = Expected {
        weak_lea: true,
        weak_failure: None,
        lea: false,
        lea_failure: Some("E3"),
    };
    // the shipped table breaks W2 at (a, a', c'): a ⊕ (a' ⊕ c') = c but
    // (a ⊕ a') ⊕ c' = 1
    let fig1b_expected = Expected {
        weak_lea: false,
        weak_failure: Some("W2"),
        lea: false,
        lea_failure: Some("E3"),
    };
    let mut out = vec![
        entry("fig1a", fig1a(), fig1a_expected),
        entry("fig1b", fig1b(), fig1b_expected),
        entry("two_chain", Presentation::bare(mv_chain(1)), LEA),
    ];
    for n in 2..=10 {
        out.push(entry(&format!("mv_chain_{n}"), Presentation::bare(mv_chain(n)), LEA));
    }
    for k in 1..=3 {
        out.push(entry(&format!("boolean_{}", 1 << k), boolean(k), LEA));
    }
    for k in 1..=3 {
        out.push(entry(&format!("mo_{k}"), mo(k), LEA));
    }
    out.push(entry("diamond", Presentation::bare(diamond()), LEA));
    out
}

pub fn library_entry(name: &str) -> Option<LibraryEntry> {
    canonical_library().into_iter().find(|e| e.name == name)
}

fn entry(name: &str, presentation: Presentation, expected: Expected) -> LibraryEntry {
    LibraryEntry {
        name: name.to_string(),
        presentation,
        expected,
    }
}

fn shipped(text: &str) -> Presentation {
    AlgebraFile::from_json(text)
        .and_then(|f| f.to_presentation())
        .expect("shipped algebra files are well formed")
}

/// Six-element weak lattice effect algebra with `a ⊕ b = a ⊕ a' = b ⊕ b' = 1`.
pub fn fig1a() -> Presentation {
    shipped(FIG1A)
}

/// Eight-element bounded involutive lattice with `a ⊕ a' = c`. Its table
/// fails W2.
pub fn fig1b() -> Presentation {
    shipped(FIG1B)
}

/// `{0, 1/n, ..., 1}` with `a ⊕ b = a + b` when `a + b ≤ 1`.
pub fn mv_chain(n: usize) -> PartialAlgebra {
    assert!(n >= 1);
    let labels = (0..=n)
        .map(|k| match k {
            0 => "0".to_string(),
            k if k == n => "1".to_string(),
            k => format!("{k}/{n}"),
        })
        .collect();
    PartialAlgebra::from_fn(labels, Elem::new(0), Elem::new(n), |a, b| {
        (a.index() + b.index() <= n).then(|| Elem::new(a.index() + b.index()))
    })
    .expect("chain is well formed")
}

/// Boolean algebra with `2^k` elements, `⊕` = disjoint union.
pub fn boolean(k: usize) -> Presentation {
    assert!((1..=3).contains(&k));
    let n = 1usize << k;
    let names = if k == 2 {
        ["x", "x'"].as_slice()
    } else {
        ["a", "b", "c"].as_slice()
    };
    let full = n - 1;
    let label = |s: usize| -> String {
        match s {
            0 => "0".into(),
            s if s == full => "1".into(),
            s if s.count_ones() == 1 => names[s.trailing_zeros() as usize].into(),
            s => format!("{}'", names[(full ^ s).trailing_zeros() as usize]),
        }
    };
    // subsets ordered by size so that atoms come first
    let mut subsets: Vec<usize> = (0..n).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let pos = |s: usize| Elem::new(subsets.iter().position(|&t| t == s).expect("subset"));
    let mut pairs = Vec::new();
    for &s in &subsets {
        for &t in &subsets {
            if s & t == s {
                pairs.push((pos(s), pos(t)));
            }
        }
    }
    let inv = subsets.iter().map(|&s| pos(full ^ s)).collect();
    let order = OrderStructure::from_pairs(n, &pairs)
        .and_then(|o| o.with_involution(inv))
        .expect("power set is an ortholattice");
    let labels = subsets.iter().map(|&s| label(s)).collect();
    ortholattice_embed(labels, &order)
        .expect("Boolean algebras are orthocomplemented")
        .presentation()
}

/// `MO_k`: `0`, `1` and `k` pairs of incomparable atoms `x, x'`.
pub fn mo(k: usize) -> Presentation {
    assert!((1..=3).contains(&k));
    let n = 2 * k + 2;
    let top = Elem::new(n - 1);
    let mut labels = vec!["0".to_string()];
    let mut pairs = Vec::new();
    let mut inv = vec![top];
    for (i, name) in ["a", "b", "c"].iter().take(k).enumerate() {
        labels.push(name.to_string());
        labels.push(format!("{name}'"));
        let (x, y) = (Elem::new(2 * i + 1), Elem::new(2 * i + 2));
        pairs.extend([(Elem::new(0), x), (Elem::new(0), y), (x, top), (y, top)]);
        inv.extend([y, x]);
    }
    labels.push("1".to_string());
    inv.push(Elem::new(0));
    let order = OrderStructure::from_pairs(n, &pairs)
        .and_then(|o| o.with_involution(inv))
        .expect("MO_k is an ortholattice");
    ortholattice_embed(labels, &order)
        .expect("MO_k is orthocomplemented")
        .presentation()
}

/// Three atoms `x, y, z` under `1` with `x ⊕ y = 1` and `z ⊕ z = 1`: the
/// horizontal sum of the four-element Boolean algebra and the three-chain.
pub fn diamond() -> PartialAlgebra {
    let labels = ["0", "x", "y", "z", "1"].map(String::from).to_vec();
    let (x, y, z, one) = (Elem::new(1), Elem::new(2), Elem::new(3), Elem::new(4));
    PartialAlgebra::from_fn(labels, Elem::new(0), one, |a, b| match (a.index(), b.index()) {
        (0, _) => Some(b),
        (_, 0) => Some(a),
        _ if (a, b) == (x, y) || (a, b) == (y, x) || (a, b) == (z, z) => Some(one),
        _ => None,
    })
    .expect("diamond is well formed")
}
