use std::sync::Arc;

use indexmap::IndexMap;
use proptest::prelude::*;

use lel_core::algebra::{Elem, Lea};
use lel_core::logic::{parse_formula, Formula, Model};
use lel_core::search::{canonical_library, enumerate, iso_canonical, relabel_weak, EnumerationTask, TargetClass};

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => (0..ATOMS.len()).prop_map(|i| Formula::atom(ATOMS[i])),
        1 => Just(Formula::bottom()),
        1 => Just(Formula::top()),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::sconj(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::sdisj(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::meet(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::join(a, b)),
        ]
    })
}

fn small_leas() -> Vec<Arc<Lea>> {
    canonical_library()
        .into_iter()
        .filter(|e| e.expected.lea && e.presentation.algebra.size() <= 6)
        .map(|e| Arc::new(Lea::new(e.presentation.algebra).unwrap()))
        .collect()
}

fn model(lea: &Arc<Lea>, picks: &[usize]) -> Model {
    let valuation: IndexMap<String, Elem> = ATOMS
        .iter()
        .zip(picks)
        .map(|(a, &k)| (a.to_string(), Elem::new(k % lea.size())))
        .collect();
    Model::new(lea.clone(), valuation)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_is_the_identity(f in formula(4)) {
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn expansion_is_core_and_idempotent(f in formula(3)) {
        let e = f.expand();
        prop_assert!(e.is_core());
        prop_assert_eq!(e.expand(), e);
    }

    #[test]
    fn derived_clauses_agree_with_expansions(f in formula(3), k in any::<prop::sample::Index>(), picks in prop::array::uniform3(0usize..16)) {
        let leas = small_leas();
        let lea = &leas[k.index(leas.len())];
        let m = model(lea, &picks);
        prop_assert_eq!(m.eval(&f).unwrap(), m.eval(&f.expand()).unwrap());
    }

    #[test]
    fn meet_join_and_implication_match_the_lattice(a in formula(2), b in formula(2), k in any::<prop::sample::Index>(), picks in prop::array::uniform3(0usize..16)) {
        let leas = small_leas();
        let lea = &leas[k.index(leas.len())];
        let m = model(lea, &picks);
        let (x, y) = (m.eval(&a).unwrap(), m.eval(&b).unwrap());
        prop_assert_eq!(m.eval(&Formula::meet(a.clone(), b.clone())).unwrap(), lea.meet(x, y));
        prop_assert_eq!(m.eval(&Formula::join(a.clone(), b.clone())).unwrap(), lea.join(x, y));
        prop_assert_eq!(m.is_valid(&Formula::implies(a, b)).unwrap(), lea.leq(x, y));
    }

    #[test]
    fn canonical_form_survives_relabeling(k in any::<prop::sample::Index>(), perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let found = enumerate(&EnumerationTask::new(TargetClass::WeakLea, 5)).unwrap();
        let e = &found.algebras[k.index(found.algebras.len())];
        let perm: Vec<Elem> = perm.into_iter().map(Elem::new).collect();
        let moved = relabel_weak(&e.algebra, &perm);
        prop_assert_eq!(iso_canonical(&moved), e.code.clone());
    }
}
