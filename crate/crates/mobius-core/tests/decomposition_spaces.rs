//! Axiom checks for the simplicial instances: the four pullback-square
//! families, Segal and completeness, décalage, culf maps, simplicial
//! identities, and the planted negative controls.

use std::rc::Rc;

use mobius_core::layered::LayeredPoset;
use mobius_core::poset::Poset;
use mobius_core::ptree::Signature;
use mobius_core::simplicial::{
    check_complete, check_culf, check_decomposition_space, check_segal,
    check_simplicial_identities, decalage, decalage_map, forest_to_poset_map,
    instance_forests, instance_layered_posets, instance_layered_sets, instance_ptrees,
    poset_to_set_map, with_dropped_class, DecalageSide,
};

#[test]
fn simplicial_identities_hold_for_all_instances() {
    let instances = [
        instance_layered_posets(),
        instance_layered_sets(),
        instance_forests(),
        instance_ptrees(Rc::new(Signature::single_binary())),
    ];
    for inst in instances {
        let report = check_simplicial_identities(&inst, 3, 3);
        assert!(
            report.passed(),
            "{}: {:?}",
            inst.name,
            report.failures().next()
        );
    }
}

#[test]
fn decomposition_space_axioms_for_posets_and_sets() {
    for inst in [instance_layered_posets(), instance_layered_sets()] {
        let report = check_decomposition_space(&inst, 4, 3);
        assert!(
            report.passed(),
            "{}: {:?}",
            inst.name,
            report.failures().collect::<Vec<_>>()
        );
    }
}

#[test]
fn decomposition_space_axioms_for_forests() {
    let report = check_decomposition_space(&instance_forests(), 4, 3);
    assert!(report.passed(), "{:?}", report.failures().next());
}

#[test]
fn dropped_simplex_is_detected() {
    let chain_split = LayeredPoset::new(Poset::chain(2), vec![1, 2], 2).unwrap();
    let mutated = with_dropped_class(&instance_layered_posets(), 2, chain_split.canonical().key);
    let report = check_decomposition_space(&mutated, 4, 3);
    assert!(!report.passed());
}

#[test]
fn segal_split() {
    // layered sets form a Segal space; layered posets do not
    let sets = check_segal(&instance_layered_sets(), 4, 3);
    assert!(sets.passed(), "{:?}", sets.failures().next());
    let posets = check_segal(&instance_layered_posets(), 4, 3);
    assert!(!posets.passed());
    let point = LayeredPoset::one_layer(Poset::discrete(1)).canonical().key;
    assert!(posets.failures().any(|e| e.witness.as_ref() == Some(&point)));
    // forests fail the Segal condition the same way
    let forests = check_segal(&instance_forests(), 4, 3);
    assert!(!forests.passed());
}

#[test]
fn completeness() {
    assert!(check_complete(&instance_layered_posets(), 4).unwrap());
    assert!(check_complete(&instance_layered_sets(), 4).unwrap());
    assert!(check_complete(&instance_forests(), 4).unwrap());
}

#[test]
fn decalage_of_a_decomposition_space_is_segal() {
    for inst in [instance_layered_posets(), instance_layered_sets()] {
        for side in [DecalageSide::Lower, DecalageSide::Upper] {
            let dec = decalage(&inst, side);
            let report = check_segal(&dec, 4, 2);
            assert!(
                report.passed(),
                "{}: {:?}",
                dec.name,
                report.failures().next()
            );
        }
    }
}

#[test]
fn decalage_maps_are_culf() {
    for inst in [instance_layered_posets(), instance_layered_sets()] {
        for side in [DecalageSide::Lower, DecalageSide::Upper] {
            let map = decalage_map(&inst, side);
            let report = check_culf(&map, 4, 3);
            assert!(
                report.passed(),
                "{}: {:?}",
                map.name,
                report.failures().collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn forest_to_poset_map_is_culf() {
    let report = check_culf(&forest_to_poset_map(), 4, 3);
    assert!(report.passed(), "{:?}", report.failures().next());
}

#[test]
fn forgetting_order_is_simplicial_but_not_culf() {
    let report = check_culf(&poset_to_set_map(), 4, 3);
    // the map commutes with all faces and degeneracies
    assert!(report
        .squares
        .iter()
        .filter(|e| e.id.starts_with("simplicial"))
        .all(|e| e.pass));
    // but the naturality squares are not pullbacks; the failure shows at
    // the inner face over the 2-element base
    let culf_failures: Vec<_> = report
        .failures()
        .filter(|e| e.id.starts_with("culf"))
        .collect();
    assert!(!culf_failures.is_empty());
}

#[test]
fn poset_fiber_of_the_join_counts_down_closed_subsets() {
    // orbit-stabilizer: the homotopy fiber of the inner face over P has
    // cardinality |Aut(P)| * sum over layering classes of 1/|Aut|, which
    // collapses to the raw number of down-closed subsets of P. This ties
    // the coproduct coefficients to the simplicial structure.
    use mobius_core::obj::Obj;
    use mobius_core::rational::Rational;
    use mobius_core::simplicial::Materializer;
    let inst = instance_layered_posets();
    let mut mat = Materializer::new(&inst, 4);
    let d1 = mat.face_map(2, 1).unwrap();
    let degree1 = mat.degree(1);
    for (i, rep) in degree1.reps.iter().enumerate() {
        let key = &degree1.groupoid.classes()[i].key;
        let p = match rep {
            Obj::Poset(lp) => lp.poset().clone(),
            _ => unreachable!(),
        };
        let fiber = mobius_core::groupoid::fiber_cardinality(&d1, key).unwrap();
        assert_eq!(
            fiber,
            Rational::from_int(p.down_closed_subsets().len() as i128),
            "fiber over {key}"
        );
    }
}
