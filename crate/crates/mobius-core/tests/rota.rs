//! The generalised Rota identity over the full poset corpus, together
//! with the two intermediate identities its proof factors through.

use mobius_core::bicomodule::{
    delta_left, delta_right, gamma_left, gamma_right, star_left, star_right, RotaEngine,
};
use mobius_core::coalgebra::{coproduct_poset, mobius_closed_poset, poset_class_key, Corpus};
use mobius_core::poset::{enumerate_posets, Poset};
use mobius_core::rational::Rational;

#[test]
fn rota_holds_on_every_poset_up_to_five() {
    let engine = RotaEngine::new(5);
    for p in enumerate_posets(5).unwrap() {
        let outcome = engine.check(&p);
        assert!(
            outcome.equal,
            "poset {}: lhs={} rhs={} closed={}",
            poset_class_key(&p),
            outcome.lhs,
            outcome.rhs,
            outcome.closed_form
        );
    }
}

#[test]
fn left_side_collapses_to_the_discrete_indicator() {
    let engine = RotaEngine::new(5);
    for p in enumerate_posets(5).unwrap() {
        let lhs = star_left(engine.mu_sets(), &delta_right(), &p);
        let expected = if p.is_discrete() {
            Rational::neg_one_pow(p.len())
        } else {
            Rational::ZERO
        };
        assert_eq!(lhs, expected, "poset {}", poset_class_key(&p));
    }
}

#[test]
fn right_side_collapses_to_the_poset_mobius_function() {
    let engine = RotaEngine::new(5);
    for p in enumerate_posets(5).unwrap() {
        let rhs = star_right(&delta_left(), engine.mu_posets(), &p);
        assert_eq!(
            rhs,
            engine.mu_posets().eval(&poset_class_key(&p)),
            "poset {}",
            poset_class_key(&p)
        );
    }
}

#[test]
fn delta_functionals_are_supported_on_the_empty_object() {
    assert_eq!(
        delta_right().eval(&poset_class_key(&Poset::empty())),
        Rational::ONE
    );
    assert_eq!(
        delta_right().eval(&poset_class_key(&Poset::discrete(1))),
        Rational::ZERO
    );
    assert_eq!(
        delta_left().eval(&poset_class_key(&Poset::chain(2))),
        Rational::ZERO
    );
}

#[test]
fn right_coaction_is_the_coproduct() {
    for p in enumerate_posets(4).unwrap() {
        assert_eq!(gamma_right(&p), coproduct_poset(&p));
    }
}

#[test]
fn left_coaction_grades_by_isolated_points() {
    // every term splits off a set of isolated points; coefficients are
    // binomial in the number of isolated points
    for p in enumerate_posets(4).unwrap() {
        let iso = p.isolated_points().count_ones() as usize;
        let g = gamma_left(&p);
        let total: Rational = g
            .iter()
            .fold(Rational::ZERO, |acc, (_, c)| acc + *c);
        assert_eq!(total, Rational::from_int(1i128 << iso));
    }
}

#[test]
fn rota_closed_form_examples() {
    let engine = RotaEngine::new(4);
    // the V-shaped poset has no isolated points and vanishing Mobius
    let v = Poset::new(3, &[(0, 1), (0, 2)]).unwrap();
    let outcome = engine.check(&v);
    assert_eq!(outcome.lhs, Rational::ZERO);
    assert_eq!(outcome.rhs, Rational::ZERO);
    assert_eq!(outcome.closed_form, Rational::ZERO);
    // discrete posets hit the sign of their size
    for n in 0..=4usize {
        let outcome = engine.check(&Poset::discrete(n));
        assert_eq!(outcome.closed_form, Rational::neg_one_pow(n));
        assert!(outcome.equal);
    }
    assert_eq!(engine.check(&Poset::discrete(3)).lhs, Rational::from_int(-1));
}

#[test]
fn mobius_differs_from_interval_mobius() {
    // the Mobius functional of the decomposition space vanishes on the
    // 2-chain, unlike the classical interval Mobius function
    let corpus = Corpus::posets(3);
    let mu = corpus.mobius();
    assert_eq!(mu.eval(&poset_class_key(&Poset::chain(2))), Rational::ZERO);
    assert_eq!(
        mu.eval(&poset_class_key(&Poset::discrete(2))),
        Rational::ONE
    );
    for p in enumerate_posets(3).unwrap() {
        assert_eq!(mu.eval(&poset_class_key(&p)), mobius_closed_poset(&p));
    }
}
