//! The acceptance suite: ten numbered criteria, each printing one
//! pass/fail line (run with `cargo test --test acceptance -- --nocapture`
//! to see the lines for passing criteria too).
//!
//! Criterion 8 is expected to fail on exactly two square families
//! (`fibration:left:*` and `stability:top`): those squares are checked
//! faithfully and are genuinely not pullbacks for this construction —
//! each failure carries a 2-element witness, reproduced in the assertion
//! message. Every other sub-check of criterion 8 passes and is asserted.

use std::process::Command;
use std::rc::Rc;
use std::time::Instant;

use mobius_core::bicomodule::{
    check_abacus_axioms, check_bicomodule_configuration, check_fibrations,
    check_mobius_bicomodule, check_modified_bisimplicial, delta_left, delta_right, star_left,
    star_right, AbacusStyle, BicomoduleConfig, RotaEngine, TopFace,
};
use mobius_core::coalgebra::{
    coproduct_set, mobius_closed_forest, mobius_closed_pforest, mobius_closed_poset,
    mobius_forest, mobius_pforest, mobius_poset, mobius_set, poset_class_key, set_class_key,
    CoalgebraMutation, Corpus, CorpusObj,
};
use mobius_core::forest::{enumerate_forests, RootedForest};
use mobius_core::poset::{enumerate_posets, Poset};
use mobius_core::ptree::{PForest, PTree, Signature};
use mobius_core::rational::Rational;
use mobius_core::simplicial::{
    check_complete, check_culf, check_decomposition_space, check_segal, decalage_map,
    forest_to_poset_map, instance_layered_posets, instance_layered_sets, DecalageSide,
};

fn pass(n: usize, what: &str) {
    println!("criterion {n}: PASS — {what}");
}

#[test]
fn criterion_01_poset_mobius_closed_form() {
    let start = Instant::now();
    let posets = enumerate_posets(6).unwrap();
    assert_eq!(posets.len(), 406, "406 classes of posets up to 6 elements");
    for p in &posets {
        assert_eq!(
            mobius_poset(p),
            mobius_closed_poset(p),
            "inversion vs closed form at {}",
            poset_class_key(p)
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "must finish within 120 s single-threaded, took {elapsed:?}"
    );
    pass(1, &format!("406/406 poset classes agree with the closed form in {elapsed:?}"));
}

#[test]
fn criterion_02_mobius_inverts_zeta() {
    let corpora = vec![
        ("posets <= 6", Corpus::posets(6)),
        ("sets <= 8", Corpus::sets(8)),
        ("forests <= 6", Corpus::forests(6)),
        (
            "trees <= 5, one-color binary signature",
            Corpus::ptrees(Rc::new(Signature::single_binary()), 5, 2),
        ),
        (
            "trees <= 5, two-color mixed signature",
            Corpus::ptrees(Rc::new(Signature::two_color_mixed()), 5, 2),
        ),
    ];
    for (label, corpus) in corpora {
        let mu = corpus.mobius();
        let zeta = corpus.zeta();
        let eps = corpus.epsilon();
        assert_eq!(corpus.convolve(&mu, &zeta), eps, "mu * zeta = eps on {label}");
        assert_eq!(corpus.convolve(&zeta, &mu), eps, "zeta * mu = eps on {label}");
    }
    pass(2, "mu * zeta = eps = zeta * mu exactly on all five corpora");
}

#[test]
fn criterion_03_binomial_coalgebra() {
    fn factorial(n: u128) -> u128 {
        (1..=n).product::<u128>().max(1)
    }
    for n in 0..=8usize {
        let delta = coproduct_set(n);
        for k in 0..=n {
            let binom =
                factorial(n as u128) / (factorial(k as u128) * factorial((n - k) as u128));
            assert_eq!(
                delta.coeff(&(set_class_key(k), set_class_key(n - k))),
                Rational::from_int(binom as i128),
                "coefficient ({n} choose {k})"
            );
        }
        assert_eq!(mobius_set(n), Rational::neg_one_pow(n), "mu(set_{n})");
    }
    pass(3, "set coproducts are binomial (factorial oracle) and mu(set_n) = (-1)^n for n <= 8");
}

#[test]
fn criterion_04_generalised_rota_instance() {
    let engine = RotaEngine::new(6);
    for p in enumerate_posets(6).unwrap() {
        let outcome = engine.check(&p);
        assert!(
            outcome.equal,
            "rota identity at {}: lhs={} rhs={} closed={}",
            poset_class_key(&p),
            outcome.lhs,
            outcome.rhs,
            outcome.closed_form
        );
        // the two intermediate identities from the same computation
        let lhs = star_left(engine.mu_sets(), &delta_right(), &p);
        let indicator = if p.is_discrete() {
            Rational::neg_one_pow(p.len())
        } else {
            Rational::ZERO
        };
        assert_eq!(lhs, indicator, "left side collapses at {}", poset_class_key(&p));
        let rhs = star_right(&delta_left(), engine.mu_posets(), &p);
        assert_eq!(
            rhs,
            engine.mu_posets().eval(&poset_class_key(&p)),
            "right side collapses at {}",
            poset_class_key(&p)
        );
    }
    pass(4, "both sides of the generalised Rota formula equal the closed form on all 406 posets");
}

#[test]
fn criterion_05_forest_mobius_closed_form() {
    // brute-force oracle over parent arrays, reported alongside
    let mut oracle_counts = Vec::new();
    for n in 0..=6usize {
        let mut classes = std::collections::BTreeSet::new();
        let options = n + 1;
        for code in 0..options.pow(n as u32) {
            let mut c = code;
            let mut parent = Vec::with_capacity(n);
            for _ in 0..n {
                let v = c % options;
                c /= options;
                parent.push(if v == n { None } else { Some(v) });
            }
            if parent.iter().enumerate().any(|(i, &p)| p == Some(i)) {
                continue;
            }
            if let Ok(f) = RootedForest::new(parent) {
                classes.insert(poset_class_key(&f.to_poset()));
            }
        }
        oracle_counts.push(classes.len());
    }
    assert_eq!(oracle_counts, vec![1, 1, 2, 4, 9, 20, 48]);

    let forests = enumerate_forests(6).unwrap();
    let mut by_size = vec![0usize; 7];
    for f in &forests {
        by_size[f.len()] += 1;
        assert_eq!(
            mobius_forest(f),
            mobius_closed_forest(f),
            "forest of size {}",
            f.len()
        );
    }
    assert_eq!(by_size, oracle_counts);
    pass(
        5,
        &format!("all rooted forests <= 6 nodes agree; class counts per size {oracle_counts:?}"),
    );
}

#[test]
fn criterion_06_ptree_mobius_closed_form() {
    for (label, sig) in [
        ("one-color binary", Signature::single_binary()),
        ("two-color mixed", Signature::two_color_mixed()),
    ] {
        let sig = Rc::new(sig);
        let corpus = Corpus::ptrees(sig.clone(), 5, 2);
        let mut checked = 0usize;
        for obj in corpus.objects() {
            if let CorpusObj::PForest(f) = obj {
                assert_eq!(
                    mobius_pforest(f),
                    mobius_closed_pforest(f),
                    "{label}: {}",
                    f.key_string()
                );
                checked += 1;
            }
        }
        assert!(checked > 0);
        // the unit and a single operation, explicitly
        let bare = PForest::new(vec![PTree::Edge(0)]);
        assert_eq!(mobius_pforest(&bare), Rational::ONE, "{label}: bare edge");
        let corolla = PForest::new(vec![PTree::corolla(&sig, 0)]);
        assert_eq!(
            mobius_pforest(&corolla),
            Rational::from_int(-1),
            "{label}: single corolla"
        );
    }
    pass(6, "decorated forests <= 5 nodes agree for both signatures (bare edge +1, corolla -1)");
}

#[test]
fn criterion_07_decomposition_space_axioms() {
    let posets = instance_layered_posets();
    let sets = instance_layered_sets();
    for inst in [&posets, &sets] {
        let report = check_decomposition_space(inst, 4, 3);
        assert!(
            report.passed(),
            "{}: {:?}",
            inst.name,
            report.failures().collect::<Vec<_>>()
        );
    }
    let segal_sets = check_segal(&sets, 4, 3);
    assert!(segal_sets.passed(), "sets are Segal");
    let segal_posets = check_segal(&posets, 4, 3);
    assert!(!segal_posets.passed(), "posets must fail the Segal check");
    let witness = mobius_core::layered::LayeredPoset::one_layer(Poset::discrete(1))
        .canonical()
        .key;
    assert!(
        segal_posets
            .failures()
            .any(|e| e.witness.as_ref() == Some(&witness)),
        "witnessed at the 2-element base over the singleton"
    );
    assert!(check_complete(&posets, 4).unwrap());
    assert!(check_complete(&sets, 4).unwrap());
    for side in [DecalageSide::Lower, DecalageSide::Upper] {
        for inst in [&posets, &sets] {
            let report = check_culf(&decalage_map(inst, side), 4, 3);
            assert!(report.passed(), "décalage map culf for {}", inst.name);
        }
    }
    let report = check_culf(&forest_to_poset_map(), 4, 3);
    assert!(report.passed(), "forest-to-poset map culf");
    pass(7, "four square families, Segal split with witness, completeness, culf maps");
}

#[test]
fn criterion_08_abacus_construction() {
    let cfg = BicomoduleConfig::default(); // size <= 5, bidegrees <= (2,2)

    let abacus = check_abacus_axioms(&cfg);
    assert!(
        abacus.passed(),
        "abacus axioms: {:?}",
        abacus.failures().collect::<Vec<_>>()
    );
    let bisimplicial = check_modified_bisimplicial(&cfg);
    assert!(
        bisimplicial.passed(),
        "modified bisimplicial identities: {:?}",
        bisimplicial.failures().collect::<Vec<_>>()
    );
    let mobius = check_mobius_bicomodule(&cfg);
    assert!(
        mobius.passed(),
        "Möbius conditions: {:?}",
        mobius.failures().collect::<Vec<_>>()
    );

    // negative controls first: each mutation must produce failures
    let ordinal = check_abacus_axioms(&BicomoduleConfig {
        abacus: AbacusStyle::OrdinalSum,
        ..cfg.clone()
    });
    assert!(!ordinal.passed(), "ordinal-sum mutation must be detected");
    let unmodified = check_modified_bisimplicial(&BicomoduleConfig {
        top_face: TopFace::Unmodified,
        ..cfg.clone()
    });
    assert!(!unmodified.passed(), "unmodified top-face mutation must be detected");

    let fibrations = check_fibrations(&cfg);
    let configuration = check_bicomodule_configuration(&cfg);
    let mut failures: Vec<String> = fibrations
        .failures()
        .chain(configuration.failures())
        .map(|e| match &e.witness {
            Some(w) => format!("{} (witness {})", e.id, w),
            None => e.id.clone(),
        })
        .collect();
    failures.sort();
    println!(
        "criterion 8: FAIL — abacus axioms, bisimplicial identities, right fibration, \
         double Segal, bottom stability, culf augmentations, and Möbius conditions all \
         pass, but these cardinality-pullback squares genuinely fail: {failures:?}"
    );
    assert!(
        fibrations.passed() && configuration.passed(),
        "fibration and stability squares are checked faithfully and fail with 2-element \
         witnesses: {failures:?} — the transported set layer can never relate upward, \
         while the compared fiber contains exactly those relation patterns; see \
         notes/decisions.md for the full analysis"
    );
}

#[test]
fn criterion_09_coalgebra_laws() {
    let corpora = vec![
        Corpus::posets(5),
        Corpus::sets(8),
        Corpus::forests(5),
        Corpus::ptrees(Rc::new(Signature::single_binary()), 4, 2),
        Corpus::ptrees(Rc::new(Signature::two_color_mixed()), 3, 2),
    ];
    for corpus in &corpora {
        let report = corpus.verify_coalgebra_laws();
        assert!(report.passed(), "{:?}", report.failures().next());
    }
    for corpus in &corpora {
        let mutated = corpus.with_mutation(CoalgebraMutation::DropCut);
        assert!(
            !mutated.verify_coalgebra_laws().passed(),
            "cut-dropping mutation must be detected"
        );
    }
    pass(9, "coassociativity and counit laws hold on all corpora; the cut-dropping mutation fails");
}

#[test]
fn criterion_10_determinism_across_threads() {
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = Command::new(env!("CARGO_BIN_EXE_decomp-mobius"))
            .args(["verify", "rota", "--max-size", "6", "--format", "json"])
            .env("DECOMP_MOBIUS_THREADS", threads)
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "verify rota exits 0");
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1], "byte-identical across thread counts");
    pass(10, "verify rota output is byte-identical for 1 and 3 worker threads");
}
