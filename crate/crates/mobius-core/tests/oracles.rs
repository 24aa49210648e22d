//! Independent brute-force oracles for the enumeration and counting
//! routines. The oracles here deliberately avoid the algorithms used by
//! the library: posets are enumerated by backtracking over relation
//! matrices, forests over raw parent arrays, binomials via factorials,
//! surjection counts by enumerating maps.

use mobius_core::coalgebra::{coproduct_set, set_class_key};
use mobius_core::forest::enumerate_forests;
use mobius_core::layered::{nonempty_layerings_count, poset_layerings};
use mobius_core::poset::{enumerate_posets, Poset};
use mobius_core::rational::Rational;

use std::collections::BTreeSet;

/// All labelled strict orders on `n` elements, by backtracking over the
/// ordered-pair cells of the relation matrix with antisymmetry and
/// transitivity pruning, validated at the leaves by transitive closure.
fn labelled_posets_oracle(n: usize) -> Vec<Vec<u16>> {
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut cell_pos = vec![vec![usize::MAX; n]; n];
    for (idx, &(i, j)) in cells.iter().enumerate() {
        cell_pos[i][j] = idx;
    }
    let mut rel = vec![0u16; n];
    let mut out = Vec::new();
    fn bit(rel: &[u16], a: usize, b: usize) -> bool {
        rel[a] & (1 << b) != 0
    }
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        cell_pos: &[Vec<usize>],
        rel: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
        n: usize,
    ) {
        if idx == cells.len() {
            // leaf validation: transitively closed and irreflexive
            let mut closure = rel.clone();
            for k in 0..n {
                for i in 0..n {
                    if closure[i] & (1 << k) != 0 {
                        closure[i] |= closure[k];
                    }
                }
            }
            if closure == *rel && (0..n).all(|i| rel[i] & (1 << i) == 0) {
                out.push(rel.clone());
            }
            return;
        }
        let (i, j) = cells[idx];
        // value 0: no decided chain i -> b -> j may exist
        let chain_violated = (0..n).any(|b| bit(rel, i, b) && bit(rel, b, j));
        if !chain_violated {
            rec(idx + 1, cells, cell_pos, rel, out, n);
        }
        // value 1: antisymmetry and decided-transitivity pruning
        if !bit(rel, j, i) {
            let mut ok = true;
            for c in 0..n {
                if bit(rel, j, c) && cell_pos[i][c] < idx && !bit(rel, i, c) {
                    ok = false;
                    break;
                }
            }
            if ok {
                for a in 0..n {
                    if bit(rel, a, i) && cell_pos[a][j] < idx && !bit(rel, a, j) {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                rel[i] |= 1 << j;
                rec(idx + 1, cells, cell_pos, rel, out, n);
                rel[i] &= !(1 << j);
            }
        }
    }
    rec(0, &cells, &cell_pos, &mut rel, &mut out, n);
    out
}

fn poset_from_rows(n: usize, rows: &[u16]) -> Poset {
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rows[i] & (1 << j) != 0 {
                covers.push((i, j));
            }
        }
    }
    Poset::new(n, &covers).expect("oracle rows form a strict order")
}

#[test]
fn poset_class_counts_match_matrix_oracle() {
    // oracle: enumerate labelled strict orders, quotient by canonical form
    let mut oracle_counts = Vec::new();
    for n in 0..=6usize {
        let labelled = labelled_posets_oracle(n);
        let classes: BTreeSet<String> = labelled
            .iter()
            .map(|rows| {
                mobius_core::layered::LayeredPoset::one_layer(poset_from_rows(n, rows))
                    .canonical()
                    .key
                    .as_str()
                    .to_string()
            })
            .collect();
        oracle_counts.push(classes.len());
    }
    assert_eq!(oracle_counts, vec![1, 1, 2, 5, 16, 63, 318]);

    let all = enumerate_posets(6).unwrap();
    let mut by_size = vec![0usize; 7];
    for p in &all {
        by_size[p.len()] += 1;
    }
    assert_eq!(by_size, oracle_counts);
    assert_eq!(all.len(), 406);
}

#[test]
fn labelled_poset_counts_match_oracle() {
    // the labelled counts themselves double-check the oracle
    let counts: Vec<usize> = (0..=5).map(|n| labelled_posets_oracle(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
}

#[test]
fn forest_class_counts_match_parent_array_oracle() {
    let mut oracle_counts = Vec::new();
    for n in 0..=6usize {
        let mut classes: BTreeSet<String> = BTreeSet::new();
        // every parent array over {none, 0..n-1}
        let options = n + 1;
        let total = options.pow(n as u32);
        for code in 0..total {
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
            if let Ok(f) = mobius_core::forest::RootedForest::new(parent) {
                let key = mobius_core::layered::LayeredPoset::one_layer(f.to_poset())
                    .canonical()
                    .key;
                classes.insert(key.as_str().to_string());
            }
        }
        oracle_counts.push(classes.len());
    }
    assert_eq!(oracle_counts, vec![1, 1, 2, 4, 9, 20, 48]);

    let all = enumerate_forests(6).unwrap();
    let mut by_size = vec![0usize; 7];
    for f in &all {
        by_size[f.len()] += 1;
    }
    assert_eq!(by_size, oracle_counts);
}

#[test]
fn surjective_layerings_match_surjection_counter() {
    // oracle: count surjections from n labelled elements onto k layers
    fn surjections(n: usize, k: usize) -> u64 {
        if k == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let mut count = 0u64;
        let total = (k as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut hit = vec![false; k];
            for _ in 0..n {
                hit[(c % k as u64) as usize] = true;
                c /= k as u64;
            }
            if hit.iter().all(|&h| h) {
                count += 1;
            }
        }
        count
    }
    for n in 0..=6usize {
        let d = Poset::discrete(n);
        for k in 0..=n + 1 {
            assert_eq!(
                nonempty_layerings_count(&d, k),
                surjections(n, k),
                "n={n}, k={k}"
            );
        }
    }
}

#[test]
fn two_layerings_biject_with_down_closed_subsets() {
    for p in enumerate_posets(6).unwrap() {
        assert_eq!(
            poset_layerings(&p, 2).len(),
            p.down_closed_subsets().len(),
            "size {}",
            p.len()
        );
    }
}

#[test]
fn set_coproduct_matches_factorial_binomials() {
    fn factorial(n: u128) -> u128 {
        (1..=n).product::<u128>().max(1)
    }
    for n in 0..=8usize {
        let delta = coproduct_set(n);
        for k in 0..=n {
            let expected = factorial(n as u128)
                / (factorial(k as u128) * factorial((n - k) as u128));
            assert_eq!(
                delta.coeff(&(set_class_key(k), set_class_key(n - k))),
                Rational::from_int(expected as i128),
                "binomial({n},{k})"
            );
        }
    }
}

#[test]
fn chain_and_v_poset_examples() {
    let chain2 = Poset::chain(2);
    assert_eq!(chain2.down_closed_subsets().len(), 3);
    let v = Poset::new(3, &[(0, 1), (0, 2)]).unwrap();
    assert_eq!(v.down_closed_subsets().len(), 5);
    // layerings of the 2-chain at depth 2, enumerated directly
    assert_eq!(poset_layerings(&chain2, 2).len(), 3);
    assert_eq!(poset_layerings(&Poset::discrete(2), 2).len(), 4);
}
