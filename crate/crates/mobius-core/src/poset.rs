//! Finite posets: construction, structural operations, canonical labeling,
//! and exhaustive enumeration up to isomorphism.
//!
//! Elements are `0..n` and the strict order is stored as one bitmask row
//! per element. Everything here is sized for desk scale (n <= 8 or so);
//! enumeration is guarded.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Hard cap on poset size; bitmask rows are u16.
pub const MAX_ELEMENTS: usize = 12;

/// Guard for exhaustive enumeration up to isomorphism.
pub const MAX_ENUMERATION: usize = 7;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PosetError {
    /// Transitive closure of the input produced `i < i`; the witness is a
    /// cover `[i, j]` (by position) lying on the cycle.
    CyclicInput { cover_index: usize, from: usize, to: usize },
    /// A cover references an element out of `0..n`.
    ElementOutOfRange { cover_index: usize, element: usize },
    TooLarge { n: usize },
    EnumerationBoundExceeded { requested: usize },
    /// Subset or layer index out of range for the operation.
    IndexOutOfRange { index: usize },
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::CyclicInput { cover_index, from, to } => write!(
                f,
                "cover #{cover_index} [{from},{to}] lies on a cycle; input is not antisymmetric"
            ),
            PosetError::ElementOutOfRange { cover_index, element } => {
                write!(f, "cover #{cover_index} references element {element} out of range")
            }
            PosetError::TooLarge { n } => write!(f, "poset with {n} elements exceeds the cap of {MAX_ELEMENTS}"),
            PosetError::EnumerationBoundExceeded { requested } => write!(
                f,
                "enumeration up to {requested} elements exceeds the guard of {MAX_ENUMERATION}"
            ),
            PosetError::IndexOutOfRange { index } => write!(f, "index {index} out of range"),
        }
    }
}

impl core::error::Error for PosetError {}

/// A finite poset on elements `0..n` with a strict order relation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Poset {
    n: usize,
    /// `below[i]` has bit `j` set iff `i` is strictly below `j`.
    below: Vec<u16>,
}

impl Poset {
    /// Build from strict covers `(i, j)` meaning `i` strictly below `j`.
    /// The transitive closure is applied; cycles are rejected with the
    /// offending cover position.
    pub fn new(n: usize, covers: &[(usize, usize)]) -> Result<Poset, PosetError> {
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge { n });
        }
        let mut below = vec![0u16; n];
        for (idx, &(i, j)) in covers.iter().enumerate() {
            if i >= n {
                return Err(PosetError::ElementOutOfRange { cover_index: idx, element: i });
            }
            if j >= n {
                return Err(PosetError::ElementOutOfRange { cover_index: idx, element: j });
            }
            below[i] |= 1 << j;
        }
        // Warshall transitive closure.
        for k in 0..n {
            for i in 0..n {
                if below[i] & (1 << k) != 0 {
                    below[i] |= below[k];
                }
            }
        }
        for (idx, &(i, j)) in covers.iter().enumerate() {
            if below[i] & (1 << i) != 0 || below[j] & (1 << j) != 0 {
                return Err(PosetError::CyclicInput { cover_index: idx, from: i, to: j });
            }
        }
        for i in 0..n {
            if below[i] & (1 << i) != 0 {
                // A cycle not touching any listed cover cannot happen, but
                // keep the check total.
                return Err(PosetError::CyclicInput { cover_index: 0, from: i, to: i });
            }
        }
        Ok(Poset { n, below })
    }

    pub(crate) fn from_rows_unchecked(n: usize, below: Vec<u16>) -> Poset {
        Poset { n, below }
    }

    pub fn empty() -> Poset {
        Poset { n: 0, below: Vec::new() }
    }

    pub fn discrete(n: usize) -> Poset {
        assert!(n <= MAX_ELEMENTS, "poset size exceeds the element cap");
        Poset { n, below: vec![0; n] }
    }

    pub fn chain(n: usize) -> Poset {
        assert!(n <= MAX_ELEMENTS, "poset size exceeds the element cap");
        let mut below = vec![0u16; n];
        for i in 0..n {
            for j in (i + 1)..n {
                below[i] |= 1 << j;
            }
        }
        Poset { n, below }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_strictly_below(&self, i: usize, j: usize) -> bool {
        self.below[i] & (1 << j) != 0
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.is_strictly_below(i, j) || self.is_strictly_below(j, i)
    }

    pub(crate) fn below_row(&self, i: usize) -> u16 {
        self.below[i]
    }

    /// Mask of elements strictly above `i`.
    pub fn up_mask(&self, i: usize) -> u16 {
        self.below[i]
    }

    /// Mask of elements strictly below `i`.
    pub fn down_mask(&self, i: usize) -> u16 {
        let mut m = 0u16;
        for j in 0..self.n {
            if self.is_strictly_below(j, i) {
                m |= 1 << j;
            }
        }
        m
    }

    /// All down-closed subsets, as bitmasks, sorted ascending.
    pub fn down_closed_subsets(&self) -> Vec<u16> {
        let full: u32 = 1u32 << self.n;
        let mut out = Vec::new();
        'outer: for s in 0..full {
            let s = s as u16;
            for x in 0..self.n {
                if s & (1 << x) != 0 && self.down_mask(x) & !s != 0 {
                    continue 'outer;
                }
            }
            out.push(s);
        }
        out
    }

    /// Induced subposet on the elements of `mask`, relabeled by ascending
    /// original index.
    pub fn restrict(&self, mask: u16) -> Poset {
        let elems: Vec<usize> = (0..self.n).filter(|&i| mask & (1 << i) != 0).collect();
        let mut below = vec![0u16; elems.len()];
        for (a, &i) in elems.iter().enumerate() {
            for (b, &j) in elems.iter().enumerate() {
                if self.is_strictly_below(i, j) {
                    below[a] |= 1 << b;
                }
            }
        }
        Poset { n: elems.len(), below }
    }

    /// Disjoint union; no relations between the two parts. Elements of
    /// `other` are shifted above `self`'s.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let n = self.n + other.n;
        assert!(n <= MAX_ELEMENTS, "disjoint union exceeds element cap");
        let mut below = vec![0u16; n];
        below[..self.n].copy_from_slice(&self.below);
        for i in 0..other.n {
            below[self.n + i] = other.below[i] << self.n;
        }
        Poset { n, below }
    }

    /// Mask of elements comparable to nothing.
    pub fn isolated_points(&self) -> u16 {
        let mut m = 0u16;
        for i in 0..self.n {
            if self.below[i] == 0 && self.down_mask(i) == 0 {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn is_discrete(&self) -> bool {
        self.below.iter().all(|&r| r == 0)
    }

    /// Roots-minimal forest test: the down-set of every element is a chain.
    pub fn is_forest(&self) -> bool {
        for i in 0..self.n {
            let d = self.down_mask(i);
            let elems: Vec<usize> = (0..self.n).filter(|&x| d & (1 << x) != 0).collect();
            for (a, &x) in elems.iter().enumerate() {
                for &y in &elems[a + 1..] {
                    if !self.comparable(x, y) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.is_strictly_below(i, j) {
                    continue;
                }
                let between = (0..self.n).any(|k| {
                    self.is_strictly_below(i, k) && self.is_strictly_below(k, j)
                });
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Relabel: element `i` becomes `perm[i]`.
    pub fn apply_perm(&self, perm: &[usize]) -> Poset {
        let mut below = vec![0u16; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if self.is_strictly_below(i, j) {
                    below[perm[i]] |= 1 << perm[j];
                }
            }
        }
        Poset { n: self.n, below }
    }

    /// Number of strictly increasing chains of down-closed subsets
    /// `empty = S_0 < S_1 < ... < S_k = everything`. This equals the
    /// number of k-layerings with every layer nonempty.
    pub fn count_strict_downset_chains(&self, k: usize) -> u64 {
        let full: u16 = if self.n == 16 { u16::MAX } else { (1u16 << self.n) - 1 };
        if k == 0 {
            return if self.n == 0 { 1 } else { 0 };
        }
        let downsets = self.down_closed_subsets();
        let index: BTreeMap<u16, usize> = downsets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        // count[i] = chains of the current length from downsets[i] up to full
        let mut count = vec![0u64; downsets.len()];
        count[*index.get(&full).expect("full set is down-closed")] = 1;
        for _ in 0..k {
            let mut next = vec![0u64; downsets.len()];
            for (i, &s) in downsets.iter().enumerate() {
                let mut total = 0u64;
                for (j, &t) in downsets.iter().enumerate() {
                    if t != s && t & s == s {
                        total += count[j];
                    }
                }
                next[i] = total;
            }
            count = next;
        }
        count[*index.get(&0).unwrap()]
    }
}

/// Deterministic canonical labeling of a poset with an iso-invariant
/// coloring (e.g. layer assignments). Returns the canonical relabeling
/// permutation, the automorphism count among color-preserving relabelings,
/// and the canonical relation bits.
///
/// Brute force over color-class-respecting permutations, pruned by
/// iterated degree refinement of the coloring. The number of candidates
/// achieving the minimal encoding equals `|Aut|`.
pub(crate) fn canonical_with_colors(p: &Poset, colors: &[u32]) -> CanonicalOutcome {
    let n = p.n;
    if n == 0 {
        return CanonicalOutcome {
            perm: Vec::new(),
            aut_order: 1,
        };
    }
    let refined = refine_colors(p, colors);

    // Target slot for each color: elements sorted by (color, .) occupy
    // contiguous ranges per color.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (refined[i], i));
    let slot_colors: Vec<u32> = order.iter().map(|&i| refined[i]).collect();
    let mut slot_range: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for (pos, &c) in slot_colors.iter().enumerate() {
        let e = slot_range.entry(c).or_insert((pos, pos));
        e.1 = pos;
    }

    // Group elements by color, in ascending color order.
    let mut groups: Vec<(u32, Vec<usize>)> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some((c, v)) if *c == refined[i] => v.push(i),
            _ => groups.push((refined[i], vec![i])),
        }
    }

    let mut best: Option<Vec<u8>> = None;
    let mut best_perm: Vec<usize> = Vec::new();
    let mut best_count: u64 = 0;
    let mut perm = vec![0usize; n];
    enumerate_assignments(&groups, &slot_range, 0, &mut perm, &mut |perm| {
        let bits = rel_bits_under(p, perm);
        match &best {
            Some(b) => {
                if bits < *b {
                    best = Some(bits);
                    best_perm = perm.to_vec();
                    best_count = 1;
                } else if bits == *b {
                    best_count += 1;
                }
            }
            None => {
                best = Some(bits);
                best_perm = perm.to_vec();
                best_count = 1;
            }
        }
    });

    CanonicalOutcome {
        perm: best_perm,
        aut_order: best_count,
    }
}

pub(crate) struct CanonicalOutcome {
    /// Relabeling onto canonical slots.
    pub perm: Vec<usize>,
    pub aut_order: u64,
}

fn enumerate_assignments(
    groups: &[(u32, Vec<usize>)],
    slot_range: &BTreeMap<u32, (usize, usize)>,
    g: usize,
    perm: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if g == groups.len() {
        visit(perm);
        return;
    }
    let (color, members) = &groups[g];
    let (lo, _hi) = slot_range[color];
    let k = members.len();
    let mut taken = vec![false; k];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        members: &[usize],
        lo: usize,
        taken: &mut Vec<bool>,
        depth: usize,
        groups: &[(u32, Vec<usize>)],
        slot_range: &BTreeMap<u32, (usize, usize)>,
        g: usize,
        perm: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if depth == members.len() {
            enumerate_assignments(groups, slot_range, g + 1, perm, visit);
            return;
        }
        for t in 0..members.len() {
            if !taken[t] {
                taken[t] = true;
                perm[members[depth]] = lo + t;
                rec(members, lo, taken, depth + 1, groups, slot_range, g, perm, visit);
                taken[t] = false;
            }
        }
    }
    rec(members, lo, &mut taken, 0, groups, slot_range, g, perm, visit);
}

fn rel_bits_under(p: &Poset, perm: &[usize]) -> Vec<u8> {
    let n = p.len();
    let mut inv = vec![0usize; n];
    for i in 0..n {
        inv[perm[i]] = i;
    }
    let mut bits = vec![0u8; (n * n).div_ceil(8)];
    for a in 0..n {
        for b in 0..n {
            if p.is_strictly_below(inv[a], inv[b]) {
                let idx = a * n + b;
                bits[idx / 8] |= 1 << (idx % 8);
            }
        }
    }
    bits
}

/// Iterated refinement of an iso-invariant coloring by the multiset of
/// neighbor colors above and below. Deterministic.
fn refine_colors(p: &Poset, init: &[u32]) -> Vec<u32> {
    let n = p.len();
    let mut colors: Vec<u32> = init.to_vec();
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lo: Vec<u32> = (0..n)
                .filter(|&j| p.is_strictly_below(j, i))
                .map(|j| colors[j])
                .collect();
            let mut hi: Vec<u32> = (0..n)
                .filter(|&j| p.is_strictly_below(i, j))
                .map(|j| colors[j])
                .collect();
            lo.sort_unstable();
            hi.sort_unstable();
            sigs.push((colors[i], lo, hi));
        }
        let mut distinct: Vec<&(u32, Vec<u32>, Vec<u32>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let renum: BTreeMap<&(u32, Vec<u32>, Vec<u32>), u32> = distinct
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i as u32))
            .collect();
        let next: Vec<u32> = sigs.iter().map(|s| renum[s]).collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

/// Exhaustive enumeration of posets up to isomorphism, one canonical
/// representative per class, grouped by size `0..=n_max`, each group
/// sorted by canonical key.
///
/// Works by extending each (n-1)-element class by a new maximal layer of
/// structure: a choice of down-set and up-set for the new element.
pub fn enumerate_posets(n_max: usize) -> Result<Vec<Poset>, PosetError> {
    if n_max > MAX_ENUMERATION {
        return Err(PosetError::EnumerationBoundExceeded { requested: n_max });
    }
    let mut out = vec![Poset::empty()];
    let mut current = vec![Poset::empty()];
    for _ in 1..=n_max {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut next: Vec<(String, Poset)> = Vec::new();
        for p in &current {
            let n = p.len();
            let downsets = p.down_closed_subsets();
            let upsets: Vec<u16> = upper_closed_subsets(p);
            for &d in &downsets {
                'us: for &u in &upsets {
                    if d & u != 0 {
                        continue;
                    }
                    // every element of d must already be below every element of u
                    for x in 0..n {
                        if d & (1 << x) == 0 {
                            continue;
                        }
                        if u & !p.below_row(x) != 0 {
                            continue 'us;
                        }
                    }
                    let mut below = vec![0u16; n + 1];
                    for i in 0..n {
                        below[i] = p.below_row(i);
                        if d & (1 << i) != 0 {
                            below[i] |= 1 << n;
                        }
                    }
                    below[n] = u;
                    let q = Poset::from_rows_unchecked(n + 1, below);
                    let outcome = canonical_with_colors(&q, &vec![0u32; n + 1]);
                    let canon = q.apply_perm(&outcome.perm);
                    let key = poset_key_string(&canon);
                    if seen.insert(key.clone()) {
                        next.push((key, canon));
                    }
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        current = next.into_iter().map(|(_, p)| p).collect();
        out.extend(current.iter().cloned());
    }
    Ok(out)
}

fn upper_closed_subsets(p: &Poset) -> Vec<u16> {
    let full: u32 = 1u32 << p.len();
    let mut out = Vec::new();
    'outer: for s in 0..full {
        let s = s as u16;
        for x in 0..p.len() {
            if s & (1 << x) != 0 && p.up_mask(x) & !s != 0 {
                continue 'outer;
            }
        }
        out.push(s);
    }
    out
}

/// Canonical key text of a poset on its own (no layering); shared with the
/// 1-layered form used by the incidence coalgebra.
pub(crate) fn poset_key_string(p: &Poset) -> String {
    crate::layered::LayeredPoset::one_layer(p.clone()).key_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_poset() -> Poset {
        // a < b, a < c
        Poset::new(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn construction_closure_and_cycles() {
        let p = Poset::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.is_strictly_below(0, 2), "transitive closure applied");
        let err = Poset::new(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, PosetError::CyclicInput { .. }));
        let err = Poset::new(2, &[(0, 5)]).unwrap_err();
        assert!(matches!(err, PosetError::ElementOutOfRange { element: 5, .. }));
    }

    #[test]
    fn down_closed_subsets_examples() {
        let chain2 = Poset::chain(2);
        assert_eq!(chain2.down_closed_subsets(), vec![0b00, 0b01, 0b11]);
        let d3 = Poset::discrete(3);
        assert_eq!(d3.down_closed_subsets().len(), 8);
        assert_eq!(v_poset().down_closed_subsets().len(), 5);
    }

    #[test]
    fn structural_helpers() {
        assert_eq!(v_poset().isolated_points(), 0);
        let free = Poset::discrete(1).disjoint_union(&Poset::chain(2));
        assert_eq!(free.isolated_points(), 0b001);
        assert!(Poset::discrete(4).is_discrete());
        assert!(!Poset::chain(2).is_discrete());
        let r = Poset::chain(3).restrict(0b101);
        assert_eq!(r.len(), 2);
        assert!(r.is_strictly_below(0, 1));
    }

    #[test]
    fn restrict_union_roundtrip() {
        let p = Poset::discrete(1).disjoint_union(&Poset::chain(2));
        let a = p.restrict(0b001);
        let b = p.restrict(0b110);
        let glued = a.disjoint_union(&b);
        let co = canonical_with_colors(&glued, &[0, 0, 0]);
        let cp = canonical_with_colors(&p, &[0, 0, 0]);
        assert_eq!(glued.apply_perm(&co.perm), p.apply_perm(&cp.perm));
        // relations crossing the split are lost
        let q = Poset::chain(2);
        let split = q.restrict(0b01).disjoint_union(&q.restrict(0b10));
        assert!(split.is_discrete());
        assert!(!q.is_discrete());
    }

    #[test]
    fn forest_detection() {
        assert!(Poset::discrete(3).is_forest());
        assert!(Poset::chain(3).is_forest());
        assert!(v_poset().is_forest());
        // two parents over one child is not a forest
        let lambda = Poset::new(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(!lambda.is_forest());
    }

    #[test]
    fn aut_orders() {
        let d3 = Poset::discrete(3);
        assert_eq!(canonical_with_colors(&d3, &[0, 0, 0]).aut_order, 6);
        let chain2 = Poset::chain(2);
        assert_eq!(canonical_with_colors(&chain2, &[0, 0]).aut_order, 1);
        assert_eq!(canonical_with_colors(&v_poset(), &[0, 0, 0]).aut_order, 2);
    }

    #[test]
    fn enumeration_counts_small() {
        let all = enumerate_posets(4).unwrap();
        let mut by_size = [0usize; 5];
        for p in &all {
            by_size[p.len()] += 1;
        }
        assert_eq!(by_size, [1, 1, 2, 5, 16]);
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(
            enumerate_posets(8),
            Err(PosetError::EnumerationBoundExceeded { .. })
        ));
    }

    #[test]
    fn chain_counting_matches_layerings() {
        // discrete_2: 1 one-layering with nonempty layer, 2 surjective 2-layerings
        let d2 = Poset::discrete(2);
        assert_eq!(d2.count_strict_downset_chains(0), 0);
        assert_eq!(d2.count_strict_downset_chains(1), 1);
        assert_eq!(d2.count_strict_downset_chains(2), 2);
        assert_eq!(d2.count_strict_downset_chains(3), 0);
        let c2 = Poset::chain(2);
        assert_eq!(c2.count_strict_downset_chains(2), 1);
        let empty = Poset::empty();
        assert_eq!(empty.count_strict_downset_chains(0), 1);
        assert_eq!(empty.count_strict_downset_chains(1), 0);
    }
}
