//! Layerings of finite posets and finite sets.
//!
//! An n-layering is a monotone map to the ordinal `{1..n}`; layers may be
//! empty. Layered posets are the simplices of the decomposition space of
//! finite posets, layered sets those of finite sets. Isomorphism is always
//! over the identity of the ordinal, i.e. layer-preserving.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::groupoid::{IsoClass, Key};
use crate::poset::{canonical_with_colors, Poset};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LayeringError {
    NotMonotone { below: usize, above: usize },
    LayerOutOfRange { element: usize, layer: u8 },
}

impl fmt::Display for LayeringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayeringError::NotMonotone { below, above } => write!(
                f,
                "element {below} lies below {above} but is assigned a higher layer"
            ),
            LayeringError::LayerOutOfRange { element, layer } => {
                write!(f, "element {element} assigned layer {layer} out of range")
            }
        }
    }
}

impl core::error::Error for LayeringError {}

/// A layered finite poset: a poset with a monotone map to `{1..depth}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LayeredPoset {
    poset: Poset,
    /// Layer of each element, `1..=depth`.
    layer: Vec<u8>,
    depth: u8,
}

impl LayeredPoset {
    pub fn new(poset: Poset, layer: Vec<u8>, depth: u8) -> Result<LayeredPoset, LayeringError> {
        assert_eq!(layer.len(), poset.len());
        for (i, &l) in layer.iter().enumerate() {
            if l == 0 || l > depth {
                return Err(LayeringError::LayerOutOfRange { element: i, layer: l });
            }
        }
        for i in 0..poset.len() {
            for j in 0..poset.len() {
                if poset.is_strictly_below(i, j) && layer[i] > layer[j] {
                    return Err(LayeringError::NotMonotone { below: i, above: j });
                }
            }
        }
        Ok(LayeredPoset { poset, layer, depth })
    }

    /// The 1-layered form of a poset (everything in layer 1).
    pub fn one_layer(poset: Poset) -> LayeredPoset {
        let n = poset.len();
        LayeredPoset {
            poset,
            layer: vec![1; n],
            depth: 1,
        }
    }

    /// The unique 0-layered poset: the empty one.
    pub fn empty_zero_layered() -> LayeredPoset {
        LayeredPoset {
            poset: Poset::empty(),
            layer: Vec::new(),
            depth: 0,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn depth(&self) -> u8 {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn layer_of(&self, element: usize) -> u8 {
        self.layer[element]
    }

    pub fn layer_mask(&self, layer: u8) -> u16 {
        let mut m = 0u16;
        for (i, &l) in self.layer.iter().enumerate() {
            if l == layer {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn layer_size(&self, layer: u8) -> usize {
        self.layer.iter().filter(|&&l| l == layer).count()
    }

    /// Elements of the given layer that are isolated in the whole poset.
    pub fn discrete_part_of_layer(&self, layer: u8) -> u16 {
        self.layer_mask(layer) & self.poset.isolated_points()
    }

    /// Delete the lowest layer; surviving elements are reindexed ascending.
    /// Returns the result and the element map.
    pub fn delete_first_layer(&self) -> (LayeredPoset, Vec<Option<usize>>) {
        self.delete_layer(1)
    }

    pub fn delete_last_layer(&self) -> (LayeredPoset, Vec<Option<usize>>) {
        self.delete_layer(self.depth)
    }

    fn delete_layer(&self, layer: u8) -> (LayeredPoset, Vec<Option<usize>>) {
        assert!(self.depth >= 1);
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.layer[i] != layer).collect();
        let mut mask = 0u16;
        for &i in &keep {
            mask |= 1 << i;
        }
        let poset = self.poset.restrict(mask);
        let new_layer: Vec<u8> = keep
            .iter()
            .map(|&i| if self.layer[i] > layer { self.layer[i] - 1 } else { self.layer[i] })
            .collect();
        let mut elem_map = vec![None; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            elem_map[old] = Some(new);
        }
        (
            LayeredPoset {
                poset,
                layer: new_layer,
                depth: self.depth - 1,
            },
            elem_map,
        )
    }

    /// Join layers `i` and `i+1` (1-based).
    pub fn join_layers(&self, i: u8) -> (LayeredPoset, Vec<Option<usize>>) {
        assert!(i >= 1 && i < self.depth);
        let layer: Vec<u8> = self
            .layer
            .iter()
            .map(|&l| if l > i { l - 1 } else { l })
            .collect();
        let elem_map = (0..self.len()).map(Some).collect();
        (
            LayeredPoset {
                poset: self.poset.clone(),
                layer,
                depth: self.depth - 1,
            },
            elem_map,
        )
    }

    /// Insert an empty layer so that it becomes layer `pos` (1-based,
    /// `1..=depth+1`).
    pub fn insert_empty_layer(&self, pos: u8) -> (LayeredPoset, Vec<Option<usize>>) {
        assert!(pos >= 1 && pos <= self.depth + 1);
        let layer: Vec<u8> = self
            .layer
            .iter()
            .map(|&l| if l >= pos { l + 1 } else { l })
            .collect();
        let elem_map = (0..self.len()).map(Some).collect();
        (
            LayeredPoset {
                poset: self.poset.clone(),
                layer,
                depth: self.depth + 1,
            },
            elem_map,
        )
    }

    /// Append isolated elements to the given layer (disjoint union; no new
    /// relations). Returns the result; new elements take the highest
    /// indices in order.
    pub fn append_isolated(&self, count: usize, layer: u8) -> LayeredPoset {
        assert!(layer >= 1 && layer <= self.depth);
        let n = self.len();
        let poset = self.poset.disjoint_union(&Poset::discrete(count));
        let mut layers = self.layer.clone();
        layers.extend(core::iter::repeat_n(layer, count));
        debug_assert_eq!(layers.len(), n + count);
        LayeredPoset {
            poset,
            layer: layers,
            depth: self.depth,
        }
    }

    /// Append elements to the given layer placed below everything in
    /// layers strictly above it (ordinal-sum attachment). Only used as a
    /// negative control against the disjoint-union convention.
    pub fn append_ordinal(&self, count: usize, layer: u8) -> LayeredPoset {
        let base = self.append_isolated(count, layer);
        let n = self.len();
        let mut rows: Vec<u16> = (0..base.len()).map(|i| base.poset().below_row(i)).collect();
        for new in n..n + count {
            for other in 0..n {
                if self.layer[other] > layer {
                    rows[new] |= 1 << other;
                }
            }
        }
        LayeredPoset {
            poset: Poset::from_rows_unchecked(base.len(), rows),
            layer: base.layer,
            depth: base.depth,
        }
    }

    /// Remove the elements of `mask`; survivors reindexed ascending.
    pub fn remove_elements(&self, mask: u16) -> (LayeredPoset, Vec<Option<usize>>) {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| mask & (1 << i) == 0).collect();
        let mut keep_mask = 0u16;
        for &i in &keep {
            keep_mask |= 1 << i;
        }
        let poset = self.poset.restrict(keep_mask);
        let layer = keep.iter().map(|&i| self.layer[i]).collect();
        let mut elem_map = vec![None; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            elem_map[old] = Some(new);
        }
        (
            LayeredPoset {
                poset,
                layer,
                depth: self.depth,
            },
            elem_map,
        )
    }

    pub(crate) fn key_string(&self) -> String {
        let canon = self.canonical_rep().0;
        canon.raw_key_string()
    }

    fn raw_key_string(&self) -> String {
        let n = self.len();
        let layers: String = self.layer.iter().map(|l| (b'0' + l) as char).collect();
        let mut bits = vec![0u8; (n * n).div_ceil(8)];
        for i in 0..n {
            for j in 0..n {
                if self.poset.is_strictly_below(i, j) {
                    let idx = i * n + j;
                    bits[idx / 8] |= 1 << (idx % 8);
                }
            }
        }
        let hex: String = bits.iter().map(|b| format!("{b:02x}")).collect();
        format!("P:{n}:{}:{layers}:{hex}", self.depth)
    }

    /// Canonical labelled representative and the automorphism order.
    pub fn canonical_rep(&self) -> (LayeredPoset, u64) {
        let colors: Vec<u32> = self.layer.iter().map(|&l| l as u32).collect();
        let outcome = canonical_with_colors(&self.poset, &colors);
        let poset = self.poset.apply_perm(&outcome.perm);
        let mut layer = vec![0u8; self.len()];
        for i in 0..self.len() {
            layer[outcome.perm[i]] = self.layer[i];
        }
        (
            LayeredPoset {
                poset,
                layer,
                depth: self.depth,
            },
            outcome.aut_order,
        )
    }

    pub fn canonical(&self) -> IsoClass {
        let (rep, aut_order) = self.canonical_rep();
        IsoClass {
            key: Key::new(rep.raw_key_string()),
            aut_order,
        }
    }

    /// All layer-preserving automorphisms, as element permutations.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for l in 1..=self.depth.max(1) {
            let members: Vec<usize> = (0..n).filter(|&i| self.layer[i] == l).collect();
            if !members.is_empty() {
                groups.push(members);
            }
        }
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        self.perm_search(&groups, 0, &mut perm, &mut out);
        if out.is_empty() {
            out.push((0..n).collect());
        }
        out
    }

    fn perm_search(
        &self,
        groups: &[Vec<usize>],
        g: usize,
        perm: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if g == groups.len() {
            if self.poset.apply_perm(perm) == self.poset {
                out.push(perm.clone());
            }
            return;
        }
        let members = &groups[g];
        let k = members.len();
        let mut used = vec![false; k];
        self.assign(members, &mut used, 0, groups, g, perm, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        members: &[usize],
        used: &mut Vec<bool>,
        depth: usize,
        groups: &[Vec<usize>],
        g: usize,
        perm: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == members.len() {
            self.perm_search(groups, g + 1, perm, out);
            return;
        }
        for t in 0..members.len() {
            if !used[t] {
                used[t] = true;
                perm[members[depth]] = members[t];
                self.assign(members, used, depth + 1, groups, g, perm, out);
                used[t] = false;
            }
        }
    }
}

/// All monotone layerings of a poset into `{1..depth}`, in lexicographic
/// order of the layer vector. For positive depth and the empty poset this
/// is the single empty layering; for depth 0 it is nonempty only when the
/// poset is empty.
pub fn poset_layerings(p: &Poset, depth: u8) -> Vec<LayeredPoset> {
    let n = p.len();
    if depth == 0 {
        return if n == 0 {
            vec![LayeredPoset::empty_zero_layered()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut layer = vec![1u8; n];
    loop {
        let monotone = (0..n).all(|i| {
            (0..n).all(|j| !p.is_strictly_below(i, j) || layer[i] <= layer[j])
        });
        if monotone {
            out.push(LayeredPoset {
                poset: p.clone(),
                layer: layer.clone(),
                depth,
            });
        }
        // next vector
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if layer[i] < depth {
                layer[i] += 1;
                for v in layer.iter_mut().skip(i + 1) {
                    *v = 1;
                }
                break;
            }
        }
        if n == 0 {
            return out;
        }
    }
}

/// A layered finite set, stored as the sorted vector of element layers.
/// Two layered sets are isomorphic over the ordinal iff their layer size
/// vectors agree, so the sorted form is already canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LayeredSet {
    layer: Vec<u8>,
    depth: u8,
}

impl LayeredSet {
    pub fn new(mut layer: Vec<u8>, depth: u8) -> Result<LayeredSet, LayeringError> {
        for (i, &l) in layer.iter().enumerate() {
            if l == 0 || l > depth {
                return Err(LayeringError::LayerOutOfRange { element: i, layer: l });
            }
        }
        layer.sort_unstable();
        Ok(LayeredSet { layer, depth })
    }

    pub fn from_sizes(sizes: &[usize]) -> LayeredSet {
        let mut layer = Vec::new();
        for (i, &c) in sizes.iter().enumerate() {
            layer.extend(core::iter::repeat_n((i + 1) as u8, c));
        }
        LayeredSet {
            layer,
            depth: sizes.len() as u8,
        }
    }

    /// One layer holding `n` elements.
    pub fn one_layer(n: usize) -> LayeredSet {
        LayeredSet::from_sizes(&[n])
    }

    pub fn empty_zero_layered() -> LayeredSet {
        LayeredSet {
            layer: Vec::new(),
            depth: 0,
        }
    }

    pub fn depth(&self) -> u8 {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.layer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layer.is_empty()
    }

    pub fn layer_of(&self, element: usize) -> u8 {
        self.layer[element]
    }

    pub fn layer_size(&self, layer: u8) -> usize {
        self.layer.iter().filter(|&&l| l == layer).count()
    }

    pub fn sizes(&self) -> Vec<usize> {
        (1..=self.depth).map(|l| self.layer_size(l)).collect()
    }

    pub fn delete_first_layer(&self) -> (LayeredSet, Vec<Option<usize>>) {
        self.delete_layer(1)
    }

    pub fn delete_last_layer(&self) -> (LayeredSet, Vec<Option<usize>>) {
        self.delete_layer(self.depth)
    }

    fn delete_layer(&self, layer: u8) -> (LayeredSet, Vec<Option<usize>>) {
        assert!(self.depth >= 1);
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.layer[i] != layer).collect();
        let new_layer: Vec<u8> = keep
            .iter()
            .map(|&i| if self.layer[i] > layer { self.layer[i] - 1 } else { self.layer[i] })
            .collect();
        let mut elem_map = vec![None; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            elem_map[old] = Some(new);
        }
        (
            LayeredSet {
                layer: new_layer,
                depth: self.depth - 1,
            },
            elem_map,
        )
    }

    pub fn join_layers(&self, i: u8) -> (LayeredSet, Vec<Option<usize>>) {
        assert!(i >= 1 && i < self.depth);
        let layer: Vec<u8> = self
            .layer
            .iter()
            .map(|&l| if l > i { l - 1 } else { l })
            .collect();
        let elem_map = (0..self.len()).map(Some).collect();
        (
            LayeredSet {
                layer,
                depth: self.depth - 1,
            },
            elem_map,
        )
    }

    pub fn insert_empty_layer(&self, pos: u8) -> (LayeredSet, Vec<Option<usize>>) {
        assert!(pos >= 1 && pos <= self.depth + 1);
        let layer: Vec<u8> = self
            .layer
            .iter()
            .map(|&l| if l >= pos { l + 1 } else { l })
            .collect();
        let elem_map = (0..self.len()).map(Some).collect();
        (
            LayeredSet {
                layer,
                depth: self.depth + 1,
            },
            elem_map,
        )
    }

    /// Append `count` elements in a new top layer.
    pub fn push_top_layer(&self, count: usize) -> LayeredSet {
        let mut layer = self.layer.clone();
        layer.extend(core::iter::repeat_n(self.depth + 1, count));
        LayeredSet {
            layer,
            depth: self.depth + 1,
        }
    }

    pub fn key_string(&self) -> String {
        let sizes: Vec<String> = self.sizes().iter().map(|c| format!("{c}")).collect();
        format!("S:{}:{}", self.depth, sizes.join(","))
    }

    pub fn aut_order(&self) -> u64 {
        (1..=self.depth)
            .map(|l| factorial(self.layer_size(l) as u64))
            .product()
    }

    pub fn canonical(&self) -> IsoClass {
        IsoClass {
            key: Key::new(self.key_string()),
            aut_order: self.aut_order(),
        }
    }

    /// All layer-preserving permutations of the elements.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let groups: Vec<Vec<usize>> = (1..=self.depth.max(1))
            .map(|l| (0..n).filter(|&i| self.layer[i] == l).collect::<Vec<_>>())
            .filter(|g| !g.is_empty())
            .collect();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        fn rec(groups: &[Vec<usize>], g: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if g == groups.len() {
                out.push(perm.clone());
                return;
            }
            let members = &groups[g];
            let mut used = vec![false; members.len()];
            fn assign(
                members: &[usize],
                used: &mut Vec<bool>,
                depth: usize,
                groups: &[Vec<usize>],
                g: usize,
                perm: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if depth == members.len() {
                    rec(groups, g + 1, perm, out);
                    return;
                }
                for t in 0..members.len() {
                    if !used[t] {
                        used[t] = true;
                        perm[members[depth]] = members[t];
                        assign(members, used, depth + 1, groups, g, perm, out);
                        used[t] = false;
                    }
                }
            }
            assign(members, &mut used, 0, groups, g, perm, out);
        }
        rec(&groups, 0, &mut perm, &mut out);
        if out.is_empty() {
            out.push((0..n).collect());
        }
        out
    }
}

pub(crate) fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// All layer vectors (not up to isomorphism) of an `n`-element set into
/// `{1..depth}`, in lexicographic order.
pub fn set_layerings(n: usize, depth: u8) -> Vec<Vec<u8>> {
    if depth == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut v = vec![1u8; n];
    loop {
        out.push(v.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < depth {
                v[i] += 1;
                for x in v.iter_mut().skip(i + 1) {
                    *x = 1;
                }
                break;
            }
        }
        if n == 0 {
            return out;
        }
    }
}

/// Number of `depth`-layerings of the structure with every layer
/// nonempty. For posets this is the count of surjective-onto-layers
/// monotone maps, computed as strict chains of down-closed subsets.
pub fn nonempty_layerings_count(p: &Poset, depth: usize) -> u64 {
    p.count_strict_downset_chains(depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn layering_counts() {
        let chain2 = Poset::chain(2);
        assert_eq!(poset_layerings(&chain2, 2).len(), 3);
        let d2 = Poset::discrete(2);
        assert_eq!(poset_layerings(&d2, 2).len(), 4);
        assert_eq!(poset_layerings(&d2, 0).len(), 0);
        assert_eq!(poset_layerings(&Poset::empty(), 0).len(), 1);
        assert_eq!(set_layerings(2, 2).len(), 4);
    }

    #[test]
    fn nonempty_counts() {
        let d2 = Poset::discrete(2);
        assert_eq!(nonempty_layerings_count(&d2, 1), 1);
        assert_eq!(nonempty_layerings_count(&d2, 2), 2);
        assert_eq!(nonempty_layerings_count(&d2, 3), 0);
        assert_eq!(nonempty_layerings_count(&Poset::chain(2), 2), 1);
        assert_eq!(nonempty_layerings_count(&Poset::empty(), 0), 1);
        assert_eq!(nonempty_layerings_count(&Poset::empty(), 1), 0);
    }

    #[test]
    fn monotonicity_enforced() {
        let chain2 = Poset::chain(2);
        assert!(LayeredPoset::new(chain2.clone(), vec![2, 1], 2).is_err());
        assert!(LayeredPoset::new(chain2, vec![1, 2], 2).is_ok());
    }

    #[test]
    fn faces_and_degeneracies() {
        let chain2 = Poset::chain(2);
        let lp = LayeredPoset::new(chain2.clone(), vec![1, 2], 2).unwrap();
        // joining the two layers gives the 1-layered chain
        let (joined, _) = lp.join_layers(1);
        assert_eq!(joined, LayeredPoset::one_layer(chain2.clone()));
        // deleting the bottom layer leaves the singleton
        let (top, map) = lp.delete_first_layer();
        assert_eq!(top.len(), 1);
        assert_eq!(map, vec![None, Some(0)]);
        // inserting an empty layer then joining it back is the identity
        let (padded, _) = lp.insert_empty_layer(2);
        assert_eq!(padded.depth(), 3);
        let (back, _) = padded.join_layers(1);
        assert_eq!(back, lp);
    }

    #[test]
    fn canonical_layered_separates_classes() {
        // chain split across layers vs discrete split: different classes
        let chain_split = LayeredPoset::new(Poset::chain(2), vec![1, 2], 2).unwrap();
        let discrete_split = LayeredPoset::new(Poset::discrete(2), vec![1, 2], 2).unwrap();
        assert_ne!(chain_split.canonical().key, discrete_split.canonical().key);
        // but relabeling does not change the class
        let swapped = LayeredPoset::new(
            Poset::new(2, &[(1, 0)]).unwrap(),
            vec![2, 1],
            2,
        )
        .unwrap();
        assert_eq!(swapped.canonical(), chain_split.canonical());
    }

    #[test]
    fn layered_set_basics() {
        let s = LayeredSet::from_sizes(&[1, 2]);
        assert_eq!(s.key_string(), "S:2:1,2");
        assert_eq!(s.aut_order(), 2);
        assert_eq!(s.automorphisms().len(), 2);
        let (joined, _) = s.join_layers(1);
        assert_eq!(joined.key_string(), "S:1:3");
        assert_eq!(LayeredSet::one_layer(0).key_string(), "S:1:0");
    }

    #[test]
    fn discrete_part() {
        // both elements of the chain in layer 1: nothing is isolated
        let lp = LayeredPoset::one_layer(Poset::chain(2));
        assert_eq!(lp.discrete_part_of_layer(1), 0);
        let free = LayeredPoset::one_layer(Poset::discrete(1).disjoint_union(&Poset::chain(2)));
        assert_eq!(free.discrete_part_of_layer(1), 0b001);
    }

    #[test]
    fn key_strings_stable() {
        let lp = LayeredPoset::one_layer(Poset::chain(2));
        assert_eq!(lp.canonical().key.to_string(), lp.canonical().key.to_string());
        assert_eq!(lp.canonical().key.object_size(), 2);
    }
}
