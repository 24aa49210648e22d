//! Rooted forests, oriented roots-minimal so that down-closed means
//! ancestor-closed and the coproduct restricts the poset one.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poset::{enumerate_posets, Poset, PosetError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ForestError {
    /// Following parents from this node never reaches a root.
    Cycle { node: usize },
    ParentOutOfRange { node: usize, parent: usize },
    Poset(PosetError),
}

impl fmt::Display for ForestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForestError::Cycle { node } => write!(f, "node {node} lies on a parent cycle"),
            ForestError::ParentOutOfRange { node, parent } => {
                write!(f, "node {node} has parent {parent} out of range")
            }
            ForestError::Poset(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ForestError {}

impl From<PosetError> for ForestError {
    fn from(e: PosetError) -> ForestError {
        ForestError::Poset(e)
    }
}

/// A rooted forest given by a parent map; `None` marks a root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootedForest {
    parent: Vec<Option<usize>>,
}

impl RootedForest {
    pub fn new(parent: Vec<Option<usize>>) -> Result<RootedForest, ForestError> {
        let n = parent.len();
        if n > crate::poset::MAX_ELEMENTS {
            return Err(ForestError::Poset(PosetError::TooLarge { n }));
        }
        for (node, &p) in parent.iter().enumerate() {
            if let Some(p) = p {
                if p >= n {
                    return Err(ForestError::ParentOutOfRange { node, parent: p });
                }
            }
        }
        // walk each parent chain; more than n steps means a cycle
        for start in 0..n {
            let mut cur = start;
            let mut steps = 0;
            while let Some(p) = parent[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(ForestError::Cycle { node: start });
                }
            }
        }
        Ok(RootedForest { parent })
    }

    pub fn empty() -> RootedForest {
        RootedForest { parent: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Ancestor poset: roots minimal, each node above its ancestors.
    pub fn to_poset(&self) -> Poset {
        let n = self.len();
        let mut below = vec![0u16; n];
        for node in 0..n {
            let mut cur = node;
            while let Some(p) = self.parent[cur] {
                below[p] |= 1 << node;
                cur = p;
            }
        }
        Poset::from_rows_unchecked(n, below)
    }

    /// Recover a forest from a forest-shaped poset (the parent of a node
    /// is its unique maximal strict ancestor). Returns `None` when the
    /// poset is not forest-shaped.
    pub fn from_poset(p: &Poset) -> Option<RootedForest> {
        if !p.is_forest() {
            return None;
        }
        let n = p.len();
        let mut parent = vec![None; n];
        for node in 0..n {
            let down = p.down_mask(node);
            let mut best: Option<usize> = None;
            for anc in 0..n {
                if down & (1 << anc) == 0 {
                    continue;
                }
                best = match best {
                    None => Some(anc),
                    Some(b) if p.is_strictly_below(b, anc) => Some(anc),
                    other => other,
                };
            }
            parent[node] = best;
        }
        Some(RootedForest { parent })
    }

    /// True iff the forest is a disjoint union of isolated root nodes.
    pub fn is_isolated_roots(&self) -> bool {
        self.parent.iter().all(|p| p.is_none())
    }

    /// All admissible cuts: one per ancestor-closed node set, returned
    /// as (crown forest, root part). Includes the two trivial cuts.
    pub fn cuts(&self) -> Vec<(RootedForest, RootedForest)> {
        let poset = self.to_poset();
        let full: u16 = if self.is_empty() { 0 } else { (1 << self.len()) - 1 };
        poset
            .down_closed_subsets()
            .iter()
            .map(|&root_mask| {
                let root = RootedForest::from_poset(&poset.restrict(root_mask))
                    .expect("restrictions of forests are forests");
                let crown = RootedForest::from_poset(&poset.restrict(full & !root_mask))
                    .expect("restrictions of forests are forests");
                (crown, root)
            })
            .collect()
    }
}

/// All rooted forests up to isomorphism with `0..=n_max` nodes, realized
/// as the forest-shaped classes of the poset enumeration.
pub fn enumerate_forests(n_max: usize) -> Result<Vec<RootedForest>, ForestError> {
    let posets = enumerate_posets(n_max)?;
    Ok(posets
        .iter()
        .filter_map(RootedForest::from_poset)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RootedForest::new(vec![None, Some(0)]).is_ok());
        let err = RootedForest::new(vec![Some(1), Some(0)]).unwrap_err();
        assert!(matches!(err, ForestError::Cycle { .. }));
        let err = RootedForest::new(vec![Some(7)]).unwrap_err();
        assert!(matches!(err, ForestError::ParentOutOfRange { .. }));
    }

    #[test]
    fn poset_roundtrip() {
        // root 0 with children 1, 2; child 2 has child 3
        let f = RootedForest::new(vec![None, Some(0), Some(0), Some(2)]).unwrap();
        let p = f.to_poset();
        assert!(p.is_strictly_below(0, 3));
        assert!(p.is_forest());
        let back = RootedForest::from_poset(&p).unwrap();
        assert_eq!(back.parents(), f.parents());
        // two parents over one child is rejected
        let lambda = Poset::new(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(RootedForest::from_poset(&lambda).is_none());
    }

    #[test]
    fn enumeration_counts() {
        let all = enumerate_forests(4).unwrap();
        let mut by_size = [0usize; 5];
        for f in &all {
            by_size[f.len()] += 1;
        }
        assert_eq!(by_size, [1, 1, 2, 4, 9]);
    }

    #[test]
    fn cuts_of_a_two_chain() {
        // root 0 with child 1: cuts are trivial-top, mid, trivial-bottom
        let f = RootedForest::new(vec![None, Some(0)]).unwrap();
        let cuts = f.cuts();
        assert_eq!(cuts.len(), 3);
        assert!(cuts.iter().any(|(c, r)| c.len() == 2 && r.len() == 0));
        assert!(cuts.iter().any(|(c, r)| c.len() == 1 && r.len() == 1));
        assert!(cuts.iter().any(|(c, r)| c.len() == 0 && r.len() == 2));
    }

    #[test]
    fn size_two_classes() {
        let all = enumerate_forests(2).unwrap();
        let size2: Vec<&RootedForest> = all.iter().filter(|f| f.len() == 2).collect();
        assert_eq!(size2.len(), 2);
        assert!(size2.iter().any(|f| f.is_isolated_roots()));
        assert!(size2.iter().any(|f| !f.is_isolated_roots()));
    }
}
