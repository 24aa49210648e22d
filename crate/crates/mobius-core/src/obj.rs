//! A common carrier for the objects of every simplicial groupoid in the
//! crate, so the materialization machinery and axiom checkers are written
//! once.

use alloc::vec::Vec;

use crate::bicomodule::LayeredPair;
use crate::groupoid::IsoClass;
use crate::layered::{LayeredPoset, LayeredSet};
use crate::ptree::LayeredPForest;

/// A concrete simplex of one of the instances.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Obj {
    Poset(LayeredPoset),
    Set(LayeredSet),
    Pair(LayeredPair),
    PForest(LayeredPForest),
}

impl Obj {
    /// Element count (for decorated forests: nodes plus bare edges).
    pub fn size(&self) -> usize {
        match self {
            Obj::Poset(x) => x.len(),
            Obj::Set(x) => x.len(),
            Obj::Pair(x) => x.size(),
            Obj::PForest(x) => x.forest().node_count() + x.forest().bare_count(),
        }
    }

    pub fn canonical(&self) -> IsoClass {
        match self {
            Obj::Poset(x) => x.canonical(),
            Obj::Set(x) => x.canonical(),
            Obj::Pair(x) => x.canonical(),
            Obj::PForest(x) => x.canonical(),
        }
    }

    /// Automorphisms as permutations of the element universe, when the
    /// variant tracks elements (decorated forests do not).
    pub fn automorphisms(&self) -> Option<Vec<Vec<usize>>> {
        match self {
            Obj::Poset(x) => Some(x.automorphisms()),
            Obj::Set(x) => Some(x.automorphisms()),
            Obj::Pair(x) => Some(x.automorphisms()),
            Obj::PForest(_) => None,
        }
    }

    pub fn universe_len(&self) -> usize {
        match self {
            Obj::Poset(x) => x.len(),
            Obj::Set(x) => x.len(),
            Obj::Pair(x) => x.size(),
            Obj::PForest(x) => x.forest().node_count(),
        }
    }

    pub fn as_poset(&self) -> &LayeredPoset {
        match self {
            Obj::Poset(x) => x,
            _ => panic!("expected a layered poset"),
        }
    }

    pub fn as_set(&self) -> &LayeredSet {
        match self {
            Obj::Set(x) => x,
            _ => panic!("expected a layered set"),
        }
    }

    pub fn as_pair(&self) -> &LayeredPair {
        match self {
            Obj::Pair(x) => x,
            _ => panic!("expected a layered pair"),
        }
    }
}

/// The image of a simplex under a structure map, with the element-level
/// mapping when available (`None` entries are deleted elements).
#[derive(Clone, Debug)]
pub struct MappedObj {
    pub obj: Obj,
    pub elem_map: Option<Vec<Option<usize>>>,
}

impl MappedObj {
    pub fn tracked(obj: Obj, elem_map: Vec<Option<usize>>) -> MappedObj {
        MappedObj {
            obj,
            elem_map: Some(elem_map),
        }
    }

    pub fn untracked(obj: Obj) -> MappedObj {
        MappedObj {
            obj,
            elem_map: None,
        }
    }
}
