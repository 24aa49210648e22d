//! Finite-groupoid bookkeeping at the level of isomorphism classes.
//!
//! Every groupoid handled by this crate is the groupoid of some family of
//! finite combinatorial structures: it is presented by a finite list of
//! isomorphism classes, each carrying a canonical key and the order of the
//! automorphism group of any representative. Maps are presented by their
//! action on classes together with the order of the image of each
//! automorphism group. This is enough data for homotopy cardinality,
//! fiber cardinality, monomorphism detection, and the cardinality-level
//! pullback criterion used by all axiom checkers.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Rational;

/// Canonical key of an isomorphism class: a printable ASCII string that
/// serializes a canonical representative. Equal keys mean isomorphic
/// objects; keys are stable across runs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Key(String);

impl Key {
    pub fn new(s: String) -> Key {
        Key(s)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Element count of the underlying structure, parsed back out of the
    /// key. Used by the pullback checker to truncate fibers consistently
    /// when the ambient groupoids are only materialized up to a size bound.
    pub fn object_size(&self) -> usize {
        parse_size(&self.0).unwrap_or(0)
    }
}

fn parse_size(s: &str) -> Option<usize> {
    // Key grammar (see the structure modules):
    //   P:<n>:<depth>:<layers>:<relhex>      layered poset, size n
    //   S:<depth>:<a,b,..>                   layered set, size = sum
    //   B:<i>:<j>|<setkey>|<posetkey>        pair, size = sum of parts
    //   T:<depth>:<components>               decorated forest, size = nodes + bare edges
    let (tag, rest) = s.split_once(':')?;
    
    
    match tag {
        "P" => rest.split(':').next()?.parse().ok(),
        "S" => {
            let sizes = rest.split_once(':')?.1;
            if sizes.is_empty() {
                Some(0)
            } else {
                sizes.split(',').map(|t| t.parse::<usize>().ok()).sum()
            }
        }
        "B" => {
            let body = s.split_once('|')?.1;
            let (set_part, poset_part) = body.split_at(body.find('|')?);
            Some(parse_size(set_part)? + parse_size(&poset_part[1..])?)
        }
        "T" => {
            let comps = rest.split_once(':')?.1;
            if comps.is_empty() {
                return Some(0);
            }
            // nodes plus bare-edge components; leaf edges inside a
            // component do not count
            let bare = comps.split(';').filter(|c| c.starts_with('e')).count();
            Some(comps.matches('n').count() + bare)
        }
        _ => None,
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An isomorphism class: canonical key plus `|Aut|` of any representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoClass {
    pub key: Key,
    pub aut_order: u64,
}

/// A finite groupoid presented by its isomorphism classes, sorted by key.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroupoid {
    classes: Vec<IsoClass>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupoidError {
    /// A key appeared twice in a class list.
    DuplicateClass(Key),
    /// A queried class is not part of the groupoid.
    UnknownClass(Key),
    /// A map image fell outside the declared codomain.
    ImageOutsideCodomain { class: Key, image: Key },
    /// Automorphism-image data was required but not recorded for a class.
    MissingAutImage(Key),
}

impl fmt::Display for GroupoidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupoidError::DuplicateClass(k) => write!(f, "duplicate class {k}"),
            GroupoidError::UnknownClass(k) => write!(f, "unknown class {k}"),
            GroupoidError::ImageOutsideCodomain { class, image } => {
                write!(f, "image {image} of class {class} is outside the codomain")
            }
            GroupoidError::MissingAutImage(k) => {
                write!(f, "no automorphism-image data for class {k}")
            }
        }
    }
}

impl core::error::Error for GroupoidError {}

impl FiniteGroupoid {
    /// Build a groupoid from classes; sorts by key and rejects duplicates.
    pub fn new(mut classes: Vec<IsoClass>) -> Result<FiniteGroupoid, GroupoidError> {
        classes.sort_by(|a, b| a.key.cmp(&b.key));
        for w in classes.windows(2) {
            if w[0].key == w[1].key {
                return Err(GroupoidError::DuplicateClass(w[0].key.clone()));
            }
        }
        for c in &classes {
            assert!(c.aut_order >= 1, "automorphism order must be positive");
        }
        Ok(FiniteGroupoid { classes })
    }

    pub fn empty() -> FiniteGroupoid {
        FiniteGroupoid { classes: Vec::new() }
    }

    pub fn classes(&self) -> &[IsoClass] {
        &self.classes
    }

    pub fn contains(&self, key: &Key) -> bool {
        self.get(key).is_some()
    }

    pub fn get(&self, key: &Key) -> Option<&IsoClass> {
        self.classes
            .binary_search_by(|c| c.key.cmp(key))
            .ok()
            .map(|i| &self.classes[i])
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Sum over classes of `1/|Aut|`.
pub fn homotopy_cardinality(g: &FiniteGroupoid) -> Rational {
    let mut total = Rational::ZERO;
    for c in g.classes() {
        total += Rational::new(1, c.aut_order as i128);
    }
    total
}

/// A map of finite groupoids, presented on isomorphism classes.
///
/// `aut_image_order` records, per domain class, the order of the image of
/// its automorphism group in the automorphism group of the image class.
/// Builders that cannot track element-level automorphisms may omit
/// entries; only monomorphism detection needs them.
#[derive(Clone, Debug)]
pub struct GroupoidMap {
    domain: FiniteGroupoid,
    codomain: FiniteGroupoid,
    on_classes: BTreeMap<Key, Key>,
    aut_image_order: BTreeMap<Key, u64>,
}

impl GroupoidMap {
    pub fn new(
        domain: FiniteGroupoid,
        codomain: FiniteGroupoid,
        on_classes: BTreeMap<Key, Key>,
        aut_image_order: BTreeMap<Key, u64>,
    ) -> Result<GroupoidMap, GroupoidError> {
        for c in domain.classes() {
            let image = on_classes
                .get(&c.key)
                .ok_or_else(|| GroupoidError::UnknownClass(c.key.clone()))?;
            if !codomain.contains(image) {
                return Err(GroupoidError::ImageOutsideCodomain {
                    class: c.key.clone(),
                    image: image.clone(),
                });
            }
        }
        Ok(GroupoidMap {
            domain,
            codomain,
            on_classes,
            aut_image_order,
        })
    }

    pub fn identity(g: &FiniteGroupoid) -> GroupoidMap {
        let on_classes = g
            .classes()
            .iter()
            .map(|c| (c.key.clone(), c.key.clone()))
            .collect();
        let aut_image_order = g
            .classes()
            .iter()
            .map(|c| (c.key.clone(), c.aut_order))
            .collect();
        GroupoidMap {
            domain: g.clone(),
            codomain: g.clone(),
            on_classes,
            aut_image_order,
        }
    }

    pub fn domain(&self) -> &FiniteGroupoid {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroupoid {
        &self.codomain
    }

    pub fn image_of(&self, key: &Key) -> Option<&Key> {
        self.on_classes.get(key)
    }

    pub fn aut_image_of(&self, key: &Key) -> Option<u64> {
        self.aut_image_order.get(key).copied()
    }
}

/// Homotopy cardinality of the homotopy fiber of `f` over `z`:
/// `|Aut(z)| * sum over classes x with f(x) = z of 1/|Aut(x)|`.
pub fn fiber_cardinality(f: &GroupoidMap, z: &Key) -> Result<Rational, GroupoidError> {
    fiber_cardinality_filtered(f, z, None)
}

/// Fiber cardinality restricted to domain classes whose object size
/// exceeds the size of `z` by at most `max_extra`. `None` means no
/// restriction. The restricted form is what the pullback checker uses so
/// that size-bounded materializations are compared like for like.
pub fn fiber_cardinality_filtered(
    f: &GroupoidMap,
    z: &Key,
    max_extra: Option<usize>,
) -> Result<Rational, GroupoidError> {
    let zc = f
        .codomain
        .get(z)
        .ok_or_else(|| GroupoidError::UnknownClass(z.clone()))?;
    let base_size = z.object_size();
    let mut total = Rational::ZERO;
    for x in f.domain.classes() {
        if f.on_classes.get(&x.key) != Some(z) {
            continue;
        }
        if let Some(extra) = max_extra {
            if x.key.object_size() > base_size + extra {
                continue;
            }
        }
        total += Rational::new(1, x.aut_order as i128);
    }
    Ok(total * Rational::from_int(zc.aut_order as i128))
}

/// Fibers are empty or contractible: for each codomain class either no
/// class maps to it, or exactly one does, with equal automorphism order
/// and with full automorphism image.
pub fn is_monomorphism(f: &GroupoidMap) -> Result<bool, GroupoidError> {
    for z in f.codomain.classes() {
        let preimages: Vec<&IsoClass> = f
            .domain
            .classes()
            .iter()
            .filter(|x| f.on_classes.get(&x.key) == Some(&z.key))
            .collect();
        match preimages.len() {
            0 => {}
            1 => {
                let x = preimages[0];
                let image_order = f
                    .aut_image_order
                    .get(&x.key)
                    .copied()
                    .ok_or_else(|| GroupoidError::MissingAutImage(x.key.clone()))?;
                if x.aut_order != z.aut_order || image_order != z.aut_order {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// A commuting square of groupoid maps
///
/// ```text
///        a_to_b
///      A ------> B
///      |         |
/// a_to_c         | b_to_d
///      v         v
///      C ------> D
///        c_to_d
/// ```
pub struct Square<'a> {
    pub a_to_b: &'a GroupoidMap,
    pub a_to_c: &'a GroupoidMap,
    pub b_to_d: &'a GroupoidMap,
    pub c_to_d: &'a GroupoidMap,
    /// Size bound the four groupoids were materialized at, if any.
    /// With a bound, fibers are truncated to a common extra-size budget
    /// before comparison, so that boundary effects of the truncation do
    /// not produce spurious mismatches.
    pub size_bound: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SquareError {
    /// The square does not commute on classes; carries a witness.
    NotCommuting(Key),
    Groupoid(GroupoidError),
}

impl fmt::Display for SquareError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareError::NotCommuting(k) => write!(f, "square does not commute at {k}"),
            SquareError::Groupoid(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SquareError {}

impl From<GroupoidError> for SquareError {
    fn from(e: GroupoidError) -> SquareError {
        SquareError::Groupoid(e)
    }
}

/// Outcome of the cardinality-level pullback criterion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PullbackOutcome {
    Pullback,
    /// Fiber cardinalities disagree over this class of the B corner.
    NotPullback { witness: Key },
}

impl PullbackOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, PullbackOutcome::Pullback)
    }

    pub fn witness(&self) -> Option<&Key> {
        match self {
            PullbackOutcome::Pullback => None,
            PullbackOutcome::NotPullback { witness } => Some(witness),
        }
    }
}

/// Necessary criterion for the square to be a homotopy pullback: for every
/// class `b` of B, the fiber of A -> B over `b` and the fiber of C -> D
/// over the image of `b` have equal homotopy cardinality.
///
/// A non-commuting square is an error, not `false`.
pub fn is_pullback_at_cardinality(sq: &Square<'_>) -> Result<PullbackOutcome, SquareError> {
    // commutation on classes
    for a in sq.a_to_b.domain().classes() {
        let via_b = sq
            .a_to_b
            .image_of(&a.key)
            .and_then(|b| sq.b_to_d.image_of(b));
        let via_c = sq
            .a_to_c
            .image_of(&a.key)
            .and_then(|c| sq.c_to_d.image_of(c));
        if via_b != via_c {
            return Err(SquareError::NotCommuting(a.key.clone()));
        }
    }
    for b in sq.b_to_d.domain().classes() {
        let d = sq
            .b_to_d
            .image_of(&b.key)
            .ok_or_else(|| GroupoidError::UnknownClass(b.key.clone()))?;
        let budget = sq.size_bound.map(|n| {
            n.saturating_sub(b.key.object_size().max(d.object_size()))
        });
        let lhs = fiber_cardinality_filtered(sq.a_to_b, &b.key, budget)?;
        let rhs = fiber_cardinality_filtered(sq.c_to_d, d, budget)?;
        if lhs != rhs {
            return Ok(PullbackOutcome::NotPullback {
                witness: b.key.clone(),
            });
        }
    }
    Ok(PullbackOutcome::Pullback)
}
