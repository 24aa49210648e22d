//! Trees decorated by a finitary signature: edges carry colors, nodes
//! carry operations with ordered, color-matched input slots. A decorated
//! forest is a multiset of such trees; the nodeless tree (a bare edge) is
//! a legal component and acts as an identity.
//!
//! Cuts are node layerings: a 2-layering assigns each node to the crown
//! (leafward, layer 1) or root (layer 2) part, and every boundary edge
//! appears as a leaf edge of the root part and as the root edge of a
//! crown component. Leaf edges of the root part spawn bare crown edges,
//! and a bare component splits into a bare edge on both sides.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::groupoid::{IsoClass, Key};
use crate::layered::factorial;
use crate::poset::Poset;

/// Components paired with the preorder layers of their surviving nodes.
type LayeredParts = Vec<(PTree, Vec<u8>)>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SignatureError {
    NoColors,
    ColorOutOfRange { op: usize, color: usize },
    OpOutOfRange { op: usize },
    ArityMismatch { op: usize, expected: usize, found: usize },
    ColorMismatch { expected: usize, found: usize },
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::NoColors => write!(f, "signature must declare at least one color"),
            SignatureError::ColorOutOfRange { op, color } => {
                write!(f, "operation #{op} references color {color} out of range")
            }
            SignatureError::OpOutOfRange { op } => write!(f, "operation index {op} out of range"),
            SignatureError::ArityMismatch { op, expected, found } => {
                write!(f, "operation #{op} takes {expected} inputs, found {found} children")
            }
            SignatureError::ColorMismatch { expected, found } => {
                write!(f, "edge color {found} where color {expected} is required")
            }
        }
    }
}

impl core::error::Error for SignatureError {}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpDecl {
    pub name: String,
    pub out: usize,
    pub inputs: Vec<usize>,
}

/// A finitary signature: finitely many colors and operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signature {
    pub colors: Vec<String>,
    pub ops: Vec<OpDecl>,
}

impl Signature {
    pub fn new(colors: Vec<String>, ops: Vec<OpDecl>) -> Result<Signature, SignatureError> {
        if colors.is_empty() {
            return Err(SignatureError::NoColors);
        }
        for (i, op) in ops.iter().enumerate() {
            if op.out >= colors.len() {
                return Err(SignatureError::ColorOutOfRange { op: i, color: op.out });
            }
            for &c in &op.inputs {
                if c >= colors.len() {
                    return Err(SignatureError::ColorOutOfRange { op: i, color: c });
                }
            }
        }
        Ok(Signature { colors, ops })
    }

    /// One color, one binary operation.
    pub fn single_binary() -> Signature {
        Signature::new(
            vec![String::from("*")],
            vec![OpDecl {
                name: String::from("m"),
                out: 0,
                inputs: vec![0, 0],
            }],
        )
        .unwrap()
    }

    /// Two colors with mixed arities: a binary op `a,a -> b`, a unary op
    /// `b -> a`, and a nullary op `-> b`.
    pub fn two_color_mixed() -> Signature {
        Signature::new(
            vec![String::from("a"), String::from("b")],
            vec![
                OpDecl {
                    name: String::from("pair"),
                    out: 1,
                    inputs: vec![0, 0],
                },
                OpDecl {
                    name: String::from("wrap"),
                    out: 0,
                    inputs: vec![1],
                },
                OpDecl {
                    name: String::from("unit"),
                    out: 1,
                    inputs: vec![],
                },
            ],
        )
        .unwrap()
    }
}

/// A decorated tree. `Edge(c)` is a bare edge of color `c`; as a child it
/// is a leaf edge of its slot.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PTree {
    Edge(usize),
    Node { op: usize, children: Vec<PTree> },
}

impl PTree {
    pub fn corolla(sig: &Signature, op: usize) -> PTree {
        PTree::Node {
            op,
            children: sig.ops[op].inputs.iter().map(|&c| PTree::Edge(c)).collect(),
        }
    }

    pub fn validate(&self, sig: &Signature, expected: Option<usize>) -> Result<(), SignatureError> {
        match self {
            PTree::Edge(c) => {
                if *c >= sig.colors.len() {
                    return Err(SignatureError::ColorOutOfRange { op: 0, color: *c });
                }
                if let Some(e) = expected {
                    if e != *c {
                        return Err(SignatureError::ColorMismatch { expected: e, found: *c });
                    }
                }
                Ok(())
            }
            PTree::Node { op, children } => {
                let decl = sig
                    .ops
                    .get(*op)
                    .ok_or(SignatureError::OpOutOfRange { op: *op })?;
                if let Some(e) = expected {
                    if e != decl.out {
                        return Err(SignatureError::ColorMismatch { expected: e, found: decl.out });
                    }
                }
                if children.len() != decl.inputs.len() {
                    return Err(SignatureError::ArityMismatch {
                        op: *op,
                        expected: decl.inputs.len(),
                        found: children.len(),
                    });
                }
                for (child, &c) in children.iter().zip(&decl.inputs) {
                    child.validate(sig, Some(c))?;
                }
                Ok(())
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            PTree::Edge(_) => 0,
            PTree::Node { children, .. } => {
                1 + children.iter().map(PTree::node_count).sum::<usize>()
            }
        }
    }

    pub fn out_color(&self, sig: &Signature) -> usize {
        match self {
            PTree::Edge(c) => *c,
            PTree::Node { op, .. } => sig.ops[*op].out,
        }
    }

    /// Single node with only leaf-edge children.
    pub fn is_corolla(&self) -> bool {
        match self {
            PTree::Edge(_) => false,
            PTree::Node { children, .. } => {
                children.iter().all(|c| matches!(c, PTree::Edge(_)))
            }
        }
    }

    fn encode(&self, layers: &[u8], idx: &mut usize, out: &mut String) {
        match self {
            PTree::Edge(c) => {
                out.push('e');
                out.push_str(&format!("{c}"));
            }
            PTree::Node { op, children } => {
                let l = layers.get(*idx).copied().unwrap_or(1);
                *idx += 1;
                out.push('n');
                out.push_str(&format!("{op}.{l}("));
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    child.encode(layers, idx, out);
                }
                out.push(')');
            }
        }
    }
}

fn plain_encoding(t: &PTree) -> String {
    let mut s = String::new();
    t.encode(&[], &mut 0, &mut s);
    s
}

/// A decorated forest: components sorted by encoding. Trees carry ordered
/// slots, so each tree is rigid; the automorphism group permutes equal
/// components.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PForest {
    comps: Vec<PTree>,
}

impl PForest {
    pub fn new(mut comps: Vec<PTree>) -> PForest {
        comps.sort_by_key(plain_encoding);
        PForest { comps }
    }

    pub fn empty() -> PForest {
        PForest { comps: Vec::new() }
    }

    pub fn components(&self) -> &[PTree] {
        &self.comps
    }

    pub fn validate(&self, sig: &Signature) -> Result<(), SignatureError> {
        for t in &self.comps {
            t.validate(sig, None)?;
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.comps.iter().map(PTree::node_count).sum()
    }

    pub fn bare_count(&self) -> usize {
        self.comps.iter().filter(|t| matches!(t, PTree::Edge(_))).count()
    }

    pub fn has_nodes(&self) -> bool {
        self.node_count() > 0
    }

    /// `Some(number of corollas)` when every component is a corolla or a
    /// bare edge, `None` otherwise.
    pub fn corollas_and_edges(&self) -> Option<usize> {
        let mut corollas = 0;
        for t in &self.comps {
            match t {
                PTree::Edge(_) => {}
                t if t.is_corolla() => corollas += 1,
                _ => return None,
            }
        }
        Some(corollas)
    }

    /// Order on nodes (global preorder over the sorted components): a node
    /// is strictly below another iff it is a strict descendant, so layer
    /// monotonicity means crowns sit in lower layers.
    pub fn node_poset(&self) -> Poset {
        let n = self.node_count();
        assert!(n <= 16, "node count exceeds mask width");
        let mut below = vec![0u16; n];
        let mut idx = 0usize;
        for t in &self.comps {
            collect_descendants(t, &mut idx, &mut below);
        }
        Poset::from_rows_unchecked(n, below)
    }

    /// All cuts, one per descendant-closed set of nodes: (crown, root).
    pub fn cuts(&self, sig: &Signature) -> Vec<(PForest, PForest)> {
        self.node_poset()
            .down_closed_subsets()
            .iter()
            .map(|&mask| {
                let (crown, root) = self.split_layers(sig, &|me| mask & (1 << me) != 0);
                (
                    PForest::new(crown.into_iter().map(|(t, _)| t).collect()),
                    PForest::new(root.into_iter().map(|(t, _)| t).collect()),
                )
            })
            .collect()
    }

    /// Split every component by a crown predicate over node indices.
    /// Returns (crown components, root components), each with the layer
    /// vector of its surviving nodes (in component preorder).
    fn split_layers(
        &self,
        sig: &Signature,
        crown_is: &dyn Fn(usize) -> bool,
    ) -> (LayeredParts, LayeredParts) {
        self.split_layers_with(sig, &vec![1u8; self.node_count()], crown_is)
    }

    fn split_layers_with(
        &self,
        sig: &Signature,
        layers: &[u8],
        crown_is: &dyn Fn(usize) -> bool,
    ) -> (LayeredParts, LayeredParts) {
        let mut crown = Vec::new();
        let mut root = Vec::new();
        let mut idx = 0usize;
        for t in &self.comps {
            match t {
                PTree::Edge(c) => {
                    crown.push((PTree::Edge(*c), Vec::new()));
                    root.push((PTree::Edge(*c), Vec::new()));
                }
                _ => {
                    let (root_tree, root_layers) =
                        split_tree(sig, t, layers, &mut idx, crown_is, &mut crown);
                    root.push((root_tree, root_layers));
                }
            }
        }
        (crown, root)
    }

    pub fn key_string(&self) -> String {
        layered_key_string(&self.comps, &vec![1u8; self.node_count()], 1)
    }

    pub fn aut_order(&self) -> u64 {
        aut_from_encodings(self.comps.iter().map(plain_encoding))
    }

    pub fn canonical(&self) -> IsoClass {
        IsoClass {
            key: Key::new(self.key_string()),
            aut_order: self.aut_order(),
        }
    }
}

fn collect_descendants(t: &PTree, idx: &mut usize, below: &mut [u16]) {
    fn walk(t: &PTree, idx: &mut usize, below: &mut Vec<u16>) -> u16 {
        match t {
            PTree::Edge(_) => 0,
            PTree::Node { children, .. } => {
                let me = *idx;
                *idx += 1;
                let mut desc = 0u16;
                for child in children {
                    desc |= walk(child, idx, below);
                }
                for d in 0..below.len() {
                    if desc & (1 << d) != 0 {
                        below[d] |= 1 << me;
                    }
                }
                desc | (1 << me)
            }
        }
    }
    let mut rows = below.to_vec();
    walk(t, idx, &mut rows);
    below.copy_from_slice(&rows);
}

/// Recursive split of a single tree. `crown_out` collects the crown
/// pieces with their surviving layers; the return value is the root-side
/// tree with its surviving layers in preorder.
fn split_tree(
    sig: &Signature,
    t: &PTree,
    layers: &[u8],
    idx: &mut usize,
    crown_is: &dyn Fn(usize) -> bool,
    crown_out: &mut Vec<(PTree, Vec<u8>)>,
) -> (PTree, Vec<u8>) {
    match t {
        PTree::Edge(c) => {
            // leaf edge of a root-part node: the upper stub is a bare
            // crown component
            crown_out.push((PTree::Edge(*c), Vec::new()));
            (PTree::Edge(*c), Vec::new())
        }
        PTree::Node { op, children } => {
            let me = *idx;
            if crown_is(me) {
                let size = t.node_count();
                let sub_layers = layers[me..me + size].to_vec();
                *idx = me + size;
                crown_out.push((t.clone(), sub_layers));
                (PTree::Edge(sig.ops[*op].out), Vec::new())
            } else {
                *idx += 1;
                let mut root_layers = vec![layers[me]];
                let mut new_children = Vec::with_capacity(children.len());
                for child in children {
                    let (c, mut ls) = split_tree(sig, child, layers, idx, crown_is, crown_out);
                    new_children.push(c);
                    root_layers.append(&mut ls);
                }
                (
                    PTree::Node {
                        op: *op,
                        children: new_children,
                    },
                    root_layers,
                )
            }
        }
    }
}

fn aut_from_encodings<I: Iterator<Item = String>>(encodings: I) -> u64 {
    let mut sorted: Vec<String> = encodings.collect();
    sorted.sort();
    let mut aut = 1u64;
    let mut run = 1u64;
    for i in 1..sorted.len() {
        if sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            aut *= factorial(run);
            run = 1;
        }
    }
    if sorted.is_empty() {
        return 1;
    }
    aut * factorial(run)
}

fn layered_key_string(comps: &[PTree], layers: &[u8], depth: u8) -> String {
    let mut encs = Vec::new();
    let mut idx = 0usize;
    for t in comps {
        let mut s = String::new();
        t.encode(layers, &mut idx, &mut s);
        encs.push(s);
    }
    encs.sort();
    format!("T:{depth}:{}", encs.join(";"))
}

/// A decorated forest with nodes assigned to layers `1..=depth`,
/// monotone so that a node's layer never exceeds its parent's.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LayeredPForest {
    forest: PForest,
    /// Layers in global preorder over the sorted components.
    layers: Vec<u8>,
    depth: u8,
}

impl LayeredPForest {
    pub fn new(forest: PForest, layers: Vec<u8>, depth: u8) -> LayeredPForest {
        assert_eq!(layers.len(), forest.node_count());
        let poset = forest.node_poset();
        for i in 0..layers.len() {
            assert!(layers[i] >= 1 && layers[i] <= depth, "layer out of range");
            for j in 0..layers.len() {
                if poset.is_strictly_below(i, j) {
                    assert!(layers[i] <= layers[j], "layers must grow toward the root");
                }
            }
        }
        LayeredPForest { forest, layers, depth }
    }

    /// Build from per-component parts, sorting deterministically.
    fn from_parts(mut parts: LayeredParts, depth: u8) -> LayeredPForest {
        parts.sort_by(|a, b| {
            plain_encoding(&a.0)
                .cmp(&plain_encoding(&b.0))
                .then_with(|| a.1.cmp(&b.1))
        });
        let mut layers = Vec::new();
        let comps = parts
            .into_iter()
            .map(|(t, mut ls)| {
                layers.append(&mut ls);
                t
            })
            .collect();
        LayeredPForest {
            forest: PForest { comps },
            layers,
            depth,
        }
    }

    pub fn one_layer(forest: PForest) -> LayeredPForest {
        let layers = vec![1u8; forest.node_count()];
        LayeredPForest { forest, layers, depth: 1 }
    }

    /// Bare-edges-only forests are the 0-layered objects.
    pub fn zero_layered(forest: PForest) -> LayeredPForest {
        assert!(!forest.has_nodes());
        LayeredPForest { forest, layers: Vec::new(), depth: 0 }
    }

    pub fn forest(&self) -> &PForest {
        &self.forest
    }

    pub fn depth(&self) -> u8 {
        self.depth
    }

    pub fn layers(&self) -> &[u8] {
        &self.layers
    }

    pub fn nodes_in_layer(&self, layer: u8) -> usize {
        self.layers.iter().filter(|&&l| l == layer).count()
    }

    pub fn key_string(&self) -> String {
        layered_key_string(&self.forest.comps, &self.layers, self.depth)
    }

    pub fn aut_order(&self) -> u64 {
        let mut idx = 0usize;
        let encs: Vec<String> = self
            .forest
            .comps
            .iter()
            .map(|t| {
                let mut s = String::new();
                t.encode(&self.layers, &mut idx, &mut s);
                s
            })
            .collect();
        aut_from_encodings(encs.into_iter())
    }

    pub fn canonical(&self) -> IsoClass {
        IsoClass {
            key: Key::new(self.key_string()),
            aut_order: self.aut_order(),
        }
    }

    pub fn join_layers(&self, i: u8) -> LayeredPForest {
        assert!(i >= 1 && i < self.depth);
        let layers = self
            .layers
            .iter()
            .map(|&l| if l > i { l - 1 } else { l })
            .collect();
        LayeredPForest {
            forest: self.forest.clone(),
            layers,
            depth: self.depth - 1,
        }
    }

    pub fn insert_empty_layer(&self, pos: u8) -> LayeredPForest {
        assert!(pos >= 1 && pos <= self.depth + 1);
        let layers = self
            .layers
            .iter()
            .map(|&l| if l >= pos { l + 1 } else { l })
            .collect();
        LayeredPForest {
            forest: self.forest.clone(),
            layers,
            depth: self.depth + 1,
        }
    }

    /// Delete the crown-most layer: layer-1 nodes disappear and each
    /// severed edge survives as a leaf or bare edge of the root part.
    pub fn delete_first_layer(&self, sig: &Signature) -> LayeredPForest {
        assert!(self.depth >= 1);
        let layers = self.layers.clone();
        let (_, root) = self
            .forest
            .split_layers_with(sig, &layers, &|me| layers[me] == 1);
        let parts = root
            .into_iter()
            .map(|(t, ls)| (t, ls.iter().map(|&l| l - 1).collect()))
            .collect();
        LayeredPForest::from_parts(parts, self.depth - 1)
    }

    /// Delete the root-most layer: top-layer nodes disappear and the
    /// crown pieces become components of their own.
    pub fn delete_last_layer(&self, sig: &Signature) -> LayeredPForest {
        assert!(self.depth >= 1);
        let top = self.depth;
        let layers = self.layers.clone();
        let (crown, _) = self
            .forest
            .split_layers_with(sig, &layers, &|me| layers[me] < top);
        LayeredPForest::from_parts(crown, self.depth - 1)
    }
}

/// All trees with the given root-edge color and exactly `nodes` nodes.
pub fn trees_with_nodes(sig: &Signature, color: usize, nodes: usize) -> Vec<PTree> {
    if nodes == 0 {
        return vec![PTree::Edge(color)];
    }
    let mut out = Vec::new();
    for (op_idx, op) in sig.ops.iter().enumerate() {
        if op.out != color {
            continue;
        }
        for combo in distribute(nodes - 1, op.inputs.len()) {
            let child_lists: Vec<Vec<PTree>> = op
                .inputs
                .iter()
                .zip(&combo)
                .map(|(&c, &m)| trees_with_nodes(sig, c, m))
                .collect();
            cartesian(&child_lists, &mut Vec::new(), &mut |children| {
                out.push(PTree::Node {
                    op: op_idx,
                    children: children.to_vec(),
                });
            });
        }
    }
    out
}

fn distribute(total: usize, slots: usize) -> Vec<Vec<usize>> {
    if slots == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in distribute(total - first, slots - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn cartesian(lists: &[Vec<PTree>], acc: &mut Vec<PTree>, visit: &mut impl FnMut(&[PTree])) {
    if acc.len() == lists.len() {
        visit(acc);
        return;
    }
    let i = acc.len();
    for item in &lists[i] {
        acc.push(item.clone());
        cartesian(lists, acc, visit);
        acc.pop();
    }
}

/// All decorated forests up to isomorphism with at most `max_nodes` nodes
/// and at most `max_bare` bare-edge components.
pub fn enumerate_pforests(sig: &Signature, max_nodes: usize, max_bare: usize) -> Vec<PForest> {
    let mut items: Vec<(PTree, usize)> = Vec::new();
    for c in 0..sig.colors.len() {
        items.push((PTree::Edge(c), 0));
    }
    for m in 1..=max_nodes {
        for c in 0..sig.colors.len() {
            for t in trees_with_nodes(sig, c, m) {
                items.push((t, m));
            }
        }
    }
    items.sort_by_key(|a| plain_encoding(&a.0));
    let mut out = Vec::new();
    let mut acc: Vec<PTree> = Vec::new();
    fn rec(
        items: &[(PTree, usize)],
        from: usize,
        nodes_left: usize,
        bare_left: usize,
        acc: &mut Vec<PTree>,
        out: &mut Vec<PForest>,
    ) {
        out.push(PForest::new(acc.clone()));
        for i in from..items.len() {
            let (t, m) = &items[i];
            let is_bare = matches!(t, PTree::Edge(_));
            if *m > nodes_left || (is_bare && bare_left == 0) {
                continue;
            }
            acc.push(t.clone());
            rec(
                items,
                i,
                nodes_left - m,
                if is_bare { bare_left - 1 } else { bare_left },
                acc,
                out,
            );
            acc.pop();
        }
    }
    rec(&items, 0, max_nodes, max_bare, &mut acc, &mut out);
    let mut seen = alloc::collections::BTreeSet::new();
    out.retain(|f| seen.insert(f.key_string()));
    out.sort_by_key(|a| a.key_string());
    out
}

/// All `depth`-layerings of a forest (monotone node assignments).
pub fn pforest_layerings(f: &PForest, depth: u8) -> Vec<LayeredPForest> {
    if depth == 0 {
        return if f.has_nodes() {
            Vec::new()
        } else {
            vec![LayeredPForest::zero_layered(f.clone())]
        };
    }
    let poset = f.node_poset();
    crate::layered::poset_layerings(&poset, depth)
        .into_iter()
        .map(|lp| {
            let layers: Vec<u8> = (0..poset.len()).map(|i| lp.layer_of(i)).collect();
            LayeredPForest {
                forest: f.clone(),
                layers,
                depth,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corolla_has_two_cuts() {
        let sig = Signature::single_binary();
        let corolla = PTree::corolla(&sig, 0);
        let f = PForest::new(vec![corolla.clone()]);
        let cuts = f.cuts(&sig);
        assert_eq!(cuts.len(), 2);
        // crown of leaf edges with the corolla as root part
        assert!(cuts.iter().any(|(crown, root)| {
            crown.components() == [PTree::Edge(0), PTree::Edge(0)]
                && root.components() == [corolla.clone()]
        }));
        // the corolla as crown over a bare root edge
        assert!(cuts.iter().any(|(crown, root)| {
            crown.components() == [corolla.clone()] && root.components() == [PTree::Edge(0)]
        }));
    }

    #[test]
    fn bare_edge_has_one_cut() {
        let sig = Signature::single_binary();
        let f = PForest::new(vec![PTree::Edge(0)]);
        let cuts = f.cuts(&sig);
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].0, f);
        assert_eq!(cuts[0].1, f);
    }

    #[test]
    fn linear_tree_cuts() {
        let sig = Signature::single_binary();
        // node over node: m(m(e,e), e)
        let lower = PTree::corolla(&sig, 0);
        let t = PTree::Node {
            op: 0,
            children: vec![lower, PTree::Edge(0)],
        };
        let f = PForest::new(vec![t]);
        // descendant-closed node sets of a 2-chain: {}, {child}, {child, root}
        assert_eq!(f.cuts(&sig).len(), 3);
    }

    #[test]
    fn forest_aut_orders() {
        let sig = Signature::single_binary();
        let c = PTree::corolla(&sig, 0);
        let two = PForest::new(vec![c.clone(), c.clone()]);
        assert_eq!(two.aut_order(), 2);
        let mixed = PForest::new(vec![c, PTree::Edge(0)]);
        assert_eq!(mixed.aut_order(), 1);
        let edges = PForest::new(vec![PTree::Edge(0), PTree::Edge(0), PTree::Edge(0)]);
        assert_eq!(edges.aut_order(), 6);
    }

    #[test]
    fn corolla_detection() {
        let sig = Signature::two_color_mixed();
        let nullary = PTree::corolla(&sig, 2);
        assert!(nullary.is_corolla());
        let f = PForest::new(vec![nullary.clone(), PTree::Edge(0)]);
        assert_eq!(f.corollas_and_edges(), Some(1));
        let tall = PTree::Node {
            op: 1,
            children: vec![nullary],
        };
        assert_eq!(PForest::new(vec![tall]).corollas_and_edges(), None);
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let sig = Signature::single_binary();
        let forests = enumerate_pforests(&sig, 3, 2);
        let mut keys: Vec<String> = forests.iter().map(|f| f.key_string()).collect();
        let before = keys.len();
        keys.dedup();
        assert_eq!(before, keys.len());
        assert_eq!(trees_with_nodes(&sig, 0, 1).len(), 1);
        assert_eq!(trees_with_nodes(&sig, 0, 2).len(), 2);
    }

    #[test]
    fn validation_rejects_color_mismatch() {
        let sig = Signature::two_color_mixed();
        // wrap expects a b-colored child
        let bad = PTree::Node {
            op: 1,
            children: vec![PTree::Edge(0)],
        };
        assert!(bad.validate(&sig, None).is_err());
        let good = PTree::Node {
            op: 1,
            children: vec![PTree::Edge(1)],
        };
        assert!(good.validate(&sig, None).is_ok());
    }

    #[test]
    fn layered_faces() {
        let sig = Signature::single_binary();
        let lower = PTree::corolla(&sig, 0);
        let t = PTree::Node {
            op: 0,
            children: vec![lower, PTree::Edge(0)],
        };
        let f = PForest::new(vec![t]);
        // preorder: root node, then child node
        let lf = LayeredPForest::new(f.clone(), vec![2, 1], 2);
        let crowned = lf.delete_last_layer(&sig);
        assert_eq!(crowned.depth(), 1);
        assert_eq!(crowned.forest().node_count(), 1);
        // deleting the crown layer leaves the root corolla
        let rooted = lf.delete_first_layer(&sig);
        assert_eq!(rooted.forest().node_count(), 1);
        assert!(rooted.forest().components()[0].is_corolla());
        let joined = lf.join_layers(1);
        assert_eq!(joined, LayeredPForest::one_layer(f));
    }

    #[test]
    fn zero_layered_only_bare() {
        let f = PForest::new(vec![PTree::Edge(0)]);
        assert_eq!(pforest_layerings(&f, 0).len(), 1);
        let sig = Signature::single_binary();
        let g = PForest::new(vec![PTree::corolla(&sig, 0)]);
        assert_eq!(pforest_layerings(&g, 0).len(), 0);
        assert_eq!(pforest_layerings(&g, 2).len(), 2);
    }
}
