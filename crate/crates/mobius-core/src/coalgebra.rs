//! The linear layer: exact formal sums over isomorphism-class keys, the
//! coproducts of the four instances, the convolution algebra of
//! functionals, and Möbius functions both by alternating-sum inversion
//! and in closed form.
//!
//! Coproduct coefficients are integers counting concrete
//! sub-decompositions per class pair (the delta-basis convention), so the
//! binomial coalgebra of finite sets comes out exactly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::forest::{enumerate_forests, RootedForest};
use crate::groupoid::Key;
use crate::layered::LayeredPoset;
use crate::poset::{enumerate_posets, Poset};
use crate::ptree::{enumerate_pforests, PForest, Signature};
use crate::rational::Rational;
use crate::report::CheckReport;

/// An exact linear combination with canonical keys; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSum<K: Ord + Clone> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> FormalSum<K> {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }

    pub fn singleton(key: K) -> FormalSum<K> {
        let mut s = FormalSum::zero();
        s.add_term(key, Rational::ONE);
        s
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert(Rational::ZERO);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).copied().unwrap_or(Rational::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Rational) -> FormalSum<K> {
        let mut out = FormalSum::zero();
        for (k, v) in self.iter() {
            out.add_term(k.clone(), *v * c);
        }
        out
    }

    pub fn add(&self, other: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k.clone(), *v);
        }
        out
    }
}

pub type TensorKey = (Key, Key);
pub type TripleKey = (Key, Key, Key);

/// An element of the convolution algebra: a table from class keys to
/// exact rationals, total on the enumerated corpus and zero outside.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Functional {
    table: BTreeMap<Key, Rational>,
}

impl Functional {
    pub fn new() -> Functional {
        Functional {
            table: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: Key, value: Rational) {
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
    }

    pub fn eval(&self, key: &Key) -> Rational {
        self.table.get(key).copied().unwrap_or(Rational::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Rational)> {
        self.table.iter()
    }
}

impl Default for Functional {
    fn default() -> Functional {
        Functional::new()
    }
}

/// Which of the four incidence coalgebras a corpus carries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CorpusKind {
    Posets,
    Sets,
    Forests,
    PTrees(Rc<Signature>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CorpusObj {
    Poset(Poset),
    Set(usize),
    Forest(RootedForest),
    PForest(PForest),
}

impl CorpusObj {
    /// Grading: element count, or node count for decorated forests.
    pub fn grade(&self) -> usize {
        match self {
            CorpusObj::Poset(p) => p.len(),
            CorpusObj::Set(n) => *n,
            CorpusObj::Forest(f) => f.len(),
            CorpusObj::PForest(f) => f.node_count(),
        }
    }
}

/// Optional negative control: remove one unit of the first nontrivial
/// coproduct term of every object that has one. Coassociativity fails.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoalgebraMutation {
    DropCut,
}

/// A finite family of corpus objects, closed under coproduct factors,
/// with their coproducts precomputed.
pub struct Corpus {
    kind: CorpusKind,
    objects: Vec<CorpusObj>,
    keys: Vec<Key>,
    index: BTreeMap<Key, usize>,
    deltas: Vec<FormalSum<TensorKey>>,
}

pub fn poset_class_key(p: &Poset) -> Key {
    LayeredPoset::one_layer(p.clone()).canonical().key
}

pub fn set_class_key(n: usize) -> Key {
    Key::new(format!("S:1:{n}"))
}

pub fn pforest_class_key(f: &PForest) -> Key {
    f.canonical().key
}

/// Coproduct of a poset: one term per down-closed subset, lower part
/// first.
pub fn coproduct_poset(p: &Poset) -> FormalSum<TensorKey> {
    let mut out = FormalSum::zero();
    let full: u16 = if p.is_empty() { 0 } else { (1 << p.len()) - 1 };
    for s in p.down_closed_subsets() {
        let lower = p.restrict(s);
        let upper = p.restrict(full & !s);
        out.add_term((poset_class_key(&lower), poset_class_key(&upper)), Rational::ONE);
    }
    out
}

/// Coproduct of a finite set: binomial coefficients, realized by
/// counting subsets.
pub fn coproduct_set(n: usize) -> FormalSum<TensorKey> {
    let mut out = FormalSum::zero();
    for mask in 0u32..(1u32 << n) {
        let k = mask.count_ones() as usize;
        out.add_term((set_class_key(k), set_class_key(n - k)), Rational::ONE);
    }
    out
}

/// Coproduct of a rooted forest: the poset coproduct of its ancestor
/// order (root parts are down-closed).
pub fn coproduct_forest(f: &RootedForest) -> FormalSum<TensorKey> {
    coproduct_poset(&f.to_poset())
}

/// Coproduct of a decorated forest: one term per cut, crown part first.
pub fn coproduct_pforest(sig: &Signature, f: &PForest) -> FormalSum<TensorKey> {
    let mut out = FormalSum::zero();
    for (crown, root) in f.cuts(sig) {
        out.add_term(
            (pforest_class_key(&crown), pforest_class_key(&root)),
            Rational::ONE,
        );
    }
    out
}

/// Number of `k`-layerings with every layer nonempty.
pub fn phi_poset(p: &Poset, k: usize) -> u64 {
    p.count_strict_downset_chains(k)
}

pub fn phi_set(n: usize, k: usize) -> u64 {
    Poset::discrete(n).count_strict_downset_chains(k)
}

pub fn phi_forest(f: &RootedForest, k: usize) -> u64 {
    phi_poset(&f.to_poset(), k)
}

pub fn phi_pforest(f: &PForest, k: usize) -> u64 {
    f.node_poset().count_strict_downset_chains(k)
}

/// Möbius by the alternating sum over nondegenerate layerings.
fn mobius_alternating(phi: impl Fn(usize) -> u64, grade: usize) -> Rational {
    let mut total = Rational::ZERO;
    for k in 0..=grade {
        let term = Rational::from_int(phi(k) as i128);
        total += term * Rational::neg_one_pow(k);
    }
    total
}

pub fn mobius_poset(p: &Poset) -> Rational {
    mobius_alternating(|k| phi_poset(p, k), p.len())
}

pub fn mobius_set(n: usize) -> Rational {
    mobius_alternating(|k| phi_set(n, k), n)
}

pub fn mobius_forest(f: &RootedForest) -> Rational {
    mobius_alternating(|k| phi_forest(f, k), f.len())
}

pub fn mobius_pforest(f: &PForest) -> Rational {
    mobius_alternating(|k| phi_pforest(f, k), f.node_count())
}

/// The closed forms: `(-1)^n` on the discrete-like objects, `0` else.
pub fn mobius_closed_poset(p: &Poset) -> Rational {
    if p.is_discrete() {
        Rational::neg_one_pow(p.len())
    } else {
        Rational::ZERO
    }
}

pub fn mobius_closed_set(n: usize) -> Rational {
    Rational::neg_one_pow(n)
}

pub fn mobius_closed_forest(f: &RootedForest) -> Rational {
    if f.is_isolated_roots() {
        Rational::neg_one_pow(f.len())
    } else {
        Rational::ZERO
    }
}

pub fn mobius_closed_pforest(f: &PForest) -> Rational {
    match f.corollas_and_edges() {
        Some(n) => Rational::neg_one_pow(n),
        None => Rational::ZERO,
    }
}

impl Corpus {
    pub fn posets(max_size: usize) -> Corpus {
        let objects: Vec<CorpusObj> = enumerate_posets(max_size)
            .expect("size within enumeration guard")
            .into_iter()
            .map(CorpusObj::Poset)
            .collect();
        Corpus::build(CorpusKind::Posets, objects, None)
    }

    pub fn sets(max_size: usize) -> Corpus {
        let objects = (0..=max_size).map(CorpusObj::Set).collect();
        Corpus::build(CorpusKind::Sets, objects, None)
    }

    pub fn forests(max_size: usize) -> Corpus {
        let objects: Vec<CorpusObj> = enumerate_forests(max_size)
            .expect("size within enumeration guard")
            .into_iter()
            .map(CorpusObj::Forest)
            .collect();
        Corpus::build(CorpusKind::Forests, objects, None)
    }

    /// Decorated forests with at most `max_nodes` nodes and `max_bare`
    /// bare components, closed under coproduct factors (cut pieces pick
    /// up extra bare edges, so closure can outgrow `max_bare`).
    pub fn ptrees(sig: Rc<Signature>, max_nodes: usize, max_bare: usize) -> Corpus {
        let mut seen: BTreeMap<Key, PForest> = BTreeMap::new();
        let mut queue: Vec<PForest> = enumerate_pforests(&sig, max_nodes, max_bare);
        while let Some(f) = queue.pop() {
            let key = pforest_class_key(&f);
            if seen.contains_key(&key) {
                continue;
            }
            for (crown, root) in f.cuts(&sig) {
                if !seen.contains_key(&pforest_class_key(&crown)) {
                    queue.push(crown);
                }
                if !seen.contains_key(&pforest_class_key(&root)) {
                    queue.push(root);
                }
            }
            seen.insert(key, f);
        }
        let objects = seen.into_values().map(CorpusObj::PForest).collect();
        Corpus::build(CorpusKind::PTrees(sig), objects, None)
    }

    pub fn with_mutation(&self, mutation: CoalgebraMutation) -> Corpus {
        Corpus::build(self.kind.clone(), self.objects.clone(), Some(mutation))
    }

    fn build(kind: CorpusKind, objects: Vec<CorpusObj>, mutation: Option<CoalgebraMutation>) -> Corpus {
        let mut tagged: Vec<(Key, CorpusObj)> = objects
            .into_iter()
            .map(|o| (Corpus::key_of_obj(&kind, &o), o))
            .collect();
        tagged.sort_by(|a, b| a.0.cmp(&b.0));
        tagged.dedup_by(|a, b| a.0 == b.0);
        let keys: Vec<Key> = tagged.iter().map(|(k, _)| k.clone()).collect();
        let objects: Vec<CorpusObj> = tagged.into_iter().map(|(_, o)| o).collect();
        let index = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        let deltas = objects
            .iter()
            .map(|o| {
                let mut d = Corpus::delta_of_obj(&kind, o);
                if let Some(CoalgebraMutation::DropCut) = mutation {
                    drop_first_nontrivial(&mut d);
                }
                d
            })
            .collect();
        Corpus {
            kind,
            objects,
            keys,
            index,
            deltas,
        }
    }

    fn key_of_obj(kind: &CorpusKind, o: &CorpusObj) -> Key {
        match (kind, o) {
            (CorpusKind::Posets, CorpusObj::Poset(p)) => poset_class_key(p),
            (CorpusKind::Sets, CorpusObj::Set(n)) => set_class_key(*n),
            (CorpusKind::Forests, CorpusObj::Forest(f)) => poset_class_key(&f.to_poset()),
            (CorpusKind::PTrees(_), CorpusObj::PForest(f)) => pforest_class_key(f),
            _ => panic!("corpus object does not match corpus kind"),
        }
    }

    fn delta_of_obj(kind: &CorpusKind, o: &CorpusObj) -> FormalSum<TensorKey> {
        match (kind, o) {
            (CorpusKind::Posets, CorpusObj::Poset(p)) => coproduct_poset(p),
            (CorpusKind::Sets, CorpusObj::Set(n)) => coproduct_set(*n),
            (CorpusKind::Forests, CorpusObj::Forest(f)) => coproduct_forest(f),
            (CorpusKind::PTrees(sig), CorpusObj::PForest(f)) => coproduct_pforest(sig, f),
            _ => panic!("corpus object does not match corpus kind"),
        }
    }

    pub fn kind(&self) -> &CorpusKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[CorpusObj] {
        &self.objects
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn key(&self, idx: usize) -> &Key {
        &self.keys[idx]
    }

    pub fn index_of(&self, key: &Key) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn delta(&self, idx: usize) -> &FormalSum<TensorKey> {
        &self.deltas[idx]
    }

    pub fn delta_by_key(&self, key: &Key) -> Option<&FormalSum<TensorKey>> {
        self.index_of(key).map(|i| &self.deltas[i])
    }

    /// `1` on the neutral object(s): the empty structure, or any
    /// nodeless decorated forest.
    pub fn counit_of(&self, idx: usize) -> Rational {
        let neutral = match (&self.kind, &self.objects[idx]) {
            (CorpusKind::PTrees(_), CorpusObj::PForest(f)) => !f.has_nodes(),
            (_, o) => o.grade() == 0,
        };
        if neutral {
            Rational::ONE
        } else {
            Rational::ZERO
        }
    }

    pub fn zeta(&self) -> Functional {
        let mut f = Functional::new();
        for k in &self.keys {
            f.set(k.clone(), Rational::ONE);
        }
        f
    }

    pub fn epsilon(&self) -> Functional {
        let mut f = Functional::new();
        for i in 0..self.len() {
            f.set(self.keys[i].clone(), self.counit_of(i));
        }
        f
    }

    /// The Möbius functional, by inversion object by object.
    pub fn mobius(&self) -> Functional {
        let mut f = Functional::new();
        for (i, o) in self.objects.iter().enumerate() {
            let value = match o {
                CorpusObj::Poset(p) => mobius_poset(p),
                CorpusObj::Set(n) => mobius_set(*n),
                CorpusObj::Forest(t) => mobius_forest(t),
                CorpusObj::PForest(t) => mobius_pforest(t),
            };
            f.set(self.keys[i].clone(), value);
        }
        f
    }

    pub fn mobius_closed(&self) -> Functional {
        let mut f = Functional::new();
        for (i, o) in self.objects.iter().enumerate() {
            let value = match o {
                CorpusObj::Poset(p) => mobius_closed_poset(p),
                CorpusObj::Set(n) => mobius_closed_set(*n),
                CorpusObj::Forest(t) => mobius_closed_forest(t),
                CorpusObj::PForest(t) => mobius_closed_pforest(t),
            };
            f.set(self.keys[i].clone(), value);
        }
        f
    }

    /// Convolution dual to the coproduct:
    /// `(phi * psi)(a) = sum over terms of Delta(a) of c * phi(b) * psi(c)`.
    pub fn convolve(&self, phi: &Functional, psi: &Functional) -> Functional {
        let mut out = Functional::new();
        for i in 0..self.len() {
            let mut total = Rational::ZERO;
            for ((b, c), coeff) in self.deltas[i].iter() {
                total += *coeff * phi.eval(b) * psi.eval(c);
            }
            out.set(self.keys[i].clone(), total);
        }
        out
    }

    /// Coassociativity and both counit laws, object by object, as exact
    /// equalities of formal sums.
    pub fn verify_coalgebra_laws(&self) -> CheckReport {
        let name = match &self.kind {
            CorpusKind::Posets => "posets",
            CorpusKind::Sets => "sets",
            CorpusKind::Forests => "forests",
            CorpusKind::PTrees(_) => "ptrees",
        };
        let mut report = CheckReport::new(name, "coalgebra-laws");
        for i in 0..self.len() {
            let key = &self.keys[i];
            let delta = &self.deltas[i];

            let mut left: FormalSum<TripleKey> = FormalSum::zero();
            let mut right: FormalSum<TripleKey> = FormalSum::zero();
            let mut closed = true;
            for ((b, c), coeff) in delta.iter() {
                match self.delta_by_key(b) {
                    Some(db) => {
                        for ((x, y), c2) in db.iter() {
                            left.add_term((x.clone(), y.clone(), c.clone()), *coeff * *c2);
                        }
                    }
                    None => closed = false,
                }
                match self.delta_by_key(c) {
                    Some(dc) => {
                        for ((x, y), c2) in dc.iter() {
                            right.add_term((b.clone(), x.clone(), y.clone()), *coeff * *c2);
                        }
                    }
                    None => closed = false,
                }
            }
            report.push(
                format!("coassoc:{key}"),
                closed && left == right,
                if closed && left == right { None } else { Some(key.clone()) },
            );

            let mut left_counit: FormalSum<Key> = FormalSum::zero();
            let mut right_counit: FormalSum<Key> = FormalSum::zero();
            for ((b, c), coeff) in delta.iter() {
                let eps_b = self
                    .index_of(b)
                    .map(|j| self.counit_of(j))
                    .unwrap_or(Rational::ZERO);
                let eps_c = self
                    .index_of(c)
                    .map(|j| self.counit_of(j))
                    .unwrap_or(Rational::ZERO);
                left_counit.add_term(c.clone(), *coeff * eps_b);
                right_counit.add_term(b.clone(), *coeff * eps_c);
            }
            let expected = FormalSum::singleton(key.clone());
            let ok = left_counit == expected && right_counit == expected;
            report.push(
                format!("counit:{key}"),
                ok,
                if ok { None } else { Some(key.clone()) },
            );
        }
        report.sort();
        report
    }
}

fn drop_first_nontrivial(delta: &mut FormalSum<TensorKey>) {
    let target: Option<TensorKey> = delta
        .iter()
        .find(|((b, c), _)| b.object_size() > 0 && c.object_size() > 0)
        .map(|(k, _)| k.clone());
    if let Some(k) = target {
        delta.add_term(k, Rational::from_int(-1));
    }
}

/// String form of a tensor key for serialized formal sums.
pub fn tensor_key_string(k: &TensorKey) -> String {
    format!("{} (x) {}", k.0, k.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn key_of(p: &Poset) -> Key {
        poset_class_key(p)
    }

    #[test]
    fn coproduct_chain2() {
        let chain2 = Poset::chain(2);
        let d = coproduct_poset(&chain2);
        let empty = key_of(&Poset::empty());
        let point = key_of(&Poset::discrete(1));
        let c2 = key_of(&chain2);
        assert_eq!(d.len(), 3);
        assert_eq!(d.coeff(&(empty.clone(), c2.clone())), Rational::ONE);
        assert_eq!(d.coeff(&(point.clone(), point.clone())), Rational::ONE);
        assert_eq!(d.coeff(&(c2, empty)), Rational::ONE);
    }

    #[test]
    fn coproduct_discrete2_doubles_middle() {
        let d2 = Poset::discrete(2);
        let d = coproduct_poset(&d2);
        let point = key_of(&Poset::discrete(1));
        assert_eq!(d.coeff(&(point.clone(), point)), Rational::from_int(2));
    }

    #[test]
    fn coproduct_sets_binomial() {
        let d = coproduct_set(4);
        assert_eq!(
            d.coeff(&(set_class_key(2), set_class_key(2))),
            Rational::from_int(6)
        );
        assert_eq!(
            d.coeff(&(set_class_key(1), set_class_key(3))),
            Rational::from_int(4)
        );
    }

    #[test]
    fn counit_examples() {
        let corpus = Corpus::posets(2);
        let empty_idx = corpus.index_of(&key_of(&Poset::empty())).unwrap();
        assert_eq!(corpus.counit_of(empty_idx), Rational::ONE);
        let pt = corpus.index_of(&key_of(&Poset::discrete(1))).unwrap();
        assert_eq!(corpus.counit_of(pt), Rational::ZERO);
    }

    #[test]
    fn counit_law_is_identity() {
        let corpus = Corpus::posets(4);
        let eps = corpus.epsilon();
        let zeta = corpus.zeta();
        let conv = corpus.convolve(&eps, &zeta);
        for key in corpus.keys() {
            assert_eq!(conv.eval(key), Rational::ONE);
        }
    }

    #[test]
    fn zeta_convolutions() {
        let sets = Corpus::sets(6);
        let z = sets.zeta();
        let zz = sets.convolve(&z, &z);
        for n in 0..=6usize {
            assert_eq!(zz.eval(&set_class_key(n)), Rational::from_int(1 << n));
        }
        let posets = Corpus::posets(3);
        let z = posets.zeta();
        let zz = posets.convolve(&z, &z);
        assert_eq!(zz.eval(&key_of(&Poset::chain(2))), Rational::from_int(3));
    }

    #[test]
    fn phi_vectors() {
        let d2 = Poset::discrete(2);
        assert_eq!(
            (0..4).map(|k| phi_poset(&d2, k)).collect::<Vec<_>>(),
            vec![0, 1, 2, 0]
        );
        let c2 = Poset::chain(2);
        assert_eq!(
            (0..4).map(|k| phi_poset(&c2, k)).collect::<Vec<_>>(),
            vec![0, 1, 1, 0]
        );
        assert_eq!(phi_poset(&Poset::empty(), 0), 1);
    }

    #[test]
    fn mobius_small_posets() {
        assert_eq!(mobius_poset(&Poset::chain(2)), Rational::ZERO);
        assert_eq!(mobius_poset(&Poset::discrete(2)), Rational::ONE);
        assert_eq!(mobius_poset(&Poset::chain(3)), Rational::ZERO);
        assert_eq!(mobius_poset(&Poset::empty()), Rational::ONE);
        let v = Poset::new(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(mobius_poset(&v), Rational::ZERO);
        assert_eq!(mobius_closed_poset(&v), Rational::ZERO);
        assert_eq!(
            mobius_closed_poset(&Poset::discrete(3)),
            Rational::from_int(-1)
        );
    }

    #[test]
    fn mobius_sets_alternating() {
        for n in 0..=8usize {
            assert_eq!(mobius_set(n), Rational::neg_one_pow(n));
        }
    }

    #[test]
    fn coalgebra_laws_and_mutation() {
        let corpus = Corpus::posets(4);
        assert!(corpus.verify_coalgebra_laws().passed());
        let mutated = corpus.with_mutation(CoalgebraMutation::DropCut);
        assert!(!mutated.verify_coalgebra_laws().passed());
    }

    #[test]
    fn ptree_corpus_is_closed() {
        let sig = Rc::new(Signature::single_binary());
        let corpus = Corpus::ptrees(sig.clone(), 2, 1);
        for i in 0..corpus.len() {
            for ((b, c), _) in corpus.delta(i).iter() {
                assert!(corpus.index_of(b).is_some(), "factor {b} missing");
                assert!(corpus.index_of(c).is_some(), "factor {c} missing");
            }
        }
        assert!(corpus.verify_coalgebra_laws().passed());
    }

    #[test]
    fn grading_preserved() {
        let corpus = Corpus::posets(4);
        for i in 0..corpus.len() {
            let n = corpus.objects()[i].grade();
            for ((b, c), _) in corpus.delta(i).iter() {
                assert_eq!(b.object_size() + c.object_size(), n);
            }
        }
    }
}
