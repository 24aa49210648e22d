//! Truncated simplicial groupoids of layered structures, with executable
//! checkers for the decomposition-space, Segal, completeness, and culf
//! conditions.
//!
//! Instances enumerate concrete simplices degree by degree up to a size
//! bound; checkers materialize the finite groupoids of isomorphism
//! classes and verify pullback squares at the cardinality level. Fibers
//! are compared under a common extra-size budget so that the truncation
//! inherent in desk-scale materialization cannot produce spurious
//! mismatches.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::groupoid::{
    is_monomorphism, is_pullback_at_cardinality, FiniteGroupoid, GroupoidError, GroupoidMap,
    IsoClass, Key, PullbackOutcome, Square, SquareError,
};
use crate::layered::{poset_layerings, LayeredPoset, LayeredSet};
use crate::obj::{MappedObj, Obj};
use crate::poset::enumerate_posets;
use crate::ptree::{enumerate_pforests, pforest_layerings, Signature};
use crate::report::CheckReport;

type ObjectsFn = dyn Fn(usize, usize) -> Vec<Obj>;
type StructureFn = dyn Fn(usize, usize, &Obj) -> MappedObj;
type MapFn = dyn Fn(usize, &Obj) -> MappedObj;

/// A truncated simplicial groupoid presented by enumerators and
/// object-level face/degeneracy maps.
#[derive(Clone)]
pub struct SimplicialInstance {
    pub name: String,
    objects: Rc<ObjectsFn>,
    face: Rc<StructureFn>,
    degen: Rc<StructureFn>,
}

impl SimplicialInstance {
    pub fn new(
        name: impl Into<String>,
        objects: Rc<ObjectsFn>,
        face: Rc<StructureFn>,
        degen: Rc<StructureFn>,
    ) -> SimplicialInstance {
        SimplicialInstance {
            name: name.into(),
            objects,
            face,
            degen,
        }
    }

    /// Class representatives of degree `k` with size at most `bound`.
    pub fn objects(&self, degree: usize, bound: usize) -> Vec<Obj> {
        (self.objects)(degree, bound)
    }

    /// `d_i: X_k -> X_{k-1}`; `i = 0` deletes the bottom layer, `i = k`
    /// the top one, inner indices join adjacent layers.
    pub fn face(&self, degree: usize, index: usize, x: &Obj) -> MappedObj {
        (self.face)(degree, index, x)
    }

    /// `s_i: X_k -> X_{k+1}` inserts an empty layer at position `i+1`.
    pub fn degeneracy(&self, degree: usize, index: usize, x: &Obj) -> MappedObj {
        (self.degen)(degree, index, x)
    }
}

/// A simplicial map between two instances, given object-level.
#[derive(Clone)]
pub struct SimplicialMap {
    pub name: String,
    pub source: SimplicialInstance,
    pub target: SimplicialInstance,
    apply: Rc<MapFn>,
}

impl SimplicialMap {
    pub fn new(
        name: impl Into<String>,
        source: SimplicialInstance,
        target: SimplicialInstance,
        apply: Rc<MapFn>,
    ) -> SimplicialMap {
        SimplicialMap {
            name: name.into(),
            source,
            target,
            apply,
        }
    }

    pub fn apply(&self, degree: usize, x: &Obj) -> MappedObj {
        (self.apply)(degree, x)
    }
}

/// The materialized groupoid of one degree: classes plus one concrete
/// representative per class, aligned by position.
#[derive(Clone)]
pub struct DegreeData {
    pub groupoid: FiniteGroupoid,
    pub reps: Vec<Obj>,
}

pub fn build_degree(objs: Vec<Obj>) -> DegreeData {
    let mut by_key: BTreeMap<Key, (IsoClass, Obj)> = BTreeMap::new();
    for o in objs {
        let iso = o.canonical();
        by_key.entry(iso.key.clone()).or_insert((iso, o));
    }
    let mut classes = Vec::new();
    let mut reps = Vec::new();
    for (_, (iso, o)) in by_key {
        classes.push(iso);
        reps.push(o);
    }
    DegreeData {
        groupoid: FiniteGroupoid::new(classes).expect("keys deduplicated"),
        reps,
    }
}

/// Materialize a map of groupoids from an object-level function. The
/// image of every class must land in `to`; a miss is reported as
/// `ImageOutsideCodomain` (this is how dropped-class mutations surface).
pub fn build_map(
    from: &DegreeData,
    to: &DegreeData,
    f: &dyn Fn(&Obj) -> MappedObj,
) -> Result<GroupoidMap, GroupoidError> {
    let mut on_classes = BTreeMap::new();
    let mut aut_image = BTreeMap::new();
    for (i, x) in from.reps.iter().enumerate() {
        let key = from.groupoid.classes()[i].key.clone();
        let mapped = f(x);
        let iso = mapped.obj.canonical();
        if !to.groupoid.contains(&iso.key) {
            return Err(GroupoidError::ImageOutsideCodomain {
                class: key,
                image: iso.key,
            });
        }
        if let (Some(auts), Some(em)) = (x.automorphisms(), mapped.elem_map.as_ref()) {
            if let Some(order) = induced_aut_image(&auts, em, mapped.obj.universe_len()) {
                aut_image.insert(key.clone(), order);
            }
        }
        on_classes.insert(key, iso.key);
    }
    GroupoidMap::new(from.groupoid.clone(), to.groupoid.clone(), on_classes, aut_image)
}

fn induced_aut_image(auts: &[Vec<usize>], em: &[Option<usize>], target_len: usize) -> Option<u64> {
    let mut covered = vec![false; target_len];
    for t in em.iter().flatten() {
        covered[*t] = true;
    }
    if covered.iter().any(|c| !c) {
        return None;
    }
    let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
    for sigma in auts {
        let mut tau = vec![usize::MAX; target_len];
        for (e, t) in em.iter().enumerate() {
            if let Some(t) = t {
                {
                    let t2 = em[sigma[e]]?;
                    tau[*t] = t2
                }
            }
        }
        if tau.contains(&usize::MAX) {
            return None;
        }
        images.insert(tau);
    }
    Some(images.len() as u64)
}

/// Degree-by-degree materialization cache for one instance and bound.
pub struct Materializer<'a> {
    inst: &'a SimplicialInstance,
    bound: usize,
    cache: BTreeMap<usize, Rc<DegreeData>>,
}

impl<'a> Materializer<'a> {
    pub fn new(inst: &'a SimplicialInstance, bound: usize) -> Materializer<'a> {
        Materializer {
            inst,
            bound,
            cache: BTreeMap::new(),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn degree(&mut self, k: usize) -> Rc<DegreeData> {
        if let Some(d) = self.cache.get(&k) {
            return d.clone();
        }
        let data = Rc::new(build_degree(self.inst.objects(k, self.bound)));
        self.cache.insert(k, data.clone());
        data
    }

    pub fn face_map(&mut self, degree: usize, index: usize) -> Result<GroupoidMap, GroupoidError> {
        let from = self.degree(degree);
        let to = self.degree(degree - 1);
        let inst = self.inst;
        build_map(&from, &to, &|x| inst.face(degree, index, x))
    }

    pub fn degen_map(&mut self, degree: usize, index: usize) -> Result<GroupoidMap, GroupoidError> {
        let from = self.degree(degree);
        let to = self.degree(degree + 1);
        let inst = self.inst;
        build_map(&from, &to, &|x| inst.degeneracy(degree, index, x))
    }
}

/// Record one pullback check in a report, turning build and commutation
/// problems into distinct failed entries.
pub fn record_pullback_square(
    report: &mut CheckReport,
    id: String,
    bound: usize,
    maps: Result<(GroupoidMap, GroupoidMap, GroupoidMap, GroupoidMap), GroupoidError>,
) {
    match maps {
        Err(GroupoidError::ImageOutsideCodomain { image, .. }) => {
            report.push(format!("{id}:closure"), false, Some(image));
        }
        Err(e) => {
            let _ = e;
            report.push(format!("{id}:build"), false, None);
        }
        Ok((a_to_b, a_to_c, b_to_d, c_to_d)) => {
            let sq = Square {
                a_to_b: &a_to_b,
                a_to_c: &a_to_c,
                b_to_d: &b_to_d,
                c_to_d: &c_to_d,
                size_bound: Some(bound),
            };
            match is_pullback_at_cardinality(&sq) {
                Ok(PullbackOutcome::Pullback) => report.push(id, true, None),
                Ok(PullbackOutcome::NotPullback { witness }) => {
                    report.push(id, false, Some(witness))
                }
                Err(SquareError::NotCommuting(w)) => {
                    report.push(format!("{id}:noncommuting"), false, Some(w))
                }
                Err(SquareError::Groupoid(GroupoidError::ImageOutsideCodomain {
                    image, ..
                })) => report.push(format!("{id}:closure"), false, Some(image)),
                Err(_) => report.push(format!("{id}:error"), false, None),
            }
        }
    }
}

fn gather4(
    a: Result<GroupoidMap, GroupoidError>,
    b: Result<GroupoidMap, GroupoidError>,
    c: Result<GroupoidMap, GroupoidError>,
    d: Result<GroupoidMap, GroupoidError>,
) -> Result<(GroupoidMap, GroupoidMap, GroupoidMap, GroupoidMap), GroupoidError> {
    Ok((a?, b?, c?, d?))
}

/// The four pullback-square families characterizing decomposition
/// spaces, verified at cardinality level for all degrees that fit under
/// `degree_bound`.
pub fn check_decomposition_space(
    inst: &SimplicialInstance,
    size_bound: usize,
    degree_bound: usize,
) -> CheckReport {
    let mut report = CheckReport::new(inst.name.clone(), "decomposition-space");
    let mut mat = Materializer::new(inst, size_bound);
    // degeneracies against the bottom face
    for n in 0..degree_bound.saturating_sub(1) {
        for k in 0..=n {
            let maps = gather4(
                mat.degen_map(n + 1, k + 1),
                mat.face_map(n + 1, 0),
                mat.face_map(n + 2, 0),
                mat.degen_map(n, k),
            );
            record_pullback_square(
                &mut report,
                format!("square:s-dbot:n={n},k={k}"),
                size_bound,
                maps,
            );
        }
    }
    // inner faces against the bottom face
    for n in 0..degree_bound.saturating_sub(2) {
        for k in 0..=n {
            let maps = gather4(
                mat.face_map(n + 3, k + 2),
                mat.face_map(n + 3, 0),
                mat.face_map(n + 2, 0),
                mat.face_map(n + 2, k + 1),
            );
            record_pullback_square(
                &mut report,
                format!("square:d-dbot:n={n},k={k}"),
                size_bound,
                maps,
            );
        }
    }
    // degeneracies against the top face
    for n in 0..degree_bound.saturating_sub(1) {
        for k in 0..=n {
            let maps = gather4(
                mat.degen_map(n + 1, k),
                mat.face_map(n + 1, n + 1),
                mat.face_map(n + 2, n + 2),
                mat.degen_map(n, k),
            );
            record_pullback_square(
                &mut report,
                format!("square:s-dtop:n={n},k={k}"),
                size_bound,
                maps,
            );
        }
    }
    // inner faces against the top face
    for n in 0..degree_bound.saturating_sub(2) {
        for k in 0..=n {
            let maps = gather4(
                mat.face_map(n + 3, k + 1),
                mat.face_map(n + 3, n + 3),
                mat.face_map(n + 2, n + 2),
                mat.face_map(n + 2, k + 1),
            );
            record_pullback_square(
                &mut report,
                format!("square:d-dtop:n={n},k={k}"),
                size_bound,
                maps,
            );
        }
    }
    report.sort();
    report
}

/// Segal squares: `X_{n+1}` over `X_{n-1}` via top and bottom faces.
pub fn check_segal(inst: &SimplicialInstance, size_bound: usize, degree_bound: usize) -> CheckReport {
    let mut report = CheckReport::new(inst.name.clone(), "segal");
    let mut mat = Materializer::new(inst, size_bound);
    for n in 1..degree_bound {
        let maps = gather4(
            mat.face_map(n + 1, n + 1),
            mat.face_map(n + 1, 0),
            mat.face_map(n, 0),
            mat.face_map(n, n),
        );
        record_pullback_square(&mut report, format!("segal:n={n}"), size_bound, maps);
    }
    report.sort();
    report
}

/// Completeness: `s_0: X_0 -> X_1` is a monomorphism.
pub fn check_complete(inst: &SimplicialInstance, size_bound: usize) -> Result<bool, GroupoidError> {
    let mut mat = Materializer::new(inst, size_bound);
    let s0 = mat.degen_map(0, 0)?;
    is_monomorphism(&s0)
}

/// Simplicial identities, pointwise on enumerated representatives,
/// compared by canonical keys.
pub fn check_simplicial_identities(
    inst: &SimplicialInstance,
    size_bound: usize,
    degree_bound: usize,
) -> CheckReport {
    let mut report = CheckReport::new(inst.name.clone(), "simplicial-identities");
    for m in 0..=degree_bound {
        let reps = inst.objects(m, size_bound);
        // face-face
        if m >= 2 {
            for j in 0..=m {
                for i in 0..j {
                    let mut witness = None;
                    for x in &reps {
                        let lhs = inst.face(m - 1, i, &inst.face(m, j, x).obj).obj;
                        let rhs = inst.face(m - 1, j - 1, &inst.face(m, i, x).obj).obj;
                        if lhs.canonical().key != rhs.canonical().key {
                            witness = Some(x.canonical().key);
                            break;
                        }
                    }
                    report.push(format!("dd:m={m},i={i},j={j}"), witness.is_none(), witness);
                }
            }
        }
        // degeneracy-degeneracy
        if m + 2 <= degree_bound {
            for j in 0..=m {
                for i in 0..=j {
                    let mut witness = None;
                    for x in &reps {
                        let lhs = inst
                            .degeneracy(m + 1, i, &inst.degeneracy(m, j, x).obj)
                            .obj;
                        let rhs = inst
                            .degeneracy(m + 1, j + 1, &inst.degeneracy(m, i, x).obj)
                            .obj;
                        if lhs.canonical().key != rhs.canonical().key {
                            witness = Some(x.canonical().key);
                            break;
                        }
                    }
                    report.push(format!("ss:m={m},i={i},j={j}"), witness.is_none(), witness);
                }
            }
        }
        // face-degeneracy
        if m < degree_bound {
            for j in 0..=m {
                for i in 0..=m + 1 {
                    let mut witness = None;
                    for x in &reps {
                        let sx = inst.degeneracy(m, j, x).obj;
                        let lhs = inst.face(m + 1, i, &sx).obj;
                        let rhs = if i == j || i == j + 1 {
                            x.clone()
                        } else if i < j {
                            inst.degeneracy(m - 1, j - 1, &inst.face(m, i, x).obj).obj
                        } else {
                            inst.degeneracy(m - 1, j, &inst.face(m, i - 1, x).obj).obj
                        };
                        if lhs.canonical().key != rhs.canonical().key {
                            witness = Some(x.canonical().key);
                            break;
                        }
                    }
                    report.push(format!("ds:m={m},i={i},j={j}"), witness.is_none(), witness);
                }
            }
        }
    }
    report.sort();
    report
}

/// Culf check for a simplicial map: simpliciality pointwise, then
/// cardinality pullbacks of the naturality squares on the active
/// generators (inner faces and all degeneracies).
pub fn check_culf(map: &SimplicialMap, size_bound: usize, degree_bound: usize) -> CheckReport {
    let mut report = CheckReport::new(map.name.clone(), "culf");
    // simpliciality, object-level
    for m in 0..=degree_bound {
        let reps = map.source.objects(m, size_bound);
        if m >= 1 {
            for i in 0..=m {
                let mut witness = None;
                for x in &reps {
                    let lhs = map.apply(m - 1, &map.source.face(m, i, x).obj).obj;
                    let rhs = map.target.face(m, i, &map.apply(m, x).obj).obj;
                    if lhs.canonical().key != rhs.canonical().key {
                        witness = Some(x.canonical().key);
                        break;
                    }
                }
                report.push(format!("simplicial:d:m={m},i={i}"), witness.is_none(), witness);
            }
        }
        if m < degree_bound {
            for i in 0..=m {
                let mut witness = None;
                for x in &reps {
                    let lhs = map.apply(m + 1, &map.source.degeneracy(m, i, x).obj).obj;
                    let rhs = map.target.degeneracy(m, i, &map.apply(m, x).obj).obj;
                    if lhs.canonical().key != rhs.canonical().key {
                        witness = Some(x.canonical().key);
                        break;
                    }
                }
                report.push(format!("simplicial:s:m={m},i={i}"), witness.is_none(), witness);
            }
        }
    }
    // naturality squares on active generators
    let mut src = Materializer::new(&map.source, size_bound);
    let mut tgt = Materializer::new(&map.target, size_bound);
    let g_at = |src: &mut Materializer<'_>,
                tgt: &mut Materializer<'_>,
                m: usize|
     -> Result<GroupoidMap, GroupoidError> {
        let from = src.degree(m);
        let to = tgt.degree(m);
        build_map(&from, &to, &|x| map.apply(m, x))
    };
    for m in 2..=degree_bound {
        for i in 1..m {
            let maps = gather4(
                g_at(&mut src, &mut tgt, m),
                src.face_map(m, i),
                tgt.face_map(m, i),
                g_at(&mut src, &mut tgt, m - 1),
            );
            record_pullback_square(&mut report, format!("culf:d:m={m},i={i}"), size_bound, maps);
        }
    }
    for m in 0..degree_bound {
        for i in 0..=m {
            let maps = gather4(
                g_at(&mut src, &mut tgt, m),
                src.degen_map(m, i),
                tgt.degen_map(m, i),
                g_at(&mut src, &mut tgt, m + 1),
            );
            record_pullback_square(&mut report, format!("culf:s:m={m},i={i}"), size_bound, maps);
        }
    }
    report.sort();
    report
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DecalageSide {
    Lower,
    Upper,
}

/// Shift a simplicial instance, deleting the bottom (or top) face and
/// degeneracy data.
pub fn decalage(inst: &SimplicialInstance, side: DecalageSide) -> SimplicialInstance {
    let objects = inst.objects.clone();
    let face = inst.face.clone();
    let degen = inst.degen.clone();
    let name = match side {
        DecalageSide::Lower => format!("dec-lower({})", inst.name),
        DecalageSide::Upper => format!("dec-upper({})", inst.name),
    };
    let f_objects = {
        let objects = objects.clone();
        move |k: usize, b: usize| objects(k + 1, b)
    };
    let f_face = {
        let face = face.clone();
        move |k: usize, i: usize, x: &Obj| match side {
            DecalageSide::Lower => face(k + 1, i + 1, x),
            DecalageSide::Upper => face(k + 1, i, x),
        }
    };
    let f_degen = {
        let degen = degen.clone();
        move |k: usize, i: usize, x: &Obj| match side {
            DecalageSide::Lower => degen(k + 1, i + 1, x),
            DecalageSide::Upper => degen(k + 1, i, x),
        }
    };
    SimplicialInstance::new(name, Rc::new(f_objects), Rc::new(f_face), Rc::new(f_degen))
}

/// The comparison map from a décalage back to the instance (the deleted
/// outer face).
pub fn decalage_map(inst: &SimplicialInstance, side: DecalageSide) -> SimplicialMap {
    let dec = decalage(inst, side);
    let face = inst.face.clone();
    let name = match side {
        DecalageSide::Lower => format!("dec-bot({})", inst.name),
        DecalageSide::Upper => format!("dec-top({})", inst.name),
    };
    let apply = move |k: usize, x: &Obj| match side {
        DecalageSide::Lower => face(k + 1, 0, x),
        DecalageSide::Upper => face(k + 1, k + 1, x),
    };
    SimplicialMap::new(name, dec, inst.clone(), Rc::new(apply))
}

/// Negative control: remove one class from one degree's enumeration.
pub fn with_dropped_class(
    inst: &SimplicialInstance,
    degree: usize,
    key: Key,
) -> SimplicialInstance {
    let objects = inst.objects.clone();
    let f_objects = move |k: usize, b: usize| {
        let mut objs = objects(k, b);
        if k == degree {
            objs.retain(|o| o.canonical().key != key);
        }
        objs
    };
    SimplicialInstance::new(
        format!("{}[dropped]", inst.name),
        Rc::new(f_objects),
        inst.face.clone(),
        inst.degen.clone(),
    )
}

/// Layered poset classes of the given depth and maximum size, canonical
/// representatives sorted by key.
pub fn layered_poset_classes(depth: u8, max_size: usize) -> Vec<LayeredPoset> {
    let mut by_key: BTreeMap<Key, LayeredPoset> = BTreeMap::new();
    for p in enumerate_posets(max_size).expect("size within enumeration guard") {
        for l in poset_layerings(&p, depth) {
            let (rep, _) = l.canonical_rep();
            by_key.entry(l.canonical().key).or_insert(rep);
        }
    }
    by_key.into_values().collect()
}

/// Layered set classes: one per vector of layer sizes.
pub fn layered_set_classes(depth: u8, max_size: usize) -> Vec<LayeredSet> {
    let mut out = Vec::new();
    let mut sizes = vec![0usize; depth as usize];
    fn rec(sizes: &mut Vec<usize>, pos: usize, left: usize, out: &mut Vec<LayeredSet>) {
        if pos == sizes.len() {
            out.push(LayeredSet::from_sizes(sizes));
            return;
        }
        for c in 0..=left {
            sizes[pos] = c;
            rec(sizes, pos + 1, left - c, out);
        }
    }
    rec(&mut sizes, 0, max_size, &mut out);
    let mut by_key: BTreeMap<Key, LayeredSet> = BTreeMap::new();
    for s in out {
        by_key.entry(s.canonical().key).or_insert(s);
    }
    by_key.into_values().collect()
}

/// The decomposition space of layered finite posets.
pub fn instance_layered_posets() -> SimplicialInstance {
    poset_like_instance("posets", |_| true)
}

/// The full subinstance of forest-shaped posets (the decomposition space
/// of rooted forests as a directed restriction species).
pub fn instance_forests() -> SimplicialInstance {
    poset_like_instance("forests", |lp| lp.poset().is_forest())
}

fn poset_like_instance(
    name: &str,
    filter: impl Fn(&LayeredPoset) -> bool + 'static,
) -> SimplicialInstance {
    let objects = move |k: usize, bound: usize| -> Vec<Obj> {
        if k == 0 {
            return vec![Obj::Poset(LayeredPoset::empty_zero_layered())];
        }
        layered_poset_classes(k as u8, bound)
            .into_iter()
            .filter(&filter)
            .map(Obj::Poset)
            .collect()
    };
    let face = |k: usize, i: usize, x: &Obj| -> MappedObj {
        let lp = x.as_poset();
        assert!(k >= 1 && i <= k, "face index out of range");
        let (obj, em) = if i == 0 {
            lp.delete_first_layer()
        } else if i == k {
            lp.delete_last_layer()
        } else {
            lp.join_layers(i as u8)
        };
        MappedObj::tracked(Obj::Poset(obj), em)
    };
    let degen = |k: usize, i: usize, x: &Obj| -> MappedObj {
        let lp = x.as_poset();
        assert!(i <= k, "degeneracy index out of range");
        let (obj, em) = lp.insert_empty_layer(i as u8 + 1);
        MappedObj::tracked(Obj::Poset(obj), em)
    };
    SimplicialInstance::new(name, Rc::new(objects), Rc::new(face), Rc::new(degen))
}

/// The decomposition space of layered finite sets.
pub fn instance_layered_sets() -> SimplicialInstance {
    let objects = |k: usize, bound: usize| -> Vec<Obj> {
        if k == 0 {
            return vec![Obj::Set(LayeredSet::empty_zero_layered())];
        }
        layered_set_classes(k as u8, bound)
            .into_iter()
            .map(Obj::Set)
            .collect()
    };
    let face = |k: usize, i: usize, x: &Obj| -> MappedObj {
        let ls = x.as_set();
        assert!(k >= 1 && i <= k, "face index out of range");
        let (obj, em) = if i == 0 {
            ls.delete_first_layer()
        } else if i == k {
            ls.delete_last_layer()
        } else {
            ls.join_layers(i as u8)
        };
        MappedObj::tracked(Obj::Set(obj), em)
    };
    let degen = |k: usize, i: usize, x: &Obj| -> MappedObj {
        let ls = x.as_set();
        assert!(i <= k, "degeneracy index out of range");
        let (obj, em) = ls.insert_empty_layer(i as u8 + 1);
        MappedObj::tracked(Obj::Set(obj), em)
    };
    SimplicialInstance::new("sets", Rc::new(objects), Rc::new(face), Rc::new(degen))
}

/// The bar-construction simplices of decorated forests: degree-k objects
/// are k-fold nested cuts, realized as node layerings. Only the degrees
/// the coalgebra needs are exercised by the checkers.
pub fn instance_ptrees(sig: Rc<Signature>) -> SimplicialInstance {
    let objects = {
        let sig = sig.clone();
        move |k: usize, bound: usize| -> Vec<Obj> {
            let mut by_key: BTreeMap<Key, Obj> = BTreeMap::new();
            for f in enumerate_pforests(&sig, bound, bound) {
                if f.node_count() + f.bare_count() > bound {
                    continue;
                }
                for l in pforest_layerings(&f, k as u8) {
                    by_key.entry(l.canonical().key).or_insert(Obj::PForest(l));
                }
            }
            by_key.into_values().collect()
        }
    };
    let face = {
        let sig = sig.clone();
        move |k: usize, i: usize, x: &Obj| -> MappedObj {
            let lf = match x {
                Obj::PForest(f) => f,
                _ => panic!("expected a decorated forest"),
            };
            assert!(k >= 1 && i <= k, "face index out of range");
            let obj = if i == 0 {
                lf.delete_first_layer(&sig)
            } else if i == k {
                lf.delete_last_layer(&sig)
            } else {
                lf.join_layers(i as u8)
            };
            MappedObj::untracked(Obj::PForest(obj))
        }
    };
    let degen = move |k: usize, i: usize, x: &Obj| -> MappedObj {
        let lf = match x {
            Obj::PForest(f) => f,
            _ => panic!("expected a decorated forest"),
        };
        assert!(i <= k, "degeneracy index out of range");
        MappedObj::untracked(Obj::PForest(lf.insert_empty_layer(i as u8 + 1)))
    };
    SimplicialInstance::new("ptrees", Rc::new(objects), Rc::new(face), Rc::new(degen))
}

/// The culf classifier map: forests into posets, forgetting nothing.
pub fn forest_to_poset_map() -> SimplicialMap {
    let apply = |_k: usize, x: &Obj| -> MappedObj {
        let lp = x.as_poset();
        let em = (0..lp.len()).map(Some).collect();
        MappedObj::tracked(Obj::Poset(lp.clone()), em)
    };
    SimplicialMap::new(
        "forests-to-posets",
        instance_forests(),
        instance_layered_posets(),
        Rc::new(apply),
    )
}

/// The forgetful map from layered posets to layered sets. Simplicial but
/// not culf; kept as a negative control.
pub fn poset_to_set_map() -> SimplicialMap {
    let apply = |_k: usize, x: &Obj| -> MappedObj {
        let lp = x.as_poset();
        let layers: Vec<u8> = (0..lp.len()).map(|i| lp.layer_of(i)).collect();
        // elements sort by layer in the set form; map indices accordingly
        let mut order: Vec<usize> = (0..lp.len()).collect();
        order.sort_by_key(|&i| (layers[i], i));
        let mut em = vec![None; lp.len()];
        for (pos, &i) in order.iter().enumerate() {
            em[i] = Some(pos);
        }
        let ls = LayeredSet::new(layers, lp.depth()).expect("layers in range");
        MappedObj::tracked(Obj::Set(ls), em)
    };
    SimplicialMap::new(
        "posets-to-sets",
        instance_layered_posets(),
        instance_layered_sets(),
        Rc::new(apply),
    )
}
