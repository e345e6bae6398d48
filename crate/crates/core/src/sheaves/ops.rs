use std::collections::HashMap;
use std::sync::Arc;

use crate::nuclei::{FinitePoset, Frame, Nucleus};

use super::presheaf::{Presheaf, PresheafMap, NONE};
use super::SheafError;

/// A down-set of the poset, standing for the subterminal presheaf on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subterminal(u64);

impl Subterminal {
    pub fn new(poset: &FinitePoset, bits: u64) -> Result<Self, SheafError> {
        if !poset.is_down_set(bits) {
            return Err(SheafError::NotDownSet(poset.set_names(bits)));
        }
        Ok(Subterminal(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn presheaf(self, poset: &Arc<FinitePoset>) -> Presheaf {
        Presheaf::subterminal(poset.clone(), self.0)
    }
}

/// The Grothendieck topology of a nucleus: a sieve `S` on `p` covers when
/// `p` lies in `j(S)`.
#[derive(Clone, Copy)]
pub struct Topology<'a> {
    frame: &'a Frame,
    j: &'a Nucleus,
}

impl<'a> Topology<'a> {
    pub fn new(frame: &'a Frame, j: &'a Nucleus) -> Self {
        assert_eq!(j.table().len(), frame.len(), "nucleus is for a different frame");
        Topology { frame, j }
    }

    pub fn frame(&self) -> &'a Frame {
        self.frame
    }

    pub fn nucleus(&self) -> &'a Nucleus {
        self.j
    }

    pub fn covers(&self, p: usize, sieve: u64) -> bool {
        let a = self.frame.index_of(sieve).expect("sieve is not a down-set");
        self.frame.bits(self.j.apply(a)) >> p & 1 == 1
    }

    /// Sieves on `p`: down-sets contained in `↓p`.
    pub fn sieves(&self, p: usize) -> impl Iterator<Item = u64> + '_ {
        let down = self.frame.poset().down(p);
        self.frame.elements().map(|a| self.frame.bits(a)).filter(move |s| s & !down == 0)
    }

    /// The least covering sieve on `p`. Covering sieves are closed under
    /// intersection because `j` preserves meets.
    pub fn minimal_sieve(&self, p: usize) -> u64 {
        self.sieves(p).filter(|&s| self.covers(p, s)).fold(self.frame.poset().down(p), |m, s| m & s)
    }

    fn check(&self, x: &Presheaf) {
        assert!(**x.poset() == *self.frame.poset(), "presheaf and nucleus live on different posets");
    }
}

/// Where the sheaf condition fails: a point and a covering sieve on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SheafWitness {
    pub point: usize,
    pub sieve: u64,
}

/// Checks unique gluing at the points of `points` only.
pub fn sheaf_witness_on(x: &Presheaf, top: Topology<'_>, points: u64) -> Option<SheafWitness> {
    top.check(x);
    for p in 0..x.points() {
        if points >> p & 1 == 0 {
            continue;
        }
        for s in top.sieves(p) {
            if !top.covers(p, s) {
                continue;
            }
            let fams = x.families(s);
            let mut images: Vec<Vec<usize>> = (0..x.size(p)).map(|e| x.restrictions(p, e, s)).collect();
            images.sort();
            images.dedup();
            if images.len() != x.size(p) || fams.len() != x.size(p) {
                return Some(SheafWitness { point: p, sieve: s });
            }
        }
    }
    None
}

pub fn is_sheaf(x: &Presheaf, top: Topology<'_>) -> bool {
    sheaf_witness_on(x, top, x.poset().full()).is_none()
}

pub fn is_sheaf_on(x: &Presheaf, top: Topology<'_>, points: u64) -> bool {
    sheaf_witness_on(x, top, points).is_none()
}

/// Compatible families over a chosen down-set at each point, with the unit
/// from `x`. Restriction from `p` to `q` forgets the points outside the
/// down-set chosen at `q`, which must lie inside the one chosen at `p`.
struct Limit {
    obj: Presheaf,
    fams: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    unit: PresheafMap,
}

fn mask(fam: &[usize], s: u64) -> Vec<usize> {
    fam.iter().enumerate().map(|(q, &v)| if s >> q & 1 == 1 { v } else { NONE }).collect()
}

fn limit(x: &Presheaf, sieves: &[u64]) -> Limit {
    let n = x.points();
    let fams: Vec<Vec<Vec<usize>>> = (0..n).map(|p| x.families(sieves[p])).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> =
        fams.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect()).collect();
    let sizes = fams.iter().map(Vec::len).collect();
    let obj = Presheaf::new(x.poset().clone(), sizes, |p, q, i| index[q][&mask(&fams[p][i], sieves[q])])
        .expect("limit presheaf is functorial");
    let unit = PresheafMap::raw(
        (0..n).map(|p| (0..x.size(p)).map(|e| index[p][&x.restrictions(p, e, sieves[p])]).collect()).collect(),
    );
    Limit { obj, fams, index, unit }
}

fn limit_map(h: &PresheafMap, lx: &Limit, ly: &Limit) -> PresheafMap {
    PresheafMap::raw(
        lx.fams
            .iter()
            .enumerate()
            .map(|(p, fs)| {
                fs.iter()
                    .map(|f| {
                        let g: Vec<usize> =
                            f.iter().enumerate().map(|(q, &v)| if v == NONE { NONE } else { h.at(q, v) }).collect();
                        ly.index[p][&g]
                    })
                    .collect()
            })
            .collect(),
    )
}

fn plus(x: &Presheaf, top: Topology<'_>) -> Limit {
    let sieves: Vec<u64> = (0..x.points()).map(|p| top.minimal_sieve(p)).collect();
    limit(x, &sieves)
}

/// Sheafification by two plus constructions. In a finite site every point
/// has a least covering sieve, which is cofinal among covering sieves, so the
/// colimit over covering sieves is the set of families over it.
pub fn sheafify(x: &Presheaf, top: Topology<'_>) -> (Presheaf, PresheafMap) {
    top.check(x);
    let once = plus(x, top);
    let twice = plus(&once.obj, top);
    let unit = once.unit.then(&twice.unit);
    (twice.obj, unit)
}

/// The action of sheafification on a map `h: x -> y`.
pub fn sheafify_map(h: &PresheafMap, x: &Presheaf, y: &Presheaf, top: Topology<'_>) -> PresheafMap {
    let (x1, y1) = (plus(x, top), plus(y, top));
    let h1 = limit_map(h, &x1, &y1);
    let (x2, y2) = (plus(&x1.obj, top), plus(&y1.obj, top));
    limit_map(&h1, &x2, &y2)
}

fn open_sieves(q: Subterminal, x: &Presheaf) -> Vec<u64> {
    (0..x.points()).map(|p| q.bits() & x.poset().down(p)).collect()
}

/// `X^Q`: at `p`, compatible families over `Q ∩ ↓p`.
pub fn apply_open(q: Subterminal, x: &Presheaf) -> (Presheaf, PresheafMap) {
    let l = limit(x, &open_sieves(q, x));
    (l.obj, l.unit)
}

pub fn apply_open_map(q: Subterminal, h: &PresheafMap, x: &Presheaf, y: &Presheaf) -> PresheafMap {
    limit_map(h, &limit(x, &open_sieves(q, x)), &limit(y, &open_sieves(q, y)))
}

/// `Q * X`: a point over `Q`, `X` elsewhere.
pub fn apply_closed(q: Subterminal, x: &Presheaf) -> (Presheaf, PresheafMap) {
    let sizes = (0..x.points()).map(|p| if q.contains(p) { 1 } else { x.size(p) }).collect();
    let obj = Presheaf::new(x.poset().clone(), sizes, |p, r, e| if q.contains(r) { 0 } else { x.res(p, r, e) })
        .expect("closed modality of a presheaf is functorial");
    let unit = PresheafMap::raw(
        (0..x.points()).map(|p| if q.contains(p) { vec![0; x.size(p)] } else { (0..x.size(p)).collect() }).collect(),
    );
    (obj, unit)
}

pub fn apply_closed_map(q: Subterminal, h: &PresheafMap, x: &Presheaf) -> PresheafMap {
    PresheafMap::raw((0..x.points()).map(|p| if q.contains(p) { vec![0] } else { h.comps()[p].clone() }).collect())
}

/// The image of `x -> 1`.
pub fn support(x: &Presheaf) -> (Subterminal, PresheafMap) {
    let bits = (0..x.points()).filter(|&p| x.size(p) > 0).fold(0u64, |s, p| s | 1 << p);
    (Subterminal(bits), PresheafMap::to_terminal(x))
}

/// A reflector on presheaves together with its action on maps.
#[derive(Clone, Copy)]
pub enum Reflector<'a> {
    Sheafify(Topology<'a>),
    Support,
    Open(Subterminal),
    Closed(Subterminal),
}

impl Reflector<'_> {
    pub fn apply(&self, x: &Presheaf) -> (Presheaf, PresheafMap) {
        match *self {
            Reflector::Sheafify(top) => sheafify(x, top),
            Reflector::Support => {
                let (s, unit) = support(x);
                (s.presheaf(x.poset()), unit)
            }
            Reflector::Open(q) => apply_open(q, x),
            Reflector::Closed(q) => apply_closed(q, x),
        }
    }

    pub fn apply_map(&self, h: &PresheafMap, x: &Presheaf, y: &Presheaf) -> PresheafMap {
        match *self {
            Reflector::Sheafify(top) => sheafify_map(h, x, y, top),
            Reflector::Support => {
                let (s, _) = support(x);
                PresheafMap::to_terminal(&s.presheaf(x.poset()))
            }
            Reflector::Open(q) => apply_open_map(q, h, x, y),
            Reflector::Closed(q) => apply_closed_map(q, h, x),
        }
    }
}

/// `b ×_d c` computed pointwise, with its projections.
pub struct Pullback {
    pub obj: Presheaf,
    pub pairs: Vec<Vec<(usize, usize)>>,
    pub left: PresheafMap,
    pub right: PresheafMap,
}

impl Pullback {
    pub fn new(b: &Presheaf, c: &Presheaf, f: &PresheafMap, g: &PresheafMap) -> Pullback {
        let n = b.points();
        let pairs: Vec<Vec<(usize, usize)>> = (0..n)
            .map(|p| {
                let mut v = Vec::new();
                for x in 0..b.size(p) {
                    for y in 0..c.size(p) {
                        if f.at(p, x) == g.at(p, y) {
                            v.push((x, y));
                        }
                    }
                }
                v
            })
            .collect();
        let index: Vec<HashMap<(usize, usize), usize>> =
            pairs.iter().map(|v| v.iter().enumerate().map(|(i, &xy)| (xy, i)).collect()).collect();
        let sizes = pairs.iter().map(Vec::len).collect();
        let obj = Presheaf::new(b.poset().clone(), sizes, |p, q, i| {
            let (x, y) = pairs[p][i];
            index[q][&(b.res(p, q, x), c.res(p, q, y))]
        })
        .expect("pullback of presheaves is functorial");
        let left = PresheafMap::raw(pairs.iter().map(|v| v.iter().map(|&(x, _)| x).collect()).collect());
        let right = PresheafMap::raw(pairs.iter().map(|v| v.iter().map(|&(_, y)| y).collect()).collect());
        Pullback { obj, pairs, left, right }
    }

    /// The map from a cone `(u, v)` with apex `a`, if every pair lies in
    /// the pullback.
    pub fn induced(&self, a: &Presheaf, u: &PresheafMap, v: &PresheafMap) -> Option<PresheafMap> {
        let comps = (0..a.points())
            .map(|p| {
                (0..a.size(p))
                    .map(|e| self.pairs[p].iter().position(|&xy| xy == (u.at(p, e), v.at(p, e))))
                    .collect::<Option<Vec<usize>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PresheafMap::raw(comps))
    }
}

/// A cospan `b -> d <- c`.
pub struct Cospan {
    pub b: Presheaf,
    pub c: Presheaf,
    pub d: Presheaf,
    pub f: PresheafMap,
    pub g: PresheafMap,
}

/// Whether the reflector carries the pullback of the cospan to the pullback
/// of the reflected cospan. Returns the first point where the comparison map
/// is not a bijection.
pub fn lex_witness(r: Reflector<'_>, cs: &Cospan) -> Option<usize> {
    let pb = Pullback::new(&cs.b, &cs.c, &cs.f, &cs.g);
    let (op, _) = r.apply(&pb.obj);
    let (ob, _) = r.apply(&cs.b);
    let (oc, _) = r.apply(&cs.c);
    let of = r.apply_map(&cs.f, &cs.b, &cs.d);
    let og = r.apply_map(&cs.g, &cs.c, &cs.d);
    let target = Pullback::new(&ob, &oc, &of, &og);
    let u = r.apply_map(&pb.left, &pb.obj, &cs.b);
    let v = r.apply_map(&pb.right, &pb.obj, &cs.c);
    let cmp = target.induced(&op, &u, &v).expect("reflected square commutes");
    (0..op.points()).find(|&p| {
        let mut img = cmp.comps()[p].clone();
        img.sort();
        img.dedup();
        img.len() != op.size(p) || op.size(p) != target.obj.size(p)
    })
}

pub fn lex_probe(r: Reflector<'_>, cs: &Cospan) -> bool {
    lex_witness(r, cs).is_none()
}

/// The fiber of `h: src -> tgt` over `y ∈ tgt(p)`, as a presheaf on the
/// whole poset that is empty outside `↓p`. Also returns, for each point, the
/// elements of `src` it lists.
pub fn fiber(h: &PresheafMap, src: &Presheaf, tgt: &Presheaf, p: usize, y: usize) -> (Presheaf, Vec<Vec<usize>>) {
    let poset = src.poset();
    let elems: Vec<Vec<usize>> = (0..src.points())
        .map(|q| {
            if poset.leq(q, p) {
                let yq = tgt.res(p, q, y);
                (0..src.size(q)).filter(|&e| h.at(q, e) == yq).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let obj = Presheaf::new(poset.clone(), elems.iter().map(Vec::len).collect(), |q, r, i| {
        let e = src.res(q, r, elems[q][i]);
        elems[r].binary_search(&e).expect("fiber is closed under restriction")
    })
    .expect("fiber presheaf is functorial");
    (obj, elems)
}

/// `f = right ∘ left` with `left` connected and `right` modal.
pub struct Factorization {
    pub z: Presheaf,
    pub left: PresheafMap,
    pub right: PresheafMap,
    /// `(y, s)` for each element of `z`: a point of the target and an
    /// element of the sheafified fiber over it.
    pub elements: Vec<Vec<(usize, usize)>>,
}

/// Factors `f: x -> y` through `Σ_y sheafify(fib_f y)`.
pub fn factorize(f: &PresheafMap, x: &Presheaf, y: &Presheaf, top: Topology<'_>) -> Factorization {
    top.check(x);
    let n = x.points();
    let poset = x.poset();
    // sheafified fibers, by point and target element
    let mut fibers: Vec<Vec<(Presheaf, Vec<Vec<usize>>, Presheaf, PresheafMap)>> = Vec::with_capacity(n);
    for p in 0..n {
        fibers.push(
            (0..y.size(p))
                .map(|v| {
                    let (fib, elems) = fiber(f, x, y, p, v);
                    let (sh, unit) = sheafify(&fib, top);
                    (fib, elems, sh, unit)
                })
                .collect(),
        );
    }
    // The fiber over y, restricted below q, is the fiber over y|q; so are
    // their sheafifications, since the covering sieves below q are the same.
    for p in 0..n {
        for (v, (fib, _, sh, _)) in fibers[p].iter().enumerate() {
            for q in 0..n {
                if q == p || !poset.leq(q, p) {
                    continue;
                }
                let (fib2, _, sh2, _) = &fibers[q][y.res(p, q, v)];
                for r in 0..n {
                    if poset.leq(r, q) {
                        assert_eq!(fib.size(r), fib2.size(r), "fiber restriction");
                        assert_eq!(sh.size(r), sh2.size(r), "sheafified fiber restriction");
                        for t in 0..n {
                            if poset.leq(t, r) {
                                for s in 0..sh.size(r) {
                                    assert_eq!(sh.res(r, t, s), sh2.res(r, t, s), "sheafified fiber restriction");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let elements: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|p| (0..y.size(p)).flat_map(|v| (0..fibers[p][v].2.size(p)).map(move |s| (v, s))).collect())
        .collect();
    let index: Vec<HashMap<(usize, usize), usize>> =
        elements.iter().map(|v| v.iter().enumerate().map(|(i, &e)| (e, i)).collect()).collect();
    let z = Presheaf::new(poset.clone(), elements.iter().map(Vec::len).collect(), |p, q, i| {
        let (v, s) = elements[p][i];
        index[q][&(y.res(p, q, v), fibers[p][v].2.res(p, q, s))]
    })
    .expect("factorization object is functorial");
    let left = PresheafMap::raw(
        (0..n)
            .map(|p| {
                (0..x.size(p))
                    .map(|e| {
                        let v = f.at(p, e);
                        let (_, elems, _, unit) = &fibers[p][v];
                        let local = elems[p].binary_search(&e).unwrap();
                        index[p][&(v, unit.at(p, local))]
                    })
                    .collect()
            })
            .collect(),
    );
    let right = PresheafMap::raw(elements.iter().map(|v| v.iter().map(|&(y, _)| y).collect()).collect());
    Factorization { z, left, right, elements }
}

impl Factorization {
    /// Checks `right ∘ left = f`, that the fibers of `left` sheafify to a
    /// point and that the fibers of `right` are sheaves.
    pub fn verify(&self, f: &PresheafMap, x: &Presheaf, y: &Presheaf, top: Topology<'_>) -> Result<(), String> {
        verify_factorization(&self.z, &self.left, &self.right, f, x, y, top)
    }
}

/// The same checks for any candidate factorization `x -> z -> y` of `f`.
pub fn verify_factorization(
    z: &Presheaf,
    left: &PresheafMap,
    right: &PresheafMap,
    f: &PresheafMap,
    x: &Presheaf,
    y: &Presheaf,
    top: Topology<'_>,
) -> Result<(), String> {
    let poset = x.poset();
    if left.then(right) != *f {
        return Err("the factors do not compose to the map".into());
    }
    for p in 0..x.points() {
        let down = poset.down(p);
        for v in 0..y.size(p) {
            let (fib, _) = fiber(right, z, y, p, v);
            if !is_sheaf_on(&fib, top, down) {
                return Err(format!("right fiber over {v} at {} is not a sheaf", poset.name(p)));
            }
        }
        for w in 0..z.size(p) {
            let (fib, _) = fiber(left, x, z, p, w);
            let (sh, _) = sheafify(&fib, top);
            if super::presheaf::points_of(down).iter().any(|&q| sh.size(q) != 1) {
                return Err(format!("left fiber over {w} at {} is not connected", poset.name(p)));
            }
        }
    }
    Ok(())
}

/// The fracture square of `x` for the open and closed modalities at `q`:
///
/// ```text
///   x      -> open
///   |          |
///   closed -> mixed
/// ```
pub struct FractureReport {
    pub x: Presheaf,
    pub open: Presheaf,
    pub closed: Presheaf,
    pub mixed: Presheaf,
    pub to_open: PresheafMap,
    pub to_closed: PresheafMap,
    pub open_to_mixed: PresheafMap,
    pub closed_to_mixed: PresheafMap,
    pub verdict: bool,
    pub witness: Option<FractureWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractureWitness {
    pub point: usize,
    pub stalk: usize,
    pub pullback: usize,
    pub injective: bool,
}

pub fn fracture_check(q: Subterminal, x: &Presheaf) -> FractureReport {
    let (open, to_open) = apply_open(q, x);
    let (closed, to_closed) = apply_closed(q, x);
    let (mixed, open_to_mixed) = apply_closed(q, &open);
    let closed_to_mixed = apply_closed_map(q, &to_open, x);
    let pb = Pullback::new(&open, &closed, &open_to_mixed, &closed_to_mixed);
    let cmp = pb.induced(x, &to_open, &to_closed).expect("fracture square commutes");
    let witness = (0..x.points()).find_map(|p| {
        let mut img = cmp.comps()[p].clone();
        img.sort();
        img.dedup();
        let injective = img.len() == x.size(p);
        (!injective || x.size(p) != pb.obj.size(p)).then_some(FractureWitness {
            point: p,
            stalk: x.size(p),
            pullback: pb.obj.size(p),
            injective,
        })
    });
    FractureReport {
        x: x.clone(),
        open,
        closed,
        mixed,
        to_open,
        to_closed,
        open_to_mixed,
        closed_to_mixed,
        verdict: witness.is_none(),
        witness,
    }
}

/// `(B, C, g: C -> Q*B)` with `B` open-modal and `C` closed-modal.
#[derive(Clone, Debug)]
pub struct GluingData {
    pub open: Presheaf,
    pub closed: Presheaf,
    pub map: PresheafMap,
}

pub fn is_open_modal(q: Subterminal, b: &Presheaf) -> bool {
    let (ob, unit) = apply_open(q, b);
    unit.is_iso(&ob)
}

pub fn is_closed_modal(q: Subterminal, c: &Presheaf) -> bool {
    (0..c.points()).all(|p| !q.contains(p) || c.size(p) == 1)
}

pub fn unglue(x: &Presheaf, q: Subterminal) -> GluingData {
    let (open, to_open) = apply_open(q, x);
    let (closed, _) = apply_closed(q, x);
    let map = apply_closed_map(q, &to_open, x);
    GluingData { open, closed, map }
}

/// The result of gluing, with its projections to both parts.
pub struct Glued {
    pub obj: Presheaf,
    pub to_open: PresheafMap,
    pub to_closed: PresheafMap,
}

/// The pullback of `g` along the unit `B -> Q*B`.
pub fn glue(data: &GluingData, q: Subterminal) -> Result<Glued, SheafError> {
    let poset = data.open.poset();
    if let Some(p) = (0..poset.len()).find(|&p| q.contains(p) && data.closed.size(p) != 1) {
        return Err(SheafError::NotClosedModal(poset.name(p).to_string()));
    }
    let (ob, unit) = apply_open(q, &data.open);
    if !unit.is_iso(&ob) {
        let p = (0..poset.len()).find(|&p| ob.size(p) != data.open.size(p)).unwrap_or(0);
        return Err(SheafError::NotOpenModal(poset.name(p).to_string()));
    }
    let (qb, to_qb) = apply_closed(q, &data.open);
    let map = PresheafMap::new(&data.closed, &qb, data.map.comps().to_vec())?;
    let pb = Pullback::new(&data.open, &data.closed, &to_qb, &map);
    Ok(Glued { obj: pb.obj, to_open: pb.left, to_closed: pb.right })
}

/// `x ≅ glue(unglue(x))` through the canonical comparison map.
pub fn glue_unglue_is_iso(x: &Presheaf, q: Subterminal) -> bool {
    let data = unglue(x, q);
    let Ok(g) = glue(&data, q) else { return false };
    let (_, to_open) = apply_open(q, x);
    let (_, to_closed) = apply_closed(q, x);
    let pb = Pullback::new(&data.open, &data.closed, &apply_closed(q, &data.open).1, &data.map);
    match pb.induced(x, &to_open, &to_closed) {
        Some(cmp) => g.obj == pb.obj && cmp.is_iso(&g.obj),
        None => false,
    }
}

/// `unglue(glue(d)) ≅ d`: the canonical maps to `B` and `C` are isomorphisms
/// and carry the reglued map to `g`.
pub fn unglue_glue_is_iso(data: &GluingData, q: Subterminal) -> Result<bool, SheafError> {
    let g = glue(data, q)?;
    let back = unglue(&g.obj, q);
    let (ob, unit_b) = apply_open(q, &data.open);
    let (qc, unit_c) = apply_closed(q, &data.closed);
    let (Some(inv_b), Some(inv_c)) = (unit_b.inverse(&ob), unit_c.inverse(&qc)) else {
        return Ok(false);
    };
    let phi_b = apply_open_map(q, &g.to_open, &g.obj, &data.open).then(&inv_b);
    let phi_c = apply_closed_map(q, &g.to_closed, &g.obj).then(&inv_c);
    if !phi_b.is_iso(&data.open) || !phi_c.is_iso(&data.closed) {
        return Ok(false);
    }
    let lhs = back.map.then(&apply_closed_map(q, &phi_b, &back.open));
    let rhs = phi_c.then(&data.map);
    Ok(lhs == rhs)
}
