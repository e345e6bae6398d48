//! Exhaustive checks of the modality laws, one per acceptance criterion.
//!
//! Each check enumerates every instance within its guard and compares
//! against an independent computation. Instances are checked in parallel;
//! the reported failure is always the first one in enumeration order.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::corpus;
use crate::kernel::{Kernel, TypeErrorKind};
use crate::nuclei::*;
use crate::sheaves::*;
use crate::syntax::{parse, Term};

/// Size limits for the exhaustive checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Posets for nucleus enumeration and the lattice laws.
    pub nuclei_poset: usize,
    /// Posets for the fracture tautology.
    pub taut_poset: usize,
    /// Posets and stalks for sheafification.
    pub sheaf_poset: usize,
    pub sheaf_stalk: usize,
    /// Posets and stalks for cospans in the lexness probe.
    pub lex_poset: usize,
    pub lex_stalk: usize,
    /// Posets and stalks for factorizations and their competitors.
    pub factor_poset: usize,
    pub factor_stalk: usize,
    /// Stalks for the fracture and gluing suite.
    pub glue_stalk: usize,
}

impl Guards {
    pub const FULL: Guards = Guards {
        nuclei_poset: 3,
        taut_poset: 4,
        sheaf_poset: 3,
        sheaf_stalk: 3,
        lex_poset: 2,
        lex_stalk: 2,
        factor_poset: 2,
        factor_stalk: 2,
        glue_stalk: 3,
    };

    /// The guards for a time budget in seconds. Below the full budget the
    /// most expensive suites shrink.
    pub fn for_budget(seconds: u64) -> Guards {
        let mut g = Guards::FULL;
        if seconds < 60 {
            g.sheaf_stalk = 2;
            g.glue_stalk = 2;
        }
        if seconds < 15 {
            g.sheaf_poset = 2;
            g.taut_poset = 3;
            g.lex_stalk = 1;
            g.factor_stalk = 1;
        }
        g
    }

    /// Human-readable differences from the full guards.
    pub fn shrunken(&self) -> Vec<String> {
        let full = Guards::FULL;
        let pairs = [
            ("nucleus posets", self.nuclei_poset, full.nuclei_poset),
            ("tautology posets", self.taut_poset, full.taut_poset),
            ("sheaf posets", self.sheaf_poset, full.sheaf_poset),
            ("sheaf stalks", self.sheaf_stalk, full.sheaf_stalk),
            ("cospan posets", self.lex_poset, full.lex_poset),
            ("cospan stalks", self.lex_stalk, full.lex_stalk),
            ("factorization posets", self.factor_poset, full.factor_poset),
            ("factorization stalks", self.factor_stalk, full.factor_stalk),
            ("gluing stalks", self.glue_stalk, full.glue_stalk),
        ];
        pairs.iter().filter(|(_, a, b)| a != b).map(|(name, a, b)| format!("{name} <= {a} (full: <= {b})")).collect()
    }
}

impl Default for Guards {
    fn default() -> Self {
        Guards::FULL
    }
}

/// The verdict of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub criterion: u8,
    pub title: &'static str,
    pub passed: bool,
    /// Number of instances examined.
    pub instances: usize,
    pub witness: Option<String>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}. {} [{} instances]", self.criterion, self.title, self.instances)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

pub const TITLES: [&str; 9] = [
    "corpus typechecks; mutations rejected with a located mismatch",
    "jind computes on alpha; normalization idempotent and subject-reducing",
    "nucleus enumeration matches brute force",
    "modality lattice laws",
    "fracture tautology",
    "sheafification",
    "lexness",
    "factorization",
    "fracture and gluing",
];

/// Runs the given criteria (numbered from 1) in parallel; results come back
/// in the order asked.
pub fn run(criteria: &[u8], guards: &Guards) -> Vec<Outcome> {
    criteria.par_iter().map(|&c| run_one(c, guards)).collect()
}

pub fn run_one(criterion: u8, g: &Guards) -> Outcome {
    let (instances, witness) = match criterion {
        1 => corpus_checks(),
        2 => judgmental_computation(),
        3 => nucleus_enumeration(g),
        4 => lattice_laws(g),
        5 => fracture_tautology(g),
        6 => sheafification(g),
        7 => lexness(g),
        8 => factorization(g),
        9 => gluing(g),
        _ => panic!("no criterion {criterion}"),
    };
    Outcome { criterion, title: TITLES[criterion as usize - 1], passed: witness.is_none(), instances, witness }
}

type Verdict = (usize, Option<String>);

/// Counts the instances and keeps the first failure.
fn collect(results: Vec<Verdict>) -> Verdict {
    let n = results.iter().map(|r| r.0).sum();
    (n, results.into_iter().find_map(|r| r.1))
}

fn posets(max: usize) -> Vec<Arc<FinitePoset>> {
    (0..=max).flat_map(FinitePoset::all_up_to_iso).map(Arc::new).collect()
}

fn describe(p: &FinitePoset) -> String {
    let covers: Vec<String> = p.covers().iter().map(|&(lo, hi)| format!("{}<{}", p.name(lo), p.name(hi))).collect();
    format!("poset {{{}}} [{}]", p.names().join(","), covers.join(","))
}

fn corpus_checks() -> Verdict {
    let mut n = 0;
    for (name, text) in corpus::FILES {
        n += 1;
        let file = match parse(text) {
            Ok(f) => f,
            Err(e) => return (n, Some(format!("{name}: {e}"))),
        };
        if let Some(f) = Kernel::new().check_file(&file).error {
            return (n, Some(format!("{name}: `{}` at {}:{}: {}", f.name, f.line, f.col, f.error)));
        }
    }
    for (name, def, from, to) in corpus::MUTATIONS {
        n += 1;
        let Some(text) = corpus::mutated(name, from, to) else {
            return (n, Some(format!("{name}: mutation site not unique")));
        };
        let report = Kernel::new().check_file(&parse(&text).expect("mutations keep the syntax"));
        let line = text[..text.find(&format!("def {def} ")).unwrap()].lines().count() + 1;
        match report.error {
            Some(f)
                if f.name == def && f.line == line && matches!(f.error.root().kind, TypeErrorKind::Mismatch { .. }) => {
            }
            Some(f) => return (n, Some(format!("{name}: mutation of `{def}` failed as `{}`: {}", f.name, f.error))),
            None => return (n, Some(format!("{name}: mutation of `{def}` accepted"))),
        }
    }
    (n, None)
}

fn judgmental_computation() -> Verdict {
    let mut n = 0;
    for (name, text) in corpus::FILES {
        let file = parse(text).expect("corpus parses");
        let mut k = Kernel::new();
        for def in &file.defs {
            let instances = match k.define(def) {
                Ok(i) => i,
                Err(e) => return (n, Some(format!("{name}: `{}`: {e}", def.name))),
            };
            for inst in instances {
                n += 1;
                if !inst.holds || !alpha_rule_by_terms(&k, &inst) {
                    return (n, Some(format!("{name}: jind in `{}` does not compute on alpha", def.name)));
                }
            }
            let ty = k.type_of(&def.name).unwrap().clone();
            let nf = k.normal_form(&def.name).unwrap();
            let ctx = crate::kernel::Context::empty();
            n += 1;
            let reduces = k.check(&ctx, &nf, &ty).is_ok();
            let idempotent = k.normalize(&ctx, &nf, &ty).ok().as_ref() == Some(&nf);
            if !reduces || !idempotent {
                return (n, Some(format!("{name}: normal form of `{}` is not stable", def.name)));
            }
        }
    }
    if n == 0 {
        return (0, Some("no definitions".into()));
    }
    (n, None)
}

/// `jind(P, N, R, S, alpha(x)) ≡ N x` through the term-level interface,
/// under a fresh `x : X`.
fn alpha_rule_by_terms(k: &Kernel, inst: &crate::kernel::JIndInstance) -> bool {
    let Ok(ctx) = k.context(&inst.context) else { return false };
    let Term::JType(.., base) = &inst.scrutinee_ty else { return false };
    let Ok(ctx) = k.extend(&ctx, base) else { return false };
    let up = |t: &Term| t.shift(1, 0);
    let jt = up(&inst.scrutinee_ty);
    let point = Term::ann(Term::jalpha(Term::Var(0)), jt.clone());
    let motive = Term::ann(up(&inst.motive), Term::arrow(jt.clone(), Term::Type));
    let lhs = Term::jind(motive.clone(), up(&inst.alpha), up(&inst.ext), up(&inst.isext), point.clone());
    let n_ty = Term::pi(up(base), Term::app(motive.shift(1, 0), Term::ann(Term::jalpha(Term::Var(0)), jt.shift(1, 0))));
    let rhs = Term::app(Term::ann(up(&inst.alpha), n_ty), Term::Var(0));
    let ty = Term::app(motive, point);
    k.defeq(&ctx, &lhs, &rhs, &ty).unwrap_or(false)
}

/// Every self-map of the carrier that satisfies the nucleus laws, checked
/// directly on bitsets.
pub fn brute_force_nuclei(f: &Frame) -> Vec<Vec<usize>> {
    let n = f.len();
    let bits: Vec<u64> = f.elements().map(|a| f.bits(a)).collect();
    let at = |b: u64| f.index_of(b).unwrap();
    let ok = |t: &[usize]| {
        let j = |b: u64| bits[t[at(b)]];
        bits.iter().all(|&p| p & !j(p) == 0)
            && bits.iter().all(|&p| j(j(p)) == j(p))
            && bits.iter().all(|&p| bits.iter().all(|&q| j(p & q) == j(p) & j(q)))
    };
    let mut out = Vec::new();
    let mut t = vec![0; n];
    loop {
        if ok(&t) {
            out.push(t.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

fn nucleus_enumeration(g: &Guards) -> Verdict {
    let mut results: Vec<Verdict> = posets(g.nuclei_poset)
        .par_iter()
        .map(|p| {
            let f = downset_frame(p).unwrap();
            let got: Vec<Vec<usize>> = match enumerate_nuclei(&f) {
                Ok(ns) => ns.iter().map(|j| j.table().to_vec()).collect(),
                Err(e) => return (1, Some(format!("{}: {e}", describe(p)))),
            };
            if got != brute_force_nuclei(&f) {
                return (1, Some(format!("{}: enumeration differs from brute force", describe(p))));
            }
            (1, None)
        })
        .collect();
    // the 3-chain: identity, open and closed at the middle, and top
    let f = downset_frame(&FinitePoset::chain(2)).unwrap();
    let m = f.element(&["a"]).unwrap();
    let expected = vec![Nucleus::identity(&f), mk_open(&f, m), mk_closed(&f, m), Nucleus::top(&f)];
    let chain_ok = enumerate_nuclei(&f).ok() == Some(expected) && mk_dneg(&f) == mk_open(&f, m);
    results.push((1, (!chain_ok).then(|| "3-chain nuclei are not {id, open, closed, top}".to_string())));
    collect(results)
}

fn lattice_laws(g: &Guards) -> Verdict {
    let results: Vec<Verdict> = posets(g.nuclei_poset)
        .par_iter()
        .map(|p| {
            let f = downset_frame(p).unwrap();
            let fail = |what: &str, a: usize, b: usize| {
                Some(format!("{}: {what} at {} and {}", describe(p), f.show(a), f.show(b)))
            };
            let mut n = 0;
            for a in f.elements() {
                n += 1;
                if modality_join(&f, &mk_open(&f, a), &mk_closed(&f, a)) != Nucleus::identity(&f) {
                    return (n, fail("open join closed is not the identity", a, a));
                }
                for b in f.elements() {
                    n += 1;
                    let (oa, ob, ca, cb) = (mk_open(&f, a), mk_open(&f, b), mk_closed(&f, a), mk_closed(&f, b));
                    if modality_meet(&f, &oa, &ob) != mk_open(&f, f.meet(a, b)) {
                        return (n, fail("meet of open modalities", a, b));
                    }
                    if modality_join(&f, &oa, &ob) != mk_open(&f, f.join(a, b)) {
                        return (n, fail("join of open modalities", a, b));
                    }
                    if modality_meet(&f, &ca, &cb) != mk_closed(&f, f.join(a, b)) {
                        return (n, fail("meet of closed modalities", a, b));
                    }
                    if modality_join(&f, &ca, &cb) != mk_closed(&f, f.meet(a, b)) {
                        return (n, fail("join of closed modalities", a, b));
                    }
                }
            }
            n += 1;
            match coframe_check(&f) {
                Ok(None) => (n, None),
                Ok(Some(w)) => (n, Some(format!("{}: coframe law fails at {}", describe(p), w.j.show(&f)))),
                Err(e) => (n, Some(format!("{}: {e}", describe(p)))),
            }
        })
        .collect();
    collect(results)
}

fn fracture_tautology(g: &Guards) -> Verdict {
    let results: Vec<Verdict> = posets(g.taut_poset)
        .par_iter()
        .map(|p| {
            let f = downset_frame(p).unwrap();
            for q in f.elements() {
                // recomputed on bitsets: a = (q ∪ a) ∩ (q ⇒ a)
                let imp =
                    |a: u64, b: u64| f.elements().map(|c| f.bits(c)).filter(|c| c & a & !b == 0).fold(0, |u, c| u | c);
                for a in f.elements() {
                    let (qb, ab) = (f.bits(q), f.bits(a));
                    if (qb | ab) & imp(qb, ab) != ab || !fracture_taut(&f, q) {
                        return (
                            f.len(),
                            Some(format!("{}: fails at q = {}, a = {}", describe(p), f.show(q), f.show(a))),
                        );
                    }
                }
            }
            (f.len(), None)
        })
        .collect();
    collect(results)
}

/// Maps out of `sx` correspond to maps out of `x` under precomposition
/// with the unit.
fn universal(x: &Presheaf, sx: &Presheaf, unit: &PresheafMap, s: &Presheaf) -> bool {
    let mut composites: Vec<PresheafMap> = sx.homs(s).iter().map(|k| unit.then(k)).collect();
    let total = composites.len();
    composites.sort();
    composites.dedup();
    total == composites.len() && total == x.homs(s).len()
}

fn sheafification(g: &Guards) -> Verdict {
    let mut cases = Vec::new();
    for p in posets(g.sheaf_poset) {
        let f = Arc::new(downset_frame(&p).unwrap());
        let xs = Arc::new(Presheaf::enumerate(&p, g.sheaf_stalk));
        for j in enumerate_nuclei(&f).unwrap() {
            cases.push((p.clone(), f.clone(), j, xs.clone()));
        }
    }
    let results: Vec<Verdict> = cases
        .par_iter()
        .map(|(p, f, j, xs)| {
            let top = Topology::new(f, j);
            let ctx = || format!("{} with nucleus {}", describe(p), j.show(f));
            let sheaves: Vec<&Presheaf> = xs.iter().filter(|x| is_sheaf(x, top)).collect();
            let mut n = 0;
            for x in xs.iter() {
                n += 1;
                let (sx, unit) = sheafify(x, top);
                if !is_sheaf(&sx, top) {
                    return (n, Some(format!("{}: sheafification of {x:?} is not a sheaf", ctx())));
                }
                let (ssx, unit2) = sheafify(&sx, top);
                if !unit2.is_iso(&ssx) || !ssx.isomorphic(&sx) {
                    return (n, Some(format!("{}: sheafification of {x:?} is not idempotent", ctx())));
                }
                if is_sheaf(x, top) && !unit.is_iso(&sx) {
                    return (n, Some(format!("{}: unit at the sheaf {x:?} is not invertible", ctx())));
                }
                for s in &sheaves {
                    if !universal(x, &sx, &unit, s) {
                        return (n, Some(format!("{}: universal property fails for {x:?} -> {s:?}", ctx())));
                    }
                }
            }
            for u in f.elements() {
                n += 1;
                let (sq, _) = sheafify(&Presheaf::subterminal(p.clone(), f.bits(u)), top);
                if sq != Presheaf::subterminal(p.clone(), f.bits(j.apply(u))) {
                    return (n, Some(format!("{}: sheafification of {} is not j of it", ctx(), f.show(u))));
                }
            }
            (n, None)
        })
        .collect();
    collect(results)
}

fn lexness(g: &Guards) -> Verdict {
    let mut cases = Vec::new();
    for p in posets(g.lex_poset) {
        let f = Arc::new(downset_frame(&p).unwrap());
        let xs = Presheaf::enumerate(&p, g.lex_stalk);
        let mut cospans = Vec::new();
        for d in &xs {
            for b in &xs {
                for fb in b.homs(d) {
                    for c in &xs {
                        for gc in c.homs(d) {
                            cospans.push(Cospan { b: b.clone(), c: c.clone(), d: d.clone(), f: fb.clone(), g: gc });
                        }
                    }
                }
            }
        }
        let cospans = Arc::new(cospans);
        for j in enumerate_nuclei(&f).unwrap() {
            cases.push((p.clone(), f.clone(), j, cospans.clone()));
        }
    }
    let mut results: Vec<Verdict> = cases
        .par_iter()
        .map(|(p, f, j, cospans)| {
            let top = Topology::new(f, j);
            for (i, cs) in cospans.iter().enumerate() {
                if let Some(at) = lex_witness(Reflector::Sheafify(top), cs) {
                    return (
                        i + 1,
                        Some(format!(
                            "{} with nucleus {}: sheafification does not preserve the pullback of {:?} -> {:?} <- {:?} at {}",
                            describe(p),
                            j.show(f),
                            cs.b,
                            cs.d,
                            cs.c,
                            p.name(at)
                        )),
                    );
                }
            }
            (cospans.len(), None)
        })
        .collect();
    // support is not lex: 1 -> 2 <- 1 hitting different points
    let pt = Arc::new(FinitePoset::antichain(1));
    let one = Presheaf::terminal(pt.clone());
    let two = Presheaf::new(pt, vec![2], |_, _, x| x).unwrap();
    let hit = |v: usize| PresheafMap::new(&one, &two, vec![vec![v]]).unwrap();
    let (f0, f1) = (hit(0), hit(1));
    let cs = Cospan { b: one.clone(), c: one.clone(), d: two, f: f0, g: f1 };
    let supp_fails = !lex_probe(Reflector::Support, &cs);
    results.push((1, (!supp_fails).then(|| "support preserved the pullback 1 -> 2 <- 1".to_string())));
    collect(results)
}

fn factorization(g: &Guards) -> Verdict {
    let mut cases = Vec::new();
    for p in posets(g.factor_poset) {
        let f = Arc::new(downset_frame(&p).unwrap());
        let xs = Arc::new(Presheaf::enumerate(&p, g.factor_stalk));
        for j in enumerate_nuclei(&f).unwrap() {
            cases.push((p.clone(), f.clone(), j, xs.clone()));
        }
    }
    let results: Vec<Verdict> = cases
        .par_iter()
        .map(|(p, f, j, xs)| {
            let top = Topology::new(f, j);
            let mut n = 0;
            for x in xs.iter() {
                for y in xs.iter() {
                    for h in x.homs(y) {
                        n += 1;
                        let ctx = || format!("{} with nucleus {}, map {x:?} -> {y:?}", describe(p), j.show(f));
                        let fac = factorize(&h, x, y, top);
                        if let Err(e) = fac.verify(&h, x, y, top) {
                            return (n, Some(format!("{}: {e}", ctx())));
                        }
                        // every competitor is isomorphic under x and over y
                        for z in xs.iter() {
                            for l in x.homs(z) {
                                for r in z.homs(y) {
                                    if verify_factorization(z, &l, &r, &h, x, y, top).is_err() {
                                        continue;
                                    }
                                    let iso = z.homs(&fac.z).into_iter().any(|phi| {
                                        phi.is_iso(&fac.z) && l.then(&phi) == fac.left && phi.then(&fac.right) == r
                                    });
                                    if !iso {
                                        return (n, Some(format!("{}: a second factorization through {z:?}", ctx())));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            (n, None)
        })
        .collect();
    collect(results)
}

fn gluing(g: &Guards) -> Verdict {
    let mut shapes = vec![Arc::new(FinitePoset::chain(2))];
    shapes.extend(FinitePoset::all_up_to_iso(3).into_iter().map(Arc::new));
    let mut cases = Vec::new();
    for p in shapes {
        for x in Presheaf::enumerate(&p, g.glue_stalk) {
            for bits in 0..=p.full() {
                if let Ok(q) = Subterminal::new(&p, bits) {
                    cases.push((p.clone(), x.clone(), q));
                }
            }
        }
    }
    let results: Vec<Verdict> = cases
        .par_iter()
        .map(|(p, x, q)| {
            let ctx = || format!("{}, Q = {:?}, X = {x:?}", describe(p), p.set_names(q.bits()));
            let report = fracture_check(*q, x);
            if !report.verdict {
                return (1, Some(format!("{}: fracture square is not a pullback {:?}", ctx(), report.witness)));
            }
            if !glue_unglue_is_iso(x, *q) {
                return (1, Some(format!("{}: glue(unglue(X)) is not X", ctx())));
            }
            match unglue_glue_is_iso(&unglue(x, *q), *q) {
                Ok(true) => (1, None),
                Ok(false) => (1, Some(format!("{}: unglue(glue(d)) is not d", ctx()))),
                Err(e) => (1, Some(format!("{}: {e}", ctx()))),
            }
        })
        .collect();
    collect(results)
}
