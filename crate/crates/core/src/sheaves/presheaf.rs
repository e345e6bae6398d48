use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::nuclei::{members, FinitePoset};

use super::SheafError;

/// Marks a position outside the sieve in a family.
pub const NONE: usize = usize::MAX;

/// A presheaf of finite sets on a finite poset, restricting downward: for
/// `q <= p` there is a map `X(p) -> X(q)`. Elements of `X(p)` are `0..size(p)`.
#[derive(Clone)]
pub struct Presheaf {
    poset: Arc<FinitePoset>,
    sizes: Vec<usize>,
    res: Vec<Vec<usize>>,
    labels: Option<Vec<Vec<String>>>,
}

impl PartialEq for Presheaf {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset && self.sizes == other.sizes && self.res == other.res
    }
}

impl Eq for Presheaf {}

impl fmt::Debug for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.poset.len();
        let mut m = f.debug_map();
        for p in 0..n {
            m.entry(&self.poset.name(p), &self.labels(p));
        }
        m.finish()?;
        for p in 0..n {
            for q in 0..n {
                if p != q && self.poset.leq(q, p) && self.sizes[p] > 0 {
                    write!(f, " {}>{}:{:?}", self.poset.name(p), self.poset.name(q), self.res[p * n + q])?;
                }
            }
        }
        Ok(())
    }
}

impl Presheaf {
    /// Builds and validates a presheaf from a restriction function, called
    /// for every `q <= p` and `x < size(p)`.
    pub fn new(
        poset: Arc<FinitePoset>,
        sizes: Vec<usize>,
        res: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self, SheafError> {
        let n = poset.len();
        if sizes.len() != n {
            return Err(SheafError::Invalid(format!("{} stalks for {n} points", sizes.len())));
        }
        let mut table = vec![Vec::new(); n * n];
        for p in 0..n {
            for q in 0..n {
                if poset.leq(q, p) {
                    table[p * n + q] = (0..sizes[p]).map(|x| res(p, q, x)).collect();
                }
            }
        }
        let x = Presheaf { poset, sizes, res: table, labels: None };
        x.validate()?;
        Ok(x)
    }

    /// Restrictions given along covers `(upper, lower)`; the rest are
    /// composites, and must not depend on the path taken.
    pub fn from_covers(
        poset: Arc<FinitePoset>,
        sizes: Vec<usize>,
        maps: &HashMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self, SheafError> {
        let n = poset.len();
        if sizes.len() != n {
            return Err(SheafError::Invalid(format!("{} stalks for {n} points", sizes.len())));
        }
        let covers = poset.covers();
        for &(lo, hi) in &covers {
            match maps.get(&(hi, lo)) {
                None => {
                    return Err(SheafError::Invalid(format!(
                        "missing restriction {}>{}",
                        poset.name(hi),
                        poset.name(lo)
                    )))
                }
                Some(m) if m.len() != sizes[hi] || m.iter().any(|&y| y >= sizes[lo]) => {
                    return Err(SheafError::Invalid(format!(
                        "restriction {}>{} is not a function between the stalks",
                        poset.name(hi),
                        poset.name(lo)
                    )))
                }
                _ => {}
            }
        }
        if let Some(&(hi, lo)) = maps.keys().find(|&&(hi, lo)| !covers.contains(&(lo, hi))) {
            return Err(SheafError::Invalid(format!("{}>{} is not a covering pair", poset.name(hi), poset.name(lo))));
        }
        let mut table = vec![Vec::new(); n * n];
        for p in poset.linear_extension() {
            table[p * n + p] = (0..sizes[p]).collect();
            for q in 0..n {
                if q == p || !poset.leq(q, p) {
                    continue;
                }
                // through a lower cover of p lying above q
                let &(mid, _) = covers.iter().find(|&&(lo, hi)| hi == p && poset.leq(q, lo)).unwrap();
                let step = &maps[&(p, mid)];
                table[p * n + q] = step.iter().map(|&y| table[mid * n + q][y]).collect();
            }
        }
        let x = Presheaf { poset, sizes, res: table, labels: None };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<(), SheafError> {
        let n = self.poset.len();
        let name = |p: usize| self.poset.name(p).to_string();
        for p in 0..n {
            if (0..self.sizes[p]).any(|x| self.res(p, p, x) != x) {
                return Err(SheafError::Invalid(format!("restriction {}>{} is not the identity", name(p), name(p))));
            }
            for q in 0..n {
                if !self.poset.leq(q, p) {
                    continue;
                }
                if self.res[p * n + q].iter().any(|&y| y >= self.sizes[q]) {
                    return Err(SheafError::Invalid(format!("restriction {}>{} leaves the stalk", name(p), name(q))));
                }
                for r in 0..n {
                    if self.poset.leq(r, q)
                        && (0..self.sizes[p]).any(|x| self.res(q, r, self.res(p, q, x)) != self.res(p, r, x))
                    {
                        return Err(SheafError::Invalid(format!(
                            "restrictions {}>{}>{} do not compose",
                            name(p),
                            name(q),
                            name(r)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self, SheafError> {
        if labels.len() != self.sizes.len() || labels.iter().zip(&self.sizes).any(|(l, &s)| l.len() != s) {
            return Err(SheafError::Invalid("labels do not match the stalks".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn terminal(poset: Arc<FinitePoset>) -> Self {
        let n = poset.len();
        Presheaf::new(poset, vec![1; n], |_, _, _| 0).unwrap()
    }

    pub fn empty(poset: Arc<FinitePoset>) -> Self {
        let n = poset.len();
        Presheaf::new(poset, vec![0; n], |_, _, _| 0).unwrap()
    }

    /// The subterminal presheaf of a down-set.
    pub fn subterminal(poset: Arc<FinitePoset>, q: u64) -> Self {
        let sizes = (0..poset.len()).map(|p| (q >> p & 1) as usize).collect();
        Presheaf::new(poset, sizes, |_, _, _| 0).unwrap()
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn points(&self) -> usize {
        self.poset.len()
    }

    pub fn size(&self, p: usize) -> usize {
        self.sizes[p]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn res(&self, p: usize, q: usize, x: usize) -> usize {
        self.res[p * self.poset.len() + q][x]
    }

    pub fn labels(&self, p: usize) -> Vec<String> {
        match &self.labels {
            Some(l) => l[p].clone(),
            None => (0..self.sizes[p]).map(|x| x.to_string()).collect(),
        }
    }

    /// Compatible families over the down-set `s`, as vectors indexed by
    /// point with `NONE` outside `s`, in lexicographic order.
    pub fn families(&self, s: u64) -> Vec<Vec<usize>> {
        let order: Vec<usize> = self.poset.linear_extension().into_iter().filter(|&q| s >> q & 1 == 1).collect();
        let mut out = Vec::new();
        let mut fam = vec![NONE; self.points()];
        self.extend_family(&order, 0, &mut fam, &mut out);
        out.sort();
        out
    }

    fn extend_family(&self, order: &[usize], i: usize, fam: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == order.len() {
            out.push(fam.clone());
            return;
        }
        let q = order[i];
        for x in 0..self.sizes[q] {
            let ok = order[..i].iter().all(|&r| !self.poset.leq(r, q) || self.res(q, r, x) == fam[r]);
            if ok {
                fam[q] = x;
                self.extend_family(order, i + 1, fam, out);
            }
        }
        fam[q] = NONE;
    }

    /// The family of restrictions of `x` to the points of `s`.
    pub fn restrictions(&self, p: usize, x: usize, s: u64) -> Vec<usize> {
        (0..self.points()).map(|q| if s >> q & 1 == 1 { self.res(p, q, x) } else { NONE }).collect()
    }

    /// Natural maps to `y`, by backtracking over components.
    pub fn homs(&self, y: &Presheaf) -> Vec<PresheafMap> {
        self.maps_to(y, false)
    }

    /// Some natural isomorphism to `y`, if one exists.
    pub fn iso(&self, y: &Presheaf) -> Option<PresheafMap> {
        if self.poset != y.poset || self.sizes != y.sizes {
            return None;
        }
        let mut found = None;
        let order = self.poset.linear_extension();
        let mut comps: Vec<Vec<usize>> = self.sizes.iter().map(|&s| vec![NONE; s]).collect();
        self.search(y, true, &order, 0, 0, &mut comps, &mut |m| {
            found = Some(m);
            false
        });
        found
    }

    pub fn isomorphic(&self, y: &Presheaf) -> bool {
        self.iso(y).is_some()
    }

    fn maps_to(&self, y: &Presheaf, bijective: bool) -> Vec<PresheafMap> {
        let mut out = Vec::new();
        let order = self.poset.linear_extension();
        let mut comps: Vec<Vec<usize>> = self.sizes.iter().map(|&s| vec![NONE; s]).collect();
        self.search(y, bijective, &order, 0, 0, &mut comps, &mut |m| {
            out.push(m);
            true
        });
        out
    }

    /// Assigns `comps[order[i]][x]` and onward; `emit` returns false to stop.
    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        y: &Presheaf,
        bijective: bool,
        order: &[usize],
        i: usize,
        x: usize,
        comps: &mut Vec<Vec<usize>>,
        emit: &mut dyn FnMut(PresheafMap) -> bool,
    ) -> bool {
        if i == order.len() {
            return emit(PresheafMap { comps: comps.clone() });
        }
        let p = order[i];
        if x == self.sizes[p] {
            return self.search(y, bijective, order, i + 1, 0, comps, emit);
        }
        for v in 0..y.sizes[p] {
            if bijective && comps[p][..x].contains(&v) {
                continue;
            }
            let natural =
                order[..i].iter().all(|&q| !self.poset.leq(q, p) || comps[q][self.res(p, q, x)] == y.res(p, q, v));
            if natural {
                comps[p][x] = v;
                if !self.search(y, bijective, order, i, x + 1, comps, emit) {
                    comps[p][x] = NONE;
                    return false;
                }
            }
        }
        comps[p][x] = NONE;
        true
    }

    /// Every presheaf with stalks of at most `max_stalk` elements, one per
    /// isomorphism class, in a fixed order.
    pub fn enumerate(poset: &Arc<FinitePoset>, max_stalk: usize) -> Vec<Presheaf> {
        let n = poset.len();
        let covers = poset.covers();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut sizes = vec![0; n];
        loop {
            // every choice of map along each cover
            let domains: Vec<(usize, usize)> = covers.iter().map(|&(lo, hi)| (sizes[hi], sizes[lo])).collect();
            let counts: Vec<usize> = domains.iter().map(|&(d, c)| c.pow(d as u32)).collect();
            let total: usize = counts.iter().product();
            for code in 0..total {
                let mut rest = code;
                let mut maps = HashMap::new();
                for (k, &(lo, hi)) in covers.iter().enumerate() {
                    let (d, c) = domains[k];
                    let mut f = rest % counts[k];
                    rest /= counts[k];
                    let mut m = Vec::with_capacity(d);
                    for _ in 0..d {
                        m.push(f % c);
                        f /= c;
                    }
                    maps.insert((hi, lo), m);
                }
                if let Ok(x) = Presheaf::from_covers(poset.clone(), sizes.clone(), &maps) {
                    if seen.insert(x.canonical_key()) {
                        out.push(x);
                    }
                }
            }
            // next size vector
            let mut i = 0;
            while i < n && sizes[i] == max_stalk {
                sizes[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            sizes[i] += 1;
        }
        out
    }

    /// The least relabelling of the restriction tables over all choices of
    /// stalk permutations. Equal keys mean isomorphic presheaves.
    pub fn canonical_key(&self) -> Vec<usize> {
        let n = self.points();
        let perms: Vec<Vec<Vec<usize>>> = self.sizes.iter().map(|&s| crate::nuclei::permutations(s)).collect();
        let mut choice = vec![0; n];
        let mut best: Option<Vec<usize>> = None;
        loop {
            let sigma: Vec<&Vec<usize>> = (0..n).map(|p| &perms[p][choice[p]]).collect();
            let mut key = self.sizes.clone();
            for p in 0..n {
                // inverse of sigma_p, so entry at new label y is old element inv[y]
                let mut inv = vec![0; self.sizes[p]];
                for (x, &y) in sigma[p].iter().enumerate() {
                    inv[y] = x;
                }
                for q in 0..n {
                    if q != p && self.poset.leq(q, p) {
                        key.extend(inv.iter().map(|&x| sigma[q][self.res(p, q, x)]));
                    }
                }
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
            let mut i = 0;
            while i < n && choice[i] + 1 == perms[i].len() {
                choice[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            choice[i] += 1;
        }
        best.unwrap()
    }
}

/// A natural transformation, as one function per point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresheafMap {
    comps: Vec<Vec<usize>>,
}

impl PresheafMap {
    pub fn new(x: &Presheaf, y: &Presheaf, comps: Vec<Vec<usize>>) -> Result<Self, SheafError> {
        if x.poset != y.poset {
            return Err(SheafError::PosetMismatch);
        }
        let n = x.points();
        if comps.len() != n {
            return Err(SheafError::Invalid(format!("{} components for {n} points", comps.len())));
        }
        for p in 0..n {
            if comps[p].len() != x.size(p) || comps[p].iter().any(|&v| v >= y.size(p)) {
                return Err(SheafError::Invalid(format!(
                    "component at {} is not a function between the stalks",
                    x.poset.name(p)
                )));
            }
        }
        for p in 0..n {
            for q in 0..n {
                if !x.poset.leq(q, p) {
                    continue;
                }
                for e in 0..x.size(p) {
                    if comps[q][x.res(p, q, e)] != y.res(p, q, comps[p][e]) {
                        return Err(SheafError::NotNatural {
                            upper: x.poset.name(p).to_string(),
                            lower: x.poset.name(q).to_string(),
                            element: e,
                        });
                    }
                }
            }
        }
        Ok(PresheafMap { comps })
    }

    /// Skips validation; for maps built by the operations in this module.
    pub(crate) fn raw(comps: Vec<Vec<usize>>) -> Self {
        PresheafMap { comps }
    }

    pub fn identity(x: &Presheaf) -> Self {
        PresheafMap { comps: x.sizes.iter().map(|&s| (0..s).collect()).collect() }
    }

    /// The unique map to the terminal presheaf.
    pub fn to_terminal(x: &Presheaf) -> Self {
        PresheafMap { comps: x.sizes.iter().map(|&s| vec![0; s]).collect() }
    }

    pub fn comps(&self) -> &[Vec<usize>] {
        &self.comps
    }

    pub fn at(&self, p: usize, x: usize) -> usize {
        self.comps[p][x]
    }

    /// `other` after `self`.
    pub fn then(&self, other: &PresheafMap) -> PresheafMap {
        PresheafMap {
            comps: self.comps.iter().zip(&other.comps).map(|(f, g)| f.iter().map(|&y| g[y]).collect()).collect(),
        }
    }

    /// Whether every component is a bijection onto a stalk of `target`.
    pub fn is_iso(&self, target: &Presheaf) -> bool {
        self.comps.iter().enumerate().all(|(p, f)| {
            let image: BTreeSet<usize> = f.iter().copied().collect();
            f.len() == target.size(p) && image.len() == f.len()
        })
    }

    pub fn inverse(&self, target: &Presheaf) -> Option<PresheafMap> {
        if !self.is_iso(target) {
            return None;
        }
        Some(PresheafMap {
            comps: self
                .comps
                .iter()
                .map(|f| {
                    let mut g = vec![0; f.len()];
                    for (x, &y) in f.iter().enumerate() {
                        g[y] = x;
                    }
                    g
                })
                .collect(),
        })
    }
}

/// Points of a down-set, as a list.
pub fn points_of(s: u64) -> Vec<usize> {
    members(s).collect()
}
