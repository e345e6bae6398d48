use std::collections::HashMap;

use super::poset::{members, FinitePoset};
use super::NucleiError;

/// Largest frame `downset_frame` will build. The tables are quadratic.
pub const MAX_FRAME: usize = 1024;

/// The frame of down-sets of a finite poset.
///
/// Elements are indices into `carrier`, which is sorted by size and then by
/// bit pattern, so `0` is the empty down-set and `len() - 1` is everything.
#[derive(Clone, Debug)]
pub struct Frame {
    poset: FinitePoset,
    carrier: Vec<u64>,
    index: HashMap<u64, usize>,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
}

pub fn downset_frame(poset: &FinitePoset) -> Result<Frame, NucleiError> {
    let order = poset.linear_extension();
    let mut carrier = Vec::new();
    enumerate_down_sets(poset, &order, 0, 0, &mut carrier)?;
    carrier.sort_by_key(|&s| (s.count_ones(), s));
    let n = carrier.len();
    let index: HashMap<u64, usize> = carrier.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = index[&(carrier[a] & carrier[b])];
            join[a * n + b] = index[&(carrier[a] | carrier[b])];
        }
    }
    // a => b is the union of every c with c /\ a <= b
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let u = carrier.iter().filter(|&&c| c & carrier[a] & !carrier[b] == 0).fold(0, |u, &c| u | c);
            imp[a * n + b] = index[&u];
        }
    }
    Ok(Frame { poset: poset.clone(), carrier, index, meet, join, imp })
}

fn enumerate_down_sets(
    poset: &FinitePoset,
    order: &[usize],
    i: usize,
    cur: u64,
    out: &mut Vec<u64>,
) -> Result<(), NucleiError> {
    if i == order.len() {
        if out.len() == MAX_FRAME {
            return Err(NucleiError::TooLarge { what: "frame", size: MAX_FRAME + 1, limit: MAX_FRAME });
        }
        out.push(cur);
        return Ok(());
    }
    let p = order[i];
    enumerate_down_sets(poset, order, i + 1, cur, out)?;
    let below = poset.down(p) & !(1 << p);
    if below & !cur == 0 {
        enumerate_down_sets(poset, order, i + 1, cur | 1 << p, out)?;
    }
    Ok(())
}

impl Frame {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    /// Never true: the empty down-set is always present.
    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn bits(&self, a: usize) -> u64 {
        self.carrier[a]
    }

    pub fn index_of(&self, bits: u64) -> Option<usize> {
        self.index.get(&bits).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.len() + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.imp(a, self.bottom())
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.carrier[a] & !self.carrier[b] == 0
    }

    /// The down-set `↓p` of a poset element.
    pub fn principal(&self, p: usize) -> usize {
        self.index[&self.poset.down(p)]
    }

    /// Looks up the down-set with the given element names.
    pub fn element(&self, names: &[&str]) -> Result<usize, NucleiError> {
        Ok(self.index[&self.poset.down_set_of(names)?])
    }

    /// `[a,b]`, with element names sorted.
    pub fn show(&self, a: usize) -> String {
        format!("[{}]", self.poset.set_names(self.carrier[a]).join(","))
    }

    /// Checks `c /\ a <= b` iff `c <= a => b` everywhere; returns a failing
    /// triple `(a, b, c)`.
    pub fn adjunction_witness(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.le(self.meet(c, a), b) != self.le(c, self.imp(a, b)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Poset elements whose principal down-set lies in `a`.
    pub fn points(&self, a: usize) -> impl Iterator<Item = usize> {
        members(self.carrier[a])
    }
}
