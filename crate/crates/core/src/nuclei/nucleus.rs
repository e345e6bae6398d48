use std::fmt;

use super::frame::Frame;
use super::NucleiError;

/// Exhaustive operations refuse frames larger than this.
pub const MAX_EXHAUSTIVE: usize = 64;

/// Coframe checking visits every subset of nuclei.
pub const MAX_COFRAME_NUCLEI: usize = 16;

/// A Lawvere-Tierney operator on a down-set frame, as a table indexed by
/// frame element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nucleus {
    table: Vec<usize>,
}

/// The first nucleus law that fails, with the elements that witness it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongLength { expected: usize, found: usize },
    OutOfRange { at: usize, image: usize },
    NotInflationary { at: usize },
    NotIdempotent { at: usize },
    NotMeetPreserving { left: usize, right: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { expected, found } => {
                write!(f, "table has {found} entries, frame has {expected}")
            }
            Violation::OutOfRange { at, image } => write!(f, "image {image} of {at} is not in the frame"),
            Violation::NotInflationary { at } => write!(f, "not inflationary at {at}"),
            Violation::NotIdempotent { at } => write!(f, "not idempotent at {at}"),
            Violation::NotMeetPreserving { left, right } => {
                write!(f, "does not preserve the meet of {left} and {right}")
            }
        }
    }
}

pub fn check_nucleus(f: &Frame, table: &[usize]) -> Result<(), Violation> {
    if table.len() != f.len() {
        return Err(Violation::WrongLength { expected: f.len(), found: table.len() });
    }
    if let Some(at) = table.iter().position(|&v| v >= f.len()) {
        return Err(Violation::OutOfRange { at, image: table[at] });
    }
    for p in f.elements() {
        if !f.le(p, table[p]) {
            return Err(Violation::NotInflationary { at: p });
        }
    }
    for p in f.elements() {
        if table[table[p]] != table[p] {
            return Err(Violation::NotIdempotent { at: p });
        }
    }
    for p in f.elements() {
        for q in f.elements() {
            if table[f.meet(p, q)] != f.meet(table[p], table[q]) {
                return Err(Violation::NotMeetPreserving { left: p, right: q });
            }
        }
    }
    Ok(())
}

pub fn is_nucleus(f: &Frame, table: &[usize]) -> bool {
    check_nucleus(f, table).is_ok()
}

/// The other axiomatization: inflationary, idempotent and internally
/// order-preserving, `(a => b) <= (j a => j b)`. Plain monotonicity is not
/// enough on a frame that is not Boolean.
pub fn is_strong_closure(f: &Frame, table: &[usize]) -> bool {
    table.len() == f.len()
        && table.iter().all(|&v| v < f.len())
        && f.elements().all(|p| f.le(p, table[p]) && table[table[p]] == table[p])
        && f.elements().all(|p| f.elements().all(|q| f.le(f.imp(p, q), f.imp(table[p], table[q]))))
}

impl Nucleus {
    pub fn new(f: &Frame, table: Vec<usize>) -> Result<Self, Violation> {
        check_nucleus(f, &table)?;
        Ok(Nucleus { table })
    }

    fn checked(f: &Frame, table: Vec<usize>) -> Self {
        match Nucleus::new(f, table) {
            Ok(n) => n,
            Err(v) => panic!("constructed operator is not a nucleus: {v}"),
        }
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn identity(f: &Frame) -> Self {
        Nucleus { table: f.elements().collect() }
    }

    pub fn top(f: &Frame) -> Self {
        Nucleus { table: vec![f.top(); f.len()] }
    }

    pub fn is_fixed(&self, a: usize) -> bool {
        self.table[a] == a
    }

    /// Fixed points as a bitset over frame elements.
    pub fn fixed_set(&self) -> Vec<bool> {
        (0..self.table.len()).map(|a| self.is_fixed(a)).collect()
    }

    /// `self <= other` pointwise.
    pub fn pointwise_le(&self, f: &Frame, other: &Nucleus) -> bool {
        f.elements().all(|a| f.le(self.table[a], other.table[a]))
    }

    /// The modality order: every `self`-closed element is `other`-closed.
    pub fn modal_le(&self, other: &Nucleus) -> bool {
        (0..self.table.len()).all(|a| !self.is_fixed(a) || other.is_fixed(a))
    }

    /// `{[]: [a], [a]: [a], ...}`
    pub fn show(&self, f: &Frame) -> String {
        let entries: Vec<String> = f.elements().map(|a| format!("{}: {}", f.show(a), f.show(self.table[a]))).collect();
        format!("{{{}}}", entries.join(", "))
    }
}

/// The open modality `q |-> u => q`.
pub fn mk_open(f: &Frame, u: usize) -> Nucleus {
    Nucleus::checked(f, f.elements().map(|q| f.imp(u, q)).collect())
}

/// The closed modality `q |-> u \/ q`.
pub fn mk_closed(f: &Frame, u: usize) -> Nucleus {
    Nucleus::checked(f, f.elements().map(|q| f.join(u, q)).collect())
}

/// Double negation.
pub fn mk_dneg(f: &Frame) -> Nucleus {
    Nucleus::checked(f, f.elements().map(|q| f.neg(f.neg(q))).collect())
}

/// Every nucleus on `f`, sorted lexicographically by table.
///
/// A nucleus is determined by its fixed points, which form a subset closed
/// under meets and under `a => -` for every `a`. These closed subsets are
/// enumerated with Ganter's NextClosure; the nucleus sends `a` to the least
/// fixed point above it.
pub fn enumerate_nuclei(f: &Frame) -> Result<Vec<Nucleus>, NucleiError> {
    let n = f.len();
    if n > MAX_EXHAUSTIVE {
        return Err(NucleiError::TooLarge { what: "frame", size: n, limit: MAX_EXHAUSTIVE });
    }
    let closure = |s: u64| -> u64 {
        let mut s = s | 1 << f.top();
        loop {
            let mut next = s;
            for x in super::poset::members(s) {
                for y in super::poset::members(s) {
                    next |= 1 << f.meet(x, y);
                }
                for a in f.elements() {
                    next |= 1 << f.imp(a, x);
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    };
    let low = |i: usize| if i == 0 { 0 } else { u64::MAX >> (64 - i) };
    let mut out = Vec::new();
    let mut a = closure(0);
    loop {
        out.push(nucleus_of_fixed(f, a));
        let mut advanced = false;
        for i in (0..n).rev() {
            if a >> i & 1 == 1 {
                continue;
            }
            let b = closure((a & low(i)) | 1 << i);
            if b & low(i) == a & low(i) {
                a = b;
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    out.sort();
    Ok(out)
}

fn nucleus_of_fixed(f: &Frame, fixed: u64) -> Nucleus {
    let table = f
        .elements()
        .map(|a| super::poset::members(fixed).filter(|&s| f.le(a, s)).fold(f.top(), |m, s| f.meet(m, s)))
        .collect();
    Nucleus::checked(f, table)
}

/// The fixed points of a nucleus with the operations they inherit.
pub struct FixedPoints<'f> {
    frame: &'f Frame,
    nucleus: Nucleus,
    elements: Vec<usize>,
}

pub fn fixed_points<'f>(f: &'f Frame, j: &Nucleus) -> FixedPoints<'f> {
    let elements = f.elements().filter(|&a| j.is_fixed(a)).collect();
    FixedPoints { frame: f, nucleus: j.clone(), elements }
}

impl FixedPoints<'_> {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.nucleus.is_fixed(a)
    }

    pub fn bottom(&self) -> usize {
        self.nucleus.apply(self.frame.bottom())
    }

    pub fn top(&self) -> usize {
        self.frame.top()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.frame.meet(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.nucleus.apply(self.frame.join(a, b))
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.frame.imp(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.imp(a, self.bottom())
    }

    /// All operations stay inside, and `c /\ a <= b` iff `c <= a => b`.
    pub fn is_heyting(&self) -> bool {
        let f = self.frame;
        let closed = self.elements.iter().all(|&a| {
            self.elements.iter().all(|&b| {
                self.contains(self.meet(a, b)) && self.contains(self.join(a, b)) && self.contains(self.imp(a, b))
            })
        });
        closed
            && self.contains(self.bottom())
            && self.contains(self.top())
            && self.elements.iter().all(|&a| {
                self.elements
                    .iter()
                    .all(|&b| self.elements.iter().all(|&c| f.le(self.meet(c, a), b) == f.le(c, self.imp(a, b))))
            })
    }

    pub fn is_boolean(&self) -> bool {
        self.elements.iter().all(|&a| self.join(a, self.neg(a)) == self.top())
    }
}

/// The meet of two modalities: the least nucleus above both pointwise, whose
/// closed elements are those closed for both.
pub fn modality_meet(f: &Frame, j: &Nucleus, k: &Nucleus) -> Nucleus {
    let table: Vec<usize> = f
        .elements()
        .map(|mut q| loop {
            let next = k.apply(j.apply(q));
            if next == q {
                break q;
            }
            q = next;
        })
        .collect();
    let m = Nucleus::checked(f, table);
    debug_assert!(f.elements().all(|a| m.is_fixed(a) == (j.is_fixed(a) && k.is_fixed(a))));
    m
}

/// The join of two modalities: the pointwise meet of the operators.
pub fn modality_join(f: &Frame, j: &Nucleus, k: &Nucleus) -> Nucleus {
    Nucleus::checked(f, f.elements().map(|q| f.meet(j.apply(q), k.apply(q))).collect())
}

/// Meet of a family; the empty meet is the identity.
pub fn modality_meet_all<'a>(f: &Frame, ks: impl IntoIterator<Item = &'a Nucleus>) -> Nucleus {
    ks.into_iter().fold(Nucleus::identity(f), |m, k| modality_meet(f, &m, k))
}

/// A failure of `j \/ /\K = /\{j \/ k : k in K}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoframeWitness {
    pub j: Nucleus,
    pub family: Vec<Nucleus>,
}

/// Checks that joins distribute over arbitrary meets of nuclei on `f`.
pub fn coframe_check(f: &Frame) -> Result<Option<CoframeWitness>, NucleiError> {
    let all = enumerate_nuclei(f)?;
    if all.len() > MAX_COFRAME_NUCLEI {
        return Err(NucleiError::TooLarge { what: "nucleus lattice", size: all.len(), limit: MAX_COFRAME_NUCLEI });
    }
    for j in &all {
        // depth-first over subsets, carrying both sides
        let mut stack = vec![(0usize, Vec::new(), Nucleus::identity(f), Nucleus::identity(f))];
        while let Some((next, members, meet_k, meet_jk)) = stack.pop() {
            if modality_join(f, j, &meet_k) != meet_jk {
                let family = members.iter().map(|&i: &usize| all[i].clone()).collect();
                return Ok(Some(CoframeWitness { j: j.clone(), family }));
            }
            for i in next..all.len() {
                let mut m = members.clone();
                m.push(i);
                let k = &all[i];
                stack.push((
                    i + 1,
                    m,
                    modality_meet(f, &meet_k, k),
                    modality_meet(f, &meet_jk, &modality_join(f, j, k)),
                ));
            }
        }
    }
    Ok(None)
}

/// `a = (q \/ a) /\ (q => a)` for every `a`; returns the first failing `a`.
pub fn fracture_taut_witness(f: &Frame, q: usize) -> Option<usize> {
    f.elements().find(|&a| f.meet(f.join(q, a), f.imp(q, a)) != a)
}

pub fn fracture_taut(f: &Frame, q: usize) -> bool {
    fracture_taut_witness(f, q).is_none()
}
