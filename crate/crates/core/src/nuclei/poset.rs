use std::collections::{BTreeSet, HashMap};

use super::NucleiError;

/// Largest poset we accept: elements are bit positions in a `u64`.
pub const MAX_ELEMENTS: usize = 64;

/// A finite partial order with named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// The reflexive-transitive closure of `covers`, given as `(lower, upper)`
    /// index pairs.
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, NucleiError> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(NucleiError::PosetInvalid(format!("cover ({lo}, {hi}) out of range")));
            }
            leq[lo][hi] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(names, leq)
    }

    /// Covers given by element name.
    pub fn from_named(elements: &[&str], covers: &[(&str, &str)]) -> Result<Self, NucleiError> {
        let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let look =
            |s: &str| index.get(s).copied().ok_or_else(|| NucleiError::PosetInvalid(format!("unknown element `{s}`")));
        let covers =
            covers.iter().map(|(lo, hi)| Ok((look(lo)?, look(hi)?))).collect::<Result<Vec<_>, NucleiError>>()?;
        Self::from_covers(names, &covers)
    }

    /// Validates a full order relation.
    pub fn from_relation(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, NucleiError> {
        let n = names.len();
        if n > MAX_ELEMENTS {
            return Err(NucleiError::TooLarge { what: "poset", size: n, limit: MAX_ELEMENTS });
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(NucleiError::PosetInvalid("relation is not square".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(NucleiError::PosetInvalid("duplicate element names".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(NucleiError::PosetInvalid(format!("`{}` is not below itself", names[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(NucleiError::PosetInvalid(format!(
                        "antisymmetry fails for `{}` and `{}`",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(NucleiError::PosetInvalid(format!(
                            "transitivity fails at `{}` <= `{}` <= `{}`",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        Ok(FinitePoset { names, leq })
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(default_names(n), &covers).unwrap()
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_covers(default_names(n), &[]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// `↓p` as a bitset.
    pub fn down(&self, p: usize) -> u64 {
        (0..self.len()).filter(|&q| self.leq[q][p]).fold(0, |s, q| s | 1 << q)
    }

    pub fn full(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn is_down_set(&self, s: u64) -> bool {
        s & !self.full() == 0 && members(s).all(|p| self.down(p) & !s == 0)
    }

    /// Covering pairs `(lower, upper)` of the order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i][j] && !(0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Elements in an order compatible with `leq` (lower elements first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&p| self.down(p).count_ones());
        order
    }

    /// Names of the elements of `s`, sorted.
    pub fn set_names(&self, s: u64) -> Vec<String> {
        let mut v: Vec<String> = members(s).map(|p| self.names[p].clone()).collect();
        v.sort();
        v
    }

    /// Down-set named by a list of elements; rejects unknown names and sets
    /// that are not down-closed.
    pub fn down_set_of(&self, names: &[&str]) -> Result<u64, NucleiError> {
        let mut s = 0u64;
        for n in names {
            let i = self.index(n).ok_or_else(|| NucleiError::PosetInvalid(format!("unknown element `{n}`")))?;
            s |= 1 << i;
        }
        if !self.is_down_set(s) {
            return Err(NucleiError::NotDownSet(self.set_names(s)));
        }
        Ok(s)
    }

    /// All posets on `n` elements up to isomorphism, in a fixed order.
    pub fn all_up_to_iso(n: usize) -> Vec<FinitePoset> {
        assert!(n <= 6, "poset enumeration is exhaustive; {n} elements is too many");
        // Every finite poset has a labelling where i <= j implies i <= j as
        // integers, so it suffices to pick a strict upper-triangular relation.
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let mut leq = vec![vec![false; n]; n];
            for (i, row) in leq.iter_mut().enumerate() {
                row[i] = true;
            }
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    leq[i][j] = true;
                }
            }
            if !transitive(&leq) {
                continue;
            }
            let canon = perms
                .iter()
                .map(|pi| {
                    let mut code = 0u64;
                    for i in 0..n {
                        for j in 0..n {
                            code = code << 1 | leq[pi[i]][pi[j]] as u64;
                        }
                    }
                    code
                })
                .min()
                .unwrap_or(0);
            if seen.insert(canon) {
                out.push(FinitePoset::from_relation(default_names(n), leq).unwrap());
            }
        }
        out
    }
}

fn transitive(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    (0..n).all(|i| (0..n).all(|j| !leq[i][j] || (0..n).all(|k| !leq[j][k] || leq[i][k])))
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `a`, `b`, `c`, ... for small posets, `p0`, `p1`, ... beyond 26.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| if n <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("p{i}") }).collect()
}

/// Indices of the set bits of `s`, ascending.
pub fn members(s: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s >> i & 1 == 1)
}
