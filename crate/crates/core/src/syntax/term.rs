//! Abstract syntax of the object theory.
//!
//! Variables are de Bruijn indices: `Var(0)` refers to the nearest enclosing
//! binder. Binders are `Pi` and `Sigma` (in their second component) and `Lam`.

use std::fmt;
use std::sync::Arc;

/// Built-in axiom constants. These are the only postulates of the theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Function extensionality.
    Funext,
    /// Propositional computation rule of the pushout eliminator on `pglue`.
    PglueBeta,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Funext => "funext",
            Axiom::PglueBeta => "pglue-beta",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    /// Reference to an earlier top-level definition.
    Ref(String),
    Const(Axiom),
    /// The sort of small types.
    Type,

    Pi(Arc<Term>, Arc<Term>),
    Lam(Arc<Term>),
    App(Arc<Term>, Arc<Term>),

    Sigma(Arc<Term>, Arc<Term>),
    Pair(Arc<Term>, Arc<Term>),
    Fst(Arc<Term>),
    Snd(Arc<Term>),

    Id(Arc<Term>, Arc<Term>, Arc<Term>),
    Refl(Arc<Term>),
    /// Based path induction: `J(motive, base, target, path)`.
    J(Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>),

    Unit,
    Star,
    Empty,
    /// `absurd(C, e)` inhabits the type `C` given `e : Empty`.
    Absurd(Arc<Term>, Arc<Term>),

    Sum(Arc<Term>, Arc<Term>),
    Inl(Arc<Term>),
    Inr(Arc<Term>),
    Case(Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>),

    /// `Push(A, B, C, f, g)`: the pushout of `B <- A -> C`.
    Push(Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>),
    PInl(Arc<Term>),
    PInr(Arc<Term>),
    PGlue(Arc<Term>),
    PInd(Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>),

    /// `JType(A, B, C, G, X)`: the localization approximation of `X` at
    /// the family `G : (a : A) -> B a -> C a`.
    JType(Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>),
    JAlpha(Arc<Term>),
    JExt(Arc<Term>, Arc<Term>, Arc<Term>),
    JIsExt(Arc<Term>, Arc<Term>, Arc<Term>),
    JInd(Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>, Arc<Term>),

    Ann(Arc<Term>, Arc<Term>),
}

fn b(t: Term) -> Arc<Term> {
    Arc::new(t)
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn pi(dom: Term, cod: Term) -> Term {
        Term::Pi(b(dom), b(cod))
    }

    /// Non-dependent function type; `cod` is written in the outer scope.
    pub fn arrow(dom: Term, cod: Term) -> Term {
        Term::Pi(b(dom), b(cod.shift(1, 0)))
    }

    pub fn lam(body: Term) -> Term {
        Term::Lam(b(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(b(f), b(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn sigma(a: Term, b_: Term) -> Term {
        Term::Sigma(b(a), b(b_))
    }

    pub fn pair(x: Term, y: Term) -> Term {
        Term::Pair(b(x), b(y))
    }

    pub fn id(ty: Term, x: Term, y: Term) -> Term {
        Term::Id(b(ty), b(x), b(y))
    }

    pub fn refl(x: Term) -> Term {
        Term::Refl(b(x))
    }

    pub fn ann(t: Term, ty: Term) -> Term {
        Term::Ann(b(t), b(ty))
    }

    pub fn jtype(a: Term, bf: Term, cf: Term, g: Term, x: Term) -> Term {
        Term::JType(b(a), b(bf), b(cf), b(g), b(x))
    }

    pub fn jalpha(x: Term) -> Term {
        Term::JAlpha(b(x))
    }

    pub fn jind(p: Term, n: Term, r: Term, s: Term, z: Term) -> Term {
        Term::JInd(b(p), b(n), b(r), b(s), b(z))
    }

    /// Immediate subterms paired with the number of binders each sits under.
    pub fn children(&self) -> Vec<(&Term, usize)> {
        use Term::*;
        match self {
            Var(_) | Ref(_) | Const(_) | Type | Unit | Star | Empty => vec![],
            Pi(a, c) | Sigma(a, c) => vec![(a, 0), (c, 1)],
            Lam(body) => vec![(body, 1)],
            App(x, y) | Pair(x, y) | Absurd(x, y) | Sum(x, y) | Ann(x, y) => {
                vec![(x, 0), (y, 0)]
            }
            Fst(x) | Snd(x) | Refl(x) | Inl(x) | Inr(x) | PInl(x) | PInr(x) | PGlue(x) | JAlpha(x) => vec![(x, 0)],
            Id(x, y, z) | JExt(x, y, z) | JIsExt(x, y, z) => vec![(x, 0), (y, 0), (z, 0)],
            J(w, x, y, z) | Case(w, x, y, z) => vec![(w, 0), (x, 0), (y, 0), (z, 0)],
            Push(v, w, x, y, z) | PInd(v, w, x, y, z) | JType(v, w, x, y, z) | JInd(v, w, x, y, z) => {
                vec![(v, 0), (w, 0), (x, 0), (y, 0), (z, 0)]
            }
        }
    }

    /// Rebuild `self` with every immediate subterm transformed by `f`, which
    /// receives the number of binders the subterm sits under.
    pub fn map_children(&self, mut f: impl FnMut(&Term, usize) -> Term) -> Term {
        use Term::*;
        let mut g = |t: &Term, k: usize| b(f(t, k));
        match self {
            Var(_) | Ref(_) | Const(_) | Type | Unit | Star | Empty => self.clone(),
            Pi(a, c) => Pi(g(a, 0), g(c, 1)),
            Sigma(a, c) => Sigma(g(a, 0), g(c, 1)),
            Lam(body) => Lam(g(body, 1)),
            App(x, y) => App(g(x, 0), g(y, 0)),
            Pair(x, y) => Pair(g(x, 0), g(y, 0)),
            Absurd(x, y) => Absurd(g(x, 0), g(y, 0)),
            Sum(x, y) => Sum(g(x, 0), g(y, 0)),
            Ann(x, y) => Ann(g(x, 0), g(y, 0)),
            Fst(x) => Fst(g(x, 0)),
            Snd(x) => Snd(g(x, 0)),
            Refl(x) => Refl(g(x, 0)),
            Inl(x) => Inl(g(x, 0)),
            Inr(x) => Inr(g(x, 0)),
            PInl(x) => PInl(g(x, 0)),
            PInr(x) => PInr(g(x, 0)),
            PGlue(x) => PGlue(g(x, 0)),
            JAlpha(x) => JAlpha(g(x, 0)),
            Id(x, y, z) => Id(g(x, 0), g(y, 0), g(z, 0)),
            JExt(x, y, z) => JExt(g(x, 0), g(y, 0), g(z, 0)),
            JIsExt(x, y, z) => JIsExt(g(x, 0), g(y, 0), g(z, 0)),
            J(w, x, y, z) => J(g(w, 0), g(x, 0), g(y, 0), g(z, 0)),
            Case(w, x, y, z) => Case(g(w, 0), g(x, 0), g(y, 0), g(z, 0)),
            Push(v, w, x, y, z) => Push(g(v, 0), g(w, 0), g(x, 0), g(y, 0), g(z, 0)),
            PInd(v, w, x, y, z) => PInd(g(v, 0), g(w, 0), g(x, 0), g(y, 0), g(z, 0)),
            JType(v, w, x, y, z) => JType(g(v, 0), g(w, 0), g(x, 0), g(y, 0), g(z, 0)),
            JInd(v, w, x, y, z) => JInd(g(v, 0), g(w, 0), g(x, 0), g(y, 0), g(z, 0)),
        }
    }

    /// Add `by` to every free index `>= cutoff`.
    pub fn shift(&self, by: isize, cutoff: usize) -> Term {
        match self {
            Term::Var(i) if *i >= cutoff => {
                let j = *i as isize + by;
                assert!(j >= 0, "shift produced a negative index");
                Term::Var(j as usize)
            }
            Term::Var(_) => self.clone(),
            _ => self.map_children(|t, k| t.shift(by, cutoff + k)),
        }
    }

    /// Whether the index `i` (relative to this term) occurs free.
    pub fn has_free(&self, i: usize) -> bool {
        match self {
            Term::Var(j) => *j == i,
            _ => self.children().into_iter().any(|(t, k)| t.has_free(i + k)),
        }
    }

    /// Every free index is below `depth`.
    pub fn is_scoped(&self, depth: usize) -> bool {
        match self {
            Term::Var(j) => *j < depth,
            _ => self.children().into_iter().all(|(t, k)| t.is_scoped(depth + k)),
        }
    }

    /// Names of the definitions this term refers to.
    pub fn refs(&self, out: &mut Vec<String>) {
        if let Term::Ref(name) = self {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        for (t, _) in self.children() {
            t.refs(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|(t, _)| t.size()).sum::<usize>()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print::print(self))
    }
}
