//! Typing rules that are easier to state in the surface language than to
//! build by hand. Each template is a term over named free variables and is
//! instantiated by evaluation in an environment holding their values.

use std::collections::HashSet;
use std::sync::OnceLock;

use super::eval::Eval;
use super::value::{Env, JParams, PushParams, Val};
use crate::syntax::{parse_term_in, Axiom, Term};

pub struct Template {
    locals: &'static [&'static str],
    src: &'static str,
    cell: OnceLock<Term>,
}

impl Template {
    const fn new(locals: &'static [&'static str], src: &'static str) -> Self {
        Template { locals, src, cell: OnceLock::new() }
    }

    pub fn term(&self) -> &Term {
        self.cell.get_or_init(|| {
            parse_term_in(self.src, self.locals, &HashSet::new())
                .unwrap_or_else(|e| panic!("bad rule template `{}`: {e}", self.src))
        })
    }

    pub fn inst(&self, ev: &Eval, args: &[Val]) -> Val {
        assert_eq!(args.len(), self.locals.len());
        ev.eval(&Env(args.to_vec()), self.term())
    }
}

const PUSH: &[&str] = &["A", "B", "C", "f", "g"];
const PUSH_P: &[&str] = &["A", "B", "C", "f", "g", "P"];
const PUSH_PLR: &[&str] = &["A", "B", "C", "f", "g", "P", "l", "r"];
const JT: &[&str] = &["A", "B", "C", "G", "X"];
const JT_P: &[&str] = &["A", "B", "C", "G", "X", "P"];
const JT_PR: &[&str] = &["A", "B", "C", "G", "X", "P", "R"];
const JT_A: &[&str] = &["A", "B", "C", "G", "X", "a"];

pub static J_MOTIVE: Template = Template::new(&["T", "x"], "(y : T) -> Id(T, x, y) -> Type");
pub static CASE_MOTIVE: Template = Template::new(&["A", "B"], "Sum(A, B) -> Type");
pub static CASE_LEFT: Template = Template::new(&["A", "B", "m"], "(x : A) -> m (inl(x))");
pub static CASE_RIGHT: Template = Template::new(&["A", "B", "m"], "(x : B) -> m (inr(x))");
pub static ARROW: Template = Template::new(&["A", "B"], "A -> B");
pub static FAMILY: Template = Template::new(&["A"], "A -> Type");
pub static FAMILY_MAP: Template = Template::new(&["A", "B", "C"], "(a : A) -> B a -> C a");

pub static PUSH_MOTIVE: Template = Template::new(PUSH, "Push(A, B, C, f, g) -> Type");
pub static PIND_INL: Template = Template::new(PUSH_P, "(b : B) -> P (pinl(b))");
pub static PIND_INR: Template = Template::new(PUSH_P, "(c : C) -> P (pinr(c))");
pub static PIND_GLUE: Template = Template::new(
    PUSH_PLR,
    "(a : A) -> Id(P (pinr(g a)), \
       J(fun y q => P y, l (f a), pinr(g a), \
         (pglue(a) : Id(Push(A, B, C, f, g), pinl(f a), pinr(g a)))), \
       r (g a))",
);

pub static JT_MOTIVE: Template = Template::new(JT, "JType(A, B, C, G, X) -> Type");
pub static JEXT_FUN: Template = Template::new(JT_A, "B a -> JType(A, B, C, G, X)");
pub static JIND_ALPHA: Template = Template::new(JT_P, "(x : X) -> P (alpha(x))");
pub static JIND_EXT: Template = Template::new(
    JT_P,
    "(a : A) -> (f : B a -> JType(A, B, C, G, X)) -> ((b : B a) -> P (f b)) -> \
     (c : C a) -> P ((ext(a, f, c) : JType(A, B, C, G, X)))",
);
pub static JIND_ISEXT: Template = Template::new(
    JT_PR,
    "(a : A) -> (f : B a -> JType(A, B, C, G, X)) -> (f' : (b : B a) -> P (f b)) -> \
     (b : B a) -> Id(P (f b), \
       J(fun y q => P y, R a f f' (G a b), f b, \
         (isext(a, f, b) : Id(JType(A, B, C, G, X), \
            (ext(a, f, G a b) : JType(A, B, C, G, X)), f b))), \
       f' b)",
);

pub static FUNEXT: Template = Template::new(
    &[],
    "(A : Type) -> (B : A -> Type) -> (f g : (x : A) -> B x) -> \
     ((x : A) -> Id(B x, f x, g x)) -> Id((x : A) -> B x, f, g)",
);
pub static PGLUE_BETA: Template = Template::new(
    &[],
    "(A B C : Type) -> (f : A -> B) -> (g : A -> C) -> (P : Push(A, B, C, f, g) -> Type) -> \
     (l : (b : B) -> P (pinl(b))) -> (r : (c : C) -> P (pinr(c))) -> \
     (s : (a : A) -> Id(P (pinr(g a)), \
        J(fun y q => P y, l (f a), pinr(g a), \
          (pglue(a) : Id(Push(A, B, C, f, g), pinl(f a), pinr(g a)))), \
        r (g a))) -> \
     (a : A) -> Id(Id(P (pinr(g a)), \
        J(fun y q => P y, l (f a), pinr(g a), \
          (pglue(a) : Id(Push(A, B, C, f, g), pinl(f a), pinr(g a)))), \
        r (g a)), \
      J(fun y q => Id(P y, \
          J(fun y2 q2 => P y2, pind(P, l, r, s, pinl(f a)), y, q), \
          pind(P, l, r, s, y)), \
        refl(pind(P, l, r, s, pinl(f a))), \
        pinr(g a), \
        (pglue(a) : Id(Push(A, B, C, f, g), pinl(f a), pinr(g a)))), \
      s a)",
);

pub fn axiom_template(a: Axiom) -> &'static Template {
    match a {
        Axiom::Funext => &FUNEXT,
        Axiom::PglueBeta => &PGLUE_BETA,
    }
}

pub fn push_args(p: &PushParams) -> Vec<Val> {
    vec![p.apex.clone(), p.left.clone(), p.right.clone(), p.f.clone(), p.g.clone()]
}

pub fn jt_args(p: &JParams) -> Vec<Val> {
    vec![p.index.clone(), p.dom.clone(), p.cod.clone(), p.family.clone(), p.base.clone()]
}

pub fn with(mut args: Vec<Val>, extra: &[&Val]) -> Vec<Val> {
    args.extend(extra.iter().map(|v| (*v).clone()));
    args
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn templates_parse() {
        for t in [
            &J_MOTIVE,
            &CASE_MOTIVE,
            &CASE_LEFT,
            &CASE_RIGHT,
            &ARROW,
            &FAMILY,
            &FAMILY_MAP,
            &PUSH_MOTIVE,
            &PIND_INL,
            &PIND_INR,
            &PIND_GLUE,
            &JT_MOTIVE,
            &JEXT_FUN,
            &JIND_ALPHA,
            &JIND_EXT,
            &JIND_ISEXT,
            &FUNEXT,
            &PGLUE_BETA,
        ] {
            assert!(t.term().is_scoped(t.locals.len()));
        }
    }
}
