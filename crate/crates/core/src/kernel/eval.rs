use std::collections::HashMap;
use std::sync::Arc;

use super::value::*;
use crate::syntax::Term;

/// A checked top-level definition.
#[derive(Debug, Clone)]
pub struct Global {
    /// Elaborated type.
    pub ty: Term,
    /// Elaborated body.
    pub body: Term,
    pub ty_val: Val,
    pub value: Val,
}

#[derive(Debug, Clone, Default)]
pub struct Globals {
    defs: HashMap<String, Global>,
    order: Vec<String>,
}

impl Globals {
    pub fn get(&self, name: &str) -> Option<&Global> {
        self.defs.get(name)
    }

    pub fn insert(&mut self, name: String, g: Global) {
        if self.defs.insert(name.clone(), g).is_none() {
            self.order.push(name);
        }
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }
}

#[derive(Clone, Copy)]
pub struct Eval<'g> {
    pub globals: &'g Globals,
}

fn mk(v: Value) -> Val {
    Arc::new(v)
}

impl<'g> Eval<'g> {
    pub fn new(globals: &'g Globals) -> Self {
        Eval { globals }
    }

    pub fn eval(&self, env: &Env, t: &Term) -> Val {
        use Term::*;
        let ev = |t: &Term| self.eval(env, t);
        let clo = |b: &Arc<Term>| Closure { env: env.clone(), body: b.clone() };
        match t {
            Var(i) => env.lookup(*i).unwrap_or_else(|| panic!("unbound index {i} during evaluation")).clone(),
            Ref(name) => self
                .globals
                .get(name)
                .unwrap_or_else(|| panic!("unknown definition `{name}` during evaluation"))
                .value
                .clone(),
            Const(a) => head(Head::Const(*a)),
            Type => mk(Value::Type),
            Pi(a, b) => mk(Value::Pi(ev(a), clo(b))),
            Lam(b) => mk(Value::Lam(clo(b))),
            App(f, a) => self.apply(&ev(f), &ev(a)),
            Sigma(a, b) => mk(Value::Sigma(ev(a), clo(b))),
            Pair(a, b) => mk(Value::Pair(ev(a), ev(b))),
            Fst(p) => self.fst(&ev(p)),
            Snd(p) => self.snd(&ev(p)),
            Id(a, x, y) => mk(Value::Id(ev(a), ev(x), ev(y))),
            Refl(x) => mk(Value::Refl(ev(x))),
            J(m, d, y, p) => self.j(ev(m), ev(d), ev(y), &ev(p)),
            Unit => mk(Value::Unit),
            Star => mk(Value::Star),
            Empty => mk(Value::Empty),
            Absurd(c, e) => self.absurd(ev(c), &ev(e)),
            Sum(a, b) => mk(Value::Sum(ev(a), ev(b))),
            Inl(x) => mk(Value::Inl(ev(x))),
            Inr(x) => mk(Value::Inr(ev(x))),
            Case(m, l, r, s) => self.case(ev(m), ev(l), ev(r), &ev(s)),
            Push(a, b, c, f, g) => {
                mk(Value::Push(PushParams { apex: ev(a), left: ev(b), right: ev(c), f: ev(f), g: ev(g) }))
            }
            PInl(x) => mk(Value::PInl(ev(x))),
            PInr(x) => mk(Value::PInr(ev(x))),
            PGlue(x) => head(Head::PGlue { point: ev(x), ty: None }),
            PInd(m, l, r, g, z) => self.pind(ev(m), ev(l), ev(r), ev(g), &ev(z)),
            JType(a, b, c, g, x) => {
                mk(Value::JType(JParams { index: ev(a), dom: ev(b), cod: ev(c), family: ev(g), base: ev(x) }))
            }
            JAlpha(x) => mk(Value::JAlpha(ev(x))),
            JExt(a, f, c) => head(Head::JExt { index: ev(a), fun: ev(f), point: ev(c), ty: None }),
            JIsExt(a, f, b) => head(Head::JIsExt { index: ev(a), fun: ev(f), point: ev(b), ty: None }),
            JInd(p, n, r, s, z) => self.jind(ev(p), ev(n), ev(r), ev(s), &ev(z)),
            Ann(inner, ty) => {
                let ty = Some(ev(ty));
                match &**inner {
                    PGlue(x) => head(Head::PGlue { point: ev(x), ty }),
                    JExt(a, f, c) => head(Head::JExt { index: ev(a), fun: ev(f), point: ev(c), ty }),
                    JIsExt(a, f, b) => head(Head::JIsExt { index: ev(a), fun: ev(f), point: ev(b), ty }),
                    _ => ev(inner),
                }
            }
        }
    }

    pub fn close(&self, c: &Closure, arg: Val) -> Val {
        self.eval(&c.env.extended(arg), &c.body)
    }

    pub fn apply(&self, f: &Val, a: &Val) -> Val {
        match &**f {
            Value::Lam(c) => self.close(c, a.clone()),
            Value::Neutral(n) => n.with(Frame::App(a.clone())),
            other => panic!("apply on a non-function value {other:?}"),
        }
    }

    pub fn apply2(&self, f: &Val, a: &Val, b: &Val) -> Val {
        self.apply(&self.apply(f, a), b)
    }

    pub fn fst(&self, p: &Val) -> Val {
        match &**p {
            Value::Pair(a, _) => a.clone(),
            Value::Neutral(n) => n.with(Frame::Fst),
            other => panic!("fst on a non-pair value {other:?}"),
        }
    }

    pub fn snd(&self, p: &Val) -> Val {
        match &**p {
            Value::Pair(_, b) => b.clone(),
            Value::Neutral(n) => n.with(Frame::Snd),
            other => panic!("snd on a non-pair value {other:?}"),
        }
    }

    pub fn j(&self, motive: Val, base: Val, target: Val, path: &Val) -> Val {
        match &**path {
            Value::Refl(_) => base,
            Value::Neutral(n) => n.with(Frame::J { motive, base, target }),
            other => panic!("J on a non-path value {other:?}"),
        }
    }

    pub fn absurd(&self, motive: Val, e: &Val) -> Val {
        match &**e {
            Value::Neutral(n) => n.with(Frame::Absurd { motive }),
            other => panic!("absurd on a canonical value {other:?}"),
        }
    }

    pub fn case(&self, motive: Val, left: Val, right: Val, s: &Val) -> Val {
        match &**s {
            Value::Inl(x) => self.apply(&left, x),
            Value::Inr(x) => self.apply(&right, x),
            Value::Neutral(n) => n.with(Frame::Case { motive, left, right }),
            other => panic!("case on a non-sum value {other:?}"),
        }
    }

    pub fn pind(&self, motive: Val, left: Val, right: Val, glue: Val, z: &Val) -> Val {
        match &**z {
            Value::PInl(x) => self.apply(&left, x),
            Value::PInr(x) => self.apply(&right, x),
            Value::Neutral(n) => n.with(Frame::PInd { motive, left, right, glue }),
            other => panic!("pind on a non-pushout value {other:?}"),
        }
    }

    pub fn jind(&self, motive: Val, alpha: Val, ext: Val, isext: Val, z: &Val) -> Val {
        match &**z {
            Value::JAlpha(x) => self.apply(&alpha, x),
            Value::Neutral(n) => n.with(Frame::JInd { motive, alpha, ext, isext }),
            other => panic!("jind on a non-localization value {other:?}"),
        }
    }
}
