use std::sync::Arc;

use crate::syntax::{Axiom, Term};

pub type Val = Arc<Value>;

/// Evaluation environment; the last entry is `Var(0)`.
#[derive(Debug, Clone, Default)]
pub struct Env(pub Vec<Val>);

impl Env {
    pub fn lookup(&self, i: usize) -> Option<&Val> {
        let n = self.0.len();
        if i < n {
            Some(&self.0[n - 1 - i])
        } else {
            None
        }
    }

    pub fn extended(&self, v: Val) -> Env {
        let mut e = self.0.clone();
        e.push(v);
        Env(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub env: Env,
    pub body: Arc<Term>,
}

/// The five parameters of a `JType`.
#[derive(Debug, Clone)]
pub struct JParams {
    pub index: Val,
    pub dom: Val,
    pub cod: Val,
    pub family: Val,
    pub base: Val,
}

/// The five parameters of a `Push`.
#[derive(Debug, Clone)]
pub struct PushParams {
    pub apex: Val,
    pub left: Val,
    pub right: Val,
    pub f: Val,
    pub g: Val,
}

#[derive(Debug, Clone)]
pub enum Value {
    Type,
    Pi(Val, Closure),
    Lam(Closure),
    Sigma(Val, Closure),
    Pair(Val, Val),
    Id(Val, Val, Val),
    Refl(Val),
    Unit,
    Star,
    Empty,
    Sum(Val, Val),
    Inl(Val),
    Inr(Val),
    Push(PushParams),
    PInl(Val),
    PInr(Val),
    JType(JParams),
    JAlpha(Val),
    Neutral(Neutral),
}

/// Heads that no eliminator reduces. Path constructors and `ext` live here
/// because their eliminators block on them; they remember their type when it
/// is known so that read-back can stay type-directed.
#[derive(Debug, Clone)]
pub enum Head {
    Var { level: usize, ty: Option<Val> },
    Const(Axiom),
    PGlue { point: Val, ty: Option<Val> },
    JExt { index: Val, fun: Val, point: Val, ty: Option<Val> },
    JIsExt { index: Val, fun: Val, point: Val, ty: Option<Val> },
}

#[derive(Debug, Clone)]
pub enum Frame {
    App(Val),
    Fst,
    Snd,
    J { motive: Val, base: Val, target: Val },
    Absurd { motive: Val },
    Case { motive: Val, left: Val, right: Val },
    PInd { motive: Val, left: Val, right: Val, glue: Val },
    JInd { motive: Val, alpha: Val, ext: Val, isext: Val },
}

#[derive(Debug, Clone)]
pub struct Neutral {
    pub head: Head,
    pub spine: Vec<Frame>,
}

impl Neutral {
    pub fn with(&self, frame: Frame) -> Val {
        let mut spine = self.spine.clone();
        spine.push(frame);
        Arc::new(Value::Neutral(Neutral { head: self.head.clone(), spine }))
    }
}

pub fn head(h: Head) -> Val {
    Arc::new(Value::Neutral(Neutral { head: h, spine: Vec::new() }))
}

/// A fresh variable at de Bruijn level `level`.
pub fn var(level: usize, ty: Option<Val>) -> Val {
    head(Head::Var { level, ty })
}
