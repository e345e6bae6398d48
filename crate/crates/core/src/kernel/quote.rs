//! Type-directed read-back of values into β-normal, η-long terms, and the
//! untyped η-aware conversion check used for definitional equality.

use std::sync::Arc;

use super::eval::Eval;
use super::rules::{self, jt_args, push_args, with};
use super::value::*;
use crate::syntax::Term;

fn b(t: Term) -> Arc<Term> {
    Arc::new(t)
}

impl<'g> Eval<'g> {
    fn index(depth: usize, level: usize) -> Term {
        Term::Var(depth - 1 - level)
    }

    /// Read back `v`, which has type `ty` when known, at binder depth `depth`.
    pub fn quote(&self, depth: usize, ty: Option<&Val>, v: &Val) -> Term {
        match ty.map(|t| &**t) {
            Some(Value::Pi(a, cod)) => {
                let x = var(depth, Some(a.clone()));
                let body_ty = self.close(cod, x.clone());
                let body = self.quote(depth + 1, Some(&body_ty), &self.apply(v, &x));
                return Term::Lam(b(body));
            }
            Some(Value::Sigma(a, cod)) => {
                let first = self.fst(v);
                let second_ty = self.close(cod, first.clone());
                let x = self.quote(depth, Some(a), &first);
                let y = self.quote(depth, Some(&second_ty), &self.snd(v));
                return Term::Pair(b(x), b(y));
            }
            Some(Value::Type) => return self.quote_type(depth, v),
            _ => {}
        }
        let expected = ty;
        let ty = ty.map(|t| &**t);
        match &**v {
            Value::Type
            | Value::Pi(..)
            | Value::Sigma(..)
            | Value::Id(..)
            | Value::Unit
            | Value::Empty
            | Value::Sum(..)
            | Value::Push(_)
            | Value::JType(_) => self.quote_type(depth, v),
            Value::Lam(c) => {
                let x = var(depth, None);
                Term::Lam(b(self.quote(depth + 1, None, &self.close(c, x))))
            }
            Value::Pair(x, y) => Term::Pair(b(self.quote(depth, None, x)), b(self.quote(depth, None, y))),
            Value::Star => Term::Star,
            Value::Refl(x) => {
                let t = match ty {
                    Some(Value::Id(t, _, _)) => Some(t),
                    _ => None,
                };
                Term::Refl(b(self.quote(depth, t, x)))
            }
            Value::Inl(x) => {
                let t = match ty {
                    Some(Value::Sum(l, _)) => Some(l),
                    _ => None,
                };
                Term::Inl(b(self.quote(depth, t, x)))
            }
            Value::Inr(x) => {
                let t = match ty {
                    Some(Value::Sum(_, r)) => Some(r),
                    _ => None,
                };
                Term::Inr(b(self.quote(depth, t, x)))
            }
            Value::PInl(x) => {
                let t = match ty {
                    Some(Value::Push(p)) => Some(&p.left),
                    _ => None,
                };
                Term::PInl(b(self.quote(depth, t, x)))
            }
            Value::PInr(x) => {
                let t = match ty {
                    Some(Value::Push(p)) => Some(&p.right),
                    _ => None,
                };
                Term::PInr(b(self.quote(depth, t, x)))
            }
            Value::JAlpha(x) => {
                let t = match ty {
                    Some(Value::JType(p)) => Some(&p.base),
                    _ => None,
                };
                Term::JAlpha(b(self.quote(depth, t, x)))
            }
            Value::Neutral(n) if n.spine.is_empty() => self.quote_head(depth, &n.head, expected).0,
            Value::Neutral(n) => self.quote_neutral(depth, n).0,
        }
    }

    /// Read back a value of type `Type` (or `Kind`).
    pub fn quote_type(&self, depth: usize, v: &Val) -> Term {
        match &**v {
            Value::Type => Term::Type,
            Value::Unit => Term::Unit,
            Value::Empty => Term::Empty,
            Value::Pi(a, c) | Value::Sigma(a, c) => {
                let x = var(depth, Some(a.clone()));
                let dom = self.quote_type(depth, a);
                let cod = self.quote_type(depth + 1, &self.close(c, x));
                if matches!(&**v, Value::Pi(..)) {
                    Term::Pi(b(dom), b(cod))
                } else {
                    Term::Sigma(b(dom), b(cod))
                }
            }
            Value::Id(t, x, y) => Term::Id(
                b(self.quote_type(depth, t)),
                b(self.quote(depth, Some(t), x)),
                b(self.quote(depth, Some(t), y)),
            ),
            Value::Sum(l, r) => Term::Sum(b(self.quote_type(depth, l)), b(self.quote_type(depth, r))),
            Value::Push(p) => {
                let f_ty = rules::ARROW.inst(self, &[p.apex.clone(), p.left.clone()]);
                let g_ty = rules::ARROW.inst(self, &[p.apex.clone(), p.right.clone()]);
                Term::Push(
                    b(self.quote_type(depth, &p.apex)),
                    b(self.quote_type(depth, &p.left)),
                    b(self.quote_type(depth, &p.right)),
                    b(self.quote(depth, Some(&f_ty), &p.f)),
                    b(self.quote(depth, Some(&g_ty), &p.g)),
                )
            }
            Value::JType(p) => {
                let fam = rules::FAMILY.inst(self, std::slice::from_ref(&p.index));
                let map = rules::FAMILY_MAP.inst(self, &[p.index.clone(), p.dom.clone(), p.cod.clone()]);
                Term::JType(
                    b(self.quote_type(depth, &p.index)),
                    b(self.quote(depth, Some(&fam), &p.dom)),
                    b(self.quote(depth, Some(&fam), &p.cod)),
                    b(self.quote(depth, Some(&map), &p.family)),
                    b(self.quote_type(depth, &p.base)),
                )
            }
            Value::Neutral(n) => self.quote_neutral(depth, n).0,
            _ => self.quote(depth, None, v),
        }
    }

    /// Read back a head, returning its type when it is known. `expected` is
    /// used for constructor heads that do not record their own type.
    fn quote_head(&self, depth: usize, h: &Head, expected: Option<&Val>) -> (Term, Option<Val>) {
        match h {
            Head::Var { level, ty } => (Self::index(depth, *level), ty.clone()),
            Head::Const(a) => (Term::Const(*a), Some(rules::axiom_template(*a).inst(self, &[]))),
            Head::PGlue { point, ty } => {
                let ty = ty.clone().or_else(|| expected.cloned());
                let apex = match ty.as_deref() {
                    Some(Value::Id(t, _, _)) => match &**t {
                        Value::Push(p) => Some(p.apex.clone()),
                        _ => None,
                    },
                    _ => None,
                };
                let core = Term::PGlue(b(self.quote(depth, apex.as_ref(), point)));
                self.annotate(depth, core, ty, apex.is_some())
            }
            Head::JExt { index, fun, point, ty } => {
                let ty = ty.clone().or_else(|| expected.cloned());
                match ty.as_deref() {
                    Some(Value::JType(p)) => {
                        let fun_ty = rules::JEXT_FUN.inst(self, &with(jt_args(p), &[index]));
                        let point_ty = self.apply(&p.cod, index);
                        let core = Term::JExt(
                            b(self.quote(depth, Some(&p.index), index)),
                            b(self.quote(depth, Some(&fun_ty), fun)),
                            b(self.quote(depth, Some(&point_ty), point)),
                        );
                        self.annotate(depth, core, ty, true)
                    }
                    _ => {
                        let core = Term::JExt(
                            b(self.quote(depth, None, index)),
                            b(self.quote(depth, None, fun)),
                            b(self.quote(depth, None, point)),
                        );
                        (core, None)
                    }
                }
            }
            Head::JIsExt { index, fun, point, ty } => {
                let ty = ty.clone().or_else(|| expected.cloned());
                let params = match ty.as_deref() {
                    Some(Value::Id(t, _, _)) => match &**t {
                        Value::JType(p) => Some(p.clone()),
                        _ => None,
                    },
                    _ => None,
                };
                match params {
                    Some(p) => {
                        let fun_ty = rules::JEXT_FUN.inst(self, &with(jt_args(&p), &[index]));
                        let point_ty = self.apply(&p.dom, index);
                        let core = Term::JIsExt(
                            b(self.quote(depth, Some(&p.index), index)),
                            b(self.quote(depth, Some(&fun_ty), fun)),
                            b(self.quote(depth, Some(&point_ty), point)),
                        );
                        self.annotate(depth, core, ty, true)
                    }
                    None => (
                        Term::JIsExt(
                            b(self.quote(depth, None, index)),
                            b(self.quote(depth, None, fun)),
                            b(self.quote(depth, None, point)),
                        ),
                        None,
                    ),
                }
            }
        }
    }

    fn annotate(&self, depth: usize, core: Term, ty: Option<Val>, typed: bool) -> (Term, Option<Val>) {
        match ty {
            Some(t) if typed => (Term::Ann(b(core), b(self.quote_type(depth, &t))), Some(t)),
            _ => (core, None),
        }
    }

    /// Read back a neutral, returning its type when it can be reconstructed.
    pub fn quote_neutral(&self, depth: usize, n: &Neutral) -> (Term, Option<Val>) {
        let (mut term, mut ty) = self.quote_head(depth, &n.head, None);
        let mut cur = head(n.head.clone());
        for frame in &n.spine {
            let (t, next_ty) = self.quote_frame(depth, term, ty.as_ref(), &cur, frame);
            term = t;
            ty = next_ty;
            cur = match &*cur {
                Value::Neutral(m) => m.with(frame.clone()),
                _ => unreachable!(),
            };
        }
        (term, ty)
    }

    fn quote_frame(&self, depth: usize, t: Term, ty: Option<&Val>, cur: &Val, frame: &Frame) -> (Term, Option<Val>) {
        let q = |ty: Option<&Val>, v: &Val| self.quote(depth, ty, v);
        let ty = ty.map(|t| &**t);
        match frame {
            Frame::App(arg) => match ty {
                Some(Value::Pi(a, cod)) => (Term::App(b(t), b(q(Some(a), arg))), Some(self.close(cod, arg.clone()))),
                _ => (Term::App(b(t), b(q(None, arg))), None),
            },
            Frame::Fst => match ty {
                Some(Value::Sigma(a, _)) => (Term::Fst(b(t)), Some(a.clone())),
                _ => (Term::Fst(b(t)), None),
            },
            Frame::Snd => match ty {
                Some(Value::Sigma(_, cod)) => (Term::Snd(b(t)), Some(self.close(cod, self.fst(cur)))),
                _ => (Term::Snd(b(t)), None),
            },
            Frame::J { motive, base, target } => match ty {
                Some(Value::Id(a, x, _)) => {
                    let m_ty = rules::J_MOTIVE.inst(self, &[a.clone(), x.clone()]);
                    let refl = Arc::new(Value::Refl(x.clone()));
                    let base_ty = self.apply2(motive, x, &refl);
                    let out =
                        Term::J(b(q(Some(&m_ty), motive)), b(q(Some(&base_ty), base)), b(q(Some(a), target)), b(t));
                    (out, Some(self.apply2(motive, target, cur)))
                }
                _ => (Term::J(b(q(None, motive)), b(q(None, base)), b(q(None, target)), b(t)), None),
            },
            Frame::Absurd { motive } => (Term::Absurd(b(self.quote_type(depth, motive)), b(t)), Some(motive.clone())),
            Frame::Case { motive, left, right } => match ty {
                Some(Value::Sum(l, r)) => {
                    let args = vec![l.clone(), r.clone()];
                    let m_ty = rules::CASE_MOTIVE.inst(self, &args);
                    let l_ty = rules::CASE_LEFT.inst(self, &with(args.clone(), &[motive]));
                    let r_ty = rules::CASE_RIGHT.inst(self, &with(args, &[motive]));
                    let out =
                        Term::Case(b(q(Some(&m_ty), motive)), b(q(Some(&l_ty), left)), b(q(Some(&r_ty), right)), b(t));
                    (out, Some(self.apply(motive, cur)))
                }
                _ => (Term::Case(b(q(None, motive)), b(q(None, left)), b(q(None, right)), b(t)), None),
            },
            Frame::PInd { motive, left, right, glue } => match ty {
                Some(Value::Push(p)) => {
                    let args = push_args(p);
                    let m_ty = rules::PUSH_MOTIVE.inst(self, &args);
                    let l_ty = rules::PIND_INL.inst(self, &with(args.clone(), &[motive]));
                    let r_ty = rules::PIND_INR.inst(self, &with(args.clone(), &[motive]));
                    let g_ty = rules::PIND_GLUE.inst(self, &with(args, &[motive, left, right]));
                    let out = Term::PInd(
                        b(q(Some(&m_ty), motive)),
                        b(q(Some(&l_ty), left)),
                        b(q(Some(&r_ty), right)),
                        b(q(Some(&g_ty), glue)),
                        b(t),
                    );
                    (out, Some(self.apply(motive, cur)))
                }
                _ => {
                    (Term::PInd(b(q(None, motive)), b(q(None, left)), b(q(None, right)), b(q(None, glue)), b(t)), None)
                }
            },
            Frame::JInd { motive, alpha, ext, isext } => match ty {
                Some(Value::JType(p)) => {
                    let args = jt_args(p);
                    let m_ty = rules::JT_MOTIVE.inst(self, &args);
                    let n_ty = rules::JIND_ALPHA.inst(self, &with(args.clone(), &[motive]));
                    let r_ty = rules::JIND_EXT.inst(self, &with(args.clone(), &[motive]));
                    let s_ty = rules::JIND_ISEXT.inst(self, &with(args, &[motive, ext]));
                    let out = Term::JInd(
                        b(q(Some(&m_ty), motive)),
                        b(q(Some(&n_ty), alpha)),
                        b(q(Some(&r_ty), ext)),
                        b(q(Some(&s_ty), isext)),
                        b(t),
                    );
                    (out, Some(self.apply(motive, cur)))
                }
                _ => {
                    (Term::JInd(b(q(None, motive)), b(q(None, alpha)), b(q(None, ext)), b(q(None, isext)), b(t)), None)
                }
            },
        }
    }

    /// Definitional equality of two values at binder depth `depth`, with η
    /// for functions and pairs.
    pub fn conv(&self, depth: usize, x: &Val, y: &Val) -> bool {
        use Value::*;
        match (&**x, &**y) {
            (Type, Type) | (Unit, Unit) | (Empty, Empty) | (Star, Star) => true,
            (Pi(a1, c1), Pi(a2, c2)) | (Sigma(a1, c1), Sigma(a2, c2)) => {
                if std::mem::discriminant(&**x) != std::mem::discriminant(&**y) {
                    return false;
                }
                let v = var(depth, None);
                self.conv(depth, a1, a2) && self.conv(depth + 1, &self.close(c1, v.clone()), &self.close(c2, v))
            }
            (Lam(c1), Lam(c2)) => {
                let v = var(depth, None);
                self.conv(depth + 1, &self.close(c1, v.clone()), &self.close(c2, v))
            }
            (Lam(c), _) => {
                let v = var(depth, None);
                self.conv(depth + 1, &self.close(c, v.clone()), &self.apply(y, &v))
            }
            (_, Lam(c)) => {
                let v = var(depth, None);
                self.conv(depth + 1, &self.apply(x, &v), &self.close(c, v.clone()))
            }
            (Pair(a1, b1), Pair(a2, b2)) => self.conv(depth, a1, a2) && self.conv(depth, b1, b2),
            (Pair(a, b_), Neutral(_)) => self.conv(depth, a, &self.fst(y)) && self.conv(depth, b_, &self.snd(y)),
            (Neutral(_), Pair(a, b_)) => self.conv(depth, &self.fst(x), a) && self.conv(depth, &self.snd(x), b_),
            (Id(t1, a1, b1), Id(t2, a2, b2)) => {
                self.conv(depth, t1, t2) && self.conv(depth, a1, a2) && self.conv(depth, b1, b2)
            }
            (Refl(a), Refl(b_))
            | (Inl(a), Inl(b_))
            | (Inr(a), Inr(b_))
            | (PInl(a), PInl(b_))
            | (PInr(a), PInr(b_))
            | (JAlpha(a), JAlpha(b_)) => {
                std::mem::discriminant(&**x) == std::mem::discriminant(&**y) && self.conv(depth, a, b_)
            }
            (Sum(a1, b1), Sum(a2, b2)) => self.conv(depth, a1, a2) && self.conv(depth, b1, b2),
            (Push(p), Push(q)) => self.conv_all(depth, &push_args(p), &push_args(q)),
            (JType(p), JType(q)) => self.conv_all(depth, &jt_args(p), &jt_args(q)),
            (Neutral(n), Neutral(m)) => self.conv_neutral(depth, n, m),
            _ => false,
        }
    }

    fn conv_all(&self, depth: usize, xs: &[Val], ys: &[Val]) -> bool {
        xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| self.conv(depth, a, b))
    }

    fn conv_neutral(&self, depth: usize, n: &Neutral, m: &Neutral) -> bool {
        let heads = match (&n.head, &m.head) {
            (Head::Var { level: a, .. }, Head::Var { level: b, .. }) => a == b,
            (Head::Const(a), Head::Const(b)) => a == b,
            (Head::PGlue { point: a, .. }, Head::PGlue { point: b, .. }) => self.conv(depth, a, b),
            (Head::JExt { index: i1, fun: f1, point: p1, .. }, Head::JExt { index: i2, fun: f2, point: p2, .. })
            | (
                Head::JIsExt { index: i1, fun: f1, point: p1, .. },
                Head::JIsExt { index: i2, fun: f2, point: p2, .. },
            ) => {
                std::mem::discriminant(&n.head) == std::mem::discriminant(&m.head)
                    && self.conv(depth, i1, i2)
                    && self.conv(depth, f1, f2)
                    && self.conv(depth, p1, p2)
            }
            _ => false,
        };
        heads
            && n.spine.len() == m.spine.len()
            && n.spine.iter().zip(&m.spine).all(|(a, b)| self.conv_frame(depth, a, b))
    }

    fn conv_frame(&self, depth: usize, a: &Frame, b: &Frame) -> bool {
        use Frame::*;
        match (a, b) {
            (App(x), App(y)) => self.conv(depth, x, y),
            (Fst, Fst) | (Snd, Snd) => true,
            (J { motive: m1, base: b1, target: t1 }, J { motive: m2, base: b2, target: t2 }) => {
                self.conv_all(depth, &[m1.clone(), b1.clone(), t1.clone()], &[m2.clone(), b2.clone(), t2.clone()])
            }
            (Absurd { motive: m1 }, Absurd { motive: m2 }) => self.conv(depth, m1, m2),
            (Case { motive: m1, left: l1, right: r1 }, Case { motive: m2, left: l2, right: r2 }) => {
                self.conv_all(depth, &[m1.clone(), l1.clone(), r1.clone()], &[m2.clone(), l2.clone(), r2.clone()])
            }
            (
                PInd { motive: m1, left: l1, right: r1, glue: g1 },
                PInd { motive: m2, left: l2, right: r2, glue: g2 },
            ) => self.conv_all(
                depth,
                &[m1.clone(), l1.clone(), r1.clone(), g1.clone()],
                &[m2.clone(), l2.clone(), r2.clone(), g2.clone()],
            ),
            (
                JInd { motive: m1, alpha: a1, ext: e1, isext: s1 },
                JInd { motive: m2, alpha: a2, ext: e2, isext: s2 },
            ) => self.conv_all(
                depth,
                &[m1.clone(), a1.clone(), e1.clone(), s1.clone()],
                &[m2.clone(), a2.clone(), e2.clone(), s2.clone()],
            ),
            _ => false,
        }
    }
}
