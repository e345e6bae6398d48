//! Bidirectional checking. Both directions return an elaborated copy of the
//! input in which every `pglue`, `ext` and `isext` carries its type, so that
//! values built from it read back type-directed.

use std::cell::RefCell;
use std::sync::Arc;

use super::error::{TypeError, TypeErrorKind};
use super::eval::Eval;
use super::rules::{self, jt_args, push_args, with};
use super::value::*;
use crate::syntax::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sort {
    Type,
    /// The sort of `Type` and of types quantifying over it.
    Kind,
}

/// Values of the variables in scope and their types.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    pub env: Env,
    pub types: Vec<Val>,
}

impl Scope {
    pub fn depth(&self) -> usize {
        self.types.len()
    }

    pub fn bind(&self, ty: Val) -> (Scope, Val) {
        let x = var(self.depth(), Some(ty.clone()));
        let mut types = self.types.clone();
        types.push(ty);
        (Scope { env: self.env.extended(x.clone()), types }, x)
    }
}

/// One `jind` checked by the kernel, with its elaborated arguments in the
/// scope where it occurred.
#[derive(Debug, Clone)]
pub struct JIndInstance {
    pub context: Vec<Term>,
    pub motive: Term,
    pub alpha: Term,
    pub ext: Term,
    pub isext: Term,
    /// The scrutinee's type, a `JType`.
    pub scrutinee_ty: Term,
    /// Whether `jind(P, N, R, S, alpha(x))` and `N x` were found convertible
    /// for a fresh `x`.
    pub holds: bool,
}

pub struct Checker<'g> {
    pub ev: Eval<'g>,
    pub instances: RefCell<Vec<JIndInstance>>,
}

type Res<T> = Result<T, TypeError>;

fn b(t: Term) -> Arc<Term> {
    Arc::new(t)
}

fn mk(v: Value) -> Val {
    Arc::new(v)
}

impl<'g> Checker<'g> {
    pub fn new(ev: Eval<'g>) -> Self {
        Checker { ev, instances: RefCell::new(Vec::new()) }
    }

    pub fn telescope(&self, sc: &Scope) -> Vec<Term> {
        sc.types.iter().enumerate().map(|(i, t)| self.ev.quote_type(i, t)).collect()
    }

    fn err(&self, sc: &Scope, at: &Term, kind: TypeErrorKind) -> TypeError {
        TypeError { kind, context: self.telescope(sc), at: at.clone() }
    }

    fn eval(&self, sc: &Scope, t: &Term) -> Val {
        self.ev.eval(&sc.env, t)
    }

    fn qt(&self, sc: &Scope, v: &Val) -> Term {
        self.ev.quote_type(sc.depth(), v)
    }

    fn conv(&self, sc: &Scope, a: &Val, b: &Val) -> bool {
        self.ev.conv(sc.depth(), a, b)
    }

    fn expect_conv(&self, sc: &Scope, at: &Term, expected: &Val, actual: &Val) -> Res<()> {
        if self.conv(sc, expected, actual) {
            Ok(())
        } else {
            Err(self.err(
                sc,
                at,
                TypeErrorKind::Mismatch { expected: self.qt(sc, expected), actual: self.qt(sc, actual) },
            ))
        }
    }

    /// Check that `t` is a type of any sort.
    pub fn check_type(&self, sc: &Scope, t: &Term) -> Res<(Term, Sort)> {
        match t {
            Term::Type => Ok((Term::Type, Sort::Kind)),
            Term::Pi(a, c) | Term::Sigma(a, c) => {
                let (a2, s1) = self.check_type(sc, a)?;
                let (inner, _) = sc.bind(self.eval(sc, &a2));
                let (c2, s2) = self.check_type(&inner, c)?;
                let out = if matches!(t, Term::Pi(..)) { Term::Pi(b(a2), b(c2)) } else { Term::Sigma(b(a2), b(c2)) };
                Ok((out, s1.max(s2)))
            }
            _ => {
                let (t2, ty) = self.infer(sc, t)?;
                match &*ty {
                    Value::Type => Ok((t2, Sort::Type)),
                    _ => Err(self.err(sc, t, TypeErrorKind::NotAType { ty: self.qt(sc, &ty) })),
                }
            }
        }
    }

    /// Check that `t` is a small type.
    pub fn check_small(&self, sc: &Scope, t: &Term) -> Res<Term> {
        match self.check_type(sc, t)? {
            (t2, Sort::Type) => Ok(t2),
            (_, Sort::Kind) => Err(self.err(sc, t, TypeErrorKind::LargeType)),
        }
    }

    /// Check a motive: a function into types of either sort.
    fn check_motive(&self, sc: &Scope, m: &Term, ty: &Val) -> Res<Term> {
        match (m, &**ty) {
            (Term::Lam(body), Value::Pi(a, cod)) => {
                let (inner, x) = sc.bind(a.clone());
                let body2 = self.check_motive(&inner, body, &self.ev.close(cod, x))?;
                Ok(Term::Lam(b(body2)))
            }
            (_, Value::Type) => Ok(self.check_type(sc, m)?.0),
            _ => self.check(sc, m, ty),
        }
    }

    pub fn check(&self, sc: &Scope, t: &Term, ty: &Val) -> Res<Term> {
        use Term as T;
        let former =
            |expected: &'static str| self.err(sc, t, TypeErrorKind::WrongFormer { expected, ty: self.qt(sc, ty) });
        match (t, &**ty) {
            (T::Lam(body), Value::Pi(a, cod)) => {
                let (inner, x) = sc.bind(a.clone());
                let body2 = self.check(&inner, body, &self.ev.close(cod, x))?;
                Ok(T::Lam(b(body2)))
            }
            (T::Lam(_), _) => Err(self.err(sc, t, TypeErrorKind::NotAFunction { ty: self.qt(sc, ty) })),
            (T::Pair(x, y), Value::Sigma(a, cod)) => {
                let x2 = self.check(sc, x, a)?;
                let xv = self.eval(sc, &x2);
                let y2 = self.check(sc, y, &self.ev.close(cod, xv))?;
                Ok(T::Pair(b(x2), b(y2)))
            }
            (T::Pair(..), _) => Err(self.err(sc, t, TypeErrorKind::NotAPair { ty: self.qt(sc, ty) })),
            (T::Refl(x), Value::Id(a, l, r)) => {
                let x2 = self.check(sc, x, a)?;
                let xv = self.eval(sc, &x2);
                if self.conv(sc, &xv, l) && self.conv(sc, &xv, r) {
                    Ok(T::Refl(b(x2)))
                } else {
                    let actual = mk(Value::Id(a.clone(), xv.clone(), xv));
                    Err(self.err(
                        sc,
                        t,
                        TypeErrorKind::Mismatch { expected: self.qt(sc, ty), actual: self.qt(sc, &actual) },
                    ))
                }
            }
            (T::Inl(x), Value::Sum(l, _)) => Ok(T::Inl(b(self.check(sc, x, l)?))),
            (T::Inr(x), Value::Sum(_, r)) => Ok(T::Inr(b(self.check(sc, x, r)?))),
            (T::Inl(_) | T::Inr(_), _) => Err(former("a sum type")),
            (T::PInl(x), Value::Push(p)) => Ok(T::PInl(b(self.check(sc, x, &p.left)?))),
            (T::PInr(x), Value::Push(p)) => Ok(T::PInr(b(self.check(sc, x, &p.right)?))),
            (T::PInl(_) | T::PInr(_), _) => Err(former("a pushout type")),
            (T::PGlue(x), Value::Id(carrier, l, r)) => {
                let Value::Push(p) = &**carrier else {
                    return Err(former("an identity type on a pushout"));
                };
                let x2 = self.check(sc, x, &p.apex)?;
                let xv = self.eval(sc, &x2);
                let lhs = mk(Value::PInl(self.ev.apply(&p.f, &xv)));
                let rhs = mk(Value::PInr(self.ev.apply(&p.g, &xv)));
                if !(self.conv(sc, l, &lhs) && self.conv(sc, r, &rhs)) {
                    let actual = mk(Value::Id(carrier.clone(), lhs, rhs));
                    return Err(self.err(
                        sc,
                        t,
                        TypeErrorKind::Mismatch { expected: self.qt(sc, ty), actual: self.qt(sc, &actual) },
                    ));
                }
                Ok(T::Ann(b(T::PGlue(b(x2))), b(self.qt(sc, ty))))
            }
            (T::PGlue(_), _) => Err(former("an identity type on a pushout")),
            (T::JAlpha(x), Value::JType(p)) => Ok(T::JAlpha(b(self.check(sc, x, &p.base)?))),
            (T::JAlpha(_), _) => Err(former("a JType")),
            (T::JExt(a, f, c), Value::JType(p)) => {
                let a2 = self.check(sc, a, &p.index)?;
                let av = self.eval(sc, &a2);
                let f_ty = rules::JEXT_FUN.inst(&self.ev, &with(jt_args(p), &[&av]));
                let f2 = self.check(sc, f, &f_ty)?;
                let c2 = self.check(sc, c, &self.ev.apply(&p.cod, &av))?;
                Ok(T::Ann(b(T::JExt(b(a2), b(f2), b(c2))), b(self.qt(sc, ty))))
            }
            (T::JExt(..), _) => Err(former("a JType")),
            (T::JIsExt(a, f, x), Value::Id(carrier, l, r)) => {
                let Value::JType(p) = &**carrier else {
                    return Err(former("an identity type on a JType"));
                };
                let a2 = self.check(sc, a, &p.index)?;
                let av = self.eval(sc, &a2);
                let f_ty = rules::JEXT_FUN.inst(&self.ev, &with(jt_args(p), &[&av]));
                let f2 = self.check(sc, f, &f_ty)?;
                let fv = self.eval(sc, &f2);
                let x2 = self.check(sc, x, &self.ev.apply(&p.dom, &av))?;
                let xv = self.eval(sc, &x2);
                let lhs = head(Head::JExt {
                    index: av.clone(),
                    fun: fv.clone(),
                    point: self.ev.apply2(&p.family, &av, &xv),
                    ty: Some(carrier.clone()),
                });
                let rhs = self.ev.apply(&fv, &xv);
                if !(self.conv(sc, l, &lhs) && self.conv(sc, r, &rhs)) {
                    let actual = mk(Value::Id(carrier.clone(), lhs, rhs));
                    return Err(self.err(
                        sc,
                        t,
                        TypeErrorKind::Mismatch { expected: self.qt(sc, ty), actual: self.qt(sc, &actual) },
                    ));
                }
                Ok(T::Ann(b(T::JIsExt(b(a2), b(f2), b(x2))), b(self.qt(sc, ty))))
            }
            (T::JIsExt(..), _) => Err(former("an identity type on a JType")),
            _ => {
                let (t2, actual) = self.infer(sc, t)?;
                self.expect_conv(sc, t, ty, &actual)?;
                Ok(t2)
            }
        }
    }

    /// Infer the type of an eliminator's scrutinee, falling back to the
    /// domain of the motive when the scrutinee is an introduction form.
    fn infer_scrutinee(&self, sc: &Scope, z: &Term, motive: &Term) -> Res<(Term, Val)> {
        match self.infer(sc, z) {
            Err(e) if e.kind == TypeErrorKind::CannotInfer => {
                let (_, m_ty) = self.infer(sc, motive).map_err(|_| e.clone())?;
                match &*m_ty {
                    Value::Pi(dom, _) => {
                        let z2 = self.check(sc, z, dom)?;
                        Ok((z2, dom.clone()))
                    }
                    _ => Err(e),
                }
            }
            other => other,
        }
    }

    pub fn infer(&self, sc: &Scope, t: &Term) -> Res<(Term, Val)> {
        use Term as T;
        match t {
            T::Var(i) => {
                let n = sc.depth();
                if *i < n {
                    Ok((t.clone(), sc.types[n - 1 - i].clone()))
                } else {
                    Err(self.err(sc, t, TypeErrorKind::UnboundVariable(*i)))
                }
            }
            T::Ref(name) => match self.ev.globals.get(name) {
                Some(g) => Ok((t.clone(), g.ty_val.clone())),
                None => Err(self.err(sc, t, TypeErrorKind::UnknownDefinition(name.clone()))),
            },
            T::Const(a) => Ok((t.clone(), rules::axiom_template(*a).inst(&self.ev, &[]))),
            T::Type => Err(self.err(sc, t, TypeErrorKind::LargeType)),
            T::Pi(..) | T::Sigma(..) => match self.check_type(sc, t)? {
                (t2, Sort::Type) => Ok((t2, mk(Value::Type))),
                (_, Sort::Kind) => Err(self.err(sc, t, TypeErrorKind::LargeType)),
            },
            T::Unit | T::Empty => Ok((t.clone(), mk(Value::Type))),
            T::Star => Ok((t.clone(), mk(Value::Unit))),
            T::App(f, a) => {
                let (f2, f_ty) = self.infer(sc, f)?;
                let Value::Pi(dom, cod) = &*f_ty else {
                    return Err(self.err(sc, f, TypeErrorKind::NotAFunction { ty: self.qt(sc, &f_ty) }));
                };
                let a2 = self.check(sc, a, dom)?;
                let av = self.eval(sc, &a2);
                Ok((T::App(b(f2), b(a2)), self.ev.close(cod, av)))
            }
            T::Fst(p) | T::Snd(p) => {
                let (p2, p_ty) = self.infer(sc, p)?;
                let Value::Sigma(a, cod) = &*p_ty else {
                    return Err(self.err(sc, p, TypeErrorKind::NotAPair { ty: self.qt(sc, &p_ty) }));
                };
                if matches!(t, T::Fst(_)) {
                    Ok((T::Fst(b(p2)), a.clone()))
                } else {
                    let first = self.ev.fst(&self.eval(sc, &p2));
                    Ok((T::Snd(b(p2)), self.ev.close(cod, first)))
                }
            }
            T::Id(a, x, y) => {
                let a2 = self.check_small(sc, a)?;
                let av = self.eval(sc, &a2);
                let x2 = self.check(sc, x, &av)?;
                let y2 = self.check(sc, y, &av)?;
                Ok((T::Id(b(a2), b(x2), b(y2)), mk(Value::Type)))
            }
            T::Refl(x) => {
                let (x2, a) = self.infer(sc, x)?;
                let xv = self.eval(sc, &x2);
                Ok((T::Refl(b(x2)), mk(Value::Id(a, xv.clone(), xv))))
            }
            T::J(m, d, y, p) => {
                let (p2, p_ty) = self.infer(sc, p)?;
                let Value::Id(a, x, y0) = &*p_ty else {
                    return Err(self.err(
                        sc,
                        p,
                        TypeErrorKind::WrongFormer { expected: "an identity type", ty: self.qt(sc, &p_ty) },
                    ));
                };
                let y2 = self.check(sc, y, a)?;
                let yv = self.eval(sc, &y2);
                self.expect_conv(sc, y, y0, &yv)?;
                let m_ty = rules::J_MOTIVE.inst(&self.ev, &[a.clone(), x.clone()]);
                let m2 = self.check_motive(sc, m, &m_ty)?;
                let mv = self.eval(sc, &m2);
                let refl = mk(Value::Refl(x.clone()));
                let d2 = self.check(sc, d, &self.ev.apply2(&mv, x, &refl))?;
                let pv = self.eval(sc, &p2);
                let out = T::J(b(m2), b(d2), b(y2), b(p2));
                Ok((out, self.ev.apply2(&mv, &yv, &pv)))
            }
            T::Absurd(c, e) => {
                let (c2, _) = self.check_type(sc, c)?;
                let e2 = self.check(sc, e, &mk(Value::Empty))?;
                let cv = self.eval(sc, &c2);
                Ok((T::Absurd(b(c2), b(e2)), cv))
            }
            T::Sum(l, r) => {
                let l2 = self.check_small(sc, l)?;
                let r2 = self.check_small(sc, r)?;
                Ok((T::Sum(b(l2), b(r2)), mk(Value::Type)))
            }
            T::Case(m, l, r, s) => {
                let (s2, s_ty) = self.infer_scrutinee(sc, s, m)?;
                let Value::Sum(a, c) = &*s_ty else {
                    return Err(self.err(
                        sc,
                        s,
                        TypeErrorKind::WrongFormer { expected: "a sum type", ty: self.qt(sc, &s_ty) },
                    ));
                };
                let args = vec![a.clone(), c.clone()];
                let m2 = self.check_motive(sc, m, &rules::CASE_MOTIVE.inst(&self.ev, &args))?;
                let mv = self.eval(sc, &m2);
                let l_ty = rules::CASE_LEFT.inst(&self.ev, &with(args.clone(), &[&mv]));
                let r_ty = rules::CASE_RIGHT.inst(&self.ev, &with(args, &[&mv]));
                let l2 = self.check(sc, l, &l_ty)?;
                let r2 = self.check(sc, r, &r_ty)?;
                let sv = self.eval(sc, &s2);
                Ok((T::Case(b(m2), b(l2), b(r2), b(s2)), self.ev.apply(&mv, &sv)))
            }
            T::Push(a, l, r, f, g) => {
                let fam = |parameter, e: TypeError| {
                    self.err(sc, t, TypeErrorKind::IllFormedFamily { former: "Push", parameter, cause: Box::new(e) })
                };
                let a2 = self.check_small(sc, a).map_err(|e| fam("A", e))?;
                let l2 = self.check_small(sc, l).map_err(|e| fam("B", e))?;
                let r2 = self.check_small(sc, r).map_err(|e| fam("C", e))?;
                let (av, lv, rv) = (self.eval(sc, &a2), self.eval(sc, &l2), self.eval(sc, &r2));
                let f_ty = rules::ARROW.inst(&self.ev, &[av.clone(), lv]);
                let g_ty = rules::ARROW.inst(&self.ev, &[av, rv]);
                let f2 = self.check(sc, f, &f_ty).map_err(|e| fam("f", e))?;
                let g2 = self.check(sc, g, &g_ty).map_err(|e| fam("g", e))?;
                let out = T::Push(b(a2), b(l2), b(r2), b(f2), b(g2));
                Ok((out, mk(Value::Type)))
            }
            T::PInd(m, l, r, g, z) => {
                let (z2, z_ty) = self.infer_scrutinee(sc, z, m)?;
                let Value::Push(p) = &*z_ty else {
                    return Err(self.err(
                        sc,
                        z,
                        TypeErrorKind::WrongFormer { expected: "a pushout type", ty: self.qt(sc, &z_ty) },
                    ));
                };
                let args = push_args(p);
                let m2 = self.check_motive(sc, m, &rules::PUSH_MOTIVE.inst(&self.ev, &args))?;
                let mv = self.eval(sc, &m2);
                let l_ty = rules::PIND_INL.inst(&self.ev, &with(args.clone(), &[&mv]));
                let l2 = self.check(sc, l, &l_ty)?;
                let r_ty = rules::PIND_INR.inst(&self.ev, &with(args.clone(), &[&mv]));
                let r2 = self.check(sc, r, &r_ty)?;
                let (lv, rv) = (self.eval(sc, &l2), self.eval(sc, &r2));
                let g_ty = rules::PIND_GLUE.inst(&self.ev, &with(args, &[&mv, &lv, &rv]));
                let g2 = self.check(sc, g, &g_ty)?;
                let zv = self.eval(sc, &z2);
                let out = T::PInd(b(m2), b(l2), b(r2), b(g2), b(z2));
                Ok((out, self.ev.apply(&mv, &zv)))
            }
            T::JType(a, dom, cod, g, x) => {
                let fam = |parameter, e: TypeError| {
                    self.err(sc, t, TypeErrorKind::IllFormedFamily { former: "JType", parameter, cause: Box::new(e) })
                };
                let a2 = self.check_small(sc, a).map_err(|e| fam("A", e))?;
                let av = self.eval(sc, &a2);
                let fam_ty = rules::FAMILY.inst(&self.ev, std::slice::from_ref(&av));
                let dom2 = self.check(sc, dom, &fam_ty).map_err(|e| fam("B", e))?;
                let cod2 = self.check(sc, cod, &fam_ty).map_err(|e| fam("C", e))?;
                let map_ty = rules::FAMILY_MAP.inst(&self.ev, &[av, self.eval(sc, &dom2), self.eval(sc, &cod2)]);
                let g2 = self.check(sc, g, &map_ty).map_err(|e| fam("G", e))?;
                let x2 = self.check_small(sc, x).map_err(|e| fam("X", e))?;
                let out = T::JType(b(a2), b(dom2), b(cod2), b(g2), b(x2));
                Ok((out, mk(Value::Type)))
            }
            T::JInd(m, n, r, s, z) => self.infer_jind(sc, t, m, n, r, s, z),
            T::Ann(x, ty) => {
                let (ty2, _) = self.check_type(sc, ty)?;
                let tyv = self.eval(sc, &ty2);
                let x2 = self.check(sc, x, &tyv)?;
                let out = match x2 {
                    T::Ann(..) => x2,
                    other => T::Ann(b(other), b(ty2)),
                };
                Ok((out, tyv))
            }
            T::Lam(_)
            | T::Pair(..)
            | T::Inl(_)
            | T::Inr(_)
            | T::PInl(_)
            | T::PInr(_)
            | T::PGlue(_)
            | T::JAlpha(_)
            | T::JExt(..)
            | T::JIsExt(..) => Err(self.err(sc, t, TypeErrorKind::CannotInfer)),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn infer_jind(&self, sc: &Scope, t: &Term, m: &Term, n: &Term, r: &Term, s: &Term, z: &Term) -> Res<(Term, Val)> {
        let (z2, z_ty) = self.infer_scrutinee(sc, z, m)?;
        let Value::JType(p) = &*z_ty else {
            return Err(self.err(sc, z, TypeErrorKind::WrongFormer { expected: "a JType", ty: self.qt(sc, &z_ty) }));
        };
        let args = jt_args(p);
        let m2 = self.check_motive(sc, m, &rules::JT_MOTIVE.inst(&self.ev, &args))?;
        let mv = self.eval(sc, &m2);
        let n_ty = rules::JIND_ALPHA.inst(&self.ev, &with(args.clone(), &[&mv]));
        let n2 = self.check(sc, n, &n_ty)?;
        let r_ty = rules::JIND_EXT.inst(&self.ev, &with(args.clone(), &[&mv]));
        let r2 = self.check(sc, r, &r_ty)?;
        let rv = self.eval(sc, &r2);
        let s_ty = rules::JIND_ISEXT.inst(&self.ev, &with(args, &[&mv, &rv]));
        let s2 = self
            .check(sc, s, &s_ty)
            .map_err(|e| self.err(sc, t, TypeErrorKind::BoundaryMismatch { cause: Box::new(e) }))?;

        let (nv, sv) = (self.eval(sc, &n2), self.eval(sc, &s2));
        let (inner, x) = sc.bind(p.base.clone());
        let lhs = self.ev.jind(mv.clone(), nv.clone(), rv, sv, &mk(Value::JAlpha(x.clone())));
        let rhs = self.ev.apply(&nv, &x);
        self.instances.borrow_mut().push(JIndInstance {
            context: self.telescope(sc),
            motive: m2.clone(),
            alpha: n2.clone(),
            ext: r2.clone(),
            isext: s2.clone(),
            scrutinee_ty: self.qt(sc, &z_ty),
            holds: self.conv(&inner, &lhs, &rhs),
        });

        let zv = self.eval(sc, &z2);
        let out = Term::JInd(b(m2), b(n2), b(r2), b(s2), b(z2));
        Ok((out, self.ev.apply(&mv, &zv)))
    }
}
