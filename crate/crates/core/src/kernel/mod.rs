//! Type checking and normalization by evaluation for the object theory.
//!
//! The theory is MLTT with Π, Σ, identity types, `Unit`, `Empty` and binary
//! sums, plus pushouts and the localization type `JType`. There are no
//! universes: `Type` is a sort, and large eliminations go through motives.
//! `jind` computes on `alpha` only; `pind` computes on point constructors,
//! with its `pglue` rule supplied by the axiom `pglue-beta`.

mod check;
mod error;
mod eval;
mod quote;
mod rules;
mod value;

pub use check::{JIndInstance, Sort};
pub use error::{TypeError, TypeErrorKind};
pub use eval::{Global, Globals};

use check::{Checker, Scope};
use eval::Eval;
use value::Val;

use crate::syntax::{Definition, SourceFile, Term};

/// A telescope of types, each checked against its prefix.
#[derive(Debug, Clone, Default)]
pub struct Context {
    scope: Scope,
    entries: Vec<Term>,
}

impl Context {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The elaborated types, outermost first.
    pub fn entries(&self) -> &[Term] {
        &self.entries
    }
}

/// A definition that passed the checker.
#[derive(Debug, Clone)]
pub struct CheckedDef {
    pub name: String,
    pub line: usize,
    pub col: usize,
    pub instances: Vec<JIndInstance>,
}

#[derive(Debug, Clone)]
pub struct FailedDef {
    pub name: String,
    pub line: usize,
    pub col: usize,
    pub error: TypeError,
}

/// Result of checking a file: the definitions accepted before the first
/// failure, and that failure if any.
#[derive(Debug, Clone, Default)]
pub struct FileReport {
    pub checked: Vec<CheckedDef>,
    pub error: Option<FailedDef>,
}

impl FileReport {
    pub fn ok(&self) -> bool {
        self.error.is_none()
    }
}

/// The checker together with the definitions accepted so far.
#[derive(Debug, Clone, Default)]
pub struct Kernel {
    globals: Globals,
}

impl Kernel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn globals(&self) -> &Globals {
        &self.globals
    }

    fn checker(&self) -> Checker<'_> {
        Checker::new(Eval::new(&self.globals))
    }

    /// Extend `ctx` by a variable of type `ty`.
    pub fn extend(&self, ctx: &Context, ty: &Term) -> Result<Context, TypeError> {
        let c = self.checker();
        let (ty2, _) = c.check_type(&ctx.scope, ty)?;
        let v = c.ev.eval(&ctx.scope.env, &ty2);
        let (scope, _) = ctx.scope.bind(v);
        let mut entries = ctx.entries.clone();
        entries.push(ty2);
        Ok(Context { scope, entries })
    }

    pub fn context(&self, telescope: &[Term]) -> Result<Context, TypeError> {
        telescope.iter().try_fold(Context::empty(), |ctx, ty| self.extend(&ctx, ty))
    }

    /// The type of `t`, in normal form.
    pub fn infer(&self, ctx: &Context, t: &Term) -> Result<Term, TypeError> {
        let c = self.checker();
        let (_, ty) = c.infer(&ctx.scope, t)?;
        Ok(c.ev.quote_type(ctx.len(), &ty))
    }

    fn checked(&self, c: &Checker, ctx: &Context, t: &Term, ty: &Term) -> Result<(Term, Val), TypeError> {
        let (ty2, _) = c.check_type(&ctx.scope, ty)?;
        let tyv = c.ev.eval(&ctx.scope.env, &ty2);
        let t2 = c.check(&ctx.scope, t, &tyv)?;
        Ok((t2, tyv))
    }

    pub fn check(&self, ctx: &Context, t: &Term, ty: &Term) -> Result<(), TypeError> {
        self.checked(&self.checker(), ctx, t, ty).map(|_| ())
    }

    /// The β-normal, η-long form of `t : ty`.
    pub fn normalize(&self, ctx: &Context, t: &Term, ty: &Term) -> Result<Term, TypeError> {
        let c = self.checker();
        let (t2, tyv) = self.checked(&c, ctx, t, ty)?;
        let v = c.ev.eval(&ctx.scope.env, &t2);
        Ok(c.ev.quote(ctx.len(), Some(&tyv), &v))
    }

    /// Whether `a` and `b` have the same normal form at `ty`.
    pub fn defeq(&self, ctx: &Context, a: &Term, b: &Term, ty: &Term) -> Result<bool, TypeError> {
        Ok(self.normalize(ctx, a, ty)? == self.normalize(ctx, b, ty)?)
    }

    /// Check a definition and add it to the environment, returning the `jind`
    /// instances met while checking it.
    pub fn define(&mut self, def: &Definition) -> Result<Vec<JIndInstance>, TypeError> {
        let c = self.checker();
        let scope = Scope::default();
        let (ty, _) = c.check_type(&scope, &def.ty)?;
        let ty_val = c.ev.eval(&scope.env, &ty);
        let body = c.check(&scope, &def.body, &ty_val)?;
        let value = c.ev.eval(&scope.env, &body);
        let instances = c.instances.into_inner();
        self.globals.insert(def.name.clone(), Global { ty, body, ty_val, value });
        Ok(instances)
    }

    /// Check every definition in order, stopping at the first error.
    pub fn check_file(&mut self, file: &SourceFile) -> FileReport {
        let mut report = FileReport::default();
        for def in &file.defs {
            match self.define(def) {
                Ok(instances) => {
                    report.checked.push(CheckedDef { name: def.name.clone(), line: def.line, col: def.col, instances })
                }
                Err(error) => {
                    report.error = Some(FailedDef { name: def.name.clone(), line: def.line, col: def.col, error });
                    break;
                }
            }
        }
        report
    }

    /// The declared type of a checked definition.
    pub fn type_of(&self, name: &str) -> Option<&Term> {
        self.globals.get(name).map(|g| &g.ty)
    }

    /// The normal form of a checked definition's body.
    pub fn normal_form(&self, name: &str) -> Option<Term> {
        let g = self.globals.get(name)?;
        let ev = Eval::new(&self.globals);
        Some(ev.quote(0, Some(&g.ty_val), &g.value))
    }

    /// The sort of a type in `ctx`.
    pub fn sort_of(&self, ctx: &Context, ty: &Term) -> Result<Sort, TypeError> {
        Ok(self.checker().check_type(&ctx.scope, ty)?.1)
    }
}
