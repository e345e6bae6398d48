use std::fmt;

use crate::syntax::{print_in, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeErrorKind {
    UnboundVariable(usize),
    UnknownDefinition(String),
    /// Applied, or checked as a lambda, at a type that is not a Π-type.
    NotAFunction {
        ty: Term,
    },
    /// Projected, or checked as a pair, at a type that is not a Σ-type.
    NotAPair {
        ty: Term,
    },
    Mismatch {
        expected: Term,
        actual: Term,
    },
    /// A `Push` or `JType` parameter fails its own typing.
    IllFormedFamily {
        former: &'static str,
        parameter: &'static str,
        cause: Box<TypeError>,
    },
    /// The `isext` branch of `jind` does not lie over `isext`.
    BoundaryMismatch {
        cause: Box<TypeError>,
    },
    /// A constructor or eliminator met a type of the wrong shape.
    WrongFormer {
        expected: &'static str,
        ty: Term,
    },
    /// A term used as a type is not one.
    NotAType {
        ty: Term,
    },
    /// `Type`, or a type quantifying over it, where a small type is required.
    LargeType,
    /// An introduction form in a position where no type is known.
    CannotInfer,
}

/// A typing failure, with the context and the subterm where it arose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError {
    pub kind: TypeErrorKind,
    /// Types of the variables in scope, outermost first.
    pub context: Vec<Term>,
    pub at: Term,
}

impl TypeError {
    pub fn name(&self) -> &'static str {
        match self.kind {
            TypeErrorKind::UnboundVariable(_) => "UnboundVariable",
            TypeErrorKind::UnknownDefinition(_) => "UnknownDefinition",
            TypeErrorKind::NotAFunction { .. } => "NotAFunction",
            TypeErrorKind::NotAPair { .. } => "NotAPair",
            TypeErrorKind::Mismatch { .. } => "Mismatch",
            TypeErrorKind::IllFormedFamily { .. } => "IllFormedFamily",
            TypeErrorKind::BoundaryMismatch { .. } => "BoundaryMismatch",
            TypeErrorKind::WrongFormer { .. } => "WrongFormer",
            TypeErrorKind::NotAType { .. } => "NotAType",
            TypeErrorKind::LargeType => "LargeType",
            TypeErrorKind::CannotInfer => "CannotInfer",
        }
    }

    /// The innermost error, looking through family and boundary wrappers.
    pub fn root(&self) -> &TypeError {
        match &self.kind {
            TypeErrorKind::IllFormedFamily { cause, .. } | TypeErrorKind::BoundaryMismatch { cause } => cause.root(),
            _ => self,
        }
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.context.len();
        let p = |t: &Term| print_in(t, d);
        match &self.kind {
            TypeErrorKind::UnboundVariable(i) => write!(f, "unbound variable index {i}")?,
            TypeErrorKind::UnknownDefinition(n) => write!(f, "unknown definition `{n}`")?,
            TypeErrorKind::NotAFunction { ty } => write!(f, "not a function type: `{}`", p(ty))?,
            TypeErrorKind::NotAPair { ty } => write!(f, "not a pair type: `{}`", p(ty))?,
            TypeErrorKind::Mismatch { expected, actual } => {
                write!(f, "type mismatch: expected `{}`, found `{}`", p(expected), p(actual))?
            }
            TypeErrorKind::IllFormedFamily { former, parameter, cause } => {
                write!(f, "ill-formed parameter {parameter} of {former}: {cause}")?
            }
            TypeErrorKind::BoundaryMismatch { cause } => write!(f, "isext branch does not lie over isext: {cause}")?,
            TypeErrorKind::WrongFormer { expected, ty } => write!(f, "expected {expected}, found `{}`", p(ty))?,
            TypeErrorKind::NotAType { ty } => write!(f, "not a type: its type is `{}`", p(ty))?,
            TypeErrorKind::LargeType => f.write_str("a small type is required")?,
            TypeErrorKind::CannotInfer => f.write_str("cannot infer a type; add an annotation")?,
        }
        write!(f, " at `{}`", p(&self.at))?;
        if !self.context.is_empty() {
            let vars: Vec<String> =
                self.context.iter().enumerate().map(|(i, t)| format!("x{i} : {}", print_in(t, i))).collect();
            write!(f, " in context [{}]", vars.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for TypeError {}
