//! Surface language: `.mtt` source files, parsing and printing.

mod lexer;
mod parser;
mod print;
mod term;

use std::collections::HashSet;

use thiserror::Error;

pub use parser::{is_keyword, is_reserved};
pub use print::{print, print_in};
pub use term::{Axiom, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: expected {expected}, found {found}")]
    Syntax { line: usize, col: usize, found: String, expected: String },
    #[error("{line}:{col}: unbound identifier `{name}`")]
    Scope { name: String, line: usize, col: usize },
    #[error("{line}:{col}: duplicate definition `{name}`")]
    DuplicateName { name: String, line: usize, col: usize },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. }
            | ParseError::Scope { line, col, .. }
            | ParseError::DuplicateName { line, col, .. } => (*line, *col),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub ty: Term,
    pub body: Term,
    /// Position of the `def` keyword.
    pub line: usize,
    pub col: usize,
}

/// Definitions in source order. Later definitions refer to earlier ones by
/// `Term::Ref`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceFile {
    pub defs: Vec<Definition>,
}

impl SourceFile {
    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.iter().map(|d| d.name.as_str())
    }
}

pub fn parse(text: &str) -> Result<SourceFile, ParseError> {
    parser::Parser::new(text, HashSet::new())?.file()
}

/// Parse a single closed term. `globals` lists the definition names that may
/// be referenced.
pub fn parse_term(text: &str, globals: &HashSet<String>) -> Result<Term, ParseError> {
    parse_term_in(text, &[], globals)
}

/// Parse a term with free variables `locals` (outermost first; the last name
/// becomes `Var(0)`).
pub fn parse_term_in(text: &str, locals: &[&str], globals: &HashSet<String>) -> Result<Term, ParseError> {
    let mut p = parser::Parser::new(text, globals.clone())?.with_locals(locals);
    let t = p.term()?;
    p.eof()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn closed(s: &str) -> Term {
        parse_term(s, &HashSet::new()).unwrap()
    }

    #[test]
    fn identity_definition() {
        let f = parse("def id : Unit -> Unit := fun x => x").unwrap();
        assert_eq!(f.defs.len(), 1);
        assert_eq!(f.defs[0].body, Term::lam(Term::Var(0)));
        assert_eq!(f.defs[0].ty, Term::pi(Term::Unit, Term::Unit));
    }

    #[test]
    fn truncated_input_is_located() {
        let err = parse("def bad := fun x =>").unwrap_err();
        // no type annotation: `:=` where `:` is expected
        assert!(matches!(err, ParseError::Syntax { line: 1, col: 9, .. }), "{err}");
        let err = parse("def bad : Unit := fun x =>").unwrap_err();
        match err {
            ParseError::Syntax { found, col, .. } => {
                assert_eq!(found, "end of input");
                assert_eq!(col, 27);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn scope_and_duplicates() {
        assert!(matches!(
            parse("def a : Unit := b"),
            Err(ParseError::Scope { ref name, line: 1, col: 17 }) if name == "b"
        ));
        assert!(matches!(
            parse("def a : Unit := star\ndef a : Unit := star"),
            Err(ParseError::DuplicateName { line: 2, .. })
        ));
        // later definitions see earlier ones, not the other way round
        let f = parse("def a : Unit := star\ndef b : Unit := a").unwrap();
        assert_eq!(f.defs[1].body, Term::Ref("a".into()));
        assert!(parse("def b : Unit := a\ndef a : Unit := star").is_err());
    }

    #[test]
    fn telescopes_shift_domains() {
        let t = closed("(A B : Type) -> A -> B");
        let expected = Term::pi(Term::Type, Term::pi(Term::Type, Term::pi(Term::Var(1), Term::Var(1))));
        assert_eq!(t, expected);
        let t = closed("(A : Type) -> (x y : A) -> Id(A, x, y)");
        let expected = Term::pi(
            Term::Type,
            Term::pi(Term::Var(0), Term::pi(Term::Var(1), Term::id(Term::Var(2), Term::Var(1), Term::Var(0)))),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn annotations_versus_binders() {
        let t = closed("fun x => (x : Unit)");
        assert_eq!(t, Term::lam(Term::ann(Term::Var(0), Term::Unit)));
        let t = closed("fun f x => (f x : Unit)");
        assert!(matches!(t, Term::Lam(_)));
        let t = closed("(Unit * Empty) -> Unit");
        assert!(matches!(t, Term::Pi(..)));
    }

    #[test]
    fn printer_examples() {
        assert_eq!(print(&Term::lam(Term::Var(0))), "fun x0 => x0");
        assert_eq!(print(&Term::jalpha(Term::Star)), "alpha(star)");
        assert_eq!(print(&closed("Unit -> Unit -> Unit")), "Unit -> Unit -> Unit");
        assert_eq!(print(&closed("(Unit -> Unit) -> Unit")), "(Unit -> Unit) -> Unit");
    }

    #[test]
    fn annotated_arrow_domain_round_trips() {
        let t = Term::arrow(Term::ann(Term::Unit, Term::Type), Term::Unit);
        assert_eq!(closed(&print(&t)), t);
    }

    #[test]
    fn keyword_arity_is_checked() {
        assert!(parse_term("refl(star, star)", &HashSet::new()).is_err());
        assert!(parse_term("Id(Unit, star)", &HashSet::new()).is_err());
    }

    fn arb_term(depth: usize, fuel: u32) -> BoxedStrategy<Term> {
        let mut leaves = vec![
            Just(Term::Type).boxed(),
            Just(Term::Unit).boxed(),
            Just(Term::Star).boxed(),
            Just(Term::Empty).boxed(),
            Just(Term::Const(Axiom::Funext)).boxed(),
            Just(Term::Ref("g".into())).boxed(),
        ];
        if depth > 0 {
            leaves.push((0..depth).prop_map(Term::Var).boxed());
        }
        let leaf = proptest::strategy::Union::new(leaves).boxed();
        if fuel == 0 {
            return leaf;
        }
        let b = Arc::new;
        let inner = arb_term(depth, fuel - 1);
        let under = arb_term(depth + 1, fuel - 1);
        prop_oneof![
            2 => leaf,
            1 => (inner.clone(), under.clone()).prop_map(move |(a, c)| Term::Pi(b(a), b(c))),
            1 => (inner.clone(), under.clone()).prop_map(move |(a, c)| Term::Sigma(b(a), b(c))),
            1 => under.prop_map(move |c| Term::Lam(b(c))),
            1 => (inner.clone(), inner.clone()).prop_map(move |(f, a)| Term::App(b(f), b(a))),
            1 => (inner.clone(), inner.clone()).prop_map(move |(f, a)| Term::Pair(b(f), b(a))),
            1 => (inner.clone(), inner.clone()).prop_map(move |(f, a)| Term::Ann(b(f), b(a))),
            1 => inner.clone().prop_map(move |x| Term::JAlpha(b(x))),
            1 => inner.clone().prop_map(move |x| Term::Fst(b(x))),
            1 => (inner.clone(), inner.clone(), inner.clone())
                .prop_map(move |(x, y, z)| Term::Id(b(x), b(y), b(z))),
            1 => (inner.clone(), inner.clone(), inner.clone(), inner.clone())
                .prop_map(move |(w, x, y, z)| Term::J(b(w), b(x), b(y), b(z))),
            1 => (inner.clone(), inner.clone(), inner.clone(), inner.clone(), inner)
                .prop_map(move |(v, w, x, y, z)| Term::JInd(b(v), b(w), b(x), b(y), b(z))),
        ]
        .boxed()
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(t in arb_term(0, 3)) {
            let globals: HashSet<String> = ["g".to_string()].into_iter().collect();
            let text = print(&t);
            let back = parse_term(&text, &globals);
            prop_assert_eq!(back, Ok(t), "{}", text);
        }
    }
}
