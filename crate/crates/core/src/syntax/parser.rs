//! One-pass recursive descent over the token stream.
//!
//! ```text
//! file  ::= ("def" IDENT ":" term ":=" term)*
//! term  ::= "fun" binder+ "=>" term
//!         | "Sig" "(" binder+ ":" term ")" "," term
//!         | "(" binder+ ":" term ")" "->" term
//!         | prod ("->" term)?
//! prod  ::= app ("*" prod)?
//! app   ::= atom atom*
//! atom  ::= IDENT | CONST | KEYWORD "(" term ("," term)* ")"
//!         | "(" term ")" | "(" term ":" term ")" | "(" term "," term ")"
//! ```

use std::collections::HashSet;
use std::sync::Arc;

use super::lexer::{tokenize, Tok, Token};
use super::term::{Axiom, Term};
use super::{Definition, ParseError, SourceFile};

const KEYWORDS: &[&str] = &[
    "def",
    "fun",
    "Sig",
    "Type",
    "Unit",
    "Empty",
    "star",
    "Id",
    "refl",
    "J",
    "fst",
    "snd",
    "absurd",
    "Sum",
    "inl",
    "inr",
    "case",
    "Push",
    "pinl",
    "pinr",
    "pglue",
    "pind",
    "JType",
    "alpha",
    "ext",
    "isext",
    "jind",
    "funext",
    "pglue-beta",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Names of the form `x<digits>` are what the printer invents for binders.
pub fn is_reserved(s: &str) -> bool {
    s.len() > 1 && s.starts_with('x') && s[1..].chars().all(|c| c.is_ascii_digit())
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    locals: Vec<String>,
    globals: HashSet<String>,
}

impl Parser {
    pub fn new(src: &str, globals: HashSet<String>) -> Result<Self, ParseError> {
        Ok(Parser { toks: tokenize(src)?, pos: 0, locals: Vec::new(), globals })
    }

    pub fn with_locals(mut self, locals: &[&str]) -> Self {
        self.locals = locals.iter().map(|s| s.to_string()).collect();
        self
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = self.here();
        ParseError::Syntax { line: t.line, col: t.col, found: t.tok.to_string(), expected: expected.to_string() }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn binder(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("a binder name")),
        }
    }

    fn binders(&mut self) -> Result<Vec<String>, ParseError> {
        let mut names = vec![self.binder()?];
        while matches!(self.peek(), Tok::Ident(s) if !is_keyword(s)) {
            names.push(self.binder()?);
        }
        Ok(names)
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn eof(&mut self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    pub fn file(&mut self) -> Result<SourceFile, ParseError> {
        let mut defs: Vec<Definition> = Vec::new();
        while !self.at_eof() {
            let start = self.here().clone();
            if !self.is_kw("def") {
                return Err(self.error("`def`"));
            }
            self.bump();
            let name_tok = self.here().clone();
            let name = self.binder()?;
            if is_reserved(&name) || name == "_" {
                return Err(ParseError::Syntax {
                    line: name_tok.line,
                    col: name_tok.col,
                    found: format!("`{name}`"),
                    expected: "a definition name (not `_` or of the form x<digits>)".into(),
                });
            }
            if self.globals.contains(&name) {
                return Err(ParseError::DuplicateName { name, line: name_tok.line, col: name_tok.col });
            }
            self.expect(Tok::Colon)?;
            let ty = self.term()?;
            self.expect(Tok::Define)?;
            let body = self.term()?;
            self.globals.insert(name.clone());
            defs.push(Definition { name, ty, body, line: start.line, col: start.col });
        }
        Ok(SourceFile { defs })
    }

    fn with_bound<T>(
        &mut self,
        names: &[String],
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        let depth = self.locals.len();
        self.locals.extend(names.iter().cloned());
        let r = f(self);
        self.locals.truncate(depth);
        r
    }

    pub fn term(&mut self) -> Result<Term, ParseError> {
        if self.is_kw("fun") {
            self.bump();
            let names = self.binders()?;
            self.expect(Tok::FatArrow)?;
            let body = self.with_bound(&names, |p| p.term())?;
            return Ok(names.iter().fold(body, |t, _| Term::lam(t)));
        }
        if self.is_kw("Sig") {
            self.bump();
            self.expect(Tok::LParen)?;
            let names = self.binders()?;
            self.expect(Tok::Colon)?;
            let dom = self.term()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Comma)?;
            return self.telescope(&names, dom, |p| p.term(), Term::sigma);
        }
        if let Some(t) = self.try_pi()? {
            return Ok(t);
        }
        let lhs = self.prod()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.term()?;
            return Ok(Term::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    /// `(x y : A) -> B` is `(x : A) -> (y : A) -> B`, with `A` shifted for the
    /// second binder.
    fn telescope(
        &mut self,
        names: &[String],
        dom: Term,
        body: impl FnOnce(&mut Self) -> Result<Term, ParseError>,
        mk: fn(Term, Term) -> Term,
    ) -> Result<Term, ParseError> {
        let inner = self.with_bound(names, body)?;
        let n = names.len();
        Ok((0..n).rev().fold(inner, |acc, k| mk(dom.shift(k as isize, 0), acc)))
    }

    fn try_pi(&mut self) -> Result<Option<Term>, ParseError> {
        if *self.peek() != Tok::LParen {
            return Ok(None);
        }
        let mut k = 1;
        while matches!(self.peek_at(k), Tok::Ident(s) if !is_keyword(s)) {
            k += 1;
        }
        if k == 1 || *self.peek_at(k) != Tok::Colon {
            return Ok(None);
        }
        let save = self.pos;
        self.bump();
        let names = self.binders()?;
        self.expect(Tok::Colon)?;
        let dom = self.term()?;
        self.expect(Tok::RParen)?;
        if *self.peek() != Tok::Arrow {
            // an annotation such as `(x : A)` or `(f x : B)`
            self.pos = save;
            return Ok(None);
        }
        self.bump();
        Ok(Some(self.telescope(&names, dom, |p| p.term(), Term::pi)?))
    }

    fn prod(&mut self) -> Result<Term, ParseError> {
        let lhs = self.app()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.prod()?;
            return Ok(Term::sigma(lhs, rhs.shift(1, 0)));
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::LParen => true,
            Tok::Ident(s) => !matches!(s.as_str(), "def" | "fun" | "Sig"),
            _ => false,
        }
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut f = self.atom()?;
        while self.starts_atom() {
            let a = self.atom()?;
            f = Term::app(f, a);
        }
        Ok(f)
    }

    fn args(&mut self, kw: &str, n: usize) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                if *self.peek() != Tok::Comma {
                    return Err(self.error(&format!("`,` ({kw} takes {n} arguments)")));
                }
                self.bump();
            }
            out.push(self.term()?);
        }
        if *self.peek() != Tok::RParen {
            return Err(self.error(&format!("`)` ({kw} takes {n} arguments)")));
        }
        self.bump();
        Ok(out)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let tok = self.here().clone();
        match tok.tok {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                match self.peek() {
                    Tok::RParen => {
                        self.bump();
                        Ok(t)
                    }
                    Tok::Colon => {
                        self.bump();
                        let ty = self.term()?;
                        self.expect(Tok::RParen)?;
                        Ok(Term::ann(t, ty))
                    }
                    Tok::Comma => {
                        self.bump();
                        let u = self.term()?;
                        self.expect(Tok::RParen)?;
                        Ok(Term::pair(t, u))
                    }
                    _ => Err(self.error("`)`, `:` or `,`")),
                }
            }
            Tok::Ident(ref s) => {
                self.bump();
                self.ident_atom(s, &tok)
            }
            _ => Err(self.error("a term")),
        }
    }

    fn boxed<const N: usize>(&mut self, kw: &str) -> Result<[Arc<Term>; N], ParseError> {
        let args: Vec<Arc<Term>> = self.args(kw, N)?.into_iter().map(Arc::new).collect();
        Ok(args.try_into().unwrap_or_else(|_| unreachable!()))
    }

    fn ident_atom(&mut self, s: &str, tok: &Token) -> Result<Term, ParseError> {
        use Term as T;
        Ok(match s {
            "Type" => T::Type,
            "Unit" => T::Unit,
            "Empty" => T::Empty,
            "star" => T::Star,
            "funext" => T::Const(Axiom::Funext),
            "pglue-beta" => T::Const(Axiom::PglueBeta),
            "Id" => {
                let [a, x, y] = self.boxed(s)?;
                T::Id(a, x, y)
            }
            "refl" => T::Refl(self.boxed::<1>(s)?.into_iter().next().unwrap()),
            "J" => {
                let [m, d, y, p] = self.boxed(s)?;
                T::J(m, d, y, p)
            }
            "fst" => {
                let [p] = self.boxed(s)?;
                T::Fst(p)
            }
            "snd" => {
                let [p] = self.boxed(s)?;
                T::Snd(p)
            }
            "absurd" => {
                let [c, e] = self.boxed(s)?;
                T::Absurd(c, e)
            }
            "Sum" => {
                let [a, b] = self.boxed(s)?;
                T::Sum(a, b)
            }
            "inl" => {
                let [a] = self.boxed(s)?;
                T::Inl(a)
            }
            "inr" => {
                let [a] = self.boxed(s)?;
                T::Inr(a)
            }
            "case" => {
                let [m, l, r, z] = self.boxed(s)?;
                T::Case(m, l, r, z)
            }
            "Push" => {
                let [a, b, c, f, g] = self.boxed(s)?;
                T::Push(a, b, c, f, g)
            }
            "pinl" => {
                let [a] = self.boxed(s)?;
                T::PInl(a)
            }
            "pinr" => {
                let [a] = self.boxed(s)?;
                T::PInr(a)
            }
            "pglue" => {
                let [a] = self.boxed(s)?;
                T::PGlue(a)
            }
            "pind" => {
                let [m, l, r, g, z] = self.boxed(s)?;
                T::PInd(m, l, r, g, z)
            }
            "JType" => {
                let [a, b, c, g, x] = self.boxed(s)?;
                T::JType(a, b, c, g, x)
            }
            "alpha" => {
                let [x] = self.boxed(s)?;
                T::JAlpha(x)
            }
            "ext" => {
                let [a, f, c] = self.boxed(s)?;
                T::JExt(a, f, c)
            }
            "isext" => {
                let [a, f, b] = self.boxed(s)?;
                T::JIsExt(a, f, b)
            }
            "jind" => {
                let [p, n, r, q, z] = self.boxed(s)?;
                T::JInd(p, n, r, q, z)
            }
            _ if is_keyword(s) || s == "_" => {
                return Err(ParseError::Syntax {
                    line: tok.line,
                    col: tok.col,
                    found: format!("`{s}`"),
                    expected: "a term".into(),
                })
            }
            _ => {
                if let Some(i) = self.locals.iter().rev().position(|n| n == s) {
                    T::Var(i)
                } else if self.globals.contains(s) {
                    T::Ref(s.to_string())
                } else {
                    return Err(ParseError::Scope { name: s.to_string(), line: tok.line, col: tok.col });
                }
            }
        })
    }
}
