//! Pretty printer producing concrete syntax that parses back to the same AST.
//!
//! Binders are named `x<depth>`, so names never shadow one another.

use super::term::Term;

const TERM: u8 = 0;
const PROD: u8 = 1;
const APP: u8 = 2;
const ATOM: u8 = 3;

pub fn print(t: &Term) -> String {
    print_in(t, 0)
}

/// Print a term whose free variables `0..depth` are named `x0..x{depth-1}`
/// (outermost first).
pub fn print_in(t: &Term, depth: usize) -> String {
    let mut p = Printer { names: (0..depth).map(|i| format!("x{i}")).collect() };
    p.go(t, TERM)
}

struct Printer {
    names: Vec<String>,
}

impl Printer {
    fn fresh(&self) -> String {
        format!("x{}", self.names.len())
    }

    fn under<R>(&mut self, f: impl FnOnce(&mut Self, &str) -> R) -> R {
        let n = self.fresh();
        self.names.push(n.clone());
        let r = f(self, &n);
        self.names.pop();
        r
    }

    fn form(&mut self, kw: &str, args: &[&Term]) -> String {
        let parts: Vec<String> = args.iter().map(|a| self.go(a, TERM)).collect();
        format!("{kw}({})", parts.join(", "))
    }

    fn go(&mut self, t: &Term, prec: u8) -> String {
        use Term::*;
        let (s, level) = match t {
            Var(i) => {
                let n = self.names.len();
                let s = if *i < n { self.names[n - 1 - i].clone() } else { format!("?{i}") };
                (s, ATOM)
            }
            Ref(name) => (name.clone(), ATOM),
            Const(a) => (a.name().to_string(), ATOM),
            Type => ("Type".into(), ATOM),
            Unit => ("Unit".into(), ATOM),
            Empty => ("Empty".into(), ATOM),
            Star => ("star".into(), ATOM),
            Lam(_) => {
                let mut body = t;
                let mut binders = Vec::new();
                let depth = self.names.len();
                while let Lam(inner) = body {
                    let n = self.fresh();
                    self.names.push(n.clone());
                    binders.push(n);
                    body = inner;
                }
                let b = self.go(body, TERM);
                self.names.truncate(depth);
                (format!("fun {} => {b}", binders.join(" ")), TERM)
            }
            Pi(a, b) if b.has_free(0) => {
                let da = self.go(a, TERM);
                let s = self.under(|p, n| format!("({n} : {da}) -> {}", p.go(b, TERM)));
                (s, TERM)
            }
            Pi(a, b) => {
                let mut da = self.go(a, PROD);
                if matches!(**a, Ann(..)) {
                    da = format!("({da})");
                }
                let db = self.under(|p, _| p.go(b, TERM));
                (format!("{da} -> {db}"), TERM)
            }
            Sigma(a, b) if b.has_free(0) => {
                let da = self.go(a, TERM);
                let s = self.under(|p, n| format!("Sig ({n} : {da}), {}", p.go(b, TERM)));
                (s, TERM)
            }
            Sigma(a, b) => {
                let da = self.go(a, APP);
                let db = self.under(|p, _| p.go(b, PROD));
                (format!("{da} * {db}"), PROD)
            }
            App(f, a) => {
                let df = self.go(f, APP);
                let da = self.go(a, ATOM);
                (format!("{df} {da}"), APP)
            }
            Pair(a, b) => {
                let (x, y) = (self.go(a, TERM), self.go(b, TERM));
                (format!("({x}, {y})"), ATOM)
            }
            Ann(a, b) => {
                let (x, y) = (self.go(a, TERM), self.go(b, TERM));
                (format!("({x} : {y})"), ATOM)
            }
            Fst(p) => (self.form("fst", &[p]), ATOM),
            Snd(p) => (self.form("snd", &[p]), ATOM),
            Id(a, x, y) => (self.form("Id", &[a, x, y]), ATOM),
            Refl(x) => (self.form("refl", &[x]), ATOM),
            J(m, d, y, p) => (self.form("J", &[m, d, y, p]), ATOM),
            Absurd(c, e) => (self.form("absurd", &[c, e]), ATOM),
            Sum(a, b) => (self.form("Sum", &[a, b]), ATOM),
            Inl(x) => (self.form("inl", &[x]), ATOM),
            Inr(x) => (self.form("inr", &[x]), ATOM),
            Case(m, l, r, s) => (self.form("case", &[m, l, r, s]), ATOM),
            Push(a, b, c, f, g) => (self.form("Push", &[a, b, c, f, g]), ATOM),
            PInl(x) => (self.form("pinl", &[x]), ATOM),
            PInr(x) => (self.form("pinr", &[x]), ATOM),
            PGlue(x) => (self.form("pglue", &[x]), ATOM),
            PInd(m, l, r, g, z) => (self.form("pind", &[m, l, r, g, z]), ATOM),
            JType(a, b, c, g, x) => (self.form("JType", &[a, b, c, g, x]), ATOM),
            JAlpha(x) => (self.form("alpha", &[x]), ATOM),
            JExt(a, f, c) => (self.form("ext", &[a, f, c]), ATOM),
            JIsExt(a, f, b) => (self.form("isext", &[a, f, b]), ATOM),
            JInd(p, n, r, s, z) => (self.form("jind", &[p, n, r, s, z]), ATOM),
        };
        if level < prec {
            format!("({s})")
        } else {
            s
        }
    }
}
