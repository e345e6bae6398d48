use std::collections::HashSet;

use modal_core::kernel::{Context, Kernel, TypeErrorKind};
use modal_core::syntax::{parse, parse_term_in, Term};

fn term(locals: &[&str], src: &str) -> Term {
    parse_term_in(src, locals, &HashSet::new()).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn closed(src: &str) -> Term {
    term(&[], src)
}

/// A kernel and context from a telescope written as `name : type` pairs.
fn scope(k: &Kernel, vars: &[(&str, &str)]) -> (Context, Vec<&'static str>) {
    let mut names: Vec<&'static str> = Vec::new();
    let mut ctx = Context::empty();
    for (n, ty) in vars {
        let t = term(&names, ty);
        ctx = k.extend(&ctx, &t).unwrap();
        names.push(Box::leak(n.to_string().into_boxed_str()));
    }
    (ctx, names)
}

const F0: &str = "JType(Unit, fun u => Empty, fun u => Unit, fun u e => absurd(Unit, e), Unit)";

#[test]
fn infer_annotated_identity() {
    let k = Kernel::new();
    let t = closed("(fun x => x : Unit -> Unit)");
    assert_eq!(k.infer(&Context::empty(), &t).unwrap(), closed("Unit -> Unit"));
}

#[test]
fn alpha_at_the_empty_to_unit_family() {
    let k = Kernel::new();
    let jt = closed(F0);
    let t = Term::ann(Term::jalpha(Term::Star), jt.clone());
    assert_eq!(k.infer(&Context::empty(), &t).unwrap(), jt);
    // ext(star, f, star) needs f : Empty -> JType, i.e. the second summand of X + 1
    let ext = closed(&format!("(ext(star, fun e => absurd({F0}, e), star) : {F0})"));
    assert_eq!(k.infer(&Context::empty(), &ext).unwrap(), jt);
}

#[test]
fn applying_star_is_not_a_function() {
    let k = Kernel::new();
    let err = k.infer(&Context::empty(), &closed("star star")).unwrap_err();
    assert!(matches!(err.kind, TypeErrorKind::NotAFunction { .. }), "{err}");
}

#[test]
fn check_identity_and_star_against_empty() {
    let k = Kernel::new();
    let ctx = Context::empty();
    k.check(&ctx, &Term::lam(Term::Var(0)), &closed("Unit -> Unit")).unwrap();
    let err = k.check(&ctx, &Term::Star, &Term::Empty).unwrap_err();
    match err.kind {
        TypeErrorKind::Mismatch { expected, actual } => {
            assert_eq!(expected, Term::Empty);
            assert_eq!(actual, Term::Unit);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn j_on_refl_is_the_base() {
    let k = Kernel::new();
    let (ctx, n) = scope(&k, &[("A", "Type"), ("a", "A"), ("P", "A -> Type"), ("d", "P a")]);
    let t = term(&n, "J(fun y q => P y, d, a, refl(a))");
    assert_eq!(k.normalize(&ctx, &t, &term(&n, "P a")).unwrap(), term(&n, "d"));
}

const JIND_SCOPE: &[(&str, &str)] = &[
    ("A", "Type"),
    ("B", "A -> Type"),
    ("C", "A -> Type"),
    ("G", "(a : A) -> B a -> C a"),
    ("X", "Type"),
    ("P", "JType(A, B, C, G, X) -> Type"),
    ("N", "(x : X) -> P (alpha(x))"),
    (
        "R",
        "(a : A) -> (f : B a -> JType(A, B, C, G, X)) -> ((b : B a) -> P (f b)) -> \
         (c : C a) -> P ((ext(a, f, c) : JType(A, B, C, G, X)))",
    ),
    (
        "S",
        "(a : A) -> (f : B a -> JType(A, B, C, G, X)) -> (f' : (b : B a) -> P (f b)) -> \
         (b : B a) -> Id(P (f b), J(fun y q => P y, R a f f' (G a b), f b, \
         (isext(a, f, b) : Id(JType(A, B, C, G, X), \
         (ext(a, f, G a b) : JType(A, B, C, G, X)), f b))), f' b)",
    ),
];

#[test]
fn jind_computes_on_alpha() {
    let k = Kernel::new();
    let mut vars = JIND_SCOPE.to_vec();
    vars.push(("x", "X"));
    let (ctx, n) = scope(&k, &vars);
    let lhs = term(&n, "jind(P, N, R, S, alpha(x))");
    let rhs = term(&n, "N x");
    let ty = term(&n, "P (alpha(x))");
    assert_eq!(k.normalize(&ctx, &lhs, &ty).unwrap(), rhs);
    assert!(k.defeq(&ctx, &lhs, &rhs, &ty).unwrap());
}

#[test]
fn jind_blocks_on_ext() {
    let k = Kernel::new();
    let mut vars = JIND_SCOPE.to_vec();
    vars.extend([("a", "A"), ("f", "B a -> JType(A, B, C, G, X)"), ("c", "C a")]);
    let (ctx, n) = scope(&k, &vars);
    let t = term(&n, "jind(P, N, R, S, ext(a, f, c))");
    let ty = term(&n, "P ((ext(a, f, c) : JType(A, B, C, G, X)))");
    let nf = k.normalize(&ctx, &t, &ty).unwrap();
    assert!(matches!(nf, Term::JInd(..)), "{nf}");
    // the stuck form is itself well typed and already normal
    k.check(&ctx, &nf, &ty).unwrap();
    assert_eq!(k.normalize(&ctx, &nf, &ty).unwrap(), nf);
}

#[test]
fn pind_computes_on_pinl() {
    let k = Kernel::new();
    let push = "Push(A, B, C, f, g)";
    let (ctx, n) = scope(
        &k,
        &[
            ("A", "Type"),
            ("B", "Type"),
            ("C", "Type"),
            ("f", "A -> B"),
            ("g", "A -> C"),
            ("P", &format!("{push} -> Type")),
            ("l", "(b : B) -> P (pinl(b))"),
            ("r", "(c : C) -> P (pinr(c))"),
            (
                "s",
                &format!(
                    "(a : A) -> Id(P (pinr(g a)), J(fun y q => P y, l (f a), pinr(g a), \
                     (pglue(a) : Id({push}, pinl(f a), pinr(g a)))), r (g a))"
                ),
            ),
            ("b", "B"),
        ],
    );
    let t = term(&n, "pind(P, l, r, s, pinl(b))");
    let ty = term(&n, "P (pinl(b))");
    assert_eq!(k.normalize(&ctx, &t, &ty).unwrap(), term(&n, "l b"));
}

#[test]
fn eta_for_functions_and_pairs() {
    let k = Kernel::new();
    let (ctx, n) = scope(&k, &[("A", "Type"), ("f", "A -> A"), ("p", "A * A")]);
    let ty = term(&n, "A -> A");
    assert!(k.defeq(&ctx, &term(&n, "fun x => f x"), &term(&n, "f"), &ty).unwrap());
    assert!(k.defeq(&ctx, &term(&n, "(fst(p), snd(p))"), &term(&n, "p"), &term(&n, "A * A")).unwrap());
    assert!(!k.defeq(&ctx, &term(&n, "fun x => x"), &term(&n, "f"), &ty).unwrap());
    assert!(k.defeq(&Context::empty(), &Term::Star, &Term::Star, &Term::Unit).unwrap());
}

#[test]
fn normal_forms_are_eta_long() {
    let k = Kernel::new();
    let (ctx, n) = scope(&k, &[("A", "Type"), ("f", "(A -> A) -> A")]);
    let nf = k.normalize(&ctx, &term(&n, "f"), &term(&n, "(A -> A) -> A")).unwrap();
    assert_eq!(nf, term(&n, "fun g => f (fun x => g x)"));
}

#[test]
fn large_elimination_through_motives() {
    let src = "
def Code : Sum(Unit, Unit) -> Type := fun s => case(fun z => Type, fun u => Unit, fun u => Empty, s)
def here : Code (inl(star)) := star
def not-there : Code (inr(star)) -> Empty := fun e => e
";
    let mut k = Kernel::new();
    let report = k.check_file(&parse(src).unwrap());
    assert!(report.ok(), "{:?}", report.error.map(|e| e.error.to_string()));
}

#[test]
fn type_is_not_a_small_type() {
    let k = Kernel::new();
    let err = k.check(&Context::empty(), &closed("Type -> Type"), &Term::Type).unwrap_err();
    assert_eq!(err.kind, TypeErrorKind::LargeType);
    let err = k.infer(&Context::empty(), &closed("Id(Type, Unit, Unit)")).unwrap_err();
    assert_eq!(err.kind, TypeErrorKind::LargeType);
}

#[test]
fn ill_formed_families_are_reported() {
    let k = Kernel::new();
    let bad = closed("JType(Unit, fun u => Empty, fun u => Unit, fun u e => e, Unit)");
    let err = k.infer(&Context::empty(), &bad).unwrap_err();
    match err.kind {
        TypeErrorKind::IllFormedFamily { former, parameter, .. } => {
            assert_eq!((former, parameter), ("JType", "G"));
        }
        other => panic!("{other:?}"),
    }
    let bad = closed("Push(Unit, Unit, Empty, fun x => x, fun x => x)");
    let err = k.infer(&Context::empty(), &bad).unwrap_err();
    assert!(matches!(err.kind, TypeErrorKind::IllFormedFamily { former: "Push", parameter: "g", .. }));
}

#[test]
fn isext_branch_must_lie_over_isext() {
    let k = Kernel::new();
    let mut vars = JIND_SCOPE.to_vec();
    let r_ty = JIND_SCOPE[7].1;
    vars.extend([("R2", r_ty), ("z", "JType(A, B, C, G, X)")]);
    let (ctx, n) = scope(&k, &vars);
    let ty = term(&n, "P z");
    k.check(&ctx, &term(&n, "jind(P, N, R, S, z)"), &ty).unwrap();
    // S lies over R, not over R2
    let err = k.check(&ctx, &term(&n, "jind(P, N, R2, S, z)"), &ty).unwrap_err();
    assert!(matches!(err.kind, TypeErrorKind::BoundaryMismatch { .. }), "{err}");
    assert_eq!(err.root().name(), "Mismatch");
}

#[test]
fn scope_errors_name_the_variable() {
    let k = Kernel::new();
    let err = k.infer(&Context::empty(), &Term::Var(3)).unwrap_err();
    assert_eq!(err.kind, TypeErrorKind::UnboundVariable(3));
}

#[test]
fn axioms_have_well_formed_types() {
    let k = Kernel::new();
    for name in ["funext", "pglue-beta"] {
        let t = closed(name);
        let ty = k.infer(&Context::empty(), &t).unwrap();
        k.check(&Context::empty(), &t, &ty).unwrap();
    }
}
