use std::collections::HashSet;
use std::path::PathBuf;

use modal_core::kernel::{Context, Kernel, TypeErrorKind};
use modal_core::syntax::{parse, parse_term, print, SourceFile, Term};

const FILES: [&str; 4] = ["prelude.mtt", "pathsplit.mtt", "dneg.mtt", "localize.mtt"];

fn stdlib(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../stdlib").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn load(name: &str) -> (SourceFile, Kernel) {
    let file = parse(&stdlib(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    let mut k = Kernel::new();
    let report = k.check_file(&file);
    if let Some(f) = report.error {
        panic!("{name}: `{}` at {}:{}: {}", f.name, f.line, f.col, f.error);
    }
    (file, k)
}

#[test]
fn every_file_checks() {
    for name in FILES {
        load(name);
    }
}

#[test]
fn pathsplit_definition_count() {
    let (file, k) = load("pathsplit.mtt");
    assert_eq!(file.defs.len(), 12);
    assert!(k.type_of("pathsplit-to-isequiv").is_some());
}

// One corrupted definition per file; each must fail with a mismatch at that
// definition.
const MUTATIONS: [(&str, &str, &str, &str); 4] = [
    ("prelude.mtt", "ap", "refl(f x), y, p)", "refl(x), y, p)"),
    ("pathsplit.mtt", "pathsplit-to-isequiv", "(fst(ps), pathsplit-to-linv A B f ps)", "(fst(ps), fst(ps))"),
    ("dneg.mtt", "eta", "fun A a g => g a", "fun A a g => a"),
    ("localize.mtt", "J0-classify-alpha", "refl(inl(x))", "refl(inr(star))"),
];

#[test]
fn mutations_are_rejected_with_a_located_mismatch() {
    for (name, def, from, to) in MUTATIONS {
        let text = stdlib(name);
        assert_eq!(text.matches(from).count(), 1, "{name}: `{from}`");
        let file = parse(&text.replace(from, to)).unwrap();
        let report = Kernel::new().check_file(&file);
        let failed = report.error.unwrap_or_else(|| panic!("{name}: mutation accepted"));
        assert_eq!(failed.name, def);
        assert_eq!(failed.error.root().name(), "Mismatch", "{}", failed.error);
        let expected_line = text[..text.find(&format!("def {def} ")).unwrap()].lines().count() + 1;
        assert_eq!(failed.line, expected_line);
    }
}

#[test]
fn alpha_computation_holds_at_every_jind() {
    let mut total = 0;
    for name in FILES {
        let file = parse(&stdlib(name)).unwrap();
        let mut k = Kernel::new();
        for def in &file.defs {
            let instances = k.define(def).unwrap();
            for inst in instances {
                total += 1;
                assert!(inst.holds, "{name}: {}", def.name);
                // the same equation through the public term-level interface
                let ctx = k.context(&inst.context).unwrap();
                let Term::JType(.., base) = &inst.scrutinee_ty else {
                    panic!("{name}: jind on a non-JType");
                };
                let ctx = k.extend(&ctx, base).unwrap();
                let up = |t: &Term| t.shift(1, 0);
                let jt = up(&inst.scrutinee_ty);
                let point = Term::ann(Term::jalpha(Term::Var(0)), jt.clone());
                let motive = Term::ann(up(&inst.motive), Term::arrow(jt.clone(), Term::Type));
                let lhs = Term::jind(motive.clone(), up(&inst.alpha), up(&inst.ext), up(&inst.isext), point.clone());
                // N : (x : X) -> P (alpha(x)), written under the new binder
                let n_ty = Term::pi(
                    up(base),
                    Term::app(motive.shift(1, 0), Term::ann(Term::jalpha(Term::Var(0)), jt.shift(1, 0))),
                );
                let rhs = Term::app(Term::ann(up(&inst.alpha), n_ty), Term::Var(0));
                let ty = Term::app(motive, point);
                assert!(k.defeq(&ctx, &lhs, &rhs, &ty).unwrap(), "{name}: {}", def.name);
            }
        }
    }
    assert!(total >= 2, "only {total} jind instances in the corpus");
}

#[test]
fn normalization_is_idempotent_and_subject_reducing() {
    for name in FILES {
        let (file, k) = load(name);
        let ctx = Context::empty();
        for def in &file.defs {
            let ty = k.type_of(&def.name).unwrap().clone();
            let nf = k.normal_form(&def.name).unwrap();
            k.check(&ctx, &nf, &ty).unwrap_or_else(|e| panic!("{name}: {}: {e}", def.name));
            assert_eq!(k.normalize(&ctx, &nf, &ty).unwrap(), nf, "{name}: {}", def.name);
            assert_eq!(k.normalize(&ctx, &def.body, &def.ty).unwrap(), nf);
        }
    }
}

#[test]
fn corpus_terms_round_trip_through_the_printer() {
    let none = HashSet::new();
    for name in FILES {
        let (file, k) = load(name);
        let globals: HashSet<String> = file.names().map(str::to_string).collect();
        for def in &file.defs {
            for t in [&def.ty, &def.body] {
                assert_eq!(&parse_term(&print(t), &globals).unwrap(), t);
            }
            let nf = k.normal_form(&def.name).unwrap();
            assert_eq!(parse_term(&print(&nf), &none).unwrap(), nf);
        }
    }
}

#[test]
fn type_errors_carry_their_context() {
    let text = "def f : (A : Type) -> A -> Unit := fun A x => x";
    let report = Kernel::new().check_file(&parse(text).unwrap());
    let err = report.error.unwrap().error;
    assert!(matches!(err.kind, TypeErrorKind::Mismatch { .. }));
    assert_eq!(err.context, vec![Term::Type, Term::Var(0)]);
    assert_eq!(err.at, Term::Var(0));
    assert_eq!(err.to_string(), "type mismatch: expected `Unit`, found `x0` at `x1` in context [x0 : Type, x1 : x0]");
}
