//! The bundled proof corpus.

/// `(file name, source)` for each file in `stdlib/`.
pub const FILES: [(&str, &str); 4] = [
    ("prelude.mtt", include_str!("../../../stdlib/prelude.mtt")),
    ("pathsplit.mtt", include_str!("../../../stdlib/pathsplit.mtt")),
    ("dneg.mtt", include_str!("../../../stdlib/dneg.mtt")),
    ("localize.mtt", include_str!("../../../stdlib/localize.mtt")),
];

/// One corrupted definition per file: `(file, definition, from, to)`.
pub const MUTATIONS: [(&str, &str, &str, &str); 4] = [
    ("prelude.mtt", "ap", "refl(f x), y, p)", "refl(x), y, p)"),
    ("pathsplit.mtt", "pathsplit-to-isequiv", "(fst(ps), pathsplit-to-linv A B f ps)", "(fst(ps), fst(ps))"),
    ("dneg.mtt", "eta", "fun A a g => g a", "fun A a g => a"),
    ("localize.mtt", "J0-classify-alpha", "refl(inl(x))", "refl(inr(star))"),
];

pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// The source of `file` with the given mutation applied.
pub fn mutated(file: &str, from: &str, to: &str) -> Option<String> {
    let text = source(file)?;
    (text.matches(from).count() == 1).then(|| text.replace(from, to))
}
