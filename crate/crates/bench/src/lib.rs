//! Inputs shared by the benchmarks.

use std::sync::Arc;

use modal_core::nuclei::FinitePoset;
use modal_core::sheaves::Presheaf;
use modal_core::syntax::{parse, SourceFile};

/// The bundled corpus, parsed.
pub fn corpus() -> Vec<(&'static str, SourceFile)> {
    modal_core::corpus::FILES.iter().map(|(name, text)| (*name, parse(text).expect("corpus parses"))).collect()
}

/// Every poset with `n` elements, paired with its presheaves of stalk size
/// at most `stalk` up to isomorphism.
pub fn presheaves(n: usize, stalk: usize) -> Vec<(Arc<FinitePoset>, Vec<Presheaf>)> {
    FinitePoset::all_up_to_iso(n)
        .into_iter()
        .map(|p| {
            let p = Arc::new(p);
            let xs = Presheaf::enumerate(&p, stalk);
            (p, xs)
        })
        .collect()
}
