//! Finite frames of down-sets and the nuclei on them.
//!
//! Modalities on propositions in a presheaf topos over a finite poset are
//! nuclei on its frame of down-sets. The modality order is inclusion of
//! closed elements, which reverses the pointwise order of the operators.

mod frame;
mod nucleus;
mod poset;

pub use frame::{downset_frame, Frame, MAX_FRAME};
pub use nucleus::{
    check_nucleus, coframe_check, enumerate_nuclei, fixed_points, fracture_taut, fracture_taut_witness, is_nucleus,
    is_strong_closure, mk_closed, mk_dneg, mk_open, modality_join, modality_meet, modality_meet_all, CoframeWitness,
    FixedPoints, Nucleus, Violation, MAX_COFRAME_NUCLEI, MAX_EXHAUSTIVE,
};
pub use poset::{default_names, members, permutations, FinitePoset, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NucleiError {
    #[error("invalid poset: {0}")]
    PosetInvalid(String),
    #[error("{what} has {size} elements, more than the limit of {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("{0:?} is not down-closed")]
    NotDownSet(Vec<String>),
}
