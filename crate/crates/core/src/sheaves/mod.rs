//! Presheaves of finite sets on finite posets, and the modalities on them.
//!
//! Restriction runs downward, so subterminal presheaves are exactly the
//! down-sets of the poset and a nucleus on the down-set frame is a
//! Grothendieck topology. Limits and colimits are computed pointwise.

mod ops;
mod presheaf;

pub use ops::{
    apply_closed, apply_closed_map, apply_open, apply_open_map, factorize, fiber, fracture_check, glue,
    glue_unglue_is_iso, is_closed_modal, is_open_modal, is_sheaf, is_sheaf_on, lex_probe, lex_witness,
    sheaf_witness_on, sheafify, sheafify_map, support, unglue, unglue_glue_is_iso, verify_factorization, Cospan,
    Factorization, FractureReport, FractureWitness, Glued, GluingData, Pullback, Reflector, SheafWitness, Subterminal,
    Topology,
};
pub use presheaf::{points_of, Presheaf, PresheafMap, NONE};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SheafError {
    #[error("invalid presheaf: {0}")]
    Invalid(String),
    #[error("map is not natural at {upper}>{lower} on element {element}")]
    NotNatural { upper: String, lower: String, element: usize },
    #[error("presheaves live on different posets")]
    PosetMismatch,
    #[error("{0:?} is not down-closed")]
    NotDownSet(Vec<String>),
    #[error("open part is not open-modal at {0}")]
    NotOpenModal(String),
    #[error("closed part is not closed-modal at {0}")]
    NotClosedModal(String),
}
