//! Parity tree automata, deterministic parity word automata and finite tree automata.

mod dpw;
mod fta;
mod pta;

use thiserror::Error;

pub use dpw::{compress_colors, conjunction_dpw, dpw_accepts_lasso, lasso_accepts, Dpw, ParityConjunction};
pub use fta::{fta_accepts, fta_ambiguity_witness, fta_determinize, fta_is_unambiguous, FiniteLabeledTree, Fta};
pub use pta::{
    det_pta_for_tree, intersect, moore_reduction, restrict_initials, single_initial, trim_useful, union, Pta,
    Transition, TransitionTable,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("label sort mismatch at node {0}")]
    SortMismatch(String),
    #[error("malformed automaton: {0}")]
    Malformed(String),
}
