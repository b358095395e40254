//! Contractions with a bounded effect on one persistence diagram.

mod local;
mod psi;
mod schedule;

pub use local::{is_p_eps_admissible, window, Window};
pub use psi::psi_chain;
pub use schedule::{
    admissible_windows, compatible_set, compatible_windows, select_disjoint, simplify, simplify_with, SimplificationLog, StageRecord,
};

use thiserror::Error;

use crate::chain::ChainError;
use crate::complex::Edge;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabilityError {
    #[error("edge {0} is not in the complex")]
    UnknownEdge(Edge),
    #[error("edge {0} violates the link condition")]
    LinkConditionViolated(Edge),
    #[error("dimension {p} exceeds complex dimension {top}")]
    DimensionOutOfRange { p: usize, top: usize },
    #[error("chain has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Chain(#[from] ChainError),
}
