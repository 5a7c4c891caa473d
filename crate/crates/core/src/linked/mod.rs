//! Regularly linked partition sets and their q-difference systems.

mod lpi;
mod series;
mod spec;
mod system;

use thiserror::Error;

use crate::automata::AutomataError;

pub use lpi::{lpi_to_spec, Lpi};
pub use series::{counts, series_at_x1, series_from_system, solve_system};
pub use spec::{LinkedSpec, SpecFile};
pub use system::{
    build_forbidden_dfa, derive_system, member, state_for_class, LinkedMachine, QDifferenceSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkedError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("malformed spec file: {0}")]
    SpecFormat(String),
    #[error(transparent)]
    Regex(#[from] AutomataError),
    #[error("block {index} = {block:?} is not the image of any symbol")]
    BlockNotInImage { index: usize, block: Vec<u32> },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("system entries must be polynomials")]
    NotPolynomial,
    #[error("no state {0}")]
    UnknownState(usize),
    #[error("no symbol maps to the empty partition")]
    NoTrivialSymbol,
    #[error("a monomial x^a q^b with b < a leaves the x = 1 specialization undetermined")]
    XOneUndetermined,
}
