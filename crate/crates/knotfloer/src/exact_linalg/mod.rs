//! Exact linear algebra over ℚ and over F₂[U].

mod rat;
mod upoly;

pub use rat::{det, signature, solve, AffineSolution, RatMatrix, Rref};
pub use upoly::{u_smith_reduce, SmithForm, UPoly, UPolyMatrix};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
