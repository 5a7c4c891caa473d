//! Exact arithmetic in `Z[x, q]`, `Q(x, q)`, matrices over `Q(x, q)` and
//! truncated power series.

mod bipoly;
mod matrix;
mod ratfunc;
mod render;
mod series;
mod upoly;

pub use bipoly::BiPoly;
pub use matrix::RfMatrix;
pub use ratfunc::RationalFunction;
pub use render::{parse_poly, parse_rational, render_poly, render_rational};
pub use series::{BiSeries, QSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("expression is not a polynomial")]
    NotPolynomial,
    #[error("matrix shape mismatch")]
    Shape,
    #[error("zero pivot")]
    SingularPivot,
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
