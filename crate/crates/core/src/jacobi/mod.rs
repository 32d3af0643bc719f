//! Jacobi diagrams, their gluing and ordering operations, and series of
//! diagrams truncated at a fixed degree.
//!
//! Series are compared after isomorphism normalization only; nothing here
//! quotients by the AS, IHX or STU relations. Identities that hold only in
//! graph homology are checked through weight systems instead.

mod diagram;
mod ops;
pub mod random;
mod series;
mod text;

pub use diagram::{JacobiDiagram, LabelKind};
pub use ops::*;
pub use series::DiagramSeries;
pub use text::{parse_diagram, parse_series, write_diagram, write_series};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobiError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("leg label {0:?} is not declared")]
    UndeclaredLabel(String),
    #[error("label {label:?} is {found:?}, expected {expected:?}")]
    LabelKind { label: String, expected: LabelKind, found: LabelKind },
    #[error("label {0:?} occurs on both sides")]
    LabelClash(String),
    #[error("strut condition violated: {0}")]
    StrutCondition(String),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
mod tests;
