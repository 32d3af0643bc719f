//! Weight systems of metric Lie algebras: a Jacobi diagram becomes an
//! element of `S^ℓ g ⊗ End(E)` by placing the structure tensor at every
//! trivalent vertex, the inverse form on every edge, and the module action
//! along ordered legs.

mod backend;
mod evaluate;
mod identity;
mod relations;

pub use backend::{Backend, LieModule, MetricLieAlgebra};
pub use evaluate::{evaluate, evaluate_naive, evaluate_series, Evaluator, Monomial, WeightValue};
pub use identity::{verify_series_identity, wheel_half_strut_identity, wheel_strut_identity, IdentityReport, IdentityRow};
pub use relations::{
    as_instance, check_relation_vanishing, ihx_instance, relation_corpus, relation_value, stu_instance, RelationInstance,
    RelationKind,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("invalid backend: {0}")]
    Backend(String),
    #[error("label {0:?} has ordered legs but the backend has no module")]
    MissingModule(String),
    #[error("unsupported diagram: {0}")]
    Unsupported(String),
    #[error("malformed relation instance: {0}")]
    Malformed(String),
    #[error(transparent)]
    Jacobi(#[from] crate::jacobi::JacobiError),
}
