//! Exact rational algebra for Hochschild and HKR structures on hyperkähler
//! models: exterior contractions, multiplicative genera, Verbitsky
//! subalgebras, sl2 completions, Hodge/Hochschild pairs, Jacobi diagrams
//! with Lie algebra weight systems, and symplectic holonomy arithmetic.
//!
//! Every module is generic over a [`Scalar`] field. The aliases below fix
//! the field to arbitrary-precision rationals.

pub mod exterior;
pub mod genus;
pub mod hodgepair;
pub mod holonomy;
pub mod jacobi;
pub mod lefschetz;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod verbitsky;
pub mod weights;

pub use scalar::{Scalar, Q};

pub type QMatrix = linalg::Matrix<Q>;
pub type QExteriorElement = exterior::ExteriorElement<Q>;
pub type QGenusSeries = genus::GenusSeries<Q>;
pub type QQuadraticSpace = verbitsky::QuadraticSpace<Q>;
pub type QVerbitskyAlgebra = verbitsky::VerbitskyAlgebra<Q>;
pub type QGradedOperatorSpace = lefschetz::GradedOperatorSpace<Q>;
pub type QSl2Triple = lefschetz::Sl2Triple<Q>;
pub type QPairModel = hodgepair::PairModel<Q>;
pub type QTwistedIsoPair = hodgepair::TwistedIsoPair<Q>;
pub type QDiagramSeries = jacobi::DiagramSeries<Q>;
pub type QBackend = weights::Backend<Q>;
pub type QWeightValue = weights::WeightValue<Q>;
pub type QSymplecticBlockMatrix = holonomy::SymplecticBlockMatrix<Q>;
