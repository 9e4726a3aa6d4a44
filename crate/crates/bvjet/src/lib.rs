//! Exact symbolic engine for the graded variational bicomplex of
//! Batalin-Vilkovisky field theory.
//!
//! The engine works over the field of rationals (arbitrary precision, no
//! floating point anywhere) with a free graded supercommutative algebra
//! generated by jet variables of fields and antifields, odd horizontal
//! symbols `sig_i`, a top corner symbol `eta`, and even ghost-two variables
//! `u^i` used by the covariant extension.
//!
//! Layering, bottom up:
//! - [`multi_index`], [`generator`], [`monomial`], [`poly`]: the graded
//!   polynomial algebra with Koszul signs.
//! - [`lie`], [`context`]: Lie-algebra data (structure constants, invariant
//!   pairing, representations) and the jet context describing fields,
//!   antifields and gradings.
//! - [`jet`]: total derivatives, prolongation of evolutionary vector fields,
//!   variational derivatives.
//! - [`bicomplex`]: the horizontal differential, the contracting homotopy,
//!   the projection onto cohomology representatives, and functionals.
//! - [`brackets`]: the density-level antibracket, its Hamiltonian vector
//!   fields, the bracket homotopy, the functional-level antibracket, and the
//!   interior operators.
//! - [`master`]: master-equation checks, lifting of actions along the
//!   filtration, the covariant extension in the `u^i` variables, and the
//!   intertwiner between the two differentials.
//! - [`cs`]: the Chern-Simons instantiation over an arbitrary validated Lie
//!   algebra in three spacetime dimensions.
//! - [`ce`], [`sympoly`]: the Chevalley-Eilenberg complex with exact
//!   cohomology, invariant polynomials and transgression.
//! - [`sample`], [`verify`], [`report`]: deterministic random sampling,
//!   verification suites, and serializable reports.

pub mod bicomplex;
pub mod brackets;
pub mod ce;
pub mod context;
pub mod cs;
pub mod generator;
pub mod jet;
pub mod lie;
pub mod linalg;
pub mod master;
pub mod monomial;
pub mod multi_index;
pub mod par;
pub mod poly;
pub mod rat;
pub mod report;
pub mod sample;
pub mod sympoly;
pub mod verify;

pub use context::{FieldDescriptor, JetContext};
pub use generator::{Generator, JetVar};
pub use lie::LieAlgebra;
pub use monomial::Monomial;
pub use multi_index::MultiIndex;
pub use poly::Poly;
pub use rat::Q;

/// Crate-wide error type. Every fallible public operation reports which
/// axiom or precondition failed by name.
#[derive(Debug, thiserror::Error)]
pub enum BvError {
    /// Lie-algebra validation failure (antisymmetry, Jacobi, pairing
    /// symmetry, invariance, singular pairing, representation mismatch).
    #[error("algebra: {0}")]
    Algebra(String),
    /// Jet-context validation failure (grading relations between a field and
    /// its antifield, pairing arity, dangling partners).
    #[error("context: {0}")]
    Context(String),
    /// An operation applied outside its domain (e.g. the projection applied
    /// to a constant, a homotopy applied to a form with the wrong grading).
    #[error("domain: {0}")]
    Domain(String),
    /// Malformed input data (JSON shape, rational syntax).
    #[error("parse: {0}")]
    Parse(String),
    /// Filesystem access while loading algebra specifications.
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, BvError>;
