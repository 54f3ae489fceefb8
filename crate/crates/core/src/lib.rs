//! Exact combinatorics of simplicial toric varieties.
//!
//! A toric variety is handled through its fan. From the fan we compute the Cox
//! grading (the degree map onto the class group), the irrelevant ideal and its
//! Stanley–Reisner complex, and the variation-of-GIT picture for the Cox torus
//! acting on affine space: unstable loci per character, chambers, and the nef,
//! moving and effective cones. The [`checks`] module composes these into
//! named verifications, such as the equivalence between 2-neighborly fans and
//! unstable loci of codimension at least three.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals).
//!
//! ```
//! use toricgit::{fan, cox, vgit};
//!
//! let x = fan::blowup_pn_along_linear(4, 1).unwrap();
//! assert!(fan::is_m_neighborly(&x, 2));
//! let deg = cox::degree_map(&x).unwrap();
//! let ample = vgit::ample_character(&x, &deg).unwrap();
//! assert!(vgit::unstable_codim(&deg, &ample).unwrap() >= 3);
//! ```

pub mod bits;
pub mod checks;
pub mod cli;
pub mod corpus;
pub mod cox;
pub mod fan;
pub mod linalg;
pub mod polycone;
pub mod vgit;

pub use fan::{Fan, FanReport, TorusInvariantDivisor};
pub use polycone::RationalCone;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector has no primitive representative")]
    ZeroVector,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("cone {0:?} is not simplicial")]
    NonSimplicial(Vec<usize>),
    #[error("{0:?} is not a cone of the fan")]
    NotACone(Vec<usize>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the fan is not complete")]
    NotComplete,
    #[error("the fan is not projective")]
    NotProjective,
    #[error("the zero cone has no interior point")]
    ZeroCone,
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("character {0} lies on a chamber wall")]
    BoundaryCharacter(String),
    #[error("character {0} lies outside the effective cone")]
    OutsideEffectiveCone(String),
    #[error("unsupported lattice: {0}")]
    UnsupportedLattice(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
