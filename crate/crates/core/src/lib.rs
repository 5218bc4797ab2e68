//! Exact verification toolkit for sign pattern matrices.
//!
//! A sign pattern fixes only the sign (`+`, `-`, `0`) of every entry of a
//! square matrix; a realization is any rational matrix with those signs. This
//! crate certifies properties that hold for *every* realization of a pattern,
//! with all arithmetic done exactly over arbitrary-precision rationals.
//!
//! * [`pattern`]: sign patterns, parsing, and the built-in 9x9 pattern with
//!   its four distinguished principal 2x2 blocks.
//! * [`matrix`]: exact rational matrices with fraction-free rank and
//!   determinant, division-free characteristic polynomials, principal minors,
//!   and a diagonalizability test over the complex numbers.
//! * [`poly`]: univariate rational polynomials, squarefree parts, evaluation
//!   at a matrix.
//! * [`matching`]: bipartite matching on nonzero cells, term rank, bounded
//!   enumeration of perfect matchings.
//! * [`symbolic`]: minors of a generic realization as sparse multivariate
//!   polynomials in the entry variables.
//! * [`certify`]: combinatorial certificates (unique-matching monomial minors,
//!   block-pivot factorizations, collinearity confinement, pigeonhole covers).
//! * [`realize`]: exact realizations, seeded random sampling, forced-singular
//!   minimum-rank witnesses, constructed diagonalizable matrices.
//! * [`verify`]: the end-to-end claim pipeline producing a machine-readable
//!   report.

pub mod certify;
pub mod matching;
pub mod matrix;
pub mod pattern;
pub mod poly;
pub mod realize;
pub mod symbolic;
pub mod verify;

pub use matrix::ExactMatrix;
pub use pattern::{Block, IndexSet, Sign, SignGrid, SignPattern};
pub use poly::UniPoly;
