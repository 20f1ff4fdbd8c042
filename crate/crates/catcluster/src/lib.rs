//! Exact combinatorics of affine-type cluster algebras.
//!
//! The crate provides, in layers:
//!
//! - [`laurent`]: multivariate Laurent polynomials over `BigInt`, with exact
//!   division;
//! - [`matrix`] / [`seed`]: exchange matrices, quivers, seed mutation with
//!   denominator-vector tracking and the tropical d-vector rule;
//! - [`roots`] / [`expansion`]: affine root systems, Coxeter orbits, the
//!   root sets `Φ_c` and `Λ_c`, and the unique `c`-cluster expansion with a
//!   real fan-walk, an imaginary fallback and a brute-force oracle;
//! - [`admissible`] / [`families`]: admissible sequences, Q-data, interval
//!   seeds with Kirillov–Reshetikhin labels, the seven categorified families
//!   with their monomial models, and the real/imaginary classification;
//! - [`words`]: reduced words, braid-move graphs and piecewise-linear
//!   transition maps between dual-canonical parameter tuples;
//! - [`verify`]: the registered check suite behind `catcluster verify`.
//!
//! Everything is exact: integer, rational, or symbolic. No floats.

pub mod admissible;
pub mod error;
pub mod families;
pub mod laurent;
pub mod matrix;
pub mod monomial;
pub mod roots;
pub mod expansion;
pub mod seed;
pub mod words;

pub use admissible::{AdmissibleSequence, QDatum};
pub use error::{Error, Result};
pub use expansion::{AffineCtx, Expansion, PhiCElement, RealCertificate};
pub use families::{CanonicalForm, Classification, Factor, Family, FamilyConfig};
pub use laurent::{Exponents, LaurentPoly};
pub use matrix::{detect_affine_type, AffineType, ExchangeMatrix, NodeId, Quiver};
pub use monomial::Monomial;
pub use roots::{AffineSystem, CoxeterElement, FiniteType, OrbitClass, RootVec};
pub use seed::{DVectorTuple, Seed};
pub use words::{braid_neighbors, find_move_path, transition_tuple, LusztigTuple, Move, ReducedWord};
