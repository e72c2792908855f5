//! Exact exterior-power algebra for skew-Hermitian lattices over cyclotomic
//! CM fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`], [`poly`], [`matrix`], [`subsets`]: coefficient rings, sparse
//!   multivariate polynomials, dense matrices and the canonical ordering of
//!   k-subsets used for every exterior-power basis.
//! * [`cyclofield`]: exact arithmetic in `Q(zeta_m)`, embeddings, CM types,
//!   Frobenius orbits and the checker for the integral-model hypotheses.
//! * [`hodge`]: CM-trace vectors, signatures and Hodge-weight bookkeeping.
//! * [`exterior`]: compound matrices, wedge Gram matrices, the similitude
//!   map on exterior powers and multipliers.
//! * [`pairings`]: rational trace forms and p-adic perfectness.
//! * [`serretate`]: deformation block matrices and the contraction map.
//! * [`domains`]: the ball embedding and operator norms.
//!
//! Trial loops and minor evaluation go through [`par::Exec`], which uses
//! rayon when the `parallel` feature is enabled and runs sequentially
//! otherwise. Results never depend on the execution strategy.

pub mod arith;
pub mod cyclofield;
pub mod domains;
pub mod error;
pub mod exterior;
pub mod hodge;
pub mod instances;
pub mod matrix;
pub mod numeric;
pub mod pairings;
pub mod par;
pub mod poly;
pub mod ring;
pub mod serretate;
pub mod subsets;

pub use error::{Error, Result};
