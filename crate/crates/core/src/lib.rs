//! Exact construction of diptych varieties from the discrete data `(d, e, k)`.
//!
//! The pipeline runs from continued fractions ([`cf`]) through partner matrix
//! pairs ([`classify`]), the two toric panels ([`rectangle`]), torus weights
//! ([`weights`]) and the projection schedule ([`projseq`]) to the serial
//! Pfaffian unprojection chain ([`unproject`]). Every stage carries its own
//! checkers, so a constructed chain can be verified against the toric sections
//! and the weight lattice. All arithmetic is exact.

pub mod cf;
pub mod classify;
pub mod diptych;
pub mod error;
pub mod monomial;
pub mod projseq;
pub mod rectangle;
pub mod serde_util;
pub mod sweep;
pub mod unproject;
pub mod weights;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
