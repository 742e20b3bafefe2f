//! Exact computations in free alternative algebras and alternative
//! superalgebras: a nonassociative term algebra, a T-ideal membership test
//! by sparse rational elimination, finite-dimensional evaluation oracles and
//! constructors for the elements studied in the accompanying reproduction
//! targets.

pub mod algebras;
pub mod catalog;
pub mod error;
pub mod freealt;
pub mod reproduce;
pub mod scalar;
pub mod terms;

pub use error::{Error, Result};
pub use scalar::Scalar;
