//! Exact arithmetic for structurable algebras of skew-dimension one.
//!
//! The crate builds these algebras from cubic norm structures with a
//! semilinear self-adjoint autotopy and from hermitian cubic norm
//! structures, evaluates their degree-4 norm, recovers a hermitian structure
//! from raw structure constants, and relates semilinear extensions to the
//! Cayley–Dickson process. Every construction comes with an identity suite
//! checked in exact arithmetic over `Q` or `F_p`.

pub mod cli;
pub mod cns;
pub mod cubic;
pub mod doc;
pub mod error;
pub mod hcns;
pub mod linalg;
pub mod scalars;
pub mod structurable;
pub mod tensor;
pub mod verify;
pub mod cayley_dickson;

pub use error::{Error, Result};
