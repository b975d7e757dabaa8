//! Universal algebras with arbitrary signature and their semigroup gradings.
//!
//! A `G`-graded algebra is handled as an ordinary Ω-algebra whose signature
//! is extended by the projections `π_g` onto the homogeneous components.
//! Graded identities then become ordinary identities, which this crate
//! computes degree by degree as exact nullspaces of evaluation maps.

pub mod algebra;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod identities;
pub mod isosearch;
pub mod linalg;
pub mod poly;
pub mod presets;
pub mod rewrite;
pub mod samples;
pub mod scalar;
pub mod signature;
pub mod structure;
pub mod syntax;
pub mod term;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
