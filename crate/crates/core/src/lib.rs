//! Exact computations with finite-dimensional algebras over `Q`: radicals,
//! Wedderburn–Malcev sections, semisimple envelopes of Dynkin quivers,
//! trace identities on tensor powers, and representations of the additive
//! group.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod error;
pub mod ga;
pub mod matrix;
pub mod poly;
pub mod quiver;
pub mod rational;
pub mod roots;
pub mod semisimple;
pub mod subspace;
pub mod trace;
pub mod wedderburn;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use matrix::{RatMatrix, Vector};
pub use rational::Rational;
pub use subspace::Subspace;
