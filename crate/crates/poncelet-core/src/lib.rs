//! Numerical verification kernel for closure theorems on conic and quadric
//! pencils and on families of tangent circles.
//!
//! The crate is organized around a handful of engines:
//!
//! - [`projective`] / [`roots`]: complex projective primitives, polynomial
//!   root extraction, the tolerance policy.
//! - [`conic`]: plane conics and the classical Poncelet traverse.
//! - [`counting`]: scan engine counting the closing members of a pencil.
//! - [`quadric`]: quadrics in projective 3-space, rulings, the line-chain
//!   translation and the conic-to-quadric bridge.
//! - [`revolution`]: quadrics of revolution and the closed-form closure test.
//! - [`circles`]: the projective 3-space of plane circles.
//! - [`chains`]: circle-chain processes (Emch, Steiner, zig-zag,
//!   Money-Coutts).
//!
//! Everything is a pure value computation: all types are immutable, all
//! operations reentrant, and every random draw goes through a seeded
//! generator so runs are reproducible. With the default `parallel` feature
//! the pencil scans fan out over rayon; disabling it yields the sequential
//! fallback with identical results.

pub mod chain;
pub mod chains;
pub mod circles;
pub mod conic;
pub mod counting;
pub mod error;
pub mod num;
pub mod projective;
pub mod quadric;
pub mod revolution;
pub mod roots;
pub mod three_conics;
pub mod tolerance;

pub use chain::ChainReport;
pub use error::{GeomError, Result};
pub use tolerance::ToleranceContext;
