//! Exact convex geometry over the rationals: polytopes in double description,
//! volumes, mixed volumes, coconvex bodies in polyhedral cones, and the
//! Aleksandrov–Fenchel forms of linear families of either kind.

#![allow(clippy::needless_range_loop)]

pub mod cone;
pub mod corollary;
pub mod dd;
pub mod error;
pub mod family;
pub mod form;
pub mod generate;
pub mod lift;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod radical;
pub mod rng;
pub mod scalar;
pub mod suite;
pub mod volume;

pub use error::{Error, Result};
pub use scalar::Scalar;
