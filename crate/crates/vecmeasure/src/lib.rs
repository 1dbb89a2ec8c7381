//! Exact computation with finitely-atomic vector measures: total variation
//! under a family of seminorms, the range as a zonotope, perimeter and zonal
//! identities, and convergence diagnostics for sequences of measures.
//!
//! The crate works in ambient dimensions 1..=3 for values; planar (d = 2)
//! geometry is fully supported, including vertex enumeration, Hausdorff
//! distances and perimeters. All core quantities are closed-form; randomized
//! verification suites cross-check them against brute-force oracles.

pub mod convergence;
pub mod error;
pub mod geometry;
pub mod io;
pub mod measures;
pub mod norms;
pub mod verify;
pub mod zonotopes;

pub use error::{Error, Result};
pub use geometry::{ConvexPolygon, DualVector, Vector};
pub use measures::{Atom, LinearMap, MeasurableSet, VectorMeasure};
pub use norms::{Seminorm, ZonalMeasure};
pub use zonotopes::Zonotope;
