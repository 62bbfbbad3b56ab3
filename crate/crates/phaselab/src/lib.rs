//! Desk-scale numerical laboratory for 2D time-harmonic acoustic scattering
//! with phaseless (intensity-only) near-field measurements.
//!
//! The crate provides:
//!
//! - [`specialfun`]: double-precision cylindrical Bessel and Hankel functions
//!   of orders 0 and 1, the kernel primitives of every field evaluation.
//! - [`geometry`]: boundary curves, admissible measurement arcs, locally rough
//!   surface profiles, and the layout validity checks the measurement
//!   protocol relies on.
//! - [`solver`]: Nystrom combined-field integral solver for sound-soft
//!   obstacles, a half-plane image-kernel solver for sound-soft locally rough
//!   surfaces, and near/far field evaluation.
//! - [`oracles`]: independent closed-form series solutions (sound-soft,
//!   impedance, and penetrable disks; flat half-plane image solution) used as
//!   ground truth.
//! - [`phaseless`]: synthesis of the three intensity datasets, cross-term
//!   recovery, cosine branch resolution, field reconstruction up to a
//!   unimodular factor, and scatterer discrimination.
//! - [`checks`]: the verification suite (reciprocity, mixed reciprocity,
//!   translation contrast, oracle equivalence, ...) shared by the CLI runner
//!   and the acceptance tests.

pub mod checks;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod oracles;
pub mod phaseless;
pub mod point;
pub mod solver;
pub mod specialfun;

pub use grid::Grid;
pub use point::Point2;

/// Complex double, the scalar type of every field quantity.
pub type C64 = num_complex::Complex64;
