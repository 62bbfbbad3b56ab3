//! Independent closed-form references used as ground truth for the solvers:
//! separation-of-variables series for sound-soft / impedance / penetrable
//! disks, and the image-method solution for the flat half-plane.

mod disk;
mod halfplane;
pub mod orders;

pub use disk::{DiskBoundary, DiskOracle, DiskSpec, SeriesTruncation};
pub use halfplane::flat_halfplane_exact;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("invalid disk spec: {reason}")]
    InvalidSpec { reason: String },

    #[error(
        "series truncation not converged: last retained mode contributes \
         {last_rel:.3e} of the partial sum (limit 1e-13); raise n_max"
    )]
    TruncationNotConverged { last_rel: f64 },

    #[error("evaluation point at radius {rho:.6} is inside the disk (radius {radius:.6}); \
             interior evaluation is only defined for the penetrable (medium) disk")]
    InteriorPoint { rho: f64, radius: f64 },

    #[error("incident point source at distance {dist:.6} must lie outside the disk")]
    SourceInsideDisk { dist: f64 },

    #[error("evaluation coincides with a source point")]
    AtSourcePoint,
}
