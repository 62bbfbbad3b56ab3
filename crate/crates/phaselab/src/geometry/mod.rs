//! Boundary curves, admissible measurement arcs, rough-surface profiles, and
//! the geometric hypothesis checks the measurement protocol imposes.

mod arc;
mod curve;
mod layout;
mod profile;

pub use arc::{AdmissibleArc, DIRICHLET_DISK_BOUND};
pub use curve::{BoundaryCurve, CurveKind};
pub use layout::{
    validate_layout, ArcRole, LayoutReport, LayoutScatterer, LayoutViolation, SourceReceiverLayout,
};
pub use profile::SurfaceProfile;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("invalid curve parameter {name}: {reason}")]
    InvalidCurve { name: &'static str, reason: String },

    /// The measurement disk would risk an interior Dirichlet eigenvalue:
    /// admissibility demands k * radius < 2.4048 (first zero of J0).
    #[error(
        "arc not admissible: k * radius = {product:.6} >= {bound} \
         (Dirichlet eigenvalue risk: radius must be less than {bound}/k)"
    )]
    ArcNotAdmissible { product: f64, bound: f64 },

    #[error("invalid arc parameter {name}: {reason}")]
    InvalidArc { name: &'static str, reason: String },

    #[error("invalid surface profile: support requires a < b, got a = {a}, b = {b}")]
    InvalidProfileSupport { a: f64, b: f64 },
}
