//! Admissible measurement arcs: circular arcs on disks small enough that k^2
//! cannot be a Dirichlet eigenvalue of the disk interior.

use super::GeometryError;
use crate::point::Point2;

/// Admissibility bound: k * radius must stay below the first zero of J0, so
/// that k^2 is not a Dirichlet eigenvalue of the measurement disk.
pub const DIRICHLET_DISK_BOUND: f64 = 2.4048;

/// A circular measurement arc with uniformly spaced sample points.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleArc {
    center: Point2,
    radius: f64,
    theta0: f64,
    theta1: f64,
    n_points: usize,
    k: f64,
    points: Vec<Point2>,
}

impl AdmissibleArc {
    /// Build an arc on the disk of given `center`/`radius`, spanning the
    /// angular interval `[theta0, theta1]` with `n_points` samples
    /// (endpoints included), validated against the wavenumber `k`.
    pub fn new(
        center: Point2,
        radius: f64,
        aperture: (f64, f64),
        n_points: usize,
        k: f64,
    ) -> Result<Self, GeometryError> {
        let (theta0, theta1) = aperture;
        if !(radius > 0.0) {
            return Err(GeometryError::InvalidArc {
                name: "radius",
                reason: format!("must be positive, got {radius}"),
            });
        }
        if n_points < 2 {
            return Err(GeometryError::InvalidArc {
                name: "n_points",
                reason: format!("need at least 2 samples, got {n_points}"),
            });
        }
        if !(theta1 > theta0) {
            return Err(GeometryError::InvalidArc {
                name: "aperture",
                reason: format!("needs nonvanishing measure, got [{theta0}, {theta1}]"),
            });
        }
        if !(k > 0.0) {
            return Err(GeometryError::InvalidArc {
                name: "wavenumber",
                reason: format!("must be positive, got {k}"),
            });
        }
        let product = k * radius;
        if product >= DIRICHLET_DISK_BOUND {
            return Err(GeometryError::ArcNotAdmissible {
                product,
                bound: DIRICHLET_DISK_BOUND,
            });
        }
        let points = (0..n_points)
            .map(|i| {
                let theta = theta0 + (theta1 - theta0) * i as f64 / (n_points - 1) as f64;
                center + Point2::from_angle(theta) * radius
            })
            .collect();
        Ok(AdmissibleArc {
            center,
            radius,
            theta0,
            theta1,
            n_points,
            k,
            points,
        })
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn aperture(&self) -> (f64, f64) {
        (self.theta0, self.theta1)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    /// Same disk and aperture with a different radius (used by the layout
    /// monotonicity property).
    pub fn with_radius(&self, radius: f64) -> Result<AdmissibleArc, GeometryError> {
        AdmissibleArc::new(
            self.center,
            radius,
            (self.theta0, self.theta1),
            self.n_points,
            self.k,
        )
    }
}
