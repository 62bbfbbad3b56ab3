//! Incident fields: plane waves, point sources, and two-point superpositions.

use super::{fundamental_2d, SolverError};
use crate::point::Point2;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IncidentKind {
    /// e^{i k x . d} with |d| = 1.
    Plane { direction: Point2 },
    /// Phi(x, z) = (i/4) H0^(1)(k |x - z|).
    Point { source: Point2 },
    /// Phi(x, z1) + Phi(x, z2), the interference pair driving the phaseless
    /// protocol.
    Superposition { first: Point2, second: Point2 },
}

/// An incident field together with its wavenumber.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IncidentField {
    pub kind: IncidentKind,
    pub k: f64,
}

impl IncidentField {
    /// Plane wave; the direction is normalized (zero vectors rejected).
    pub fn plane(direction: Point2, k: f64) -> Result<Self, SolverError> {
        let unit = direction.unit().ok_or(SolverError::ZeroDirection)?;
        Ok(IncidentField {
            kind: IncidentKind::Plane { direction: unit },
            k,
        })
    }

    pub fn point(source: Point2, k: f64) -> Self {
        IncidentField {
            kind: IncidentKind::Point { source },
            k,
        }
    }

    pub fn superposition(first: Point2, second: Point2, k: f64) -> Self {
        IncidentField {
            kind: IncidentKind::Superposition { first, second },
            k,
        }
    }

    /// Point sources of this field, if any.
    pub fn sources(&self) -> Vec<Point2> {
        match self.kind {
            IncidentKind::Plane { .. } => vec![],
            IncidentKind::Point { source } => vec![source],
            IncidentKind::Superposition { first, second } => vec![first, second],
        }
    }

    /// Evaluate the incident field at `x`. Point kinds error within the
    /// singularity guard of a source.
    pub fn eval(&self, x: Point2) -> Result<C64, SolverError> {
        match self.kind {
            IncidentKind::Plane { direction } => {
                Ok(C64::from_polar(1.0, self.k * x.dot(direction)))
            }
            IncidentKind::Point { source } => fundamental_2d(self.k, x, source),
            IncidentKind::Superposition { first, second } => {
                Ok(fundamental_2d(self.k, x, first)? + fundamental_2d(self.k, x, second)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn plane_wave_values() {
        let inc = IncidentField::plane(Point2::new(1.0, 0.0), 2.0).unwrap();
        // e^0 = 1 at the origin
        let v0 = inc.eval(Point2::ORIGIN).unwrap();
        assert!((v0 - C64::new(1.0, 0.0)).norm() < 1e-15);
        // k = 2, x = (pi/2, 0): e^{i pi} = -1
        let v = inc.eval(Point2::new(PI / 2.0, 0.0)).unwrap();
        assert!((v - C64::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn plane_direction_normalized() {
        let inc = IncidentField::plane(Point2::new(3.0, 4.0), 1.0).unwrap();
        match inc.kind {
            IncidentKind::Plane { direction } => {
                assert!((direction.norm() - 1.0).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
        assert!(IncidentField::plane(Point2::ORIGIN, 1.0).is_err());
    }

    #[test]
    fn superposition_additivity() {
        let z = Point2::new(0.0, 3.0);
        let x = Point2::new(1.0, 1.0);
        let k = 1.3;
        let twice = IncidentField::superposition(z, z, k).eval(x).unwrap();
        let single = IncidentField::point(z, k).eval(x).unwrap();
        assert_eq!(twice, single * 2.0);
    }

    #[test]
    fn point_source_singularity_guard() {
        let z = Point2::new(0.5, 0.5);
        let inc = IncidentField::point(z, 1.0);
        assert!(inc.eval(z).is_err());
        assert!(inc.eval(z + Point2::new(1e-12, 0.0)).is_err());
        assert!(inc.eval(z + Point2::new(0.1, 0.0)).is_ok());
    }
}
