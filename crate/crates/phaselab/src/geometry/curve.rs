//! Smooth closed obstacle boundaries with analytic parametrizations.

use super::GeometryError;
use crate::point::Point2;
use std::f64::consts::PI;

/// Benchmark obstacle shapes. The circle admits a separation-of-variables
/// oracle; the kite is the standard nonconvex test shape.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveKind {
    Circle { radius: f64 },
    Ellipse { semi_x: f64, semi_y: f64 },
    /// (cos t + 0.65 cos 2t - 0.65, 1.5 sin t), the usual benchmark kite.
    Kite,
}

/// A simple closed C^2 boundary with regular 2*pi-periodic parametrization
/// and an even number of quadrature nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCurve {
    kind: CurveKind,
    center: Point2,
    n_nodes: usize,
}

impl BoundaryCurve {
    pub fn new(kind: CurveKind, center: Point2, n_nodes: usize) -> Result<Self, GeometryError> {
        match kind {
            CurveKind::Circle { radius } => {
                if !(radius > 0.0) {
                    return Err(GeometryError::InvalidCurve {
                        name: "radius",
                        reason: format!("must be positive, got {radius}"),
                    });
                }
            }
            CurveKind::Ellipse { semi_x, semi_y } => {
                if !(semi_x > 0.0 && semi_y > 0.0) {
                    return Err(GeometryError::InvalidCurve {
                        name: "semi-axes",
                        reason: format!("must be positive, got ({semi_x}, {semi_y})"),
                    });
                }
            }
            CurveKind::Kite => {}
        }
        if n_nodes < 16 || n_nodes % 2 != 0 {
            return Err(GeometryError::InvalidCurve {
                name: "n_nodes",
                reason: format!("must be even and >= 16, got {n_nodes}"),
            });
        }
        Ok(BoundaryCurve {
            kind,
            center,
            n_nodes,
        })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// A copy of the curve translated by `shift` (same parametrization).
    pub fn translated(&self, shift: Point2) -> BoundaryCurve {
        BoundaryCurve {
            kind: self.kind,
            center: self.center + shift,
            n_nodes: self.n_nodes,
        }
    }

    /// A copy of the curve with a different node count.
    pub fn with_nodes(&self, n_nodes: usize) -> Result<BoundaryCurve, GeometryError> {
        BoundaryCurve::new(self.kind, self.center, n_nodes)
    }

    /// p(t)
    pub fn point(&self, t: f64) -> Point2 {
        let local = match self.kind {
            CurveKind::Circle { radius } => Point2::new(radius * t.cos(), radius * t.sin()),
            CurveKind::Ellipse { semi_x, semi_y } => {
                Point2::new(semi_x * t.cos(), semi_y * t.sin())
            }
            CurveKind::Kite => Point2::new(
                t.cos() + 0.65 * (2.0 * t).cos() - 0.65,
                1.5 * t.sin(),
            ),
        };
        self.center + local
    }

    /// p'(t)
    pub fn derivative(&self, t: f64) -> Point2 {
        match self.kind {
            CurveKind::Circle { radius } => Point2::new(-radius * t.sin(), radius * t.cos()),
            CurveKind::Ellipse { semi_x, semi_y } => {
                Point2::new(-semi_x * t.sin(), semi_y * t.cos())
            }
            CurveKind::Kite => Point2::new(-t.sin() - 1.3 * (2.0 * t).sin(), 1.5 * t.cos()),
        }
    }

    /// p''(t)
    pub fn second_derivative(&self, t: f64) -> Point2 {
        match self.kind {
            CurveKind::Circle { radius } => Point2::new(-radius * t.cos(), -radius * t.sin()),
            CurveKind::Ellipse { semi_x, semi_y } => {
                Point2::new(-semi_x * t.cos(), -semi_y * t.sin())
            }
            CurveKind::Kite => Point2::new(-t.cos() - 2.6 * (2.0 * t).cos(), -1.5 * t.sin()),
        }
    }

    /// Outward unit normal. The parametrizations run counterclockwise, so
    /// (p2', -p1') points outward.
    pub fn outward_normal(&self, t: f64) -> Point2 {
        let d = self.derivative(t);
        Point2::new(d.y, -d.x)
            .unit()
            .expect("regular parametrization has |p'| > 0")
    }

    /// Parameter values of the quadrature nodes, t_j = 2 pi j / N.
    pub fn node_params(&self) -> Vec<f64> {
        (0..self.n_nodes)
            .map(|j| 2.0 * PI * j as f64 / self.n_nodes as f64)
            .collect()
    }

    /// Point-in-region test via the winding number of a dense polygonal
    /// sampling. Adequate for layout validation; points within ~1e-6 of the
    /// boundary may be classified either way.
    pub fn contains(&self, p: Point2) -> bool {
        match self.kind {
            CurveKind::Circle { radius } => (p - self.center).norm() < radius,
            CurveKind::Ellipse { semi_x, semi_y } => {
                let d = p - self.center;
                (d.x / semi_x).powi(2) + (d.y / semi_y).powi(2) < 1.0
            }
            CurveKind::Kite => {
                let n = 512;
                let mut winding = 0.0;
                let mut prev = self.point(0.0) - p;
                for j in 1..=n {
                    let t = 2.0 * PI * j as f64 / n as f64;
                    let cur = self.point(t) - p;
                    let cross = prev.x * cur.y - prev.y * cur.x;
                    let dot = prev.dot(cur);
                    winding += cross.atan2(dot);
                    prev = cur;
                }
                winding.abs() > PI
            }
        }
    }

    /// Minimum distance from a point to the boundary, by dense sampling plus
    /// local refinement. Used for layout clearance checks.
    pub fn distance_to_boundary(&self, p: Point2) -> f64 {
        let coarse = 720;
        let mut best_t = 0.0;
        let mut best = f64::INFINITY;
        for j in 0..coarse {
            let t = 2.0 * PI * j as f64 / coarse as f64;
            let d = self.point(t).dist(p);
            if d < best {
                best = d;
                best_t = t;
            }
        }
        // golden-section refinement around the best coarse node
        let mut lo = best_t - 2.0 * PI / coarse as f64;
        let mut hi = best_t + 2.0 * PI / coarse as f64;
        for _ in 0..60 {
            let m1 = lo + 0.381966 * (hi - lo);
            let m2 = hi - 0.381966 * (hi - lo);
            if self.point(m1).dist(p) < self.point(m2).dist(p) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        self.point(0.5 * (lo + hi)).dist(p).min(best)
    }
}
