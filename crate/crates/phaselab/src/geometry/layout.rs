//! Source/receiver measurement layouts and the geometric hypothesis checks
//! behind the uniqueness theorems: disjoint measurement disks, a reference
//! source clear of everything, and all measurement gear away from the
//! scatterer (or strictly above the rough surface).

use super::{AdmissibleArc, BoundaryCurve, SurfaceProfile};
use crate::point::Point2;
use std::f64::consts::PI;
use std::fmt;

/// Measurement geometry: a reference source z0, the source arc (Gamma or
/// Lambda), and the receiver arc (Sigma), all tied to one wavenumber.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceReceiverLayout {
    pub z0: Point2,
    pub source_arc: AdmissibleArc,
    pub receiver_arc: AdmissibleArc,
    pub k: f64,
}

impl SourceReceiverLayout {
    /// Layout with an explicit reference source.
    pub fn new(source_arc: AdmissibleArc, receiver_arc: AdmissibleArc, k: f64, z0: Point2) -> Self {
        SourceReceiverLayout {
            z0,
            source_arc,
            receiver_arc,
            k,
        }
    }

    /// Layout with the default reference-source placement: the midpoint of the
    /// segment joining the arc centers, displaced one wavelength
    /// perpendicular to it (a generic position away from both disks).
    pub fn with_default_z0(
        source_arc: AdmissibleArc,
        receiver_arc: AdmissibleArc,
        k: f64,
    ) -> Self {
        let mid = (source_arc.center() + receiver_arc.center()) * 0.5;
        let along = receiver_arc.center() - source_arc.center();
        let wavelength = 2.0 * PI / k;
        let z0 = match along.unit() {
            Some(u) => mid + u.perp() * wavelength,
            None => mid + Point2::new(0.0, wavelength),
        };
        SourceReceiverLayout::new(source_arc, receiver_arc, k, z0)
    }

    pub fn wavelength(&self) -> f64 {
        2.0 * PI / self.k
    }

    /// All points at which fields are sourced: z0 first, then the arc grid.
    pub fn source_points(&self) -> Vec<Point2> {
        let mut pts = Vec::with_capacity(1 + self.source_arc.n_points());
        pts.push(self.z0);
        pts.extend_from_slice(self.source_arc.points());
        pts
    }

    pub fn receiver_points(&self) -> &[Point2] {
        self.receiver_arc.points()
    }
}

/// Which measurement disk a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcRole {
    /// The source disk Omega (carrying Gamma or Lambda).
    Source,
    /// The receiver disk G (carrying Sigma).
    Receiver,
}

impl fmt::Display for ArcRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcRole::Source => write!(f, "source disk Omega"),
            ArcRole::Receiver => write!(f, "receiver disk G"),
        }
    }
}

/// A violated geometric hypothesis. All checks are posed on the closed
/// measurement disks, so shrinking an arc radius can only remove violations,
/// never create them.
#[derive(Clone, Debug, PartialEq)]
pub enum LayoutViolation {
    /// closure(Omega) and closure(G) must be disjoint.
    ArcDisksOverlap { center_gap: f64, radius_sum: f64 },
    /// z0 must lie outside both closed measurement disks.
    ReferenceSourceInsideArcDisk { which: ArcRole },
    /// z0 must lie outside the scatterer.
    ReferenceSourceInsideScatterer,
    /// Measurement disk intersects the obstacle (closure overlap).
    ArcDiskTouchesObstacle { which: ArcRole, clearance: f64 },
    /// Measurement disk must lie strictly above the rough surface.
    ArcDiskBelowSurface { which: ArcRole, lowest: f64 },
    /// z0 must lie strictly above the rough surface.
    ReferenceSourceBelowSurface,
}

impl fmt::Display for LayoutViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayoutViolation::ArcDisksOverlap {
                center_gap,
                radius_sum,
            } => write!(
                f,
                "arc disks overlap: closure(Omega) ∩ closure(G) ≠ ∅ \
                 (center distance {center_gap:.6} <= radius sum {radius_sum:.6})"
            ),
            LayoutViolation::ReferenceSourceInsideArcDisk { which } => {
                write!(f, "reference source z0 lies inside the closed {which}")
            }
            LayoutViolation::ReferenceSourceInsideScatterer => {
                write!(f, "reference source z0 placed inside the scatterer")
            }
            LayoutViolation::ArcDiskTouchesObstacle { which, clearance } => write!(
                f,
                "{which} intersects the obstacle (clearance {clearance:.6})"
            ),
            LayoutViolation::ArcDiskBelowSurface { which, lowest } => write!(
                f,
                "{which} dips to height {lowest:.6}, not strictly above the surface"
            ),
            LayoutViolation::ReferenceSourceBelowSurface => {
                write!(f, "reference source z0 is not strictly above the surface")
            }
        }
    }
}

/// Scatterer geometry against which a layout is validated.
#[derive(Clone, Copy, Debug)]
pub enum LayoutScatterer<'a> {
    Obstacle(&'a BoundaryCurve),
    Disk { center: Point2, radius: f64 },
    Surface(&'a SurfaceProfile),
}

/// Outcome of [`validate_layout`]: pass, or the list of violated hypotheses.
#[derive(Clone, Debug, Default)]
pub struct LayoutReport {
    pub violations: Vec<LayoutViolation>,
}

impl LayoutReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LayoutReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "layout valid")
        } else {
            writeln!(f, "layout violates {} hypothesis(es):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  - {v}")?;
            }
            Ok(())
        }
    }
}

/// Check every geometric hypothesis of the measurement protocol for the given
/// layout against the given scatterer. Report-valued: never errors.
pub fn validate_layout(
    layout: &SourceReceiverLayout,
    scatterer: LayoutScatterer<'_>,
) -> LayoutReport {
    let mut report = LayoutReport::default();
    let src = &layout.source_arc;
    let rec = &layout.receiver_arc;

    let center_gap = src.center().dist(rec.center());
    let radius_sum = src.radius() + rec.radius();
    if center_gap <= radius_sum {
        report.violations.push(LayoutViolation::ArcDisksOverlap {
            center_gap,
            radius_sum,
        });
    }

    for (arc, which) in [(src, ArcRole::Source), (rec, ArcRole::Receiver)] {
        if layout.z0.dist(arc.center()) <= arc.radius() {
            report
                .violations
                .push(LayoutViolation::ReferenceSourceInsideArcDisk { which });
        }
    }

    match scatterer {
        LayoutScatterer::Obstacle(curve) => {
            if curve.contains(layout.z0) {
                report
                    .violations
                    .push(LayoutViolation::ReferenceSourceInsideScatterer);
            }
            for (arc, which) in [(src, ArcRole::Source), (rec, ArcRole::Receiver)] {
                let clearance = curve.distance_to_boundary(arc.center()) - arc.radius();
                let center_inside = curve.contains(arc.center());
                if clearance <= 0.0 || center_inside {
                    report.violations.push(LayoutViolation::ArcDiskTouchesObstacle {
                        which,
                        clearance: if center_inside { -clearance.abs() } else { clearance },
                    });
                }
            }
        }
        LayoutScatterer::Disk { center, radius } => {
            if layout.z0.dist(center) <= radius {
                report
                    .violations
                    .push(LayoutViolation::ReferenceSourceInsideScatterer);
            }
            for (arc, which) in [(src, ArcRole::Source), (rec, ArcRole::Receiver)] {
                let clearance = arc.center().dist(center) - radius - arc.radius();
                if clearance <= 0.0 {
                    report
                        .violations
                        .push(LayoutViolation::ArcDiskTouchesObstacle { which, clearance });
                }
            }
        }
        LayoutScatterer::Surface(profile) => {
            let roof = profile.max_height();
            if layout.z0.y <= profile.height(layout.z0.x) || layout.z0.y <= 0.0 {
                report
                    .violations
                    .push(LayoutViolation::ReferenceSourceBelowSurface);
            }
            for (arc, which) in [(src, ArcRole::Source), (rec, ArcRole::Receiver)] {
                let lowest = arc.center().y - arc.radius();
                if lowest <= roof {
                    report
                        .violations
                        .push(LayoutViolation::ArcDiskBelowSurface { which, lowest });
                }
            }
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CurveKind;

    fn unit_disk_curve() -> BoundaryCurve {
        BoundaryCurve::new(CurveKind::Circle { radius: 1.0 }, Point2::ORIGIN, 64).unwrap()
    }

    fn arc(center: Point2, radius: f64) -> AdmissibleArc {
        AdmissibleArc::new(center, radius, (0.0, PI), 8, 1.0).unwrap()
    }

    #[test]
    fn clean_layout_passes() {
        let layout = SourceReceiverLayout::with_default_z0(
            arc(Point2::new(0.0, 3.0), 0.5),
            arc(Point2::new(3.0, 0.0), 0.5),
            1.0,
        );
        let curve = unit_disk_curve();
        let report = validate_layout(&layout, LayoutScatterer::Obstacle(&curve));
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn overlapping_disks_flagged() {
        let layout = SourceReceiverLayout::new(
            arc(Point2::new(0.0, 3.0), 1.0),
            arc(Point2::new(0.5, 3.0), 1.0),
            1.0,
            Point2::new(-5.0, -5.0),
        );
        let curve = unit_disk_curve();
        let report = validate_layout(&layout, LayoutScatterer::Obstacle(&curve));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, LayoutViolation::ArcDisksOverlap { .. })));
        let text = format!("{report}");
        assert!(text.contains("Omega"), "violation names the disks: {text}");
    }

    #[test]
    fn z0_inside_obstacle_flagged() {
        let layout = SourceReceiverLayout::new(
            arc(Point2::new(0.0, 3.0), 0.5),
            arc(Point2::new(3.0, 0.0), 0.5),
            1.0,
            Point2::new(0.1, 0.0),
        );
        let curve = unit_disk_curve();
        let report = validate_layout(&layout, LayoutScatterer::Obstacle(&curve));
        assert_eq!(
            report.violations,
            vec![LayoutViolation::ReferenceSourceInsideScatterer]
        );
    }

    #[test]
    fn surface_clearance() {
        let profile = SurfaceProfile::new(-1.0, 1.0, 0.5).unwrap();
        let bad = SourceReceiverLayout::new(
            arc(Point2::new(-2.0, 1.0), 0.8),
            arc(Point2::new(2.0, 2.0), 0.5),
            1.0,
            Point2::new(0.0, 3.0),
        );
        let report = validate_layout(&bad, LayoutScatterer::Surface(&profile));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, LayoutViolation::ArcDiskBelowSurface { .. })));
    }

    #[test]
    fn shrinking_radius_never_adds_violations() {
        // monotonicity of the validity region in each arc radius
        let curve = unit_disk_curve();
        let centers = [
            (Point2::new(0.0, 2.2), Point2::new(2.5, 0.0)),
            (Point2::new(-2.0, 2.0), Point2::new(2.0, 2.0)),
            (Point2::new(0.0, 4.0), Point2::new(0.1, -4.0)),
        ];
        for (c1, c2) in centers {
            for r in [2.2f64, 1.6, 1.1, 0.7, 0.3, 0.1] {
                let big = SourceReceiverLayout::with_default_z0(arc(c1, r), arc(c2, r), 1.0);
                let small = SourceReceiverLayout::new(
                    big.source_arc.with_radius(r * 0.5).unwrap(),
                    big.receiver_arc.with_radius(r * 0.5).unwrap(),
                    1.0,
                    big.z0,
                );
                let v_big = validate_layout(&big, LayoutScatterer::Obstacle(&curve));
                let v_small = validate_layout(&small, LayoutScatterer::Obstacle(&curve));
                if v_big.is_valid() {
                    assert!(
                        v_small.is_valid(),
                        "shrinking created a violation: {v_small} (r = {r}, c1 = {c1:?})"
                    );
                }
            }
        }
    }

    #[test]
    fn default_z0_is_off_the_axis() {
        let layout = SourceReceiverLayout::with_default_z0(
            arc(Point2::new(0.0, 3.0), 0.5),
            arc(Point2::new(3.0, 0.0), 0.5),
            1.0,
        );
        let mid = Point2::new(1.5, 1.5);
        assert!((layout.z0.dist(mid) - layout.wavelength()).abs() < 1e-12);
    }
}
