//! Forward scattering solvers and field evaluation.
//!
//! Wave convention: time factor exp(-i omega t), outgoing fundamental solution
//! Phi(x, z) = (i/4) H0^(1)(k |x - z|). Far fields use the 2D normalization
//!
//! ```text
//! u^s(x) = e^{ik|x|} / sqrt(|x|) * ( u^inf(xhat) + O(1/|x|) ),
//! ```
//!
//! under which the point source has far field gamma2 * e^{-ik xhat . z} with
//! gamma2 = e^{i pi/4} / sqrt(8 pi k).

mod gauss;
mod incident;
mod linalg;
mod obstacle;
mod rough;

pub use incident::{IncidentField, IncidentKind};
pub use obstacle::SoftObstacleSolver;
pub use rough::{RoughSolution, RoughSolverParams, RoughSurfaceSolver};

use crate::geometry::{validate_layout, LayoutScatterer, SourceReceiverLayout};
use crate::grid::Grid;
use crate::oracles::{DiskOracle, DiskSpec, OracleError};
use crate::point::Point2;
use crate::specialfun::{h1_0, h1_1};
use crate::C64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("evaluation point within {min_sep:.3e} of a source point (singularity guard)")]
    SourceSingularity { min_sep: f64 },

    #[error("evaluation point lies on or inside the obstacle boundary")]
    PointInsideObstacle,

    #[error("incident source lies inside or on the scatterer")]
    SourceInsideScatterer,

    #[error("source must lie strictly above the rough surface")]
    SourceBelowSurface,

    #[error("plane-wave direction must be a nonzero vector")]
    ZeroDirection,

    #[error("linear system singular to working precision (condition estimate {cond:.3e})")]
    SingularSystem { cond: f64 },

    #[error("far-field pattern is only defined for the free-space (obstacle) layer")]
    FarFieldUndefined,

    #[error("layout validation failed before solving:\n{report}")]
    InvalidLayout { report: String },

    #[error("solve failed for source column {source_ix}: {source}")]
    SourceColumn {
        source_ix: usize,
        #[source]
        source: Box<SolverError>,
    },

    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Minimum receiver/source separation, in wavelengths.
pub const MIN_SEPARATION_WAVELENGTHS: f64 = 1e-8;

/// Far-field constant of the 2D point source: gamma2 = e^{i pi/4}/sqrt(8 pi k).
pub fn gamma2(k: f64) -> C64 {
    C64::from_polar(1.0 / (8.0 * PI * k).sqrt(), PI / 4.0)
}

/// Fundamental solution Phi(x, z) = (i/4) H0^(1)(k |x - z|).
///
/// Errors when x is within 1e-8 wavelengths of z.
pub fn fundamental_2d(k: f64, x: Point2, z: Point2) -> Result<C64, SolverError> {
    let r = x.dist(z);
    let min_sep = MIN_SEPARATION_WAVELENGTHS * 2.0 * PI / k;
    if r < min_sep {
        return Err(SolverError::SourceSingularity { min_sep });
    }
    Ok(C64::new(0.0, 0.25) * h1_0(k * r))
}

/// Dirichlet Green's function of the flat sound-soft half-plane x2 > 0:
/// G(x, z) = Phi(x, z) - Phi(x, z') with z' the mirror image of z across
/// x2 = 0. Vanishes identically for x on the line (the image distances agree
/// exactly, so the cancellation is exact in floating point as well).
pub fn halfplane_green(k: f64, x: Point2, z: Point2) -> Result<C64, SolverError> {
    let direct = fundamental_2d(k, x, z)?;
    let image = fundamental_2d(k, x, z.mirror())?;
    Ok(direct - image)
}

/// Which field a matrix holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSemantics {
    Total,
    Scattered,
    Incident,
}

impl FieldSemantics {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldSemantics::Total => "total",
            FieldSemantics::Scattered => "scattered",
            FieldSemantics::Incident => "incident",
        }
    }
}

/// Complex field samples over receivers (rows) by sources (columns).
/// Column 0 is always the reference source z0; columns 1.. are the source
/// grid on the arc.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldMatrix {
    pub receivers: Vec<Point2>,
    pub sources: Vec<Point2>,
    pub values: Grid<C64>,
    pub semantics: FieldSemantics,
}

impl FieldMatrix {
    pub fn n_receivers(&self) -> usize {
        self.receivers.len()
    }

    /// Number of source columns, including the z0 column.
    pub fn n_sources(&self) -> usize {
        self.sources.len()
    }

    pub fn at(&self, receiver_ix: usize, source_ix: usize) -> C64 {
        *self.values.get(receiver_ix, source_ix)
    }
}

/// Far-field samples under the fixed 2D normalization (see module docs).
#[derive(Clone, Debug)]
pub struct FarFieldPattern {
    pub directions: Vec<Point2>,
    pub values: Vec<C64>,
}

impl FarFieldPattern {
    /// Uniform direction set on the unit circle.
    pub fn circle_directions(n: usize) -> Vec<Point2> {
        (0..n)
            .map(|j| Point2::from_angle(2.0 * PI * j as f64 / n as f64))
            .collect()
    }
}

/// Boundary condition of a layer density (only the Dirichlet case is solved
/// by the integral solvers; impedance and penetrable disks live in the
/// oracles module).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryCondition {
    Dirichlet,
}

#[derive(Clone, Debug)]
pub(crate) struct DensityNode {
    pub point: Point2,
    /// Unnormalized normal (outward for obstacles, upward for surfaces);
    /// carries the parametrization Jacobian.
    pub normal: Point2,
    pub jacobian: f64,
    /// Quadrature weight in the parameter variable.
    pub weight: f64,
}

#[derive(Clone, Debug)]
pub(crate) enum LayerKind {
    /// Combined double/single layer with the free-space kernel on a closed
    /// curve (CFIE ansatz for the exterior Dirichlet problem).
    FreeSpaceCombined,
    /// Combined layer with the half-plane image kernel on a truncated open
    /// curve. The scattered field additionally carries the known reflected
    /// images of the incident point sources.
    HalfPlaneImage { reflected_sources: Vec<Point2> },
}

/// Discretized layer density: node list plus one complex coefficient per
/// node. Self-contained for field evaluation away from the curve.
#[derive(Clone, Debug)]
pub struct Density {
    pub(crate) nodes: Vec<DensityNode>,
    pub values: Vec<C64>,
    pub k: f64,
    pub(crate) eta: f64,
    pub(crate) kind: LayerKind,
    pub bc: BoundaryCondition,
}

/// Combined-field kernel of the evaluation representation:
/// dPhi(x,y)/dnu(y) - i eta Phi(x,y), with the Jacobian folded in
/// (normal `n` is unnormalized, `jac = |n|`).
#[inline]
pub(crate) fn combined_free_kernel(
    k: f64,
    eta: f64,
    x: Point2,
    y: Point2,
    n: Point2,
    jac: f64,
) -> C64 {
    let d = x - y;
    let r = d.norm();
    let kr = k * r;
    let dl = C64::new(0.0, 0.25 * k) * h1_1(kr) * (n.dot(d) / r);
    let sl = C64::new(0.0, 0.25) * h1_0(kr) * jac;
    dl - C64::new(0.0, eta) * sl
}

/// Image part of the half-plane kernel: dPhi(x,y')/dnu(y) - i eta Phi(x,y'),
/// y' the mirror of y. The half-plane kernel is `free - image`.
#[inline]
pub(crate) fn combined_image_kernel(
    k: f64,
    eta: f64,
    x: Point2,
    y: Point2,
    n: Point2,
    jac: f64,
) -> C64 {
    let m = Point2::new(y.x - x.x, y.y + x.y);
    let r = m.norm();
    let kr = k * r;
    let dl = C64::new(0.0, -0.25 * k) * h1_1(kr) * (n.dot(m) / r);
    let sl = C64::new(0.0, 0.25) * h1_0(kr) * jac;
    dl - C64::new(0.0, eta) * sl
}

/// Scattered field of a density at a point away from the curve.
pub fn scattered_near(density: &Density, x: Point2) -> Result<C64, SolverError> {
    let k = density.k;
    let eta = density.eta;
    let mut acc = C64::new(0.0, 0.0);
    match &density.kind {
        LayerKind::FreeSpaceCombined => {
            for (node, &phi) in density.nodes.iter().zip(&density.values) {
                acc += combined_free_kernel(k, eta, x, node.point, node.normal, node.jacobian)
                    * phi
                    * node.weight;
            }
        }
        LayerKind::HalfPlaneImage { reflected_sources } => {
            for (node, &psi) in density.nodes.iter().zip(&density.values) {
                let kernel = if x.y == 0.0 {
                    C64::new(0.0, 0.0)
                } else {
                    combined_free_kernel(k, eta, x, node.point, node.normal, node.jacobian)
                        - combined_image_kernel(k, eta, x, node.point, node.normal, node.jacobian)
                };
                acc += kernel * psi * node.weight;
            }
            for &zr in reflected_sources {
                acc -= fundamental_2d(k, x, zr)?;
            }
        }
    }
    Ok(acc)
}

/// Far-field pattern of a free-space combined layer in direction `xhat`
/// (|xhat| = 1).
pub fn scattered_far(density: &Density, xhat: Point2) -> Result<C64, SolverError> {
    match density.kind {
        LayerKind::FreeSpaceCombined => {}
        LayerKind::HalfPlaneImage { .. } => return Err(SolverError::FarFieldUndefined),
    }
    debug_assert!((xhat.norm() - 1.0).abs() < 1e-12);
    let k = density.k;
    let eta = density.eta;
    let mut acc = C64::new(0.0, 0.0);
    for (node, &phi) in density.nodes.iter().zip(&density.values) {
        let phase = C64::from_polar(1.0, -k * xhat.dot(node.point));
        let factor = C64::new(0.0, -k * xhat.dot(node.normal)) - C64::new(0.0, eta * node.jacobian);
        acc += phase * factor * phi * node.weight;
    }
    Ok(gamma2(k) * acc)
}

/// A forward model that can produce total/scattered fields for point-source
/// incidence: the CFIE obstacle solver, the disk series oracle, or the
/// rough-surface solver. Solver factorizations are built once and reused for
/// every source.
pub enum ForwardModel {
    SoftObstacle(SoftObstacleSolver),
    Disk(DiskOracle),
    Rough(RoughSurfaceSolver),
}

/// A solved state for one point source, reusing the model's factorization;
/// evaluation at many receivers is then cheap.
pub enum PreparedSource<'a> {
    Obstacle {
        inc: IncidentField,
        density: Density,
    },
    Disk {
        oracle: &'a DiskOracle,
        inc: IncidentField,
    },
    Rough(RoughSolution<'a>),
}

impl PreparedSource<'_> {
    pub fn total(&self, x: Point2) -> Result<C64, SolverError> {
        match self {
            PreparedSource::Obstacle { inc, density } => {
                Ok(inc.eval(x)? + scattered_near(density, x)?)
            }
            PreparedSource::Disk { oracle, inc } => Ok(oracle.total(inc, x)?),
            PreparedSource::Rough(sol) => sol.total(x),
        }
    }

    pub fn scattered(&self, x: Point2) -> Result<C64, SolverError> {
        match self {
            PreparedSource::Obstacle { density, .. } => scattered_near(density, x),
            PreparedSource::Disk { oracle, inc } => Ok(oracle.scattered(inc, x)?),
            PreparedSource::Rough(sol) => Ok(sol.total(x)? - sol.incident(x)?),
        }
    }
}

impl ForwardModel {
    pub fn wavenumber(&self) -> f64 {
        match self {
            ForwardModel::SoftObstacle(s) => s.wavenumber(),
            ForwardModel::Disk(d) => d.wavenumber(),
            ForwardModel::Rough(r) => r.wavenumber(),
        }
    }

    /// Solve once for a point source at `z`.
    pub fn prepare_point_source(&self, z: Point2) -> Result<PreparedSource<'_>, SolverError> {
        let k = self.wavenumber();
        match self {
            ForwardModel::SoftObstacle(s) => {
                let inc = IncidentField::point(z, k);
                let density = s.solve(&inc)?;
                Ok(PreparedSource::Obstacle { inc, density })
            }
            ForwardModel::Disk(d) => Ok(PreparedSource::Disk {
                oracle: d,
                inc: IncidentField::point(z, k),
            }),
            ForwardModel::Rough(r) => Ok(PreparedSource::Rough(r.solve_point(z)?)),
        }
    }

    /// Total field at `x` for a point source at `z` (one solve; prefer
    /// [`Self::prepare_point_source`] when evaluating many receivers).
    pub fn total_point_source(&self, x: Point2, z: Point2) -> Result<C64, SolverError> {
        self.prepare_point_source(z)?.total(x)
    }

    /// Scattered field at `x` for a point source at `z`.
    pub fn scattered_point_source(&self, x: Point2, z: Point2) -> Result<C64, SolverError> {
        self.prepare_point_source(z)?.scattered(x)
    }

    /// Validate a layout against this scatterer's geometry.
    pub fn validate(&self, layout: &SourceReceiverLayout) -> crate::geometry::LayoutReport {
        match self {
            ForwardModel::SoftObstacle(s) => {
                validate_layout(layout, LayoutScatterer::Obstacle(s.curve()))
            }
            ForwardModel::Disk(d) => validate_layout(
                layout,
                LayoutScatterer::Disk {
                    center: d.spec().center,
                    radius: d.spec().radius,
                },
            ),
            ForwardModel::Rough(r) => validate_layout(layout, LayoutScatterer::Surface(r.profile())),
        }
    }
}

/// Assemble the near-field matrix v(x, z) over the layout grid: receivers on
/// Sigma (rows) by sources {z0} followed by the arc grid (columns). One solve
/// per source; factorizations are shared through the prepared `model`.
///
/// Fails if the layout violates the geometric hypotheses, or if any
/// receiver/source pair violates the separation guard.
pub fn field_matrix(
    model: &ForwardModel,
    layout: &SourceReceiverLayout,
    semantics: FieldSemantics,
) -> Result<FieldMatrix, SolverError> {
    let report = model.validate(layout);
    if !report.is_valid() {
        return Err(SolverError::InvalidLayout {
            report: format!("{report}"),
        });
    }
    let receivers: Vec<Point2> = layout.receiver_points().to_vec();
    let sources = layout.source_points();
    let k = layout.k;
    let min_sep = MIN_SEPARATION_WAVELENGTHS * 2.0 * PI / k;
    for (si, z) in sources.iter().enumerate() {
        for x in &receivers {
            if x.dist(*z) < min_sep {
                return Err(SolverError::SourceColumn {
                    source_ix: si,
                    source: Box::new(SolverError::SourceSingularity { min_sep }),
                });
            }
        }
    }

    let mut values = Grid::filled(receivers.len(), sources.len(), C64::new(0.0, 0.0));
    for (si, &z) in sources.iter().enumerate() {
        let column: Result<Vec<C64>, SolverError> = (|| {
            let prepared = model.prepare_point_source(z)?;
            receivers
                .iter()
                .map(|&x| match semantics {
                    FieldSemantics::Total => prepared.total(x),
                    FieldSemantics::Scattered => prepared.scattered(x),
                    FieldSemantics::Incident => fundamental_2d(k, x, z),
                })
                .collect()
        })();
        let column = column.map_err(|e| SolverError::SourceColumn {
            source_ix: si,
            source: Box::new(e),
        })?;
        for (ri, v) in column.into_iter().enumerate() {
            values.set(ri, si, v);
        }
    }
    Ok(FieldMatrix {
        receivers,
        sources,
        values,
        semantics,
    })
}
