//! Sound-soft locally rough surface solver.
//!
//! The total field is split as u = G(., z) + w, where G is the flat
//! half-plane Green's function (incident wave plus its specular image) and w
//! is the perturbation correction. w is a combined layer with the image
//! kernel dG(x,y)/dnu(y) - i eta G(x,y) on the truncated curve
//! {(t, f(t)) : t in [a - M lambda, b + M lambda]}.
//!
//! Because the image kernel vanishes identically whenever either argument
//! lies on the flat line, the boundary condition on the flat part - inside
//! or beyond the truncation - holds automatically, and the solved density
//! decays to zero across the margins (the C^2 cut of the density over the
//! outer taper zone emerges from the structure; `margin_density_decay`
//! reports it). The flat case f = 0 reproduces the image solution exactly.
//!
//! Quadrature: composite Gauss-Legendre panels. The free-space log
//! singularity on the self/adjacent panel is integrated analytically against
//! Legendre log moments; the near-singular image interactions (targets close
//! to the line) go through adaptive bisection.

use super::gauss::{gauss_legendre, lagrange_values, legendre_log_moments, legendre_table, AdaptiveGl};
use super::linalg::{estimate_condition, one_norm, ComplexLu};
use super::{
    combined_free_kernel, combined_image_kernel, fundamental_2d, halfplane_green,
    BoundaryCondition, Density, DensityNode, LayerKind, SolverError,
};
use crate::geometry::SurfaceProfile;
use crate::point::Point2;
use crate::specialfun::{j0, j1};
use crate::C64;
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Discretization knobs for the truncated-surface BIE.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoughSolverParams {
    /// Truncation margin beyond the bump support, in wavelengths.
    pub margin_wavelengths: f64,
    /// Panels per wavelength.
    pub panels_per_wavelength: f64,
    /// Gauss-Legendre nodes per panel.
    pub gl_order: usize,
    /// Width of the outer decay zone checked by `margin_density_decay`.
    pub taper_wavelengths: f64,
}

impl Default for RoughSolverParams {
    fn default() -> Self {
        RoughSolverParams {
            margin_wavelengths: 8.0,
            panels_per_wavelength: 4.0,
            gl_order: 10,
            taper_wavelengths: 2.0,
        }
    }
}

#[derive(Clone, Debug)]
struct Panel {
    t0: f64,
    t1: f64,
    first_node: usize,
}

impl Panel {
    fn mid(&self) -> f64 {
        0.5 * (self.t0 + self.t1)
    }
    fn half(&self) -> f64 {
        0.5 * (self.t1 - self.t0)
    }
    /// Local coordinate of parameter `t`.
    fn local(&self, t: f64) -> f64 {
        (t - self.mid()) / self.half()
    }
}

#[derive(Clone, Debug)]
struct SurfNode {
    t: f64,
    point: Point2,
    /// (-f', 1): unnormalized upward normal (Jacobian folded).
    normal: Point2,
    jac: f64,
    /// Quadrature weight in the parameter variable.
    weight: f64,
}

/// Prepared rough-surface solver: mesh plus one LU factorization, reused for
/// every incident source.
pub struct RoughSurfaceSolver {
    profile: SurfaceProfile,
    k: f64,
    eta: f64,
    params: RoughSolverParams,
    panels: Vec<Panel>,
    nodes: Vec<SurfNode>,
    gl_ref: (Vec<f64>, Vec<f64>),
    oversample: Oversample,
    lu: ComplexLu,
    cond_estimate: f64,
}

/// Precomputed tables for the oversampled smooth/log-projection quadrature.
struct Oversample {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// legendre[g][n] = P_n(u_g), n < n_mom
    legendre: Vec<Vec<f64>>,
    /// lagrange[g][j] = l_j(u_g) against the panel's GL nodes
    lagrange: Vec<Vec<f64>>,
    n_mom: usize,
}

impl RoughSurfaceSolver {
    pub fn new(
        profile: SurfaceProfile,
        k: f64,
        params: RoughSolverParams,
    ) -> Result<Self, SolverError> {
        let eta = k;
        let wavelength = 2.0 * PI / k;
        let (a, b) = profile.support();
        let margin = params.margin_wavelengths * wavelength;
        let target_len = wavelength / params.panels_per_wavelength;
        let q = params.gl_order;

        let mut panels = Vec::new();
        let mut bounds = Vec::new();
        // margin left, bump, margin right; panel edges pinned to a and b
        segment_edges(a - margin, a, target_len, &mut bounds);
        segment_edges(a, b, target_len, &mut bounds);
        segment_edges(b, b + margin, target_len, &mut bounds);

        let gl_ref = gauss_legendre(q);
        let mut nodes = Vec::new();
        for w in bounds.iter() {
            let first_node = nodes.len();
            let panel = Panel {
                t0: w.0,
                t1: w.1,
                first_node,
            };
            for (&u, &wt) in gl_ref.0.iter().zip(&gl_ref.1) {
                let t = panel.mid() + panel.half() * u;
                let fp = profile.slope(t);
                nodes.push(SurfNode {
                    t,
                    point: Point2::new(t, profile.height(t)),
                    normal: Point2::new(-fp, 1.0),
                    jac: (1.0 + fp * fp).sqrt(),
                    weight: wt * panel.half(),
                });
            }
            panels.push(panel);
        }

        let oversample = build_oversample(&gl_ref.0, q);

        let n = nodes.len();
        let mut a_mat = DMatrix::<C64>::zeros(n, n);
        let helper = RowAssembler {
            profile: &profile,
            k,
            eta,
            panels: &panels,
            nodes: &nodes,
            gl_ref: &gl_ref,
            oversample: &oversample,
        };
        for (i, node) in nodes.iter().enumerate() {
            if node.point.y == 0.0 {
                // flat collocation point: the image kernel annihilates the
                // whole row and the double-layer jump doubles, leaving
                // psi(t_i) = -G(x_i, z) = 0
                a_mat[(i, i)] = C64::new(1.0, 0.0);
                continue;
            }
            let row = helper.operator_row(node.point, node.t);
            for (j, v) in row.into_iter().enumerate() {
                a_mat[(i, j)] = v;
            }
            a_mat[(i, i)] += C64::new(0.5, 0.0);
        }

        let a_norm1 = one_norm(&a_mat);
        let lu = a_mat.lu();
        let cond_estimate = estimate_condition(&lu, a_norm1, n);
        if !cond_estimate.is_finite() || cond_estimate > 1e14 {
            return Err(SolverError::SingularSystem {
                cond: cond_estimate,
            });
        }

        Ok(RoughSurfaceSolver {
            profile,
            k,
            eta,
            params,
            panels,
            nodes,
            gl_ref,
            oversample,
            lu,
            cond_estimate,
        })
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn profile(&self) -> &SurfaceProfile {
        &self.profile
    }

    pub fn params(&self) -> &RoughSolverParams {
        &self.params
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn condition_estimate(&self) -> f64 {
        self.cond_estimate
    }

    fn check_source(&self, z: Point2) -> Result<(), SolverError> {
        if z.y <= 0.0 || z.y <= self.profile.height(z.x) {
            return Err(SolverError::SourceBelowSurface);
        }
        Ok(())
    }

    /// Solve for a single point source at `z`.
    pub fn solve_point(&self, z: Point2) -> Result<RoughSolution<'_>, SolverError> {
        self.solve_sources(vec![z])
    }

    /// Solve for a superposition of point sources.
    pub fn solve_superposition(
        &self,
        z1: Point2,
        z2: Point2,
    ) -> Result<RoughSolution<'_>, SolverError> {
        self.solve_sources(vec![z1, z2])
    }

    fn solve_sources(&self, sources: Vec<Point2>) -> Result<RoughSolution<'_>, SolverError> {
        for &z in &sources {
            self.check_source(z)?;
        }
        let n = self.nodes.len();
        let mut rhs = DVector::<C64>::zeros(n);
        for (i, node) in self.nodes.iter().enumerate() {
            let mut b = C64::new(0.0, 0.0);
            for &z in &sources {
                b -= halfplane_green(self.k, node.point, z)?;
            }
            rhs[i] = b;
        }
        let psi = self
            .lu
            .solve(&rhs)
            .ok_or(SolverError::SingularSystem { cond: f64::INFINITY })?;
        let density_nodes = self
            .nodes
            .iter()
            .map(|nd| DensityNode {
                point: nd.point,
                normal: nd.normal,
                jacobian: nd.jac,
                weight: nd.weight,
            })
            .collect();
        let density = Density {
            nodes: density_nodes,
            values: psi.iter().copied().collect(),
            k: self.k,
            eta: self.eta,
            kind: LayerKind::HalfPlaneImage {
                reflected_sources: sources.iter().map(|z| z.mirror()).collect(),
            },
            bc: BoundaryCondition::Dirichlet,
        };
        Ok(RoughSolution {
            solver: self,
            sources,
            density,
        })
    }
}

/// Solved state for one incident field over a prepared rough solver.
pub struct RoughSolution<'a> {
    solver: &'a RoughSurfaceSolver,
    sources: Vec<Point2>,
    pub density: Density,
}

impl RoughSolution<'_> {
    pub fn sources(&self) -> &[Point2] {
        &self.sources
    }

    /// Incident field (sum of the point sources).
    pub fn incident(&self, x: Point2) -> Result<C64, SolverError> {
        let mut acc = C64::new(0.0, 0.0);
        for &z in &self.sources {
            acc += fundamental_2d(self.solver.k, x, z)?;
        }
        Ok(acc)
    }

    /// Total field u = u^i + u^s at a point strictly off the curve.
    pub fn total(&self, x: Point2) -> Result<C64, SolverError> {
        Ok(self.incident(x)? + super::scattered_near(&self.density, x)?)
    }

    /// One-sided total-field trace at a parameter on the curve.
    pub fn boundary_total(&self, t: f64) -> Result<C64, SolverError> {
        let solver = self.solver;
        let x = Point2::new(t, solver.profile.height(t));
        let mut flat_green = C64::new(0.0, 0.0);
        for &z in &self.sources {
            flat_green += halfplane_green(solver.k, x, z)?;
        }
        // density value at t by Lagrange interpolation within its panel
        let panel_ix = solver
            .panels
            .iter()
            .position(|p| t >= p.t0 && t <= p.t1)
            .expect("parameter inside the truncated curve");
        let panel = &solver.panels[panel_ix];
        let card = lagrange_values(&solver.gl_ref.0, panel.local(t));
        let mut psi_t = C64::new(0.0, 0.0);
        for (j, c) in card.iter().enumerate() {
            psi_t += self.density.values[panel.first_node + j] * c;
        }
        let jump = if x.y == 0.0 { 1.0 } else { 0.5 };
        let helper = RowAssembler {
            profile: &solver.profile,
            k: solver.k,
            eta: solver.eta,
            panels: &solver.panels,
            nodes: &solver.nodes,
            gl_ref: &solver.gl_ref,
            oversample: &solver.oversample,
        };
        let mut w = jump * psi_t;
        if x.y != 0.0 {
            let row = helper.operator_row(x, t);
            for (j, v) in row.into_iter().enumerate() {
                w += v * self.density.values[j];
            }
        }
        Ok(flat_green + w)
    }

    /// Max |u| over off-node surface checkpoints, relative to the incident
    /// scale max |u^i| there.
    pub fn boundary_residual(&self) -> Result<f64, SolverError> {
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for panel in &self.solver.panels {
            for &u in &[-0.6, 0.0, 0.6] {
                let t = panel.mid() + panel.half() * u;
                let total = self.boundary_total(t)?;
                worst = worst.max(total.norm());
                let x = Point2::new(t, self.solver.profile.height(t));
                scale = scale.max(self.incident(x)?.norm());
            }
        }
        Ok(worst / scale)
    }

    /// Largest density magnitude over the outer taper zone, relative to the
    /// overall density scale: the "smooth cut" of the density across the
    /// truncation margins.
    pub fn margin_density_decay(&self) -> f64 {
        let solver = self.solver;
        let wavelength = 2.0 * PI / solver.k;
        let zone = solver.params.taper_wavelengths * wavelength;
        let (a, b) = solver.profile.support();
        let lo = a - solver.params.margin_wavelengths * wavelength + zone;
        let hi = b + solver.params.margin_wavelengths * wavelength - zone;
        let mut outer = 0.0f64;
        let mut overall = 0.0f64;
        for (node, value) in solver.nodes.iter().zip(&self.density.values) {
            let mag = value.norm();
            overall = overall.max(mag);
            if node.t < lo || node.t > hi {
                outer = outer.max(mag);
            }
        }
        if overall == 0.0 {
            0.0
        } else {
            outer / overall
        }
    }
}

/// Panel edges of one segment, pinned at both ends.
fn segment_edges(from: f64, to: f64, target_len: f64, out: &mut Vec<(f64, f64)>) {
    if to <= from {
        return;
    }
    let count = ((to - from) / target_len).ceil().max(1.0) as usize;
    for i in 0..count {
        let t0 = from + (to - from) * i as f64 / count as f64;
        let t1 = from + (to - from) * (i + 1) as f64 / count as f64;
        out.push((t0, t1));
    }
}

fn build_oversample(gl_nodes: &[f64], q: usize) -> Oversample {
    let n_mom = q + 4;
    let (nodes, weights) = gauss_legendre(2 * q + 4);
    let legendre: Vec<Vec<f64>> = nodes.iter().map(|&u| legendre_table(n_mom - 1, u)).collect();
    let lagrange: Vec<Vec<f64>> = nodes.iter().map(|&u| lagrange_values(gl_nodes, u)).collect();
    Oversample {
        nodes,
        weights,
        legendre,
        lagrange,
        n_mom,
    }
}

/// Assembles one operator row (the integral part, no jump term) for a target
/// on the curve.
struct RowAssembler<'a> {
    profile: &'a SurfaceProfile,
    k: f64,
    eta: f64,
    panels: &'a [Panel],
    nodes: &'a [SurfNode],
    gl_ref: &'a (Vec<f64>, Vec<f64>),
    oversample: &'a Oversample,
}

impl RowAssembler<'_> {
    fn operator_row(&self, x: Point2, s: f64) -> Vec<C64> {
        let q = self.gl_ref.0.len();
        let mut row = vec![C64::new(0.0, 0.0); self.nodes.len()];
        let adaptive = AdaptiveGl::new();
        for panel in self.panels {
            let sigma = panel.local(s);
            let span = panel.t1 - panel.t0;
            // ---- free-space part ----
            if sigma.abs() <= 1.3 {
                self.free_near(panel, x, sigma, &mut row);
            } else {
                for j in 0..q {
                    let node = &self.nodes[panel.first_node + j];
                    row[panel.first_node + j] += combined_free_kernel(
                        self.k, self.eta, x, node.point, node.normal, node.jac,
                    ) * node.weight;
                }
            }
            // ---- image part (subtracted) ----
            let image_point = x.mirror();
            let d_img = (0..q)
                .map(|j| self.nodes[panel.first_node + j].point.dist(image_point))
                .fold(f64::INFINITY, f64::min);
            if d_img > 2.0 * span {
                for j in 0..q {
                    let node = &self.nodes[panel.first_node + j];
                    row[panel.first_node + j] -= combined_image_kernel(
                        self.k, self.eta, x, node.point, node.normal, node.jac,
                    ) * node.weight;
                }
            } else {
                for j in 0..q {
                    let mut f = |u: f64| {
                        let t = panel.mid() + panel.half() * u;
                        let fp = self.profile.slope(t);
                        let y = Point2::new(t, self.profile.height(t));
                        let n = Point2::new(-fp, 1.0);
                        let jac = (1.0 + fp * fp).sqrt();
                        let card = lagrange_values(&self.gl_ref.0, u)[j];
                        combined_image_kernel(self.k, self.eta, x, y, n, jac)
                            * (card * panel.half())
                    };
                    row[panel.first_node + j] -= adaptive.integrate(&mut f, -1.0, 1.0, 1e-12, 44);
                }
            }
        }
        row
    }

    /// Free-space kernel against one panel when the target parameter is on or
    /// near it: smooth remainder by oversampled quadrature, logarithmic part
    /// by analytic Legendre moments.
    fn free_near(&self, panel: &Panel, x: Point2, sigma: f64, row: &mut [C64]) {
        let q = self.gl_ref.0.len();
        let os = self.oversample;
        let half = panel.half();
        let moments = legendre_log_moments(os.n_mom, sigma);
        // folded log weights: Sum_n (2n+1)/2 P_n(u_g) F_n(sigma), one per
        // oversample point
        let folded: Vec<f64> = os
            .legendre
            .iter()
            .map(|p_row| {
                (0..os.n_mom)
                    .map(|n| (2.0 * n as f64 + 1.0) / 2.0 * p_row[n] * moments[n])
                    .sum()
            })
            .collect();
        let mut logsum = vec![C64::new(0.0, 0.0); q];
        let mut smoothsum = vec![C64::new(0.0, 0.0); q];
        for (g, (&u, &wg)) in os.nodes.iter().zip(&os.weights).enumerate() {
            let t = panel.mid() + half * u;
            let fp = self.profile.slope(t);
            let y = Point2::new(t, self.profile.height(t));
            let n = Point2::new(-fp, 1.0);
            let jac = (1.0 + fp * fp).sqrt();
            let (value, logcoef) = if (u - sigma).abs() < 1e-9 {
                // at the target itself: analytic diagonal limit of the
                // log-subtracted kernel
                let fpp = self.profile.second_derivative(t);
                let klog = C64::new(0.0, self.eta * jac / (2.0 * PI));
                let reg = C64::new(fpp / (4.0 * PI * jac * jac), 0.0)
                    - C64::new(0.0, self.eta)
                        * (C64::new(0.0, 0.25)
                            + C64::new(((2.0 / self.k).ln() - EULER_GAMMA) / (2.0 * PI), 0.0))
                        * jac;
                (reg + klog * (jac * half).ln(), klog)
            } else {
                let kfree = combined_free_kernel(self.k, self.eta, x, y, n, jac);
                let d = x - y;
                let r = d.norm();
                let kr = self.k * r;
                let proj = n.dot(d) / r;
                let klog = C64::new(-(self.k / (2.0 * PI)) * j1(kr) * proj, 0.0)
                    + C64::new(0.0, self.eta / (2.0 * PI) * j0(kr) * jac);
                (kfree - klog * (u - sigma).abs().ln(), klog)
            };
            for j in 0..q {
                let lj = os.lagrange[g][j];
                smoothsum[j] += value * (wg * lj * half);
                logsum[j] += logcoef * (wg * lj * half * folded[g]);
            }
        }
        for j in 0..q {
            row[panel.first_node + j] += smoothsum[j] + logsum[j];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::flat_halfplane_exact;

    fn quick_params() -> RoughSolverParams {
        RoughSolverParams {
            margin_wavelengths: 3.0,
            panels_per_wavelength: 4.0,
            gl_order: 8,
            taper_wavelengths: 2.0,
        }
    }

    #[test]
    fn flat_surface_reproduces_image_solution_exactly() {
        let solver =
            RoughSurfaceSolver::new(SurfaceProfile::flat(), 2.0, quick_params()).unwrap();
        let z = Point2::new(0.5, 2.0);
        let sol = solver.solve_point(z).unwrap();
        for &(px, py) in &[(0.0, 1.0), (3.0, 0.7), (-2.0, 2.5), (10.0, 4.0)] {
            let x = Point2::new(px, py);
            let got = sol.total(x).unwrap();
            let exact = flat_halfplane_exact(2.0, x, z).unwrap();
            assert!(
                (got - exact).norm() <= 1e-10,
                "flat-case mismatch at {x:?}: {got} vs {exact}"
            );
        }
    }

    #[test]
    fn bump_dirichlet_residual() {
        let profile = SurfaceProfile::new(-1.0, 1.0, 0.3).unwrap();
        let solver = RoughSurfaceSolver::new(profile, 2.0, quick_params()).unwrap();
        let sol = solver.solve_point(Point2::new(0.3, 2.5)).unwrap();
        let res = sol.boundary_residual().unwrap();
        assert!(res <= 1e-6, "bump boundary residual {res}");
    }

    #[test]
    fn superposition_is_sum_of_singles() {
        let profile = SurfaceProfile::new(-1.0, 1.0, 0.3).unwrap();
        let solver = RoughSurfaceSolver::new(profile, 2.0, quick_params()).unwrap();
        let z1 = Point2::new(-1.0, 2.0);
        let z2 = Point2::new(1.5, 3.0);
        let both = solver.solve_superposition(z1, z2).unwrap();
        let s1 = solver.solve_point(z1).unwrap();
        let s2 = solver.solve_point(z2).unwrap();
        let x = Point2::new(0.7, 1.2);
        let lhs = both.total(x).unwrap();
        let rhs = s1.total(x).unwrap() + s2.total(x).unwrap();
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn reciprocity_of_total_field() {
        let profile = SurfaceProfile::new(-1.0, 1.0, 0.3).unwrap();
        let solver = RoughSurfaceSolver::new(profile, 2.0, quick_params()).unwrap();
        let pairs = [
            (Point2::new(-1.5, 1.8), Point2::new(2.0, 2.2)),
            (Point2::new(0.0, 3.0), Point2::new(1.0, 1.1)),
            (Point2::new(-2.5, 2.4), Point2::new(0.4, 0.9)),
        ];
        for (x, z) in pairs {
            let u_xz = solver.solve_point(z).unwrap().total(x).unwrap();
            let u_zx = solver.solve_point(x).unwrap().total(z).unwrap();
            let rel = (u_xz - u_zx).norm() / u_xz.norm();
            assert!(rel <= 1e-6, "reciprocity violation {rel} for {x:?}, {z:?}");
        }
    }

    #[test]
    fn density_decays_across_margins() {
        let profile = SurfaceProfile::new(-1.0, 1.0, 0.3).unwrap();
        let solver = RoughSurfaceSolver::new(profile, 2.0, quick_params()).unwrap();
        let sol = solver.solve_point(Point2::new(0.0, 2.0)).unwrap();
        let decay = sol.margin_density_decay();
        assert!(decay <= 1e-8, "margin density decay {decay}");
    }

    #[test]
    fn rejects_source_below_surface() {
        let profile = SurfaceProfile::new(-1.0, 1.0, 0.3).unwrap();
        let solver = RoughSurfaceSolver::new(profile, 2.0, quick_params()).unwrap();
        assert!(matches!(
            solver.solve_point(Point2::new(0.0, -0.5)),
            Err(SolverError::SourceBelowSurface)
        ));
        assert!(matches!(
            solver.solve_point(Point2::new(0.0, 0.2)),
            Err(SolverError::SourceBelowSurface)
        ));
    }
}
