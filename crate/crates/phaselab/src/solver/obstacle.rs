//! Nystrom combined-field solver for the exterior Dirichlet (sound-soft)
//! problem on a smooth closed curve.
//!
//! Ansatz: u^s = (D - i eta S) phi with eta = k, which removes the interior
//! resonances of the single- and double-layer equations. The boundary
//! equation phi + 2 (D - i eta S) phi = -2 u^i is discretized with the
//! trigonometric quadrature for logarithmic kernels on closed curves
//! (weights R_j below), giving super-algebraic convergence for analytic
//! boundaries.

use super::linalg::{estimate_condition, one_norm, ComplexLu};
use super::{
    BoundaryCondition, Density, DensityNode, IncidentField, LayerKind, SolverError,
};
use crate::geometry::BoundaryCurve;
use crate::point::Point2;
use crate::specialfun::{h1_0, h1_1, j0, j1};
use crate::C64;
use nalgebra::DMatrix;
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Clone, Debug)]
struct CurveNode {
    t: f64,
    p: Point2,
    dp: Point2,
    ddp: Point2,
    jac: f64,
    /// (p2', -p1'), the unnormalized outward normal.
    normal: Point2,
}

/// Prepared CFIE solver: geometry tables plus one LU factorization, reused
/// across incident fields.
pub struct SoftObstacleSolver {
    curve: BoundaryCurve,
    k: f64,
    eta: f64,
    n_half: usize,
    nodes: Vec<CurveNode>,
    lu: ComplexLu,
    cond_estimate: f64,
}

impl SoftObstacleSolver {
    pub fn new(curve: BoundaryCurve, k: f64) -> Result<Self, SolverError> {
        let n_total = curve.n_nodes();
        let n_half = n_total / 2;
        let eta = k;
        let nodes: Vec<CurveNode> = curve
            .node_params()
            .into_iter()
            .map(|t| {
                let dp = curve.derivative(t);
                CurveNode {
                    t,
                    p: curve.point(t),
                    dp,
                    ddp: curve.second_derivative(t),
                    jac: dp.norm(),
                    normal: Point2::new(dp.y, -dp.x),
                }
            })
            .collect();

        let r_weights = kress_node_weights(n_half);
        let mut a = DMatrix::<C64>::zeros(n_total, n_total);
        for i in 0..n_total {
            for j in 0..n_total {
                let sep = (i as isize - j as isize).unsigned_abs();
                let r_ij = r_weights[sep.min(2 * n_half - sep)];
                let (k1, k2) = split_kernels(k, eta, &nodes[i], &nodes[j], i == j);
                let mut entry = r_ij * k1 + (PI / n_half as f64) * k2;
                if i == j {
                    entry += C64::new(1.0, 0.0);
                }
                a[(i, j)] = entry;
            }
        }

        let a_norm1 = one_norm(&a);
        let lu = a.lu();
        let cond_estimate = estimate_condition(&lu, a_norm1, n_total);
        if !cond_estimate.is_finite() || cond_estimate > 1e14 {
            return Err(SolverError::SingularSystem {
                cond: cond_estimate,
            });
        }
        Ok(SoftObstacleSolver {
            curve,
            k,
            eta,
            n_half,
            nodes,
            lu,
            cond_estimate,
        })
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn curve(&self) -> &BoundaryCurve {
        &self.curve
    }

    /// 1-norm condition estimate of the discretized boundary operator
    /// (lower bound via a few deterministic solves).
    pub fn condition_estimate(&self) -> f64 {
        self.cond_estimate
    }

    /// Solve the combined-field equation for the given incident field.
    pub fn solve(&self, inc: &IncidentField) -> Result<Density, SolverError> {
        for s in inc.sources() {
            if self.curve.contains(s) {
                return Err(SolverError::SourceInsideScatterer);
            }
        }
        let n = self.nodes.len();
        let mut rhs = nalgebra::DVector::<C64>::zeros(n);
        for (i, node) in self.nodes.iter().enumerate() {
            rhs[i] = -2.0 * inc.eval(node.p)?;
        }
        let phi = self
            .lu
            .solve(&rhs)
            .ok_or(SolverError::SingularSystem { cond: f64::INFINITY })?;
        let nodes = self
            .nodes
            .iter()
            .map(|nd| DensityNode {
                point: nd.p,
                normal: nd.normal,
                jacobian: nd.jac,
                weight: PI / self.n_half as f64,
            })
            .collect();
        Ok(Density {
            nodes,
            values: phi.iter().copied().collect(),
            k: self.k,
            eta: self.eta,
            kind: LayerKind::FreeSpaceCombined,
            bc: BoundaryCondition::Dirichlet,
        })
    }

    /// One-sided boundary trace of the total field at an arbitrary parameter,
    /// via trigonometric interpolation of the density and the quadrature
    /// weights evaluated off the nodes.
    pub fn boundary_total(
        &self,
        density: &Density,
        inc: &IncidentField,
        s: f64,
    ) -> Result<C64, SolverError> {
        let n_half = self.n_half;
        let target = CurveNode {
            t: s,
            p: self.curve.point(s),
            dp: self.curve.derivative(s),
            ddp: self.curve.second_derivative(s),
            jac: self.curve.derivative(s).norm(),
            normal: {
                let d = self.curve.derivative(s);
                Point2::new(d.y, -d.x)
            },
        };
        let mut phi_s = C64::new(0.0, 0.0);
        let mut integral = C64::new(0.0, 0.0);
        for (j, node) in self.nodes.iter().enumerate() {
            let diff = s - node.t;
            phi_s += density.values[j] * trig_cardinal(n_half, diff);
            let same = diff.abs() < 1e-14 || (diff.abs() - 2.0 * PI).abs() < 1e-14;
            let (k1, k2) = split_kernels(self.k, self.eta, &target, node, same);
            integral += (kress_weight_at(n_half, diff) * k1 + (PI / n_half as f64) * k2)
                * density.values[j];
        }
        let u_scat = 0.5 * phi_s + 0.5 * integral;
        Ok(inc.eval(target.p)? + u_scat)
    }

    /// Dirichlet residual: max |u^i + u^s| over `2N` off-node boundary
    /// checkpoints, relative to the incident scale max |u^i|.
    pub fn boundary_residual(
        &self,
        density: &Density,
        inc: &IncidentField,
    ) -> Result<f64, SolverError> {
        let n_check = 2 * self.nodes.len();
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for m in 0..n_check {
            let s = (m as f64 + 0.5) * 2.0 * PI / n_check as f64;
            let u = self.boundary_total(density, inc, s)?;
            worst = worst.max(u.norm());
            scale = scale.max(inc.eval(self.curve.point(s))?.norm());
        }
        Ok(worst / scale)
    }
}

/// Split kernels of the combined-field operator against the periodic log:
/// K(t, tau) = K1(t, tau) ln(4 sin^2((t - tau)/2)) + K2(t, tau), both smooth,
/// scaled so that the equation reads phi + Int K phi = -2 u^i.
fn split_kernels(k: f64, eta: f64, ti: &CurveNode, tj: &CurveNode, diagonal: bool) -> (C64, C64) {
    if diagonal {
        // L1 vanishes on the diagonal; M1 is -J/(4 pi).
        let m1 = -tj.jac / (4.0 * PI);
        let k1 = 2.0 * C64::new(0.0, -eta) * m1;
        let l2 = tj.normal.dot(tj.ddp) / (4.0 * PI * tj.jac * tj.jac);
        let m2 = (C64::new(0.0, 0.25)
            - C64::new(
                EULER_GAMMA / (2.0 * PI) + (0.5 * k * tj.jac).ln() / (2.0 * PI),
                0.0,
            ))
            * tj.jac;
        let k2 = 2.0 * (C64::new(l2, 0.0) - C64::new(0.0, eta) * m2);
        return (k1, k2);
    }
    let d = ti.p - tj.p;
    let r = d.norm();
    let kr = k * r;
    let proj = tj.normal.dot(d) / r;
    let l = C64::new(0.0, 0.25 * k) * h1_1(kr) * proj;
    let m = C64::new(0.0, 0.25) * h1_0(kr) * tj.jac;
    let l1 = -(k / (4.0 * PI)) * j1(kr) * proj;
    let m1 = -j0(kr) * tj.jac / (4.0 * PI);
    let log_term = (4.0 * (0.5 * (ti.t - tj.t)).sin().powi(2)).ln();
    let l2 = l - C64::new(l1 * log_term, 0.0);
    let m2 = m - C64::new(m1 * log_term, 0.0);
    let k1 = 2.0 * (C64::new(l1, 0.0) - C64::new(0.0, eta) * C64::new(m1, 0.0));
    let k2 = 2.0 * (l2 - C64::new(0.0, eta) * m2);
    (k1, k2)
}

/// Quadrature weights R_|i-j| for Int ln(4 sin^2((t - tau)/2)) f(tau) dtau at
/// the nodes t_j = pi j / n.
fn kress_node_weights(n_half: usize) -> Vec<f64> {
    let n = n_half as f64;
    (0..=n_half)
        .map(|sep| {
            let angle = sep as f64 * PI / n;
            let mut sum = 0.0;
            for m in 1..n_half {
                sum += (m as f64 * angle).cos() / m as f64;
            }
            -2.0 * PI / n * sum - PI / (n * n) * (n_half as f64 * angle).cos()
        })
        .collect()
}

/// The same weights at an arbitrary offset t - t_j.
fn kress_weight_at(n_half: usize, diff: f64) -> f64 {
    let n = n_half as f64;
    let mut sum = 0.0;
    for m in 1..n_half {
        sum += (m as f64 * diff).cos() / m as f64;
    }
    -2.0 * PI / n * sum - PI / (n * n) * (n * diff).cos()
}

/// Trigonometric cardinal function for 2n equispaced nodes.
fn trig_cardinal(n_half: usize, diff: f64) -> f64 {
    let n = n_half as f64;
    let mut sum = 1.0;
    for m in 1..n_half {
        sum += 2.0 * (m as f64 * diff).cos();
    }
    sum += (n * diff).cos();
    sum / (2.0 * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CurveKind;
    use crate::solver::{scattered_far, scattered_near};

    fn unit_disk(n: usize) -> BoundaryCurve {
        BoundaryCurve::new(CurveKind::Circle { radius: 1.0 }, Point2::ORIGIN, n).unwrap()
    }

    #[test]
    fn dirichlet_residual_plane_wave() {
        let solver = SoftObstacleSolver::new(unit_disk(64), 1.0).unwrap();
        let inc = IncidentField::plane(Point2::new(1.0, 0.0), 1.0).unwrap();
        let density = solver.solve(&inc).unwrap();
        let res = solver.boundary_residual(&density, &inc).unwrap();
        assert!(res <= 1e-8, "boundary residual {res}");
    }

    #[test]
    fn dirichlet_residual_kite_point_source() {
        let curve = BoundaryCurve::new(CurveKind::Kite, Point2::ORIGIN, 96).unwrap();
        let solver = SoftObstacleSolver::new(curve, 2.0).unwrap();
        let inc = IncidentField::point(Point2::new(0.0, 4.0), 2.0);
        let density = solver.solve(&inc).unwrap();
        let res = solver.boundary_residual(&density, &inc).unwrap();
        assert!(res <= 1e-8, "kite boundary residual {res}");
    }

    #[test]
    fn rejects_source_inside() {
        let solver = SoftObstacleSolver::new(unit_disk(64), 1.0).unwrap();
        let inc = IncidentField::point(Point2::new(0.2, 0.0), 1.0);
        assert!(matches!(
            solver.solve(&inc),
            Err(SolverError::SourceInsideScatterer)
        ));
    }

    #[test]
    fn radiation_decay_rate() {
        // |u^s| ~ 1/sqrt(rho): sqrt(rho) |u^s| stabilizes within 2% between
        // rho = 100 and rho = 400
        let solver = SoftObstacleSolver::new(unit_disk(64), 1.0).unwrap();
        let inc = IncidentField::plane(Point2::new(1.0, 0.0), 1.0).unwrap();
        let density = solver.solve(&inc).unwrap();
        let dir = Point2::from_angle(0.7);
        let a100 = scattered_near(&density, dir * 100.0).unwrap().norm() * 100.0f64.sqrt();
        let a400 = scattered_near(&density, dir * 400.0).unwrap().norm() * 400.0f64.sqrt();
        assert!((a100 / a400 - 1.0).abs() < 0.02);
    }

    #[test]
    fn far_field_is_radiation_limit() {
        // sqrt(rho) e^{-ik rho} u^s(rho xhat) -> u^inf(xhat) with O(1/rho) error
        let solver = SoftObstacleSolver::new(unit_disk(64), 1.0).unwrap();
        let inc = IncidentField::plane(Point2::new(1.0, 0.0), 1.0).unwrap();
        let density = solver.solve(&inc).unwrap();
        let xhat = Point2::from_angle(2.2);
        let ff = scattered_far(&density, xhat).unwrap();
        let mut errs = Vec::new();
        for &rho in &[50.0, 100.0, 200.0] {
            let u = scattered_near(&density, xhat * rho).unwrap();
            let extrap = u * C64::from_polar(rho.sqrt(), -1.0 * rho);
            errs.push((extrap - ff).norm());
        }
        // convergence order in 1/rho at least ~0.9
        let order01 = (errs[0] / errs[1]).log2();
        let order12 = (errs[1] / errs[2]).log2();
        assert!(order01 >= 0.9, "order {order01}");
        assert!(order12 >= 0.9, "order {order12}");
    }

    #[test]
    fn condition_estimate_is_modest() {
        let solver = SoftObstacleSolver::new(unit_disk(64), 1.0).unwrap();
        let cond = solver.condition_estimate();
        assert!(cond > 1.0 && cond < 1e4, "condition estimate {cond}");
    }
}
