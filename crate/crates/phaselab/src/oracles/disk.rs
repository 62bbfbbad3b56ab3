//! Separation-of-variables series for scattering by a disk: sound-soft,
//! impedance (du/dnu + i k lambda u = 0), and constant-index penetrable.
//!
//! Plane waves enter through the Jacobi-Anger expansion about the disk
//! center; point sources through Graf's addition theorem. Reflection
//! coefficients act mode-by-mode, so the same tables serve near fields, far
//! fields, and interior fields.

use super::orders::{
    bessel_j_table, bessel_j_table_complex, derivative_table_complex, derivative_table_real,
    hankel1_table,
};
use super::OracleError;
use crate::point::Point2;
use crate::solver::{IncidentField, IncidentKind};
use crate::C64;
use std::f64::consts::PI;

/// Disk scatterer description.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskSpec {
    pub center: Point2,
    pub radius: f64,
    pub bc: DiskBoundary,
}

/// Boundary condition / material of the disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DiskBoundary {
    /// Dirichlet: u = 0 on the boundary.
    Soft,
    /// du/dnu + i k lambda u = 0; lambda = 0 is the sound-hard limit.
    Impedance { lambda: f64 },
    /// Penetrable disk with constant refractive index (Re > 0, Im >= 0).
    Medium { index: C64 },
}

/// Mode cutoff policy. The standard rule keeps ceil(k a) + 20 modes; the
/// convergence guard still verifies the tail at evaluation time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesTruncation {
    pub n_max: usize,
}

impl SeriesTruncation {
    pub fn standard(k: f64, radius: f64) -> Self {
        SeriesTruncation {
            n_max: (k * radius).ceil() as usize + 20,
        }
    }
}

/// Relative size below which the last retained mode must fall.
const TAIL_LIMIT: f64 = 1e-13;

/// Prepared disk series: reflection (and interior) coefficients for orders
/// 0..=n_max.
pub struct DiskOracle {
    spec: DiskSpec,
    k: f64,
    n_max: usize,
    /// b_n: scattered coefficient per unit incident J_n mode.
    reflection: Vec<C64>,
    /// c_n: interior coefficient per unit incident J_n mode (medium only).
    interior: Vec<C64>,
    /// Interior wavenumber k1 = k sqrt(n) (medium only).
    k_interior: Option<C64>,
}

impl DiskOracle {
    pub fn new(spec: DiskSpec, k: f64) -> Result<Self, OracleError> {
        Self::with_truncation(spec, k, SeriesTruncation::standard(k, spec.radius))
    }

    pub fn with_truncation(
        spec: DiskSpec,
        k: f64,
        truncation: SeriesTruncation,
    ) -> Result<Self, OracleError> {
        if !(spec.radius > 0.0) {
            return Err(OracleError::InvalidSpec {
                reason: format!("radius must be positive, got {}", spec.radius),
            });
        }
        if !(k > 0.0) {
            return Err(OracleError::InvalidSpec {
                reason: format!("wavenumber must be positive, got {k}"),
            });
        }
        let floor = SeriesTruncation::standard(k, spec.radius).n_max;
        if truncation.n_max < floor {
            return Err(OracleError::InvalidSpec {
                reason: format!(
                    "n_max = {} below the required ceil(k a) + 20 = {floor}",
                    truncation.n_max
                ),
            });
        }
        if let DiskBoundary::Medium { index } = spec.bc {
            if !(index.re > 0.0) || index.im < 0.0 {
                return Err(OracleError::InvalidSpec {
                    reason: format!("medium index needs Re > 0 and Im >= 0, got {index}"),
                });
            }
        }

        let n_max = truncation.n_max;
        let a = spec.radius;
        let ka = k * a;
        let jt = bessel_j_table(n_max, ka);
        let djt = derivative_table_real(&jt, ka);
        let ht = hankel1_table(n_max, ka);
        let dht = {
            let mut d = Vec::with_capacity(n_max + 1);
            if n_max >= 1 {
                d.push(-ht[1]);
            } else {
                d.push(C64::new(0.0, 0.0));
            }
            for n in 1..=n_max {
                d.push(ht[n - 1] - (n as f64 / ka) * ht[n]);
            }
            d
        };

        let mut reflection = Vec::with_capacity(n_max + 1);
        let mut interior = Vec::with_capacity(n_max + 1);
        let mut k_interior = None;

        match spec.bc {
            DiskBoundary::Soft => {
                for n in 0..=n_max {
                    reflection.push(-C64::new(jt[n], 0.0) / ht[n]);
                    interior.push(C64::new(0.0, 0.0));
                }
            }
            DiskBoundary::Impedance { lambda } => {
                for n in 0..=n_max {
                    let num = C64::new(djt[n], lambda * jt[n]);
                    let den = dht[n] + C64::new(0.0, lambda) * ht[n];
                    reflection.push(-num / den);
                    interior.push(C64::new(0.0, 0.0));
                }
            }
            DiskBoundary::Medium { index } => {
                let k1 = C64::new(k, 0.0) * index.sqrt();
                k_interior = Some(k1);
                let j1t = bessel_j_table_complex(n_max, k1 * a);
                let dj1t = derivative_table_complex(&j1t, k1 * a);
                for n in 0..=n_max {
                    let det = k1 * dj1t[n] * ht[n] - k * j1t[n] * dht[n];
                    let num = k1 * dj1t[n] * jt[n] - k * j1t[n] * djt[n];
                    reflection.push(-num / det);
                    interior.push(-C64::new(0.0, 2.0 / (PI * a)) / det);
                }
            }
        }

        Ok(DiskOracle {
            spec,
            k,
            n_max,
            reflection,
            interior,
            k_interior,
        })
    }

    pub fn spec(&self) -> &DiskSpec {
        &self.spec
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Reflection coefficients b_0..b_{n_max} (incident-independent).
    pub fn reflection_coefficients(&self) -> &[C64] {
        &self.reflection
    }

    /// Incident mode coefficients A_n for n = -n_max..=n_max, indexed by
    /// n + n_max, about the disk center.
    fn incident_coefficients(&self, inc: &IncidentField) -> Result<Vec<C64>, OracleError> {
        let mut coefs = vec![C64::new(0.0, 0.0); 2 * self.n_max + 1];
        match inc.kind {
            IncidentKind::Plane { direction } => {
                let theta_d = direction.angle();
                let phase = C64::from_polar(1.0, self.k * self.spec.center.dot(direction));
                for n in -(self.n_max as i32)..=(self.n_max as i32) {
                    let i_pow = C64::from_polar(1.0, 0.5 * PI * n as f64);
                    coefs[(n + self.n_max as i32) as usize] =
                        phase * i_pow * C64::from_polar(1.0, -n as f64 * theta_d);
                }
            }
            IncidentKind::Point { source } => {
                self.add_point_source_coefficients(source, &mut coefs)?;
            }
            IncidentKind::Superposition { first, second } => {
                self.add_point_source_coefficients(first, &mut coefs)?;
                self.add_point_source_coefficients(second, &mut coefs)?;
            }
        }
        Ok(coefs)
    }

    fn add_point_source_coefficients(
        &self,
        source: Point2,
        coefs: &mut [C64],
    ) -> Result<(), OracleError> {
        let rel = source - self.spec.center;
        let big_r = rel.norm();
        if big_r <= self.spec.radius {
            return Err(OracleError::SourceInsideDisk { dist: big_r });
        }
        let theta_z = rel.angle();
        let h = hankel1_table(self.n_max, self.k * big_r);
        for n in -(self.n_max as i32)..=(self.n_max as i32) {
            let nn = n.unsigned_abs() as usize;
            let parity = if n < 0 && nn % 2 == 1 { -1.0 } else { 1.0 };
            coefs[(n + self.n_max as i32) as usize] += C64::new(0.0, 0.25)
                * h[nn]
                * parity
                * C64::from_polar(1.0, -n as f64 * theta_z);
        }
        Ok(())
    }

    /// Sum Sum_n A_n radial(|n|, parity) e^{i n phi} with the convergence
    /// guard on the outermost retained ring.
    fn mode_sum(
        &self,
        coefs: &[C64],
        phi: f64,
        mut radial: impl FnMut(usize) -> C64,
    ) -> Result<C64, OracleError> {
        let nm = self.n_max;
        let mut sum = radial(0) * coefs[nm];
        let mut last_ring = 0.0;
        let mut max_ring = sum.norm();
        for n in 1..=nm {
            let rad = radial(n);
            let parity = if n % 2 == 1 { -1.0 } else { 1.0 };
            let plus = coefs[nm + n] * rad * C64::from_polar(1.0, n as f64 * phi);
            let minus = coefs[nm - n] * rad * parity * C64::from_polar(1.0, -(n as f64) * phi);
            let ring = plus + minus;
            sum += ring;
            last_ring = ring.norm();
            max_ring = max_ring.max(last_ring);
        }
        let scale = sum.norm().max(max_ring);
        if scale > 0.0 && last_ring > TAIL_LIMIT * scale {
            return Err(OracleError::TruncationNotConverged {
                last_rel: last_ring / scale,
            });
        }
        Ok(sum)
    }

    /// Scattered field at an exterior point.
    pub fn scattered(&self, inc: &IncidentField, x: Point2) -> Result<C64, OracleError> {
        let rel = x - self.spec.center;
        let rho = rel.norm();
        if rho < self.spec.radius {
            return Err(OracleError::InteriorPoint {
                rho,
                radius: self.spec.radius,
            });
        }
        let coefs = self.incident_coefficients(inc)?;
        let h = hankel1_table(self.n_max, self.k * rho);
        self.mode_sum(&coefs, rel.angle(), |n| h[n] * self.reflection[n])
    }

    /// Total field: incident + scattered outside; the transmitted interior
    /// field inside a penetrable disk.
    pub fn total(&self, inc: &IncidentField, x: Point2) -> Result<C64, OracleError> {
        let rel = x - self.spec.center;
        let rho = rel.norm();
        if rho >= self.spec.radius {
            let incident = inc.eval(x).map_err(|_| OracleError::AtSourcePoint)?;
            return Ok(incident + self.scattered(inc, x)?);
        }
        match self.spec.bc {
            DiskBoundary::Medium { .. } => {
                let k1 = self.k_interior.expect("medium oracle carries k1");
                let coefs = self.incident_coefficients(inc)?;
                let jt = bessel_j_table_complex(self.n_max, k1 * rho);
                self.mode_sum(&coefs, rel.angle(), |n| jt[n] * self.interior[n])
            }
            _ => Err(OracleError::InteriorPoint {
                rho,
                radius: self.spec.radius,
            }),
        }
    }

    /// Radial derivative d(total)/d rho, from the modal series (valid off the
    /// source ring: rho < source distance for point incidence).
    pub fn total_radial_derivative(&self, inc: &IncidentField, x: Point2) -> Result<C64, OracleError> {
        let rel = x - self.spec.center;
        let rho = rel.norm();
        let coefs = self.incident_coefficients(inc)?;
        if rho >= self.spec.radius {
            let kr = self.k * rho;
            let jt = bessel_j_table(self.n_max, kr);
            let djt = derivative_table_real(&jt, kr);
            let ht = hankel1_table(self.n_max, kr);
            let dht: Vec<C64> = {
                let mut d = Vec::with_capacity(self.n_max + 1);
                d.push(if self.n_max >= 1 {
                    -ht[1]
                } else {
                    C64::new(0.0, 0.0)
                });
                for n in 1..=self.n_max {
                    d.push(ht[n - 1] - (n as f64 / kr) * ht[n]);
                }
                d
            };
            self.mode_sum(&coefs, rel.angle(), |n| {
                (C64::new(djt[n], 0.0) + self.reflection[n] * dht[n]) * self.k
            })
        } else {
            let k1 = self.k_interior.ok_or(OracleError::InteriorPoint {
                rho,
                radius: self.spec.radius,
            })?;
            let jt = bessel_j_table_complex(self.n_max, k1 * rho);
            let djt = derivative_table_complex(&jt, k1 * rho);
            self.mode_sum(&coefs, rel.angle(), |n| self.interior[n] * djt[n] * k1)
        }
    }

    /// Far-field value in direction `xhat` under the crate's 2D normalization.
    pub fn far_field(&self, inc: &IncidentField, xhat: Point2) -> Result<C64, OracleError> {
        let coefs = self.incident_coefficients(inc)?;
        let pref = C64::from_polar((2.0 / (PI * self.k)).sqrt(), -PI / 4.0)
            * C64::from_polar(1.0, -self.k * xhat.dot(self.spec.center));
        let theta = xhat.angle();
        let mut radial_phase = Vec::with_capacity(self.n_max + 1);
        for n in 0..=self.n_max {
            // (-i)^n b_n
            radial_phase.push(C64::from_polar(1.0, -0.5 * PI * n as f64) * self.reflection[n]);
        }
        let sum = self.mode_sum(&coefs, theta, |n| radial_phase[n])?;
        Ok(pref * sum)
    }

    /// Far-field pattern over a direction set.
    pub fn far_pattern(
        &self,
        inc: &IncidentField,
        directions: &[Point2],
    ) -> Result<crate::solver::FarFieldPattern, OracleError> {
        let values: Result<Vec<C64>, OracleError> = directions
            .iter()
            .map(|&d| self.far_field(inc, d))
            .collect();
        Ok(crate::solver::FarFieldPattern {
            directions: directions.to_vec(),
            values: values?,
        })
    }
}
