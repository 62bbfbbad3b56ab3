//! Compactly supported C^2 height profiles for locally rough surfaces.

use super::GeometryError;

/// Height function of a locally perturbed half-plane boundary: the cubic-power
/// polynomial bump `h * (1 - u^2)^3` on `[a, b]` (u the affine map of `[a, b]`
/// onto `[-1, 1]`), identically zero outside. Value, slope, and curvature all
/// vanish at the support endpoints, so the surface is C^2 across the junction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceProfile {
    a: f64,
    b: f64,
    amplitude: f64,
}

impl SurfaceProfile {
    pub fn new(a: f64, b: f64, amplitude: f64) -> Result<Self, GeometryError> {
        if !(a < b) {
            return Err(GeometryError::InvalidProfileSupport { a, b });
        }
        Ok(SurfaceProfile { a, b, amplitude })
    }

    /// A flat surface (zero-amplitude bump on a nominal support).
    pub fn flat() -> Self {
        SurfaceProfile {
            a: -1.0,
            b: 1.0,
            amplitude: 0.0,
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    fn to_unit(&self, x: f64) -> f64 {
        (2.0 * x - self.a - self.b) / (self.b - self.a)
    }

    /// f(x); exactly 0.0 outside the support.
    pub fn height(&self, x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let u = self.to_unit(x);
        let w = 1.0 - u * u;
        self.amplitude * w * w * w
    }

    /// f'(x)
    pub fn slope(&self, x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let u = self.to_unit(x);
        let w = 1.0 - u * u;
        let du = 2.0 / (self.b - self.a);
        -6.0 * self.amplitude * u * w * w * du
    }

    /// f''(x)
    pub fn second_derivative(&self, x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let u = self.to_unit(x);
        let w = 1.0 - u * u;
        let du = 2.0 / (self.b - self.a);
        -6.0 * self.amplitude * w * (1.0 - 5.0 * u * u) * du * du
    }

    /// Largest surface height (0 for non-positive amplitudes: the flat part
    /// always reaches height 0).
    pub fn max_height(&self) -> f64 {
        self.amplitude.max(0.0)
    }
}
