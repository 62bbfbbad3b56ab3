//! Image-method solution for the flat sound-soft half-plane, duplicated here
//! as the oracle-side reference for the rough-surface solver's flat limit.

use super::OracleError;
use crate::point::Point2;
use crate::specialfun::h1_0;
use crate::C64;
use std::f64::consts::PI;

/// Total field of a point source over the flat sound-soft half-plane:
/// u(x, z) = Phi(x, z) - Phi(x, z'), z' the mirror image of z.
pub fn flat_halfplane_exact(k: f64, x: Point2, z: Point2) -> Result<C64, OracleError> {
    let min_sep = 1e-8 * 2.0 * PI / k;
    let r = x.dist(z);
    if r < min_sep {
        return Err(OracleError::AtSourcePoint);
    }
    let phi = |r: f64| C64::new(0.0, 0.25) * h1_0(k * r);
    let r_image = x.dist(z.mirror());
    Ok(phi(r) - phi(r_image))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_on_the_line() {
        let z = Point2::new(0.3, 1.7);
        for j in 0..20 {
            let x = Point2::new(-4.0 + 0.41 * j as f64, 0.0);
            let u = flat_halfplane_exact(1.7, x, z).unwrap();
            assert!(u.norm() <= 1e-14, "residual {u} at {x:?}");
        }
    }

    #[test]
    fn reciprocity_exact() {
        let x = Point2::new(1.0, 0.8);
        let z = Point2::new(-2.0, 2.5);
        let a = flat_halfplane_exact(2.0, x, z).unwrap();
        let b = flat_halfplane_exact(2.0, z, x).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_coincident_points() {
        let z = Point2::new(0.0, 1.0);
        assert!(flat_halfplane_exact(1.0, z, z).is_err());
    }
}
