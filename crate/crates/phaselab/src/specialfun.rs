//! Cylindrical Bessel and Hankel functions of orders 0 and 1.
//!
//! These are the kernel primitives of every field evaluation in the crate:
//! the 2D fundamental solution is `(i/4) H0^(1)(k r)` and its gradient brings
//! in `H1^(1)`. Evaluation is delegated to the msun-derived routines in the
//! `libm` crate, which use piecewise rational approximations for small
//! arguments and asymptotic amplitude/phase expansions beyond, accurate to a
//! few ulps across the range used here (`x <= 100`).
//!
//! Orders are limited to 0 and 1 on purpose: every kernel in the crate reduces
//! to these two, and the series oracles generate higher orders by recurrence
//! (see `oracles::orders`).

use crate::C64;
use thiserror::Error;

/// Bessel/Hankel order selector. Only orders 0 and 1 are provided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

#[derive(Debug, Error, PartialEq)]
pub enum SpecialFunError {
    /// Y and H^(1) have a logarithmic singularity at the origin and are
    /// undefined for negative arguments.
    #[error("bessel function of the second kind requires x > 0, got x = {x}")]
    NonpositiveArgument { x: f64 },
}

/// J0(x). Total for x >= 0.
#[inline]
pub fn j0(x: f64) -> f64 {
    debug_assert!(x >= 0.0, "bessel_j argument must be nonnegative");
    libm::j0(x)
}

/// J1(x). Total for x >= 0.
#[inline]
pub fn j1(x: f64) -> f64 {
    debug_assert!(x >= 0.0, "bessel_j argument must be nonnegative");
    libm::j1(x)
}

/// Y0(x) for x > 0. Callers must guard the argument themselves; use
/// [`bessel_y`] for the checked variant.
#[inline]
pub fn y0(x: f64) -> f64 {
    debug_assert!(x > 0.0, "bessel_y argument must be positive");
    libm::y0(x)
}

/// Y1(x) for x > 0.
#[inline]
pub fn y1(x: f64) -> f64 {
    debug_assert!(x > 0.0, "bessel_y argument must be positive");
    libm::y1(x)
}

/// H0^(1)(x) = J0(x) + i Y0(x) for x > 0.
#[inline]
pub fn h1_0(x: f64) -> C64 {
    C64::new(j0(x), y0(x))
}

/// H1^(1)(x) = J1(x) + i Y1(x) for x > 0.
#[inline]
pub fn h1_1(x: f64) -> C64 {
    C64::new(j1(x), y1(x))
}

/// Bessel function of the first kind, orders 0 and 1.
///
/// Absolute error <= 1e-13 for 0 <= x <= 100.
pub fn bessel_j(order: Order, x: f64) -> f64 {
    assert!(
        x >= 0.0,
        "bessel_j argument must be nonnegative, got {x}"
    );
    match order {
        Order::Zero => j0(x),
        Order::One => j1(x),
    }
}

/// Bessel function of the second kind, orders 0 and 1.
///
/// Absolute error <= 1e-12 for 1e-8 <= x <= 100. Errors at x <= 0
/// (logarithmic singularity at the origin).
pub fn bessel_y(order: Order, x: f64) -> Result<f64, SpecialFunError> {
    if x <= 0.0 {
        return Err(SpecialFunError::NonpositiveArgument { x });
    }
    Ok(match order {
        Order::Zero => y0(x),
        Order::One => y1(x),
    })
}

/// Hankel function of the first kind, exactly `bessel_j + i * bessel_y`.
pub fn hankel1(order: Order, x: f64) -> Result<C64, SpecialFunError> {
    let im = bessel_y(order, x)?;
    Ok(C64::new(bessel_j(order, x), im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    // ---- series oracles (independent of the implementation path) ----
    //
    // Ascending power series summed with compensated (Kahan) accumulation to
    // machine convergence. Trustworthy to ~2e-14 absolute for x <= 8, which
    // is where the oracle comparisons run; larger arguments are covered by
    // identity-based checks (Wronskian, derivative, asymptotic amplitude).

    struct Kahan {
        sum: f64,
        c: f64,
    }

    impl Kahan {
        fn new(first: f64) -> Self {
            Kahan { sum: first, c: 0.0 }
        }
        fn add(&mut self, v: f64) {
            let y = v - self.c;
            let t = self.sum + y;
            self.c = (t - self.sum) - y;
            self.sum = t;
        }
    }

    fn j0_series(x: f64) -> f64 {
        let q = 0.25 * x * x;
        let mut term = 1.0f64;
        let mut acc = Kahan::new(1.0);
        for m in 1..400u32 {
            term *= -q / ((m as f64) * (m as f64));
            acc.add(term);
            if term.abs() < 1e-20 {
                break;
            }
        }
        acc.sum
    }

    fn j1_series(x: f64) -> f64 {
        let q = 0.25 * x * x;
        let mut term = 0.5 * x;
        let mut acc = Kahan::new(term);
        for m in 1..400u32 {
            term *= -q / ((m as f64) * ((m + 1) as f64));
            acc.add(term);
            if term.abs() < 1e-20 {
                break;
            }
        }
        acc.sum
    }

    // Y0 = (2/pi) [ (ln(x/2) + gamma) J0(x) + sum_{m>=1} (-1)^{m+1} H_m q^m / (m!)^2 ]
    fn y0_series(x: f64) -> f64 {
        let q = 0.25 * x * x;
        let mut term = 1.0f64;
        let mut harmonic = 0.0f64;
        let mut acc = Kahan::new(0.0);
        for m in 1..400u32 {
            term *= q / ((m as f64) * (m as f64));
            harmonic += 1.0 / m as f64;
            let contrib = if m % 2 == 1 {
                term * harmonic
            } else {
                -term * harmonic
            };
            acc.add(contrib);
            if term * harmonic < 1e-20 {
                break;
            }
        }
        (2.0 / PI) * (((x / 2.0).ln() + EULER_GAMMA) * j0_series(x) + acc.sum)
    }

    // Y1 = (2/pi) ln(x/2) J1(x) - 2/(pi x)
    //      - (x/(2 pi)) sum_{m>=0} (H_m + H_{m+1} - 2 gamma) (-q)^m / (m! (m+1)!)
    fn y1_series(x: f64) -> f64 {
        let q = 0.25 * x * x;
        let mut term = 1.0f64;
        let mut h_m = 0.0f64;
        let mut h_m1 = 1.0f64;
        let mut acc = Kahan::new(h_m + h_m1 - 2.0 * EULER_GAMMA);
        for m in 1..400u32 {
            term *= -q / ((m as f64) * ((m + 1) as f64));
            h_m += 1.0 / m as f64;
            h_m1 += 1.0 / (m + 1) as f64;
            let contrib = term * (h_m + h_m1 - 2.0 * EULER_GAMMA);
            acc.add(contrib);
            if contrib.abs() < 1e-20 {
                break;
            }
        }
        (2.0 / PI) * (x / 2.0).ln() * j1_series(x) - 2.0 / (PI * x) - x / (2.0 * PI) * acc.sum
    }

    #[test]
    fn j_at_origin() {
        assert_eq!(bessel_j(Order::Zero, 0.0), 1.0);
        assert_eq!(bessel_j(Order::One, 0.0), 0.0);
    }

    #[test]
    fn j_matches_series_oracle() {
        // spec example pins x = 1.0; sweep the series-trustworthy range too
        assert!((bessel_j(Order::Zero, 1.0) - j0_series(1.0)).abs() <= 1e-13);
        assert!((bessel_j(Order::One, 1.0) - j1_series(1.0)).abs() <= 1e-13);
        let mut x = 1e-6;
        while x <= 8.0 {
            assert!(
                (bessel_j(Order::Zero, x) - j0_series(x)).abs() <= 1e-13,
                "J0 mismatch at x = {x}"
            );
            assert!(
                (bessel_j(Order::One, x) - j1_series(x)).abs() <= 1e-13,
                "J1 mismatch at x = {x}"
            );
            x += 0.0317;
        }
    }

    #[test]
    fn y_matches_series_oracle() {
        assert!((bessel_y(Order::Zero, 1.0).unwrap() - y0_series(1.0)).abs() <= 1e-12);
        assert!((bessel_y(Order::One, 1.0).unwrap() - y1_series(1.0)).abs() <= 1e-12);
        let mut x = 1e-4;
        while x <= 8.0 {
            assert!(
                (bessel_y(Order::Zero, x).unwrap() - y0_series(x)).abs() <= 1e-12,
                "Y0 mismatch at x = {x}"
            );
            assert!(
                (bessel_y(Order::One, x).unwrap() - y1_series(x)).abs() <= 1e-12,
                "Y1 mismatch at x = {x}"
            );
            x += 0.0317;
        }
    }

    #[test]
    fn y0_small_argument_is_logarithmic() {
        // Y0(x) - (2/pi) ln(x/2) J0(x) stays bounded as x -> 0+ while Y0 itself
        // diverges to -infinity.
        let mut x = 1e-8;
        while x <= 1e-2 {
            let y = bessel_y(Order::Zero, x).unwrap();
            assert!(y < -5.0, "Y0 should be strongly negative near 0, got {y}");
            let bounded = y - (2.0 / PI) * (x / 2.0).ln() * bessel_j(Order::Zero, x);
            assert!(
                bounded.abs() < 1.0,
                "log-subtracted Y0 not bounded at x = {x}: {bounded}"
            );
            x *= 10.0;
        }
    }

    #[test]
    fn y_rejects_origin_and_negative() {
        assert!(bessel_y(Order::Zero, 0.0).is_err());
        assert!(bessel_y(Order::One, -1.0).is_err());
        assert!(hankel1(Order::Zero, 0.0).is_err());
    }

    #[test]
    fn hankel_is_definitional_composition() {
        // bit-identical to J + iY at every tested argument
        let mut x = 1e-6;
        while x <= 90.0 {
            for order in [Order::Zero, Order::One] {
                let h = hankel1(order, x).unwrap();
                assert_eq!(h.re, bessel_j(order, x));
                assert_eq!(h.im, bessel_y(order, x).unwrap());
            }
            x *= 1.7;
        }
    }

    #[test]
    fn hankel_matches_series_oracle() {
        let h = hankel1(Order::One, 1.0).unwrap();
        assert!((h.re - j1_series(1.0)).abs() <= 1e-12);
        assert!((h.im - y1_series(1.0)).abs() <= 1e-12);
    }

    #[test]
    fn hankel_asymptotic_amplitude() {
        // |H0(x)| ~ sqrt(2/(pi x)) within 1% for x >= 50
        for &x in &[50.0, 64.0, 80.0, 100.0] {
            let modulus = hankel1(Order::Zero, x).unwrap().norm();
            let leading = (2.0 / (PI * x)).sqrt();
            assert!(
                (modulus / leading - 1.0).abs() < 0.01,
                "amplitude off at x = {x}"
            );
        }
    }

    #[test]
    fn wronskian_identity() {
        // J0(x) Y1(x) - J1(x) Y0(x) = -2/(pi x)
        for &x in &[0.1, 1.0, 10.0, 80.0] {
            let w = bessel_j(Order::Zero, x) * bessel_y(Order::One, x).unwrap()
                - bessel_j(Order::One, x) * bessel_y(Order::Zero, x).unwrap();
            let exact = -2.0 / (PI * x);
            assert!(
                ((w - exact) / exact).abs() <= 1e-11,
                "Wronskian off at x = {x}"
            );
        }
    }

    #[test]
    fn derivative_recurrence_vs_finite_differences() {
        // d/dx J0 = -J1, checked against central differences
        let h = 1e-6;
        let mut x = 0.5;
        while x <= 60.0 {
            let fd = (bessel_j(Order::Zero, x + h) - bessel_j(Order::Zero, x - h)) / (2.0 * h);
            assert!(
                (fd + bessel_j(Order::One, x)).abs() <= 1e-7,
                "J0' != -J1 at x = {x}"
            );
            x *= 1.9;
        }
    }

    #[test]
    fn continuity_across_approximation_boundaries() {
        // msun switches representation at x = 2; also probe x = 8.
        for &b in &[2.0f64, 8.0] {
            let lo = b * (1.0 - f64::EPSILON);
            let hi = b * (1.0 + f64::EPSILON);
            for order in [Order::Zero, Order::One] {
                assert!((bessel_j(order, lo) - bessel_j(order, hi)).abs() <= 1e-13);
                assert!(
                    (bessel_y(order, lo).unwrap() - bessel_y(order, hi).unwrap()).abs() <= 1e-13
                );
            }
        }
    }
}
