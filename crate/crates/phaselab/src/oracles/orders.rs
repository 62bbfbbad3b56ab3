//! Bessel-function tables for orders 0..=n_max, generated from the verified
//! order-0/1 primitives by recurrence: upward for Y (stable), downward with
//! normalization for J (Miller's algorithm, avoiding the unstable upward
//! direction).

use crate::specialfun;
use crate::C64;

/// J_0(x), ..., J_{n_max}(x) for real x >= 0.
pub fn bessel_j_table(n_max: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0);
    if x == 0.0 {
        let mut t = vec![0.0; n_max + 1];
        t[0] = 1.0;
        return t;
    }
    if n_max == 0 {
        return vec![specialfun::j0(x)];
    }
    if n_max == 1 {
        return vec![specialfun::j0(x), specialfun::j1(x)];
    }
    // Miller downward recurrence with even-order normalization
    // J0 + 2 (J2 + J4 + ...) = 1.
    let start = n_max + 16 + x.ceil() as usize;
    let mut next = 0.0f64;
    let mut cur = 1e-300f64;
    let mut table = vec![0.0; n_max + 1];
    let mut norm = 0.0f64;
    for n in (0..=start).rev() {
        // prev = J_{n}, via J_{n} = (2(n+1)/x) J_{n+1} - J_{n+2}
        let prev = (2.0 * (n as f64 + 1.0) / x) * cur - next;
        next = cur;
        cur = prev;
        if n <= n_max {
            table[n] = cur;
        }
        if n % 2 == 0 {
            norm += if n == 0 { cur } else { 2.0 * cur };
        }
        if cur.abs() > 1e280 {
            // rescale to dodge overflow on long recurrences
            let s = 1e-280;
            cur *= s;
            next *= s;
            norm *= s;
            for v in table.iter_mut() {
                *v *= s;
            }
        }
    }
    for v in table.iter_mut() {
        *v /= norm;
    }
    table
}

/// Y_0(x), ..., Y_{n_max}(x) for real x > 0 (upward recurrence is stable).
pub fn bessel_y_table(n_max: usize, x: f64) -> Vec<f64> {
    assert!(x > 0.0);
    let mut table = Vec::with_capacity(n_max + 1);
    table.push(specialfun::y0(x));
    if n_max >= 1 {
        table.push(specialfun::y1(x));
    }
    for n in 1..n_max {
        let next = (2.0 * n as f64 / x) * table[n] - table[n - 1];
        table.push(next);
    }
    table
}

/// H^(1)_0(x), ..., H^(1)_{n_max}(x) for real x > 0.
pub fn hankel1_table(n_max: usize, x: f64) -> Vec<C64> {
    let j = bessel_j_table(n_max, x);
    let y = bessel_y_table(n_max, x);
    j.iter().zip(&y).map(|(&re, &im)| C64::new(re, im)).collect()
}

/// J_0(z), ..., J_{n_max}(z) for complex z (penetrable disks with complex
/// refractive index). Same Miller scheme; the normalization identity holds
/// for all complex arguments.
pub fn bessel_j_table_complex(n_max: usize, z: C64) -> Vec<C64> {
    if z.norm() == 0.0 {
        let mut t = vec![C64::new(0.0, 0.0); n_max + 1];
        t[0] = C64::new(1.0, 0.0);
        return t;
    }
    let start = n_max + 16 + z.norm().ceil() as usize;
    let mut next = C64::new(0.0, 0.0);
    let mut cur = C64::new(1e-300, 0.0);
    let mut table = vec![C64::new(0.0, 0.0); n_max + 1];
    let mut norm = C64::new(0.0, 0.0);
    for n in (0..=start).rev() {
        let prev = (2.0 * (n as f64 + 1.0)) / z * cur - next;
        next = cur;
        cur = prev;
        if n <= n_max {
            table[n] = cur;
        }
        if n % 2 == 0 {
            norm += if n == 0 { cur } else { 2.0 * cur };
        }
        if cur.norm() > 1e280 {
            let s = 1e-280;
            cur *= s;
            next *= s;
            norm *= s;
            for v in table.iter_mut() {
                *v *= s;
            }
        }
    }
    for v in table.iter_mut() {
        *v /= norm;
    }
    table
}

/// Derivative table from a value table: C_n'(x) = C_{n-1}(x) - (n/x) C_n(x),
/// C_0' = -C_1. Valid for J, Y, and H alike.
pub fn derivative_table_real(values: &[f64], x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    if values.len() > 1 {
        out.push(-values[1]);
    } else {
        out.push(0.0);
    }
    for n in 1..values.len() {
        out.push(values[n - 1] - (n as f64 / x) * values[n]);
    }
    out
}

/// Complex-table analogue of [`derivative_table_real`].
pub fn derivative_table_complex(values: &[C64], z: C64) -> Vec<C64> {
    let mut out = Vec::with_capacity(values.len());
    if values.len() > 1 {
        out.push(-values[1]);
    } else {
        out.push(C64::new(0.0, 0.0));
    }
    for n in 1..values.len() {
        out.push(values[n - 1] - (n as f64) / z * values[n]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_table_anchors_to_verified_orders() {
        for &x in &[0.3, 1.0, 4.7, 12.0] {
            let t = bessel_j_table(30, x);
            assert!((t[0] - specialfun::j0(x)).abs() < 1e-13);
            assert!((t[1] - specialfun::j1(x)).abs() < 1e-13);
        }
    }

    #[test]
    fn j_recurrence_consistency() {
        // J_{n-1}(x) + J_{n+1}(x) = (2n/x) J_n(x)
        let x = 3.7;
        let t = bessel_j_table(25, x);
        for n in 1..24 {
            let lhs = t[n - 1] + t[n + 1];
            let rhs = 2.0 * n as f64 / x * t[n];
            assert!((lhs - rhs).abs() <= 1e-13 * t[n].abs().max(1e-10));
        }
    }

    #[test]
    fn wronskian_at_higher_orders() {
        // J_{n+1} Y_n - J_n Y_{n+1} = 2/(pi x)
        let x = 2.9;
        let j = bessel_j_table(20, x);
        let y = bessel_y_table(20, x);
        for n in 0..19 {
            let w = j[n + 1] * y[n] - j[n] * y[n + 1];
            let exact = 2.0 / (std::f64::consts::PI * x);
            assert!(
                ((w - exact) / exact).abs() < 1e-10,
                "Wronskian off at order {n}"
            );
        }
    }

    #[test]
    fn complex_table_matches_real_on_axis() {
        let x = 5.3;
        let re = bessel_j_table(20, x);
        let cx = bessel_j_table_complex(20, C64::new(x, 0.0));
        for n in 0..=20 {
            assert!((cx[n].re - re[n]).abs() < 1e-12);
            assert!(cx[n].im.abs() < 1e-12);
        }
    }

    #[test]
    fn complex_table_satisfies_series_at_low_order() {
        // J_0 power series at a genuinely complex argument
        let z = C64::new(1.2, 0.8);
        let t = bessel_j_table_complex(8, z);
        let q = 0.25 * z * z;
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        for m in 1..60 {
            term *= -q / ((m * m) as f64);
            sum += term;
        }
        assert!((t[0] - sum).norm() < 1e-13);
    }

    #[test]
    fn derivative_tables_match_finite_differences() {
        let x = 4.1;
        let h = 1e-6;
        let j = bessel_j_table(12, x);
        let dj = derivative_table_real(&j, x);
        for n in 0..=12 {
            let jp = bessel_j_table(12, x + h)[n];
            let jm = bessel_j_table(12, x - h)[n];
            assert!(((jp - jm) / (2.0 * h) - dj[n]).abs() < 1e-8);
        }
    }
}
