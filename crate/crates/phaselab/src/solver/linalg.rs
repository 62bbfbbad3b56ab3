//! Dense complex LU helpers shared by the integral solvers.

use crate::C64;
use nalgebra::{DMatrix, DVector, Dyn};

pub(crate) type ComplexLu = nalgebra::linalg::LU<C64, Dyn, Dyn>;

pub(crate) fn one_norm(a: &DMatrix<C64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Lower-bound 1-norm condition estimate from a handful of deterministic
/// solves. Reported for diagnostics; not a rigorous bound.
pub(crate) fn estimate_condition(lu: &ComplexLu, a_norm1: f64, n: usize) -> f64 {
    let mut best = 0.0f64;
    let mut state = 0x9e3779b97f4a7c15u64;
    for trial in 0..4 {
        let mut b = DVector::<C64>::zeros(n);
        for i in 0..n {
            if trial == 0 {
                b[i] = C64::new(1.0, 0.0);
            } else {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let sign_re = if state & 1 == 0 { 1.0 } else { -1.0 };
                let sign_im = if state & 2 == 0 { 1.0 } else { -1.0 };
                b[i] = C64::new(sign_re, sign_im);
            }
        }
        let b_norm: f64 = b.iter().map(|v| v.norm()).sum();
        if let Some(x) = lu.solve(&b) {
            let x_norm: f64 = x.iter().map(|v| v.norm()).sum();
            best = best.max(x_norm / b_norm);
        } else {
            return f64::INFINITY;
        }
    }
    a_norm1 * best
}
