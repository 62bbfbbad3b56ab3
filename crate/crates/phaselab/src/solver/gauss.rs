//! Gauss-Legendre panel machinery for the open-arc (rough surface) solver:
//! quadrature rules, Lagrange interpolation on panel nodes, analytic log
//! moments against the Legendre basis, and an adaptive fallback for
//! near-singular smooth integrands.

use crate::C64;

/// Nodes and weights of the q-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on P_q (standard, accurate to ~1 ulp).
pub fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(q >= 1);
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let m = (q + 1) / 2;
    for i in 0..m {
        // Chebyshev initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(q, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[q - 1 - i] = x;
        weights[i] = w;
        weights[q - 1 - i] = w;
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// P_0(x), ..., P_{n_max}(x).
pub fn legendre_table(n_max: usize, x: f64) -> Vec<f64> {
    let mut t = Vec::with_capacity(n_max + 1);
    t.push(1.0);
    if n_max >= 1 {
        t.push(x);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * x * t[n] - nf * t[n - 1]) / (nf + 1.0);
        t.push(next);
    }
    t
}

/// Legendre functions of the second kind Q_0(s), ..., Q_{n_max}(s), real
/// principal values (valid on (-1, 1) and outside [-1, 1] alike when built
/// from log|.|). Upward recurrence; adequate for the low orders used here.
fn legendre_q_table(n_max: usize, s: f64) -> Vec<f64> {
    let q0 = 0.5 * ((1.0 + s).abs().ln() - (1.0 - s).abs().ln());
    let mut t = Vec::with_capacity(n_max + 1);
    t.push(q0);
    if n_max >= 1 {
        t.push(s * q0 - 1.0);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * s * t[n] - nf * t[n - 1]) / (nf + 1.0);
        t.push(next);
    }
    t
}

/// Analytic log moments F_n(s) = Int_{-1}^{1} P_n(u) ln|u - s| du.
///
/// F_0 has the elementary closed form; for n >= 1,
/// F_n = 2 (Q_{n+1} - Q_{n-1}) / (2n + 1) with Q the Legendre function of the
/// second kind. Valid for s inside or outside the panel (|s| != 1).
pub fn legendre_log_moments(n_terms: usize, s: f64) -> Vec<f64> {
    debug_assert!((s.abs() - 1.0).abs() > 1e-14, "moment at panel endpoint");
    let q = legendre_q_table(n_terms, s);
    let mut f = Vec::with_capacity(n_terms);
    let f0 = {
        let a = 1.0 - s;
        let b = 1.0 + s;
        let la = if a == 0.0 { 0.0 } else { a * a.abs().ln() };
        let lb = if b == 0.0 { 0.0 } else { b * b.abs().ln() };
        la + lb - 2.0
    };
    f.push(f0);
    for n in 1..n_terms {
        f.push(2.0 * (q[n + 1] - q[n - 1]) / (2.0 * n as f64 + 1.0));
    }
    f
}

/// Lagrange cardinal values l_j(u) for the node set `nodes` at point `u`.
pub fn lagrange_values(nodes: &[f64], u: f64) -> Vec<f64> {
    let q = nodes.len();
    let mut vals = vec![1.0; q];
    for j in 0..q {
        for m in 0..q {
            if m != j {
                vals[j] *= (u - nodes[m]) / (nodes[j] - nodes[m]);
            }
        }
    }
    vals
}

/// Adaptive panel integration of a complex integrand over [a, b]: bisects
/// until the embedded GL(8)/GL(16) pair agrees to `tol` (absolute), with a
/// depth cap for integrable endpoint/log behavior.
pub struct AdaptiveGl {
    lo_nodes: Vec<f64>,
    lo_weights: Vec<f64>,
    hi_nodes: Vec<f64>,
    hi_weights: Vec<f64>,
}

impl AdaptiveGl {
    pub fn new() -> Self {
        let (lo_nodes, lo_weights) = gauss_legendre(8);
        let (hi_nodes, hi_weights) = gauss_legendre(16);
        AdaptiveGl {
            lo_nodes,
            lo_weights,
            hi_nodes,
            hi_weights,
        }
    }

    pub fn integrate(
        &self,
        f: &mut impl FnMut(f64) -> C64,
        a: f64,
        b: f64,
        tol: f64,
        max_depth: usize,
    ) -> C64 {
        self.recurse(f, a, b, tol, max_depth)
    }

    fn apply(&self, f: &mut impl FnMut(f64) -> C64, a: f64, b: f64, hi: bool) -> C64 {
        let (nodes, weights) = if hi {
            (&self.hi_nodes, &self.hi_weights)
        } else {
            (&self.lo_nodes, &self.lo_weights)
        };
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = C64::new(0.0, 0.0);
        for (&u, &w) in nodes.iter().zip(weights) {
            acc += f(mid + half * u) * w;
        }
        acc * half
    }

    fn recurse(
        &self,
        f: &mut impl FnMut(f64) -> C64,
        a: f64,
        b: f64,
        tol: f64,
        depth: usize,
    ) -> C64 {
        let coarse = self.apply(f, a, b, false);
        let fine = self.apply(f, a, b, true);
        let err = (fine - coarse).norm();
        // the relative floor stops the bisection once the disagreement is
        // rounding noise, whatever the requested tolerance
        if err <= tol || err <= 1e-14 * fine.norm() || depth == 0 {
            return fine;
        }
        let mid = 0.5 * (a + b);
        let child_tol = (0.5 * tol).max(1e-16);
        self.recurse(f, a, mid, child_tol, depth - 1)
            + self.recurse(f, mid, b, child_tol, depth - 1)
    }
}
