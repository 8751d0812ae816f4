//! Projection kernels: the Hermite kernel of order n via Christoffel-Darboux
//! and the Airy kernel at the edge.

use crate::asymptotics::airy::airy_eval;
use crate::oscillator::psi_scaled;

/// Points within this distance use the analytic diagonal limit; the quotient
/// form loses all digits to cancellation near the diagonal.
const DIAGONAL_SWITCH: f64 = 1e-6;

/// A symmetric positive kernel on a declared domain.
pub trait KernelEvaluator: Sync {
    fn eval(&self, x: f64, y: f64) -> f64;
    /// Interval outside which the kernel is numerically negligible.
    fn domain(&self) -> (f64, f64);
}

/// Hermite kernel of order n (the projection onto the first n wave
/// functions) in the two-term Christoffel-Darboux form
/// K_n(x,y) = [Psi_n(x) Psi_n'(y) - Psi_n'(x) Psi_n(y)] / (x - y)
///            - Psi_n(x) Psi_n(y) / 2,
/// with the analytic limit K_n(x,x) = Psi_n'(x)^2 + (n - x^2/4) Psi_n(x)^2
/// on the diagonal.
pub fn hermite_kernel_eval(n: usize, x: f64, y: f64) -> f64 {
    if (x - y).abs() < DIAGONAL_SWITCH {
        let mid = 0.5 * (x + y);
        let v = crate::oscillator::psi_eval(n, mid);
        return v.psi_prime * v.psi_prime + (n as f64 - mid * mid / 4.0) * v.psi * v.psi;
    }
    let (psi_x, dpsi_x) = psi_scaled(n, x);
    let (psi_y, dpsi_y) = psi_scaled(n, y);
    let cross = psi_x * dpsi_y + -(dpsi_x * psi_y);
    cross.to_f64() / (x - y) - 0.5 * (psi_x * psi_y).to_f64()
}

/// Direct-sum route sum_{j<n} Psi_j(x) Psi_j(y), the defining form; O(n)
/// and kept as the cross-check for the Christoffel-Darboux evaluation.
pub fn hermite_kernel_direct(n: usize, x: f64, y: f64) -> f64 {
    // One scaled recurrence per argument, combining the running pair with
    // the per-order weights.
    let log_wx = -0.25 * (2.0 * std::f64::consts::PI).ln() - x * x / 4.0;
    let log_wy = -0.25 * (2.0 * std::f64::consts::PI).ln() - y * y / 4.0;
    let mut hx_prev = 0.0_f64; // H_{-1}
    let mut hx = 1.0_f64;
    let mut offx = 0.0_f64;
    let mut hy_prev = 0.0_f64;
    let mut hy = 1.0_f64;
    let mut offy = 0.0_f64;
    let mut total = 0.0;
    let mut ln_fact = 0.0;
    for j in 0..n {
        if j > 0 {
            ln_fact += (j as f64).ln();
            let nxt_x = x * hx - (j as f64 - 1.0) * hx_prev;
            hx_prev = hx;
            hx = nxt_x;
            let nxt_y = y * hy - (j as f64 - 1.0) * hy_prev;
            hy_prev = hy;
            hy = nxt_y;
            let mx = hx.abs().max(hx_prev.abs());
            if mx > 1e120 {
                hx /= mx;
                hx_prev /= mx;
                offx += mx.ln();
            }
            let my = hy.abs().max(hy_prev.abs());
            if my > 1e120 {
                hy /= my;
                hy_prev /= my;
                offy += my.ln();
            }
        }
        let log_term = hx.abs().ln() + offx + hy.abs().ln() + offy - ln_fact + log_wx + log_wy;
        let sign = hx.signum() * hy.signum();
        if log_term > -745.0 && hx != 0.0 && hy != 0.0 {
            total += sign * log_term.exp();
        }
    }
    total
}

/// Airy kernel [Ai(u) Ai'(v) - Ai'(u) Ai(v)] / (u - v), with the L'Hopital
/// diagonal Ai'(u)^2 - u Ai(u)^2.
pub fn airy_kernel_eval(u: f64, v: f64) -> f64 {
    let au = airy_eval(u).expect("airy domain");
    if (u - v).abs() < DIAGONAL_SWITCH {
        let mid = airy_eval(0.5 * (u + v)).expect("airy domain");
        return mid.ai_prime * mid.ai_prime - 0.5 * (u + v) * mid.ai * mid.ai;
    }
    let av = airy_eval(v).expect("airy domain");
    (au.ai * av.ai_prime - au.ai_prime * av.ai) / (u - v)
}

/// Edge rescaling n^{-1/6} K_n(2 sqrt(n) + n^{-1/6} u, ...), which converges
/// to the Airy kernel.
pub fn edge_kernel_rescaled(n: usize, u: f64, v: f64) -> f64 {
    let nf = n as f64;
    let scale = nf.powf(-1.0 / 6.0);
    let x = 2.0 * nf.sqrt() + scale * u;
    let y = 2.0 * nf.sqrt() + scale * v;
    scale * hermite_kernel_eval(n, x, y)
}

/// Hermite kernel packaged as an evaluator.
#[derive(Debug, Clone, Copy)]
pub struct HermiteKernel {
    pub order: usize,
}

impl KernelEvaluator for HermiteKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        hermite_kernel_eval(self.order, x, y)
    }

    fn domain(&self) -> (f64, f64) {
        let edge = 2.0 * (self.order as f64).sqrt() + 8.0;
        (-edge, edge)
    }
}

/// Airy kernel packaged as an evaluator.
#[derive(Debug, Clone, Copy)]
pub struct AiryKernel;

impl KernelEvaluator for AiryKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        airy_kernel_eval(x, y)
    }

    fn domain(&self) -> (f64, f64) {
        (-20.0, 20.0)
    }
}
