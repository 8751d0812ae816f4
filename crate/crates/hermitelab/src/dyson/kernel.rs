//! The DPP kernel of Dyson Brownian motion and determinantal correlation
//! functions.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numerics::linalg::determinant;
use crate::oscillator::kernel::{hermite_kernel_eval, KernelEvaluator};

/// K_DBM(x, y) = K_n(x / sqrt t, y / sqrt t) / sqrt t: the n particles at
/// time t form a determinantal point process with this kernel.
#[derive(Debug, Clone, Copy)]
pub struct DbmKernel {
    pub n: usize,
    pub t: f64,
}

impl KernelEvaluator for DbmKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        let s = self.t.sqrt();
        hermite_kernel_eval(self.n, x / s, y / s) / s
    }

    fn domain(&self) -> (f64, f64) {
        let edge = (2.0 * (self.n as f64).sqrt() + 8.0) * self.t.sqrt();
        (-edge, edge)
    }
}

pub fn dbm_kernel(n: usize, t: f64) -> Result<DbmKernel> {
    if n == 0 {
        return Err(Error::invalid("n", "need at least one particle"));
    }
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    Ok(DbmKernel { n, t })
}

/// k-point correlation rho_k(x_1..x_k) = det[K(x_i, x_j)].
pub fn correlation_function(kernel: &dyn KernelEvaluator, points: &[f64]) -> Result<f64> {
    if points.is_empty() || points.len() > 12 {
        return Err(Error::invalid(
            "points",
            "dense determinant route supports 1..=12 points",
        ));
    }
    let k = points.len();
    let m = DMatrix::from_fn(k, k, |i, j| kernel.eval(points[i], points[j]));
    Ok(determinant(&m))
}
