//! Edgeworth-corrected densities: the Gaussian times one plus Hermite
//! polynomial corrections weighted by cumulants.

use crate::error::{Error, Result};
use crate::hermite::hermite_recurrence;
use crate::numerics::special::factorial;
use crate::wick::multivariate::{mv_dual_eval, CovarianceMatrix, MultiIndex};

fn gaussian_1d(x: f64, sigma: f64) -> f64 {
    (-x * x / (2.0 * sigma * sigma)).exp() / ((2.0 * std::f64::consts::PI).sqrt() * sigma)
}

/// Leading-order correction when the first non-zero higher cumulant has
/// order k: phi_sigma(x) [1 + n^{-(k-2)/2} kappa_k / (k! sigma^k) H_k(x / sigma)].
pub fn edgeworth_density_1d(x: f64, sigma: f64, kappa_k: f64, k: usize, n: usize) -> Result<f64> {
    if sigma <= 0.0 {
        return Err(Error::invalid("sigma", "must be positive"));
    }
    if k < 3 {
        return Err(Error::invalid("k", "correction order starts at 3"));
    }
    if n < 1 {
        return Err(Error::invalid("n", "need n >= 1"));
    }
    let damping = (n as f64).powf(-((k as f64 - 2.0) / 2.0));
    let correction =
        damping * kappa_k / (factorial(k) * sigma.powi(k as i32)) * hermite_recurrence(k, x / sigma);
    Ok(gaussian_1d(x, sigma) * (1.0 + correction))
}

/// Both correction orders when kappa_3 and kappa_4 are available:
/// the 1/sqrt(n) H_3 term plus the 1/n (H_4 and H_6) terms.
pub fn edgeworth_next_order_1d(
    x: f64,
    sigma: f64,
    kappa3: f64,
    kappa4: f64,
    n: usize,
) -> Result<f64> {
    if sigma <= 0.0 {
        return Err(Error::invalid("sigma", "must be positive"));
    }
    if n < 1 {
        return Err(Error::invalid("n", "need n >= 1"));
    }
    let nf = n as f64;
    let y = x / sigma;
    let c3 = kappa3 / (6.0 * sigma.powi(3));
    let c4 = kappa4 / (24.0 * sigma.powi(4));
    let correction = c3 / nf.sqrt() * hermite_recurrence(3, y)
        + (c4 * hermite_recurrence(4, y) + 0.5 * c3 * c3 * hermite_recurrence(6, y)) / nf;
    Ok(gaussian_1d(x, sigma) * (1.0 + correction))
}

/// Order-k cumulant tensor in d dimensions: entries kappa_{k_1..k_d} with
/// k_1 + ... + k_d = k.
#[derive(Debug, Clone)]
pub struct CumulantTensor {
    pub order: usize,
    pub dim: usize,
    pub entries: Vec<(Vec<usize>, f64)>,
}

impl CumulantTensor {
    pub fn new(order: usize, dim: usize, entries: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        for (index, _) in &entries {
            if index.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "tensor index {index:?} does not have dim {dim}"
                )));
            }
            if index.iter().sum::<usize>() != order {
                return Err(Error::invalid(
                    "entries",
                    format!("index {index:?} does not sum to the order {order}"),
                ));
            }
        }
        Ok(CumulantTensor {
            order,
            dim,
            entries,
        })
    }

    pub fn zero(order: usize, dim: usize) -> Self {
        CumulantTensor {
            order,
            dim,
            entries: Vec::new(),
        }
    }
}

/// Multivariate Gaussian density with covariance Sigma.
pub fn gaussian_multi(x: &[f64], sigma: &CovarianceMatrix) -> f64 {
    let d = sigma.dim();
    debug_assert_eq!(x.len(), d);
    let inv = sigma.inverse().expect("validated SPD matrix");
    let mut quad = 0.0;
    for a in 0..d {
        for b in 0..d {
            quad += x[a] * inv.entry(a, b) * x[b];
        }
    }
    let det: f64 = {
        let l = sigma.cholesky();
        (0..d).map(|i| l[(i, i)]).product::<f64>().powi(2)
    };
    (-0.5 * quad).exp() / ((2.0 * std::f64::consts::PI).powf(d as f64 / 2.0) * det.sqrt())
}

/// Multivariate leading-order correction: the Gaussian with covariance Sigma
/// times [1 + n^{-(k-2)/2} sum_kvec kappa_kvec / prod k_j! * H_kvec(x, Sigma)],
/// where H_kvec is the dual polynomial: inverting the (iu)^kvec term of the
/// characteristic function produces exactly H_kvec(x, Sigma) phi_Sigma(x),
/// and the dual only coincides with the direct polynomial at Sigma = I.
pub fn edgeworth_density_multi(
    x: &[f64],
    sigma: &CovarianceMatrix,
    kappa: &CumulantTensor,
    n: usize,
) -> Result<f64> {
    if x.len() != sigma.dim() || kappa.dim != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "x has dim {}, Sigma has dim {}, tensor has dim {}",
            x.len(),
            sigma.dim(),
            kappa.dim
        )));
    }
    if n < 1 {
        return Err(Error::invalid("n", "need n >= 1"));
    }
    let damping = (n as f64).powf(-((kappa.order as f64 - 2.0) / 2.0));
    let mut correction = 0.0;
    for (index, value) in &kappa.entries {
        let norm: f64 = index.iter().map(|&k| factorial(k)).product();
        let h = mv_dual_eval(&MultiIndex::new(index.clone()), x, sigma)?;
        correction += value / norm * h;
    }
    Ok(gaussian_multi(x, sigma) * (1.0 + damping * correction))
}
