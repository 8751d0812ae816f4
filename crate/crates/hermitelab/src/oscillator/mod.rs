//! Oscillator wave functions, the Hermite projection kernel and its
//! Christoffel-Darboux form, the arcsine/semicircle limit densities, the
//! moment-mixture lemma connecting them, exponential decay bounds, and the
//! Airy kernel governing the edge.

use crate::error::{Error, Result};
use crate::hermite::hermite_pair_scaled;
use crate::numerics::quadrature::{QuadratureKind, QuadratureRule};
use crate::numerics::special::ln_factorial;
use crate::scaled::ScaledValue;

pub mod kernel;

pub use kernel::{
    airy_kernel_eval, edge_kernel_rescaled, hermite_kernel_direct, hermite_kernel_eval,
    KernelEvaluator,
};

/// Wave function value and derivative at a point.
///
/// |psi| never exceeds (2 pi)^{-1/4} (the global bound on the maximum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveFnValue {
    pub psi: f64,
    pub psi_prime: f64,
}

/// Normalized oscillator wave function
/// Psi_n(x) = H_n(x) (2 pi)^{-1/4} e^{-x^2/4} / sqrt(n!),
/// with the derivative Psi_n' = (n H_{n-1} - (x/2) H_n) * same weight.
///
/// Computed entirely in log-domain and exponentiated once: the polynomial
/// overflows and the Gaussian half-weight underflows exactly where their
/// product is O(1).
pub fn psi_eval(n: usize, x: f64) -> WaveFnValue {
    let (h_prev, h_cur) = hermite_pair_scaled(n, x);
    let log_weight = -0.25 * (2.0 * std::f64::consts::PI).ln() - x * x / 4.0 - 0.5 * ln_factorial(n);
    let psi = h_cur.scale_log(log_weight).to_f64();
    let derivative_part =
        h_prev * ScaledValue::from_f64(n as f64) + h_cur * ScaledValue::from_f64(-x / 2.0);
    let psi_prime = derivative_part.scale_log(log_weight).to_f64();
    WaveFnValue { psi, psi_prime }
}

/// Log-magnitude form of Psi_n(x), for the kernel internals.
pub(crate) fn psi_scaled(n: usize, x: f64) -> (ScaledValue, ScaledValue) {
    let (h_prev, h_cur) = hermite_pair_scaled(n, x);
    let log_weight = -0.25 * (2.0 * std::f64::consts::PI).ln() - x * x / 4.0 - 0.5 * ln_factorial(n);
    let psi = h_cur.scale_log(log_weight);
    let psi_prime = (h_prev * ScaledValue::from_f64(n as f64)
        + h_cur * ScaledValue::from_f64(-x / 2.0))
    .scale_log(log_weight);
    (psi, psi_prime)
}

/// Rescaled kernel diagonal n^{-1/2} K_n(sqrt(n) x, sqrt(n) x), a probability
/// density converging to the semicircle law.
pub fn kernel_diag_rescaled(n: usize, x: f64) -> f64 {
    let y = (n as f64).sqrt() * x;
    kernel::hermite_kernel_eval(n, y, y) / (n as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitDensity {
    Arcsine,
    Semicircle,
}

/// Limit densities on [-2, 2]: arcsine 1/(pi sqrt(4-x^2)) and semicircle
/// sqrt(4-x^2)/(2 pi); zero outside the support.
pub fn limit_density(kind: LimitDensity, x: f64) -> f64 {
    if x.abs() >= 2.0 {
        return 0.0;
    }
    let root = (4.0 - x * x).sqrt();
    match kind {
        LimitDensity::Arcsine => 1.0 / (std::f64::consts::PI * root),
        LimitDensity::Semicircle => root / (2.0 * std::f64::consts::PI),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureMoment {
    /// (1/n) sum_k (k/n)^{p/2} mu_p(rho_k).
    pub finite_n: f64,
    /// mu_p(rho_*) / (p/2 + 1), with rho_* read from the last entry.
    pub limit: f64,
}

/// Moments of the scaled mixture (1/n) sum_k rho_k(sqrt(n/k) x) sqrt(n/k):
/// each component contributes its own moment damped by (k/n)^{p/2}, and when
/// the component moments converge the mixture moment tends to the limit
/// moment divided by p/2 + 1.
pub fn mixture_moment(p: usize, moments_in: &[f64]) -> Result<MixtureMoment> {
    if p % 2 == 1 {
        return Err(Error::invalid("p", "mixture moments are stated for even p"));
    }
    if moments_in.is_empty() {
        return Err(Error::invalid("moments_in", "need at least one component"));
    }
    let n = moments_in.len() as f64;
    let finite_n = moments_in
        .iter()
        .enumerate()
        .map(|(idx, &m)| ((idx as f64 + 1.0) / n).powf(p as f64 / 2.0) * m)
        .sum::<f64>()
        / n;
    let limit = moments_in.last().unwrap() / (p as f64 / 2.0 + 1.0);
    Ok(MixtureMoment { finite_n, limit })
}

/// Decay exponent f(a) = -arccosh(a) - e^{-2 arccosh(a)}/2 + a^2 - 1/2
/// controlling |Psi_n(2 sqrt(n) a)| << exp(-n f(a)) outside the bulk.
pub fn decay_exponent(a: f64) -> Result<f64> {
    if a <= 1.0 {
        return Err(Error::invalid("a", format!("needs a > 1, got {a}")));
    }
    let gamma = a.acosh();
    Ok(-gamma - 0.5 * (-2.0 * gamma).exp() + a * a - 0.5)
}

/// Quantum harmonic oscillator wave function with physical constants:
/// psi_n(x) = sqrt(c) Psi_n(c x) for c = sqrt(2 m omega / hbar), defined when
/// the energy is quantized as n = E/(hbar omega) - 1/2.
pub fn physical_wavefn(x: f64, energy: f64, mass: f64, omega: f64, hbar: f64) -> Result<f64> {
    if mass <= 0.0 || omega <= 0.0 || hbar <= 0.0 {
        return Err(Error::invalid("m/omega/hbar", "must be positive"));
    }
    let n_real = energy / (hbar * omega) - 0.5;
    let n_rounded = n_real.round();
    if n_rounded < 0.0 || (n_real - n_rounded).abs() > 1e-9 {
        return Err(Error::NotQuantized(n_real));
    }
    let c = (2.0 * mass * omega / hbar).sqrt();
    Ok(c.sqrt() * psi_eval(n_rounded as usize, c * x).psi)
}

/// Gauss-Legendre rule on [-2 sqrt(n) - 8, 2 sqrt(n) + 8] with 400 nodes;
/// the wave functions are effectively supported there.
pub fn wavefn_quadrature(n: usize) -> (Vec<f64>, Vec<f64>) {
    let edge = 2.0 * (n as f64).sqrt() + 8.0;
    QuadratureRule::new(QuadratureKind::GaussLegendre, 400).mapped_to(-edge, edge)
}
