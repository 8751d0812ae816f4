//! One-dimensional Hermite polynomials in the three normalizations used
//! throughout: the monic probabilist polynomial, its time-indexed form (the
//! expectation of (x + i sqrt(t) Z)^n over a standard Gaussian Z) and the
//! dual obtained by factoring out t^n. Exact recurrence and coefficient
//! routes are paired with a Monte Carlo oracle of the defining expectation.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::numerics::rng::RngStream;
use crate::numerics::special::{binomial, double_factorial};
use crate::scaled::ScaledValue;

/// Plain-double recurrence is safe here; see `hermite_eval`.
pub const PLAIN_EVAL_MAX_N: usize = 150;
pub const PLAIN_EVAL_MAX_ABS_X: f64 = 20.0;

/// Monic Hermite polynomial by the three-term recurrence
/// H_{n+1} = x H_n - n H_{n-1}, H_0 = 1, H_1 = x.
///
/// Restricted to n <= 150 and |x| <= 20 where intermediates stay inside the
/// double range; beyond that callers must use [`hermite_eval_scaled`].
pub fn hermite_eval(n: usize, x: f64) -> Result<f64> {
    if n > PLAIN_EVAL_MAX_N || x.abs() > PLAIN_EVAL_MAX_ABS_X {
        return Err(Error::UseScaledEvaluation { n, x });
    }
    Ok(hermite_recurrence(n, x))
}

pub(crate) fn hermite_recurrence(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = x;
    for k in 1..n {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Same recurrence in sign/log-magnitude form, renormalized every time the
/// running pair leaves [1e-120, 1e120] so it never overflows. Valid for n up
/// to at least 1e5.
pub fn hermite_eval_scaled(n: usize, x: f64) -> ScaledValue {
    if n == 0 {
        return ScaledValue::ONE;
    }
    let mut prev = 1.0_f64;
    let mut cur = x;
    let mut log_offset = 0.0_f64;
    for k in 1..n {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
        let mag = prev.abs().max(cur.abs());
        if mag > 1e120 || (mag > 0.0 && mag < 1e-120) {
            prev /= mag;
            cur /= mag;
            log_offset += mag.ln();
        }
    }
    ScaledValue::from_f64(cur).scale_log(log_offset)
}

/// (H_{n-1}(x), H_n(x)) from one scaled recurrence pass; the consecutive
/// pair feeds derivative and Christoffel-Darboux formulas.
pub fn hermite_pair_scaled(n: usize, x: f64) -> (ScaledValue, ScaledValue) {
    if n == 0 {
        return (ScaledValue::ZERO, ScaledValue::ONE);
    }
    let mut prev = 1.0_f64;
    let mut cur = x;
    let mut log_offset = 0.0_f64;
    for k in 1..n {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
        let mag = prev.abs().max(cur.abs());
        if mag > 1e120 || (mag > 0.0 && mag < 1e-120) {
            prev /= mag;
            cur /= mag;
            log_offset += mag.ln();
        }
    }
    (
        ScaledValue::from_f64(prev).scale_log(log_offset),
        ScaledValue::from_f64(cur).scale_log(log_offset),
    )
}

/// Coefficient table of the time-indexed Hermite polynomial at a fixed t.
#[derive(Debug, Clone)]
pub struct HermiteCoeffs {
    pub n: usize,
    pub t: f64,
    /// coeffs[k] multiplies x^k; only every other power is populated.
    pub coeffs: Vec<f64>,
}

impl HermiteCoeffs {
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Coefficients from the combinatorial sum: the x^{n-2k} coefficient is
/// C(n, 2k) (2k-1)!! (-t)^k, i.e. the count of ways to choose 2k slots for
/// the Gaussian factors times the pairings of those slots.
pub fn hermite_coeffs(n: usize, t: f64) -> Result<HermiteCoeffs> {
    if n > 170 {
        return Err(Error::invalid("n", "coefficient route is limited to n <= 170"));
    }
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    let mut coeffs = vec![0.0; n + 1];
    let mut tk = 1.0;
    for k in 0..=n / 2 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[n - 2 * k] = sign * binomial(n, 2 * k) * double_factorial(2 * k as i64 - 1) * tk;
        tk *= t;
    }
    Ok(HermiteCoeffs { n, t, coeffs })
}

/// Time-indexed evaluation by pulling sqrt(t) out of the bracket:
/// the direct polynomial is t^{n/2} H_n(x / sqrt(t)), the dual is
/// t^{-n/2} H_n(x / sqrt(t)), so dual = t^{-n} * direct.
pub fn hermite_time_eval(n: usize, x: f64, t: f64, dual: bool) -> Result<ScaledValue> {
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    let base = hermite_eval_scaled(n, x / t.sqrt());
    let half_n_ln_t = 0.5 * n as f64 * t.ln();
    Ok(base.scale_log(if dual { -half_n_ln_t } else { half_n_ln_t }))
}

/// Monte Carlo estimate of the defining Gaussian expectation.
#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    /// Sample mean of the imaginary part. The true value is 0; a value beyond
    /// a few standard errors indicates an RNG or formula bug, so it is
    /// reported rather than discarded.
    pub imag_mean: f64,
    pub imag_std_error: f64,
}

/// Sample mean of Re (x + i sqrt(t) Z)^n over `samples` standard Gaussians.
pub fn hermite_mc_oracle(
    n: usize,
    x: f64,
    t: f64,
    samples: usize,
    rng: &mut RngStream,
) -> Result<McEstimate> {
    if samples < 2 {
        return Err(Error::invalid("samples", "need at least 2 samples"));
    }
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    let sqrt_t = t.sqrt();
    let mut sum_re = 0.0;
    let mut sum_re2 = 0.0;
    let mut sum_im = 0.0;
    let mut sum_im2 = 0.0;
    for _ in 0..samples {
        let z = rng.standard_normal();
        let w = Complex::new(x, sqrt_t * z).powu(n as u32);
        sum_re += w.re;
        sum_re2 += w.re * w.re;
        sum_im += w.im;
        sum_im2 += w.im * w.im;
    }
    let m = samples as f64;
    let mean_re = sum_re / m;
    let mean_im = sum_im / m;
    let var_re = ((sum_re2 - m * mean_re * mean_re) / (m - 1.0)).max(0.0);
    let var_im = ((sum_im2 - m * mean_im * mean_im) / (m - 1.0)).max(0.0);
    Ok(McEstimate {
        estimate: mean_re,
        std_error: (var_re / m).sqrt(),
        imag_mean: mean_im,
        imag_std_error: (var_im / m).sqrt(),
    })
}

/// Partial sum of the exponential generating function
/// sum_n H~_n(x,t) alpha^n / n!, which converges to exp(alpha x - alpha^2 t / 2).
///
/// The running term obeys s_{n+1} = (alpha x s_n - alpha^2 t s_{n-1}) / (n+1),
/// so no intermediate polynomial value is ever formed on its own.
pub fn generating_partial_sum(x: f64, t: f64, alpha: f64, terms: usize) -> Result<f64> {
    if terms < 1 {
        return Err(Error::invalid("terms", "need at least one term"));
    }
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    let mut prev = 1.0_f64;
    let mut total = 1.0_f64;
    if terms == 1 {
        return Ok(total);
    }
    let mut cur = alpha * x;
    total += cur;
    for n in 1..terms - 1 {
        let next = (alpha * x * cur - alpha * alpha * t * prev) / (n as f64 + 1.0);
        prev = cur;
        cur = next;
        total += cur;
    }
    Ok(total)
}

/// Closed form the generating partial sum converges to.
pub fn generating_closed_form(x: f64, t: f64, alpha: f64) -> f64 {
    (alpha * x - 0.5 * alpha * alpha * t).exp()
}

/// Physicist normalization: sqrt(2)^n H_n(sqrt(2) x) in terms of the monic
/// polynomial.
pub fn physicist_eval(n: usize, x: f64) -> Result<f64> {
    let y = std::f64::consts::SQRT_2 * x;
    let value = hermite_eval(n, y)?;
    Ok(2f64.powf(n as f64 / 2.0) * value)
}
