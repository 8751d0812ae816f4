//! Approximate Hermite zero locations from the oscillatory phase.
//!
//! The phase theta_n is monotone increasing from -(n + 1/4) pi at a = -1 to
//! pi/4 at a = 1, so normalizing it gives a CDF (a mixture of n parts
//! semicircle and 1/2 part arcsine); the k-th zero sits at the quantile
//! (k - 1/4) / (n + 1/2), mapped back through x = 2 a sqrt(n).

use crate::asymptotics::regimes::bulk_phase;
use crate::error::{Error, Result};

/// CDF built from the normalized phase.
pub fn phase_cdf(n: usize, a: f64) -> f64 {
    let nf = n as f64;
    (bulk_phase(n, a) + (nf + 0.25) * std::f64::consts::PI)
        / ((nf + 0.5) * std::f64::consts::PI)
}

/// n approximate zeros of the degree-n polynomial, strictly increasing on
/// the x scale.
pub fn hermite_zero_locations(n: usize) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::invalid("n", "needs n >= 1"));
    }
    let nf = n as f64;
    let mut zeros = Vec::with_capacity(n);
    for k in 1..=n {
        let target = (k as f64 - 0.25) / (nf + 0.5);
        // Bisection: phase_cdf is monotone increasing on [-1, 1].
        let mut lo = -1.0_f64;
        let mut hi = 1.0_f64;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if phase_cdf(n, mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        zeros.push(2.0 * nf.sqrt() * 0.5 * (lo + hi));
    }
    Ok(zeros)
}
