//! Tracy-Widom GUE distribution: F2(s) = det(I - P_(s,inf) K_Ai P_(s,inf)).

use crate::dyson::fredholm::fredholm_det_nystrom;
use crate::error::{Error, Result};
use crate::oscillator::kernel::AiryKernel;

/// Window length past s for the Nystrom discretization; the Airy kernel
/// decays like exp(-(4/3) u^{3/2}) so the tail beyond s + 12 is negligible.
pub const AIRY_WINDOW: f64 = 12.0;
pub const DEFAULT_ORDER: usize = 80;

/// Tracy-Widom GUE CDF on s in [-10, 6].
pub fn tracy_widom_cdf(s: f64) -> Result<f64> {
    if !(-10.0..=6.0).contains(&s) {
        return Err(Error::invalid("s", format!("domain is [-10, 6], got {s}")));
    }
    let r = fredholm_det_nystrom(&AiryKernel, s, s + AIRY_WINDOW, DEFAULT_ORDER)?;
    // The determinant is a probability; far in the lower tail the
    // discretization can dip a hair below zero.
    Ok(r.value.clamp(0.0, 1.0))
}

/// Kolmogorov-Smirnov distance between tracy_widom_cdf and the empirical law
/// of a sample.
pub fn ks_distance_to_tw(samples: &mut [f64]) -> Result<f64> {
    samples.sort_by(f64::total_cmp);
    let m = samples.len() as f64;
    let mut ks: f64 = 0.0;
    for (i, &s) in samples.iter().enumerate() {
        let f = tracy_widom_cdf(s.clamp(-10.0, 6.0))?;
        let lo = i as f64 / m;
        let hi = (i as f64 + 1.0) / m;
        ks = ks.max((f - lo).abs().max((f - hi).abs()));
    }
    Ok(ks)
}
