//! Large-n approximations: the fixed-x and linear-x formulas, the three
//! square-root-scale regimes, the Airy function they hand off to at the
//! edge, and the phase-quantile zero locator.

pub mod airy;
pub mod regimes;
pub mod zeros;

pub use airy::{airy_contour_eval, airy_eval, AiryValue, AIRY_AT_ZERO, AIRY_PRIME_AT_ZERO};
pub use regimes::{
    approx_fixed_x, approx_linear_x, bulk_approx, bulk_phase, bulk_phase_reduced, edge_approx,
    exterior_approx, plancherel_rotach, Regime, RegimeApprox, RegimeDiagnostics, EDGE_WINDOW,
};
pub use zeros::{hermite_zero_locations, phase_cdf};
