//! Dyson Brownian motion: GUE sampling, the interacting SDE, watermelon and
//! NIBM densities, the Karlin-McGregor determinant, the DPP kernel, Fredholm
//! determinants and the Tracy-Widom law of the top particle.

pub mod densities;
pub mod fredholm;
pub mod gue;
pub mod kernel;
pub mod sde;
pub mod tracy_widom;

pub use densities::{
    gaussian_density, karlin_mcgregor_det, nibm_density, vandermonde, watermelon_density,
};
pub use fredholm::{
    fredholm_det, fredholm_det_nystrom, fredholm_series_truncated, top_particle_cdf,
    FredholmMethod, FredholmResult,
};
pub use gue::{
    sample_gue_eigenvalues, sample_gue_ensemble, sample_gue_top_eigenvalues,
    sample_watermelon_path,
};
pub use kernel::{correlation_function, dbm_kernel, DbmKernel};
pub use sde::{simulate_dyson_sde, EigenvaluePath};
pub use tracy_widom::{ks_distance_to_tw, tracy_widom_cdf};
