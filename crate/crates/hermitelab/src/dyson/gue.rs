//! GUE sampling at time t: eigenvalues of Hermitian Brownian motion.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::linalg::hermitian_eigenvalues;
use crate::numerics::rng::RngStream;

/// Eigenvalues of a Hermitian matrix with variance-t entries (diagonal
/// N(0,t); off-diagonal real and imaginary parts each N(0, t/2)), sorted
/// descending.
pub fn sample_gue_eigenvalues(n: usize, t: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("n", "need at least one particle"));
    }
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    let h = crate::wick::gue::sample_hermitian(n, t, rng);
    let mut eigs = hermitian_eigenvalues(&h);
    eigs.reverse();
    Ok(eigs)
}

/// Ensemble of eigenvalue draws, one substream per replicate so the result
/// is independent of the number of worker threads.
pub fn sample_gue_ensemble(
    n: usize,
    t: f64,
    draws: usize,
    rng: &RngStream,
) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return Err(Error::invalid("n", "need at least one particle"));
    }
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    Ok((0..draws as u64)
        .into_par_iter()
        .map(|i| {
            let mut stream = rng.substream(i);
            sample_gue_eigenvalues(n, t, &mut stream).expect("validated parameters")
        })
        .collect())
}

/// Largest eigenvalues only, for edge-fluctuation studies.
pub fn sample_gue_top_eigenvalues(
    n: usize,
    t: f64,
    draws: usize,
    rng: &RngStream,
) -> Result<Vec<f64>> {
    Ok(sample_gue_ensemble(n, t, draws, rng)?
        .into_iter()
        .map(|eigs| eigs[0])
        .collect())
}

/// One watermelon realization on [0, t_star]: n non-intersecting Brownian
/// bridges pinned at 0 on both ends, sampled as the eigenvalue path of a
/// Hermitian Brownian bridge H(t) - (t / t_star) H(t_star), recorded at
/// `steps` interior times.
pub fn sample_watermelon_path(
    n: usize,
    t_star: f64,
    steps: usize,
    rng: &mut RngStream,
) -> Result<crate::dyson::sde::EigenvaluePath> {
    if n == 0 {
        return Err(Error::invalid("n", "need at least one path"));
    }
    if t_star <= 0.0 {
        return Err(Error::invalid("t_star", "must be positive"));
    }
    if steps < 2 {
        return Err(Error::invalid("steps", "need at least 2 recording steps"));
    }
    let dt = t_star / (steps + 1) as f64;
    // Cumulative Hermitian Brownian path on the grid.
    let mut cumulative = nalgebra::DMatrix::<nalgebra::Complex<f64>>::zeros(n, n);
    let mut path_matrices = Vec::with_capacity(steps + 1);
    for _ in 0..steps + 1 {
        cumulative += crate::wick::gue::sample_hermitian(n, dt, rng);
        path_matrices.push(cumulative.clone());
    }
    let terminal = path_matrices.pop().expect("at least one increment");
    let mut times = Vec::with_capacity(steps);
    let mut states = Vec::with_capacity(steps);
    for (k, h) in path_matrices.into_iter().enumerate() {
        let t = (k + 1) as f64 * dt;
        let bridge = h - terminal.clone() * nalgebra::Complex::new(t / t_star, 0.0);
        let mut eigs = hermitian_eigenvalues(&bridge);
        eigs.reverse();
        times.push(t);
        states.push(eigs);
    }
    Ok(crate::dyson::sde::EigenvaluePath { times, states })
}
