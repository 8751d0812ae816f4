//! GUE expected characteristic polynomial: for an n x n Hermitian matrix M
//! with variance-t entries (diagonal N(0,t), off-diagonal real and imaginary
//! parts each N(0, t/2)), E det(xI - M) is the time-indexed Hermite
//! polynomial of order n at (x, t).

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::hermite::McEstimate;
use crate::numerics::linalg::determinant_complex;
use crate::numerics::rng::RngStream;

/// Draw a Hermitian matrix with variance-t entries.
pub(crate) fn sample_hermitian(n: usize, t: f64, rng: &mut RngStream) -> DMatrix<Complex<f64>> {
    let sd_diag = t.sqrt();
    let sd_off = (t / 2.0).sqrt();
    let mut m = DMatrix::<Complex<f64>>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex::new(rng.normal(0.0, sd_diag), 0.0);
        for j in 0..i {
            let re = rng.normal(0.0, sd_off);
            let im = rng.normal(0.0, sd_off);
            m[(i, j)] = Complex::new(re, im);
            m[(j, i)] = Complex::new(re, -im);
        }
    }
    m
}

/// Monte Carlo estimate of E det(xI - M) over GUE draws.
pub fn gue_charpoly_mc(
    n: usize,
    x: f64,
    t: f64,
    samples: usize,
    rng: &mut RngStream,
) -> Result<McEstimate> {
    if n == 0 || n > 12 {
        return Err(Error::invalid("n", "determinant sampling supports 1 <= n <= 12"));
    }
    if samples < 100 {
        return Err(Error::invalid("samples", "need at least 100 samples"));
    }
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    let mut sum_im = 0.0;
    let mut sumsq_im = 0.0;
    for _ in 0..samples {
        let mut m = sample_hermitian(n, t, rng);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = -m[(i, j)];
            }
            m[(i, i)] += Complex::new(x, 0.0);
        }
        // det(xI - M) is real for Hermitian M; the imaginary residue is
        // round-off and gets tracked like the MC oracle's imaginary part.
        let det = determinant_complex(&m);
        sum += det.re;
        sumsq += det.re * det.re;
        sum_im += det.im;
        sumsq_im += det.im * det.im;
    }
    let mcount = samples as f64;
    let mean = sum / mcount;
    let var = ((sumsq - mcount * mean * mean) / (mcount - 1.0)).max(0.0);
    let mean_im = sum_im / mcount;
    let var_im = ((sumsq_im - mcount * mean_im * mean_im) / (mcount - 1.0)).max(0.0);
    Ok(McEstimate {
        estimate: mean,
        std_error: (var / mcount).sqrt(),
        imag_mean: mean_im,
        imag_std_error: (var_im / mcount).sqrt(),
    })
}
