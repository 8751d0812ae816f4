//! Joint densities: the pinned watermelon, non-intersecting Brownian motions
//! started at the origin, and the Karlin-McGregor non-intersection
//! determinant they both come from.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numerics::linalg::determinant;
use crate::numerics::special::factorial;

/// Vandermonde product prod_{i<j} (x_i - x_j).
pub fn vandermonde(x: &[f64]) -> f64 {
    let mut out = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            out *= x[i] - x[j];
        }
    }
    out
}

/// Centred Gaussian density with variance t.
pub fn gaussian_density(x: f64, t: f64) -> f64 {
    (-x * x / (2.0 * t)).exp() / (2.0 * std::f64::consts::PI * t).sqrt()
}

fn superfactorial(n: usize) -> f64 {
    (1..n).map(factorial).product()
}

/// Joint density of the n-path Brownian watermelon pinned at 0 on both ends
/// of [0, t_star], evaluated at time t:
/// t^{-n^2/2} c_{n,t,t*} V(x)^2 prod_j e^{-x_j^2/(2t)} e^{-x_j^2/(2(t*-t))},
/// c_{n,t,t*} = (2 pi)^{-n/2} (t*/(t*-t))^{n^2/2} / V(0,1,...,n-1).
/// Unordered inputs get density 0 (the process lives in the ordered chamber).
pub fn watermelon_density(x: &[f64], t: f64, t_star: f64) -> Result<f64> {
    let n = x.len();
    if n == 0 {
        return Err(Error::invalid("x", "need at least one coordinate"));
    }
    if !(t > 0.0 && t < t_star) {
        return Err(Error::invalid("t", format!("need 0 < t < t_star, got t={t}, t_star={t_star}")));
    }
    if !x.windows(2).all(|p| p[0] > p[1]) {
        return Ok(0.0);
    }
    let nf = n as f64;
    let c = (2.0 * std::f64::consts::PI).powf(-nf / 2.0)
        * (t_star / (t_star - t)).powf(nf * nf / 2.0)
        / superfactorial(n);
    let v = vandermonde(x);
    let mut weight = 0.0;
    for &xi in x {
        weight += -xi * xi / (2.0 * t) - xi * xi / (2.0 * (t_star - t));
    }
    Ok(t.powf(-nf * nf / 2.0) * c * v * v * weight.exp())
}

/// Joint density of non-intersecting Brownian motions started at 0:
/// V(x/sqrt(t))^2 prod_j phi_t(x_j) / prod_{k<n} k!.
/// Unordered inputs get density 0.
pub fn nibm_density(x: &[f64], t: f64) -> Result<f64> {
    let n = x.len();
    if n == 0 {
        return Err(Error::invalid("x", "need at least one coordinate"));
    }
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    if !x.windows(2).all(|p| p[0] > p[1]) {
        return Ok(0.0);
    }
    let sqrt_t = t.sqrt();
    let scaled: Vec<f64> = x.iter().map(|&xi| xi / sqrt_t).collect();
    let v = vandermonde(&scaled);
    let gaussians: f64 = x.iter().map(|&xi| gaussian_density(xi, t)).product();
    Ok(v * v * gaussians / superfactorial(n))
}

/// Karlin-McGregor determinant det[phi_t(y_j - x_i)]: the density of n
/// independent Brownian motions going from the ordered starts to the ordered
/// ends without ever intersecting.
pub fn karlin_mcgregor_det(starts: &[f64], ends: &[f64], t: f64) -> Result<f64> {
    let n = starts.len();
    if n == 0 || ends.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "starts has {} entries, ends has {}",
            n,
            ends.len()
        )));
    }
    if t <= 0.0 {
        return Err(Error::invalid("t", format!("must be > 0, got {t}")));
    }
    if !starts.windows(2).all(|p| p[0] > p[1]) || !ends.windows(2).all(|p| p[0] > p[1]) {
        return Err(Error::invalid("starts/ends", "must be strictly ordered"));
    }
    let m = DMatrix::from_fn(n, n, |i, j| gaussian_density(ends[j] - starts[i], t));
    Ok(determinant(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quadrature::adaptive_simpson;
    use crate::numerics::rng::RngStream;
    use crate::oscillator::psi_eval;
    use approx::assert_relative_eq;

    #[test]
    fn vandermonde_scaling_exact() {
        // V(c x) = c^{n(n-1)/2} V(x), checked in exact integer arithmetic
        // for n <= 8 with c = 3.
        for n in 2..=8usize {
            let coords: Vec<i128> = (0..n).map(|k| 7 - 2 * k as i128).collect();
            let scaled: Vec<i128> = coords.iter().map(|&v| 3 * v).collect();
            let vi = |xs: &[i128]| -> i128 {
                let mut out = 1i128;
                for i in 0..xs.len() {
                    for j in i + 1..xs.len() {
                        out *= xs[i] - xs[j];
                    }
                }
                out
            };
            let power = 3i128.pow((n * (n - 1) / 2) as u32);
            assert_eq!(vi(&scaled), power * vi(&coords), "n={n}");
            // The f64 implementation agrees on the same integers.
            let xf: Vec<f64> = coords.iter().map(|&v| v as f64).collect();
            assert_eq!(vandermonde(&xf), vi(&coords) as f64);
        }
    }

    #[test]
    fn watermelon_single_path_is_brownian_bridge() {
        // n = 1: the pinned path at time t is N(0, t (t*-t)/t*).
        let (t, t_star) = (0.3, 1.0);
        let var = t * (t_star - t) / t_star;
        for &x in &[-1.0, 0.0, 0.7] {
            let d = watermelon_density(&[x], t, t_star).unwrap();
            assert_relative_eq!(d, gaussian_density(x, var), max_relative = 1e-12);
        }
    }

    #[test]
    fn watermelon_time_reversal_symmetry() {
        let t_star = 2.0;
        let x = [1.1, 0.2, -0.8];
        for &t in &[0.3, 0.9] {
            let a = watermelon_density(&x, t, t_star).unwrap();
            let b = watermelon_density(&x, t_star - t, t_star).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn watermelon_normalizes_by_importance_sampling() {
        // n = 2 at t = 0.5, t* = 1: integrate over the ordered half-plane by
        // sampling the product bridge marginal and averaging the ratio.
        let (t, t_star) = (0.5_f64, 1.0_f64);
        let var = t * (t_star - t) / t_star;
        let mut rng = RngStream::new(29);
        let samples = 1_000_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..samples {
            let a = rng.normal(0.0, var.sqrt());
            let b = rng.normal(0.0, var.sqrt());
            let (hi, lo) = if a > b { (a, b) } else { (b, a) };
            // Proposal density of the sorted pair is 2 phi(hi) phi(lo).
            let proposal = 2.0 * gaussian_density(hi, var) * gaussian_density(lo, var);
            let ratio = watermelon_density(&[hi, lo], t, t_star).unwrap() / proposal;
            sum += ratio;
            sumsq += ratio * ratio;
        }
        let mean = sum / samples as f64;
        let se = (((sumsq - samples as f64 * mean * mean) / (samples as f64 - 1.0))
            / samples as f64)
            .sqrt();
        assert!(
            (mean - 1.0).abs() < 0.01 && (mean - 1.0).abs() < 4.0 * se.max(1e-4),
            "normalization {mean} +- {se}"
        );
    }

    #[test]
    fn watermelon_rejects_unordered_and_bad_times() {
        assert_eq!(watermelon_density(&[0.0, 1.0], 0.3, 1.0).unwrap(), 0.0);
        assert!(watermelon_density(&[1.0, 0.0], 1.0, 1.0).is_err());
        assert!(watermelon_density(&[1.0, 0.0], 0.0, 1.0).is_err());
    }

    #[test]
    fn nibm_small_cases() {
        let t = 0.8;
        for &x in &[-0.5, 0.9] {
            assert_relative_eq!(
                nibm_density(&[x], t).unwrap(),
                gaussian_density(x, t),
                max_relative = 1e-13
            );
        }
        // n = 2: (x1 - x2)^2 / t * phi(x1) phi(x2) / 1!.
        let (x1, x2) = (1.4, -0.3);
        let expected = (x1 - x2) * (x1 - x2) / t
            * gaussian_density(x1, t)
            * gaussian_density(x2, t);
        assert_relative_eq!(
            nibm_density(&[x1, x2], t).unwrap(),
            expected,
            max_relative = 1e-12
        );
    }

    #[test]
    fn nibm_matches_biorthogonal_determinant_form() {
        // (det[Psi_{i-1}(x_j / sqrt t)])^2 / t^{n/2} reproduces the density.
        let t = 0.6_f64;
        let points: [&[f64]; 3] = [
            &[0.9, -0.4],
            &[2.0, 0.5, -1.1],
            &[2.2, 1.0, -0.2, -1.5, -2.6],
        ];
        for x in points {
            let n = x.len();
            let m = nalgebra::DMatrix::from_fn(n, n, |i, j| {
                psi_eval(i, x[j] / t.sqrt()).psi
            });
            let det = crate::numerics::linalg::determinant(&m);
            let biorthogonal = det * det / t.powf(n as f64 / 2.0);
            let direct = nibm_density(x, t).unwrap();
            assert!(
                (biorthogonal - direct).abs() <= 1e-9 * direct.max(1e-12),
                "x={x:?}: {biorthogonal} vs {direct}"
            );
        }
    }

    #[test]
    fn karlin_mcgregor_single_path() {
        let v = karlin_mcgregor_det(&[0.5], &[1.5], 2.0).unwrap();
        assert_relative_eq!(v, gaussian_density(1.0, 2.0), max_relative = 1e-13);
    }

    #[test]
    fn karlin_mcgregor_collapse_to_vandermonde() {
        // Starts (eps, 0): the determinant approaches
        // (eps/t) V(y) phi_t(y_1) phi_t(y_2) as eps -> 0.
        let t = 1.0;
        let y = [1.2, -0.4];
        let limit = vandermonde(&y) * gaussian_density(y[0], t) * gaussian_density(y[1], t) / t;
        for eps in [1e-3, 1e-4] {
            let det = karlin_mcgregor_det(&[eps, 0.0], &y, t).unwrap();
            assert_relative_eq!(det / eps, limit, max_relative = 2e-2 * eps.sqrt().sqrt() + 1e-3);
        }
    }

    #[test]
    fn karlin_mcgregor_bounds_and_bracket() {
        let t = 1.0;
        let starts = [1.0, -1.0];
        for ends in [[1.5, -0.5], [2.0, -2.0], [0.6, 0.1]] {
            let det = karlin_mcgregor_det(&starts, &ends, t).unwrap();
            let product = gaussian_density(ends[0] - starts[0], t)
                * gaussian_density(ends[1] - starts[1], t);
            assert!(det >= 0.0 && det <= product, "det {det} vs product {product}");
        }
    }

    #[test]
    fn karlin_mcgregor_vs_crossing_corrected_walk() {
        // The difference of the two paths is Brownian with variance rate 2;
        // simulate it with per-step Brownian-bridge crossing probabilities
        // (an unbiased non-intersection estimate) and compare the surviving
        // mass in a window with the KM determinant marginalized over the
        // centre of mass, computed numerically from the determinant itself.
        let t = 1.0;
        let d0 = 1.0; // starts (0.5, -0.5)
        let mut rng = RngStream::new(31);
        let walks = 400_000;
        let steps = 64;
        let h = t / steps as f64;
        let step_sd = (2.0 * h).sqrt();
        let window = (0.8, 2.0);
        let mut hits = 0u64;
        for _ in 0..walks {
            let mut d = d0;
            let mut alive = true;
            for _ in 0..steps {
                let next = d + step_sd * rng.standard_normal();
                if next <= 0.0 {
                    alive = false;
                    break;
                }
                // Bridge between positive endpoints can still dip below zero
                // inside the step: crossing probability exp(-2 d next / (2h)).
                let p_cross = (-d * next / h).exp();
                if rng.uniform() < p_cross {
                    alive = false;
                    break;
                }
                d = next;
            }
            if alive && d >= window.0 && d <= window.1 {
                hits += 1;
            }
        }
        let km_difference_marginal = |z: f64| -> f64 {
            adaptive_simpson(
                |c| {
                    karlin_mcgregor_det(&[0.5, -0.5], &[c + z / 2.0, c - z / 2.0], t).unwrap()
                },
                -8.0,
                8.0,
                1e-10,
            )
        };
        let expected = adaptive_simpson(km_difference_marginal, window.0, window.1, 1e-8);
        let p_hat = hits as f64 / walks as f64;
        let se = (p_hat * (1.0 - p_hat) / walks as f64).sqrt();
        assert!(
            (p_hat - expected).abs() <= 4.0 * se + 2e-3,
            "walk {p_hat} +- {se} vs KM {expected}"
        );
    }
}
