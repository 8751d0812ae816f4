//! Euler-Maruyama simulation of the interacting diffusion
//! dX_j = dB_j + sum_{l != j} dt / (X_j - X_l).

use crate::error::{Error, Result};
use crate::numerics::linalg::hermitian_eigenvalues;
use crate::numerics::rng::RngStream;

/// Ordered particle trajectories: states[k] holds the strictly decreasing
/// particle vector at times[k].
#[derive(Debug, Clone)]
pub struct EigenvaluePath {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl EigenvaluePath {
    pub fn n_particles(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    pub fn is_strictly_ordered(&self) -> bool {
        self.states
            .iter()
            .all(|state| state.windows(2).all(|p| p[0] > p[1]))
    }
}

fn drift(state: &[f64], out: &mut [f64]) {
    let n = state.len();
    for j in 0..n {
        let mut d = 0.0;
        for l in 0..n {
            if l != j {
                d += 1.0 / (state[j] - state[l]);
            }
        }
        out[j] = d;
    }
}

fn strictly_decreasing(state: &[f64]) -> bool {
    state.windows(2).all(|p| p[0] > p[1])
}

/// Exact-law advance: eigenvalues of diag(state) + H(h), descending.
fn exact_substep(state: &[f64], h: f64, rng: &mut RngStream, out: &mut [f64]) {
    let n = state.len();
    loop {
        let mut m = crate::wick::gue::sample_hermitian(n, h, rng);
        for j in 0..n {
            m[(j, j)] += nalgebra::Complex::new(state[j], 0.0);
        }
        let mut eigs = hermitian_eigenvalues(&m);
        eigs.reverse();
        out.copy_from_slice(&eigs);
        if strictly_decreasing(out) {
            return;
        }
    }
}

/// Simulate n particles to `horizon` with macro step `dt`, recording every
/// macro step. The SDE is singular at the coincident start, so the first
/// macro step is taken exactly: the state at time dt is drawn as the
/// eigenvalues of a Hermitian matrix with variance-dt entries, which is the
/// process started from zero. Euler-Maruyama takes over from there, in the
/// well-spaced regime where it is accurate.
///
/// A proposed step that breaks the strict ordering is retried with fresh
/// noise (a few draws per level) and then at half the step, down to
/// dt / 2^10. A state whose smallest gap is microscopic cannot be advanced
/// by any Euler step (the repulsion jet that separates one gap overshoots
/// the next), so below the floor the sub-step is taken exactly instead:
/// the process restarted from x is the eigenvalue evolution of
/// diag(x) + Hermitian Brownian motion, so eigenvalues of diag(x) + H(h)
/// advance the state in exact law and never collide.
pub fn simulate_dyson_sde(
    n: usize,
    horizon: f64,
    dt: f64,
    rng: &mut RngStream,
) -> Result<EigenvaluePath> {
    if n == 0 {
        return Err(Error::invalid("n", "need at least one particle"));
    }
    if dt <= 0.0 || horizon <= 0.0 {
        return Err(Error::invalid("dt/horizon", "must be positive"));
    }
    let mut state = crate::dyson::gue::sample_gue_eigenvalues(n, dt, rng)?;
    let dt_min = dt / 1024.0;
    let steps = (horizon / dt).round().max(1.0) as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(dt);
    states.push(state.clone());
    let mut drift_buf = vec![0.0; n];
    let mut proposal = vec![0.0; n];
    for step in 2..=steps {
        let mut remaining = dt;
        while remaining > 1e-15 * dt {
            let mut h = remaining;
            drift(&state, &mut drift_buf);
            'level: loop {
                // A few fresh-noise draws per level before halving again;
                // near the crossover gap a single draw fails too often.
                let sqrt_h = h.sqrt();
                for _ in 0..4 {
                    for j in 0..n {
                        proposal[j] =
                            state[j] + drift_buf[j] * h + sqrt_h * rng.standard_normal();
                    }
                    if strictly_decreasing(&proposal) {
                        break 'level;
                    }
                }
                h *= 0.5;
                if h < dt_min {
                    exact_substep(&state, h, rng, &mut proposal);
                    break 'level;
                }
            }
            state.copy_from_slice(&proposal);
            remaining -= h;
        }
        times.push(step as f64 * dt);
        states.push(state.clone());
    }
    Ok(EigenvaluePath { times, states })
}
