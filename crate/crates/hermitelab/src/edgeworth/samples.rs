//! Sample batches with explicit seed provenance, their cumulants, and the
//! ReLU-layer examples they are drawn from.

use crate::error::{Error, Result};
use crate::numerics::rng::RngStream;
use crate::numerics::special::factorial;
use crate::edgeworth::partitions::joint_cumulant;

/// n_samples x dim matrix of draws plus the (seed, stream) pair that
/// produced it.
#[derive(Debug, Clone)]
pub struct SampleBatch {
    data: Vec<f64>,
    n_samples: usize,
    dim: usize,
    pub seed: u64,
    pub stream: u64,
}

impl SampleBatch {
    pub fn new(data: Vec<f64>, dim: usize, seed: u64, stream: u64) -> Result<Self> {
        if dim == 0 || data.len() % dim != 0 {
            return Err(Error::DimensionMismatch(format!(
                "data length {} is not a multiple of dim {dim}",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("data", "batch contains non-finite entries"));
        }
        let n_samples = data.len() / dim;
        Ok(SampleBatch {
            data,
            n_samples,
            dim,
            seed,
            stream,
        })
    }

    /// One row of comma-separated numbers per sample.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut data = Vec::new();
        let mut dim = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Vec<f64> = line
                .split(',')
                .map(|field| {
                    field.trim().parse::<f64>().map_err(|_| {
                        Error::invalid(
                            "csv",
                            format!("line {}: cannot parse `{}`", lineno + 1, field),
                        )
                    })
                })
                .collect::<Result<_>>()?;
            match dim {
                None => dim = Some(row.len()),
                Some(d) if d != row.len() => {
                    return Err(Error::invalid(
                        "csv",
                        format!("line {}: expected {d} columns, got {}", lineno + 1, row.len()),
                    ))
                }
                _ => {}
            }
            data.extend(row);
        }
        let dim = dim.ok_or_else(|| Error::invalid("csv", "no data rows"))?;
        SampleBatch::new(data, dim, 0, 0)
    }

    pub fn len(&self) -> usize {
        self.n_samples
    }

    pub fn is_empty(&self) -> bool {
        self.n_samples == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_samples).map(move |i| self.data[i * self.dim + j])
    }

    /// Sample raw moment E[prod_j X_{labels_j}].
    pub fn raw_moment(&self, labels: &[usize]) -> f64 {
        let mut total = 0.0;
        for i in 0..self.n_samples {
            let row = self.row(i);
            total += labels.iter().map(|&l| row[l]).product::<f64>();
        }
        total / self.n_samples as f64
    }

    /// Joint sample cumulant via the partition formula over raw sample
    /// moments. No small-sample correction is applied, so the estimate
    /// carries the usual O(1/n_samples) bias.
    pub fn sample_cumulant(&self, labels: &[usize]) -> f64 {
        joint_cumulant(|block| self.raw_moment(block), labels)
    }
}

/// Per-neuron contribution of the width-n ReLU layer in one dimension:
/// S = (1/sqrt n) sum_i W_i sqrt(2) ReLU(G_i), mean zero and unit variance.
pub fn relu_layer_sample_1d(
    n_neurons: usize,
    n_samples: usize,
    rng: &mut RngStream,
) -> Result<SampleBatch> {
    if n_neurons == 0 {
        return Err(Error::invalid("n_neurons", "need at least one neuron"));
    }
    let scale = (n_neurons as f64).sqrt().recip();
    let mut data = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let mut acc = 0.0;
        for _ in 0..n_neurons {
            let w = rng.standard_normal();
            let g = rng.standard_normal();
            acc += w * std::f64::consts::SQRT_2 * g.max(0.0);
        }
        data.push(scale * acc);
    }
    SampleBatch::new(data, 1, rng.seed(), rng.stream_id())
}

/// Two correlated layer outputs (A, B): the same weights W_i against ReLUs
/// of pre-activations with correlation cos(theta).
pub fn relu_layer_sample_2d(
    n_neurons: usize,
    theta: f64,
    n_samples: usize,
    rng: &mut RngStream,
) -> Result<SampleBatch> {
    if n_neurons == 0 {
        return Err(Error::invalid("n_neurons", "need at least one neuron"));
    }
    if !(0.0..std::f64::consts::PI).contains(&theta) {
        return Err(Error::invalid("theta", format!("needs theta in (0, pi), got {theta}")));
    }
    let (sin_t, cos_t) = theta.sin_cos();
    let scale = (n_neurons as f64).sqrt().recip();
    let mut data = Vec::with_capacity(2 * n_samples);
    for _ in 0..n_samples {
        let mut a = 0.0;
        let mut b = 0.0;
        for _ in 0..n_neurons {
            let w = rng.standard_normal();
            let g = rng.standard_normal();
            let z = rng.standard_normal();
            a += w * std::f64::consts::SQRT_2 * g.max(0.0);
            b += w * std::f64::consts::SQRT_2 * (cos_t * g + sin_t * z).max(0.0);
        }
        data.push(scale * a);
        data.push(scale * b);
    }
    SampleBatch::new(data, 2, rng.seed(), rng.stream_id())
}

/// Closed forms for the correlated-ReLU moments
/// Jbar_{j,k} = E[(sqrt 2 ReLU(G))^j (sqrt 2 ReLU(cos t G + sin t Z))^k],
/// symmetric in (j, k); available orders are (1,1), (1,3), (3,1), (2,2).
pub fn jbar(j: usize, k: usize, theta: f64) -> Result<f64> {
    if !(0.0..std::f64::consts::PI).contains(&theta) || theta == 0.0 {
        return Err(Error::invalid("theta", format!("needs theta in (0, pi), got {theta}")));
    }
    let (sin_t, cos_t) = theta.sin_cos();
    let pi = std::f64::consts::PI;
    match (j.min(k), j.max(k)) {
        (1, 1) => Ok(2.0 * (sin_t + (pi - theta) * cos_t) / (2.0 * pi)),
        (1, 3) => Ok(6.0 * cos_t
            + (2.0 / pi) * (3.0 * sin_t - 3.0 * theta * cos_t - sin_t.powi(3))),
        (2, 2) => Ok(4.0 * ((pi - theta) * (2.0 * cos_t * cos_t + 1.0) + 3.0 * sin_t * cos_t)
            / (2.0 * pi)),
        _ => Err(Error::UnsupportedOrder(j, k)),
    }
}

/// Covariance matrix and order-4 cumulant tensor of the per-neuron vector
/// (W sqrt2 ReLU(G), W sqrt2 ReLU(cos t G + sin t Z)), in terms of the Jbar
/// closed forms. With the shared weight W (E[W^4] = 3):
///   kappa_40 = kappa_04 = 15,
///   kappa_31 = kappa_13 = 3 Jbar_13 - 3 Jbar_11,
///   kappa_22 = 3 Jbar_22 - 1 - 2 Jbar_11^2.
pub fn relu_cumulants_2d(theta: f64) -> Result<ReluCumulants> {
    let j11 = jbar(1, 1, theta)?;
    let j13 = jbar(1, 3, theta)?;
    let j22 = jbar(2, 2, theta)?;
    Ok(ReluCumulants {
        covariance: j11,
        kappa_40: 15.0,
        kappa_31: 3.0 * j13 - 3.0 * j11,
        kappa_22: 3.0 * j22 - 1.0 - 2.0 * j11 * j11,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReluCumulants {
    /// Off-diagonal entry of the unit-diagonal covariance matrix.
    pub covariance: f64,
    pub kappa_40: f64,
    pub kappa_31: f64,
    pub kappa_22: f64,
}

impl ReluCumulants {
    /// Order-4 tensor entries as ((k1, k2), value) with k1 + k2 = 4.
    pub fn tensor_entries(&self) -> Vec<(Vec<usize>, f64)> {
        vec![
            (vec![4, 0], self.kappa_40),
            (vec![3, 1], self.kappa_31),
            (vec![2, 2], self.kappa_22),
            (vec![1, 3], self.kappa_31),
            (vec![0, 4], self.kappa_40),
        ]
    }
}

/// Normalization prod k_j! of a tensor index.
pub fn index_factorial(index: &[usize]) -> f64 {
    index.iter().map(|&k| factorial(k)).product()
}
