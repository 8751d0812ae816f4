//! Gaussian kernel density estimation on regular grids (linear binning plus
//! a truncated discrete Gaussian convolution) and KL divergence between
//! density tables on a common grid.

use crate::edgeworth::samples::SampleBatch;
use crate::error::{Error, Result};

/// Regular 1D grid: points start + i * step for i < len.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl GridSpec {
    pub fn new(start: f64, step: f64, len: usize) -> Result<Self> {
        if step <= 0.0 || len < 2 {
            return Err(Error::invalid("grid", "need positive step and at least 2 points"));
        }
        Ok(GridSpec { start, step, len })
    }

    /// Inclusive range with the given step: start, start+step, ..., <= stop.
    pub fn from_range(start: f64, stop: f64, step: f64) -> Result<Self> {
        if step <= 0.0 || stop <= start {
            return Err(Error::invalid("grid", "need stop > start and step > 0"));
        }
        let len = ((stop - start) / step).round() as usize + 1;
        GridSpec::new(start, step, len)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|i| self.point(i))
    }
}

/// Density values on a 1D grid.
#[derive(Debug, Clone)]
pub struct DensityTable1d {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl DensityTable1d {
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.step
    }

    /// Tabulate a closed-form density on the same grid.
    pub fn tabulate(grid: &GridSpec, f: impl Fn(f64) -> f64) -> Self {
        DensityTable1d {
            grid: grid.clone(),
            values: grid.points().map(f).collect(),
        }
    }

    pub fn sup_distance(&self, other: &DensityTable1d) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Density values on a 2D grid, row-major over (x index, y index).
#[derive(Debug, Clone)]
pub struct DensityTable2d {
    pub grid_x: GridSpec,
    pub grid_y: GridSpec,
    pub values: Vec<f64>,
}

impl DensityTable2d {
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid_x.step * self.grid_y.step
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid_y.len + j]
    }

    pub fn tabulate(grid_x: &GridSpec, grid_y: &GridSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid_x.len * grid_y.len);
        for x in grid_x.points() {
            for y in grid_y.points() {
                values.push(f(x, y));
            }
        }
        DensityTable2d {
            grid_x: grid_x.clone(),
            grid_y: grid_y.clone(),
            values,
        }
    }
}

/// Silverman's rule in one dimension: 0.9 min(sd, iqr / 1.34) m^{-1/5}.
pub fn silverman_bandwidth_1d(samples: &mut Vec<f64>) -> f64 {
    let m = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / m;
    let sd = (samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0)).sqrt();
    samples.sort_by(f64::total_cmp);
    let q = |p: f64| samples[((m - 1.0) * p).round() as usize];
    let iqr = q(0.75) - q(0.25);
    0.9 * sd.min(iqr / 1.34).max(1e-12) * m.powf(-0.2)
}

fn gaussian_kernel(bandwidth: f64, step: f64) -> Vec<f64> {
    // Discrete kernel out to 5 bandwidths, normalized to unit sum so the
    // binned mass is preserved exactly.
    let half = ((5.0 * bandwidth / step).ceil() as usize).max(1);
    let mut kernel = Vec::with_capacity(2 * half + 1);
    for i in -(half as isize)..=(half as isize) {
        let u = i as f64 * step / bandwidth;
        kernel.push((-0.5 * u * u).exp());
    }
    let total: f64 = kernel.iter().sum();
    for k in kernel.iter_mut() {
        *k /= total;
    }
    kernel
}

/// Linear binning of samples onto the grid: each sample splits its unit
/// weight between the two neighbouring grid points.
fn linear_bin_1d(samples: impl Iterator<Item = f64>, grid: &GridSpec) -> (Vec<f64>, usize) {
    let mut bins = vec![0.0; grid.len];
    let mut count = 0usize;
    for x in samples {
        count += 1;
        let pos = (x - grid.start) / grid.step;
        if pos < 0.0 || pos > (grid.len - 1) as f64 {
            continue;
        }
        let i = pos.floor() as usize;
        let frac = pos - i as f64;
        bins[i] += 1.0 - frac;
        if i + 1 < grid.len {
            bins[i + 1] += frac;
        }
    }
    (bins, count)
}

fn convolve_1d(bins: &[f64], kernel: &[f64]) -> Vec<f64> {
    let half = kernel.len() / 2;
    let mut out = vec![0.0; bins.len()];
    for (i, &b) in bins.iter().enumerate() {
        if b == 0.0 {
            continue;
        }
        for (k, &w) in kernel.iter().enumerate() {
            let j = i as isize + k as isize - half as isize;
            if j >= 0 && (j as usize) < out.len() {
                out[j as usize] += b * w;
            }
        }
    }
    out
}

/// Gaussian KDE of a 1D batch on the grid. `bandwidth` of None uses
/// Silverman's rule.
pub fn kde_density_1d(
    batch: &SampleBatch,
    grid: &GridSpec,
    bandwidth: Option<f64>,
) -> Result<DensityTable1d> {
    if batch.dim() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "kde_density_1d needs a 1-column batch, got {}",
            batch.dim()
        )));
    }
    if batch.is_empty() {
        return Err(Error::invalid("batch", "no samples"));
    }
    let bandwidth = match bandwidth {
        Some(b) if b > 0.0 => b,
        Some(b) => return Err(Error::invalid("bandwidth", format!("must be > 0, got {b}"))),
        None => {
            let mut copy: Vec<f64> = batch.column(0).collect();
            silverman_bandwidth_1d(&mut copy)
        }
    };
    let (bins, count) = linear_bin_1d(batch.column(0), grid);
    let kernel = gaussian_kernel(bandwidth, grid.step);
    let smoothed = convolve_1d(&bins, &kernel);
    let norm = count as f64 * grid.step;
    Ok(DensityTable1d {
        grid: grid.clone(),
        values: smoothed.into_iter().map(|v| v / norm).collect(),
    })
}

/// Gaussian product-kernel KDE of a 2D batch; per-axis Silverman bandwidths
/// sd_i m^{-1/6} by default.
pub fn kde_density_2d(
    batch: &SampleBatch,
    grid_x: &GridSpec,
    grid_y: &GridSpec,
    bandwidth: Option<(f64, f64)>,
) -> Result<DensityTable2d> {
    if batch.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "kde_density_2d needs a 2-column batch, got {}",
            batch.dim()
        )));
    }
    if batch.is_empty() {
        return Err(Error::invalid("batch", "no samples"));
    }
    let m = batch.len() as f64;
    let (bx, by) = match bandwidth {
        Some((a, b)) if a > 0.0 && b > 0.0 => (a, b),
        Some(_) => return Err(Error::invalid("bandwidth", "must be > 0")),
        None => {
            let sd = |j: usize| {
                let mean = batch.column(j).sum::<f64>() / m;
                (batch.column(j).map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0)).sqrt()
            };
            (sd(0) * m.powf(-1.0 / 6.0), sd(1) * m.powf(-1.0 / 6.0))
        }
    };
    // Linear binning in 2D.
    let (nx, ny) = (grid_x.len, grid_y.len);
    let mut bins = vec![0.0; nx * ny];
    for i in 0..batch.len() {
        let row = batch.row(i);
        let px = (row[0] - grid_x.start) / grid_x.step;
        let py = (row[1] - grid_y.start) / grid_y.step;
        if px < 0.0 || px > (nx - 1) as f64 || py < 0.0 || py > (ny - 1) as f64 {
            continue;
        }
        let (ix, iy) = (px.floor() as usize, py.floor() as usize);
        let (fx, fy) = (px - ix as f64, py - iy as f64);
        for (dx, wx) in [(0usize, 1.0 - fx), (1, fx)] {
            for (dy, wy) in [(0usize, 1.0 - fy), (1, fy)] {
                let (jx, jy) = (ix + dx, iy + dy);
                if jx < nx && jy < ny {
                    bins[jx * ny + jy] += wx * wy;
                }
            }
        }
    }
    // Separable convolution: rows then columns.
    let kx = gaussian_kernel(bx, grid_x.step);
    let ky = gaussian_kernel(by, grid_y.step);
    let mut tmp = vec![0.0; nx * ny];
    for jy in 0..ny {
        let column: Vec<f64> = (0..nx).map(|jx| bins[jx * ny + jy]).collect();
        let smoothed = convolve_1d(&column, &kx);
        for jx in 0..nx {
            tmp[jx * ny + jy] = smoothed[jx];
        }
    }
    let mut values = vec![0.0; nx * ny];
    for jx in 0..nx {
        let row: Vec<f64> = tmp[jx * ny..(jx + 1) * ny].to_vec();
        let smoothed = convolve_1d(&row, &ky);
        values[jx * ny..(jx + 1) * ny].copy_from_slice(&smoothed);
    }
    let norm = m * grid_x.step * grid_y.step;
    for v in values.iter_mut() {
        *v /= norm;
    }
    Ok(DensityTable2d {
        grid_x: grid_x.clone(),
        grid_y: grid_y.clone(),
        values,
    })
}

const KL_FLOOR: f64 = 1e-12;

/// sum p log(p / q) dx over the common grid, with q floored at 1e-12
/// against empirical zeros.
pub fn kl_divergence_1d(p: &DensityTable1d, q: &DensityTable1d) -> Result<f64> {
    if p.grid != q.grid {
        return Err(Error::DimensionMismatch("density tables on different grids".into()));
    }
    let mut total = 0.0;
    for (&pv, &qv) in p.values.iter().zip(&q.values) {
        if pv > 0.0 {
            total += pv * (pv / qv.max(KL_FLOOR)).ln();
        }
    }
    Ok(total * p.grid.step)
}

pub fn kl_divergence_2d(p: &DensityTable2d, q: &DensityTable2d) -> Result<f64> {
    if p.grid_x != q.grid_x || p.grid_y != q.grid_y {
        return Err(Error::DimensionMismatch("density tables on different grids".into()));
    }
    let mut total = 0.0;
    for (&pv, &qv) in p.values.iter().zip(&q.values) {
        if pv > 0.0 {
            total += pv * (pv / qv.max(KL_FLOOR)).ln();
        }
    }
    Ok(total * p.grid_x.step * p.grid_y.step)
}
