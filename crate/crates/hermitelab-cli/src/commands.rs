//! One table builder per subcommand.

use hermitelab::asymptotics::{
    approx_fixed_x, approx_linear_x, bulk_approx, edge_approx, exterior_approx,
};
use hermitelab::dyson;
use hermitelab::edgeworth::{
    self, CumulantTensor, DensityTable1d, DensityTable2d, GridSpec, SampleBatch,
};
use hermitelab::hermite;
use hermitelab::numerics::rng::RngStream;
use hermitelab::oscillator;
use hermitelab::scaled::ScaledValue;
use hermitelab::wick::{self, CovarianceMatrix, MultiIndex};

use crate::table::{signed_log10, Cell, Table};

fn lib_err(e: hermitelab::Error) -> String {
    e.to_string()
}

fn parse_grid(spec: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("--grid expects lo:hi:step, got `{spec}`"));
    }
    let lo: f64 = parts[0].parse().map_err(|_| format!("--grid lo `{}`", parts[0]))?;
    let hi: f64 = parts[1].parse().map_err(|_| format!("--grid hi `{}`", parts[1]))?;
    let step: f64 = parts[2].parse().map_err(|_| format!("--grid step `{}`", parts[2]))?;
    GridSpec::from_range(lo, hi, step).map_err(lib_err)
}

fn parse_range(spec: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 2 {
        return Err(format!("--range expects lo:hi, got `{spec}`"));
    }
    let lo: f64 = parts[0].parse().map_err(|_| format!("--range lo `{}`", parts[0]))?;
    let hi: f64 = parts[1].parse().map_err(|_| format!("--range hi `{}`", parts[1]))?;
    if hi <= lo {
        return Err("--range needs hi > lo".into());
    }
    Ok((lo, hi))
}

fn parse_f64_list(name: &str, spec: &str) -> Result<Vec<f64>, String> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("--{name}: cannot parse `{s}`"))
        })
        .collect()
}

fn parse_usize_list(name: &str, spec: &str) -> Result<Vec<usize>, String> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("--{name}: cannot parse `{s}`"))
        })
        .collect()
}

pub fn hermite_eval(n: usize, x: f64, t: f64, dual: bool) -> Result<Table, String> {
    let value = hermite::hermite_time_eval(n, x, t, dual).map_err(lib_err)?;
    let mut table = Table::new(&["n", "x", "t", "dual", "value", "sign", "log_mag"]);
    table.push(vec![
        Cell::Int(n as i64),
        Cell::Float(x),
        Cell::Float(t),
        Cell::Int(dual as i64),
        Cell::Float(value.to_f64()),
        Cell::Int(value.sign() as i64),
        Cell::Float(value.log_mag()),
    ]);
    Ok(table)
}

pub fn hermite_table(n: usize, t: f64) -> Result<Table, String> {
    let coeffs = hermite::hermite_coeffs(n, t).map_err(lib_err)?;
    let columns: Vec<String> = (0..=n).map(|k| format!("c{}", n - k)).collect();
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(&column_refs);
    // Row in descending powers, matching how the polynomial is written.
    table.push(
        coeffs
            .coeffs
            .iter()
            .rev()
            .map(|&c| Cell::Shortest(c))
            .collect(),
    );
    Ok(table)
}

pub fn hermite_mc(n: usize, x: f64, t: f64, samples: usize, seed: u64) -> Result<Table, String> {
    let mut rng = RngStream::new(seed);
    let est = hermite::hermite_mc_oracle(n, x, t, samples, &mut rng).map_err(lib_err)?;
    let exact = hermite::hermite_time_eval(n, x, t, false).map_err(lib_err)?;
    let mut table = Table::new(&[
        "n",
        "x",
        "t",
        "samples",
        "estimate",
        "std_error",
        "imag_mean",
        "imag_std_error",
        "exact",
    ]);
    table.push(vec![
        Cell::Int(n as i64),
        Cell::Float(x),
        Cell::Float(t),
        Cell::Int(samples as i64),
        Cell::Float(est.estimate),
        Cell::Float(est.std_error),
        Cell::Float(est.imag_mean),
        Cell::Float(est.imag_std_error),
        Cell::Float(exact.to_f64()),
    ]);
    Ok(table)
}

pub fn mv_hermite(
    nvec: &str,
    x: &str,
    rho: Option<f64>,
    cov: Option<&str>,
    dual: bool,
) -> Result<Table, String> {
    let nvec = MultiIndex::new(parse_usize_list("nvec", nvec)?);
    let x = parse_f64_list("x", x)?;
    let v = match (rho, cov) {
        (Some(r), None) => CovarianceMatrix::correlation_2d(r).map_err(lib_err)?,
        (None, Some(spec)) => {
            let rows: Vec<Vec<f64>> = spec
                .split(';')
                .map(|row| parse_f64_list("cov", row))
                .collect::<Result<_, _>>()?;
            let d = rows.len();
            if rows.iter().any(|r| r.len() != d) {
                return Err("--cov must be a square matrix".into());
            }
            let flat: Vec<f64> = rows.into_iter().flatten().collect();
            CovarianceMatrix::new(nalgebra::DMatrix::from_row_slice(d, d, &flat))
                .map_err(lib_err)?
        }
        (None, None) => CovarianceMatrix::identity(nvec.dim()),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let direct = wick::mv_hermite_eval(&nvec, &x, &v).map_err(lib_err)?;
    let mut table = Table::new(&["polynomial", "value"]);
    table.push(vec![Cell::Text("direct".into()), Cell::Float(direct)]);
    if dual {
        let dual_value = wick::mv_dual_eval(&nvec, &x, &v).map_err(lib_err)?;
        table.push(vec![Cell::Text("dual".into()), Cell::Float(dual_value)]);
    }
    Ok(table)
}

fn scaled_cells(value: Result<ScaledValue, hermitelab::Error>) -> (Cell, Cell) {
    match value {
        Ok(v) => (Cell::Float(v.to_f64()), Cell::Float(signed_log10(&v))),
        Err(_) => (Cell::Float(f64::NAN), Cell::Float(f64::NAN)),
    }
}

pub fn asymptotics_compare(n: usize, grid: &str) -> Result<Table, String> {
    let grid = parse_grid(grid)?;
    let mut table = Table::new(&[
        "x",
        "exact",
        "fixed_x",
        "linear_x",
        "bulk",
        "exterior",
        "edge",
        "slog_exact",
        "slog_fixed_x",
        "slog_linear_x",
        "slog_bulk",
        "slog_exterior",
        "slog_edge",
    ]);
    for x in grid.points() {
        // Negative x by parity: H_n(-x) = (-1)^n H_n(x).
        let parity = if x < 0.0 && n % 2 == 1 { -1 } else { 1 };
        let ax = x.abs();
        let apply_parity = |v: ScaledValue| {
            if parity < 0 {
                -v
            } else {
                v
            }
        };
        let exact = apply_parity(hermite::hermite_eval_scaled(n, ax));
        let fixed = approx_fixed_x(n, ax).map(apply_parity);
        let linear = if x == 0.0 {
            Err(hermitelab::Error::invalid("c", "c = 0"))
        } else {
            approx_linear_x(n, ax / n as f64).map(apply_parity)
        };
        let bulk = bulk_approx(n, ax).map(apply_parity);
        let exterior = exterior_approx(n, ax).map(apply_parity);
        let edge = edge_approx(n, ax).map(apply_parity);
        let (exact_v, exact_s) = scaled_cells(Ok(exact));
        let (fixed_v, fixed_s) = scaled_cells(fixed);
        let (linear_v, linear_s) = scaled_cells(linear);
        let (bulk_v, bulk_s) = scaled_cells(bulk);
        let (ext_v, ext_s) = scaled_cells(exterior);
        let (edge_v, edge_s) = scaled_cells(edge);
        table.push(vec![
            Cell::Float(x),
            exact_v,
            fixed_v,
            linear_v,
            bulk_v,
            ext_v,
            edge_v,
            exact_s,
            fixed_s,
            linear_s,
            bulk_s,
            ext_s,
            edge_s,
        ]);
    }
    Ok(table)
}

pub fn wavefn_arcsine(n: usize, grid: &str) -> Result<Table, String> {
    let grid = parse_grid(grid)?;
    let sqrt_n = (n as f64).sqrt();
    let mut table = Table::new(&["x", "scaled_density", "arcsine"]);
    for x in grid.points() {
        let psi = oscillator::psi_eval(n, sqrt_n * x).psi;
        table.push(vec![
            Cell::Float(x),
            Cell::Float(sqrt_n * psi * psi),
            Cell::Float(oscillator::limit_density(
                oscillator::LimitDensity::Arcsine,
                x,
            )),
        ]);
    }
    Ok(table)
}

pub fn kernel_semicircle(n: usize, grid: &str) -> Result<Table, String> {
    let grid = parse_grid(grid)?;
    let mut table = Table::new(&["x", "rescaled_diagonal", "semicircle"]);
    for x in grid.points() {
        table.push(vec![
            Cell::Float(x),
            Cell::Float(oscillator::kernel_diag_rescaled(n, x)),
            Cell::Float(oscillator::limit_density(
                oscillator::LimitDensity::Semicircle,
                x,
            )),
        ]);
    }
    Ok(table)
}

fn path_table(path: &dyson::EigenvaluePath, stride: usize) -> Table {
    let n = path.n_particles();
    let mut columns = vec!["t".to_string()];
    columns.extend((1..=n).map(|j| format!("x{j}")));
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(&column_refs);
    for (k, (t, state)) in path.times.iter().zip(&path.states).enumerate() {
        if k % stride != 0 {
            continue;
        }
        let mut row = Vec::with_capacity(n + 1);
        row.push(Cell::Float(*t));
        row.extend(state.iter().map(|&v| Cell::Float(v)));
        table.push(row);
    }
    table
}

pub fn dyson_sde(
    n: usize,
    horizon: f64,
    dt: f64,
    stride: usize,
    seed: u64,
) -> Result<Table, String> {
    if stride == 0 {
        return Err("--stride must be at least 1".into());
    }
    let mut rng = RngStream::new(seed);
    let path = dyson::simulate_dyson_sde(n, horizon, dt, &mut rng).map_err(lib_err)?;
    Ok(path_table(&path, stride))
}

pub fn dyson_watermelon(n: usize, tstar: f64, steps: usize, seed: u64) -> Result<Table, String> {
    let mut rng = RngStream::new(seed);
    let path = dyson::sample_watermelon_path(n, tstar, steps, &mut rng).map_err(lib_err)?;
    Ok(path_table(&path, 1))
}

pub fn dyson_spectrum(
    n: usize,
    t: f64,
    draws: usize,
    bins: usize,
    range: &str,
    seed: u64,
) -> Result<Table, String> {
    if bins == 0 || draws == 0 {
        return Err("--bins and --draws must be positive".into());
    }
    let (lo, hi) = parse_range(range)?;
    let width = (hi - lo) / bins as f64;
    let root = RngStream::new(seed);
    let ensemble = dyson::sample_gue_ensemble(n, t, draws, &root).map_err(lib_err)?;
    let mut counts = vec![0u64; bins];
    for draw in &ensemble {
        for &x in draw {
            if x >= lo && x < hi {
                counts[((x - lo) / width) as usize] += 1;
            }
        }
    }
    let kernel = dyson::dbm_kernel(n, t).map_err(lib_err)?;
    use hermitelab::oscillator::KernelEvaluator;
    let total = (draws * n) as f64;
    let mut table = Table::new(&["bin_center", "empirical_density", "dpp_density"]);
    for (b, &count) in counts.iter().enumerate() {
        let center = lo + (b as f64 + 0.5) * width;
        table.push(vec![
            Cell::Float(center),
            Cell::Float(count as f64 / total / width),
            Cell::Float(kernel.eval(center, center) / n as f64),
        ]);
    }
    Ok(table)
}

pub fn tracywidom_cdf(grid: &str) -> Result<Table, String> {
    let grid = parse_grid(grid)?;
    let mut table = Table::new(&["s", "f2"]);
    for s in grid.points() {
        table.push(vec![
            Cell::Float(s),
            Cell::Float(dyson::tracy_widom_cdf(s).map_err(lib_err)?),
        ]);
    }
    Ok(table)
}

pub fn tracywidom_empirical(n: usize, draws: usize, seed: u64) -> Result<Table, String> {
    let root = RngStream::new(seed);
    let tops = dyson::sample_gue_top_eigenvalues(n, 1.0 / n as f64, draws, &root)
        .map_err(lib_err)?;
    let mut rescaled: Vec<f64> = tops
        .into_iter()
        .map(|top| (n as f64).powf(2.0 / 3.0) * (top - 2.0))
        .collect();
    rescaled.sort_by(f64::total_cmp);
    let m = rescaled.len() as f64;
    let mut table = Table::new(&["s", "empirical_cdf", "f2"]);
    for (i, &s) in rescaled.iter().enumerate() {
        let f2 = dyson::tracy_widom_cdf(s.clamp(-10.0, 6.0)).map_err(lib_err)?;
        table.push(vec![
            Cell::Float(s),
            Cell::Float((i as f64 + 0.5) / m),
            Cell::Float(f2),
        ]);
    }
    Ok(table)
}

pub fn edgeworth_demo1d(
    n_neurons: usize,
    samples: usize,
    grid: &str,
    bandwidth: Option<f64>,
    seed: u64,
) -> Result<Table, String> {
    let grid = parse_grid(grid)?;
    let mut rng = RngStream::new(seed);
    let batch =
        edgeworth::relu_layer_sample_1d(n_neurons, samples, &mut rng).map_err(lib_err)?;
    let mc = edgeworth::kde_density_1d(&batch, &grid, bandwidth).map_err(lib_err)?;
    let gaussian = DensityTable1d::tabulate(&grid, |x| {
        (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
    });
    let para = DensityTable1d::tabulate(&grid, |x| {
        edgeworth::edgeworth_density_1d(x, 1.0, 15.0, 4, n_neurons).expect("valid parameters")
    });
    let mut table = Table::new(&["x", "gaussian", "para_gaussian", "mc_kde"]);
    for (i, x) in grid.points().enumerate() {
        table.push(vec![
            Cell::Float(x),
            Cell::Float(gaussian.values[i]),
            Cell::Float(para.values[i]),
            Cell::Float(mc.values[i]),
        ]);
    }
    Ok(table)
}

pub fn edgeworth_demo2d(
    theta: f64,
    n_neurons: usize,
    samples: usize,
    grid: &str,
    seed: u64,
) -> Result<Table, String> {
    let grid = parse_grid(grid)?;
    let mut rng = RngStream::new(seed);
    let batch = edgeworth::relu_layer_sample_2d(n_neurons, theta, samples, &mut rng)
        .map_err(lib_err)?;
    let mc = edgeworth::kde_density_2d(&batch, &grid, &grid, None).map_err(lib_err)?;
    let relu = edgeworth::relu_cumulants_2d(theta).map_err(lib_err)?;
    let sigma = CovarianceMatrix::correlation_2d(relu.covariance).map_err(lib_err)?;
    let kappa = CumulantTensor::new(4, 2, relu.tensor_entries()).map_err(lib_err)?;
    let gaussian = DensityTable2d::tabulate(&grid, &grid, |x, y| {
        edgeworth::gaussian_multi(&[x, y], &sigma)
    });
    let para = DensityTable2d::tabulate(&grid, &grid, |x, y| {
        edgeworth::edgeworth_density_multi(&[x, y], &sigma, &kappa, n_neurons)
            .expect("valid parameters")
    });
    let mut table = Table::new(&["x1", "x2", "gaussian", "para_gaussian", "mc_kde"]);
    for (i, x1) in grid.points().enumerate() {
        for (j, x2) in grid.points().enumerate() {
            table.push(vec![
                Cell::Float(x1),
                Cell::Float(x2),
                Cell::Float(gaussian.at(i, j)),
                Cell::Float(para.at(i, j)),
                Cell::Float(mc.at(i, j)),
            ]);
        }
    }
    Ok(table)
}

pub fn edgeworth_from_csv(input: &std::path::Path, order: usize) -> Result<Table, String> {
    if !(2..=8).contains(&order) {
        return Err("--order must be between 2 and 8".into());
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("--input {}: {e}", input.display()))?;
    let batch = SampleBatch::from_csv_str(&text).map_err(lib_err)?;
    let d = batch.dim();
    let mut columns: Vec<String> = (1..=d).map(|j| format!("k{j}")).collect();
    columns.push("kappa".to_string());
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(&column_refs);
    // All index vectors with 2 <= |k| <= order.
    let mut index = vec![0usize; d];
    loop {
        let total: usize = index.iter().sum();
        if (2..=order).contains(&total) {
            let mut labels = Vec::with_capacity(total);
            for (var, &count) in index.iter().enumerate() {
                labels.extend(std::iter::repeat(var).take(count));
            }
            let kappa = batch.sample_cumulant(&labels);
            let mut row: Vec<Cell> = index.iter().map(|&k| Cell::Int(k as i64)).collect();
            row.push(Cell::Float(kappa));
            table.push(row);
        }
        // Odometer over index vectors bounded by `order` per entry.
        let mut pos = 0;
        loop {
            if pos == d {
                return Ok(table);
            }
            index[pos] += 1;
            if index[pos] <= order {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}
