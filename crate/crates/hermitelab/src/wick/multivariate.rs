//! Multivariable Hermite polynomials and their duals.
//!
//! The direct polynomial is the expectation of prod_a (x_a + i Z_a)^{n_a}
//! over Z ~ N(0, V). Expanding the product and applying the pairing sum
//! turns this into a sum over variable choices plus pairings of the chosen
//! Gaussian slots, with pair weight E[(i Z_a)(i Z_b)] = -V_ab; no complex
//! arithmetic is needed on that route. A tensor Gauss-Hermite route over the
//! Cholesky transform of V extends evaluation past the enumerative limit,
//! and the coordinate recurrence gives a third, independent route.

use nalgebra::{Complex, DMatrix};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::numerics::linalg::{cholesky_lower, spd_inverse, symmetric_eigenvalues};
use crate::numerics::quadrature::{QuadratureKind, QuadratureRule};
use crate::numerics::rng::RngStream;

/// Enumerative pairing route is the default up to this total degree;
/// (15)!! ~ 2e6 terms is the practical desk limit.
pub const ENUMERATIVE_MAX_DEGREE: usize = 16;
/// The quadrature route extends evaluation to this total degree.
pub const QUADRATURE_MAX_DEGREE: usize = 40;

/// Index vector (n_1, ..., n_d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex {
    pub entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// |n| = sum of entries.
    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    /// One label per slot: n_1 copies of 0, n_2 copies of 1, ...
    pub fn slot_labels(&self) -> Vec<usize> {
        let mut labels = Vec::with_capacity(self.total());
        for (a, &count) in self.entries.iter().enumerate() {
            labels.extend(std::iter::repeat(a).take(count));
        }
        labels
    }
}

impl From<&[usize]> for MultiIndex {
    fn from(entries: &[usize]) -> Self {
        MultiIndex::new(entries.to_vec())
    }
}

/// Symmetric positive-definite covariance matrix, validated on construction:
/// symmetry to 1e-12 and condition number below 1e12 (effectively singular
/// matrices are rejected).
#[derive(Debug, Clone)]
pub struct CovarianceMatrix {
    values: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(values: DMatrix<f64>) -> Result<Self> {
        if values.nrows() != values.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "covariance matrix must be square, got {}x{}",
                values.nrows(),
                values.ncols()
            )));
        }
        let scale = values.amax().max(1e-300);
        for i in 0..values.nrows() {
            for j in 0..i {
                if (values[(i, j)] - values[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::invalid(
                        "V",
                        format!("not symmetric at ({i},{j}) within 1e-12"),
                    ));
                }
            }
        }
        let eigs = symmetric_eigenvalues(&values);
        let min = eigs.first().copied().unwrap_or(0.0);
        let max = eigs.last().copied().unwrap_or(0.0);
        if min <= 0.0 || max / min > 1e12 {
            return Err(Error::SingularMatrix);
        }
        Ok(CovarianceMatrix { values })
    }

    pub fn identity(d: usize) -> Self {
        CovarianceMatrix {
            values: DMatrix::identity(d, d),
        }
    }

    /// d = 2 with unit diagonal and off-diagonal correlation rho.
    pub fn correlation_2d(rho: f64) -> Result<Self> {
        Self::new(DMatrix::from_row_slice(2, 2, &[1.0, rho, rho, 1.0]))
    }

    pub fn dim(&self) -> usize {
        self.values.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }

    /// Inverse, itself a valid covariance matrix.
    pub fn inverse(&self) -> Result<CovarianceMatrix> {
        let mut inv = spd_inverse(&self.values)?;
        // Symmetrize away factorization round-off so validation passes.
        for i in 0..inv.nrows() {
            for j in 0..i {
                let v = 0.5 * (inv[(i, j)] + inv[(j, i)]);
                inv[(i, j)] = v;
                inv[(j, i)] = v;
            }
        }
        CovarianceMatrix::new(inv)
    }

    pub fn cholesky(&self) -> DMatrix<f64> {
        cholesky_lower(&self.values).expect("validated SPD matrix")
    }
}

fn check_dims(nvec: &MultiIndex, x: &[f64], v: &CovarianceMatrix) -> Result<()> {
    if nvec.dim() != x.len() || nvec.dim() != v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "nvec has dim {}, x has dim {}, V has dim {}",
            nvec.dim(),
            x.len(),
            v.dim()
        )));
    }
    Ok(())
}

/// Direct multivariable Hermite polynomial. Dispatches to the enumerative
/// pairing sum for |n| <= 16 and to tensor Gauss-Hermite quadrature beyond.
pub fn mv_hermite_eval(nvec: &MultiIndex, x: &[f64], v: &CovarianceMatrix) -> Result<f64> {
    check_dims(nvec, x, v)?;
    let total = nvec.total();
    if total <= ENUMERATIVE_MAX_DEGREE {
        Ok(mv_hermite_enumerative(nvec, x, v))
    } else if total <= QUADRATURE_MAX_DEGREE {
        Ok(mv_hermite_quadrature(nvec, x, v, total / 2 + 1))
    } else {
        Err(Error::invalid(
            "nvec",
            format!("total degree {total} exceeds the quadrature limit {QUADRATURE_MAX_DEGREE}"),
        ))
    }
}

/// Enumerative route: walk the slots in order; each slot either contributes
/// its x factor or is paired with a later slot at weight -V_ab.
pub fn mv_hermite_enumerative(nvec: &MultiIndex, x: &[f64], v: &CovarianceMatrix) -> f64 {
    let labels = nvec.slot_labels();
    fn recurse(
        labels: &[usize],
        used: &mut Vec<bool>,
        start: usize,
        x: &[f64],
        v: &DMatrix<f64>,
        acc: f64,
    ) -> f64 {
        let mut first = start;
        while first < labels.len() && used[first] {
            first += 1;
        }
        if first == labels.len() {
            return acc;
        }
        used[first] = true;
        // Choose the x variable in this bracket.
        let mut total = recurse(labels, used, first + 1, x, v, acc * x[labels[first]]);
        // Or pair its Gaussian with a later bracket's Gaussian.
        for partner in first + 1..labels.len() {
            if used[partner] {
                continue;
            }
            used[partner] = true;
            total += recurse(
                labels,
                used,
                first + 1,
                x,
                v,
                acc * -v[(labels[first], labels[partner])],
            );
            used[partner] = false;
        }
        used[first] = false;
        total
    }
    let mut used = vec![false; labels.len()];
    recurse(&labels, &mut used, 0, x, v.matrix(), 1.0)
}

/// Quadrature route: evaluate the defining expectation with Z = L w for the
/// Cholesky factor L of V and a tensor Gauss-Hermite rule in w. Exact when
/// the rule has more than |n|/2 nodes per axis.
pub fn mv_hermite_quadrature(
    nvec: &MultiIndex,
    x: &[f64],
    v: &CovarianceMatrix,
    nodes_per_axis: usize,
) -> f64 {
    let d = nvec.dim();
    let l = v.cholesky();
    let rule = QuadratureRule::new(QuadratureKind::GaussHermite, nodes_per_axis);
    let mut total = 0.0;
    let mut idx = vec![0usize; d];
    'outer: loop {
        let mut weight = 1.0;
        let mut w = vec![0.0; d];
        for a in 0..d {
            weight *= rule.weights[idx[a]];
            w[a] = rule.nodes[idx[a]];
        }
        let mut prod = Complex::new(1.0, 0.0);
        for a in 0..d {
            let z_a: f64 = (0..=a).map(|b| l[(a, b)] * w[b]).sum();
            prod *= Complex::new(x[a], z_a).powu(nvec.entries[a] as u32);
        }
        total += weight * prod.re;
        for a in 0..d {
            idx[a] += 1;
            if idx[a] < rule.len() {
                continue 'outer;
            }
            idx[a] = 0;
        }
        break;
    }
    total
}

/// Dual polynomial: the expectation of prod ((V^{-1}x)_a + i Z_a)^{n_a} over
/// Z ~ N(0, V^{-1}), i.e. the direct polynomial at (V^{-1}x, V^{-1}).
pub fn mv_dual_eval(nvec: &MultiIndex, x: &[f64], v: &CovarianceMatrix) -> Result<f64> {
    check_dims(nvec, x, v)?;
    let inv = v.inverse()?;
    let xv = inv.matrix() * DMatrix::from_column_slice(x.len(), 1, x);
    let y: Vec<f64> = xv.iter().copied().collect();
    mv_hermite_eval(nvec, &y, &inv)
}

/// One step of the coordinate recurrence,
/// H~_{n+e_j} = x_j H~_n - sum_a n_a V_{ja} H~_{n-e_a},
/// evaluated bottom-up from H~_0 = 1; an independent route from the pairing
/// sum.
pub fn mv_recurrence_step(
    nvec: &MultiIndex,
    j: usize,
    x: &[f64],
    v: &CovarianceMatrix,
) -> Result<f64> {
    check_dims(nvec, x, v)?;
    if j >= nvec.dim() {
        return Err(Error::invalid("j", format!("coordinate {j} out of range")));
    }
    let mut target = nvec.entries.clone();
    target[j] += 1;
    let mut memo: HashMap<Vec<usize>, f64> = HashMap::new();
    Ok(recurrence_value(&target, x, v, &mut memo))
}

fn recurrence_value(
    m: &[usize],
    x: &[f64],
    v: &CovarianceMatrix,
    memo: &mut HashMap<Vec<usize>, f64>,
) -> f64 {
    if m.iter().all(|&e| e == 0) {
        return 1.0;
    }
    if let Some(&cached) = memo.get(m) {
        return cached;
    }
    let j = m.iter().position(|&e| e > 0).unwrap();
    let mut lower = m.to_vec();
    lower[j] -= 1;
    let mut value = x[j] * recurrence_value(&lower, x, v, memo);
    for a in 0..m.len() {
        if lower[a] == 0 {
            continue;
        }
        let mut lower2 = lower.clone();
        lower2[a] -= 1;
        value -= lower[a] as f64 * v.entry(j, a) * recurrence_value(&lower2, x, v, memo);
    }
    memo.insert(m.to_vec(), value);
    value
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthogonalityMethod {
    /// Tensor Gauss-Hermite; `budget` is nodes per axis.
    Quadrature,
    /// Monte Carlo; `budget` is the sample count.
    MonteCarlo,
}

/// Numerical value of E[H_n(X, V) H~_m(X, V)] for X ~ N(0, V), which the
/// orthogonality relation pins to prod n_j! times the indicator n = m.
pub fn mv_orthogonality_oracle(
    nvec: &MultiIndex,
    mvec: &MultiIndex,
    v: &CovarianceMatrix,
    method: OrthogonalityMethod,
    budget: usize,
    rng: Option<&mut RngStream>,
) -> Result<f64> {
    if nvec.dim() != mvec.dim() || nvec.dim() != v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "nvec dim {}, mvec dim {}, V dim {}",
            nvec.dim(),
            mvec.dim(),
            v.dim()
        )));
    }
    let d = v.dim();
    let l = v.cholesky();
    let inv = v.inverse()?;
    let eval_product = |w: &[f64]| -> Result<f64> {
        // X = L w ~ N(0, V).
        let mut xv = vec![0.0; d];
        for a in 0..d {
            xv[a] = (0..=a).map(|b| l[(a, b)] * w[b]).sum();
        }
        // H_n(X, V) = H~_n(V^{-1} X, V^{-1}).
        let mut y = vec![0.0; d];
        for a in 0..d {
            y[a] = (0..d).map(|b| inv.entry(a, b) * xv[b]).sum();
        }
        let dual = mv_hermite_eval(nvec, &y, &inv)?;
        let direct = mv_hermite_eval(mvec, &xv, v)?;
        Ok(dual * direct)
    };
    match method {
        OrthogonalityMethod::Quadrature => {
            let rule = QuadratureRule::new(QuadratureKind::GaussHermite, budget);
            let mut total = 0.0;
            let mut idx = vec![0usize; d];
            'outer: loop {
                let mut weight = 1.0;
                let mut w = vec![0.0; d];
                for a in 0..d {
                    weight *= rule.weights[idx[a]];
                    w[a] = rule.nodes[idx[a]];
                }
                total += weight * eval_product(&w)?;
                for a in 0..d {
                    idx[a] += 1;
                    if idx[a] < rule.len() {
                        continue 'outer;
                    }
                    idx[a] = 0;
                }
                break;
            }
            Ok(total)
        }
        OrthogonalityMethod::MonteCarlo => {
            let rng = rng.expect("Monte Carlo method needs an RngStream");
            let mut total = 0.0;
            let mut w = vec![0.0; d];
            for _ in 0..budget {
                for slot in w.iter_mut() {
                    *slot = rng.standard_normal();
                }
                total += eval_product(&w)?;
            }
            Ok(total / budget as f64)
        }
    }
}
