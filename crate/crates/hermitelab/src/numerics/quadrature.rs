//! Quadrature rules used throughout the library.
//!
//! Gauss-Hermite is in the probabilist convention: an m-node rule satisfies
//! sum_i w_i f(x_i) = E[f(Z)] for Z ~ N(0,1) exactly when f is a polynomial
//! of degree <= 2m - 1. Gauss-Legendre is the classical rule on [-1, 1].

use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    GaussHermite,
    GaussLegendre,
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(kind: QuadratureKind, m: usize) -> Self {
        assert!(m >= 1, "quadrature rule needs at least one node");
        match kind {
            QuadratureKind::GaussHermite => gauss_hermite(m),
            QuadratureKind::GaussLegendre => gauss_legendre(m),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// sum_i w_i f(x_i) over the rule's native domain.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrate f over [a, b]; only meaningful for Gauss-Legendre rules.
    pub fn integrate_on(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        debug_assert_eq!(self.kind, QuadratureKind::GaussLegendre);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self.integrate(|x| f(mid + half * x))
    }

    /// Nodes/weights mapped from [-1,1] to [a, b] (Gauss-Legendre only).
    pub fn mapped_to(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        debug_assert_eq!(self.kind, QuadratureKind::GaussLegendre);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let nodes = self.nodes.iter().map(|&x| mid + half * x).collect();
        let weights = self.weights.iter().map(|&w| w * half).collect();
        (nodes, weights)
    }
}

/// Orthonormal Hermite values p_0..p_m at x (p_k = monic Hermite / sqrt(k!)).
/// Bounded at quadrature nodes, so no overflow concerns.
fn orthonormal_hermite_column(m: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(m + 1);
    p.push(1.0);
    if m >= 1 {
        p.push(x);
    }
    for k in 1..m {
        let kf = k as f64;
        let next = (x * p[k] - kf.sqrt() * p[k - 1]) / (kf + 1.0).sqrt();
        p.push(next);
    }
    p
}

/// Probabilist Gauss-Hermite rule: Golub-Welsch eigenvalues of the Jacobi
/// matrix (zero diagonal, off-diagonals sqrt(k)) as starting nodes, then
/// Newton-polished to machine precision; weights via the Christoffel sum
/// w_i = 1 / sum_{k<m} p_k(x_i)^2.
fn gauss_hermite(m: usize) -> QuadratureRule {
    if m == 1 {
        return QuadratureRule {
            kind: QuadratureKind::GaussHermite,
            nodes: vec![0.0],
            weights: vec![1.0],
        };
    }
    let mut jacobi = DMatrix::<f64>::zeros(m, m);
    for k in 1..m {
        let b = (k as f64).sqrt();
        jacobi[(k, k - 1)] = b;
        jacobi[(k - 1, k)] = b;
    }
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    for x in nodes.iter_mut() {
        // Newton on p_m: p_m'(x) = sqrt(m) p_{m-1}(x) + stays well scaled.
        for _ in 0..8 {
            let p = orthonormal_hermite_column(m, *x);
            let deriv = (m as f64).sqrt() * p[m - 1];
            let dx = p[m] / deriv;
            *x -= dx;
            if dx.abs() <= 1e-16 * (1.0 + x.abs()) {
                break;
            }
        }
    }
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let p = orthonormal_hermite_column(m - 1, x);
            1.0 / p.iter().map(|v| v * v).sum::<f64>()
        })
        .collect();
    // Symmetrize the +/- node pairs.
    for i in 0..m / 2 {
        let mag = 0.5 * (nodes[m - 1 - i] - nodes[i]);
        nodes[i] = -mag;
        nodes[m - 1 - i] = mag;
        let w = 0.5 * (weights[i] + weights[m - 1 - i]);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    QuadratureRule {
        kind: QuadratureKind::GaussHermite,
        nodes,
        weights,
    }
}

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_m.
fn gauss_legendre(m: usize) -> QuadratureRule {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let n = m as f64;
    for i in 0..(m + 1) / 2 {
        // Tricomi initial guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_m and P_m' by recurrence.
            let (mut p0, mut p1) = (1.0_f64, x);
            for k in 1..m {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    QuadratureRule {
        kind: QuadratureKind::GaussLegendre,
        nodes,
        weights,
    }
}

/// Quadrature estimate of E[f(N(mean, var))] using a Gauss-Hermite rule.
pub fn gaussian_expectation(
    mut f: impl FnMut(f64) -> f64,
    mean: f64,
    var: f64,
    rule: &QuadratureRule,
) -> f64 {
    debug_assert_eq!(rule.kind, QuadratureKind::GaussHermite);
    assert!(var > 0.0, "variance must be positive");
    let sd = var.sqrt();
    rule.integrate(|z| f(mean + sd * z))
}

/// Adaptive Simpson integration with absolute tolerance.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm)
    }
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (left, flm) = simpson(f, a, fa, m, fm);
        let (right, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, frm, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, fm) = simpson(&f, a, fa, b, fb);
    recurse(&f, a, fa, b, fb, whole, fm, tol, 50)
}
