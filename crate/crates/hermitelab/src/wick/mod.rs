//! Combinatorial engine: pairings and Wick sums, multivariable Hermite
//! polynomials and duals, the multivariable recurrence, orthogonality
//! oracles, the Gaussian integration-by-parts identity, and the GUE
//! characteristic-polynomial identity.

pub(crate) mod gue;
mod pairings;
mod polynomial;

pub mod multivariate;

pub use gue::gue_charpoly_mc;
pub use multivariate::{
    mv_dual_eval, mv_hermite_enumerative, mv_hermite_eval, mv_hermite_quadrature,
    mv_orthogonality_oracle, mv_recurrence_step, CovarianceMatrix, MultiIndex,
    OrthogonalityMethod, ENUMERATIVE_MAX_DEGREE, QUADRATURE_MAX_DEGREE,
};
pub use pairings::{enumerate_pairings, wick_moment, Pairing};
pub use polynomial::MultiPoly;

use crate::error::{Error, Result};
use crate::numerics::quadrature::{QuadratureKind, QuadratureRule};

/// Both sides of the Gaussian integration-by-parts identity
/// E[d_n f(X)] = E[H_n(X, V) f(X)] for X ~ N(0, V), computed by tensor
/// Gauss-Hermite quadrature (exact for polynomial f).
pub fn gaussian_ibp_check(
    nvec: &MultiIndex,
    f: &MultiPoly,
    v: &CovarianceMatrix,
) -> Result<(f64, f64)> {
    let d = v.dim();
    if nvec.dim() != d || f.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "nvec dim {}, f dim {}, V dim {}",
            nvec.dim(),
            f.dim(),
            d
        )));
    }
    let derivative = f.partial_multi(&nvec.entries);
    let inv = v.inverse()?;
    let l = v.cholesky();
    // Integrand degree is deg f + |n| on the right-hand side.
    let nodes = (f.degree() as usize + nvec.total()) / 2 + 2;
    let rule = QuadratureRule::new(QuadratureKind::GaussHermite, nodes);
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    let mut idx = vec![0usize; d];
    'outer: loop {
        let mut weight = 1.0;
        let mut w = vec![0.0; d];
        for a in 0..d {
            weight *= rule.weights[idx[a]];
            w[a] = rule.nodes[idx[a]];
        }
        let mut x = vec![0.0; d];
        for a in 0..d {
            x[a] = (0..=a).map(|b| l[(a, b)] * w[b]).sum();
        }
        let mut y = vec![0.0; d];
        for a in 0..d {
            y[a] = (0..d).map(|b| inv.entry(a, b) * x[b]).sum();
        }
        lhs += weight * derivative.eval(&x);
        rhs += weight * mv_hermite_eval(nvec, &y, &inv)? * f.eval(&x);
        for a in 0..d {
            idx[a] += 1;
            if idx[a] < rule.len() {
                continue 'outer;
            }
            idx[a] = 0;
        }
        break;
    }
    Ok((lhs, rhs))
}
