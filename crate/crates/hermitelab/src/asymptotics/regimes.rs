//! Large-n approximation formulas: fixed x, linear x, and the three
//! square-root-scale regimes (oscillatory bulk, exponential exterior, Airy
//! edge), all returned in sign/log-magnitude form.

use crate::asymptotics::airy::airy_eval;
use crate::error::{Error, Result};
use crate::scaled::ScaledValue;

/// The edge branch is used when |x - 2 sqrt(n)| <= EDGE_WINDOW * n^{-1/6},
/// where the bulk and exterior amplitudes blow up.
pub const EDGE_WINDOW: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Bulk,
    Exterior,
    Edge,
}

/// Which parametrization the selected branch used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegimeDiagnostics {
    /// a = cos(alpha), alpha in (0, pi/2].
    Bulk { alpha: f64 },
    /// a = cosh(gamma), gamma > 0.
    Exterior { gamma: f64 },
    /// x = 2 sqrt(n) + n^{-1/6} u.
    Edge { u: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeApprox {
    pub regime: Regime,
    pub value: ScaledValue,
    pub diagnostics: RegimeDiagnostics,
}

/// Fixed-x approximation sqrt(2) (n/e)^{n/2} e^{x^2/4} cos(n pi/2 - x sqrt(n)).
pub fn approx_fixed_x(n: usize, x: f64) -> Result<ScaledValue> {
    if n < 2 {
        return Err(Error::invalid("n", "fixed-x approximation needs n >= 2"));
    }
    let nf = n as f64;
    let log_amp = 0.5 * 2f64.ln() + 0.5 * nf * (nf.ln() - 1.0) + x * x / 4.0;
    // n pi/2 reduced exactly through n mod 4.
    let quarter = (n % 4) as f64 * std::f64::consts::FRAC_PI_2;
    let cosine = if x == 0.0 {
        match n % 4 {
            0 => 1.0,
            2 => -1.0,
            _ => 0.0,
        }
    } else {
        (quarter - x * nf.sqrt()).cos()
    };
    Ok(ScaledValue::from_f64(cosine).scale_log(log_amp))
}

/// Linear-x approximation (cn)^n e^{-1/(2c^2)} for x = cn.
pub fn approx_linear_x(n: usize, c: f64) -> Result<ScaledValue> {
    if c == 0.0 {
        return Err(Error::invalid("c", "c = 0 is the fixed-x regime"));
    }
    let nf = n as f64;
    let sign = if c > 0.0 || n % 2 == 0 { 1 } else { -1 };
    let log_mag = nf * (c.abs() * nf).ln() - 1.0 / (2.0 * c * c);
    Ok(ScaledValue::new(sign, log_mag))
}

/// Oscillatory-regime phase: theta_n(a) = n (a sqrt(1-a^2) - arccos a)
/// - arccos(a)/2 + pi/4. Monotone increasing from -(n + 1/4) pi to pi/4;
/// its cosine carries the n zeros of the polynomial.
pub fn bulk_phase(n: usize, a: f64) -> f64 {
    let alpha = a.acos();
    let psi = a * (1.0 - a * a).sqrt() - alpha;
    n as f64 * psi - 0.5 * alpha + 0.25 * std::f64::consts::PI
}

/// bulk_phase folded into (-pi, pi] for the cosine. The n * psi product is
/// formed as an exact two-product and the integer multiple of 2 pi is
/// subtracted in split high/low form, so no precision is lost in the
/// reduction itself for large n.
pub fn bulk_phase_reduced(n: usize, a: f64) -> f64 {
    let alpha = a.acos();
    let psi = a * (1.0 - a * a).sqrt() - alpha;
    let nf = n as f64;
    let p_hi = nf * psi;
    let p_lo = nf.mul_add(psi, -p_hi);
    let two_pi = 2.0 * std::f64::consts::PI;
    let k = (p_hi / two_pi).round();
    const TWO_PI_HI: f64 = 6.283_185_307_179_586;
    const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;
    let reduced = (p_hi - k * TWO_PI_HI) - k * TWO_PI_LO + p_lo;
    reduced - 0.5 * alpha + 0.25 * std::f64::consts::PI
}

/// Edge formula sqrt(2 pi) e^{n/2} n^{n/2} n^{1/6} e^{u n^{1/3}} Ai(u) at
/// x = 2 sqrt(n) + n^{-1/6} u; meaningful near the edge but defined wherever
/// Ai is.
pub fn edge_approx(n: usize, x: f64) -> Result<ScaledValue> {
    let nf = n as f64;
    let u = (x - 2.0 * nf.sqrt()) * nf.powf(1.0 / 6.0);
    let ai = airy_eval(u)?.ai;
    let log_amp = 0.5 * (2.0 * std::f64::consts::PI).ln()
        + 0.5 * nf
        + 0.5 * nf * nf.ln()
        + nf.ln() / 6.0
        + u * nf.powf(1.0 / 3.0);
    Ok(ScaledValue::from_f64(ai).scale_log(log_amp))
}

/// Oscillatory formula n^{n/2} sqrt(2/sin a) e^{n(a^2 - 1/2)} cos(theta_n)
/// for 0 <= x < 2 sqrt(n).
pub fn bulk_approx(n: usize, x: f64) -> Result<ScaledValue> {
    let nf = n as f64;
    let a = x / (2.0 * nf.sqrt());
    if !(0.0..1.0).contains(&a) {
        return Err(Error::invalid("x", "bulk branch needs 0 <= x < 2 sqrt(n)"));
    }
    let alpha = a.acos();
    let theta = bulk_phase_reduced(n, a);
    let log_amp = 0.5 * nf * nf.ln() + 0.5 * (2.0 / alpha.sin()).ln() + nf * (a * a - 0.5);
    Ok(ScaledValue::from_f64(theta.cos()).scale_log(log_amp))
}

/// Monotone formula n^{n/2} e^{n (gamma + e^{-2 gamma}/2)} e^{gamma/2}
/// / sqrt(2 sinh gamma) for x > 2 sqrt(n).
pub fn exterior_approx(n: usize, x: f64) -> Result<ScaledValue> {
    let nf = n as f64;
    let a = x / (2.0 * nf.sqrt());
    if a <= 1.0 {
        return Err(Error::invalid("x", "exterior branch needs x > 2 sqrt(n)"));
    }
    let gamma = a.acosh();
    let log_mag = 0.5 * nf * nf.ln() + nf * (gamma + 0.5 * (-2.0 * gamma).exp()) + 0.5 * gamma
        - 0.5 * (2.0 * gamma.sinh()).ln();
    Ok(ScaledValue::new(1, log_mag))
}

/// Three-regime approximation for x >= 0 (negative x follows by parity).
/// The regime is a total function of (n, x): the edge branch inside the
/// |u| <= 1.5 window, bulk below, exterior above.
pub fn plancherel_rotach(n: usize, x: f64) -> Result<RegimeApprox> {
    if n < 4 {
        return Err(Error::invalid("n", "needs n >= 4"));
    }
    if x < 0.0 {
        return Err(Error::invalid(
            "x",
            "negative x is handled by the parity of the polynomial",
        ));
    }
    let nf = n as f64;
    let u = (x - 2.0 * nf.sqrt()) * nf.powf(1.0 / 6.0);
    if u.abs() <= EDGE_WINDOW {
        Ok(RegimeApprox {
            regime: Regime::Edge,
            value: edge_approx(n, x)?,
            diagnostics: RegimeDiagnostics::Edge { u },
        })
    } else if x < 2.0 * nf.sqrt() {
        let alpha = (x / (2.0 * nf.sqrt())).acos();
        Ok(RegimeApprox {
            regime: Regime::Bulk,
            value: bulk_approx(n, x)?,
            diagnostics: RegimeDiagnostics::Bulk { alpha },
        })
    } else {
        let gamma = (x / (2.0 * nf.sqrt())).acosh();
        Ok(RegimeApprox {
            regime: Regime::Exterior,
            value: exterior_approx(n, x)?,
            diagnostics: RegimeDiagnostics::Exterior { gamma },
        })
    }
}
