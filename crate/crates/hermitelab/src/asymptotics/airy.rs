//! Airy function of the first kind and its derivative.
//!
//! Production path: Maclaurin series for |u| <= 6, asymptotic expansions in
//! zeta = (2/3)|u|^{3/2} beyond. The defining wedge contour integral is also
//! implemented as a slow validation routine.

use crate::error::{Error, Result};

/// Ai(0) = 3^{-2/3} / Gamma(2/3).
pub const AIRY_AT_ZERO: f64 = 0.355_028_053_887_817_24;
/// Ai'(0) = -3^{-1/3} / Gamma(1/3).
pub const AIRY_PRIME_AT_ZERO: f64 = -0.258_819_403_792_806_8;

// The series and asymptotic routes are blended smoothly over
// |u| in [5.5, 6.5]; a hard switch would leave a ~1e-10 jump that
// second-difference checks of the ODE amplify.
const BLEND_LO: f64 = 5.5;
const BLEND_HI: f64 = 6.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValue {
    pub ai: f64,
    pub ai_prime: f64,
}

/// Ai(u) and Ai'(u) for |u| <= 20.
pub fn airy_eval(u: f64) -> Result<AiryValue> {
    if u.abs() > 20.0 {
        return Err(Error::invalid("u", format!("|u| <= 20 required, got {u}")));
    }
    let au = u.abs();
    if au <= BLEND_LO {
        return Ok(airy_series(u));
    }
    let asym = if u > 0.0 {
        airy_asymptotic_positive(u)
    } else {
        airy_asymptotic_negative(-u)
    };
    if au >= BLEND_HI {
        return Ok(asym);
    }
    // C^2 quintic crossover.
    let s = (au - BLEND_LO) / (BLEND_HI - BLEND_LO);
    let w = s * s * s * (s * (6.0 * s - 15.0) + 10.0);
    let series = airy_series(u);
    Ok(AiryValue {
        ai: (1.0 - w) * series.ai + w * asym.ai,
        ai_prime: (1.0 - w) * series.ai_prime + w * asym.ai_prime,
    })
}

/// Maclaurin series: Ai = c1 f - c2 g where f, g solve the Airy ODE with
/// f(0)=1, f'(0)=0 and g(0)=0, g'(0)=1.
fn airy_series(u: f64) -> AiryValue {
    let u3 = u * u * u;
    // f and f' accumulate term-by-term; t_k = t_{k-1} u^3 / ((3k)(3k-1)).
    let mut f = 1.0;
    let mut fp = 0.0;
    let mut t = 1.0_f64;
    for k in 1..200 {
        let kf = k as f64;
        t *= u3 / ((3.0 * kf) * (3.0 * kf - 1.0));
        f += t;
        if u != 0.0 {
            fp += 3.0 * kf * t / u;
        }
        if t.abs() < 1e-18 * f.abs().max(1.0) {
            break;
        }
    }
    // g terms: s_k = s_{k-1} u^3 / ((3k+1)(3k)).
    let mut g = u;
    let mut gp = 1.0;
    let mut s = u;
    for k in 1..200 {
        let kf = k as f64;
        s *= u3 / ((3.0 * kf + 1.0) * (3.0 * kf));
        g += s;
        if u != 0.0 {
            gp += (3.0 * kf + 1.0) * s / u;
        }
        if s.abs() < 1e-18 * g.abs().max(1.0) {
            break;
        }
    }
    AiryValue {
        ai: AIRY_AT_ZERO * f + AIRY_PRIME_AT_ZERO * g,
        ai_prime: AIRY_AT_ZERO * fp + AIRY_PRIME_AT_ZERO * gp,
    }
}

/// Coefficients u_k of the asymptotic expansions and the v_k companions.
/// Stops when terms start growing (optimal truncation).
fn asymptotic_sums(zeta: f64, even_odd_split: bool) -> ([f64; 2], [f64; 2]) {
    // Returns sums over (-1)^k u_k / zeta^k and (-1)^k v_k / zeta^k when
    // even_odd_split is false (packed into index 0), or the even/odd parts
    // separately when true.
    let mut uk = 1.0_f64;
    let mut term = 1.0_f64;
    let mut sum_u = [0.0_f64; 2];
    let mut sum_v = [0.0_f64; 2];
    let mut prev_mag = f64::INFINITY;
    for k in 0..60 {
        let kf = k as f64;
        if k > 0 {
            let ratio = (3.0 * kf - 0.5) * (3.0 * kf - 1.5) * (3.0 * kf - 2.5)
                / (54.0 * kf * (kf - 0.5));
            uk *= ratio;
            term = uk / zeta.powi(k as i32);
        }
        if term.abs() > prev_mag {
            break;
        }
        prev_mag = term.abs();
        let vk_term = term * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
        let signed = if k % 2 == 0 { 1.0 } else { -1.0 };
        let slot = if even_odd_split { k % 2 } else { 0 };
        // For the split case the (-1)^k runs over the k index of u_{2k} and
        // u_{2k+1} respectively, i.e. over floor(k/2).
        let split_sign = if even_odd_split {
            if (k / 2) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        } else {
            signed
        };
        sum_u[slot] += split_sign * term;
        sum_v[slot] += split_sign * vk_term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    (sum_u, sum_v)
}

fn airy_asymptotic_positive(u: f64) -> AiryValue {
    let zeta = 2.0 / 3.0 * u.powf(1.5);
    let (sum_u, sum_v) = asymptotic_sums(zeta, false);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let pref = (-zeta).exp() / (2.0 * sqrt_pi);
    AiryValue {
        ai: pref / u.powf(0.25) * sum_u[0],
        ai_prime: -pref * u.powf(0.25) * sum_v[0],
    }
}

/// Oscillatory expansion for Ai(-z), z > 0.
fn airy_asymptotic_negative(z: f64) -> AiryValue {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let (sum_u, sum_v) = asymptotic_sums(zeta, true);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let phase = zeta - std::f64::consts::FRAC_PI_4;
    let (sin_p, cos_p) = phase.sin_cos();
    AiryValue {
        ai: (cos_p * sum_u[0] + sin_p * sum_u[1]) / (sqrt_pi * z.powf(0.25)),
        ai_prime: z.powf(0.25) / sqrt_pi * (sin_p * sum_v[0] - cos_p * sum_v[1]),
    }
}

/// Validation route: the defining contour integral over the wedge formed by
/// the rays at angles -pi/6 and -5pi/6,
/// Ai(u) = (1/2 pi) Int exp(-i z^3 / 3 - i u z) dz,
/// discretized with `panels` midpoint panels per ray up to `radius`.
pub fn airy_contour_eval(u: f64, radius: f64, panels: usize) -> f64 {
    // On the ray z = r e^{-i pi/6}: z^3 = -i r^3, so the integrand decays
    // like exp(-r^3/3); both rays are conjugate so the total is twice the
    // real part of the right-hand ray contribution.
    let dr = radius / panels as f64;
    let dir = nalgebra::Complex::new((-std::f64::consts::FRAC_PI_6).cos(), (-std::f64::consts::FRAC_PI_6).sin());
    let mut total = nalgebra::Complex::new(0.0, 0.0);
    for k in 0..panels {
        let r = (k as f64 + 0.5) * dr;
        let z = dir * r;
        let z3 = z * z * z;
        let exponent = nalgebra::Complex::new(0.0, -1.0) * (z3 / 3.0 + z * u);
        total += exponent.exp() * dir * dr;
    }
    2.0 * total.re / (2.0 * std::f64::consts::PI)
}


#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn value_at_zero_is_closed_form() {
        let v = airy_eval(0.0).unwrap();
        assert_relative_eq!(v.ai, AIRY_AT_ZERO, epsilon = 1e-15);
        assert_relative_eq!(v.ai_prime, AIRY_PRIME_AT_ZERO, epsilon = 1e-15);
    }

    #[test]
    fn monotone_decay_on_positive_axis() {
        let a4 = airy_eval(4.0).unwrap().ai;
        let a5 = airy_eval(5.0).unwrap().ai;
        assert!(a5 > 0.0 && a5 < a4, "Ai(5)={a5}, Ai(4)={a4}");
    }

    #[test]
    fn matches_ode_oracle_across_domain() {
        for &u in &[-10.0, -6.5, -3.0, -1.0, 0.5, 2.0, 4.0, 5.0] {
            let v = airy_eval(u).unwrap();
            let (ai, aip) = oracle::airy_by_ode(u);
            assert_relative_eq!(v.ai, ai, max_relative = 1e-8, epsilon = 1e-10);
            assert_relative_eq!(v.ai_prime, aip, max_relative = 1e-8, epsilon = 1e-10);
        }
        // Oscillatory sign at u = -3 agrees with the oracle.
        let v = airy_eval(-3.0).unwrap();
        let (ai, _) = oracle::airy_by_ode(-3.0);
        assert_eq!(v.ai.signum(), ai.signum());
    }

    #[test]
    fn series_asymptotic_handoff_is_smooth() {
        // Inside the blend window either pure route stays close to the blend.
        for &u in &[5.8, 6.2, -5.8, -6.2] {
            let series = airy_series(u);
            let blended = airy_eval(u).unwrap();
            assert_relative_eq!(series.ai, blended.ai, max_relative = 1e-8, epsilon = 1e-12);
        }
    }

    #[test]
    fn ode_residual_on_grid() {
        // |Ai'' - u Ai| <= 1e-8 with a fourth-order five-point stencil.
        let h = 5e-3;
        let mut u = -10.0;
        while u <= 5.0 {
            let y = |x: f64| airy_eval(x).unwrap().ai;
            let second = (-y(u - 2.0 * h) + 16.0 * y(u - h) - 30.0 * y(u) + 16.0 * y(u + h)
                - y(u + 2.0 * h))
                / (12.0 * h * h);
            let residual = (second - u * y(u)).abs();
            assert!(residual <= 1e-8, "residual {residual} at u={u}");
            u += 0.5;
        }
    }

    #[test]
    fn derivative_consistent_with_value() {
        let h = 1e-5;
        for &u in &[-8.0, -2.5, 0.3, 3.0, 7.0] {
            let fd =
                (airy_eval(u + h).unwrap().ai - airy_eval(u - h).unwrap().ai) / (2.0 * h);
            let v = airy_eval(u).unwrap().ai_prime;
            assert_relative_eq!(fd, v, max_relative = 1e-8, epsilon = 1e-9);
        }
    }

    #[test]
    fn contour_route_validates_series() {
        for &u in &[-2.0, 0.0, 1.0, 3.0] {
            let contour = airy_contour_eval(u, 12.0, 10_000);
            let series = airy_eval(u).unwrap().ai;
            assert_relative_eq!(contour, series, max_relative = 1e-4, epsilon = 1e-6);
        }
    }

    #[test]
    fn domain_limit() {
        assert!(airy_eval(25.0).is_err());
        assert!(airy_eval(-25.0).is_err());
    }
}
