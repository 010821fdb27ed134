//! Airy function of the first kind for complex argument.
//!
//! Three regimes, all producing the exponentially scaled pair
//! `(Ai(z)·e^ζ, Ai'(z)·e^ζ)` with `ζ = (2/3) z^{3/2}` on the principal branch:
//!
//! * Maclaurin series where cancellation between the two series is mild
//!   (estimated digit loss `e^{|ζ| + Re ζ}` below [`SERIES_LOSS_LIMIT`]);
//! * Poincaré asymptotic expansions for `|z| ≥ ASYMPTOTIC_RADIUS`, with the
//!   oscillatory form on the sector `2π/3 < |arg z| ≤ π`;
//! * in between, the ODE `w'' = z·w` is marched radially inward by Taylor
//!   steps, starting from asymptotic data on the circle `|z| = ASYMPTOTIC_RADIUS`.
//!
//! The lower half-plane is obtained by conjugation so that
//! `Ai(conj z) = conj Ai(z)` holds exactly.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Ai(0) = 3^{-2/3} / Γ(2/3).
pub const AI_AT_ZERO: f64 = 0.355_028_053_887_817_239_26;
/// Ai'(0) = -3^{-1/3} / Γ(1/3).
pub const AI_PRIME_AT_ZERO: f64 = -0.258_819_403_792_806_798_41;

/// Radius beyond which the asymptotic expansions are used directly.
pub const ASYMPTOTIC_RADIUS: f64 = 9.0;

/// Largest admissible `|ζ| + Re ζ` for the Maclaurin series.
pub const SERIES_LOSS_LIMIT: f64 = 8.0;

const TAYLOR_STEP: f64 = 0.5;
const EPS: f64 = 1e-17;

/// `ζ = (2/3) z^{3/2}`, principal branch.
pub fn airy_zeta(z: Complex64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return z;
    }
    (z.ln() * 1.5).exp() * (2.0 / 3.0)
}

/// Ai(z).
///
/// Returns [`Error::AiryOverflow`] when `|Ai(z)|` is not representable.
pub fn airy_ai(z: Complex64) -> Result<Complex64> {
    let (ai, _) = airy_ai_pair(z)?;
    Ok(ai)
}

/// Ai'(z).
pub fn airy_ai_prime(z: Complex64) -> Result<Complex64> {
    let (_, dai) = airy_ai_pair(z)?;
    Ok(dai)
}

/// `(Ai(z), Ai'(z))`.
pub fn airy_ai_pair(z: Complex64) -> Result<(Complex64, Complex64)> {
    check_finite(z)?;
    let (ai, dai) = airy_ai_pair_scaled(z);
    let scale = (-airy_zeta(z)).exp();
    let (ai, dai) = (ai * scale, dai * scale);
    if ai.re.is_finite() && ai.im.is_finite() && dai.re.is_finite() && dai.im.is_finite() {
        Ok((ai, dai))
    } else {
        Err(Error::AiryOverflow { z })
    }
}

/// `Ai(z)·exp(ζ)` with `ζ = (2/3) z^{3/2}`.
///
/// Finite for every finite `z`; the growth or decay of Ai is carried by the
/// factor `exp(-ζ)` which the caller combines with its own exponents.
pub fn airy_ai_scaled(z: Complex64) -> Complex64 {
    airy_ai_pair_scaled(z).0
}

/// `(Ai(z)·e^ζ, Ai'(z)·e^ζ)`.
pub fn airy_ai_pair_scaled(z: Complex64) -> (Complex64, Complex64) {
    if z.im.is_sign_negative() {
        let (a, d) = upper_half_scaled(z.conj());
        return (a.conj(), d.conj());
    }
    upper_half_scaled(z)
}

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::AiryOverflow { z })
    }
}

fn upper_half_scaled(z: Complex64) -> (Complex64, Complex64) {
    let r = z.norm();
    if r >= ASYMPTOTIC_RADIUS {
        return asymptotic_scaled(z);
    }
    let zeta = airy_zeta(z);
    if zeta.norm() + zeta.re <= SERIES_LOSS_LIMIT {
        let (a, d) = maclaurin(z);
        let s = zeta.exp();
        return (a * s, d * s);
    }
    let (a, d) = taylor_inward(z);
    let s = zeta.exp();
    (a * s, d * s)
}

/// Maclaurin series `Ai(z) = c1·f(z) − c2·g(z)` and its derivative.
///
/// Accurate only where [`SERIES_LOSS_LIMIT`] holds; exposed so the regimes
/// can be compared against each other.
pub fn maclaurin(z: Complex64) -> (Complex64, Complex64) {
    let c1 = AI_AT_ZERO;
    let c2 = -AI_PRIME_AT_ZERO;
    let z2 = z * z;
    let z3 = z2 * z;

    // f = Σ f_k, f_0 = 1,  f_k = f_{k-1} z^3 / ((3k-1)(3k))
    // g = Σ g_k, g_0 = z,  g_k = g_{k-1} z^3 / ((3k)(3k+1))
    // f' = Σ_{k≥1} f_{k-1} z^2 / (3k-1),  g' = 1 + Σ_{k≥1} g_{k-1} z^2 / (3k)
    let mut fk = Complex64::new(1.0, 0.0);
    let mut gk = z;
    let (mut f, mut g) = (fk, gk);
    let mut df = Complex64::new(0.0, 0.0);
    let mut dg = Complex64::new(1.0, 0.0);
    for k in 1..200 {
        let kf = k as f64;
        let dfk = fk * z2 / (3.0 * kf - 1.0);
        let dgk = gk * z2 / (3.0 * kf);
        fk = fk * z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        gk = gk * z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        f += fk;
        g += gk;
        df += dfk;
        dg += dgk;
        let scale = f.norm() + g.norm() + df.norm() + dg.norm();
        if fk.norm() + gk.norm() + dfk.norm() + dgk.norm() <= EPS * scale {
            break;
        }
    }
    (f * c1 - g * c2, df * c1 - dg * c2)
}

/// Coefficients `u_k` of the asymptotic expansion.
fn u_coefficients(n: usize) -> Vec<f64> {
    let mut u = Vec::with_capacity(n);
    u.push(1.0);
    for k in 1..n {
        let kf = k as f64;
        let prev = u[k - 1];
        u.push(
            prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf),
        );
    }
    u
}

const MAX_ASYMPTOTIC_TERMS: usize = 60;

/// Asymptotic expansions with sectorial connection, scaled by `e^ζ`.
///
/// Valid for large `|z|`; exposed so the regimes can be compared.
pub fn asymptotic_scaled(z: Complex64) -> (Complex64, Complex64) {
    if z.im.is_sign_negative() {
        let (a, d) = asymptotic_upper(z.conj());
        return (a.conj(), d.conj());
    }
    asymptotic_upper(z)
}

fn asymptotic_upper(z: Complex64) -> (Complex64, Complex64) {
    let u = u_coefficients(MAX_ASYMPTOTIC_TERMS);
    let v: Vec<f64> = u
        .iter()
        .enumerate()
        .map(|(k, &uk)| {
            if k == 0 {
                1.0
            } else {
                let kf = k as f64;
                -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * uk
            }
        })
        .collect();
    let sqrt_pi = PI.sqrt();
    if z.arg() <= 2.0 * PI / 3.0 {
        let zeta = airy_zeta(z);
        let inv = zeta.inv();
        let su = alternating_sum(&u, inv);
        let sv = alternating_sum(&v, inv);
        let q = z.sqrt().sqrt();
        let ai = su / (q * 2.0 * sqrt_pi);
        let dai = -(q * sv) / (2.0 * sqrt_pi);
        (ai, dai)
    } else {
        // Ai(-w) with w = -z, |arg w| < π/3, ξ = (2/3) w^{3/2} and ζ(z) = -iξ.
        let w = -z;
        let xi = airy_zeta(w);
        let zeta = Complex64::new(0.0, -1.0) * xi;
        let inv = xi.inv();
        let inv2 = inv * inv;
        let (mut pu, mut qu, mut pv, mut qv) = (
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        );
        let mut pow = Complex64::new(1.0, 0.0);
        let mut last = f64::INFINITY;
        for k in 0..MAX_ASYMPTOTIC_TERMS / 2 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let t_even_u = pow * (sign * u[2 * k]);
            let t_odd_u = pow * inv * (sign * u[2 * k + 1]);
            let t_even_v = pow * (sign * v[2 * k]);
            let t_odd_v = pow * inv * (sign * v[2 * k + 1]);
            let size = t_even_u.norm() + t_odd_u.norm() + t_even_v.norm() + t_odd_v.norm();
            if size > last {
                break;
            }
            last = size;
            pu += t_even_u;
            qu += t_odd_u;
            pv += t_even_v;
            qv += t_odd_v;
            if size <= EPS * (pu.norm() + pv.norm()) {
                break;
            }
            pow *= inv2;
        }
        let e_minus = Complex64::from_polar(1.0, -FRAC_PI_4);
        let e_plus = Complex64::from_polar(1.0, FRAC_PI_4) * (zeta * 2.0).exp();
        // cos(ξ - π/4)·e^ζ and sin(ξ - π/4)·e^ζ
        let cos_s = (e_minus + e_plus) * 0.5;
        let sin_s = (e_minus - e_plus) / Complex64::new(0.0, 2.0);
        let q = w.sqrt().sqrt();
        let ai = (cos_s * pu + sin_s * qu) / (q * sqrt_pi);
        let dai = q * (sin_s * pv - cos_s * qv) / sqrt_pi;
        (ai, dai)
    }
}

fn alternating_sum(coef: &[f64], inv_zeta: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for (k, &c) in coef.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = pow * (sign * c);
        let size = term.norm();
        if size > last {
            break;
        }
        last = size;
        sum += term;
        if size <= EPS * sum.norm() {
            break;
        }
        pow *= inv_zeta;
    }
    sum
}

/// Unscaled `(Ai, Ai')` at `z` by marching `w'' = t·w` from the asymptotic
/// circle radially inward to `z`.
fn taylor_inward(z: Complex64) -> (Complex64, Complex64) {
    let r = z.norm();
    let dir = z / r;
    let start = dir * ASYMPTOTIC_RADIUS;
    let (a, d) = asymptotic_upper(start);
    let s = (-airy_zeta(start)).exp();
    let (mut w, mut dw) = (a * s, d * s);
    let distance = ASYMPTOTIC_RADIUS - r;
    let steps = (distance / TAYLOR_STEP).ceil().max(1.0) as usize;
    let h = -dir * (distance / steps as f64);
    let mut center = start;
    for _ in 0..steps {
        (w, dw) = taylor_step(center, w, dw, h);
        center += h;
    }
    (w, dw)
}

/// One Taylor step of `w'' = t·w` from `c` to `c + h`.
fn taylor_step(
    c: Complex64,
    w: Complex64,
    dw: Complex64,
    h: Complex64,
) -> (Complex64, Complex64) {
    // a_{n+2} = (c·a_n + a_{n-1}) / ((n+1)(n+2)), with a_{-1} = 0
    let mut a_prev = Complex64::new(0.0, 0.0); // a_{n-1}
    let mut a_n = w; // a_n
    let mut a_next = dw; // a_{n+1}
    let mut hp = Complex64::new(1.0, 0.0); // h^n
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..120usize {
        let nf = n as f64;
        let term = a_n * hp;
        value += term;
        // n·a_n·h^{n-1}
        let dterm = if n == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            a_n * nf * hp / h
        };
        deriv += dterm;
        let a_new = (c * a_n + a_prev) / ((nf + 1.0) * (nf + 2.0));
        a_prev = a_n;
        a_n = a_next;
        a_next = a_new;
        hp *= h;
        if term.norm() <= EPS * value.norm() && dterm.norm() <= EPS * deriv.norm() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (value, deriv)
}
