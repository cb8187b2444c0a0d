//! Large-|x| expansions in powers of `1/ζ`, `ζ = (2/3)|x|^{3/2}`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

const TERMS: usize = 60;

/// Coefficients `u_k`, `v_k` of the standard Airy asymptotic series.
fn coefficients() -> ([f64; TERMS], [f64; TERMS]) {
    let mut u = [0.0; TERMS];
    let mut v = [0.0; TERMS];
    u[0] = 1.0;
    v[0] = 1.0;
    for k in 1..TERMS {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    (u, v)
}

/// Sums `Σ_j sgn_j c_{start + step·j} ζ^{−(start + step·j)}` up to the
/// smallest term (optimal truncation).
fn sum_series(c: &[f64], zeta: f64, start: usize, step: usize, alternate: bool) -> f64 {
    let inv = 1.0 / zeta;
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut sign = 1.0;
    let mut k = start;
    while k < c.len() {
        let term = c[k] * inv.powi(k as i32);
        if term.abs() > prev {
            break;
        }
        sum += sign * term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        prev = term.abs();
        if alternate {
            sign = -sign;
        }
        k += step;
    }
    sum
}

/// `(Ai·e^ζ, Ai′·e^ζ, Bi·e^−ζ, Bi′·e^−ζ, ζ)` for large positive x.
pub(crate) fn airy_positive(x: f64) -> (f64, f64, f64, f64, f64) {
    let (u, v) = coefficients();
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let q = x.sqrt().sqrt();
    let sp = PI.sqrt();

    // Odd-power terms alternate for the decaying solution only.
    let su_alt = sum_series(&u, zeta, 0, 1, true);
    let sv_alt = sum_series(&v, zeta, 0, 1, true);
    let su = sum_series(&u, zeta, 0, 1, false);
    let sv = sum_series(&v, zeta, 0, 1, false);

    let ai = su_alt / (2.0 * sp * q);
    let aip = -q * sv_alt / (2.0 * sp);
    let bi = su / (sp * q);
    let bip = q * sv / sp;
    (ai, aip, bi, bip, zeta)
}

/// `(Ai, Ai′, Bi, Bi′)` at `x = −z` for large `z`.
pub(crate) fn airy_negative(z: f64) -> (f64, f64, f64, f64) {
    let (u, v) = coefficients();
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let q = z.sqrt().sqrt();
    let sp = PI.sqrt();

    let p = sum_series(&u, zeta, 0, 2, true);
    let qs = sum_series(&u, zeta, 1, 2, true);
    let r = sum_series(&v, zeta, 0, 2, true);
    let s = sum_series(&v, zeta, 1, 2, true);

    // θ = ζ − π/4 without forming ζ − π/4 explicitly.
    let (sz, cz) = zeta.sin_cos();
    let ct = (cz + sz) * FRAC_1_SQRT_2;
    let st = (sz - cz) * FRAC_1_SQRT_2;

    let ai = (ct * p + st * qs) / (sp * q);
    let aip = q * (st * r - ct * s) / sp;
    let bi = (-st * p + ct * qs) / (sp * q);
    let bip = q * (ct * r + st * s) / sp;
    (ai, aip, bi, bip)
}
