//! Airy functions of real argument and the negative zeros of Ai and Ai′.
//!
//! Inside |x| ≤ 9 the Maclaurin series is summed in double-double
//! arithmetic; outside, the classical asymptotic expansions are truncated at
//! their smallest term. Both regions hold ~1e−15 relative accuracy (absolute
//! on the oscillatory side). Bi is provided because the resolvent kernel off
//! the origin needs the solution that grows to the right.

mod asymptotic;
mod series;
mod zeros;

pub use zeros::{ai_zero, ai_zeros, aip_zero, aip_zeros, AiryZeroTable};

/// Beyond this |x| the asymptotic expansions are used.
const SERIES_LIMIT: f64 = 9.0;

/// Ai and Ai′ at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValue {
    pub x: f64,
    pub ai: f64,
    pub aip: f64,
    /// Set when the true value is too small to be represented as a normal
    /// f64 (the returned number is then subnormal or zero).
    pub underflow: bool,
}

/// All four Airy functions with the exponential behaviour factored out for
/// `x > 0`: `ai, aip` carry `e^{+ζ}`, `bi, bip` carry `e^{−ζ}`, with
/// `ζ = (2/3)x^{3/2}`. For `x ≤ 0`, `zeta = 0` and the values are plain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryScaled {
    pub x: f64,
    pub zeta: f64,
    pub ai: f64,
    pub aip: f64,
    pub bi: f64,
    pub bip: f64,
}

/// Ai, Ai′ (scaled for x > 0), Bi, Bi′ (scaled for x > 0), ζ.
pub fn airy_scaled(x: f64) -> AiryScaled {
    if x.is_nan() {
        return AiryScaled {
            x,
            zeta: f64::NAN,
            ai: f64::NAN,
            aip: f64::NAN,
            bi: f64::NAN,
            bip: f64::NAN,
        };
    }
    if x > SERIES_LIMIT {
        let (ai, aip, bi, bip, zeta) = asymptotic::airy_positive(x);
        return AiryScaled {
            x,
            zeta,
            ai,
            aip,
            bi,
            bip,
        };
    }
    if x < -SERIES_LIMIT {
        let (ai, aip, bi, bip) = asymptotic::airy_negative(-x);
        return AiryScaled {
            x,
            zeta: 0.0,
            ai,
            aip,
            bi,
            bip,
        };
    }
    let (ai, aip, bi, bip) = series::airy_series(x);
    if x > 0.0 {
        let zeta = 2.0 / 3.0 * x * x.sqrt();
        let up = zeta.exp();
        let down = 1.0 / up;
        AiryScaled {
            x,
            zeta,
            ai: ai * up,
            aip: aip * up,
            bi: bi * down,
            bip: bip * down,
        }
    } else {
        AiryScaled {
            x,
            zeta: 0.0,
            ai,
            aip,
            bi,
            bip,
        }
    }
}

/// Ai(x) and Ai′(x).
pub fn airy(x: f64) -> AiryValue {
    let s = airy_scaled(x);
    let down = (-s.zeta).exp();
    let ai = s.ai * down;
    let aip = s.aip * down;
    let underflow = x > 0.0 && !(ai.is_normal() && aip.is_normal());
    AiryValue {
        x,
        ai,
        aip,
        underflow,
    }
}

pub fn ai(x: f64) -> f64 {
    airy(x).ai
}

pub fn ai_prime(x: f64) -> f64 {
    airy(x).aip
}

pub fn bi(x: f64) -> f64 {
    let s = airy_scaled(x);
    s.bi * s.zeta.exp()
}

pub fn bi_prime(x: f64) -> f64 {
    let s = airy_scaled(x);
    s.bip * s.zeta.exp()
}

/// Ai′(x)/Ai(x), finite for all x > a₁ even where Ai itself underflows.
pub fn ai_log_derivative(x: f64) -> f64 {
    let s = airy_scaled(x);
    s.aip / s.ai
}
