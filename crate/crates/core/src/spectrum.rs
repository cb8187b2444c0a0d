//! The unperturbed conic oscillator `H0 = ½(−d²/dx² + |x|)`.
//!
//! Levels alternate in parity: `E_{2m−1} = −a′ₘ/2` (symmetric, Ai′ zeros) and
//! `E_{2m} = −aₘ/2` (antisymmetric, Ai zeros). Eigenfunctions are
//! `Ai(|x| + zero)` glued at the origin and normalized in closed form through
//! `∫_a^∞ Ai² = Ai′(a)² − a·Ai(a)²`.

use crate::airy::{ai_zero, ai_zeros, aip_zero, aip_zeros, airy, airy_scaled};
use crate::eigen::Parity;
use crate::error::{invalid, Result, SpectrumError};
use crate::numerics::tail::{kernel_series_tail, power_tail};

pub use crate::numerics::tail::LevelSubset;

/// Distance in E below which an energy counts as sitting on a level.
pub const POLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnperturbedLevel {
    pub index: usize,
    pub energy: f64,
    pub parity: Parity,
    /// The Airy zero `a′ₘ` (symmetric) or `aₘ` (antisymmetric) behind the level.
    pub airy_zero: f64,
}

pub fn unperturbed_level(n: usize) -> Result<UnperturbedLevel> {
    if n == 0 {
        return invalid("level indices start at 1");
    }
    let m = n.div_ceil(2);
    let (parity, airy_zero) = if n % 2 == 1 {
        (Parity::Symmetric, aip_zero(m)?)
    } else {
        (Parity::Antisymmetric, ai_zero(m)?)
    };
    Ok(UnperturbedLevel {
        index: n,
        energy: -0.5 * airy_zero,
        parity,
        airy_zero,
    })
}

pub fn unperturbed_energy(n: usize) -> Result<f64> {
    Ok(unperturbed_level(n)?.energy)
}

/// `E_1 … E_count` in increasing order.
pub fn unperturbed_energies(count: usize) -> Vec<f64> {
    let m = count.div_ceil(2);
    let sym = aip_zeros(m);
    let anti = ai_zeros(m);
    (0..count)
        .map(|i| {
            let j = i / 2;
            -0.5 * if i % 2 == 0 { sym[j] } else { anti[j] }
        })
        .collect()
}

/// `E_{2m−1}` for `m = 1..=count`.
pub fn symmetric_energies(count: usize) -> Vec<f64> {
    aip_zeros(count)[..count].iter().map(|a| -0.5 * a).collect()
}

/// `E_{2m}` for `m = 1..=count`.
pub fn antisymmetric_energies(count: usize) -> Vec<f64> {
    ai_zeros(count)[..count].iter().map(|a| -0.5 * a).collect()
}

/// The unperturbed level nearest to `e`.
pub fn nearest_level(e: f64) -> UnperturbedLevel {
    // Every level sits in the window where −2E ≈ zero; count up past e.
    let mut best: Option<UnperturbedLevel> = None;
    let mut n = 1;
    while let Ok(lvl) = unperturbed_level(n) {
        let better = best.is_none_or(|b| (lvl.energy - e).abs() < (b.energy - e).abs());
        if better {
            best = Some(lvl);
        }
        if lvl.energy > e {
            break;
        }
        n += 1;
    }
    best.expect("level 1 always exists")
}

/// Errors when `e` is within [`POLE_TOL`] of an unperturbed level.
pub fn check_off_pole(e: f64, what: &'static str) -> Result<()> {
    if !e.is_finite() {
        return invalid(format!("energy must be finite, got {e}"));
    }
    if e < 0.4 {
        return Ok(());
    }
    let lvl = nearest_level(e);
    let distance = (lvl.energy - e).abs();
    if distance <= POLE_TOL * e.abs().max(1.0) {
        return Err(SpectrumError::Pole {
            what,
            energy: e,
            distance,
        });
    }
    Ok(())
}

/// Normalized eigenfunctions with the amplitudes precomputed.
#[derive(Debug, Clone)]
pub struct Eigenbasis {
    levels: Vec<UnperturbedLevel>,
    /// ψₙ(x) = ampₙ · sgn-factor · Ai(|x| + zeroₙ)
    amps: Vec<f64>,
}

fn amplitude(level: &UnperturbedLevel) -> f64 {
    let v = airy(level.airy_zero);
    match level.parity {
        Parity::Antisymmetric => 1.0 / (std::f64::consts::SQRT_2 * v.aip),
        _ => 1.0 / ((-2.0 * level.airy_zero).sqrt() * v.ai),
    }
}

impl Eigenbasis {
    pub fn new(count: usize) -> Self {
        let m = count.div_ceil(2);
        // Warm the zero caches in one go.
        let _ = (ai_zeros(m), aip_zeros(m));
        let levels: Vec<_> = (1..=count)
            .map(|n| unperturbed_level(n).expect("n ≥ 1"))
            .collect();
        let amps = levels.iter().map(amplitude).collect();
        Eigenbasis { levels, amps }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Level `n` (1-based).
    pub fn level(&self, n: usize) -> &UnperturbedLevel {
        &self.levels[n - 1]
    }

    pub fn psi(&self, n: usize, x: f64) -> f64 {
        let l = &self.levels[n - 1];
        let v = self.amps[n - 1] * airy(x.abs() + l.airy_zero).ai;
        match l.parity {
            Parity::Antisymmetric => sign(x) * v,
            _ => v,
        }
    }

    pub fn psi_prime(&self, n: usize, x: f64) -> f64 {
        let l = &self.levels[n - 1];
        let v = self.amps[n - 1] * airy(x.abs() + l.airy_zero).aip;
        match l.parity {
            Parity::Antisymmetric => v,
            _ => sign(x) * v,
        }
    }
}

/// Sign with `sign(0) = 0`, matching `ψ(0) = 0` for odd eigenfunctions.
fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Normalized eigenfunction ψₙ(x); ψₙ(0) > 0 for odd n, ψₙ′(0) > 0 for even n.
pub fn eigenfunction(n: usize, x: f64) -> Result<f64> {
    let l = unperturbed_level(n)?;
    let v = amplitude(&l) * airy(x.abs() + l.airy_zero).ai;
    Ok(if l.parity == Parity::Antisymmetric {
        sign(x) * v
    } else {
        v
    })
}

pub fn eigenfunction_derivative(n: usize, x: f64) -> Result<f64> {
    let l = unperturbed_level(n)?;
    let v = amplitude(&l) * airy(x.abs() + l.airy_zero).aip;
    Ok(if l.parity == Parity::Antisymmetric {
        v
    } else {
        sign(x) * v
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenEval {
    pub x: f64,
    pub y: f64,
    pub energy: f64,
    pub value: f64,
}

/// Resolvent kernel `(H0 − E)⁻¹(x, y)`.
///
/// With `s = −2E` the kernel is `−φ₋(x_<) φ₊(x_>) / (Ai(s)Ai′(s))`, where
/// `φ₊ = Ai(x + s)` decays to the right and `φ₋` is the left-decaying
/// solution `Ai(−x + s)`, continued past the origin as `c₁Ai(x + s) + c₂Bi(x + s)`.
/// When `x_< ≤ 0 ≤ x_>` this is exactly the Airy product
/// [`airy_product_kernel`]; for same-sign arguments the Bi part matters.
pub fn green_function(x: f64, y: f64, e: f64) -> Result<f64> {
    check_off_pole(e, "the unperturbed resolvent")?;
    let (mut lo, mut hi) = if x <= y { (x, y) } else { (y, x) };
    if hi <= 0.0 {
        // Mirror both points onto the right half-line.
        (lo, hi) = (-hi, -lo);
    }
    let s = -2.0 * e;
    if lo <= 0.0 {
        return Ok(product_form(lo, hi, s));
    }
    let a_s = airy_scaled(s);
    let ax = airy_scaled(hi + s);
    let ay = airy_scaled(lo + s);
    let pi = std::f64::consts::PI;
    // c₁/(Ai Ai′)(s), with the e^{±ζ} factors cancelling inside each product.
    let c1_ratio = pi * (a_s.ai * a_s.bip + a_s.aip * a_s.bi) / (a_s.ai * a_s.aip);
    let decaying = -ax.ai * ay.ai * c1_ratio * (2.0 * a_s.zeta - ax.zeta - ay.zeta).exp();
    let growing = 2.0 * pi * ax.ai * ay.bi * (ay.zeta - ax.zeta).exp();
    Ok(decaying + growing)
}

fn product_form(lo: f64, hi: f64, s: f64) -> f64 {
    let a_s = airy_scaled(s);
    let a1 = airy_scaled(hi + s);
    let a2 = airy_scaled(-lo + s);
    -a1.ai * a2.ai / (a_s.ai * a_s.aip) * (2.0 * a_s.zeta - a1.zeta - a2.zeta).exp()
}

/// `−Ai(x_> − 2E)·Ai(−x_< − 2E) / (Ai(−2E)·Ai′(−2E))` taken literally for all
/// `x, y`. Agrees with [`green_function`] whenever `x_< ≤ 0 ≤ x_>`.
pub fn airy_product_kernel(x: f64, y: f64, e: f64) -> Result<f64> {
    check_off_pole(e, "the unperturbed resolvent")?;
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    Ok(product_form(lo, hi, -2.0 * e))
}

pub fn green_eval(x: f64, y: f64, e: f64) -> Result<GreenEval> {
    Ok(GreenEval {
        x,
        y,
        energy: e,
        value: green_function(x, y, e)?,
    })
}

/// A truncated sum together with an estimate of what the omitted terms add.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEstimate {
    pub partial: f64,
    pub tail: f64,
}

impl SeriesEstimate {
    pub fn value(&self) -> f64 {
        self.partial + self.tail
    }
}

/// `Σ_{n≤N} ψₙ(x)ψₙ(y)/(Eₙ − E)` plus its integral tail estimate.
pub fn green_eigen_series(basis: &Eigenbasis, x: f64, y: f64, e: f64) -> Result<SeriesEstimate> {
    if basis.is_empty() {
        return invalid("eigen-series needs at least one level");
    }
    check_off_pole(e, "the eigen-series")?;
    let partial = (1..=basis.len())
        .map(|n| basis.psi(n, x) * basis.psi(n, y) / (basis.level(n).energy - e))
        .sum();
    Ok(SeriesEstimate {
        partial,
        tail: kernel_series_tail(x - y, e, basis.len()),
    })
}

/// `Σ_{n≤N} Eₙ^{−γ}` over every level.
pub fn schatten_partial_sum(gamma: f64, n: usize) -> Result<f64> {
    Ok(schatten_sum(gamma, n, LevelSubset::All)?.partial)
}

/// `Σ Eⱼ^{−γ}` over the first `count` members of `subset`, with the tail
/// beyond them (infinite for `γ ≤ 3/2`, where the sum diverges).
pub fn schatten_sum(gamma: f64, count: usize, subset: LevelSubset) -> Result<SeriesEstimate> {
    if count == 0 {
        return invalid("truncation must be at least 1");
    }
    if !(gamma > 0.0) {
        return invalid(format!("exponent must be positive, got {gamma}"));
    }
    let energies = match subset {
        LevelSubset::All => unperturbed_energies(count),
        LevelSubset::Symmetric => symmetric_energies(count),
        LevelSubset::Antisymmetric => antisymmetric_energies(count),
    };
    // Summing small terms first keeps the long sums accurate.
    let partial = energies.iter().rev().map(|e| e.powf(-gamma)).sum();
    Ok(SeriesEstimate {
        partial,
        tail: power_tail(gamma, subset, count),
    })
}

/// `|Σ_{n≤N} ψₙ(x₀)²/(Eₙ − E) + tail − G0(x₀, x₀; E)|` for `E < E₁`.
pub fn diagonal_norm_identity_residual(x0: f64, e: f64, n: usize) -> Result<f64> {
    if e >= unperturbed_energy(1)? {
        return invalid(format!(
            "identity is stated below the ground state, got E = {e}"
        ));
    }
    let basis = Eigenbasis::new(n);
    let series = green_eigen_series(&basis, x0, x0, e)?;
    Ok((series.value() - green_function(x0, x0, e)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::airy::AiryZeroTable;

    #[test]
    fn small_levels() {
        assert!((unperturbed_energy(1).unwrap() - 0.5093964858).abs() < 1e-10);
        assert!((unperturbed_energy(2).unwrap() - 1.1690537053).abs() < 1e-10);
        assert!((unperturbed_energy(4).unwrap() - 2.0439747221).abs() < 1e-10);
        assert!(unperturbed_energy(0).is_err());
    }

    #[test]
    fn energy_list_matches_single_lookups() {
        let all = unperturbed_energies(2 * AiryZeroTable::SIZE + 3);
        for (i, e) in all.iter().enumerate() {
            assert_eq!(*e, unperturbed_energy(i + 1).unwrap());
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn pole_detection() {
        let e2 = unperturbed_energy(2).unwrap();
        assert!(matches!(
            green_function(0.1, 0.2, e2),
            Err(SpectrumError::Pole { .. })
        ));
        assert!(green_function(0.1, 0.2, e2 + 1e-6).is_ok());
        assert_eq!(nearest_level(1.2).index, 2);
        assert_eq!(nearest_level(-5.0).index, 1);
    }

    #[test]
    fn kernel_forms_coincide_across_the_origin() {
        for &(x, y, e) in &[
            (0.5, -0.3, -1.0),
            (-2.0, 1.0, 0.7),
            (0.0, 0.0, 0.0),
            (0.0, 3.0, 2.2),
        ] {
            let a = green_function(x, y, e).unwrap();
            let b = airy_product_kernel(x, y, e).unwrap();
            assert!((a - b).abs() < 1e-14 * a.abs().max(1.0), "{x} {y} {e}");
        }
        // …and differ when both points are on one side.
        let a = green_function(0.5, 0.5, 0.3).unwrap();
        let b = airy_product_kernel(0.5, 0.5, 0.3).unwrap();
        assert!((a - b).abs() > 1e-2);
    }

    #[test]
    fn kernel_jump_condition() {
        // −½[∂ₓG] across x = y is 1.
        let (y, e, h) = (0.7, -0.4, 1e-6);
        let d_right =
            (green_function(y + 2.0 * h, y, e).unwrap() - green_function(y + h, y, e).unwrap()) / h;
        let d_left =
            (green_function(y - h, y, e).unwrap() - green_function(y - 2.0 * h, y, e).unwrap()) / h;
        assert!((-0.5 * (d_right - d_left) - 1.0).abs() < 1e-4);
    }
}
