//! Integral-comparison estimates for the tails of sums over unperturbed
//! levels.
//!
//! For large index the level energies follow the common asymptotic law
//! `E_n ≈ ½ (3π(2n − 1)/8)^{2/3}`, for both parities. A sum `Σ_{j>J} φ(E_j)`
//! is replaced by the integral of the same expression from `J + ½`, which is
//! the midpoint rule read backwards and is accurate to `O(φ′)` per term.

use std::f64::consts::PI;

use super::quad::adaptive_simpson;

/// Which unperturbed levels a sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelSubset {
    /// Every level `n = 1, 2, 3, …`.
    All,
    /// Odd-indexed (symmetric) levels `E_{2m−1}`, counted by `m`.
    Symmetric,
    /// Even-indexed (antisymmetric) levels `E_{2m}`, counted by `m`.
    Antisymmetric,
}

impl LevelSubset {
    /// `(s, r)` such that the j-th member has asymptotic label `ν = s·j + r`.
    fn label(self) -> (f64, f64) {
        match self {
            LevelSubset::All => (2.0, -1.0),
            LevelSubset::Symmetric => (4.0, -3.0),
            LevelSubset::Antisymmetric => (4.0, -1.0),
        }
    }
}

/// `½ (3π/8)^{2/3}`
fn energy_scale() -> f64 {
    0.5 * (3.0 * PI / 8.0).powf(2.0 / 3.0)
}

/// Asymptotic energy for the level with label `ν = 2n − 1`.
pub fn asymptotic_energy(nu: f64) -> f64 {
    energy_scale() * nu.powf(2.0 / 3.0)
}

/// Energy at the half-integer boundary that starts the tail after `count` members.
pub fn tail_start_energy(subset: LevelSubset, count: usize) -> f64 {
    let (s, r) = subset.label();
    asymptotic_energy(s * (count as f64 + 0.5) + r)
}

/// `Σ_{j>count} E_j^{−γ}`; finite only for `γ > 3/2`.
pub fn power_tail(gamma: f64, subset: LevelSubset, count: usize) -> f64 {
    let p = 2.0 * gamma / 3.0;
    if p <= 1.0 {
        return f64::INFINITY;
    }
    let (s, r) = subset.label();
    let nu0 = s * (count as f64 + 0.5) + r;
    energy_scale().powf(-gamma) * nu0.powf(1.0 - p) / (s * (p - 1.0))
}

/// Jacobian factor turning `Σ_j` into `∫ √ε dε`.
fn density_prefactor(subset: LevelSubset) -> f64 {
    let (s, _) = subset.label();
    1.5 / s * energy_scale().powf(-1.5)
}

/// `∫_S^∞ dt / (t² − e)` for `S² > e`.
fn inverse_quadratic_integral(s: f64, e: f64) -> f64 {
    if e < 0.0 {
        let c = (-e).sqrt();
        (c / s).atan() / c
    } else if e == 0.0 {
        1.0 / s
    } else {
        let c = e.sqrt();
        (c / s).atanh() / c
    }
}

/// `Σ_{j>count} 1 / (E_j (E_j − e))`.
pub fn resolvent_difference_tail(e: f64, subset: LevelSubset, count: usize) -> f64 {
    let eps0 = tail_start_energy(subset, count);
    2.0 * density_prefactor(subset) * inverse_quadratic_integral(eps0.sqrt(), e)
}

/// `Σ_{j>count} φ(E_j)` for any `φ` decaying at least like `E^{−2}`.
pub fn level_sum_tail<F>(phi: F, subset: LevelSubset, count: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let eps0 = tail_start_energy(subset, count);
    // ε = ε0 / u² maps [ε0, ∞) onto (0, 1].
    let integrand = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let eps = eps0 / (u * u);
        phi(eps) * eps.sqrt() * 2.0 * eps0 / (u * u * u)
    };
    let scale = phi(eps0).abs() * eps0.powf(1.5) + f64::MIN_POSITIVE;
    density_prefactor(subset) * adaptive_simpson(integrand, 0.0, 1.0, 1e-12 * scale)
}

/// Tail of the eigenfunction expansion of the resolvent kernel,
/// `Σ_{n>count} ψ_n(x) ψ_n(y) / (E_n − e)` with `d = |x − y|`.
///
/// Adjacent symmetric/antisymmetric pairs of high levels combine to
/// `cos(k d) / (2k²)` with `k² = 2E`, so the tail becomes
/// `(2/π) ∫_K^∞ cos(k d) / (k² − 2e) dk`.
pub fn kernel_series_tail(d: f64, e: f64, count: usize) -> f64 {
    let d = d.abs();
    let k0 = (2.0 * tail_start_energy(LevelSubset::All, count)).sqrt();
    let q2 = 2.0 * e;
    if q2 >= k0 * k0 {
        return f64::NAN;
    }
    if d == 0.0 {
        return 2.0 / PI * inverse_quadratic_integral(k0, q2);
    }
    if q2 < 0.0 {
        return 2.0 / PI * damped_cosine_tail(k0, (-q2).sqrt(), d);
    }
    // 1/(k² − q²) = 1/(k² + 1) + (q² + 1)/((k² − q²)(k² + 1)); the second
    // piece decays like k⁻⁴ and is integrated directly.
    let rest = |k: f64| (k * d).cos() * (q2 + 1.0) / ((k * k - q2) * (k * k + 1.0));
    let far = 40.0 * k0;
    let remainder = adaptive_simpson(rest, k0, far, 1e-12);
    2.0 / PI * (damped_cosine_tail(k0, 1.0, d) + remainder)
}

/// `∫_K^∞ cos(k d) / (k² + c²) dk`, via the full-line value `π e^{−c d} / (2c)`.
fn damped_cosine_tail(k0: f64, c: f64, d: f64) -> f64 {
    let head = adaptive_simpson(|k| (k * d).cos() / (k * k + c * c), 0.0, k0, 1e-13);
    PI / (2.0 * c) * (-c * d).exp() - head
}
