//! The renormalized rank-one `|δ′⟩⟨δ′|` perturbation with coupling `β`.
//!
//! Only antisymmetric states feel `δ′`. Their levels solve
//! `1/β = F(E)`, where
//!
//! `F(E) = Ai′(−2E)/Ai(−2E) − Ai′(0)/Ai(0) = (E/2) Σₙ 1/(E₂ₙ(E₂ₙ − E))`
//!
//! is the regularized difference of two divergent sums. `F` increases from
//! `−∞` to `+∞` on every interval `(E₂ₙ₋₂, E₂ₙ)` (with `E₀ = −∞`), which gives
//! one branch per interval. At the symmetric levels `F = 1/β₀` with
//! `β₀ = −Ai(0)/Ai′(0)`, so at `β = β₀` each branch passes through the
//! symmetric level inside its interval and the spectrum is doubly degenerate.

use crate::airy::{airy, airy_scaled};
use crate::delta::{unperturbed_result, DEGENERACY_TOL};
use crate::eigen::{EigenResult, Level, LevelOrigin, Parity};
use crate::error::{invalid, Result, SpectrumError};
use crate::numerics::tail::{level_sum_tail, resolvent_difference_tail, LevelSubset};
use crate::numerics::{solve_bracketed, RootOptions};
use crate::spectrum::{
    antisymmetric_energies, check_off_pole, symmetric_energies, Eigenbasis, SeriesEstimate,
};

/// `β₀ = −Ai(0)/Ai′(0)`, the coupling at which the levels cross.
pub fn beta0() -> f64 {
    let v = airy(0.0);
    -v.ai / v.aip
}

/// `−Ai′(0)/Ai(0) = 1/β₀`
fn inv_beta0() -> f64 {
    let v = airy(0.0);
    -v.aip / v.ai
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlocalParams {
    pub beta: f64,
}

impl NonlocalParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return invalid(format!("β must be finite, got {beta}"));
        }
        Ok(NonlocalParams { beta })
    }
}

/// `1/β(E) = F(E)`; poles at the antisymmetric levels.
pub fn inverse_beta_of_energy(e: f64) -> Result<f64> {
    check_even_pole(e)?;
    let a = airy_scaled(-2.0 * e);
    Ok(a.aip / a.ai + inv_beta0())
}

fn check_even_pole(e: f64) -> Result<()> {
    check_off_pole(e, "F(E)")?;
    let a = airy_scaled(-2.0 * e);
    if a.ai == 0.0 {
        return Err(SpectrumError::Pole {
            what: "F(E)",
            energy: e,
            distance: 0.0,
        });
    }
    Ok(())
}

/// `β(E) = Ai(0)Ai(−2E) / (Ai(0)Ai′(−2E) − Ai′(0)Ai(−2E))`.
///
/// Vanishes at the antisymmetric levels, equals `β₀` at the symmetric ones,
/// and has poles where `F(E) = 0` (among them `E = 0`).
pub fn beta_of_energy(e: f64) -> Result<f64> {
    if !e.is_finite() {
        return invalid("energy must be finite");
    }
    let o = airy(0.0);
    let a = airy_scaled(-2.0 * e);
    let t1 = o.ai * a.aip;
    let t2 = o.aip * a.ai;
    let den = t1 - t2;
    if den.abs() <= 1e-14 * (t1.abs() + t2.abs()) {
        return Err(SpectrumError::Pole {
            what: "β(E)",
            energy: e,
            distance: den.abs(),
        });
    }
    Ok(o.ai * a.ai / den)
}

/// `(E/2) Σ_{n≤N} 1/(E₂ₙ(E₂ₙ − E))` with its integral tail: the series form of `F(E)`.
pub fn bound_state_series(e: f64, n: usize) -> Result<SeriesEstimate> {
    if n == 0 {
        return invalid("truncation must be at least 1");
    }
    let levels = antisymmetric_energies(n);
    if levels.iter().any(|&l| (l - e).abs() <= 1e-12 * l) {
        return Err(SpectrumError::Pole {
            what: "the truncated series",
            energy: e,
            distance: 0.0,
        });
    }
    let partial: f64 = levels.iter().rev().map(|&l| 1.0 / (l * (l - e))).sum();
    let tail = resolvent_difference_tail(e, LevelSubset::Antisymmetric, n);
    Ok(SeriesEstimate {
        partial: 0.5 * e * partial,
        tail: 0.5 * e * tail,
    })
}

/// `μ_β(N) = 1/(1/β + ½ Σ_{n≤N} 1/E₂ₙ)`, the bare coupling that a cutoff at
/// the N-th antisymmetric level must carry. Tends to zero as `N → ∞`.
pub fn cutoff_coupling(beta: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return invalid("cutoff must be at least 1");
    }
    if !beta.is_finite() {
        return invalid("β must be finite");
    }
    if beta == 0.0 {
        return Ok(0.0);
    }
    let sum: f64 = antisymmetric_energies(n)
        .iter()
        .rev()
        .map(|l| 1.0 / l)
        .sum();
    let den = 1.0 / beta + 0.5 * sum;
    if den.abs() < 1e-12 * (1.0 / beta).abs().max(sum) {
        return Err(SpectrumError::Pole {
            what: "μ_β(N)",
            energy: f64::NAN,
            distance: den.abs(),
        });
    }
    Ok(1.0 / den)
}

/// `1/β + ½[Σ_{n≤N} 1/E₂ₙ − Σ_{n≤N} 1/(E₂ₙ − E)]`, computed in its cancelled
/// form `1/β − (E/2)Σ 1/(E₂ₙ(E₂ₙ − E))`, with the tail of the latter. Converges
/// to `1/β − F(E)`, whose zeros are the antisymmetric levels.
pub fn renormalized_denominator(beta: f64, e: f64, n: usize) -> Result<SeriesEstimate> {
    if beta == 0.0 || !beta.is_finite() {
        return invalid("β must be finite and non-zero");
    }
    let s = bound_state_series(e, n)?;
    Ok(SeriesEstimate {
        partial: 1.0 / beta - s.partial,
        tail: -s.tail,
    })
}

fn root_opts() -> RootOptions {
    RootOptions::default().with_x_tol(1e-15)
}

/// `Ai(s)(F − 1/β)` scaled: continuous through the even levels.
fn branch_fn(beta: f64) -> impl Fn(f64) -> f64 {
    let c = 1.0 / beta - inv_beta0();
    move |e: f64| {
        let a = airy_scaled(-2.0 * e);
        a.aip - c * a.ai
    }
}

fn lower_bracket(f: &impl Fn(f64) -> f64, top: f64) -> Result<f64> {
    let f_top = f(top);
    let mut width = 1.0;
    for _ in 0..80 {
        let lo = top - width;
        if f(lo).signum() != f_top.signum() {
            return Ok(lo);
        }
        width *= 2.0;
    }
    Err(SpectrumError::NoBracket {
        lo: top - width,
        hi: top,
        f_lo: f(top - width),
        f_hi: f_top,
    })
}

/// The β-dependent level on branch `n` (inside `(E₂ₙ₋₂, E₂ₙ)`).
pub fn solve_branch(beta: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return invalid("branches are numbered from 1");
    }
    if beta == 0.0 {
        return Ok(antisymmetric_energies(n)[n - 1]);
    }
    let even = antisymmetric_energies(n);
    let f = branch_fn(beta);
    let hi = even[n - 1];
    let lo = if n == 1 {
        lower_bracket(&f, hi)?
    } else {
        even[n - 2]
    };
    Ok(solve_bracketed(&f, lo, hi, root_opts())?.x)
}

fn level(energy: f64, parity: Parity, origin: LevelOrigin, residual: f64) -> Level {
    Level {
        index: 0,
        energy,
        parity,
        residual,
        origin,
        degenerate: false,
    }
}

/// The `k` lowest levels of the renormalized `δ′` model.
pub fn nonlocal_spectrum(params: &NonlocalParams, k: usize) -> Result<EigenResult> {
    if k == 0 {
        return invalid("level count must be at least 1");
    }
    NonlocalParams::new(params.beta)?;
    if params.beta == 0.0 {
        return Ok(unperturbed_result(k));
    }
    let mut levels = Vec::with_capacity(2 * k);
    for e in symmetric_energies(k) {
        levels.push(level(e, Parity::Symmetric, LevelOrigin::Invariant, 0.0));
    }
    for n in 1..=k {
        let e = solve_branch(params.beta, n)?;
        let residual =
            inverse_beta_of_energy(e).map_or(f64::NAN, |f| (f - 1.0 / params.beta).abs());
        levels.push(level(
            e,
            Parity::Antisymmetric,
            LevelOrigin::Branch,
            residual,
        ));
    }
    Ok(EigenResult::from_unsorted(levels, k, DEGENERACY_TOL))
}

/// Spectrum from the truncated series with its tail instead of the Airy
/// closed form; the independent check used where no local boundary condition
/// (and hence no finite-difference oracle) exists.
pub fn series_spectrum(params: &NonlocalParams, k: usize, n: usize) -> Result<EigenResult> {
    if k == 0 {
        return invalid("level count must be at least 1");
    }
    if params.beta == 0.0 {
        return Ok(unperturbed_result(k));
    }
    let target = 1.0 / params.beta;
    let even = antisymmetric_energies(n.max(k));
    let g = |e: f64| bound_state_series(e, n).map_or(f64::NAN, |s| s.value()) - target;
    let mut levels = Vec::with_capacity(2 * k);
    for e in symmetric_energies(k) {
        levels.push(level(e, Parity::Symmetric, LevelOrigin::Invariant, 0.0));
    }
    for b in 1..=k {
        let hi = even[b - 1];
        let gap = if b == 1 { 1.0 } else { hi - even[b - 2] };
        let hi_in = hi - 1e-9 * gap;
        let lo_in = if b == 1 {
            let mut lo = hi - 1.0;
            let mut w = 1.0;
            while g(lo) >= 0.0 && w < 1e12 {
                w *= 2.0;
                lo = hi - w;
            }
            lo
        } else {
            even[b - 2] + 1e-9 * gap
        };
        let r = solve_bracketed(g, lo_in, hi_in, root_opts())?;
        levels.push(level(
            r.x,
            Parity::Antisymmetric,
            LevelOrigin::Branch,
            r.residual,
        ));
    }
    Ok(EigenResult::from_unsorted(levels, k, DEGENERACY_TOL))
}

/// `Ψ(x; E) = 2^{−1/2} Σ_{n≤N} ψ₂ₙ(x)/(E₂ₙ − E)` sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectFunction {
    pub energy: f64,
    pub truncation: usize,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// `2‖Ψ‖² = Σ (E₂ₙ − E)⁻²` over the retained terms, with its tail.
    pub coefficient_norm: SeriesEstimate,
}

impl DefectFunction {
    /// Term-by-term `Ψ′(0) = ½ Σ_{n≤N} 1/(E₂ₙ − E)`; grows like `N^{1/3}`.
    pub fn series_slope_at_origin(&self) -> f64 {
        antisymmetric_energies(self.truncation)
            .iter()
            .rev()
            .map(|l| 0.5 / (l - self.energy))
            .sum()
    }
}

pub fn defect_function(e: f64, n: usize, grid: &[f64]) -> Result<DefectFunction> {
    if n == 0 {
        return invalid("truncation must be at least 1");
    }
    let even = antisymmetric_energies(n);
    if even.iter().any(|&l| (l - e).abs() <= 1e-12 * l) {
        return Err(SpectrumError::Pole {
            what: "Ψ(x; E)",
            energy: e,
            distance: 0.0,
        });
    }
    let basis = Eigenbasis::new(2 * n);
    let values = grid
        .iter()
        .map(|&x| {
            let s: f64 = (1..=n)
                .rev()
                .map(|m| basis.psi(2 * m, x) / (even[m - 1] - e))
                .sum();
            s * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect();
    let partial = even.iter().rev().map(|l| (l - e).powi(-2)).sum();
    let tail = level_sum_tail(|l| (l - e).powi(-2), LevelSubset::Antisymmetric, n);
    Ok(DefectFunction {
        energy: e,
        truncation: n,
        grid: grid.to_vec(),
        values,
        coefficient_norm: SeriesEstimate { partial, tail },
    })
}

/// Closed form of the full series: `Ψ(x; E) = sgn(x)·Ai(|x| − 2E)/Ai(−2E)`,
/// i.e. `∂_y G0(x, y; E)` at `y = 0`. Jumps by 2 at the origin, while
/// `Ψ′(0) = Ai′(−2E)/Ai(−2E)` is continuous.
pub fn defect_function_closed(x: f64, e: f64) -> Result<f64> {
    check_even_pole(e)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let s = -2.0 * e;
    let a = airy_scaled(s);
    let b = airy_scaled(x.abs() + s);
    Ok(x.signum() * b.ai / a.ai * (a.zeta - b.zeta).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_constant() {
        assert!((beta0() - 1.3717211641984483473).abs() < 1e-15);
        assert!((beta0() - 1.37172).abs() < 1e-5);
    }

    #[test]
    fn beta_at_special_energies() {
        for m in 1..=6 {
            let odd = -0.5 * crate::airy::aip_zero(m).unwrap();
            assert!((beta_of_energy(odd).unwrap() - beta0()).abs() < 1e-10);
            let even = -0.5 * crate::airy::ai_zero(m).unwrap();
            assert!(beta_of_energy(even).unwrap().abs() < 1e-12);
        }
        assert!(matches!(
            beta_of_energy(0.0),
            Err(SpectrumError::Pole { .. })
        ));
        assert_eq!(inverse_beta_of_energy(0.0).unwrap(), 0.0);
    }

    #[test]
    fn branch_functions_agree() {
        for &e in &[-2.0, -0.3, 0.2, 0.8, 1.5] {
            let f = inverse_beta_of_energy(e).unwrap();
            assert!((f * beta_of_energy(e).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cutoff_coupling_limits() {
        assert_eq!(cutoff_coupling(0.0, 10).unwrap(), 0.0);
        assert!(cutoff_coupling(1.0, 0).is_err());
        assert!(defect_function(0.1, 0, &[0.0]).is_err());
    }
}
