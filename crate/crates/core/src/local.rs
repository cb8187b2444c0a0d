//! `H0 − a δ(x) + b δ′(x)` with the local `δ′` fixed by the transfer matrix
//!
//! ```text
//! ( ψ(0+)  )   ( (1+b)/(1−b)        0       ) ( ψ(0−)  )
//! ( ψ′(0+) ) = ( −2a/(1−b²)   (1−b)/(1+b)   ) ( ψ′(0−) )
//! ```
//!
//! Antisymmetric states are untouched. Symmetric ones solve
//! `Ai′(−2E)/Ai(−2E) + a/(1 + b²) = 0`, i.e. the centred δ problem with the
//! effective coupling `a/(1 + b²)`.

use crate::airy::airy_scaled;
use crate::delta::{unperturbed_result, DEGENERACY_TOL};
use crate::eigen::{EigenResult, Level, LevelOrigin, Parity};
use crate::error::{invalid, Result, SpectrumError};
use crate::numerics::{solve_bracketed, RootOptions};
use crate::spectrum::antisymmetric_energies;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalDDPParams {
    pub a: f64,
    pub b: f64,
}

impl LocalDDPParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return invalid(format!("a and b must be finite, got a = {a}, b = {b}"));
        }
        if b.abs() == 1.0 {
            return invalid("b = ±1 makes the matching matrix singular");
        }
        Ok(LocalDDPParams { a, b })
    }

    /// Coupling of the equivalent centred δ impurity.
    pub fn effective_lambda(&self) -> f64 {
        self.a / (1.0 + self.b * self.b)
    }
}

/// `Ai′(−2E)/Ai(−2E) + a/(b² + 1)`; zeros are the symmetric levels.
pub fn local_eigen_equation(e: f64, a: f64, b: f64) -> Result<f64> {
    let p = LocalDDPParams::new(a, b)?;
    let v = airy_scaled(-2.0 * e);
    if v.ai == 0.0 || (v.aip / v.ai).abs() > 1e14 {
        return Err(SpectrumError::Pole {
            what: "the local bound-state equation",
            energy: e,
            distance: f64::NAN,
        });
    }
    Ok(v.aip / v.ai + p.effective_lambda())
}

/// The determinant of the linear system for the amplitudes on both sides of
/// the origin and the derivative jump, with `A = Ai(−2E)/Ai′(−2E)` the value of
/// `G0(0⁺, 0; E)`:
///
/// ```text
/// | 2    −1−b           0    |
/// | −1   1 + aA/2 + b/2 bA/2 |  = 1 + aA + b²
/// | 0    −b/A           1    |
/// ```
///
/// dividing it by `A(1 + b²)` gives [`local_eigen_equation`].
pub fn local_determinant(e: f64, a: f64, b: f64) -> Result<f64> {
    LocalDDPParams::new(a, b)?;
    let v = airy_scaled(-2.0 * e);
    if v.aip == 0.0 || (v.ai / v.aip).abs() > 1e14 {
        return Err(SpectrumError::Pole {
            what: "the local determinant",
            energy: e,
            distance: f64::NAN,
        });
    }
    let big_a = v.ai / v.aip;
    let m = [
        [2.0, -1.0 - b, 0.0],
        [-1.0, 1.0 + 0.5 * a * big_a + 0.5 * b, 0.5 * b * big_a],
        [0.0, -b / big_a, 1.0],
    ];
    Ok(det3(&m))
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The `k` lowest levels.
pub fn local_spectrum(params: &LocalDDPParams, k: usize) -> Result<EigenResult> {
    if k == 0 {
        return invalid("level count must be at least 1");
    }
    let p = LocalDDPParams::new(params.a, params.b)?;
    if p.a == 0.0 {
        return Ok(unperturbed_result(k));
    }
    let lambda = p.effective_lambda();
    let f = |e: f64| {
        let v = airy_scaled(-2.0 * e);
        v.aip + lambda * v.ai
    };
    let even = antisymmetric_energies(k);
    let mut levels = Vec::with_capacity(2 * k);
    for &e in &even {
        levels.push(Level {
            index: 0,
            energy: e,
            parity: Parity::Antisymmetric,
            residual: 0.0,
            origin: LevelOrigin::Invariant,
            degenerate: false,
        });
    }
    let opts = RootOptions::default().with_x_tol(1e-15);
    for n in 1..=k {
        let hi = even[n - 1];
        let lo = if n == 1 {
            let mut w = 1.0;
            while f(hi - w).signum() == f(hi).signum() {
                w *= 2.0;
                if w > 1e15 {
                    return Err(SpectrumError::NoBracket {
                        lo: hi - w,
                        hi,
                        f_lo: f(hi - w),
                        f_hi: f(hi),
                    });
                }
            }
            hi - w
        } else {
            even[n - 2]
        };
        let r = solve_bracketed(f, lo, hi, opts)?;
        let residual = local_eigen_equation(r.x, p.a, p.b).map_or(f64::NAN, f64::abs);
        levels.push(Level {
            index: 0,
            energy: r.x,
            parity: Parity::Symmetric,
            residual,
            origin: LevelOrigin::Branch,
            degenerate: false,
        });
    }
    Ok(EigenResult::from_unsorted(levels, k, DEGENERACY_TOL))
}
