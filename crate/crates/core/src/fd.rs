//! Finite-difference oracle: `½(−d²/dx² + |x|)` on `[−L, L]` with Dirichlet
//! ends, three-point stencil, lowest eigenvalues by Sturm-sequence bisection.
//!
//! Interactions are realized on the grid:
//!
//! * δ: on-site potential `−λ/h` at the node nearest `x₀`;
//! * local δ–δ′: the origin node carries two values, `w` on the left and
//!   `θw` on the right (`θ = (1+b)/(1−b)`), and the matching condition enters
//!   through the boundary term `−a w²/(1−b)²` of the quadratic form. The
//!   resulting generalized problem is symmetrized with the lumped mass, so
//!   the matrix stays symmetric tridiagonal. For `b = 0` it is the δ stencil.

use crate::error::{invalid, Result, SpectrumError};

/// Grid and number of levels for one oracle run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSpec {
    /// Half-width `L` of the box.
    pub half_width: f64,
    /// Grid step `h`.
    pub step: f64,
    /// Number of lowest eigenvalues to extract.
    pub levels: usize,
}

/// How the point interaction is put on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interaction {
    None,
    Delta { lambda: f64, x0: f64 },
    LocalDdp { a: f64, b: f64 },
}

impl OracleSpec {
    pub fn new(half_width: f64, step: f64, levels: usize) -> Result<Self> {
        let s = OracleSpec {
            half_width,
            step,
            levels,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let (l, h) = (self.half_width, self.step);
        if !(l.is_finite() && l >= 15.0) {
            return invalid(format!("half-width must be at least 15, got {l}"));
        }
        if !(h > 0.0 && h <= 1e-2) {
            return invalid(format!("step must lie in (0, 1e-2], got {h}"));
        }
        let cells = 2.0 * l / h;
        if (cells - cells.round()).abs() > 1e-6 || !(cells.round() as u64).is_multiple_of(2) {
            return invalid(format!(
                "2L/h = {cells} must be an even integer so that x = 0 is a node"
            ));
        }
        if self.levels == 0 {
            return invalid("at least one level must be requested");
        }
        Ok(())
    }

    fn cells(&self) -> usize {
        (2.0 * self.half_width / self.step).round() as usize
    }

    fn node(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.step
    }
}

/// Symmetric tridiagonal matrix on the interior nodes `1..cells`.
#[derive(Debug, Clone)]
struct Tridiagonal {
    diag: Vec<f64>,
    /// `off[i]` couples unknowns `i` and `i + 1`.
    off: Vec<f64>,
    /// Mass scaling `M^{-1/2}` applied to each unknown (1 except at a split node).
    scale: Vec<f64>,
}

fn assemble(spec: &OracleSpec, interaction: Interaction) -> Result<Tridiagonal> {
    spec.validate()?;
    let n = spec.cells() - 1;
    if spec.levels > n {
        return invalid("more levels requested than grid unknowns");
    }
    let h = spec.step;
    let mut diag: Vec<f64> = (1..=n)
        .map(|i| 1.0 / (h * h) + 0.5 * spec.node(i).abs())
        .collect();
    let mut off = vec![-0.5 / (h * h); n - 1];
    let mut scale = vec![1.0; n];
    let origin = spec.cells() / 2 - 1;
    match interaction {
        Interaction::None => {}
        Interaction::Delta { lambda, x0 } => {
            if !(lambda.is_finite() && x0.is_finite()) {
                return invalid("δ parameters must be finite");
            }
            let j = ((x0 + spec.half_width) / h).round();
            if j < 1.0 || j > n as f64 {
                return invalid(format!("x₀ = {x0} lies outside the grid"));
            }
            diag[j as usize - 1] -= lambda / h;
        }
        Interaction::LocalDdp { a, b } => {
            if !(a.is_finite() && b.is_finite()) || b.abs() == 1.0 {
                return invalid("local δ–δ′ needs finite a, b with |b| ≠ 1");
            }
            let theta = (1.0 + b) / (1.0 - b);
            // Quadratic form rows (before dividing by the mass).
            let a_ww = (1.0 + theta * theta) / (2.0 * h) - a / ((1.0 - b) * (1.0 - b));
            let m_ww = 0.5 * h * (1.0 + theta * theta);
            diag[origin] = a_ww / m_ww;
            let cross = 1.0 / (m_ww * h).sqrt();
            off[origin - 1] = -0.5 / h * cross;
            off[origin] = -theta * 0.5 / h * cross;
            scale[origin] = 1.0 / m_ww.sqrt();
        }
    }
    Ok(Tridiagonal { diag, off, scale })
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `sigma`.
    fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1] / q
            };
            q = self.diag[i] - sigma - coupling;
            if q == 0.0 {
                q = -f64::EPSILON * (self.diag[i].abs() + sigma.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    fn eigenvalue(&self, k: usize, bounds: (f64, f64)) -> f64 {
        let (mut lo, mut hi) = bounds;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 1e-14 * (1.0 + mid.abs()) {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn lowest(&self, m: usize) -> Vec<f64> {
        let (glo, ghi) = self.gershgorin();
        let mut out = Vec::with_capacity(m);
        let mut lo = glo;
        for k in 0..m {
            // A few cheap bisection passes on the upper end before the full solve.
            let mut hi = ghi;
            while hi - lo > 1.0 && self.count_below(lo + 0.5 * (hi - lo)) > k {
                hi = lo + 0.5 * (hi - lo);
            }
            let e = self.eigenvalue(k, (lo, hi));
            out.push(e);
            lo = e - 1e-9 * (1.0 + e.abs());
        }
        out
    }

    /// Eigenvector for an (already accurate) eigenvalue by inverse iteration.
    fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.diag.len();
        let sigma = lambda + 1e-10 * (1.0 + lambda.abs());
        let mut v = vec![1.0; n];
        for (i, x) in v.iter_mut().enumerate() {
            // Any vector with components along every eigenvector will do.
            *x = 1.0 + 0.01 * ((i * 7919) % 101) as f64;
        }
        for _ in 0..3 {
            v = solve_shifted(&self.diag, &self.off, sigma, &v)?;
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                return Err(SpectrumError::Eigensolver(
                    "inverse iteration broke down".into(),
                ));
            }
            v.iter_mut().for_each(|x| *x /= norm);
        }
        Ok(v)
    }
}

/// Solves `(T − σI)x = rhs` by Gaussian elimination with partial pivoting.
fn solve_shifted(diag: &[f64], off: &[f64], sigma: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    // Row i holds columns i, i+1, i+2 after pivoting (u0, u1, u2).
    let mut u0: Vec<f64> = diag.iter().map(|d| d - sigma).collect();
    let mut u1: Vec<f64> = (0..n)
        .map(|i| if i + 1 < n { off[i] } else { 0.0 })
        .collect();
    let mut u2 = vec![0.0; n];
    let mut b = rhs.to_vec();
    let tiny = f64::EPSILON * diag.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    for i in 0..n.saturating_sub(1) {
        let sub = off[i];
        if sub.abs() > u0[i].abs() {
            // Swap rows i and i+1.
            let (r0, r1, r2) = (u0[i], u1[i], u2[i]);
            u0[i] = sub;
            u1[i] = u0[i + 1];
            u2[i] = u1[i + 1];
            b.swap(i, i + 1);
            let f = r0 / u0[i];
            u0[i + 1] = r1 - f * u1[i];
            u1[i + 1] = r2 - f * u2[i];
            b[i + 1] -= f * b[i];
        } else {
            if u0[i] == 0.0 {
                u0[i] = tiny;
            }
            let f = sub / u0[i];
            u0[i + 1] -= f * u1[i];
            u1[i + 1] -= f * u2[i];
            b[i + 1] -= f * b[i];
        }
    }
    if u0[n - 1] == 0.0 {
        u0[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= u1[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= u2[i] * x[i + 2];
        }
        x[i] = s / u0[i];
    }
    Ok(x)
}

/// Lowest `spec.levels` eigenvalues with the given interaction.
pub fn fd_spectrum(spec: &OracleSpec, interaction: Interaction) -> Result<Vec<f64>> {
    let t = assemble(spec, interaction)?;
    let levels = t.lowest(spec.levels);
    if levels.iter().any(|e| !e.is_finite()) {
        return Err(SpectrumError::Eigensolver(
            "bisection produced a non-finite eigenvalue".into(),
        ));
    }
    Ok(levels)
}

pub fn fd_unperturbed(spec: &OracleSpec) -> Result<Vec<f64>> {
    fd_spectrum(spec, Interaction::None)
}

pub fn fd_delta(spec: &OracleSpec, lambda: f64, x0: f64) -> Result<Vec<f64>> {
    fd_spectrum(spec, Interaction::Delta { lambda, x0 })
}

pub fn fd_local_ddp(spec: &OracleSpec, a: f64, b: f64) -> Result<Vec<f64>> {
    if b.abs() == 1.0 {
        return invalid("b = ±1 makes the matching matrix singular");
    }
    fd_spectrum(spec, Interaction::LocalDdp { a, b })
}

/// Discrete eigenvector of level `index` (0-based) on the nodes `x_1 … x_{N−1}`,
/// together with those nodes. At a split origin node the left value is reported.
pub fn fd_eigenvector(
    spec: &OracleSpec,
    interaction: Interaction,
    index: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let t = assemble(spec, interaction)?;
    let e = t.lowest(index + 1)[index];
    let v = t.eigenvector(e)?;
    let nodes = (1..spec.cells()).map(|i| spec.node(i)).collect();
    let values = v.iter().zip(&t.scale).map(|(x, s)| x * s).collect();
    Ok((nodes, values))
}
