//! `H0 − λ δ(x − x₀)`: bound states, branch solves and the two-level inverse
//! design problem.
//!
//! A level `E` is bound exactly when `G0(x₀, x₀; E) = 1/λ`. Writing the
//! diagonal kernel as `G = −P(E)/Q(E)` with `Q = Ai(s)Ai′(s)` (`s = −2E`) and
//! `P` the product of the two decaying solutions at `x₀`, the equation becomes
//! the pole-free `F(E) = Q + λP = 0`. Between two consecutive unperturbed
//! levels that the impurity can see, `G` climbs monotonically from `−∞` to
//! `+∞`, so `F` changes sign exactly once and each such interval is a branch.
//! At `x₀ = 0` the antisymmetric states vanish at the impurity, `P` and `Q`
//! share the factor `Ai(s)`, and the reduced `Ai′(s) + λAi(s)` is used.

use std::f64::consts::PI;

use crate::airy::airy_scaled;
use crate::eigen::{EigenResult, Level, LevelOrigin, Parity};
use crate::error::{invalid, Result, SpectrumError};
use crate::numerics::{scan_sign_changes, solve_bracketed, RootOptions};
use crate::spectrum::{
    antisymmetric_energies, check_off_pole, symmetric_energies, unperturbed_energies,
    unperturbed_level,
};

/// Which closed form of the diagonal kernel `G0(x₀, x₀; E)` drives the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelForm {
    /// The true resolvent of `H0` (see [`crate::spectrum::green_function`]).
    #[default]
    Exact,
    /// `−Ai(x₀ − 2E)Ai(−x₀ − 2E)/(Ai(−2E)Ai′(−2E))` taken at face value.
    /// Identical to `Exact` at `x₀ = 0`; off the origin it is not a resolvent,
    /// and its spectra disagree with a direct discretization.
    AiryProduct,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaParams {
    /// Coupling; positive is attractive.
    pub lambda: f64,
    pub x0: f64,
}

impl DeltaParams {
    pub fn new(lambda: f64, x0: f64) -> Result<Self> {
        if !(lambda.is_finite() && x0.is_finite()) {
            return invalid(format!(
                "λ and x₀ must be finite, got λ = {lambda}, x₀ = {x0}"
            ));
        }
        Ok(DeltaParams { lambda, x0 })
    }
}

/// `G = −p/q` with the common factor `e^{−2ζ(s)}` removed from both.
#[derive(Debug, Clone, Copy)]
struct Parts {
    p: f64,
    q: f64,
}

fn parts(e: f64, x0: f64, form: KernelForm) -> Parts {
    let s = -2.0 * e;
    let t = x0.abs();
    let a = airy_scaled(s);
    let q = a.ai * a.aip;
    let b = airy_scaled(t + s);
    let p = match form {
        KernelForm::Exact => {
            // φ₋(t) = c₁Ai(t + s) + c₂Bi(t + s), continued from the left half-line.
            let c1 = PI * (a.ai * a.bip + a.aip * a.bi);
            c1 * b.ai * b.ai * (2.0 * a.zeta - 2.0 * b.zeta).exp() - 2.0 * PI * q * b.ai * b.bi
        }
        KernelForm::AiryProduct => {
            let c = airy_scaled(s - t);
            b.ai * c.ai * (2.0 * a.zeta - b.zeta - c.zeta).exp()
        }
    };
    Parts { p, q }
}

/// `G0(x₀, x₀; E)` in the chosen form.
pub fn diagonal_kernel(e: f64, x0: f64, form: KernelForm) -> Result<f64> {
    check_off_pole(e, "the diagonal kernel")?;
    let k = parts(e, x0, form);
    Ok(-k.p / k.q)
}

/// Largest |λ(E)| reported before the point is treated as a pole.
const LAMBDA_POLE: f64 = 1e13;

/// The coupling for which `E` is a bound state at `x₀`: `1/G0(x₀, x₀; E)`;
/// at `x₀ = 0` this is `−Ai′(−2E)/Ai(−2E)`.
pub fn lambda_of_energy(e: f64, x0: f64, form: KernelForm) -> Result<f64> {
    if !(e.is_finite() && x0.is_finite()) {
        return invalid("energy and position must be finite");
    }
    let lambda = if x0 == 0.0 {
        let a = airy_scaled(-2.0 * e);
        -a.aip / a.ai
    } else {
        let k = parts(e, x0, form);
        -k.q / k.p
    };
    if !lambda.is_finite() || lambda.abs() > LAMBDA_POLE {
        return Err(SpectrumError::Pole {
            what: "λ(E)",
            energy: e,
            distance: f64::NAN,
        });
    }
    Ok(lambda)
}

/// Bound-state function whose sign changes are the levels.
fn bound_state_fn(lambda: f64, x0: f64, form: KernelForm) -> impl Fn(f64) -> f64 {
    move |e: f64| {
        if x0 == 0.0 {
            let a = airy_scaled(-2.0 * e);
            a.aip + lambda * a.ai
        } else {
            let k = parts(e, x0, form);
            k.q + lambda * k.p
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSolveResult {
    /// 1-based; branch 1 is the one below the lowest visible level.
    pub branch: usize,
    /// `−∞` for branch 1.
    pub pole_left: f64,
    pub pole_right: f64,
    pub energy: f64,
    /// `|λ(E) − λ|` at the solution.
    pub residual: f64,
}

fn root_opts() -> RootOptions {
    RootOptions::default().with_x_tol(1e-15)
}

/// Unperturbed levels that carry weight at `x₀`, i.e. the poles of `G`.
fn visible_poles(x0: f64, count: usize) -> Vec<f64> {
    if x0 == 0.0 {
        symmetric_energies(count)
    } else {
        unperturbed_energies(count)
    }
}

/// Extends `[lo, top]` downwards until `f` changes sign over it.
fn ground_bracket(f: &impl Fn(f64) -> f64, top: f64) -> Result<(f64, f64)> {
    let f_top = f(top);
    let mut width = 1.0;
    for _ in 0..80 {
        let lo = top - width;
        let f_lo = f(lo);
        if f_lo.signum() != f_top.signum() || f_lo == 0.0 {
            return Ok((lo, top));
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

fn residual(e: f64, params: &DeltaParams, form: KernelForm) -> f64 {
    lambda_of_energy(e, params.x0, form).map_or(f64::NAN, |l| (l - params.lambda).abs())
}

/// Solves the given branch of the exact (or centred) bound-state equation.
pub fn solve_branch(
    params: &DeltaParams,
    branch: usize,
    form: KernelForm,
) -> Result<BranchSolveResult> {
    if branch == 0 {
        return invalid("branches are numbered from 1");
    }
    let poles = visible_poles(params.x0, branch);
    let right = poles[branch - 1];
    let left = if branch == 1 {
        f64::NEG_INFINITY
    } else {
        poles[branch - 2]
    };
    let f = bound_state_fn(params.lambda, params.x0, form);
    if form == KernelForm::AiryProduct && params.x0 != 0.0 {
        // No monotonicity guarantee: take the lowest sign change in the interval.
        let lo = if branch == 1 {
            ground_bracket(&f, right)?.0
        } else {
            left
        };
        let found = product_roots(&f, lo, right)?;
        let energy = *found.first().ok_or(SpectrumError::BranchExhausted {
            requested: 1,
            found: 0,
        })?;
        return Ok(BranchSolveResult {
            branch,
            pole_left: left,
            pole_right: right,
            energy,
            residual: residual(energy, params, form),
        });
    }
    let (lo, hi) = if branch == 1 {
        if params.lambda <= 0.0 {
            return Err(SpectrumError::BranchExhausted {
                requested: 1,
                found: 0,
            });
        }
        ground_bracket(&f, right)?
    } else {
        (left, right)
    };
    let root = solve_bracketed(&f, lo, hi, root_opts())?;
    Ok(BranchSolveResult {
        branch,
        pole_left: left,
        pole_right: right,
        energy: root.x,
        residual: residual(root.x, params, form),
    })
}

fn product_roots(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Vec<f64>> {
    let step = (hi - lo) / 256.0;
    let mut roots = Vec::new();
    for (a, b) in scan_sign_changes(f, lo, hi, step) {
        roots.push(if a == b {
            a
        } else {
            solve_bracketed(f, a, b, root_opts())?.x
        });
    }
    Ok(roots)
}

/// The `k` lowest eigenvalues of `H0 − λδ(x − x₀)`.
pub fn delta_spectrum(params: &DeltaParams, k: usize, form: KernelForm) -> Result<EigenResult> {
    if k == 0 {
        return invalid("level count must be at least 1");
    }
    DeltaParams::new(params.lambda, params.x0)?;
    if params.lambda == 0.0 {
        return Ok(unperturbed_result(k));
    }
    let centred = params.x0 == 0.0;
    let parity = if centred {
        Parity::Symmetric
    } else {
        Parity::Indefinite
    };
    let mut levels = Vec::with_capacity(k + 1);
    if centred {
        for (i, e) in antisymmetric_energies(k).into_iter().enumerate() {
            levels.push(level(
                e,
                Parity::Antisymmetric,
                LevelOrigin::Invariant,
                0.0,
                2 * i + 2,
            ));
        }
    }
    let f = bound_state_fn(params.lambda, params.x0, form);
    let poles = visible_poles(params.x0, k + 1);

    if form == KernelForm::AiryProduct && !centred {
        let lo = ground_bracket(&f, poles[0]).map_or(poles[0] - 1.0, |b| b.0);
        let mut edges = vec![lo];
        edges.extend(poles.iter().copied());
        for w in edges.windows(2) {
            for e in product_roots(&f, w[0], w[1])? {
                levels.push(level(
                    e,
                    parity,
                    LevelOrigin::Branch,
                    residual(e, params, form),
                    0,
                ));
            }
        }
        let found = levels.len();
        if found < k {
            return Err(SpectrumError::BranchExhausted {
                requested: k,
                found,
            });
        }
        return Ok(EigenResult::from_unsorted(levels, k, DEGENERACY_TOL));
    }

    let first = if params.lambda > 0.0 { 1 } else { 2 };
    for branch in first..=k + 1 {
        let r = solve_branch(params, branch, form)?;
        levels.push(level(r.energy, parity, LevelOrigin::Branch, r.residual, 0));
    }
    Ok(EigenResult::from_unsorted(levels, k, DEGENERACY_TOL))
}

/// Levels closer than this are flagged as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

fn level(energy: f64, parity: Parity, origin: LevelOrigin, residual: f64, index: usize) -> Level {
    Level {
        index,
        energy,
        parity,
        residual,
        origin,
        degenerate: false,
    }
}

pub(crate) fn unperturbed_result(k: usize) -> EigenResult {
    let levels = (1..=k)
        .map(|n| {
            let l = unperturbed_level(n).expect("n ≥ 1");
            level(l.energy, l.parity, LevelOrigin::Unperturbed, 0.0, n)
        })
        .collect();
    EigenResult::from_unsorted(levels, k, DEGENERACY_TOL)
}

/// Options shared by the inverse-problem scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseOptions {
    pub form: KernelForm,
    /// Sampling step of the sign-change scan.
    pub step: f64,
}

impl Default for InverseOptions {
    fn default() -> Self {
        InverseOptions {
            form: KernelForm::Exact,
            step: 1e-3,
        }
    }
}

/// One impurity `(x₀, λ)` that makes both target energies bound states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseSolution {
    pub x0: f64,
    pub lambda: f64,
    /// `|G(x₀, x₀; E₁) − G(x₀, x₀; E₂)|`, relative to `|G(x₀, x₀; E₁)|`.
    pub ratio_residual: f64,
    /// `|λ(E₂; x₀) − λ|`.
    pub lambda_residual: f64,
}

/// All `x₀` in `search` at which a single δ impurity has both `e1` and `e2`
/// among its levels, each paired with the required coupling. Solutions come
/// in `±x₀` pairs and need not be unique.
pub fn inverse_design(
    e1: f64,
    e2: f64,
    search: (f64, f64),
    max_solutions: usize,
    opts: InverseOptions,
) -> Result<Vec<InverseSolution>> {
    validate_pair(e1, e2)?;
    if !(opts.step > 0.0) {
        return invalid("scan step must be positive");
    }
    let (lo, hi) = search;
    if !(lo < hi) || max_solutions == 0 {
        return Ok(Vec::new());
    }
    let g = |x0: f64, e: f64| {
        let k = parts(e, x0, opts.form);
        -k.p / k.q
    };
    let h = |x0: f64| g(x0, e1) - g(x0, e2);
    let mut out = Vec::new();
    for (a, b) in scan_sign_changes(h, lo, hi, opts.step) {
        let x0 = if a == b {
            a
        } else {
            solve_bracketed(h, a, b, root_opts())?.x
        };
        let g1 = g(x0, e1);
        let lambda = 1.0 / g1;
        let lambda_residual =
            lambda_of_energy(e2, x0, opts.form).map_or(f64::NAN, |l| (l - lambda).abs());
        out.push(InverseSolution {
            x0,
            lambda,
            ratio_residual: (h(x0) / g1).abs(),
            lambda_residual,
        });
        if out.len() >= max_solutions {
            break;
        }
    }
    Ok(out)
}

fn validate_pair(e1: f64, e2: f64) -> Result<()> {
    if !(e1.is_finite() && e2.is_finite()) {
        return invalid("target energies must be finite");
    }
    if e1 == e2 {
        return invalid(format!("target energies must differ, got E1 = E2 = {e1}"));
    }
    if e1 > e2 {
        return invalid(format!("expected E1 < E2, got {e1} > {e2}"));
    }
    check_off_pole(e1, "the diagonal kernel")?;
    check_off_pole(e2, "the diagonal kernel")
}

/// A second level compatible with a given impurity position and first level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompatiblePair {
    pub e2: f64,
    /// The coupling that binds `E1` at `x₀` (common to all pairs).
    pub lambda: f64,
    /// `|λ(E₂; x₀) − λ|`; NaN where `λ(E₂)` is undefined (levels the impurity
    /// cannot see, which are compatible with any coupling).
    pub residual: f64,
}

/// Every `E₂` in `range` such that `(e1, E₂)` are simultaneously levels of
/// the impurity at `x0` that binds `e1`.
pub fn compatible_pairs(
    x0: f64,
    e1: f64,
    range: (f64, f64),
    opts: InverseOptions,
) -> Result<Vec<CompatiblePair>> {
    check_off_pole(e1, "the diagonal kernel")?;
    if !(opts.step > 0.0) {
        return invalid("scan step must be positive");
    }
    let g1 = {
        let k = parts(e1, x0, opts.form);
        -k.p / k.q
    };
    let lambda = 1.0 / g1;
    // G(E₂) = G₁ written without poles: −P(E₂) − G₁·Q(E₂) = 0; the trivial
    // root E₂ = E₁ is dropped.
    let h = |e: f64| {
        let k = parts(e, x0, opts.form);
        -k.p - g1 * k.q
    };
    let (lo, hi) = range;
    if !(lo < hi) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (a, b) in scan_sign_changes(h, lo, hi, opts.step) {
        let e2 = if a == b {
            a
        } else {
            solve_bracketed(h, a, b, root_opts())?.x
        };
        if (e2 - e1).abs() < 1e-7 {
            continue;
        }
        let residual = lambda_of_energy(e2, x0, opts.form).map_or(f64::NAN, |l| (l - lambda).abs());
        out.push(CompatiblePair {
            e2,
            lambda,
            residual,
        });
    }
    Ok(out)
}
