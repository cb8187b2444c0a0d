//! End-to-end acceptance checks. Runs without the libtest harness so that the
//! per-criterion verdicts are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use conic_core::airy::{ai, ai_prime};
use conic_core::delta::{
    compatible_pairs, delta_spectrum, inverse_design, DeltaParams, InverseOptions, KernelForm,
};
use conic_core::fd::{fd_spectrum, Interaction, OracleSpec};
use conic_core::local::{local_spectrum, LocalDDPParams};
use conic_core::nonlocal::{
    beta0, bound_state_series, inverse_beta_of_energy, nonlocal_spectrum, solve_branch,
    NonlocalParams,
};
use conic_core::spectrum::{
    antisymmetric_energies, green_eigen_series, green_function, symmetric_energies,
    unperturbed_energies, unperturbed_energy, Eigenbasis,
};
use conic_core::Parity;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, format!("took {t:.2?}, budget {budget:?}"))
}

fn max_err(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn crossing_constant() -> Check {
    let t = Instant::now();
    let b0 = -ai(0.0) / ai_prime(0.0);
    ensure((b0 - 1.37172).abs() < 1e-4, format!("−Ai(0)/Ai′(0) = {b0}"))?;
    let e1 = unperturbed_energy(1).map_err(|e| e.to_string())?;
    // E₂(β) − E₁(0) is decreasing in β; plain bisection on [0.5, 3].
    let g = |beta: f64| {
        solve_branch(beta, 1)
            .map(|e| e - e1)
            .map_err(|e| e.to_string())
    };
    let (mut lo, mut hi) = (0.5, 3.0);
    ensure(
        g(lo)? > 0.0 && g(hi)? < 0.0,
        "crossing not bracketed by [0.5, 3]",
    )?;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    ensure(
        (root - b0).abs() < 1e-6,
        format!("bisection root {root} vs β₀ = {b0}"),
    )?;
    within_budget(t, Duration::from_secs(1))?;
    Ok(format!("β₀ = {b0:.8}, bisection root = {root:.8}"))
}

fn inverse_worked_example() -> Check {
    let t = Instant::now();
    let opts = InverseOptions {
        form: KernelForm::AiryProduct,
        ..InverseOptions::default()
    };
    let pairs = compatible_pairs(1.2557, 0.3333, (0.4, 2.2), opts).map_err(|e| e.to_string())?;
    let found: Vec<f64> = pairs.iter().map(|p| p.e2).collect();
    for target in [0.7158, 1.5423, 1.9791] {
        ensure(
            found.iter().any(|e| (e - target).abs() < 2e-3),
            format!("E₂ = {target} missing from {found:?}"),
        )?;
    }
    let sols = inverse_design(0.3333, 0.7158, (1.0, 1.5), 4, opts).map_err(|e| e.to_string())?;
    let best = sols
        .iter()
        .min_by(|a, b| (a.x0 - 1.2557).abs().total_cmp(&(b.x0 - 1.2557).abs()))
        .ok_or("no inverse solution near x₀ = 1.2557")?;
    ensure((best.x0 - 1.2557).abs() < 2e-3, format!("x₀ = {}", best.x0))?;
    ensure(
        (best.lambda - 1.3602).abs() < 2e-3,
        format!("λ = {}", best.lambda),
    )?;
    within_budget(t, Duration::from_secs(5))?;
    Ok(format!(
        "E₂ ∈ {found:.4?}, x₀ = {:.5}, λ = {:.5}",
        best.x0, best.lambda
    ))
}

fn parity_invariance() -> Check {
    let t = Instant::now();
    let even = antisymmetric_energies(5);
    let spec = OracleSpec::new(20.0, 1e-3, 6).map_err(|e| e.to_string())?;
    let mut worst_fd: f64 = 0.0;
    for i in 0..50 {
        let lambda = -5.0 + 10.0 * i as f64 / 49.0;
        let s = delta_spectrum(
            &DeltaParams::new(lambda, 0.0).map_err(|e| e.to_string())?,
            6,
            KernelForm::Exact,
        )
        .map_err(|e| e.to_string())?;
        let fd = fd_spectrum(&spec, Interaction::Delta { lambda, x0: 0.0 })
            .map_err(|e| e.to_string())?;
        let mut count = 0;
        for (j, level) in s
            .levels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.parity == Parity::Antisymmetric)
        {
            let exact = even[count];
            count += 1;
            ensure(
                (level.energy - exact).abs() <= 1e-12,
                format!("λ = {lambda}: analytic level {} off", level.index),
            )?;
            worst_fd = worst_fd.max((fd[j] - exact).abs());
        }
        ensure(
            count >= 2,
            format!("λ = {lambda}: too few antisymmetric levels"),
        )?;
    }
    ensure(worst_fd < 2e-3, format!("oracle deviation {worst_fd:e}"))?;
    within_budget(t, Duration::from_secs(300))?;
    Ok(format!(
        "50 couplings, worst oracle deviation {worst_fd:.2e}"
    ))
}

fn odd_level_invariance() -> Check {
    let odd = symmetric_energies(5);
    for i in 0..50 {
        let beta = -5.0 + 10.0 * i as f64 / 49.0;
        let s = nonlocal_spectrum(&NonlocalParams::new(beta).map_err(|e| e.to_string())?, 8)
            .map_err(|e| e.to_string())?;
        let top = s.levels.last().map_or(0.0, |l| l.energy);
        for e in odd.iter().filter(|&&e| e <= top) {
            ensure(
                s.levels.iter().any(|l| (l.energy - e).abs() <= 1e-12),
                format!("β = {beta}: level {e} moved"),
            )?;
        }
    }
    let mut worst: f64 = 0.0;
    for (n, e) in odd.iter().enumerate() {
        let branch = solve_branch(beta0(), n + 1).map_err(|e| e.to_string())?;
        worst = worst.max((branch - e).abs());
    }
    ensure(worst < 1e-8, format!("degeneracy defect {worst:e}"))?;
    let s =
        nonlocal_spectrum(&NonlocalParams::new(beta0()).unwrap(), 10).map_err(|e| e.to_string())?;
    ensure(
        s.degenerate_pairs().len() == 5,
        "degenerate pairs not flagged",
    )?;
    Ok(format!(
        "50 couplings invariant, degeneracy defect at β₀ {worst:.1e}"
    ))
}

fn series_equivalence() -> Check {
    let mut notes = Vec::new();
    for e in [-1.0, 0.2, 0.4, 0.9] {
        let f = inverse_beta_of_energy(e).map_err(|e| e.to_string())?;
        let mut raw = Vec::new();
        for n in [100, 1000, 10_000] {
            raw.push((bound_state_series(e, n).map_err(|e| e.to_string())?.partial - f).abs());
        }
        let slope = (raw[2] / raw[0]).log10() / 2.0;
        ensure(
            (slope + 1.0 / 3.0).abs() <= 0.1,
            format!("E = {e}: slope {slope}"),
        )?;
        let corrected = (bound_state_series(e, 10_000)
            .map_err(|e| e.to_string())?
            .value()
            - f)
            .abs();
        ensure(
            corrected < 5e-3,
            format!("E = {e}: corrected residual {corrected:e}"),
        )?;
        notes.push(format!("E={e}: slope {slope:.3}, residual {corrected:.1e}"));
    }
    Ok(notes.join("; "))
}

fn green_identity() -> Check {
    let g = green_function(0.0, 0.0, 0.0).map_err(|e| e.to_string())?;
    ensure((g - 1.37172).abs() < 1e-5, format!("G(0,0;0) = {g}"))?;
    let basis = Eigenbasis::new(1000);
    let mut worst: f64 = 0.0;
    for i in 0..=20 {
        for j in 0..=20 {
            let (x, y) = (-2.0 + 0.2 * i as f64, -2.0 + 0.2 * j as f64);
            let exact = green_function(x, y, -1.0).map_err(|e| e.to_string())?;
            let series = green_eigen_series(&basis, x, y, -1.0).map_err(|e| e.to_string())?;
            worst = worst.max((exact - series.value()).abs());
        }
    }
    ensure(worst < 1e-3, format!("sup difference {worst:e}"))?;
    Ok(format!("G(0,0;0) = {g:.7}, sup difference {worst:.1e}"))
}

fn local_reduction() -> Check {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        for j in 0..10 {
            let a = -3.0 + 8.0 * i as f64 / 9.0;
            let b = -4.05 + 8.1 * j as f64 / 9.0;
            let p = LocalDDPParams::new(a, b).map_err(|e| e.to_string())?;
            let l = local_spectrum(&p, 6).map_err(|e| e.to_string())?.energies();
            let d = delta_spectrum(
                &DeltaParams::new(p.effective_lambda(), 0.0).unwrap(),
                6,
                KernelForm::Exact,
            )
            .map_err(|e| e.to_string())?
            .energies();
            worst = worst.max(max_err(&l, &d));
        }
    }
    ensure(worst <= 1e-10, format!("max difference {worst:e}"))?;
    let free = local_spectrum(&LocalDDPParams::new(0.0, 3.0).unwrap(), 8)
        .map_err(|e| e.to_string())?
        .energies();
    ensure(
        free == unperturbed_energies(8),
        "a = 0 is not the unperturbed spectrum",
    )?;
    Ok(format!("10×10 grid, max difference {worst:.1e}"))
}

fn oracle_concordance() -> Check {
    let cases = [
        (
            "δ λ=2 x₀=0",
            Interaction::Delta {
                lambda: 2.0,
                x0: 0.0,
            },
        ),
        (
            "δ λ=2 x₀=0.5",
            Interaction::Delta {
                lambda: 2.0,
                x0: 0.5,
            },
        ),
        ("δ–δ′ a=1 b=2", Interaction::LocalDdp { a: 1.0, b: 2.0 }),
    ];
    let mut notes = Vec::new();
    for (name, interaction) in cases {
        let exact = match interaction {
            Interaction::Delta { lambda, x0 } => {
                delta_spectrum(&DeltaParams::new(lambda, x0).unwrap(), 5, KernelForm::Exact)
            }
            Interaction::LocalDdp { a, b } => {
                local_spectrum(&LocalDDPParams::new(a, b).unwrap(), 5)
            }
            Interaction::None => unreachable!(),
        }
        .map_err(|e| e.to_string())?
        .energies();
        let t = Instant::now();
        let fine = fd_spectrum(&OracleSpec::new(20.0, 1e-3, 5).unwrap(), interaction)
            .map_err(|e| e.to_string())?;
        within_budget(t, Duration::from_secs(10))?;
        let err = max_err(&fine, &exact);
        ensure(err < 1e-2, format!("{name}: deviation {err:e}"))?;
        let coarse = fd_spectrum(&OracleSpec::new(20.0, 4e-3, 5).unwrap(), interaction)
            .map_err(|e| e.to_string())?;
        let slope = (max_err(&coarse, &exact) / err).log2() / 2.0;
        ensure(
            (0.9..=2.3).contains(&slope),
            format!("{name}: convergence slope {slope}"),
        )?;
        notes.push(format!("{name}: {err:.1e}, order {slope:.2}"));
    }
    Ok(notes.join("; "))
}

fn crossing_order() -> Check {
    let e1 = unperturbed_energy(1).map_err(|e| e.to_string())?;
    let at = |b: f64| solve_branch(b, 1).map_err(|e| e.to_string());
    ensure(at(0.5)? > e1, "E₂(0.5) ≤ E₁(0)")?;
    ensure(at(3.0)? < e1, "E₂(3) ≥ E₁(0)")?;
    // No pinching: the large-β curves keep descending through the level and
    // the higher branches stay clear of the unperturbed symmetric levels.
    let odd = symmetric_energies(4);
    let curve: Vec<f64> = [5.0, 10.0, 20.0, 50.0]
        .iter()
        .map(|&b| at(b))
        .collect::<Result<_, _>>()?;
    ensure(
        curve.windows(2).all(|w| w[1] < w[0]),
        "E₂(β) not decreasing for large β",
    )?;
    ensure(
        e1 - curve[3] > 0.1,
        format!("E₂(50) = {} pinned to E₁(0)", curve[3]),
    )?;
    for n in 2..=4 {
        let e = solve_branch(50.0, n).map_err(|e| e.to_string())?;
        ensure(
            (e - odd[n - 1]).abs() > 1e-2,
            format!("branch {n} pinned at β = 50"),
        )?;
    }
    Ok(format!(
        "E₂(0.5) = {:.5}, E₂(3) = {:.5}, E₂(50) = {:.5}, E₁(0) = {e1:.5}",
        at(0.5)?,
        at(3.0)?,
        curve[3]
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("crossing constant", crossing_constant),
        ("inverse-problem worked example", inverse_worked_example),
        ("parity invariance, centred δ", parity_invariance),
        ("odd-level invariance, nonlocal δ′", odd_level_invariance),
        ("series/closed-form equivalence", series_equivalence),
        ("Green-function identity", green_identity),
        ("local-model reduction", local_reduction),
        ("oracle concordance", oracle_concordance),
        ("level-crossing order", crossing_order),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {} ({name}) [{elapsed:.2?}]: {detail}",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{elapsed:.2?}]: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
