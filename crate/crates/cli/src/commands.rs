//! One function per subcommand. Each returns the table to emit plus an exit
//! status; numeric failures inside sweeps become `NaN` cells instead.

use conic_core::airy::{ai, ai_prime, ai_zeros, aip_zeros, bi, bi_prime};
use conic_core::delta::{
    compatible_pairs, delta_spectrum, inverse_design, lambda_of_energy, DeltaParams,
    InverseOptions, KernelForm,
};
use conic_core::fd::{fd_spectrum, Interaction, OracleSpec};
use conic_core::local::{local_spectrum, LocalDDPParams};
use conic_core::nonlocal::{
    defect_function, defect_function_closed, nonlocal_spectrum, series_spectrum, solve_branch,
    NonlocalParams,
};
use conic_core::spectrum::{
    airy_product_kernel, green_eigen_series, green_function, symmetric_energies, Eigenbasis,
};
use conic_core::{EigenResult, SpectrumError};
use rayon::prelude::*;

use crate::args::{AiryArgs, Figure, GreenArgs, InverseArgs, Levels, Model, VerifyModel};
use crate::output::{Cell, Table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Solver(String),
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::InvalidInput(msg) => CliError::Usage(msg),
            other => CliError::Solver(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Ran, but found nothing to report.
    Empty,
    /// At least one verification row failed.
    Failed,
}

pub struct Report {
    pub table: Table,
    pub notes: Vec<String>,
    pub status: Status,
}

impl Report {
    fn ok(table: Table) -> Self {
        Report {
            table,
            notes: Vec::new(),
            status: Status::Ok,
        }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

/// Settings shared by all subcommands.
#[derive(Debug, Clone, Copy)]
pub struct Common {
    pub kernel: KernelForm,
    pub tol: f64,
    pub trunc: Option<usize>,
}

const LEVEL_COLUMNS: [&str; 6] = [
    "level",
    "energy",
    "parity",
    "residual",
    "origin",
    "degenerate",
];

fn level_cells(r: &EigenResult, prefix: Vec<Cell>) -> Vec<Vec<Cell>> {
    r.levels
        .iter()
        .map(|l| {
            let mut row = prefix.clone();
            row.extend([
                l.index.into(),
                l.energy.into(),
                l.parity.to_string().into(),
                l.residual.into(),
                l.origin.to_string().into(),
                l.degenerate.into(),
            ]);
            row
        })
        .collect()
}

fn kernel_name(k: KernelForm) -> &'static str {
    match k {
        KernelForm::Exact => "kernel=exact",
        KernelForm::AiryProduct => "kernel=product",
    }
}

fn degeneracy(levels: &Levels) -> Result<f64, CliError> {
    let t = levels.degeneracy_tol;
    if !(t.is_finite() && t >= 0.0) {
        return Err(CliError::Usage(format!(
            "--degeneracy-tol must be non-negative, got {t}"
        )));
    }
    Ok(t)
}

pub fn spectrum(model: &Model, c: Common) -> Result<Report, CliError> {
    match model {
        Model::Delta { p, levels } => {
            let r = delta_spectrum(&DeltaParams::new(p.lambda, p.x0)?, levels.k, c.kernel)?
                .with_degeneracy_tol(degeneracy(levels)?);
            let mut t = Table::new(["model", "lambda", "x0"].into_iter().chain(LEVEL_COLUMNS));
            for row in level_cells(&r, vec!["delta".into(), p.lambda.into(), p.x0.into()]) {
                t.push(row);
            }
            Ok(Report::ok(t).note(kernel_name(c.kernel)))
        }
        Model::NonlocalDp { p, levels } => {
            let params = NonlocalParams::new(p.beta)?;
            let (r, mode) = match c.trunc {
                Some(n) => (
                    series_spectrum(&params, levels.k, n)?,
                    format!("mode=series(N={n})"),
                ),
                None => (
                    nonlocal_spectrum(&params, levels.k)?,
                    "mode=closed-form".to_string(),
                ),
            };
            let r = r.with_degeneracy_tol(degeneracy(levels)?);
            let mut t = Table::new(["model", "beta"].into_iter().chain(LEVEL_COLUMNS));
            for row in level_cells(&r, vec!["nonlocal-dp".into(), p.beta.into()]) {
                t.push(row);
            }
            let pairs = r.degenerate_pairs();
            let mut rep = Report::ok(t).note(mode);
            if !pairs.is_empty() {
                let list: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                rep = rep.note(format!("degenerate_pairs={}", list.join(";")));
            }
            Ok(rep)
        }
        Model::LocalDdp { p, levels } => {
            let r = local_spectrum(&LocalDDPParams::new(p.a, p.b)?, levels.k)?
                .with_degeneracy_tol(degeneracy(levels)?);
            let mut t = Table::new(["model", "a", "b"].into_iter().chain(LEVEL_COLUMNS));
            for row in level_cells(&r, vec!["local-ddp".into(), p.a.into(), p.b.into()]) {
                t.push(row);
            }
            Ok(Report::ok(t))
        }
    }
}

fn check_count(k: usize) -> Result<(), CliError> {
    if k == 0 {
        return Err(CliError::Usage("level count must be at least 1".into()));
    }
    Ok(())
}

/// Long-format level curves: one row per (sweep point, level).
fn level_curves<F>(axis: &str, points: &[f64], prefix: &[(&str, f64)], k: usize, solve: F) -> Table
where
    F: Fn(f64) -> Result<EigenResult, SpectrumError> + Sync,
{
    let results: Vec<Option<EigenResult>> = points.par_iter().map(|&v| solve(v).ok()).collect();
    let mut t = Table::new(
        prefix
            .iter()
            .map(|(n, _)| *n)
            .chain([axis, "level", "energy", "parity"]),
    );
    for (v, r) in points.iter().zip(&results) {
        for n in 0..k {
            let mut row: Vec<Cell> = prefix.iter().map(|(_, x)| Cell::Num(*x)).collect();
            row.push((*v).into());
            row.push((n + 1).into());
            match r.as_ref().and_then(|r| r.levels.get(n)) {
                Some(l) => {
                    row.push(l.energy.into());
                    row.push(l.parity.to_string().into());
                }
                None => {
                    row.push(f64::NAN.into());
                    row.push("".into());
                }
            }
            t.push(row);
        }
    }
    t
}

fn coupling_curve(energies: &[f64], x0: f64, form: KernelForm) -> Table {
    let values: Vec<f64> = energies
        .par_iter()
        .map(|&e| lambda_of_energy(e, x0, form).unwrap_or(f64::NAN))
        .collect();
    let mut t = Table::new(["x0", "energy", "lambda"]);
    for (e, l) in energies.iter().zip(values) {
        t.push(vec![x0.into(), (*e).into(), l.into()]);
    }
    t
}

pub fn sweep(figure: &Figure, c: Common) -> Result<Report, CliError> {
    let kernel = kernel_name(c.kernel);
    match figure {
        Figure::Fig1 { energy } => Ok(Report::ok(coupling_curve(&energy.points(), 0.0, c.kernel))),
        Figure::Fig2 { lambda, k } => {
            check_count(*k)?;
            let t = level_curves("lambda", &lambda.points(), &[("x0", 0.0)], *k, |l| {
                delta_spectrum(&DeltaParams::new(l, 0.0)?, *k, c.kernel)
            });
            Ok(Report::ok(t))
        }
        Figure::Fig3 { energy, x0 } => {
            Ok(Report::ok(coupling_curve(&energy.points(), *x0, c.kernel)).note(kernel))
        }
        Figure::Fig4 { lambda, x0, k } => {
            check_count(*k)?;
            let mut all: Option<Table> = None;
            for &x in x0 {
                let t = level_curves("lambda", &lambda.points(), &[("x0", x)], *k, |l| {
                    delta_spectrum(&DeltaParams::new(l, x)?, *k, c.kernel)
                });
                match &mut all {
                    None => all = Some(t),
                    Some(a) => a.rows.extend(t.rows),
                }
            }
            let t = all.ok_or_else(|| CliError::Usage("at least one x0 is required".into()))?;
            Ok(Report::ok(t).note(kernel))
        }
        Figure::Fig6 { x0, e1, e2 } => {
            let opts = InverseOptions {
                form: c.kernel,
                step: e2.step.unwrap_or(InverseOptions::default().step),
            };
            let pts = e1.points();
            let found: Vec<Result<_, SpectrumError>> = pts
                .par_iter()
                .map(|&e| compatible_pairs(*x0, e, (e2.start, e2.stop), opts))
                .collect();
            let mut t = Table::new(["x0", "E1", "lambda", "E2", "residual"]);
            for (e, pairs) in pts.iter().zip(found) {
                match pairs {
                    Ok(pairs) => {
                        for p in pairs {
                            t.push(vec![
                                (*x0).into(),
                                (*e).into(),
                                p.lambda.into(),
                                p.e2.into(),
                                p.residual.into(),
                            ]);
                        }
                    }
                    // E₁ on a pole of the kernel: nothing binds it here.
                    Err(_) => t.push(vec![
                        (*x0).into(),
                        (*e).into(),
                        f64::NAN.into(),
                        f64::NAN.into(),
                        f64::NAN.into(),
                    ]),
                }
            }
            Ok(Report::ok(t).note(kernel))
        }
        Figure::Fig7 { energy, x } => {
            let n = c.trunc.unwrap_or(200);
            let grid = x.points();
            let d = defect_function(*energy, n, &grid)?;
            let mut t = Table::new(["x", "series", "closed_form"]);
            for (xi, v) in grid.iter().zip(&d.values) {
                let closed = defect_function_closed(*xi, *energy).unwrap_or(f64::NAN);
                t.push(vec![(*xi).into(), (*v).into(), closed.into()]);
            }
            Ok(Report::ok(t)
                .note(format!("E={energy}"))
                .note(format!("terms={n}")))
        }
        Figure::Fig8 { beta, k } => {
            check_count(*k)?;
            let pts = beta.points();
            let odd = symmetric_energies(k.div_ceil(2));
            let curves: Vec<Vec<f64>> = pts
                .par_iter()
                .map(|&b| {
                    (1..=k / 2)
                        .map(|m| solve_branch(b, m).unwrap_or(f64::NAN))
                        .collect()
                })
                .collect();
            let mut t = Table::new(["beta", "level", "energy", "parity"]);
            for (b, even) in pts.iter().zip(&curves) {
                for n in 1..=*k {
                    let (e, parity) = if n % 2 == 1 {
                        (odd[n / 2], "symmetric")
                    } else {
                        (even[n / 2 - 1], "antisymmetric")
                    };
                    t.push(vec![(*b).into(), n.into(), e.into(), parity.into()]);
                }
            }
            Ok(Report::ok(t).note("levels labelled E2m(beta) and E2m-1(0)"))
        }
        Figure::Fig9 { a, b, k } => {
            check_count(*k)?;
            let t = level_curves("b", &b.points(), &[("a", *a)], *k, |bv| {
                local_spectrum(&LocalDDPParams::new(*a, bv)?, *k)
            });
            Ok(Report::ok(t))
        }
    }
}

pub fn inverse(args: &InverseArgs, c: Common) -> Result<Report, CliError> {
    let opts = InverseOptions {
        form: c.kernel,
        ..InverseOptions::default()
    };
    let search = (args.x0_range.start, args.x0_range.stop);
    let sols = inverse_design(args.e1, args.e2, search, args.max_solutions, opts)?;
    let mut t = Table::new([
        "E1",
        "E2",
        "x0",
        "lambda",
        "ratio_residual",
        "lambda_residual",
    ]);
    for s in &sols {
        t.push(vec![
            args.e1.into(),
            args.e2.into(),
            s.x0.into(),
            s.lambda.into(),
            s.ratio_residual.into(),
            s.lambda_residual.into(),
        ]);
    }
    let status = if sols.is_empty() {
        Status::Empty
    } else {
        Status::Ok
    };
    Ok(Report {
        table: t,
        notes: vec![kernel_name(c.kernel).into()],
        status,
    })
}

fn comparison(analytic: &[f64], oracle: &[f64], tol: f64) -> (Table, Status) {
    let mut t = Table::new(["level", "analytic", "oracle", "diff", "pass"]);
    let mut status = Status::Ok;
    for (i, (a, o)) in analytic.iter().zip(oracle).enumerate() {
        let d = (a - o).abs();
        let pass = d <= tol;
        if !pass {
            status = Status::Failed;
        }
        t.push(vec![
            (i + 1).into(),
            (*a).into(),
            (*o).into(),
            d.into(),
            pass.into(),
        ]);
    }
    if analytic.len() != oracle.len() {
        status = Status::Failed;
    }
    (t, status)
}

pub fn verify(model: &VerifyModel, c: Common) -> Result<Report, CliError> {
    let (analytic, oracle, notes) = match model {
        VerifyModel::Delta { p, grid } => {
            let spec = OracleSpec::new(grid.half_width, grid.h, grid.k)?;
            let a =
                delta_spectrum(&DeltaParams::new(p.lambda, p.x0)?, grid.k, c.kernel)?.energies();
            let o = fd_spectrum(
                &spec,
                Interaction::Delta {
                    lambda: p.lambda,
                    x0: p.x0,
                },
            )?;
            (
                a,
                o,
                vec![
                    format!(
                        "oracle=finite-difference(L={},h={})",
                        grid.half_width, grid.h
                    ),
                    kernel_name(c.kernel).into(),
                ],
            )
        }
        VerifyModel::LocalDdp { p, grid } => {
            let spec = OracleSpec::new(grid.half_width, grid.h, grid.k)?;
            let a = local_spectrum(&LocalDDPParams::new(p.a, p.b)?, grid.k)?.energies();
            let o = fd_spectrum(&spec, Interaction::LocalDdp { a: p.a, b: p.b })?;
            (
                a,
                o,
                vec![format!(
                    "oracle=finite-difference(L={},h={})",
                    grid.half_width, grid.h
                )],
            )
        }
        VerifyModel::NonlocalDp { p, k } => {
            let n = c.trunc.unwrap_or(10_000);
            let params = NonlocalParams::new(p.beta)?;
            let a = nonlocal_spectrum(&params, *k)?.energies();
            let o = series_spectrum(&params, *k, n)?.energies();
            (a, o, vec![format!("oracle=series(N={n}); finite-difference oracle not applicable to the nonlocal model")])
        }
    };
    let (table, status) = comparison(&analytic, &oracle, c.tol);
    Ok(Report {
        table,
        notes,
        status,
    })
}

pub fn green(args: &GreenArgs, c: Common) -> Result<Report, CliError> {
    let n = c.trunc.unwrap_or(1000);
    if n == 0 {
        return Err(CliError::Usage("truncation must be at least 1".into()));
    }
    let basis = Eigenbasis::new(n);
    let e = args.energy;
    green_function(0.0, 0.0, e)?;
    let pairs: Vec<(f64, f64)> = args
        .x
        .points()
        .into_iter()
        .flat_map(|x| args.y.points().into_iter().map(move |y| (x, y)))
        .collect();
    let rows: Vec<Vec<Cell>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let exact = green_function(x, y, e).unwrap_or(f64::NAN);
            let product = airy_product_kernel(x, y, e).unwrap_or(f64::NAN);
            let series = green_eigen_series(&basis, x, y, e).map_or(f64::NAN, |s| s.value());
            vec![
                x.into(),
                y.into(),
                e.into(),
                exact.into(),
                product.into(),
                series.into(),
                (exact - series).abs().into(),
            ]
        })
        .collect();
    let mut t = Table::new([
        "x",
        "y",
        "E",
        "exact",
        "airy_product",
        "series",
        "series_diff",
    ]);
    t.rows = rows;
    Ok(Report::ok(t).note(format!("terms={n}")))
}

pub fn airy(args: &AiryArgs) -> Result<Report, CliError> {
    if let Some(n) = args.zeros {
        if n == 0 {
            return Err(CliError::Usage("zero count must be at least 1".into()));
        }
        let (a, ap) = (ai_zeros(n), aip_zeros(n));
        let mut t = Table::new(["n", "ai_zero", "aip_zero"]);
        for i in 0..n {
            t.push(vec![(i + 1).into(), a[i].into(), ap[i].into()]);
        }
        return Ok(Report::ok(t));
    }
    let x = args
        .x
        .ok_or_else(|| CliError::Usage("either --x or --zeros is required".into()))?;
    let mut t = Table::new(["x", "ai", "aip", "bi", "bip"]);
    for v in x.points() {
        t.push(vec![
            v.into(),
            ai(v).into(),
            ai_prime(v).into(),
            bi(v).into(),
            bi_prime(v).into(),
        ]);
    }
    Ok(Report::ok(t))
}
