use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conic_core::delta::KernelForm;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "conic",
    version,
    about = "Spectra of the conic oscillator with point interactions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Pass/fail threshold for `verify` (default 1e-2).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Series truncation: eigenfunction terms for `green`, Ψ terms for
    /// `sweep fig7`, and the series-oracle level count for the nonlocal model.
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Closed form of the δ diagonal kernel off the origin.
    #[arg(long, global = true, value_enum, default_value_t = Kernel::Exact)]
    pub kernel: Kernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kernel {
    Exact,
    Product,
}

impl Kernel {
    pub fn form(self) -> KernelForm {
        match self {
            Kernel::Exact => KernelForm::Exact,
            Kernel::Product => KernelForm::AiryProduct,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest levels of one model.
    Spectrum {
        #[command(subcommand)]
        model: Model,
    },
    /// Figure datasets.
    Sweep {
        #[command(subcommand)]
        figure: Figure,
    },
    /// Positions and couplings of a δ impurity binding two given levels.
    Inverse(InverseArgs),
    /// Analytic levels against an independent oracle.
    Verify {
        #[command(subcommand)]
        model: VerifyModel,
    },
    /// Resolvent kernel of the unperturbed oscillator.
    Green(GreenArgs),
    /// Airy functions or their zeros.
    Airy(AiryArgs),
}

#[derive(Debug, Clone, Args)]
pub struct DeltaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub x0: f64,
}

#[derive(Debug, Clone, Args)]
pub struct NonlocalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct LocalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
}

/// Level count and the closeness at which adjacent levels are reported as degenerate.
#[derive(Debug, Clone, Args)]
pub struct Levels {
    #[arg(short, default_value_t = 5)]
    pub k: usize,
    #[arg(long = "degeneracy-tol", default_value_t = 1e-6)]
    pub degeneracy_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Model {
    Delta {
        #[command(flatten)]
        p: DeltaArgs,
        #[command(flatten)]
        levels: Levels,
    },
    #[command(name = "nonlocal-dp")]
    NonlocalDp {
        #[command(flatten)]
        p: NonlocalArgs,
        #[command(flatten)]
        levels: Levels,
    },
    #[command(name = "local-ddp")]
    LocalDdp {
        #[command(flatten)]
        p: LocalArgs,
        #[command(flatten)]
        levels: Levels,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Grid {
    /// Half-width of the box.
    #[arg(long = "L", default_value_t = 20.0)]
    pub half_width: f64,
    /// Grid step.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    #[arg(short, default_value_t = 5)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum VerifyModel {
    Delta {
        #[command(flatten)]
        p: DeltaArgs,
        #[command(flatten)]
        grid: Grid,
    },
    /// Checked against the truncated eigenfunction series (no grid oracle).
    #[command(name = "nonlocal-dp")]
    NonlocalDp {
        #[command(flatten)]
        p: NonlocalArgs,
        #[arg(short, default_value_t = 5)]
        k: usize,
    },
    #[command(name = "local-ddp")]
    LocalDdp {
        #[command(flatten)]
        p: LocalArgs,
        #[command(flatten)]
        grid: Grid,
    },
}

#[derive(Debug, Subcommand)]
pub enum Figure {
    /// Centred δ: λ(E) whose branches cut λ = const at the levels.
    Fig1 {
        #[arg(long, allow_hyphen_values = true, default_value = "-4:3:0.005")]
        energy: Range,
    },
    /// Centred δ: lowest levels against λ.
    Fig2 {
        #[arg(long, allow_hyphen_values = true, default_value = "-3:8:0.02")]
        lambda: Range,
        #[arg(short, default_value_t = 5)]
        k: usize,
    },
    /// Off-centre δ: λ(E).
    Fig3 {
        #[arg(long, allow_hyphen_values = true, default_value = "-4:3:0.005")]
        energy: Range,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
        x0: f64,
    },
    /// Off-centre δ: lowest levels against λ for several positions.
    Fig4 {
        #[arg(long, allow_hyphen_values = true, default_value = "-3:8:0.05")]
        lambda: Range,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0.05,0.2,0.5"
        )]
        x0: Vec<f64>,
        #[arg(short, default_value_t = 5)]
        k: usize,
    },
    /// Inverse problem: E₂ values compatible with each E₁ at fixed x₀.
    Fig6 {
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.2557)]
        x0: f64,
        #[arg(long = "E1", allow_hyphen_values = true, default_value = "0.3333")]
        e1: Range,
        /// Search window for E₂ and its scan step.
        #[arg(long = "E2", allow_hyphen_values = true, default_value = "-2:3:0.001")]
        e2: Range,
    },
    /// Defect function Ψ(x; E): truncated series against the closed form.
    Fig7 {
        #[arg(long = "E", allow_hyphen_values = true, default_value_t = -1.0)]
        energy: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "-4:4:0.01")]
        x: Range,
    },
    /// Nonlocal δ′: levels against β, labelled as E₂ₘ(β) and E₂ₘ₋₁(0).
    Fig8 {
        #[arg(long, allow_hyphen_values = true, default_value = "-2:6:0.01")]
        beta: Range,
        #[arg(short, default_value_t = 5)]
        k: usize,
    },
    /// Local δ–δ′: lowest levels against b at fixed a.
    Fig9 {
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        a: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "-5:5:0.01")]
        b: Range,
        #[arg(short, default_value_t = 5)]
        k: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct InverseArgs {
    #[arg(long = "E1", allow_hyphen_values = true)]
    pub e1: f64,
    #[arg(long = "E2", allow_hyphen_values = true)]
    pub e2: f64,
    /// Window searched for the impurity position.
    #[arg(long = "x0-range", allow_hyphen_values = true, default_value = "0:3")]
    pub x0_range: Range,
    #[arg(long = "max", default_value_t = 10)]
    pub max_solutions: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GreenArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: Range,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Range,
    #[arg(long = "E", allow_hyphen_values = true)]
    pub energy: f64,
}

#[derive(Debug, Clone, Args)]
pub struct AiryArgs {
    /// Arguments at which to evaluate.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "zeros",
        required_unless_present = "zeros"
    )]
    pub x: Option<Range>,
    /// Tabulate the first N zeros of Ai and Ai′ instead.
    #[arg(long)]
    pub zeros: Option<usize>,
}

/// `start:stop:step` (inclusive), `start:stop` (for windows), or a single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: Option<f64>,
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        match self.step {
            None if self.start == self.stop => vec![self.start],
            None => vec![self.start, self.stop],
            Some(step) => {
                let n = ((self.stop - self.start) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| self.start + i as f64 * step).collect()
            }
        }
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{t}` is not a number"))
        };
        let r = match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Range {
                    start: v,
                    stop: v,
                    step: None,
                }
            }
            [a, b] => Range {
                start: num(a)?,
                stop: num(b)?,
                step: None,
            },
            [a, b, c] => Range {
                start: num(a)?,
                stop: num(b)?,
                step: Some(num(c)?),
            },
            _ => return Err(format!("`{s}` is not of the form start:stop:step")),
        };
        if !(r.start.is_finite() && r.stop.is_finite()) {
            return Err("range ends must be finite".into());
        }
        if r.stop < r.start {
            return Err(format!("empty range `{s}`"));
        }
        if let Some(step) = r.step {
            if !(step.is_finite() && step > 0.0) {
                return Err(format!("step must be positive in `{s}`"));
            }
            if (r.stop - r.start) / step > 1e7 {
                return Err(format!("`{s}` has too many points"));
            }
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r: Range = "-3:8:0.5".parse().unwrap();
        let p = r.points();
        assert_eq!(p.len(), 23);
        assert_eq!(p[0], -3.0);
        assert!((p[22] - 8.0).abs() < 1e-12);
        assert_eq!("0.3333".parse::<Range>().unwrap().points(), vec![0.3333]);
        assert_eq!("0:3".parse::<Range>().unwrap().points(), vec![0.0, 3.0]);
        assert!("3:0:1".parse::<Range>().is_err());
        assert!("0:1:0".parse::<Range>().is_err());
        assert!("0:1:x".parse::<Range>().is_err());
        assert!("1:2:3:4".parse::<Range>().is_err());
    }

    #[test]
    fn inclusive_endpoint_survives_rounding() {
        let p = "0:1:0.1".parse::<Range>().unwrap().points();
        assert_eq!(p.len(), 11);
    }
}
