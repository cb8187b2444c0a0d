use crate::error::{Result, SpectrumError};

/// Stopping rules for [`solve_bracketed`].
///
/// The bracket is first halved until it is narrower than `bisect_width`;
/// after that an Illinois-modified secant step takes over, falling back to
/// bisection whenever the step would leave the bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub bisect_width: f64,
    /// Absolute bracket width at which iteration stops (scaled by `1 + |x|`).
    pub x_tol: f64,
    /// Stop once `|f(x)|` drops to this value. Zero disables the test.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            bisect_width: 1e-6,
            x_tol: 1e-15,
            f_tol: 0.0,
            max_iter: 300,
        }
    }
}

impl RootOptions {
    pub fn with_x_tol(mut self, x_tol: f64) -> Self {
        self.x_tol = x_tol;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    /// Final bracket, always containing `x`.
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Finds a root of `f` inside `[lo, hi]`, which must bracket a sign change.
pub fn solve_bracketed<F>(mut f: F, lo: f64, hi: f64, opts: RootOptions) -> Result<Root>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            residual: 0.0,
            bracket: (a, a),
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            residual: 0.0,
            bracket: (b, b),
            iterations: 0,
        });
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(SpectrumError::NoBracket {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }

    // Adjacent floats also count: no representable point lies strictly between.
    let converged = |a: f64, b: f64| {
        let m = 0.5 * (a + b);
        (b - a) <= opts.x_tol * (1.0 + a.abs().max(b.abs())) || m <= a || m >= b
    };
    let mut iterations = 0;

    while b - a > opts.bisect_width && !converged(a, b) {
        if iterations >= opts.max_iter {
            return Err(SpectrumError::NoConvergence {
                lo: a,
                hi: b,
                iterations,
            });
        }
        iterations += 1;
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || fm.abs() <= opts.f_tol {
            return Ok(Root {
                x: m,
                residual: fm.abs(),
                bracket: (a, b),
                iterations,
            });
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    // Illinois: halve the stale endpoint's value when the same side is kept twice.
    let mut side = 0i8;
    while !converged(a, b) {
        if iterations >= opts.max_iter {
            return Err(SpectrumError::NoConvergence {
                lo: a,
                hi: b,
                iterations,
            });
        }
        iterations += 1;
        let mut x = b - fb * (b - a) / (fb - fa);
        if !(x > a && x < b) {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        if fx == 0.0 || fx.abs() <= opts.f_tol {
            return Ok(Root {
                x,
                residual: fx.abs(),
                bracket: (a, b),
                iterations,
            });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
    }

    let x = 0.5 * (a + b);
    let residual = f(x).abs();
    Ok(Root {
        x,
        residual,
        bracket: (a, b),
        iterations,
    })
}

/// Samples `f` on a uniform grid over `[lo, hi]` and returns every
/// sub-interval whose endpoint values differ in sign.
///
/// A sample that is exactly zero closes a bracket on both sides of it, so a
/// root landing on a grid point is reported once.
pub fn scan_sign_changes<F>(mut f: F, lo: f64, hi: f64, step: f64) -> Vec<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let mut out = Vec::new();
    if !(hi > lo) || !(step > 0.0) {
        return out;
    }
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let at = |i: usize| {
        if i == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / n as f64
        }
    };
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..=n {
        let x = at(i);
        let fx = f(x);
        if f_prev.is_finite() && fx.is_finite() {
            if f_prev == 0.0 {
                out.push((x_prev, x_prev));
            } else if fx != 0.0 && f_prev.signum() != fx.signum() {
                out.push((x_prev, x));
            }
        }
        x_prev = x;
        f_prev = fx;
    }
    if f_prev == 0.0 {
        out.push((x_prev, x_prev));
    }
    out
}
