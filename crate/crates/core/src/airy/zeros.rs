//! Negative zeros `aₙ` of Ai and `a′ₙ` of Ai′.
//!
//! Each zero is seeded from its large-n expansion and then polished inside a
//! bracket of ±0.3 local spacings, so the result does not depend on the seed
//! being accurate. The first [`AiryZeroTable::SIZE`] of each kind live in a
//! lazily built table; longer prefixes go through a grow-only cache.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{invalid, Result};
use crate::numerics::{solve_bracketed, RootOptions};

use super::airy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ai,
    AiPrime,
}

/// `t^{2/3}(1 + 5/48 t⁻² − 5/36 t⁻⁴ + …)`
fn t_series(t: f64) -> f64 {
    let t2 = 1.0 / (t * t);
    t.powf(2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * 77125.0 / 82944.0)))
}

/// `t^{2/3}(1 − 7/48 t⁻² + 35/288 t⁻⁴ − …)`; the t⁻⁶ term only helps once
/// the series has started to converge (it overshoots badly for a′₁).
fn u_series(t: f64) -> f64 {
    let t2 = 1.0 / (t * t);
    let c6 = if t > 3.0 { 181223.0 / 207360.0 } else { 0.0 };
    t.powf(2.0 / 3.0) * (1.0 + t2 * (-7.0 / 48.0 + t2 * (35.0 / 288.0 - t2 * c6)))
}

fn seed(kind: Kind, n: usize) -> f64 {
    let nf = n as f64;
    match kind {
        Kind::Ai => -t_series(3.0 * PI * (4.0 * nf - 1.0) / 8.0),
        Kind::AiPrime => -u_series(3.0 * PI * (4.0 * nf - 3.0) / 8.0),
    }
}

fn compute(kind: Kind, n: usize) -> f64 {
    let s = seed(kind, n);
    let half = 0.3 * PI / s.abs().max(1.0).sqrt();
    let f = |x: f64| {
        let v = airy(x);
        match kind {
            Kind::Ai => v.ai,
            Kind::AiPrime => v.aip,
        }
    };
    let opts = RootOptions::default().with_x_tol(1e-16);
    match solve_bracketed(f, s - half, s + half, opts) {
        Ok(r) => r.x,
        // The seed bracket always straddles the zero for n ≥ 1; keep the
        // seed as a last resort rather than panicking in library code.
        Err(_) => s,
    }
}

/// The first [`Self::SIZE`] zeros of Ai and Ai′, in decreasing order.
#[derive(Debug, Clone)]
pub struct AiryZeroTable {
    pub ai_zeros: Vec<f64>,
    pub aip_zeros: Vec<f64>,
}

impl AiryZeroTable {
    pub const SIZE: usize = 200;

    pub fn build(count: usize) -> Self {
        AiryZeroTable {
            ai_zeros: (1..=count).map(|n| compute(Kind::Ai, n)).collect(),
            aip_zeros: (1..=count).map(|n| compute(Kind::AiPrime, n)).collect(),
        }
    }

    /// Shared immutable table, built on first use.
    pub fn global() -> &'static AiryZeroTable {
        static TABLE: OnceLock<AiryZeroTable> = OnceLock::new();
        TABLE.get_or_init(|| AiryZeroTable::build(Self::SIZE))
    }
}

/// n-th negative zero of Ai (n ≥ 1).
pub fn ai_zero(n: usize) -> Result<f64> {
    zero(Kind::Ai, n)
}

/// n-th negative zero of Ai′ (n ≥ 1).
pub fn aip_zero(n: usize) -> Result<f64> {
    zero(Kind::AiPrime, n)
}

fn zero(kind: Kind, n: usize) -> Result<f64> {
    if n == 0 {
        return invalid("Airy zeros are indexed from 1");
    }
    let table = AiryZeroTable::global();
    let list = match kind {
        Kind::Ai => &table.ai_zeros,
        Kind::AiPrime => &table.aip_zeros,
    };
    Ok(list.get(n - 1).copied().unwrap_or_else(|| compute(kind, n)))
}

type Cache = RwLock<Arc<Vec<f64>>>;

fn cache(kind: Kind) -> &'static Cache {
    static AI: OnceLock<Cache> = OnceLock::new();
    static AIP: OnceLock<Cache> = OnceLock::new();
    let cell = match kind {
        Kind::Ai => &AI,
        Kind::AiPrime => &AIP,
    };
    cell.get_or_init(|| {
        let t = AiryZeroTable::global();
        let v = match kind {
            Kind::Ai => t.ai_zeros.clone(),
            Kind::AiPrime => t.aip_zeros.clone(),
        };
        RwLock::new(Arc::new(v))
    })
}

fn prefix(kind: Kind, count: usize) -> Arc<Vec<f64>> {
    let c = cache(kind);
    {
        let cur = c.read().unwrap_or_else(|e| e.into_inner());
        if cur.len() >= count {
            return Arc::clone(&cur);
        }
    }
    let mut guard = c.write().unwrap_or_else(|e| e.into_inner());
    if guard.len() < count {
        let mut v: Vec<f64> = guard.as_ref().clone();
        let start = v.len() + 1;
        // Grow geometrically so repeated small extensions stay cheap.
        let target = count.max(2 * v.len());
        v.extend((start..=target).map(|n| compute(kind, n)));
        *guard = Arc::new(v);
    }
    Arc::clone(&guard)
}

/// At least the first `count` zeros of Ai (the returned vector may be longer).
pub fn ai_zeros(count: usize) -> Arc<Vec<f64>> {
    prefix(Kind::Ai, count)
}

/// At least the first `count` zeros of Ai′ (the returned vector may be longer).
pub fn aip_zeros(count: usize) -> Arc<Vec<f64>> {
    prefix(Kind::AiPrime, count)
}
