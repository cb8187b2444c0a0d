//! Result types shared by every spectral solver.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Even eigenfunction (odd level index in the unperturbed labelling).
    Symmetric,
    /// Odd eigenfunction.
    Antisymmetric,
    /// No definite parity (off-centre impurities).
    Indefinite,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Symmetric => "symmetric",
            Parity::Antisymmetric => "antisymmetric",
            Parity::Indefinite => "indefinite",
        })
    }
}

/// How a level was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelOrigin {
    /// Root of the model's bound-state equation on one branch.
    Branch,
    /// Unperturbed level that the interaction cannot see (zero weight at the
    /// interaction site); taken directly from the Airy zero table.
    Invariant,
    /// Plain eigenvalue of H0 (vanishing coupling).
    Unperturbed,
}

impl fmt::Display for LevelOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LevelOrigin::Branch => "branch",
            LevelOrigin::Invariant => "invariant",
            LevelOrigin::Unperturbed => "unperturbed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    /// 1-based position in the ordered spectrum.
    pub index: usize,
    pub energy: f64,
    pub parity: Parity,
    /// |residual| of the defining equation at `energy` (0 for table values).
    pub residual: f64,
    pub origin: LevelOrigin,
    /// Part of a (numerically) degenerate pair.
    pub degenerate: bool,
}

/// Levels in increasing energy.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EigenResult {
    pub levels: Vec<Level>,
    /// Closeness below which two adjacent levels count as degenerate.
    pub degeneracy_tol: f64,
}

impl EigenResult {
    /// Sorts, renumbers from 1 and marks pairs closer than `degeneracy_tol`.
    pub(crate) fn from_unsorted(mut levels: Vec<Level>, k: usize, degeneracy_tol: f64) -> Self {
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        levels.truncate(k);
        for (i, l) in levels.iter_mut().enumerate() {
            l.index = i + 1;
        }
        EigenResult {
            levels,
            degeneracy_tol,
        }
        .with_degeneracy_tol(degeneracy_tol)
    }

    /// Re-flags degeneracy with a different closeness threshold, e.g. when the
    /// parameters themselves are only known to a few digits.
    pub fn with_degeneracy_tol(mut self, tol: f64) -> Self {
        self.degeneracy_tol = tol;
        for l in &mut self.levels {
            l.degenerate = false;
        }
        for i in 1..self.levels.len() {
            if (self.levels[i].energy - self.levels[i - 1].energy).abs() < tol {
                self.levels[i].degenerate = true;
                self.levels[i - 1].degenerate = true;
            }
        }
        self
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn degenerate_pairs(&self) -> Vec<(usize, usize)> {
        self.levels
            .windows(2)
            .filter(|w| (w[1].energy - w[0].energy).abs() < self.degeneracy_tol)
            .map(|w| (w[0].index, w[1].index))
            .collect()
    }
}
