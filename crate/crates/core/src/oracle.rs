//! Independent check of the spectrum by truncated Fock-space diagonalization.
//!
//! The Hamiltonian commutes with the parity (-1)^(a'a) sigma_z, so in the
//! basis ordered by photon number each parity sector is a real symmetric
//! tridiagonal matrix ("chain"):
//!
//! ```text
//! diag[k]    = k + parity * mu * (-1)^k
//! offdiag[k] = lambda * sqrt(k + 1)
//! ```
//!
//! Eigenvalues are found by bisection on the Sturm count (number of negative
//! pivots of the shifted LDL^T factorization), which is backward stable and
//! never misses or double-counts a level. Truncation error is controlled by
//! doubling the chain length until the requested eigenvalues move by less
//! than a tolerance.

use thiserror::Error;

/// Default truncation dimension per parity chain.
pub const DEFAULT_DIM: usize = 400;

/// Convergence tolerance of the dimension-doubling loop.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("requested {requested} eigenvalues but the chain has dimension {dim}")]
    NotEnoughStates { requested: usize, dim: usize },
    #[error("eigenvalues did not settle within {tol:.1e} after dimension {dim}")]
    NotConverged { dim: usize, tol: f64 },
}

/// Sign of the parity sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn sign(&self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }
}

/// Symmetric tridiagonal matrix of one parity sector.
#[derive(Debug, Clone)]
pub struct ParityChain {
    pub parity: Parity,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

/// Builds the two parity chains of dimension `dim`.
pub fn build_chains(lambda: f64, mu: f64, dim: usize) -> (ParityChain, ParityChain) {
    let chain = |parity: Parity| {
        let s = parity.sign();
        let diag = (0..dim)
            .map(|k| k as f64 + s * mu * if k % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let offdiag = (0..dim.saturating_sub(1))
            .map(|k| lambda * ((k + 1) as f64).sqrt())
            .collect();
        ParityChain {
            parity,
            diag,
            offdiag,
        }
    };
    (chain(Parity::Plus), chain(Parity::Minus))
}

impl ParityChain {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `shift` (Sturm count via the
    /// pivots of the LDL^T factorization of `A - shift I`).
    pub fn count_below(&self, shift: f64) -> usize {
        let mut count = 0;
        let mut pivot = 1.0f64;
        for k in 0..self.dim() {
            let b2 = if k == 0 {
                0.0
            } else {
                self.offdiag[k - 1] * self.offdiag[k - 1]
            };
            pivot = (self.diag[k] - shift) - b2 / pivot;
            if pivot == 0.0 {
                // Nudge off the exact-singularity ridge as LAPACK does.
                pivot = -f64::MIN_POSITIVE;
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval certain to contain the whole spectrum (Gershgorin).
    pub fn bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 0..self.dim() {
            let r = if k > 0 { self.offdiag[k - 1].abs() } else { 0.0 }
                + if k + 1 < self.dim() {
                    self.offdiag[k].abs()
                } else {
                    0.0
                };
            lo = lo.min(self.diag[k] - r);
            hi = hi.max(self.diag[k] + r);
        }
        (lo, hi)
    }

    /// The `count` smallest eigenvalues by Sturm bisection.
    pub fn lowest(&self, count: usize) -> Result<Vec<f64>, OracleError> {
        if count > self.dim() {
            return Err(OracleError::NotEnoughStates {
                requested: count,
                dim: self.dim(),
            });
        }
        let (lo, hi) = self.bounds();
        let mut out = Vec::with_capacity(count);
        for index in 0..count {
            out.push(self.kth(index, lo, hi));
        }
        Ok(out)
    }

    /// The `index`-th smallest eigenvalue (0-based) inside [lo, hi].
    fn kth(&self, index: usize, mut lo: f64, mut hi: f64) -> f64 {
        // Bisection invariant: count_below(lo) <= index < count_below(hi).
        while hi - lo > 1e-14 * (1.0 + lo.abs().max(hi.abs())) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Number of eigenvalues in the open interval (a, b).
    pub fn count_in(&self, a: f64, b: f64) -> usize {
        self.count_below(b).saturating_sub(self.count_below(a))
    }
}

/// Spectrum slice computed from both parity chains, sorted ascending, with
/// the parity of each level.
#[derive(Debug, Clone)]
pub struct OracleSpectrum {
    pub lambda: f64,
    pub mu: f64,
    pub dim: usize,
    pub levels: Vec<(f64, Parity)>,
    /// How many leading levels moved by less than the tolerance when the
    /// truncation dimension was doubled; 0 when no comparison was run.
    pub converged_count: usize,
}

impl OracleSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|&(e, _)| e).collect()
    }

    /// Levels inside a closed energy window.
    pub fn in_window(&self, lo: f64, hi: f64) -> Vec<(f64, Parity)> {
        self.levels
            .iter()
            .copied()
            .filter(|&(e, _)| e >= lo && e <= hi)
            .collect()
    }

    /// Multiplicity of the spectrum within `tol` of `energy`.
    pub fn multiplicity_at(&self, energy: f64, tol: f64) -> usize {
        self.levels
            .iter()
            .filter(|&&(e, _)| (e - energy).abs() <= tol)
            .count()
    }
}

/// The `count` lowest eigenvalues of the full model at (lambda, mu), computed
/// from both parity chains at dimension `dim` without a convergence check.
pub fn eigenvalues_at_dim(lambda: f64, mu: f64, dim: usize, count: usize) -> Result<OracleSpectrum, OracleError> {
    let per_chain = count.min(dim);
    let (plus, minus) = build_chains(lambda, mu, dim);
    let ep = plus.lowest(per_chain)?;
    let em = minus.lowest(per_chain)?;
    let mut levels: Vec<(f64, Parity)> = ep
        .into_iter()
        .map(|e| (e, Parity::Plus))
        .chain(em.into_iter().map(|e| (e, Parity::Minus)))
        .collect();
    levels.sort_by(|a, b| a.0.total_cmp(&b.0));
    levels.truncate(count);
    Ok(OracleSpectrum {
        lambda,
        mu,
        dim,
        levels,
        converged_count: 0,
    })
}

/// The `count` lowest eigenvalues at truncation `dim`, with convergence
/// assessed by recomputing at `2 dim`: the returned levels come from the
/// doubled dimension and `converged_count` reports how many leading ones
/// moved by less than the default tolerance.
pub fn eigenvalues(lambda: f64, mu: f64, dim: usize, count: usize) -> Result<OracleSpectrum, OracleError> {
    let dim = dim.max(count).max(16);
    let coarse = eigenvalues_at_dim(lambda, mu, dim, count)?;
    let mut fine = eigenvalues_at_dim(lambda, mu, dim * 2, count)?;
    let mut converged = 0;
    for (a, b) in coarse.levels.iter().zip(fine.levels.iter()) {
        if (a.0 - b.0).abs() > DEFAULT_TOL {
            break;
        }
        converged += 1;
    }
    fine.converged_count = converged;
    Ok(fine)
}

/// The `count` lowest eigenvalues with all of them converged: the dimension
/// is doubled (up to 6 times from [`DEFAULT_DIM`]) until every requested
/// level moves by less than [`DEFAULT_TOL`].
pub fn eigenvalues_converged(lambda: f64, mu: f64, count: usize) -> Result<OracleSpectrum, OracleError> {
    eigenvalues_with(lambda, mu, count, DEFAULT_DIM, DEFAULT_TOL)
}

pub fn eigenvalues_with(
    lambda: f64,
    mu: f64,
    count: usize,
    start_dim: usize,
    tol: f64,
) -> Result<OracleSpectrum, OracleError> {
    let mut dim = start_dim.max(count).max(16);
    let mut prev = eigenvalues_at_dim(lambda, mu, dim, count)?;
    for _ in 0..6 {
        let next_dim = dim * 2;
        let mut next = eigenvalues_at_dim(lambda, mu, next_dim, count)?;
        let moved = prev
            .levels
            .iter()
            .zip(next.levels.iter())
            .map(|(a, b)| (a.0 - b.0).abs())
            .fold(0.0f64, f64::max);
        if moved <= tol {
            next.converged_count = count;
            return Ok(next);
        }
        dim = next_dim;
        prev = next;
    }
    Err(OracleError::NotConverged { dim, tol })
}

/// Multiplicity of `energy` in the full spectrum, stable under doubling the
/// truncation dimension. Counts levels of both chains within `tol`.
pub fn multiplicity_at(lambda: f64, mu: f64, energy: f64, tol: f64) -> Result<usize, OracleError> {
    let count_at = |dim: usize| {
        let (plus, minus) = build_chains(lambda, mu, dim);
        plus.count_in(energy - tol, energy + tol) + minus.count_in(energy - tol, energy + tol)
    };
    let mut dim = DEFAULT_DIM;
    let mut m = count_at(dim);
    for _ in 0..4 {
        let m2 = count_at(dim * 2);
        if m2 == m {
            return Ok(m);
        }
        dim *= 2;
        m = m2;
    }
    Err(OracleError::NotConverged {
        dim,
        tol,
    })
}
