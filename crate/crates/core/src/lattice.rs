//! Coordinate-space check: the operator restricted to even sequences and
//! truncated to the sites `0..=n`, as a symmetric tridiagonal matrix.
//!
//! The isometry `f ↦ (f(0), √2 f(1), √2 f(2), …)` maps even sequences on ℤ
//! onto the half line; it turns the first hopping link into `−1/√2` and
//! leaves every other link at `−1/2`. Sites beyond `n` are cut off
//! (Dirichlet). Eigenvalues are isolated by Sturm-count bisection, so no
//! dense eigensolver is involved.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::model::CouplingPair;
use crate::{Result, SpectrumError};

pub const MIN_SITES: usize = 8;
pub const MIN_ORACLE_SITES: usize = 256;
pub const MIN_ORACLE_TOL: f64 = 1e-12;
pub const PROBE_SIZES: [usize; 6] = [256, 512, 1024, 2048, 4096, 8192];
pub const MIN_PROBE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineMatrix {
    n: usize,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl HalfLineMatrix {
    /// Index of the last site; the matrix order is `n + 1`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.n + 1
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        gershgorin(&self.diag, &self.offdiag)
    }

    /// Matrix-vector product; `v` shorter than the order is zero-padded.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let at = |i: usize| v.get(i).copied().unwrap_or(0.0);
        (0..self.order())
            .map(|i| {
                let mut y = self.diag[i] * at(i);
                if i > 0 {
                    y += self.offdiag[i - 1] * at(i - 1);
                }
                if i < self.n {
                    y += self.offdiag[i] * at(i + 1);
                }
                y
            })
            .collect()
    }
}

pub fn build_half_line(cp: CouplingPair, n: usize) -> Result<HalfLineMatrix> {
    if n < MIN_SITES {
        return Err(SpectrumError::TruncationTooSmall { n, min: MIN_SITES });
    }
    let mut diag = vec![1.0; n + 1];
    diag[0] += cp.mu();
    diag[1] += 0.5 * cp.lambda();
    let mut offdiag = vec![-0.5; n];
    offdiag[0] = -FRAC_1_SQRT_2;
    Ok(HalfLineMatrix { n, diag, offdiag })
}

fn gershgorin(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, &d) in diag.iter().enumerate() {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = offdiag.get(i).map_or(0.0, |e| e.abs());
        lo = lo.min(d - left - right);
        hi = hi.max(d + left + right);
    }
    (lo, hi)
}

/// Number of eigenvalues strictly below `x` of the symmetric tridiagonal
/// matrix with the given diagonal and off-diagonal.
///
/// Counts negative pivots of the LDLᵀ factorisation of `T − x`. A pivot that
/// lands exactly on (or underflows to) zero is replaced by `−ε·scale`,
/// which is the count of the matrix shifted by a relative `ε`.
pub fn sturm_count_tridiagonal(diag: &[f64], offdiag: &[f64], x: f64) -> usize {
    let scale = diag.iter().fold(x.abs(), |m, d| m.max(d.abs()))
        + 2.0 * offdiag.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let guard = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    let mut count = 0;
    let mut pivot = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let coupling = if i > 0 { offdiag[i - 1] * offdiag[i - 1] / pivot } else { 0.0 };
        pivot = d - x - coupling;
        if pivot.abs() < guard {
            pivot = -guard;
        }
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

pub fn sturm_count(m: &HalfLineMatrix, x: f64) -> usize {
    sturm_count_tridiagonal(&m.diag, &m.offdiag, x)
}

/// `k`-th smallest eigenvalue (0-based) inside `[lo, hi]`, to width `tol`.
pub fn bisect_eigenvalue(diag: &[f64], offdiag: &[f64], k: usize, lo: f64, hi: f64, tol: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count_tridiagonal(diag, offdiag, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct OutsideBand {
    pub below: Vec<f64>,
    pub above: Vec<f64>,
}

impl OutsideBand {
    pub fn counts(&self) -> (usize, usize) {
        (self.below.len(), self.above.len())
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix below 0 and above 2.
pub fn tridiagonal_outside_band(diag: &[f64], offdiag: &[f64], tol: f64) -> OutsideBand {
    let order = diag.len();
    let (lo, hi) = gershgorin(diag, offdiag);
    let n_below = sturm_count_tridiagonal(diag, offdiag, 0.0);
    let n_upto_top = sturm_count_tridiagonal(diag, offdiag, 2.0);
    let below = (0..n_below)
        .map(|k| bisect_eigenvalue(diag, offdiag, k, lo.min(0.0), 0.0, tol))
        .collect();
    let above = (n_upto_top..order)
        .map(|k| bisect_eigenvalue(diag, offdiag, k, 2.0, hi.max(2.0), tol))
        .collect();
    OutsideBand { below, above }
}

/// Outside-band eigenvalues of the half-line truncation at size `n`.
pub fn eigenvalues_outside_band(cp: CouplingPair, n: usize, tol: f64) -> Result<OutsideBand> {
    if n < MIN_ORACLE_SITES {
        return Err(SpectrumError::TruncationTooSmall { n, min: MIN_ORACLE_SITES });
    }
    if !(tol >= MIN_ORACLE_TOL) {
        return Err(SpectrumError::ToleranceOutOfRange { tol, min: MIN_ORACLE_TOL, max: f64::INFINITY });
    }
    let m = build_half_line(cp, n)?;
    Ok(tridiagonal_outside_band(&m.diag, &m.offdiag, tol))
}

/// Outside-band eigenvalue counts only; `O(n)`.
pub fn outside_band_counts(cp: CouplingPair, n: usize) -> Result<(usize, usize)> {
    let m = build_half_line(cp, n)?;
    let below = sturm_count(&m, 0.0);
    let above = m.order() - sturm_count(&m, 2.0);
    Ok((below, above))
}

/// Smallest `n` in [`PROBE_SIZES`] whose outside-band eigenvalues move by
/// less than `tol_target` when `n` is doubled.
pub fn truncation_error_probe(cp: CouplingPair, tol_target: f64) -> Result<usize> {
    if !(tol_target >= MIN_PROBE_TOL) {
        return Err(SpectrumError::ToleranceOutOfRange {
            tol: tol_target,
            min: MIN_PROBE_TOL,
            max: f64::INFINITY,
        });
    }
    let tol = (tol_target / 100.0).max(MIN_ORACLE_TOL);
    let mut current = eigenvalues_outside_band(cp, PROBE_SIZES[0], tol)?;
    for &n in &PROBE_SIZES {
        let doubled = eigenvalues_outside_band(cp, 2 * n, tol)?;
        let stable = current.counts() == doubled.counts()
            && current
                .below
                .iter()
                .chain(&current.above)
                .zip(doubled.below.iter().chain(&doubled.above))
                .all(|(x, y)| (x - y).abs() < tol_target);
        if stable {
            return Ok(n);
        }
        current = doubled;
    }
    Err(SpectrumError::NotConverged { tol: tol_target, n_max: *PROBE_SIZES.last().unwrap() })
}
