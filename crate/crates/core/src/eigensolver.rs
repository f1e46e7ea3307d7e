//! Eigenvalues outside the band as zeros of the determinant, the rank-one
//! reference eigenvalues and eigenfunctions from the 2×2 null vector.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::dispersion::{
    delta_raw, delta_scale, derivative_raw, integral_a, integral_b, integral_c,
    EdgeCoefficients,
};
use crate::model::{BandSide, CouplingPair, SpectralPoint, EDGE_GUARD};
use crate::{Result, SpectrumError};

pub const TOL_MIN: f64 = 1e-14;
pub const TOL_MAX: f64 = 1e-6;
/// Tolerance used by the rank-one bisection.
pub const RANK1_TOL: f64 = 1e-13;
/// Closest edge distance sampled by the sign-change scan.
pub const SCAN_FLOOR: f64 = 1e-12;
/// Zeros closer than this to an edge are reported as [`NearThreshold`].
pub const THRESHOLD_DISTANCE: f64 = 1e-10;
/// Roots closer than this are one root.
pub const MERGE_DISTANCE: f64 = 1e-9;
/// Bound on the scaled determinant residual of an accepted eigenvalue.
pub const RESIDUAL_TOL: f64 = 1e-10;

const LOG_POINTS_PER_DECADE: usize = 24;
const UNIFORM_STEP: f64 = 5e-3;
const MAX_UNIFORM_POINTS: usize = 20_000;

/// `|Δ(z)| / max(1, |P| + |a Q|)` where `Δ = P + a Q` is the reduced form.
pub fn scaled_residual(cp: CouplingPair, z: SpectralPoint) -> f64 {
    let z = z.value();
    delta_raw(cp, z).abs() / delta_scale(cp, z).max(1.0)
}

/// Decay rate `|z − 1| − √((z − 1)² − 1)` of a bound state at energy `z`.
pub fn bound_state_decay(z: SpectralPoint) -> f64 {
    let shifted = (z.value() - 1.0).abs();
    let z = z.value();
    shifted - (z * (z - 2.0)).sqrt()
}

/// Eigenvalue `1 + sign(μ)√(1 + μ²)` of the on-site-only operator.
pub fn rank1_mu_eigenvalue(mu: f64) -> Result<f64> {
    if !mu.is_finite() {
        return Err(SpectrumError::NonFinite { what: "mu", value: mu });
    }
    if mu == 0.0 {
        return Err(SpectrumError::ZeroCoupling { what: "mu" });
    }
    Ok(1.0 + mu.signum() * (1.0 + mu * mu).sqrt())
}

/// Zero of `1 − λ c(z)`, above the band for `λ > 0` and below it for `λ < 0`.
pub fn rank1_lambda_eigenvalue(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() {
        return Err(SpectrumError::NonFinite { what: "lambda", value: lambda });
    }
    if lambda == 0.0 {
        return Err(SpectrumError::ZeroCoupling { what: "lambda" });
    }
    let side = if lambda > 0.0 { BandSide::Above } else { BandSide::Below };
    let cp = CouplingPair::new(0.0, lambda)?;
    let f = |z: f64| delta_raw(cp, z);
    // f → −∞ at the edge, → 1 at infinity
    let near = side.at_distance(EDGE_GUARD);
    let far = side.at_distance(cp.search_radius());
    if f(near) >= 0.0 {
        return Err(SpectrumError::NearThreshold { side, floor: EDGE_GUARD });
    }
    let (root, _) = bisect(&f, near, far, RANK1_TOL);
    Ok(root)
}

/// A sign change of `Δ` that could not be resolved away from the edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NearThreshold {
    pub side: BandSide,
    /// The zero lies within this distance of the edge.
    pub edge_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueReport {
    pub coupling: CouplingPair,
    pub below: Vec<f64>,
    pub above: Vec<f64>,
    pub zeta_mu: Option<f64>,
    pub zeta_lambda: Option<f64>,
    pub zeta_min: Option<f64>,
    pub zeta_max: Option<f64>,
    pub tolerance: f64,
    pub warnings: Vec<NearThreshold>,
}

impl EigenvalueReport {
    pub fn counts(&self) -> (usize, usize) {
        (self.below.len(), self.above.len())
    }

    /// All eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.below.iter().chain(&self.above).copied().collect()
    }

    pub fn side(&self, side: BandSide) -> &[f64] {
        match side {
            BandSide::Below => &self.below,
            BandSide::Above => &self.above,
        }
    }
}

/// Every zero of `Δ(μ, λ; ·)` in `(−Z, 0) ∪ (2, Z)`, `Z = 3 + |μ| + |λ|`,
/// each bracketed to width at most `tol`.
pub fn find_discrete_spectrum(cp: CouplingPair, tol: f64) -> Result<EigenvalueReport> {
    if !(TOL_MIN..=TOL_MAX).contains(&tol) {
        return Err(SpectrumError::ToleranceOutOfRange { tol, min: TOL_MIN, max: TOL_MAX });
    }
    let zeta_mu = rank1_mu_eigenvalue(cp.mu()).ok();
    let zeta_lambda = rank1_lambda_eigenvalue(cp.lambda()).ok();
    let (zeta_min, zeta_max) = match (zeta_mu, zeta_lambda) {
        (Some(m), Some(l)) if (m > 2.0) == (l > 2.0) => (Some(m.min(l)), Some(m.max(l))),
        _ => (None, None),
    };

    let mut report = EigenvalueReport {
        coupling: cp,
        below: Vec::new(),
        above: Vec::new(),
        zeta_mu,
        zeta_lambda,
        zeta_min,
        zeta_max,
        tolerance: 0.0,
        warnings: Vec::new(),
    };
    let hints: Vec<f64> = zeta_mu.into_iter().chain(zeta_lambda).collect();
    for side in [BandSide::Below, BandSide::Above] {
        let scan = scan_side(cp, side, &hints, tol);
        report.tolerance = report.tolerance.max(scan.width);
        report.warnings.extend(scan.warnings);
        match side {
            BandSide::Below => report.below = scan.roots,
            BandSide::Above => report.above = scan.roots,
        }
    }
    Ok(report)
}

struct SideScan {
    roots: Vec<f64>,
    width: f64,
    warnings: Vec<NearThreshold>,
}

/// Edge distances: log-spaced from [`SCAN_FLOOR`] to 1, uniform beyond.
fn scan_distances(reach: f64, hints: &[f64]) -> Vec<f64> {
    let decades = (-SCAN_FLOOR.log10()).round() as usize;
    let mut d: Vec<f64> = (0..=decades * LOG_POINTS_PER_DECADE)
        .map(|k| SCAN_FLOOR * 10f64.powf(k as f64 / LOG_POINTS_PER_DECADE as f64))
        .collect();
    if reach > 1.0 {
        let points = (((reach - 1.0) / UNIFORM_STEP).ceil() as usize).clamp(1, MAX_UNIFORM_POINTS);
        let h = (reach - 1.0) / points as f64;
        d.extend((1..=points).map(|k| 1.0 + h * k as f64));
    }
    d.extend(hints.iter().copied().filter(|&h| h > SCAN_FLOOR && h < reach));
    d.sort_by(f64::total_cmp);
    d.dedup();
    d
}

fn scan_side(cp: CouplingPair, side: BandSide, rank1: &[f64], tol: f64) -> SideScan {
    let radius = cp.search_radius();
    let reach = radius - side.edge().abs();
    let hints: Vec<f64> = rank1
        .iter()
        .filter(|&&z| (z > 2.0) == (side == BandSide::Above))
        .map(|&z| (z - side.edge()).abs())
        .collect();
    let distances = scan_distances(reach, &hints);
    let f = |z: f64| delta_raw(cp, z);
    let values: Vec<f64> = distances.iter().map(|&d| f(side.at_distance(d))).collect();

    let mut out = SideScan { roots: Vec::new(), width: 0.0, warnings: Vec::new() };

    let limit_sign = edge_limit_sign(cp, side);
    if limit_sign != 0.0 && values[0] != 0.0 && values[0].signum() != limit_sign {
        out.warnings.push(NearThreshold { side, edge_distance: distances[0] });
    }

    for i in 0..distances.len() {
        let (d0, f0) = (distances[i], values[i]);
        if f0 == 0.0 {
            if d0 < THRESHOLD_DISTANCE {
                out.warnings.push(NearThreshold { side, edge_distance: d0 });
            } else {
                out.roots.push(side.at_distance(d0));
            }
            continue;
        }
        let Some((&d1, &f1)) = distances.get(i + 1).zip(values.get(i + 1)) else {
            continue;
        };
        if f0 * f1 >= 0.0 {
            continue;
        }
        if d1 < THRESHOLD_DISTANCE {
            out.warnings.push(NearThreshold { side, edge_distance: d1 });
            continue;
        }
        let (root, width) = bisect(&f, side.at_distance(d0), side.at_distance(d1), tol);
        let root = polish(cp, root, width);
        if (root - side.edge()).abs() < THRESHOLD_DISTANCE {
            out.warnings.push(NearThreshold { side, edge_distance: d1 });
            continue;
        }
        out.width = out.width.max(width);
        out.roots.push(root);
    }

    out.roots.sort_by(f64::total_cmp);
    out.roots.dedup_by(|b, a| (*b - *a).abs() < MERGE_DISTANCE);
    out
}

/// Sign of `Δ` in the limit towards the edge on `side`, 0 if undetermined.
fn edge_limit_sign(cp: CouplingPair, side: BandSide) -> f64 {
    let (half, constant) = match side {
        BandSide::Above => (EdgeCoefficients::upper_factor(cp), 1.0 + cp.lambda() - cp.mu() * cp.lambda()),
        BandSide::Below => (EdgeCoefficients::lower_factor(cp), 1.0 - cp.lambda() - cp.mu() * cp.lambda()),
    };
    if half != 0.0 {
        half.signum()
    } else if constant != 0.0 {
        constant.signum()
    } else {
        0.0
    }
}

/// Bisection on a sign-changing bracket; returns the midpoint and final width.
fn bisect(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = if a < b { (a, b) } else { (b, a) };
    let mut f_lo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return (mid, 0.0);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), hi - lo)
}

/// Newton steps confined to the final bracket; keeps the best residual.
fn polish(cp: CouplingPair, z: f64, width: f64) -> f64 {
    let (lo, hi) = (z - width, z + width);
    let mut best = z;
    let mut best_res = delta_raw(cp, z).abs();
    let mut x = z;
    for _ in 0..3 {
        let d = derivative_raw(cp, x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        x -= delta_raw(cp, x) / d;
        if !(lo..=hi).contains(&x) {
            break;
        }
        let res = delta_raw(cp, x).abs();
        if res < best_res {
            best = x;
            best_res = res;
        }
    }
    best
}

/// The matrix `[[1 − μa, λb], [μb, 1 − λc]]` acting on the functionals
/// `(c1, c2) = (∫ψ dν, ∫cos q ψ dν)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BirmanSchwingerSystem {
    pub z: SpectralPoint,
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
    /// Unit null vector `(c1, c2)` with `c1 ≥ 0`, present when the matrix is singular.
    pub null_vector: Option<[f64; 2]>,
}

impl BirmanSchwingerSystem {
    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [self.m11 * v[0] + self.m12 * v[1], self.m21 * v[0] + self.m22 * v[1]]
    }
}

pub fn birman_schwinger_system(cp: CouplingPair, z: SpectralPoint) -> BirmanSchwingerSystem {
    let (mu, lambda) = (cp.mu(), cp.lambda());
    let a = integral_a(z);
    let b = integral_b(z);
    let c = integral_c(z);
    let mut system = BirmanSchwingerSystem {
        z,
        m11: 1.0 - mu * a,
        m12: lambda * b,
        m21: mu * b,
        m22: 1.0 - lambda * c,
        null_vector: None,
    };
    if scaled_residual(cp, z) <= RESIDUAL_TOL {
        system.null_vector = Some(null_vector(&system));
    }
    system
}

fn null_vector(m: &BirmanSchwingerSystem) -> [f64; 2] {
    let first = [m.m12, -m.m11];
    let second = [-m.m22, m.m21];
    let norm = |v: [f64; 2]| v[0].hypot(v[1]);
    let v = if norm(first) >= norm(second) { first } else { second };
    let n = norm(v);
    let mut v = if n > 0.0 { [v[0] / n, v[1] / n] } else { [1.0, 0.0] };
    if v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0) {
        v = [-v[0], -v[1]];
    }
    v
}

/// Bound state `ψ(q) = (μ c1 + λ c2 cos q) / (z − ε(q))` and its lattice
/// values `ψ̂(x) = ∫ cos(xq) ψ(q) dν` for `x = 0..=x_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenfunction {
    pub eigenvalue: f64,
    pub c1: f64,
    pub c2: f64,
    pub lattice_values: Vec<f64>,
}

impl Eigenfunction {
    /// `(ψ̂(0), √2 ψ̂(1), √2 ψ̂(2), …)`: the same state on the half line.
    pub fn half_line_vector(&self) -> Vec<f64> {
        self.lattice_values
            .iter()
            .enumerate()
            .map(|(x, &v)| if x == 0 { v } else { SQRT_2 * v })
            .collect()
    }

    /// `ψ̂(x + 1) / ψ̂(x)` at the last `x` where `ψ̂(x + 1)` is still at least
    /// `1e-9` of the peak value; further out the quadrature noise dominates.
    pub fn tail_ratio(&self) -> f64 {
        let values = &self.lattice_values;
        let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let last = values.iter().rposition(|v| v.abs() >= 1e-9 * peak).unwrap_or(1).clamp(1, values.len() - 1);
        values[last] / values[last - 1]
    }
}

pub fn eigenfunction(cp: CouplingPair, eigenvalue: f64, x_max: usize) -> Result<Eigenfunction> {
    let z = SpectralPoint::new(eigenvalue)?;
    let residual = scaled_residual(cp, z);
    let system = birman_schwinger_system(cp, z);
    let Some([c1, c2]) = system.null_vector else {
        return Err(SpectrumError::NotAnEigenvalue { z: eigenvalue, residual });
    };
    let x_max = x_max.max(1);

    // aliasing error of the trapezoid decays like r^N
    let r = bound_state_decay(z);
    let decay_nodes = (40.0 / -r.ln()).ceil() as usize;
    let nodes = (64 * x_max).max(4096).max(decay_nodes);

    let (mu, lambda) = (cp.mu(), cp.lambda());
    let shifted = eigenvalue - 1.0;
    let step = 2.0 * PI / nodes as f64;
    let samples: Vec<(f64, f64)> = (1..=nodes)
        .map(|k| {
            let q = -PI + step * k as f64;
            let cos_q = q.cos();
            (q, (mu * c1 + lambda * c2 * cos_q) / (shifted + cos_q))
        })
        .collect();
    let lattice_values = (0..=x_max)
        .map(|x| {
            let xf = x as f64;
            samples.iter().map(|&(q, psi)| (xf * q).cos() * psi).sum::<f64>() / nodes as f64
        })
        .collect();
    Ok(Eigenfunction { eigenvalue, c1, c2, lattice_values })
}
