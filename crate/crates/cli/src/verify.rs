//! Single-pair comparison of the determinant route with the truncated matrix,
//! plus the structural identities every pair must satisfy.

use std::fmt::Write as _;

use boundstate_core::eigensolver::{bound_state_decay, scaled_residual, RESIDUAL_TOL};
use boundstate_core::lattice::MIN_ORACLE_SITES;
use boundstate_core::region::DEFAULT_BOUNDARY_TOL;
use boundstate_core::{
    classify, delta, edge_coefficients, eigenvalues_outside_band, find_discrete_spectrum,
    BandSide, CouplingPair, EigenvalueReport, SpectralPoint,
};

use crate::CliError;

pub const DEFAULT_SITES: usize = 4096;
pub const DEFAULT_TOL: f64 = 1e-8;
/// Roots closer than this to an edge are excluded from the value comparison.
pub const ROOT_COMPARE_DISTANCE: f64 = 0.05;
pub const EDGE_PROBES: [f64; 3] = [1e-4, 1e-6, 1e-8];
const DETERMINANT_TOL: f64 = 1e-12;
const REFLECTION_TOL: f64 = 1e-12;
const REFLECTED_ROOT_TOL: f64 = 1e-10;
/// Dyadic offsets from the edges, so that `2 − z` is exact.
const REFLECTION_OFFSETS: [f64; 6] = [0.0009765625, 0.03125, 0.25, 1.0, 4.5, 32.0];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check { name, passed, detail }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status}  {:width$}  {}", c.name, c.detail);
        }
        let _ = writeln!(out, "{}", if self.passed() { "all checks passed" } else { "verification failed" });
        out
    }
}

/// Whether the truncation at `n` sites can hold a bound state at `z`.
fn resolvable(z: f64, n: usize) -> bool {
    let r = bound_state_decay(SpectralPoint::new(z).expect("eigenvalue lies off the band"));
    -1.0 / r.ln() <= n as f64 / 8.0
}

pub fn run(cp: CouplingPair, n: usize, tol: f64) -> Result<VerifyReport, CliError> {
    if n < MIN_ORACLE_SITES {
        return Err(CliError::Usage(format!("--n must be >= {MIN_ORACLE_SITES}, got {n}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let report = find_discrete_spectrum(cp, DETERMINANT_TOL)?;
    let oracle = eigenvalues_outside_band(cp, n, (tol / 100.0).max(1e-12))?;

    let checks = vec![
        root_agreement(&report, &oracle.below, &oracle.above, tol),
        count_agreement(&report, oracle.counts(), n),
        classifier_agreement(cp, &report),
        reflection_identity(cp),
        reflected_roots(cp, &report)?,
        edge_asymptotics(cp),
        root_residuals(cp, &report),
    ];
    Ok(VerifyReport { checks })
}

fn root_agreement(report: &EigenvalueReport, below: &[f64], above: &[f64], tol: f64) -> Check {
    let mut matched = 0;
    let mut worst = 0.0f64;
    let mut missing = Vec::new();
    for (side, oracle) in [(BandSide::Below, below), (BandSide::Above, above)] {
        for &z in report.side(side) {
            if (z - side.edge()).abs() < ROOT_COMPARE_DISTANCE {
                continue;
            }
            match oracle.iter().map(|&y| (y - z).abs()).min_by(f64::total_cmp) {
                Some(err) => {
                    matched += 1;
                    worst = worst.max(err);
                }
                None => missing.push(z),
            }
        }
    }
    let passed = missing.is_empty() && worst <= tol;
    let detail = if missing.is_empty() {
        format!("{matched} roots matched, max |diff| {worst:.3e} (tol {tol:.1e})")
    } else {
        format!("no oracle value near {missing:?}")
    };
    Check::new("root agreement", passed, detail)
}

fn count_agreement(report: &EigenvalueReport, oracle: (usize, usize), n: usize) -> Check {
    let det = report.counts();
    let unresolved = |zs: &[f64]| zs.iter().filter(|&&z| !resolvable(z, n)).count();
    let fits = |have: usize, want: usize, slack: usize| have <= want && have + slack >= want;
    let passed = fits(oracle.0, det.0, unresolved(&report.below))
        && fits(oracle.1, det.1, unresolved(&report.above));
    Check::new("count agreement", passed, format!("determinant {det:?}, oracle {oracle:?} at n={n}"))
}

fn classifier_agreement(cp: CouplingPair, report: &EigenvalueReport) -> Check {
    let label = classify(cp, DEFAULT_BOUNDARY_TOL);
    let predicted = (label.n_below as usize, label.n_above as usize);
    let passed = !label.is_named() || predicted == report.counts();
    Check::new("classifier agreement", passed, format!("{} predicts {predicted:?}", label.name))
}

fn reflection_identity(cp: CouplingPair) -> Check {
    let mirror = cp.negated();
    let mut worst = 0.0f64;
    for side in [BandSide::Below, BandSide::Above] {
        for d in REFLECTION_OFFSETS {
            let z = SpectralPoint::new(side.at_distance(d)).expect("off the band");
            let here = delta(cp, z);
            let there = delta(mirror, z.reflected());
            worst = worst.max((here - there).abs() / here.abs().max(1.0));
        }
    }
    Check::new(
        "reflection identity",
        worst <= REFLECTION_TOL,
        format!("max scaled |diff| {worst:.3e}"),
    )
}

fn reflected_roots(cp: CouplingPair, report: &EigenvalueReport) -> Result<Check, CliError> {
    let mirror = find_discrete_spectrum(cp.negated(), DETERMINANT_TOL)?;
    let mut expected_below: Vec<f64> = report.above.iter().map(|z| 2.0 - z).collect();
    let mut expected_above: Vec<f64> = report.below.iter().map(|z| 2.0 - z).collect();
    expected_below.sort_by(f64::total_cmp);
    expected_above.sort_by(f64::total_cmp);
    let same = |a: &[f64], b: &[f64]| {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= REFLECTED_ROOT_TOL)
    };
    let passed = same(&expected_below, &mirror.below) && same(&expected_above, &mirror.above);
    Ok(Check::new(
        "reflected eigenvalues",
        passed,
        format!("(-mu,-lambda) counts {:?}", mirror.counts()),
    ))
}

fn edge_asymptotics(cp: CouplingPair) -> Check {
    let e = edge_coefficients(cp);
    let mut worst = 0.0f64;
    let mut passed = true;
    for s in EDGE_PROBES {
        let root = s.sqrt();
        let upper = delta(cp, SpectralPoint::new(2.0 + s).expect("above the band"));
        let lower = delta(cp, SpectralPoint::new(-s).expect("below the band"));
        let up_err = (upper * root - e.c_plus_half).abs();
        let lo_err = (lower * root - e.c_minus_half).abs();
        passed &= up_err <= 10.0 * root * (1.0 + e.c_plus_0.abs());
        passed &= lo_err <= 10.0 * root * (1.0 + e.c_minus_0.abs());
        worst = worst.max(up_err / root).max(lo_err / root);
    }
    Check::new("edge asymptotics", passed, format!("max |err|/sqrt(s) {worst:.3e}"))
}

fn root_residuals(cp: CouplingPair, report: &EigenvalueReport) -> Check {
    let worst = report
        .eigenvalues()
        .iter()
        .map(|&z| scaled_residual(cp, SpectralPoint::new(z).expect("off the band")))
        .fold(0.0, f64::max);
    Check::new("root residual", worst <= RESIDUAL_TOL, format!("max scaled residual {worst:.3e}"))
}
