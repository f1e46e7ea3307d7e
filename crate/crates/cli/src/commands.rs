use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use boundstate_core::{
    classify, determinant, edge_coefficients, find_discrete_spectrum, CouplingPair, EigenvalueReport,
    SpectralPoint,
};
use serde::Serialize;

use crate::format::{list, num, opt};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

pub const EIG_CSV_HEADER: &str =
    "mu,lambda,n_below,n_above,below,above,zeta_mu,zeta_lambda,zeta_min,zeta_max,tolerance";

pub fn eig(cp: CouplingPair, tol: f64, format: OutputFormat) -> Result<String, CliError> {
    let report = find_discrete_spectrum(cp, tol)?;
    Ok(match format {
        OutputFormat::Json => json(&report),
        OutputFormat::Csv => eig_csv(&report),
    })
}

fn eig_csv(r: &EigenvalueReport) -> String {
    let (n_below, n_above) = r.counts();
    format!(
        "{EIG_CSV_HEADER}\n{},{},{n_below},{n_above},{},{},{},{},{},{},{}\n",
        num(r.coupling.mu()),
        num(r.coupling.lambda()),
        list(&r.below),
        list(&r.above),
        opt(r.zeta_mu),
        opt(r.zeta_lambda),
        opt(r.zeta_min),
        opt(r.zeta_max),
        num(r.tolerance),
    )
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
struct ClassifyOutput {
    mu: f64,
    lambda: f64,
    region: String,
    n_below: u8,
    n_above: u8,
    upper_class: String,
    lower_class: String,
    c_plus_half: f64,
    c_minus_half: f64,
}

pub fn classify_report(cp: CouplingPair, boundary_tol: f64) -> Result<String, CliError> {
    if !(boundary_tol >= 0.0) {
        return Err(CliError::Usage(format!("--boundary-tol must be >= 0, got {boundary_tol}")));
    }
    let label = classify(cp, boundary_tol);
    let edges = edge_coefficients(cp);
    Ok(json(&ClassifyOutput {
        mu: cp.mu(),
        lambda: cp.lambda(),
        region: label.name.to_string(),
        n_below: label.n_below,
        n_above: label.n_above,
        upper_class: label.upper_class.to_string(),
        lower_class: label.lower_class.to_string(),
        c_plus_half: edges.c_plus_half,
        c_minus_half: edges.c_minus_half,
    }))
}

pub const DET_TRACE_HEADER: &str = "z,delta,a,b,c";

/// Uniform samples of `Δ, a, b, c` on a window that stays off the band.
pub fn det_trace(cp: CouplingPair, z_min: f64, z_max: f64, samples: usize) -> Result<String, CliError> {
    if samples < 2 {
        return Err(CliError::Usage(format!("--samples must be >= 2, got {samples}")));
    }
    if !(z_min < z_max) {
        return Err(CliError::Usage(format!("--z-min {z_min} must be below --z-max {z_max}")));
    }
    let lo = SpectralPoint::new(z_min)?;
    let hi = SpectralPoint::new(z_max)?;
    if lo.side() != hi.side() {
        return Err(CliError::Usage(format!("window [{z_min}, {z_max}] overlaps the band [0, 2]")));
    }
    let h = (z_max - z_min) / (samples - 1) as f64;
    let mut out = String::from(DET_TRACE_HEADER);
    out.push('\n');
    for k in 0..samples {
        let z = if k + 1 == samples { z_max } else { z_min + h * k as f64 };
        let p = determinant(cp, SpectralPoint::new(z)?);
        out.push_str(&format!("{},{},{},{},{}\n", num(z), num(p.delta), num(p.a), num(p.b), num(p.c)));
    }
    Ok(out)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    w.write_all(contents.as_bytes()).map_err(io)?;
    w.flush().map_err(io)
}
