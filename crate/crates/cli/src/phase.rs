//! Region map of the coupling plane on a rectangular grid.

use boundstate_core::region::DEFAULT_BOUNDARY_TOL;
use boundstate_core::{classify, find_discrete_spectrum, CouplingPair};
use rayon::prelude::*;

use crate::format::{num, opt};
use crate::CliError;

pub const MIN_STEPS: usize = 2;
pub const MAX_STEPS: usize = 4096;
pub const HEADER: &str = "mu,lambda,region,n_below,n_above";
pub const HEADER_WITH_EIGENVALUES: &str = "mu,lambda,region,n_below,n_above,zeta1,zeta2";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub mu_min: f64,
    pub mu_max: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub steps: usize,
}

impl Window {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(MIN_STEPS..=MAX_STEPS).contains(&self.steps) {
            return Err(CliError::Usage(format!(
                "--steps must be in [{MIN_STEPS}, {MAX_STEPS}], got {}",
                self.steps
            )));
        }
        let finite = [self.mu_min, self.mu_max, self.lambda_min, self.lambda_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(self.mu_min < self.mu_max) || !(self.lambda_min < self.lambda_max) {
            return Err(CliError::Usage("each axis needs finite min < max".into()));
        }
        Ok(())
    }

    fn axis(min: f64, max: f64, steps: usize, i: usize) -> f64 {
        if i + 1 == steps {
            max
        } else {
            min + (max - min) / (steps - 1) as f64 * i as f64
        }
    }

    pub fn mu(&self, i: usize) -> f64 {
        Self::axis(self.mu_min, self.mu_max, self.steps, i)
    }

    pub fn lambda(&self, j: usize) -> f64 {
        Self::axis(self.lambda_min, self.lambda_max, self.steps, j)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagramCell {
    pub mu: f64,
    pub lambda: f64,
    pub region: &'static str,
    pub n_below: usize,
    pub n_above: usize,
    pub zeta1: Option<f64>,
    pub zeta2: Option<f64>,
}

impl PhaseDiagramCell {
    /// Counts come from the region label; with `with_eigenvalues` they are the
    /// lengths of the located eigenvalue lists instead.
    pub fn compute(cp: CouplingPair, with_eigenvalues: bool) -> Self {
        let label = classify(cp, DEFAULT_BOUNDARY_TOL);
        let mut cell = PhaseDiagramCell {
            mu: cp.mu(),
            lambda: cp.lambda(),
            region: label.name.as_str(),
            n_below: label.n_below as usize,
            n_above: label.n_above as usize,
            zeta1: None,
            zeta2: None,
        };
        if with_eigenvalues {
            let report = find_discrete_spectrum(cp, 1e-12).expect("tolerance within range");
            (cell.n_below, cell.n_above) = report.counts();
            let all = report.eigenvalues();
            cell.zeta1 = all.first().copied();
            cell.zeta2 = all.get(1).copied();
        }
        cell
    }

    pub fn csv_row(&self, with_eigenvalues: bool) -> String {
        let mut row = format!(
            "{},{},{},{},{}",
            num(self.mu),
            num(self.lambda),
            self.region,
            self.n_below,
            self.n_above
        );
        if with_eigenvalues {
            row.push_str(&format!(",{},{}", opt(self.zeta1), opt(self.zeta2)));
        }
        row
    }
}

/// Cells in row-major order with `lambda` in the outer loop.
pub fn compute_grid(window: &Window, with_eigenvalues: bool) -> Result<Vec<PhaseDiagramCell>, CliError> {
    window.validate()?;
    let steps = window.steps;
    let rows: Vec<Vec<PhaseDiagramCell>> = (0..steps)
        .into_par_iter()
        .map(|j| {
            let lambda = window.lambda(j);
            (0..steps)
                .map(|i| {
                    let cp = CouplingPair::new(window.mu(i), lambda).expect("finite grid");
                    PhaseDiagramCell::compute(cp, with_eigenvalues)
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

pub fn render_csv(cells: &[PhaseDiagramCell], with_eigenvalues: bool) -> String {
    let header = if with_eigenvalues { HEADER_WITH_EIGENVALUES } else { HEADER };
    let mut out = String::with_capacity(64 * (cells.len() + 1));
    out.push_str(header);
    out.push('\n');
    for cell in cells {
        out.push_str(&cell.csv_row(with_eigenvalues));
        out.push('\n');
    }
    out
}
