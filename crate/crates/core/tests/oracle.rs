//! Determinant route against the coordinate-space matrix.

use boundstate_core::eigensolver::bound_state_decay;
use boundstate_core::lattice::{outside_band_counts, tridiagonal_outside_band};
use boundstate_core::region::DEFAULT_BOUNDARY_TOL;
use boundstate_core::{
    build_half_line, classify, eigenfunction, eigenvalues_outside_band, find_discrete_spectrum,
    CouplingPair, SpectralPoint,
};

fn cp(mu: f64, lambda: f64) -> CouplingPair {
    CouplingPair::new(mu, lambda).unwrap()
}

#[test]
fn roots_match_oracle() {
    let pairs = [(2.0, 3.0), (2.0, -0.5), (1.0, -1.0), (-2.0, 0.5), (-2.0, -3.0), (0.0, 1.0), (4.0, -4.0)];
    for (mu, lambda) in pairs {
        let c = cp(mu, lambda);
        let det = find_discrete_spectrum(c, 1e-13).unwrap();
        let lat = eigenvalues_outside_band(c, 4096, 1e-12).unwrap();
        assert_eq!(det.counts(), lat.counts(), "({mu},{lambda})");
        for (x, y) in det.eigenvalues().iter().zip(lat.below.iter().chain(&lat.above)) {
            assert!((x - y).abs() <= 1e-8, "({mu},{lambda}): {x} vs {y}");
        }
    }
}

/// Solve `(T − shift) x = rhs` for symmetric tridiagonal `T` (Thomas algorithm).
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = diag[0] - shift;
    c[0] = if n > 1 { off[0] / pivot } else { 0.0 };
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - shift - off[i - 1] * c[i - 1];
        c[i] = if i + 1 < n { off[i] / pivot } else { 0.0 };
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / pivot;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

fn inverse_iteration(diag: &[f64], off: &[f64], eigenvalue: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..diag.len()).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
    for _ in 0..4 {
        v = solve_shifted(diag, off, eigenvalue + 1e-9, &v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}

#[test]
fn even_sector_of_two_sided_matrix() {
    let n = 512;
    for (mu, lambda) in [(2.0, 3.0), (1.0, -1.0), (-0.5, -4.0)] {
        // sites −n..=n, index i ↔ x = i − n
        let mut diag = vec![1.0; 2 * n + 1];
        diag[n] += mu;
        diag[n - 1] += 0.5 * lambda;
        diag[n + 1] += 0.5 * lambda;
        let off = vec![-0.5; 2 * n];
        let full = tridiagonal_outside_band(&diag, &off, 1e-13);

        let mut even = Vec::new();
        let mut odd = Vec::new();
        for &z in full.below.iter().chain(&full.above) {
            let v = inverse_iteration(&diag, &off, z);
            let mirror: f64 = (0..v.len()).map(|i| (v[i] - v[2 * n - i]).powi(2)).sum::<f64>().sqrt();
            if mirror < 1e-6 {
                even.push(z);
            } else {
                odd.push(z);
            }
        }

        let half = eigenvalues_outside_band(cp(mu, lambda), n, 1e-12).unwrap();
        let half: Vec<f64> = half.below.iter().chain(&half.above).copied().collect();
        assert_eq!(even.len(), half.len(), "({mu},{lambda}) even {even:?} half {half:?}");
        for (x, y) in even.iter().zip(&half) {
            assert!((x - y).abs() <= 1e-10, "({mu},{lambda}): {x} vs {y}");
        }

        // odd sector: f(0) = 0, only the λ/2 sites remain
        let mut odd_diag = vec![1.0; n];
        odd_diag[0] += 0.5 * lambda;
        let odd_half = tridiagonal_outside_band(&odd_diag, &vec![-0.5; n - 1], 1e-13);
        let odd_half: Vec<f64> = odd_half.below.iter().chain(&odd_half.above).copied().collect();
        assert_eq!(odd.len(), odd_half.len());
        for (x, y) in odd.iter().zip(&odd_half) {
            assert!((x - y).abs() <= 1e-10);
        }
    }
}

#[test]
fn no_spurious_states_without_coupling() {
    for n in [8, 64, 1000, 4096] {
        assert_eq!(outside_band_counts(cp(0.0, 0.0), n).unwrap(), (0, 0));
    }
}

#[test]
fn count_stability_under_doubling() {
    for (mu, lambda) in [(2.0, 3.0), (1.0, -1.0), (0.3, 0.3), (-3.0, 1.5)] {
        let c = cp(mu, lambda);
        let n = boundstate_core::truncation_error_probe(c, 1e-9).unwrap();
        assert_eq!(outside_band_counts(c, n).unwrap(), outside_band_counts(c, 2 * n).unwrap());
    }
}

#[test]
fn eigenfunction_residual_on_half_line() {
    for (mu, lambda) in [(1.0, 0.0), (1.0, -1.0), (2.0, 3.0), (-2.0, -3.0)] {
        let c = cp(mu, lambda);
        for z in find_discrete_spectrum(c, 1e-13).unwrap().eigenvalues() {
            let f = eigenfunction(c, z, 60).unwrap();
            let v = f.half_line_vector();
            let m = build_half_line(c, 4 * 60).unwrap();
            let hv = m.apply(&v);
            let res: f64 = hv
                .iter()
                .enumerate()
                .map(|(i, &y)| (y - z * v.get(i).copied().unwrap_or(0.0)).powi(2))
                .sum::<f64>()
                .sqrt();
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(res <= 1e-6 * z.abs() * norm, "({mu},{lambda}) z={z}: {res:e}");

            let r = bound_state_decay(SpectralPoint::new(z).unwrap());
            let tail = f.tail_ratio();
            assert!((tail.abs() - r).abs() <= 1e-3, "{tail} vs {r}");
            // alternating above the band, constant sign below
            assert_eq!(tail < 0.0, z > 2.0);
        }
    }
}

#[test]
fn coarse_grid_predictions_hold() {
    for i in -10..=10 {
        for j in -10..=10 {
            let c = cp(0.5 * i as f64, 0.5 * j as f64);
            let label = classify(c, DEFAULT_BOUNDARY_TOL);
            let report = find_discrete_spectrum(c, 1e-12).unwrap();
            let near_edge = report
                .eigenvalues()
                .iter()
                .any(|&z| SpectralPoint::new(z).unwrap().edge_distance() < 1e-3)
                || !report.warnings.is_empty();
            if !label.is_named() || near_edge {
                continue;
            }
            let predicted = (label.n_below as usize, label.n_above as usize);
            assert_eq!(predicted, report.counts(), "{c:?}");
            assert_eq!(predicted, outside_band_counts(c, 2048).unwrap(), "{c:?}");
        }
    }
}
