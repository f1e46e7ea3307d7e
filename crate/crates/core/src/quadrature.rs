//! Periodic trapezoidal rule on the torus, used to check the closed forms.

use std::f64::consts::PI;

use crate::model::SpectralPoint;
use crate::{Result, SpectrumError};

pub const MIN_NODES: usize = 16;
pub const DEFAULT_NODES: usize = 4096;

/// Numerator of the integrand `w(q) / (z − ε(q))`.
///
/// The `b` integral carries an extra minus sign: `b(z) = −quad(Cos)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    One,
    Cos,
    Cos2,
}

impl Kernel {
    fn weight(self, q: f64) -> f64 {
        match self {
            Kernel::One => 1.0,
            Kernel::Cos => q.cos(),
            Kernel::Cos2 => {
                let c = q.cos();
                c * c
            }
        }
    }
}

/// `(1/N) Σ_k w(q_k) / (z − 1 + cos q_k)` over `N` equispaced nodes on `(−π, π]`.
pub fn quad_reference(kernel: Kernel, z: SpectralPoint, nodes: usize) -> Result<f64> {
    if nodes < MIN_NODES {
        return Err(SpectrumError::TooFewNodes { nodes, min: MIN_NODES });
    }
    let shifted = z.value() - 1.0;
    let step = 2.0 * PI / nodes as f64;
    let sum: f64 = (1..=nodes)
        .map(|k| {
            let q = -PI + step * k as f64;
            kernel.weight(q) / (shifted + q.cos())
        })
        .sum();
    Ok(sum / nodes as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(z: f64) -> SpectralPoint {
        SpectralPoint::new(z).unwrap()
    }

    #[test]
    fn reference_values() {
        let a3 = quad_reference(Kernel::One, pt(3.0), 4096).unwrap();
        assert!((a3 - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let c = quad_reference(Kernel::Cos2, pt(-1.0), 4096).unwrap();
        assert!((c - (2.0 - 4.0 / 3f64.sqrt())).abs() < 1e-12);
        let far = quad_reference(Kernel::One, pt(1e6), 64).unwrap();
        // a(z) = 1/√(z(z−2)) exactly
        let exact = 1.0 / (1e6f64 * (1e6 - 2.0)).sqrt();
        assert!((far - exact).abs() <= 1e-12 * exact);
        assert!((far - 1e-6).abs() <= 1e-11);
    }

    #[test]
    fn too_few_nodes() {
        assert_eq!(
            quad_reference(Kernel::One, pt(3.0), 15),
            Err(SpectrumError::TooFewNodes { nodes: 15, min: 16 })
        );
    }

    #[test]
    fn geometric_convergence() {
        let exact = 1.0 / (2.5f64 * 0.5).sqrt();
        let e16 = (quad_reference(Kernel::One, pt(2.5), 16).unwrap() - exact).abs();
        let e32 = (quad_reference(Kernel::One, pt(2.5), 32).unwrap() - exact).abs();
        assert!(e32 < e16 * 1e-3, "{e16:e} {e32:e}");
    }
}
