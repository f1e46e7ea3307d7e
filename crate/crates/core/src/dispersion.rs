//! Dispersion integrals and the Fredholm determinant.
//!
//! With `A = z − 1` and `|A| > 1` the three integrals over the torus
//! (normalised Haar measure `dν = dq / 2π`) have closed forms
//!
//! ```text
//! a(z) =  ∫ dν / (z − ε(q))          = sign(A) / √(z (z − 2))
//! b(z) = −∫ cos q dν / (z − ε(q))    = A a(z) − 1
//! c(z) =  ∫ cos² q dν / (z − ε(q))   = A² a(z) − A
//! ```
//!
//! Substituting these into `Δ` the `a²` terms cancel and
//!
//! ```text
//! Δ(μ, λ; z) = (1 − μλ + λA) + a(z) (μλA − μ − λA²)
//! ```
//!
//! which is what [`delta`] evaluates. [`determinant`] keeps the textbook
//! composition from `a`, `b`, `c` so that a profile can be recomposed
//! bit-for-bit from its stored fields.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::model::{CouplingPair, SpectralPoint};

/// `C₀ = C₁`: the coefficient of the inverse square root in `a` at both edges.
pub const EDGE_CONSTANT: f64 = FRAC_1_SQRT_2;

#[inline]
fn shift(z: f64) -> f64 {
    z - 1.0
}

/// `sign(z − 1) / √(z (z − 2))`; `z` and `z − 2` are both exact near the edges.
#[inline]
pub(crate) fn a_raw(z: f64) -> f64 {
    shift(z).signum() / (z * (z - 2.0)).sqrt()
}

/// Constant and `a`-coefficient parts of the reduced determinant.
#[inline]
pub(crate) fn reduced_parts(cp: CouplingPair, z: f64) -> (f64, f64) {
    let (mu, lambda) = (cp.mu(), cp.lambda());
    let shifted = shift(z);
    let constant = 1.0 - mu * lambda + lambda * shifted;
    let slope = mu * lambda * shifted - mu - lambda * shifted * shifted;
    (constant, slope)
}

#[inline]
pub(crate) fn delta_raw(cp: CouplingPair, z: f64) -> f64 {
    let (constant, slope) = reduced_parts(cp, z);
    constant + a_raw(z) * slope
}

/// Scale against which a determinant value is judged to be zero: the size of
/// the two terms that cancel at a root.
#[inline]
pub(crate) fn delta_scale(cp: CouplingPair, z: f64) -> f64 {
    let (constant, slope) = reduced_parts(cp, z);
    constant.abs() + (a_raw(z) * slope).abs()
}

pub(crate) fn derivative_raw(cp: CouplingPair, z: f64) -> f64 {
    let (mu, lambda) = (cp.mu(), cp.lambda());
    let shifted = shift(z);
    let a = a_raw(z);
    let da = -a * shifted / (z * (z - 2.0));
    let (_, slope) = reduced_parts(cp, z);
    let dslope = mu * lambda - 2.0 * lambda * shifted;
    lambda + da * slope + a * dslope
}

pub fn integral_a(z: SpectralPoint) -> f64 {
    a_raw(z.value())
}

/// Strictly positive off the band.
pub fn integral_b(z: SpectralPoint) -> f64 {
    shift(z.value()) * integral_a(z) - 1.0
}

pub fn integral_c(z: SpectralPoint) -> f64 {
    let shifted = shift(z.value());
    shifted * shifted * integral_a(z) - shifted
}

/// Determinant value in the cancellation-free reduced form.
///
/// Agrees with [`DeterminantProfile::delta`] up to rounding, but keeps full
/// relative accuracy close to the band edges where `a` blows up.
pub fn delta(cp: CouplingPair, z: SpectralPoint) -> f64 {
    delta_raw(cp, z.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeterminantProfile {
    pub z: SpectralPoint,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub delta: f64,
}

impl DeterminantProfile {
    /// `(1 − μa)(1 − λc) − μλb²` from the stored integrals.
    pub fn recompose(&self, cp: CouplingPair) -> f64 {
        compose(cp, self.a, self.b, self.c)
    }
}

#[inline]
fn compose(cp: CouplingPair, a: f64, b: f64, c: f64) -> f64 {
    let (mu, lambda) = (cp.mu(), cp.lambda());
    (1.0 - mu * a) * (1.0 - lambda * c) - mu * lambda * b * b
}

pub fn determinant(cp: CouplingPair, z: SpectralPoint) -> DeterminantProfile {
    let a = integral_a(z);
    let b = integral_b(z);
    let c = integral_c(z);
    DeterminantProfile { z, a, b, c, delta: compose(cp, a, b, c) }
}

/// Analytic `∂Δ/∂z`.
pub fn determinant_derivative(cp: CouplingPair, z: SpectralPoint) -> f64 {
    derivative_raw(cp, z.value())
}

/// Leading and constant terms of `Δ` at the two band edges:
///
/// ```text
/// Δ(2 + s) = c_plus_half  · s^{-1/2} + c_plus_0  + O(s^{1/2})
/// Δ(−s)    = c_minus_half · s^{-1/2} + c_minus_0 + O(s^{1/2})
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeCoefficients {
    pub c_plus_half: f64,
    pub c_plus_0: f64,
    pub c_minus_half: f64,
    pub c_minus_0: f64,
    pub b2: f64,
    pub b0: f64,
}

impl EdgeCoefficients {
    /// `μλ − μ − λ`, the sign-carrying factor of `c_plus_half`.
    pub fn upper_factor(cp: CouplingPair) -> f64 {
        cp.mu() * cp.lambda() - cp.mu() - cp.lambda()
    }

    /// `μλ + μ + λ`, the sign-carrying factor of `c_minus_half`.
    pub fn lower_factor(cp: CouplingPair) -> f64 {
        cp.mu() * cp.lambda() + cp.mu() + cp.lambda()
    }
}

pub fn edge_coefficients(cp: CouplingPair) -> EdgeCoefficients {
    let (mu, lambda) = (cp.mu(), cp.lambda());
    EdgeCoefficients {
        c_plus_half: EDGE_CONSTANT * EdgeCoefficients::upper_factor(cp),
        c_plus_0: 1.0 + lambda - mu * lambda,
        c_minus_half: EDGE_CONSTANT * EdgeCoefficients::lower_factor(cp),
        c_minus_0: 1.0 - lambda - mu * lambda,
        b2: EDGE_CONSTANT,
        b0: EDGE_CONSTANT,
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::SQRT_2;

    use proptest::prelude::*;

    use super::*;
    use crate::quadrature::{quad_reference, Kernel};

    fn pt(z: f64) -> SpectralPoint {
        SpectralPoint::new(z).unwrap()
    }

    fn cp(mu: f64, lambda: f64) -> CouplingPair {
        CouplingPair::new(mu, lambda).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) {
        assert!((x - y).abs() <= tol, "{x} vs {y} (tol {tol:e})");
    }

    #[test]
    fn integrals_at_reference_points() {
        let s3 = 3f64.sqrt();
        close(integral_a(pt(3.0)), 1.0 / s3, 1e-15);
        close(integral_a(pt(-1.0)), -1.0 / s3, 1e-15);
        close(integral_a(pt(1.0 + SQRT_2)), 1.0, 1e-15);

        close(integral_b(pt(3.0)), 2.0 / s3 - 1.0, 1e-15);
        close(integral_b(pt(-1.0)), 2.0 / s3 - 1.0, 1e-15);
        close(integral_b(pt(1.0 + SQRT_2)), SQRT_2 - 1.0, 1e-15);

        close(integral_c(pt(3.0)), 4.0 / s3 - 2.0, 1e-15);
        close(integral_c(pt(-1.0)), 2.0 - 4.0 / s3, 1e-15);
        close(integral_c(pt(1.0 + SQRT_2)), 2.0 - SQRT_2, 1e-15);
    }

    #[test]
    fn closed_forms_match_trapezoid() {
        for z in [-1000.0, -3.0, -1.0, -0.1, -1e-3, 2.001, 2.1, 3.0, 7.5, 1002.0] {
            let p = pt(z);
            close(integral_a(p), quad_reference(Kernel::One, p, 1 << 14).unwrap(), 1e-10);
            close(integral_b(p), -quad_reference(Kernel::Cos, p, 1 << 14).unwrap(), 1e-10);
            close(integral_c(p), quad_reference(Kernel::Cos2, p, 1 << 14).unwrap(), 1e-10);
        }
    }

    #[test]
    fn determinant_examples() {
        for z in [-4.0, -0.5, 2.5, 9.0] {
            assert_eq!(determinant(cp(0.0, 0.0), pt(z)).delta, 1.0);
        }
        close(determinant(cp(1.0, 0.0), pt(1.0 + SQRT_2)).delta, 0.0, 1e-15);
        // (1 − 1/√3)(3 − 4/√3) − (2/√3 − 1)² = 2 − √3
        let d = determinant(cp(1.0, 1.0), pt(3.0));
        close(d.delta, 2.0 - 3f64.sqrt(), 1e-14);
        assert_eq!(d.delta.to_bits(), d.recompose(cp(1.0, 1.0)).to_bits());
    }

    #[test]
    fn reduced_form_agrees_with_composition() {
        for &(mu, lambda) in &[(2.0, 3.0), (1.0, -1.0), (-2.0, 0.5), (0.3, -4.0)] {
            for z in [-5.0, -0.7, -0.01, 2.01, 2.3, 4.0, 11.0] {
                let c = cp(mu, lambda);
                let p = pt(z);
                let scale = delta_scale(c, z).max(1.0);
                close(delta(c, p), determinant(c, p).delta, 1e-13 * scale);
            }
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(determinant_derivative(cp(0.0, 0.0), pt(3.0)), 0.0);
        let d = determinant_derivative(cp(1.0, 0.0), pt(3.0));
        close(d, (1.0 / 3f64.sqrt()) * 2.0 / 3.0, 1e-15);
        assert!(determinant_derivative(cp(2.0, 3.0), pt(5.0)) > 0.0);
    }

    #[test]
    fn derivative_matches_central_differences() {
        let h = 1e-6;
        for &(mu, lambda) in &[(1.0, 0.0), (2.0, 3.0), (1.0, -1.0), (-2.0, -3.0), (0.5, 4.0)] {
            let c = cp(mu, lambda);
            for z in [-3.0, -0.4, -0.05, 2.05, 2.5, 5.0] {
                let fd = (delta_raw(c, z + h) - delta_raw(c, z - h)) / (2.0 * h);
                let exact = determinant_derivative(c, pt(z));
                assert!(
                    (fd - exact).abs() <= 1e-6 * exact.abs().max(1.0),
                    "({mu},{lambda}) z={z}: fd {fd} exact {exact}"
                );
            }
        }
    }

    #[test]
    fn edge_coefficient_examples() {
        let e = edge_coefficients(cp(2.0, 3.0));
        close(e.c_plus_half, FRAC_1_SQRT_2, 1e-15);
        assert_eq!(e.c_plus_0, -2.0);
        assert_eq!(e.b0, e.b2);

        let e = edge_coefficients(cp(0.0, 0.0));
        assert_eq!((e.c_plus_half, e.c_minus_half), (0.0, 0.0));
        assert_eq!((e.c_plus_0, e.c_minus_0), (1.0, 1.0));

        let e = edge_coefficients(cp(1.0, -1.0));
        close(e.c_plus_half, -FRAC_1_SQRT_2, 1e-15);
        close(e.c_minus_half, -FRAC_1_SQRT_2, 1e-15);
    }

    #[test]
    fn rank_one_factorisation_at_mu_root() {
        // 1 − μa(ζ) = 0 leaves Δ = −μλ b(ζ)²
        let z = pt(1.0 + SQRT_2);
        for lambda in [-2.0, 0.5, 3.0] {
            let c = cp(1.0, lambda);
            let b = integral_b(z);
            close(determinant(c, z).delta, -lambda * b * b, 1e-14);
        }
    }

    #[test]
    fn limit_at_infinity() {
        for &(mu, lambda) in &[(10.0, 10.0), (-10.0, 7.0), (3.0, -10.0)] {
            for z in [1e8, -1e8] {
                close(delta(cp(mu, lambda), pt(z)), 1.0, 1e-6);
            }
        }
    }

    fn outside_band() -> impl Strategy<Value = f64> {
        (prop::bool::ANY, -3.0f64..3.0).prop_map(|(above, e)| {
            let d = 10f64.powf(e);
            if above { 2.0 + d } else { -d }
        })
    }

    proptest! {
        #[test]
        fn reflection_of_integrals(z in outside_band()) {
            let p = pt(z);
            let r = p.reflected();
            prop_assert!((integral_a(r) + integral_a(p)).abs() <= 1e-12 * integral_a(p).abs());
            prop_assert!((integral_b(r) - integral_b(p)).abs() <= 1e-12 * integral_b(p).abs().max(1e-3));
            prop_assert!((integral_c(r) + integral_c(p)).abs() <= 1e-12 * integral_c(p).abs().max(1.0));
        }

        #[test]
        fn signs_of_integrals(z in outside_band()) {
            let p = pt(z);
            let s = (z - 1.0).signum();
            prop_assert!(integral_b(p) > 0.0);
            prop_assert_eq!(integral_a(p).signum(), s);
            prop_assert_eq!(integral_c(p).signum(), s);
        }

        #[test]
        fn decreasing_above_band(e1 in -3.0f64..3.0, gap in 1e-3f64..1.0) {
            let z1 = pt(2.0 + 10f64.powf(e1));
            let z2 = pt(2.0 + 10f64.powf(e1 + gap));
            prop_assert!(integral_a(z1) > integral_a(z2));
            prop_assert!(integral_b(z1) > integral_b(z2));
            prop_assert!(integral_c(z1) > integral_c(z2));
        }

        #[test]
        fn closed_forms_below_band_as_implemented(e1 in -3.0f64..3.0, gap in 1e-3f64..1.0) {
            // z1 < z2 < 0: a and c increase towards the edge (to −∞ at 0⁻), b decreases.
            let z1 = pt(-10f64.powf(e1 + gap));
            let z2 = pt(-10f64.powf(e1));
            prop_assert!(integral_a(z1) > integral_a(z2));
            prop_assert!(integral_c(z1) > integral_c(z2));
            prop_assert!(integral_b(z1) < integral_b(z2));
        }
    }
}
