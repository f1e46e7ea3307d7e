//! Discrete spectrum of the one-dimensional lattice Schrödinger operator
//! `H = H0 + V` acting on even functions on ℤ, where `H0` has dispersion
//! `ε(p) = 1 − cos p` and `V` is an on-site strength `μ` plus a
//! nearest-neighbour strength `λ/2` on the sites `±1`.
//!
//! The essential spectrum is the band `[0, 2]`. Eigenvalues outside it are
//! the real zeros of the Fredholm determinant
//!
//! ```text
//! Δ(μ, λ; z) = (1 − μ a(z)) (1 − λ c(z)) − μ λ b(z)²
//! ```
//!
//! built from three dispersion integrals over the torus. This crate evaluates
//! those integrals in closed form ([`dispersion`]), locates the zeros
//! ([`eigensolver`]), predicts the eigenvalue counts from the band-edge
//! asymptotics ([`region`]) and cross-checks everything against a truncated
//! coordinate-space matrix ([`lattice`]).

pub mod dispersion;
pub mod eigensolver;
mod error;
pub mod lattice;
mod model;
pub mod quadrature;
pub mod region;

pub use dispersion::{
    delta, determinant, determinant_derivative, edge_coefficients, integral_a, integral_b,
    integral_c, DeterminantProfile, EdgeCoefficients,
};
pub use eigensolver::{
    birman_schwinger_system, eigenfunction, find_discrete_spectrum, rank1_lambda_eigenvalue,
    rank1_mu_eigenvalue, BirmanSchwingerSystem, Eigenfunction, EigenvalueReport, NearThreshold,
};
pub use error::SpectrumError;
pub use lattice::{
    build_half_line, eigenvalues_outside_band, sturm_count, truncation_error_probe,
    HalfLineMatrix, OutsideBand,
};
pub use model::{BandSide, CouplingPair, SpectralPoint, EDGE_GUARD};
pub use quadrature::{quad_reference, Kernel};
pub use region::{classify, classify_lower, classify_upper, LowerClass, RegionLabel, RegionName, UpperClass};

pub type Result<T, E = SpectrumError> = std::result::Result<T, E>;
