use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Result, SpectrumError};

/// Smallest admissible distance between a spectral point and a band edge.
pub const EDGE_GUARD: f64 = 1e-13;

/// Which side of the band `[0, 2]` a point sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BandSide {
    Below,
    Above,
}

impl BandSide {
    /// The band edge on this side.
    pub fn edge(self) -> f64 {
        match self {
            BandSide::Below => 0.0,
            BandSide::Above => 2.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            BandSide::Below => BandSide::Above,
            BandSide::Above => BandSide::Below,
        }
    }

    /// `edge ± distance`, moving away from the band.
    pub fn at_distance(self, distance: f64) -> f64 {
        match self {
            BandSide::Below => -distance,
            BandSide::Above => 2.0 + distance,
        }
    }
}

impl fmt::Display for BandSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BandSide::Below => f.write_str("lower"),
            BandSide::Above => f.write_str("upper"),
        }
    }
}

/// A real energy strictly outside the closed band, at least [`EDGE_GUARD`]
/// away from either edge.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct SpectralPoint(f64);

impl SpectralPoint {
    pub fn new(z: f64) -> Result<Self> {
        if !z.is_finite() {
            return Err(SpectrumError::NonFinite { what: "z", value: z });
        }
        if z > -EDGE_GUARD && z < 2.0 + EDGE_GUARD {
            return Err(SpectrumError::InsideBand { z, guard: EDGE_GUARD });
        }
        Ok(Self(z))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn side(self) -> BandSide {
        if self.0 < 0.0 {
            BandSide::Below
        } else {
            BandSide::Above
        }
    }

    pub fn edge_distance(self) -> f64 {
        match self.side() {
            BandSide::Below => -self.0,
            BandSide::Above => self.0 - 2.0,
        }
    }

    /// The mirror point `2 − z`.
    pub fn reflected(self) -> Self {
        Self(2.0 - self.0)
    }
}

/// On-site strength `mu` and nearest-neighbour strength `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingPair {
    mu: f64,
    lambda: f64,
}

impl CouplingPair {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(SpectrumError::NonFinite { what: "mu", value: mu });
        }
        if !lambda.is_finite() {
            return Err(SpectrumError::NonFinite { what: "lambda", value: lambda });
        }
        Ok(Self { mu, lambda })
    }

    pub fn mu(self) -> f64 {
        self.mu
    }

    pub fn lambda(self) -> f64 {
        self.lambda
    }

    /// `(−μ, −λ)`; its spectrum is the mirror image `z ↦ 2 − z`.
    pub fn negated(self) -> Self {
        Self { mu: -self.mu, lambda: -self.lambda }
    }

    /// Radius `3 + |μ| + |λ|` enclosing every eigenvalue.
    pub fn search_radius(self) -> f64 {
        3.0 + self.mu.abs() + self.lambda.abs()
    }
}
