//! Partition of the coupling plane by the eigenvalue counts on each side.
//!
//! Above the band the count is decided by the sign of `S = μλ − μ − λ` and
//! the position of `μ` relative to 1; below it by `T = μλ + μ + λ` and `μ`
//! relative to −1:
//!
//! | class | upper (`S`, `μ`)                    | lower (`T`, `μ`)                     |
//! |-------|-------------------------------------|--------------------------------------|
//! | 2     | `S > 0`, `μ > 1`                    | `T > 0`, `μ < −1`                    |
//! | 1     | `S < 0`, or `S = 0` and `μ > 1`     | `T < 0`, or `T = 0` and `μ < −1`     |
//! | 0     | `S > 0`, `μ < 1`, or `S = 0`, `μ < 1` | `T > 0`, `μ > −1`, or `T = 0`, `μ > −1` |
//!
//! All comparisons are banded by a tolerance; anything inside a band is
//! [`UpperClass::Boundary`] / [`LowerClass::Boundary`].

use std::fmt;

use serde::Serialize;

use crate::dispersion::EdgeCoefficients;
use crate::eigensolver::find_discrete_spectrum;
use crate::model::CouplingPair;

pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum UpperClass {
    #[serde(rename = "G0+")]
    G0Plus,
    #[serde(rename = "G1+")]
    G1Plus,
    #[serde(rename = "G2+")]
    G2Plus,
    #[serde(rename = "BOUNDARY")]
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LowerClass {
    #[serde(rename = "G0-")]
    G0Minus,
    #[serde(rename = "G1-")]
    G1Minus,
    #[serde(rename = "G2-")]
    G2Minus,
    #[serde(rename = "BOUNDARY")]
    Boundary,
}

impl UpperClass {
    pub fn count(self) -> Option<u8> {
        match self {
            UpperClass::G0Plus => Some(0),
            UpperClass::G1Plus => Some(1),
            UpperClass::G2Plus => Some(2),
            UpperClass::Boundary => None,
        }
    }
}

impl LowerClass {
    pub fn count(self) -> Option<u8> {
        match self {
            LowerClass::G0Minus => Some(0),
            LowerClass::G1Minus => Some(1),
            LowerClass::G2Minus => Some(2),
            LowerClass::Boundary => None,
        }
    }
}

impl fmt::Display for UpperClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpperClass::G0Plus => "G0+",
            UpperClass::G1Plus => "G1+",
            UpperClass::G2Plus => "G2+",
            UpperClass::Boundary => "BOUNDARY",
        })
    }
}

impl fmt::Display for LowerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowerClass::G0Minus => "G0-",
            LowerClass::G1Minus => "G1-",
            LowerClass::G2Minus => "G2-",
            LowerClass::Boundary => "BOUNDARY",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RegionName {
    G02,
    G01,
    G11,
    G10,
    G20,
    Boundary,
    Unclassified,
}

impl RegionName {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionName::G02 => "G02",
            RegionName::G01 => "G01",
            RegionName::G11 => "G11",
            RegionName::G10 => "G10",
            RegionName::G20 => "G20",
            RegionName::Boundary => "BOUNDARY",
            RegionName::Unclassified => "UNCLASSIFIED",
        }
    }
}

impl fmt::Display for RegionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionLabel {
    pub name: RegionName,
    pub n_below: u8,
    pub n_above: u8,
    pub upper_class: UpperClass,
    pub lower_class: LowerClass,
}

impl RegionLabel {
    /// True for the five named regions, whose counts are predicted rather
    /// than counted.
    pub fn is_named(&self) -> bool {
        !matches!(self.name, RegionName::Boundary | RegionName::Unclassified)
    }
}

/// Class index from the banded sign of the edge factor and `offset`, the
/// signed distance of `μ` past its pivot (positive on the two-eigenvalue side).
fn class_index(factor: f64, offset: f64, tol: f64) -> Option<u8> {
    let beyond = offset > tol;
    let inside = offset < -tol;
    if factor < -tol {
        Some(1)
    } else if factor > tol {
        if beyond {
            Some(2)
        } else if inside {
            Some(0)
        } else {
            None
        }
    } else if beyond {
        Some(1)
    } else if inside {
        Some(0)
    } else {
        None
    }
}

pub fn classify_upper(cp: CouplingPair, boundary_tol: f64) -> UpperClass {
    let s = EdgeCoefficients::upper_factor(cp);
    match class_index(s, cp.mu() - 1.0, boundary_tol) {
        Some(0) => UpperClass::G0Plus,
        Some(1) => UpperClass::G1Plus,
        Some(2) => UpperClass::G2Plus,
        _ => UpperClass::Boundary,
    }
}

pub fn classify_lower(cp: CouplingPair, boundary_tol: f64) -> LowerClass {
    let t = EdgeCoefficients::lower_factor(cp);
    match class_index(t, -1.0 - cp.mu(), boundary_tol) {
        Some(0) => LowerClass::G0Minus,
        Some(1) => LowerClass::G1Minus,
        Some(2) => LowerClass::G2Minus,
        _ => LowerClass::Boundary,
    }
}

/// Region label with its eigenvalue counts.
///
/// Combinations outside the five named regions, and boundary points, get
/// their counts from [`find_discrete_spectrum`].
pub fn classify(cp: CouplingPair, boundary_tol: f64) -> RegionLabel {
    let upper_class = classify_upper(cp, boundary_tol);
    let lower_class = classify_lower(cp, boundary_tol);
    use LowerClass::*;
    use UpperClass::*;
    let name = match (lower_class, upper_class) {
        (G0Minus, G2Plus) => RegionName::G02,
        (G0Minus, G1Plus) => RegionName::G01,
        (G1Minus, G1Plus) => RegionName::G11,
        (G1Minus, G0Plus) => RegionName::G10,
        (G2Minus, G0Plus) => RegionName::G20,
        (LowerClass::Boundary, _) | (_, UpperClass::Boundary) => RegionName::Boundary,
        _ => RegionName::Unclassified,
    };
    let (n_below, n_above) = match (lower_class.count(), upper_class.count()) {
        (Some(below), Some(above)) if name != RegionName::Unclassified => (below, above),
        _ => {
            let report = find_discrete_spectrum(cp, 1e-12).expect("tolerance within range");
            let (below, above) = report.counts();
            (below as u8, above as u8)
        }
    };
    RegionLabel { name, n_below, n_above, upper_class, lower_class }
}
