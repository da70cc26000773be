//! Entanglement of formation for symmetric states and the EeoF estimator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{ppt_eigenvalues, CovMat};

/// Default tolerance for deciding whether `A = B`.
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-9;

/// An entanglement value in nats.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntanglementValue(f64);

impl EntanglementValue {
    pub const ZERO: EntanglementValue = EntanglementValue(0.0);

    pub fn from_nats(v: f64) -> Self {
        Self(v)
    }

    pub fn nats(self) -> f64 {
        self.0
    }

    pub fn bits(self) -> f64 {
        self.0 / std::f64::consts::LN_2
    }

    pub fn in_units(self, units: Units) -> f64 {
        match units {
            Units::Nats => self.nats(),
            Units::Bits => self.bits(),
        }
    }
}

impl fmt::Display for EntanglementValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nats", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

/// `f(x) = c₊ ln c₊ - c₋ ln c₋` with `c±(x) = (x^{-1/2} ± x^{1/2})² / 4`.
///
/// Strictly decreasing on `(0, 1)`, zero for `x >= 1`.
pub fn f(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(x));
    }
    if x >= 1.0 {
        return Ok(0.0);
    }
    let (s, t) = (x.sqrt(), x.sqrt().recip());
    let c_plus = 0.25 * (t + s) * (t + s);
    let c_minus = 0.25 * (t - s) * (t - s);
    let minus_term = if c_minus > 0.0 { c_minus * c_minus.ln() } else { 0.0 };
    Ok(c_plus * c_plus.ln() - minus_term)
}

pub(crate) fn f_value(x: f64) -> Result<EntanglementValue> {
    f(x).map(EntanglementValue)
}

/// Closed-form EoF of a symmetric state, `f(ν̃₋)`.
pub fn eof_symmetric(v: &CovMat) -> Result<EntanglementValue> {
    eof_symmetric_with_tol(v, DEFAULT_SYMMETRY_TOL, crate::DEFAULT_PHYSICAL_TOL)
}

pub fn eof_symmetric_with_tol(
    v: &CovMat,
    symmetry_tol: f64,
    physical_tol: f64,
) -> Result<EntanglementValue> {
    let distance = v.asymmetry();
    if distance > symmetry_tol {
        return Err(Error::NotSymmetric { distance });
    }
    v.require_physical(physical_tol)?;
    entanglement_of(ppt_eigenvalues(v)?.mu_minus, physical_tol)
}

/// `f(ν̃₋)`, with values inside the tolerance band around 1 treated as
/// separable so that the result agrees with `is_entangled`.
fn entanglement_of(nu: f64, tol: f64) -> Result<EntanglementValue> {
    if nu >= 1.0 - tol {
        return Ok(EntanglementValue::ZERO);
    }
    f_value(nu)
}

/// EeoF: the symmetric-state formula applied to a general state's `μ̃₋`.
pub fn eeof(v: &CovMat) -> Result<EntanglementValue> {
    eeof_with_tol(v, crate::DEFAULT_PHYSICAL_TOL)
}

pub fn eeof_with_tol(v: &CovMat, physical_tol: f64) -> Result<EntanglementValue> {
    v.require_physical(physical_tol)?;
    entanglement_of(ppt_eigenvalues(v)?.mu_minus, physical_tol)
}
