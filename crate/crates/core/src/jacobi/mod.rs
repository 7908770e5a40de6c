//! Jacobi functions `φ_λ^{(α,β)}`, the Opdam function `G_λ` and the rank-one
//! Dunkl-Cherednik operator.

mod opdam;
mod phi;

pub use opdam::{cherednik_apply, g_factor, opdam_g, opdam_g_table, SymmetricSamples, LAMBDA_MIN};
pub use phi::{phi, phi_derivative, residuals, PhiEvaluator, PhiSample};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real (`λ`) or purely imaginary (`iμ`) spectral parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub lambda: f64,
    pub imaginary_part: f64,
}

impl SpectralPoint {
    pub fn new(lambda: f64, imaginary_part: f64) -> Result<Self> {
        if !lambda.is_finite() || !imaginary_part.is_finite() {
            return Err(Error::InvalidParams(format!("non-finite spectral point ({lambda}, {imaginary_part})")));
        }
        if imaginary_part != 0.0 && lambda != 0.0 {
            return Err(Error::InvalidParams(format!(
                "spectral point must be real or purely imaginary, got {lambda} + {imaginary_part}i"
            )));
        }
        Ok(Self { lambda, imaginary_part })
    }

    pub fn real(lambda: f64) -> Self {
        Self { lambda, imaginary_part: 0.0 }
    }

    pub fn imaginary(mu: f64) -> Self {
        Self { lambda: 0.0, imaginary_part: mu }
    }

    /// `λ² - μ²`, the square of the spectral parameter.
    pub fn square(&self) -> f64 {
        self.lambda * self.lambda - self.imaginary_part * self.imaginary_part
    }

    /// Frequency scale used to size steps and switch radii.
    pub fn scale(&self) -> f64 {
        self.lambda.abs().max(self.imaginary_part.abs())
    }
}

/// Geodesic distance from the origin.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct GeodesicRadius(f64);

impl GeodesicRadius {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidParams(format!("geodesic radius must be finite and ≥ 0, got {t}")));
        }
        Ok(Self(t))
    }

    pub fn t(&self) -> f64 {
        self.0
    }
}
