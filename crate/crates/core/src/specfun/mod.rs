//! Special functions underlying Jacobi analysis on rank-one symmetric spaces.
//!
//! Everything here is a pure function of its inputs. The Harish-Chandra
//! c-function is evaluated through complex log-gamma so that
//! `|c(λ)|^{-2}` can be multiplied by large powers without overflow.

mod cfunc;
mod gamma;
mod gegenbauer;
mod hyper;

pub use cfunc::{harish_chandra_c, ln_harish_chandra_c, ln_plancherel_density, plancherel_density, plancherel_density_at_zero};
pub use gamma::{gamma_ratio_ln, ln_gamma, ln_gamma_real};
pub use gegenbauer::{gegenbauer, zonal_harmonic};
pub use hyper::hyp2f1;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex numbers throughout the crate.
pub type ComplexValue = num_complex::Complex64;

/// Jacobi parameters `(α, β)` selecting the rank-one geometry.
///
/// Restricted to `α ≥ β ≥ -1/2`. The root multiplicities are recovered as
/// `m₁ = 2α - 2β` (root `α`) and `m₂ = 2β + 1` (root `2α`), so that
/// `ρ = m₁/2 + m₂ = α + β + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams(format!("non-finite (α, β) = ({alpha}, {beta})")));
        }
        if beta < -0.5 || alpha < beta {
            return Err(Error::InvalidParams(format!("need α ≥ β ≥ -1/2, got (α, β) = ({alpha}, {beta})")));
        }
        Ok(Self { alpha, beta })
    }

    /// Parameters of the real hyperbolic space `H^n`.
    pub fn hyperbolic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("H^n needs n ≥ 2, got {n}")));
        }
        Self::new((n as f64 - 2.0) / 2.0, -0.5)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rho(&self) -> f64 {
        self.alpha + self.beta + 1.0
    }

    /// Multiplicity of the root `α`.
    pub fn m1(&self) -> f64 {
        2.0 * (self.alpha - self.beta)
    }

    /// Multiplicity of the root `2α`.
    pub fn m2(&self) -> f64 {
        2.0 * self.beta + 1.0
    }

    /// `dim n = m₁ + m₂`, the growth exponent of the Plancherel density.
    pub fn dim_n(&self) -> f64 {
        self.m1() + self.m2()
    }
}

/// The real hyperbolic space `H^n` together with a spherical-harmonic degree `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicSpec {
    pub n: u32,
    pub l: u32,
}

impl HyperbolicSpec {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("H^n needs n ≥ 2, got {n}")));
        }
        Ok(Self { n, l })
    }

    /// Parameters of `H^n` itself.
    pub fn base_params(&self) -> JacobiParams {
        JacobiParams::hyperbolic(self.n).expect("n ≥ 2 checked at construction")
    }

    /// Shifted parameters `(α_l, β_l) = ((n+2l-2)/2, -1/2)`, i.e. those of `H^{n+2l}`.
    pub fn shifted_params(&self) -> JacobiParams {
        JacobiParams::hyperbolic(self.n + 2 * self.l).expect("n + 2l ≥ 2")
    }

    pub fn rho(&self) -> f64 {
        (self.n as f64 - 1.0) / 2.0
    }

    pub fn rho_l(&self) -> f64 {
        self.rho() + self.l as f64
    }

    pub fn multiplicities(&self) -> (u32, u32) {
        (self.n - 1, 0)
    }
}
