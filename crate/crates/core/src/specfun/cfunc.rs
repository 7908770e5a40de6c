use std::f64::consts::LN_2;

use super::{ln_gamma, ln_gamma_real, ComplexValue, JacobiParams};
use crate::error::{Error, Result};

/// `ln c(λ)` for the Jacobi c-function
///
/// `c(λ) = 2^{ρ-iλ} Γ(α+1) Γ(iλ) / (Γ((iλ+ρ)/2) Γ((iλ+α-β+1)/2))`.
pub fn ln_harish_chandra_c(params: JacobiParams, lambda: f64) -> Result<ComplexValue> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidParams(format!("c(λ) needs finite λ > 0, got {lambda}")));
    }
    let (a, b, rho) = (params.alpha(), params.beta(), params.rho());
    let il = ComplexValue::new(0.0, lambda);
    let head = ComplexValue::new(rho * LN_2, -lambda * LN_2) + ln_gamma_real(a + 1.0)?;
    let num = ln_gamma(il)?;
    let den = ln_gamma((il + rho) * 0.5)? + ln_gamma((il + (a - b + 1.0)) * 0.5)?;
    Ok(head + num - den)
}

pub fn harish_chandra_c(params: JacobiParams, lambda: f64) -> Result<ComplexValue> {
    Ok(ln_harish_chandra_c(params, lambda)?.exp())
}

/// `ln |c(λ)|^{-2}`; at `λ = 0` this is `-∞` except in the flat case `α = β = -1/2`.
pub fn ln_plancherel_density(params: JacobiParams, lambda: f64) -> Result<f64> {
    if lambda < 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParams(format!("density needs finite λ ≥ 0, got {lambda}")));
    }
    if lambda == 0.0 {
        return Ok(plancherel_density_at_zero(params).ln());
    }
    Ok(-2.0 * ln_harish_chandra_c(params, lambda)?.re)
}

/// `|c(λ)|^{-2}` for `λ ≥ 0`, continuous at the origin.
pub fn plancherel_density(params: JacobiParams, lambda: f64) -> Result<f64> {
    Ok(ln_plancherel_density(params, lambda)?.exp())
}

/// Limit of `|c(λ)|^{-2}` as `λ → 0⁺`.
///
/// `Γ(iλ) ~ 1/(iλ)` makes the density vanish like `λ²` whenever `ρ > 0`;
/// for `ρ = 0` the pole cancels and the density is the constant 4.
pub fn plancherel_density_at_zero(params: JacobiParams) -> f64 {
    if params.rho() == 0.0 {
        4.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64) -> JacobiParams {
        JacobiParams::new(a, b).unwrap()
    }

    #[test]
    fn h3_density_is_lambda_squared() {
        let h3 = p(0.5, -0.5);
        for lam in [1.0, 2.0, 7.5, 33.0, 100.0] {
            let d = plancherel_density(h3, lam).unwrap();
            assert!((d / (lam * lam) - 1.0).abs() < 1e-10, "λ={lam}: {d}");
        }
        let ratio = plancherel_density(h3, 1.0).unwrap() / plancherel_density(h3, 2.0).unwrap();
        assert!((ratio - 0.25).abs() < 1e-12);
    }

    #[test]
    fn h3_c_function_is_one_over_i_lambda() {
        let c = harish_chandra_c(p(0.5, -0.5), 3.0).unwrap();
        let exact = ComplexValue::new(0.0, -1.0 / 3.0);
        assert!((c - exact).norm() < 1e-13);
    }

    #[test]
    fn flat_case_is_constant() {
        for lam in [0.0, 0.1, 4.0, 1e3] {
            assert!((plancherel_density(p(-0.5, -0.5), lam).unwrap() - 4.0).abs() < 1e-11);
        }
    }

    #[test]
    fn small_lambda_limit_matches_expansion() {
        // |c(λ)|^{-2} / λ² → (Γ(ρ/2) Γ((α-β+1)/2))² / (4^ρ Γ(α+1)²)
        for &(a, b) in &[(1.5, -0.5), (3.0, -0.5), (2.0, 0.5), (1.0, 1.0)] {
            let q = p(a, b);
            let rho = q.rho();
            let limit = (2.0 * (ln_gamma_real(rho / 2.0).unwrap() + ln_gamma_real((a - b + 1.0) / 2.0).unwrap())
                - rho * 4f64.ln()
                - 2.0 * ln_gamma_real(a + 1.0).unwrap())
            .exp();
            let lam = 1e-5;
            let d = plancherel_density(q, lam).unwrap() / (lam * lam);
            assert!((d / limit - 1.0).abs() < 1e-8, "({a},{b}): {d} vs {limit}");
            assert_eq!(plancherel_density(q, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn growth_exponent_is_dim_n() {
        for n in [2u32, 3, 4, 6] {
            let q = JacobiParams::hyperbolic(n).unwrap();
            let (l1, l2) = (1e2f64, 1e4f64);
            let slope = (ln_plancherel_density(q, l2).unwrap() - ln_plancherel_density(q, l1).unwrap()) / (l2.ln() - l1.ln());
            assert!((slope - (n as f64 - 1.0)).abs() < 0.05, "n={n}: {slope}");
        }
    }

    #[test]
    fn rejects_nonpositive_lambda() {
        assert!(harish_chandra_c(p(0.5, -0.5), 0.0).is_err());
    }
}
