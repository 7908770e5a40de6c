use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp;
use crate::specfun::{plancherel_density, ComplexValue, JacobiParams};

const SUPPORT_EPS: f64 = 1e-12;

/// Sampled even function of the geodesic radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub support_radius: Option<f64>,
}

impl RadialProfile {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, support_radius: Option<f64>) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 4 {
            return Err(Error::InvalidParams(format!(
                "profile needs ≥ 4 samples with matching lengths, got {} and {}",
                grid.len(),
                values.len()
            )));
        }
        if grid[0] != 0.0 {
            return Err(Error::InvalidParams(format!("profile grid must start at 0, got {}", grid[0])));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("profile grid must be strictly increasing and finite".into()));
        }
        if let Some(l) = support_radius {
            if !(l > 0.0) {
                return Err(Error::InvalidParams(format!("support radius must be positive, got {l}")));
            }
            if let Some((t, v)) = grid.iter().zip(&values).find(|(t, v)| **t > l && v.abs() >= SUPPORT_EPS) {
                return Err(Error::InvalidParams(format!("value {v:e} at t = {t} beyond declared support {l}")));
            }
        }
        Ok(Self { grid, values, support_radius })
    }

    /// Samples `f` on `{0} ∪ nodes` (nodes sorted, positive), closing the grid at the support radius.
    pub fn sample(f: impl Fn(f64) -> f64, nodes: &[f64], support_radius: Option<f64>) -> Result<Self> {
        let mut grid = Vec::with_capacity(nodes.len() + 1);
        grid.push(0.0);
        grid.extend(nodes.iter().copied().filter(|&t| t > 0.0));
        if let Some(l) = support_radius {
            if grid.last().is_some_and(|&t| t < l) {
                grid.push(l);
            }
        }
        let values = grid.iter().map(|&t| f(t)).collect();
        Self::new(grid, values, support_radius)
    }

    pub fn zeros(grid: Vec<f64>) -> Result<Self> {
        let values = vec![0.0; grid.len()];
        Self::new(grid, values, None)
    }

    pub fn t_end(&self) -> f64 {
        *self.grid.last().expect("nonempty")
    }

    /// Right end of the region carrying mass: the support radius if declared, else the grid end.
    pub fn extent(&self) -> f64 {
        self.support_radius.map_or(self.t_end(), |l| l.min(self.t_end()))
    }

    /// Cubic interpolation, zero beyond the declared support.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let t = t.abs();
        if self.support_radius.is_some_and(|l| t > l) {
            return Ok(0.0);
        }
        interp::cubic(&self.grid, &self.values, t, true)
    }

    /// Grid-halving estimate of the cubic interpolation error.
    pub fn interpolation_error(&self) -> Result<f64> {
        interp::halving_error(&self.grid, &self.values, true)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Sampled function of `λ ≥ 0` together with the Plancherel density at the nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralProfile {
    pub lambdas: Vec<f64>,
    pub values: Vec<ComplexValue>,
    pub density: Vec<f64>,
}

impl SpectralProfile {
    pub fn new(lambdas: Vec<f64>, values: Vec<ComplexValue>, density: Vec<f64>) -> Result<Self> {
        if lambdas.len() != values.len() || lambdas.len() != density.len() || lambdas.is_empty() {
            return Err(Error::InvalidParams("spectral arrays must be nonempty with equal lengths".into()));
        }
        if lambdas[0] < 0.0 || lambdas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParams("λ nodes must be ≥ 0 and strictly increasing".into()));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidParams("non-finite spectral value".into()));
        }
        if density.iter().any(|d| !(*d >= 0.0) || !d.is_finite()) {
            return Err(Error::InvalidParams("density must be finite and ≥ 0".into()));
        }
        Ok(Self { lambdas, values, density })
    }

    /// Samples `f` at `lambdas`, attaching the density of `params`.
    pub fn from_fn(params: JacobiParams, lambdas: &[f64], f: impl Fn(f64) -> ComplexValue) -> Result<Self> {
        let values = lambdas.iter().map(|&l| f(l)).collect();
        let density = lambdas.iter().map(|&l| plancherel_density(params, l)).collect::<Result<Vec<_>>>()?;
        Self::new(lambdas.to_vec(), values, density)
    }

    pub fn lambda_end(&self) -> f64 {
        *self.lambdas.last().expect("nonempty")
    }

    /// Value at `λ`: exact at nodes, cubic (even-reflected) between them, 0 beyond the last node.
    pub fn eval(&self, lambda: f64) -> Result<ComplexValue> {
        Ok(self.eval_many(&[lambda])?[0])
    }

    pub fn eval_many(&self, lambdas: &[f64]) -> Result<Vec<ComplexValue>> {
        let even = self.lambdas[0] == 0.0;
        let re: Vec<f64> = self.values.iter().map(|v| v.re).collect();
        let im: Vec<f64> = self.values.iter().map(|v| v.im).collect();
        lambdas
            .iter()
            .map(|&lambda| {
                let lambda = lambda.abs();
                if let Ok(i) = self.lambdas.binary_search_by(|l| l.total_cmp(&lambda)) {
                    return Ok(self.values[i]);
                }
                if lambda > self.lambda_end() {
                    return Ok(ComplexValue::new(0.0, 0.0));
                }
                if self.lambdas.len() < 4 {
                    return Err(Error::Interpolation("need ≥ 4 spectral nodes to interpolate".into()));
                }
                Ok(ComplexValue::new(
                    interp::cubic(&self.lambdas, &re, lambda, even)?,
                    interp::cubic(&self.lambdas, &im, lambda, even)?,
                ))
            })
            .collect()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_must_start_at_zero() {
        assert!(RadialProfile::new(vec![0.1, 0.2, 0.3, 0.4], vec![0.0; 4], None).is_err());
    }

    #[test]
    fn support_is_enforced() {
        let grid: Vec<f64> = (0..10).map(|i| i as f64 * 0.5).collect();
        let vals: Vec<f64> = grid.iter().map(|&t| if t <= 2.0 { 1.0 } else { 0.0 }).collect();
        let p = RadialProfile::new(grid.clone(), vals, Some(2.0)).unwrap();
        assert_eq!(p.eval(3.3).unwrap(), 0.0);
        assert!(RadialProfile::new(grid, vec![1.0; 10], Some(2.0)).is_err());
    }

    #[test]
    fn spectral_eval_hits_nodes_exactly() {
        let params = JacobiParams::new(0.5, -0.5).unwrap();
        let lam: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let sp = SpectralProfile::from_fn(params, &lam, |l| ComplexValue::new((-l * l).exp(), 0.0)).unwrap();
        assert_eq!(sp.eval(0.9).unwrap().re, (-0.81f64).exp());
        assert_eq!(sp.eval(100.0).unwrap().re, 0.0);
        assert!((sp.density[3] - 0.81).abs() < 1e-12);
    }
}
