use std::f64::consts::PI;

use rayon::prelude::*;

use super::{jacobi_forward, RadialProfile, SpectralProfile};
use crate::error::{Error, Result};
use crate::quadrature::{composite_nodes, pairwise_sum, QuadratureSpec};
use crate::specfun::{ComplexValue, JacobiParams};

/// Composite Gauss-Legendre rule on `[0, length]` resolving phases up to `omega·t`.
pub fn radial_nodes(length: f64, omega: f64, quad: &QuadratureSpec) -> (Vec<f64>, Vec<f64>) {
    composite_nodes(0.0, length, quad.panels_for(length, omega), quad.points_per_panel)
}

fn profile_rule(f: &RadialProfile, omega: f64) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let quad = QuadratureSpec::default();
    let (t, w) = radial_nodes(f.extent(), omega, &quad);
    let v = t.iter().map(|&x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    Ok((t, w, v))
}

/// Even Euclidean Fourier transform `2 ∫₀^∞ f(t) cos(2πξt) dt` at `xi_nodes`.
///
/// The returned density column is identically 1 (Lebesgue measure).
pub fn euclid_cosine_ft(f: &RadialProfile, xi_nodes: &[f64]) -> Result<SpectralProfile> {
    let omega = 2.0 * PI * xi_nodes.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let (t, w, v) = profile_rule(f, omega.max(1.0))?;
    if f.support_radius.is_none() {
        let peak = f.sup_norm();
        let end = f.values.last().copied().unwrap_or(0.0).abs();
        if peak > 0.0 && end > 1e-10 * peak {
            return Err(Error::TailMass(format!("profile is {end:e} at its last node, not decayed")));
        }
    }
    let values = xi_nodes
        .par_iter()
        .map(|&xi| {
            let terms: Vec<f64> = t.iter().zip(&w).zip(&v).map(|((&t, &w), &v)| w * v * (2.0 * PI * xi * t).cos()).collect();
            ComplexValue::new(2.0 * pairwise_sum(&terms), 0.0)
        })
        .collect();
    let mut xi = xi_nodes.to_vec();
    let mut vals: Vec<ComplexValue> = values;
    if xi.windows(2).any(|p| !(p[1] > p[0])) {
        let mut idx: Vec<usize> = (0..xi.len()).collect();
        idx.sort_by(|&a, &b| xi[a].total_cmp(&xi[b]));
        xi = idx.iter().map(|&i| xi_nodes[i]).collect();
        vals = idx.iter().map(|&i| vals[i]).collect();
    }
    let n = xi.len();
    SpectralProfile::new(xi, vals, vec![1.0; n])
}

/// Abel transform `𝓐f(s) = (1/π) ∫₀^Λ 𝓕f(λ) cos(λs) dλ` at `s_nodes` (sorted, starting at 0).
///
/// When `f` declares a support radius `L`, the output declares none:
/// truncation at `Λ` leaves a small leakage beyond `L` that callers measure.
pub fn abel_slice(params: JacobiParams, f: &RadialProfile, s_nodes: &[f64], quad: &QuadratureSpec) -> Result<RadialProfile> {
    let (lam, w) = quad.lambda_nodes();
    let fhat = jacobi_forward(params, f, &lam, quad)?;
    let coeff: Vec<f64> = w.iter().zip(&fhat.values).map(|(w, v)| w * v.re / PI).collect();
    let values = s_nodes
        .par_iter()
        .map(|&s| {
            let terms: Vec<f64> = coeff.iter().zip(&lam).map(|(c, l)| c * (l * s).cos()).collect();
            pairwise_sum(&terms)
        })
        .collect();
    RadialProfile::new(s_nodes.to_vec(), values, None)
}
