use rayon::prelude::*;
use serde::Serialize;

use super::CounterexampleBundle;
use crate::error::{Error, Result};
use crate::jacobi::{PhiEvaluator, SpectralPoint};
use crate::quadrature::{pairwise_sum, QuadratureSpec};
use crate::specfun::plancherel_density;
use crate::transforms::KAPPA;

const NEGLIGIBLE: f64 = 1e-18;

/// Scaled radial solutions `u_m = e^{-s_m}·𝓕⁻¹[(−(λ²+ρ²))^m e^{-λ²}]` in the `(α_l, β_l)` geometry.
fn radial_solutions(
    bundle: &CounterexampleBundle,
    r_nodes: &[f64],
    m_list: &[u32],
    quad: &QuadratureSpec,
) -> Result<Vec<(f64, Vec<f64>)>> {
    if r_nodes.is_empty() || r_nodes.windows(2).any(|w| !(w[1] > w[0])) || r_nodes[0] < 0.0 {
        return Err(Error::InvalidParams("radial nodes must be nonnegative and increasing".into()));
    }
    let params = bundle.space.shifted_params();
    let rho2 = bundle.space.rho().powi(2);
    let m_top = m_list.iter().copied().max().unwrap_or(0) as f64;
    let r_last = *r_nodes.last().unwrap();
    let rule = QuadratureSpec { lambda_max: 8.0 + 4.0 * (m_top + 1.0).sqrt(), t_max: r_last.max(1.0), ..*quad };
    let (lam, w) = rule.lambda_nodes();
    let dens: Vec<f64> = lam.iter().map(|&l| plancherel_density(params, l)).collect::<Result<_>>()?;
    let ln_amp = |l: f64, m: u32| m as f64 * (l * l + rho2).ln() - l * l;

    let scales: Vec<f64> = m_list.iter().map(|&m| lam.iter().map(|&l| ln_amp(l, m)).fold(f64::NEG_INFINITY, f64::max)).collect();
    let coeffs: Vec<Vec<f64>> = m_list
        .iter()
        .zip(&scales)
        .map(|(&m, s)| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let mut c: Vec<f64> = (0..lam.len()).map(|k| sign * KAPPA * w[k] * dens[k] * (ln_amp(lam[k], m) - s).exp()).collect();
            let largest = c.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            c.iter_mut().filter(|v| v.abs() < NEGLIGIBLE * largest).for_each(|v| *v = 0.0);
            c
        })
        .collect();

    let active: Vec<usize> = (0..lam.len()).filter(|&k| coeffs.iter().any(|c| c[k] != 0.0)).collect();
    let tables: Vec<Vec<f64>> = active
        .par_iter()
        .map(|&k| Ok(PhiEvaluator::new(params, SpectralPoint::real(lam[k])).table(r_nodes)?.iter().map(|p| p.value).collect()))
        .collect::<Result<_>>()?;
    Ok(coeffs
        .iter()
        .zip(&scales)
        .map(|(c, &s)| {
            let values = (0..r_nodes.len())
                .map(|i| pairwise_sum(&active.iter().zip(&tables).map(|(&k, t)| c[k] * t[i]).collect::<Vec<_>>()))
                .collect();
            (s, values)
        })
        .collect())
}

/// `(sinh r)^l (Δ_l + δ)^m h₁(r)` at the nodes, stored as `e^{ln_scale}·values`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialFactors {
    pub r: Vec<f64>,
    pub m_list: Vec<u32>,
    pub ln_scale: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

pub fn radial_factors(
    bundle: &CounterexampleBundle,
    r_nodes: &[f64],
    m_list: &[u32],
    quad: &QuadratureSpec,
) -> Result<RadialFactors> {
    let l = bundle.space.l as i32;
    let sols = radial_solutions(bundle, r_nodes, m_list, quad)?;
    let (ln_scale, values) =
        sols.into_iter().map(|(s, u)| (s, u.iter().zip(r_nodes).map(|(v, r)| v * r.sinh().powi(l)).collect())).unzip();
    Ok(RadialFactors { r: r_nodes.to_vec(), m_list: m_list.to_vec(), ln_scale, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VanishingRow {
    pub m: u32,
    /// `max_r |Δ^m f(k₀ a_r)|`.
    pub max_abs: f64,
    /// `ln max_r |radial factor|`.
    pub ln_radial_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VanishingReport {
    /// `Y_l(k₀)`, and the same relative to `max |Y_l| = Y_l(1)`.
    pub harmonic_at_k0: f64,
    pub relative_harmonic: f64,
    pub rows: Vec<VanishingRow>,
    pub max_abs: f64,
}

/// `Δ^m f` along the `k₀`-ray, reconstructed as `Y_l(k₀)` times the radial factor.
pub fn vanishing_check(
    bundle: &CounterexampleBundle,
    r_nodes: &[f64],
    m_list: &[u32],
    quad: &QuadratureSpec,
) -> Result<VanishingReport> {
    let y0 = bundle.harmonic(bundle.k0_cos)?;
    let y_max = bundle.harmonic(1.0)?.abs();
    let factors = radial_factors(bundle, r_nodes, m_list, quad)?;
    let rows: Vec<VanishingRow> = factors
        .m_list
        .iter()
        .zip(&factors.ln_scale)
        .zip(&factors.values)
        .map(|((&m, s), v)| {
            let peak = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            let ln_radial_max = s + peak.ln();
            let max_abs = if y0 == 0.0 || peak == 0.0 { 0.0 } else { (y0.abs().ln() + ln_radial_max).exp() };
            VanishingRow { m, max_abs, ln_radial_max }
        })
        .collect();
    let max_abs = rows.iter().fold(0.0f64, |a, r| a.max(r.max_abs));
    Ok(VanishingReport { harmonic_at_k0: y0, relative_harmonic: y0.abs() / y_max, rows, max_abs })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeckeBochnerReport {
    pub step: f64,
    pub r_max: f64,
    /// `m` and `max|(Δ_l+δ)^m h₁ − 𝓕⁻¹[(−(λ²+ρ²))^m e^{-λ²}]| / max|·|`.
    pub relative_errors: Vec<(u32, f64)>,
}

const FD_STEP: f64 = 0.025;
const FD_HALF: usize = 3;

fn apply_shifted_laplacian(u: &[f64], h: f64, a: f64, b: f64, delta: f64) -> Vec<f64> {
    let at = |i: isize| u[i.unsigned_abs()];
    (0..u.len() - FD_HALF)
        .map(|i| {
            let i = i as isize;
            let d1 =
                (-at(i - 3) + 9.0 * at(i - 2) - 45.0 * at(i - 1) + 45.0 * at(i + 1) - 9.0 * at(i + 2) + at(i + 3)) / (60.0 * h);
            let d2 = (2.0 * at(i - 3) - 27.0 * at(i - 2) + 270.0 * at(i - 1) - 490.0 * at(i) + 270.0 * at(i + 1)
                - 27.0 * at(i + 2)
                + 2.0 * at(i + 3))
                / (180.0 * h * h);
            let r = i as f64 * h;
            if i == 0 {
                (a + 1.0) * d2 + delta * at(0)
            } else {
                d2 + (a / r.tanh() + b * r.tanh()) * d1 + delta * at(i)
            }
        })
        .collect()
}

/// `(Δ_{(α_l,β_l)} + δ)^m h₁` by finite differences against the spectral multiplier, `m ∈ {1, 2}`.
pub fn hecke_bochner_check(bundle: &CounterexampleBundle, r_max: f64, quad: &QuadratureSpec) -> Result<HeckeBochnerReport> {
    let params = bundle.space.shifted_params();
    let (a, b) = (2.0 * params.alpha() + 1.0, 2.0 * params.beta() + 1.0);
    let delta = bundle.space.rho_l().powi(2) - bundle.space.rho().powi(2);
    let count = (r_max / FD_STEP).ceil() as usize + 2 * FD_HALF + 1;
    let r: Vec<f64> = (0..count).map(|i| i as f64 * FD_STEP).collect();
    let sols = radial_solutions(bundle, &r, &[0, 1, 2], quad)?;
    let keep = (r_max / FD_STEP).floor() as usize + 1;
    let mut u = sols[0].1.clone();
    let mut relative_errors = Vec::new();
    for m in 1..=2 {
        u = apply_shifted_laplacian(&u, FD_STEP, a, b, delta);
        let (s, target) = (&sols[m].0, &sols[m].1);
        let factor = (sols[0].0 - s).exp();
        let peak = target[..keep].iter().fold(0.0f64, |x, v| x.max(v.abs()));
        let err = (0..keep).fold(0.0f64, |x, i| x.max((u[i] * factor - target[i]).abs()));
        relative_errors.push((m as u32, err / peak));
    }
    Ok(HeckeBochnerReport { step: FD_STEP, r_max, relative_errors })
}
