use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::euclid::radial_nodes;
use super::{RadialProfile, SpectralProfile};
use crate::error::{Error, Result};
use crate::jacobi::{PhiEvaluator, SpectralPoint};
use crate::quadrature::{composite_nodes, pairwise_sum, QuadratureSpec};
use crate::specfun::{plancherel_density, ComplexValue, JacobiParams};

/// Inversion constant in `f(t) = κ ∫₀^∞ 𝓕f(λ) φ_λ(t) |c(λ)|^{-2} dλ`.
pub const KAPPA: f64 = 1.0 / (2.0 * PI);

const BLOCK: usize = 32;
const NEGLIGIBLE: f64 = 1e-18;

/// `ln((2 sinh t)^{2α+1} (2 cosh t)^{2β+1})`.
pub fn ln_weight(params: JacobiParams, t: f64) -> f64 {
    let (ka, kb) = (2.0 * params.alpha() + 1.0, 2.0 * params.beta() + 1.0);
    let sinh_part = if ka == 0.0 { 0.0 } else { ka * (2.0 * t.sinh()).ln() };
    let cosh_part = if kb == 0.0 { 0.0 } else { kb * (2.0 * t.cosh()).ln() };
    sinh_part + cosh_part
}

fn weight(params: JacobiParams, t: f64) -> f64 {
    ln_weight(params, t).exp()
}

/// Integration range in `t`: the declared support, else the full `t_max`.
fn integration_length(f: &RadialProfile, quad: &QuadratureSpec) -> f64 {
    f.support_radius.map_or(quad.t_max, |l| l.min(quad.t_max))
}

/// Fourier-Jacobi transform of `f` at `lambdas`.
///
/// The `t`-rule is `radial_nodes(L, max λ)` on `[0, L]`, `L` the support radius
/// or `t_max`; profiles sampled on exactly those nodes are used without interpolation.
pub fn jacobi_forward(
    params: JacobiParams,
    f: &RadialProfile,
    lambdas: &[f64],
    quad: &QuadratureSpec,
) -> Result<SpectralProfile> {
    quad.validate()?;
    let length = integration_length(f, quad);
    let omega = lambdas.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let (nodes, w) = radial_nodes(length, omega, quad);

    let mut exact = true;
    let mut fv = Vec::with_capacity(nodes.len());
    for &t in &nodes {
        exact &= f.grid.binary_search_by(|g| g.total_cmp(&t)).is_ok();
        fv.push(f.eval(t)?);
    }
    let sup = f.sup_norm();
    if !exact && sup > 0.0 {
        let est = f.interpolation_error()?;
        if est > quad.tolerance * sup {
            return Err(Error::Interpolation(format!(
                "grid too coarse: interpolation error {est:e} exceeds {:e}",
                quad.tolerance * sup
            )));
        }
    }

    let q: Vec<f64> = nodes.iter().zip(&w).zip(&fv).map(|((&t, &w), &v)| w * v * weight(params, t)).collect();
    let truncated = f.support_radius.is_none_or(|l| l > quad.t_max) || f.t_end() < quad.t_max;
    if truncated && sup > 0.0 {
        let phi0 = PhiEvaluator::new(params, SpectralPoint::real(0.0)).table(&nodes)?;
        let mags: Vec<f64> = q.iter().zip(&w).zip(&phi0).map(|((q, w), p)| (q / w * p.value).abs()).collect();
        let peak = mags.iter().fold(0.0f64, |m, v| m.max(*v));
        let end_val = *mags.last().expect("nonempty rule");
        if end_val > 1e-3 * quad.tolerance * peak {
            return Err(Error::TailMass(format!(
                "weighted integrand at t = {} is {end_val:e}, above {:e}",
                nodes.last().expect("nonempty rule"),
                1e-3 * quad.tolerance * peak
            )));
        }
    }

    let values = lambdas
        .par_iter()
        .map(|&lam| {
            let tab = PhiEvaluator::new(params, SpectralPoint::real(lam)).table(&nodes)?;
            let terms: Vec<f64> = q.iter().zip(&tab).map(|(q, p)| q * p.value).collect();
            Ok(ComplexValue::new(pairwise_sum(&terms), 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let density = lambdas.iter().map(|&l| plancherel_density(params, l.abs())).collect::<Result<Vec<_>>>()?;
    SpectralProfile::new(lambdas.to_vec(), values, density)
}

/// λ-quadrature used by the inverse transform for outputs up to `t_last`.
fn lambda_rule(quad: &QuadratureSpec, t_last: f64) -> (Vec<f64>, Vec<f64>) {
    let omega = quad.t_max.max(t_last);
    composite_nodes(0.0, quad.lambda_max, quad.panels_for(quad.lambda_max, omega), quad.points_per_panel)
}

fn inverse_with(
    params: JacobiParams,
    fhat: &SpectralProfile,
    t_nodes: &[f64],
    quad: &QuadratureSpec,
    kappa: f64,
) -> Result<RadialProfile> {
    quad.validate()?;
    if t_nodes.first() != Some(&0.0) {
        return Err(Error::InvalidParams("inverse transform output nodes must start at 0".into()));
    }
    let t_last = *t_nodes.last().expect("nonempty");
    let (lam, w) = lambda_rule(quad, t_last);
    let fv = fhat.eval_many(&lam)?;
    let dens = lam.iter().map(|&l| plancherel_density(params, l)).collect::<Result<Vec<_>>>()?;
    let mut coeff: Vec<f64> = (0..lam.len()).map(|k| kappa * w[k] * fv[k].re * dens[k]).collect();
    // |φ_λ| ≤ 1, so nodes below this share of the largest coefficient cannot move the sum
    let largest = coeff.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    coeff.iter_mut().filter(|c| c.abs() < NEGLIGIBLE * largest).for_each(|c| *c = 0.0);

    let peak = (0..lam.len()).fold(0.0f64, |m, k| m.max((fv[k].re * dens[k]).abs()));
    if peak > 0.0 && fhat.lambda_end() >= quad.lambda_max {
        let end = fhat.eval(quad.lambda_max)?.re.abs() * plancherel_density(params, quad.lambda_max)?;
        if end > 1e-3 * quad.tolerance * peak {
            return Err(Error::TailMass(format!(
                "spectral integrand at λ = {} is {end:e}, above {:e}",
                quad.lambda_max,
                1e-3 * quad.tolerance * peak
            )));
        }
    }

    let blocks: Vec<usize> = (0..lam.len()).step_by(BLOCK).collect();
    let partial = blocks
        .par_iter()
        .map(|&start| {
            let mut acc = vec![0.0; t_nodes.len()];
            for k in start..(start + BLOCK).min(lam.len()) {
                if coeff[k] == 0.0 {
                    continue;
                }
                let tab = PhiEvaluator::new(params, SpectralPoint::real(lam[k])).table(t_nodes)?;
                for (a, p) in acc.iter_mut().zip(&tab) {
                    *a += coeff[k] * p.value;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let values = (0..t_nodes.len()).map(|i| pairwise_sum(&partial.iter().map(|b| b[i]).collect::<Vec<_>>())).collect();
    RadialProfile::new(t_nodes.to_vec(), values, None)
}

/// Inverse Fourier-Jacobi transform of `fhat` at `t_nodes` (sorted, starting at 0).
/// Only the real part of `fhat` contributes.
pub fn jacobi_inverse(
    params: JacobiParams,
    fhat: &SpectralProfile,
    t_nodes: &[f64],
    quad: &QuadratureSpec,
) -> Result<RadialProfile> {
    inverse_with(params, fhat, t_nodes, quad, KAPPA)
}

/// Heat profile `h_τ` with `𝓕h_τ(λ) = e^{-τλ²}`.
pub fn heat_profile(params: JacobiParams, time: f64, t_nodes: &[f64], quad: &QuadratureSpec) -> Result<RadialProfile> {
    if !(time > 0.0) || !time.is_finite() {
        return Err(Error::InvalidParams(format!("heat time must be positive, got {time}")));
    }
    let (lam, _) = lambda_rule(quad, *t_nodes.last().unwrap_or(&0.0));
    let fhat = SpectralProfile::from_fn(params, &lam, |l| ComplexValue::new((-time * l * l).exp(), 0.0))?;
    jacobi_inverse(params, &fhat, t_nodes, quad)
}

/// Both sides of the Plancherel identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlancherelSides {
    pub radial: f64,
    pub spectral: f64,
    pub relative_gap: f64,
}

/// `∫|f|² W dt` and `κ ∫|𝓕f|² |c|^{-2} dλ` on the canonical quadrature rules.
pub fn plancherel_sides(
    params: JacobiParams,
    f: &RadialProfile,
    fhat: &SpectralProfile,
    quad: &QuadratureSpec,
) -> Result<PlancherelSides> {
    let length = integration_length(f, quad);
    let (t, wt) = radial_nodes(length, quad.lambda_max, quad);
    let mut radial_terms = Vec::with_capacity(t.len());
    for (&ti, &wi) in t.iter().zip(&wt) {
        radial_terms.push(wi * f.eval(ti)?.powi(2) * weight(params, ti));
    }
    let (lam, wl) = lambda_rule(quad, quad.t_max);
    let fv = fhat.eval_many(&lam)?;
    let spectral_terms = lam
        .iter()
        .zip(&wl)
        .zip(&fv)
        .map(|((&l, &w), v)| Ok(w * v.norm_sqr() * plancherel_density(params, l)?))
        .collect::<Result<Vec<_>>>()?;
    let radial = pairwise_sum(&radial_terms);
    let spectral = KAPPA * pairwise_sum(&spectral_terms);
    let relative_gap = (radial - spectral).abs() / radial.abs().max(spectral.abs()).max(f64::MIN_POSITIVE);
    Ok(PlancherelSides { radial, spectral, relative_gap })
}

/// Plancherel calibration of κ on the reference pair `𝓕f = e^{-λ²}`:
/// synthesize `f` with unit constant and return `∫|𝓕f|²|c|^{-2} / ∫|f|² W`.
pub fn calibrate_kappa(params: JacobiParams, quad: &QuadratureSpec) -> Result<f64> {
    let (t, _) = quad.t_nodes();
    let mut nodes = vec![0.0];
    nodes.extend(t);
    let (lam, _) = lambda_rule(quad, quad.t_max);
    let fhat = SpectralProfile::from_fn(params, &lam, |l| ComplexValue::new((-l * l).exp(), 0.0))?;
    let raw = inverse_with(params, &fhat, &nodes, quad, 1.0)?;
    let sides = plancherel_sides(params, &raw, &fhat, quad)?;
    Ok(sides.spectral / KAPPA / sides.radial)
}

/// Seeded smooth even spectrum: three Gaussian bumps `a(e^{-(λ-μ)²/2σ²} + e^{-(λ+μ)²/2σ²})`
/// sampled on the canonical λ-rule of `quad`.
pub fn band_limited_spectrum(params: JacobiParams, seed: u64, index: u64, quad: &QuadratureSpec) -> Result<SpectralProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let bumps: Vec<(f64, f64, f64)> = (0..3)
        .map(|_| {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let a = sign * rng.gen_range(0.3..1.0);
            let mu = rng.gen_range(0.0..8.0);
            let sigma = rng.gen_range(0.8..1.5);
            (a, mu, sigma)
        })
        .collect();
    let (lam, _) = lambda_rule(quad, quad.t_max);
    SpectralProfile::from_fn(params, &lam, |l| {
        let v: f64 = bumps
            .iter()
            .map(|(a, mu, s)| a * ((-(l - mu).powi(2) / (2.0 * s * s)).exp() + (-(l + mu).powi(2) / (2.0 * s * s)).exp()))
            .sum();
        ComplexValue::new(v, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::euclid_cosine_ft;

    #[test]
    fn zero_in_zero_out() {
        let params = JacobiParams::new(0.5, -0.5).unwrap();
        let quad = QuadratureSpec::default();
        let f = RadialProfile::sample(|_| 0.0, &quad.t_nodes().0, None).unwrap();
        let fhat = jacobi_forward(params, &f, &[0.5, 1.0, 2.0], &quad).unwrap();
        assert!(fhat.values.iter().all(|v| v.norm() == 0.0));
        let z = SpectralProfile::from_fn(params, &quad.lambda_nodes().0, |_| ComplexValue::new(0.0, 0.0)).unwrap();
        let back = jacobi_inverse(params, &z, &[0.0, 1.0, 2.0, 3.0], &quad).unwrap();
        assert!(back.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn flat_case_is_cosine_transform() {
        let params = JacobiParams::new(-0.5, -0.5).unwrap();
        let quad = QuadratureSpec::default();
        let lambdas = [0.0, 0.5, 1.0, 3.0, 6.0];
        let f = RadialProfile::sample(|t| (-t * t).exp(), &radial_nodes(quad.t_max, 6.0, &quad).0, None).unwrap();
        let fhat = jacobi_forward(params, &f, &lambdas, &quad).unwrap();
        let xi: Vec<f64> = lambdas.iter().map(|l| l / (2.0 * PI)).collect();
        let e = euclid_cosine_ft(&f, &xi).unwrap();
        for (i, &l) in lambdas.iter().enumerate() {
            let exact = 0.5 * PI.sqrt() * (-l * l / 4.0).exp();
            assert!((fhat.values[i].re - exact).abs() < 1e-12);
            assert!((fhat.values[i].re - e.values[i].re / 2.0).abs() < 1e-8);
        }
    }

    #[test]
    fn h3_gaussian_closed_form() {
        // On H³ the transform of f is the sine transform of t·f(t)·4 / λ:
        // 𝓕f(λ) = (4/λ) ∫ f(t) sinh(t) sin(λt) dt; with f = e^{-t²}/sinh t · t
        // this is (4/λ) ∫ t e^{-t²} sin(λt) dt = √π e^{-λ²/4}.
        let params = JacobiParams::new(0.5, -0.5).unwrap();
        let quad = QuadratureSpec::default();
        let nodes = radial_nodes(quad.t_max, 5.0, &quad).0;
        let f = RadialProfile::sample(|t| if t == 0.0 { 1.0 } else { t / t.sinh() * (-t * t).exp() }, &nodes, None).unwrap();
        let fhat = jacobi_forward(params, &f, &[0.7, 2.0, 5.0], &quad).unwrap();
        for (l, v) in [0.7f64, 2.0, 5.0].iter().zip(&fhat.values) {
            let exact = PI.sqrt() * (-l * l / 4.0).exp();
            assert!((v.re - exact).abs() < 1e-11 * exact.max(1.0), "λ={l}: {} vs {exact}", v.re);
        }
    }

    #[test]
    fn heat_round_trip() {
        let params = JacobiParams::new(1.5, -0.5).unwrap();
        let quad = QuadratureSpec::default();
        let lam = [0.0, 0.5, 1.0, 2.0, 3.0];
        let mut nodes = vec![0.0];
        nodes.extend(radial_nodes(quad.t_max, 3.0, &quad).0);
        let h = heat_profile(params, 1.0, &nodes, &quad).unwrap();
        // positivity and decay where h is above the synthesis noise floor
        let resolved: Vec<f64> = h.grid.iter().zip(&h.values).filter(|(t, _)| **t <= 6.0).map(|(_, v)| *v).collect();
        assert!(resolved.iter().all(|v| *v > 0.0));
        assert!(resolved.windows(2).all(|w| w[1] < w[0]));
        let back = jacobi_forward(params, &h, &lam, &quad).unwrap();
        for (l, v) in lam.iter().zip(&back.values) {
            assert!((v.re - (-l * l).exp()).abs() < 1e-6 * 1.0, "λ={l}: {}", v.re);
        }
    }

    #[test]
    fn kappa_calibration_agrees() {
        let params = JacobiParams::new(0.5, -0.5).unwrap();
        let k = calibrate_kappa(params, &QuadratureSpec::default()).unwrap();
        assert!((k / KAPPA - 1.0).abs() < 1e-8, "{k}");
    }

    #[test]
    fn tail_mass_detected() {
        let params = JacobiParams::new(0.5, -0.5).unwrap();
        let quad = QuadratureSpec::default();
        let f = RadialProfile::sample(|t| (-0.5 * t).exp(), &radial_nodes(quad.t_max, 1.0, &quad).0, None).unwrap();
        assert!(matches!(jacobi_forward(params, &f, &[1.0], &quad), Err(Error::TailMass(_))));
    }
}
