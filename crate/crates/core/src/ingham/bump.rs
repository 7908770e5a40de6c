use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::{ingham_integral, Classification, ThetaProfile};
use crate::error::{Error, Result};
use crate::quadrature::{composite_nodes, log_sum_exp, pairwise_sum, QuadratureSpec};
use crate::specfun::{ln_plancherel_density, JacobiParams};
use crate::transforms::{radial_nodes, RadialProfile, SpectralProfile};

/// `ln |sin(πx)/(πx)|`.
fn ln_abs_sinc(x: f64) -> f64 {
    let y = PI * x.abs();
    if y < 1e-4 {
        let y2 = y * y;
        -y2 / 6.0 - y2 * y2 / 180.0
    } else {
        (y.sin() / y).abs().ln()
    }
}

/// Decreasing upper envelope of `ln |sinc x|`.
fn ln_sinc_envelope(x: f64) -> f64 {
    if x.abs() <= 0.5 {
        ln_abs_sinc(x)
    } else {
        -(PI * x.abs()).ln()
    }
}

/// One dyadic block: `count` copies of the boxcar of half-width `radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoxcarBlock {
    pub radius: f64,
    pub count: u64,
}

/// Exact spectrum `∏_j sinc(2a_jξ)^{n_j}` of a boxcar convolution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BumpSpectrum {
    pub blocks: Vec<BoxcarBlock>,
}

impl BumpSpectrum {
    pub fn support(&self) -> f64 {
        self.blocks.iter().map(|b| b.count as f64 * b.radius).sum()
    }

    pub fn ln_abs(&self, xi: f64) -> f64 {
        self.blocks.iter().map(|b| b.count as f64 * ln_abs_sinc(2.0 * b.radius * xi)).sum()
    }

    pub fn value(&self, xi: f64) -> f64 {
        let mut sign = 1.0;
        for b in &self.blocks {
            let y = 2.0 * PI * b.radius * xi;
            if b.count % 2 == 1 && y.sin() * y.signum() < 0.0 {
                sign = -sign;
            }
        }
        sign * self.ln_abs(xi).exp()
    }

    fn ln_envelope(&self, xi: f64) -> f64 {
        self.blocks.iter().map(|b| b.count as f64 * ln_sinc_envelope(2.0 * b.radius * xi)).sum()
    }

    /// Smallest `ξ` beyond which `|𝓕h₀| < e^{ln_floor}`.
    pub fn cutoff(&self, ln_floor: f64) -> f64 {
        let mut hi = 1.0;
        while self.ln_envelope(hi) > ln_floor && hi < 1e300 {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.ln_envelope(mid) > ln_floor {
                lo = mid
            } else {
                hi = mid
            }
        }
        hi
    }
}

#[derive(Debug, Clone)]
pub struct Bump {
    pub spectrum: BumpSpectrum,
    /// `h₀` on `[0, Σ n_j a_j]`.
    pub profile: RadialProfile,
    /// `𝓕h₀` sampled at the Gauss nodes used for the profile.
    pub sampled_spectrum: SpectralProfile,
}

impl Bump {
    pub fn support(&self) -> f64 {
        self.spectrum.support()
    }
}

/// Highest frequency at which the sampled profile is meant to be transformed.
pub const PROFILE_XI_MAX: f64 = 64.0;
const LN_FLOOR: f64 = -43.0;
/// Spectra decaying too slowly (few blocks) are truncated here.
const XI_CAP: f64 = 4096.0;

/// Radii for `J` dyadic blocks: block `j` holds `2^j` boxcars of half-width
/// `a_j = (L/2)·(θ(2^j)/2^j) / Σ_{k<J} θ(2^k)`, so the total support is `L/2`.
pub fn dyadic_blocks(theta: &ThetaProfile, support: f64, terms: u32) -> Result<Vec<BoxcarBlock>> {
    if !(support > 0.0) || terms == 0 || terms > 62 {
        return Err(Error::InvalidParams(format!("need L > 0 and 1 ≤ J ≤ 62, got L = {support}, J = {terms}")));
    }
    let weights: Vec<f64> = (0..terms).map(|j| theta.eval(2f64.powi(j as i32))).collect();
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::Budget(format!("Σθ(2^k) = {total}; no radius budget can be assigned")));
    }
    Ok(weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w > 0.0)
        .map(|(j, w)| BoxcarBlock { radius: 0.5 * support * w / total / 2f64.powi(j as i32), count: 1u64 << j })
        .collect())
}

/// Compactly supported even probability density with decay governed by `θ`.
pub fn bump_construct(theta: &ThetaProfile, support: f64, terms: u32) -> Result<Bump> {
    let verdict = ingham_integral(theta, 1)?;
    if verdict.classification == Classification::Divergent {
        return Err(Error::Admissibility("Ingham integral diverges; no compactly supported bump exists".into()));
    }
    let blocks = dyadic_blocks(theta, support, terms)?;
    let spectrum = BumpSpectrum { blocks };
    let extent = spectrum.support();
    if extent > support * (1.0 + 1e-12) {
        return Err(Error::Budget(format!("radii need {extent}, budget {support}")));
    }

    let quad = QuadratureSpec::default();
    let (s_nodes, _) = radial_nodes(extent, 2.0 * PI * PROFILE_XI_MAX, &quad);
    let xi_end = spectrum.cutoff(LN_FLOOR).min(XI_CAP);
    let omega = 4.0 * PI * extent;
    let (xi, w) = composite_nodes(0.0, xi_end, quad.panels_for(xi_end, omega), quad.points_per_panel);
    let fhat: Vec<f64> = xi.iter().map(|&x| spectrum.value(x)).collect();
    let coeff: Vec<f64> = w.iter().zip(&fhat).map(|(w, f)| 2.0 * w * f).collect();

    let mut grid = Vec::with_capacity(s_nodes.len() + 2);
    grid.push(0.0);
    grid.extend_from_slice(&s_nodes);
    grid.push(extent);
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&s| {
            if s >= extent {
                return 0.0;
            }
            let terms: Vec<f64> = coeff.iter().zip(&xi).map(|(c, x)| c * (2.0 * PI * x * s).cos()).collect();
            pairwise_sum(&terms)
        })
        .collect();
    let profile = RadialProfile::new(grid, values, Some(extent))?;
    let sampled_spectrum = SpectralProfile::new(xi.clone(), fhat.iter().map(|&v| v.into()).collect(), vec![1.0; xi.len()])?;
    Ok(Bump { spectrum, profile, sampled_spectrum })
}

/// Spectral data accepted by [`decay_verify`].
pub enum Spectrum<'a> {
    Sampled(&'a SpectralProfile),
    Product(&'a BumpSpectrum),
    /// `ξ ↦ ln |f̂(ξ)|`.
    LnAbs(&'a (dyn Fn(f64) -> f64 + Sync)),
}

impl Spectrum<'_> {
    fn ln_abs(&self, xi: f64) -> Result<f64> {
        match self {
            Spectrum::Sampled(s) => Ok(s.eval(xi)?.norm().ln()),
            Spectrum::Product(p) => Ok(p.ln_abs(xi)),
            Spectrum::LnAbs(f) => Ok(f(xi)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedIntegral {
    /// `∫₀^{ξ_max} |f̂(λ)| e^{λθ(λ)} |c(λ)|^{-2} dλ`.
    pub value: f64,
    /// Integrand on the last octave relative to its global maximum.
    pub tail_ratio: f64,
    pub finite: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    pub xi_max: f64,
    pub grid_points: usize,
    /// `ln C`, `+∞` when no constant works.
    pub ln_constant: f64,
    pub constant: f64,
    /// Grid point where `ln|f̂| + ξθ(ξ)` peaks.
    pub argmax: f64,
    pub satisfied: bool,
    pub weighted: Option<WeightedIntegral>,
}

pub const DECAY_POINTS_PER_DECADE: usize = 64;
const WEIGHTED_FINITE_RATIO: f64 = 1e-3;

/// `{0}` plus a geometric grid on `[1, ξ_max]`, 64 points per decade.
pub fn decay_grid(xi_max: f64) -> Vec<f64> {
    let mut g = vec![0.0];
    if xi_max > 1.0 {
        let n = (xi_max.log10() * DECAY_POINTS_PER_DECADE as f64).ceil() as usize;
        g.extend((0..=n).map(|i| xi_max.powf(i as f64 / n as f64)));
    }
    g
}

/// Smallest `C` with `|f̂(ξ)| ≤ C e^{-ξθ(ξ)}` on the decay grid.
///
/// `C = ∞` when `ln|f̂| + ξθ(ξ)` still reaches a new maximum on the last octave.
/// With `params`, also the weighted integral against the Plancherel density.
pub fn decay_verify(
    spectrum: &Spectrum<'_>,
    theta: &ThetaProfile,
    xi_max: f64,
    params: Option<JacobiParams>,
) -> Result<DecayReport> {
    if !(xi_max > 1.0) {
        return Err(Error::InvalidParams(format!("xi_max must exceed 1, got {xi_max}")));
    }
    let grid = decay_grid(xi_max);
    let excess: Vec<f64> = grid.iter().map(|&x| Ok(spectrum.ln_abs(x)? + x * theta.eval(x))).collect::<Result<_>>()?;
    let (imax, &peak) =
        excess.iter().enumerate().fold((0, &f64::NEG_INFINITY), |acc, (i, v)| if *v > *acc.1 { (i, v) } else { acc });
    let split = grid.partition_point(|&x| x < 0.5 * xi_max);
    let early = excess[..split].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let late = excess[split..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_constant = if late > early + 1e-9 { f64::INFINITY } else { peak };

    let weighted = match params {
        Some(p) => Some(weighted_integral(spectrum, theta, xi_max, p)?),
        None => None,
    };
    Ok(DecayReport {
        xi_max,
        grid_points: grid.len(),
        ln_constant,
        constant: ln_constant.exp(),
        argmax: grid[imax],
        satisfied: ln_constant.is_finite(),
        weighted,
    })
}

fn weighted_integral(
    spectrum: &Spectrum<'_>,
    theta: &ThetaProfile,
    xi_max: f64,
    params: JacobiParams,
) -> Result<WeightedIntegral> {
    let panels = (4.0 * xi_max).ceil() as usize;
    let (lam, w) = composite_nodes(0.0, xi_max, panels, 16);
    let ln_terms: Vec<f64> = lam
        .iter()
        .map(|&l| Ok(spectrum.ln_abs(l)? + l * theta.eval(l) + ln_plancherel_density(params, l)?))
        .collect::<Result<_>>()?;
    let peak = ln_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let split = lam.partition_point(|&x| x < 0.5 * xi_max);
    let late = ln_terms[split..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tail_ratio = (late - peak).exp();
    let weighted: Vec<f64> = ln_terms.iter().zip(&w).map(|(t, w)| t + w.ln()).collect();
    Ok(WeightedIntegral { value: log_sum_exp(&weighted).exp(), tail_ratio, finite: tail_ratio < WEIGHTED_FINITE_RATIO })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::euclid_cosine_ft;

    fn theta_one() -> ThetaProfile {
        ThetaProfile::theta_one(1e4).unwrap()
    }

    #[test]
    fn single_block_is_boxcar() {
        let b = bump_construct(&theta_one(), 1.0, 1).unwrap();
        assert_eq!(b.spectrum.blocks.len(), 1);
        assert!((b.support() - 0.5).abs() < 1e-15);
        for xi in [0.1, 0.7, 2.3] {
            let y = PI * xi;
            assert!((b.spectrum.value(xi) - y.sin() / y).abs() < 1e-14);
        }
    }

    #[test]
    fn bump_is_probability_density() {
        let b = bump_construct(&theta_one(), 1.0, 24).unwrap();
        assert!(b.support() <= 1.0);
        assert!((b.support() - 0.5).abs() < 1e-12);
        let peak = b.profile.sup_norm();
        assert!(b.profile.values.iter().all(|&v| v >= -1e-12 * peak));
        let mass = euclid_cosine_ft(&b.profile, &[0.0]).unwrap().values[0].re;
        assert!((mass - 1.0).abs() < 1e-9, "{mass}");
    }

    #[test]
    fn sampled_profile_matches_product() {
        let b = bump_construct(&theta_one(), 1.0, 24).unwrap();
        let xi: Vec<f64> = (0..=256).map(|i| i as f64 * 0.25).collect();
        let ft = euclid_cosine_ft(&b.profile, &xi).unwrap();
        for (x, v) in xi.iter().zip(&ft.values) {
            assert!((v.re - b.spectrum.value(*x)).abs() < 1e-6, "ξ={x}");
        }
    }

    #[test]
    fn exponential_against_half() {
        let f = |x: f64| -x;
        let half =
            ThetaProfile::from_table(vec![0.0, 1e4], vec![0.5, 0.5], &super::super::TailLaw::Power { coef: 1.0, exponent: 1.0 })
                .unwrap();
        let r = decay_verify(&Spectrum::LnAbs(&f), &half, 1e3, None).unwrap();
        assert!(r.satisfied);
        assert!((r.constant - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sinc_against_inverse_log() {
        let f = |x: f64| ln_abs_sinc(x);
        let r = decay_verify(&Spectrum::LnAbs(&f), &ThetaProfile::inverse_log(1e4).unwrap(), 1e3, None).unwrap();
        assert!(!r.satisfied);
        assert!(r.constant.is_infinite());
    }

    #[test]
    fn bump_meets_its_own_decay() {
        let th = theta_one();
        let b = bump_construct(&th, 1.0, 24).unwrap();
        let r = decay_verify(&Spectrum::Product(&b.spectrum), &th, 1e3, None).unwrap();
        assert!(r.satisfied, "{r:?}");
    }

    #[test]
    fn larger_theta_larger_constant() {
        let th = theta_one();
        let b = bump_construct(&th, 1.0, 24).unwrap();
        let small = ThetaProfile::inverse_sqrt(4.0, 1.0, 1e4).unwrap();
        let c_small = decay_verify(&Spectrum::Product(&b.spectrum), &small, 1e3, None).unwrap().ln_constant;
        let c_big = decay_verify(&Spectrum::Product(&b.spectrum), &th, 1e3, None).unwrap().ln_constant;
        assert!(c_small <= c_big);
    }

    #[test]
    fn divergent_theta_rejected() {
        let err = bump_construct(&ThetaProfile::inverse_log(1e3).unwrap(), 1.0, 24).unwrap_err();
        assert!(matches!(err, Error::Admissibility(_)));
        let zero = ThetaProfile::constant(0.0, 10.0).unwrap();
        assert!(matches!(bump_construct(&zero, 1.0, 8).unwrap_err(), Error::Budget(_)));
    }

    #[test]
    fn weighted_integral_finite_for_bump() {
        let th = theta_one();
        let b = bump_construct(&th, 1.0, 24).unwrap();
        let p = JacobiParams::hyperbolic(3).unwrap();
        let r = decay_verify(&Spectrum::Product(&b.spectrum), &th, 1e3, Some(p)).unwrap();
        let w = r.weighted.unwrap();
        assert!(w.finite && w.value.is_finite() && w.value > 0.0, "{w:?}");
    }
}
