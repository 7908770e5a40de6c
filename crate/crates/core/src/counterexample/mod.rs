//! The hyperbolic-space function `f = (sinh r)^l h₁(r) Y_l(k)` whose Laplacian
//! iterates vanish along a ray while its Chernoff sum diverges.

mod radial;

use serde::Serialize;

pub use radial::{hecke_bochner_check, radial_factors, vanishing_check, HeckeBochnerReport, RadialFactors, VanishingReport};

use crate::chernoff::{carleman_from_fn, CarlemanReport, SpectralTail};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::specfun::{ln_gamma_real, ln_plancherel_density, zonal_harmonic, ComplexValue, HyperbolicSpec, JacobiParams};
use crate::transforms::SpectralProfile;

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleBundle {
    pub space: HyperbolicSpec,
    /// Coefficients of `Q_l(z) = ∏_{m<l}(z - m)`, ascending powers of `z`.
    pub q_poly: Vec<f64>,
    pub harmonic_degree: u32,
    /// Gegenbauer index `ν = (n-2)/2`.
    pub harmonic_nu: f64,
    /// Smallest positive zero of the zonal harmonic, and its cosine.
    pub k0_angle: f64,
    pub k0_cos: f64,
    /// `e^{-λ²}` on the canonical λ-grid, with the `(α_l, β_l)` density.
    #[serde(skip)]
    pub h1_spectral: SpectralProfile,
    pub d_nl: f64,
}

/// Largest zero of the zonal harmonic in `x = cos θ`.
fn largest_zero(n: u32, l: u32) -> Result<f64> {
    if l == 1 {
        return Ok(0.0);
    }
    let y = |x: f64| zonal_harmonic(n, l, x);
    let steps = 4000 * l as usize;
    let mut hi = 1.0;
    let mut y_hi = y(hi)?;
    for i in 1..=steps {
        let lo = 1.0 - i as f64 / steps as f64;
        let y_lo = y(lo)?;
        if y_lo == 0.0 {
            return Ok(lo);
        }
        if y_lo.signum() != y_hi.signum() {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid == a || mid == b {
                    break;
                }
                if y(mid)?.signum() == y_lo.signum() {
                    a = mid
                } else {
                    b = mid
                }
            }
            return Ok(if y(a)?.abs() <= y(b)?.abs() { a } else { b });
        }
        hi = lo;
        y_hi = y_lo;
    }
    Err(Error::NonConvergence(format!("no zero found for the degree-{l} zonal harmonic on S^{}", n - 1)))
}

fn q_coefficients(l: u32) -> Vec<f64> {
    let mut c = vec![1.0];
    for m in 0..l {
        // multiply by (z - m)
        let mut next = vec![0.0; c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= m as f64 * a;
        }
        c = next;
    }
    c
}

impl CounterexampleBundle {
    /// `Q_l(iλ - ρ)` from the stored coefficients.
    pub fn q_at(&self, lambda: f64) -> ComplexValue {
        let z = ComplexValue::new(-self.space.rho(), lambda);
        self.q_poly.iter().rev().fold(ComplexValue::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `Q_l(iλ - ρ)` as the defining product.
    pub fn q_product(&self, lambda: f64) -> ComplexValue {
        let z = ComplexValue::new(-self.space.rho(), lambda);
        (0..self.space.l).fold(ComplexValue::new(1.0, 0.0), |acc, m| acc * (z - m as f64))
    }

    pub fn harmonic(&self, x: f64) -> Result<f64> {
        zonal_harmonic(self.space.n, self.harmonic_degree, x)
    }
}

pub fn build_bundle(n: u32, l: u32) -> Result<CounterexampleBundle> {
    if l == 0 {
        return Err(Error::InvalidParams("the counterexample needs l ≥ 1".into()));
    }
    let space = HyperbolicSpec::new(n, l)?;
    let k0_cos = largest_zero(n, l)?;
    let quad = QuadratureSpec::default();
    let (lam, _) = quad.lambda_nodes();
    let mut grid = vec![0.0];
    grid.extend(lam);
    let h1_spectral = SpectralProfile::from_fn(space.shifted_params(), &grid, |x| ComplexValue::new((-x * x).exp(), 0.0))?;
    Ok(CounterexampleBundle {
        space,
        q_poly: q_coefficients(l),
        harmonic_degree: l,
        harmonic_nu: (n as f64 - 2.0) / 2.0,
        k0_angle: k0_cos.acos(),
        k0_cos,
        h1_spectral,
        d_nl: 1.0,
    })
}

/// `ln` of the spectral magnitude `d·(λ²+ρ²)^m |Q_l(iλ-ρ)| e^{-λ²}` of `Δ^m f`.
pub fn spectral_amplitude(bundle: &CounterexampleBundle, lambda: f64, m: u32) -> f64 {
    let rho = bundle.space.rho();
    m as f64 * (lambda * lambda + rho * rho).ln() + bundle.q_at(lambda).norm().ln() - lambda * lambda + bundle.d_nl.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Increment {
    pub m: u32,
    /// `S_{2M} - S_M`.
    pub increment: f64,
    pub target: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorantFit {
    /// Growth exponent of `|c(λ)|^{-2}` fitted on `[10, 10³]`.
    pub n0: f64,
    pub p0: f64,
    /// Smallest `C` with `|Q_l(iλ-ρ)|² ≤ C(λ²+ρ²)^{p₀}` on the fit grid.
    pub q_constant: f64,
    /// Smallest `ln C₀` with `‖Δ^m f‖² ≤ C₀^{2(m+p₀)} Γ(2m+2p₀+(n₀+1)/2)` over all computed `m`.
    pub ln_c0: f64,
    /// Per-`m` slack `ln(majorant) - ln‖Δ^m f‖²`.
    pub slack: Vec<f64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub carleman: CarlemanReport,
    /// `min_m 2m·term_m` over `m ∈ [10, 100]`.
    pub c_fit: f64,
    pub increments: Vec<Increment>,
    pub majorant: MajorantFit,
}

const FIT_POINTS: usize = 200;

fn fit_grid() -> Vec<f64> {
    (0..=FIT_POINTS).map(|i| 10f64 * 100f64.powf(i as f64 / FIT_POINTS as f64)).collect()
}

/// Least-squares slope of `ln|c|^{-2}` against `ln λ` on `[10, 10³]`.
pub fn fit_density_exponent(params: JacobiParams) -> Result<f64> {
    let grid = fit_grid();
    let x: Vec<f64> = grid.iter().map(|l| l.ln()).collect();
    let y: Vec<f64> = grid.iter().map(|&l| ln_plancherel_density(params, l)).collect::<Result<_>>()?;
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

fn majorant_fit(bundle: &CounterexampleBundle, report: &CarlemanReport) -> Result<MajorantFit> {
    let params = bundle.space.base_params();
    let rho2 = bundle.space.rho().powi(2);
    let n0 = fit_density_exponent(params)?;
    let p0 = bundle.space.l as f64;
    let q_constant = fit_grid().iter().map(|&l| bundle.q_at(l).norm_sqr() / (l * l + rho2).powf(p0)).fold(0.0f64, f64::max);
    let ln_gammas: Vec<f64> =
        report.m_values.iter().map(|&m| ln_gamma_real(2.0 * m as f64 + 2.0 * p0 + (n0 + 1.0) / 2.0)).collect::<Result<_>>()?;
    let ln_c0 = report
        .m_values
        .iter()
        .zip(&report.log_norms)
        .zip(&ln_gammas)
        .map(|((&m, ln), g)| (2.0 * ln - g) / (2.0 * (m as f64 + p0)))
        .fold(f64::NEG_INFINITY, f64::max);
    let ln_c0 = ln_c0 + 1e-12 * ln_c0.abs().max(1.0);
    let slack: Vec<f64> = report
        .m_values
        .iter()
        .zip(&report.log_norms)
        .zip(&ln_gammas)
        .map(|((&m, ln), g)| 2.0 * (m as f64 + p0) * ln_c0 + g - 2.0 * ln)
        .collect();
    let holds = slack.iter().all(|s| *s >= 0.0);
    Ok(MajorantFit { n0, p0, q_constant, ln_c0, slack, holds })
}

/// Carleman data for `f`, from its spectral amplitude against the `H^n` density.
pub fn divergence_report(bundle: &CounterexampleBundle, m_max: u32, quad: &QuadratureSpec) -> Result<DivergenceReport> {
    if m_max > 200 {
        return Err(Error::InvalidParams(format!("m_max must be ≤ 200, got {m_max}")));
    }
    let end = 30f64.max(3.0 * (m_max as f64).sqrt() + 10.0);
    let carleman = carleman_from_fn(
        bundle.space.base_params(),
        |l| spectral_amplitude(bundle, l, 0),
        end,
        m_max,
        SpectralTail::Decaying,
        quad.points_per_panel,
    )?;
    let c_fit = carleman
        .m_values
        .iter()
        .zip(&carleman.terms)
        .filter(|(m, _)| (10..=100).contains(*m))
        .map(|(m, t)| 2.0 * *m as f64 * t)
        .fold(f64::INFINITY, f64::min);
    let target = 0.5 * 2f64.ln();
    let increments = [25u32, 50, 100]
        .iter()
        .filter(|&&m| 2 * m <= m_max)
        .map(|&m| {
            let s = &carleman.partial_sums;
            let increment = s[2 * m as usize - 1] - s[m as usize - 1];
            Increment { m, increment, target, relative_error: (increment - target).abs() / target }
        })
        .collect();
    let majorant = majorant_fit(bundle, &carleman)?;
    Ok(DivergenceReport { carleman, c_fit, increments, majorant })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaAsymptotic {
    pub alpha: f64,
    pub n_values: Vec<u64>,
    /// `|Γ(n+α)/(Γ(n) n^α) - 1|`.
    pub deviations: Vec<f64>,
    pub decreasing: bool,
}

pub fn gamma_asymptotic_check(alpha: f64, n_values: &[u64]) -> Result<GammaAsymptotic> {
    if !(0.0..=5.0).contains(&alpha) || n_values.iter().any(|&n| n < 2) {
        return Err(Error::InvalidParams(format!("need α ∈ [0, 5] and n ≥ 2, got α = {alpha}")));
    }
    let deviations: Vec<f64> = n_values
        .iter()
        .map(|&n| {
            let nf = n as f64;
            let ln_ratio = ln_gamma_real(nf + alpha)? - ln_gamma_real(nf)? - alpha * nf.ln();
            Ok(ln_ratio.exp_m1().abs())
        })
        .collect::<Result<_>>()?;
    let decreasing = deviations.windows(2).all(|w| w[1] <= w[0] + 1e-13);
    Ok(GammaAsymptotic { alpha, n_values: n_values.to_vec(), deviations, decreasing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bundle_n3_l1() {
        let b = build_bundle(3, 1).unwrap();
        assert_eq!(b.space.rho(), 1.0);
        assert_eq!(b.space.rho_l(), 2.0);
        assert_eq!(b.space.shifted_params().alpha(), 1.5);
        assert!((b.k0_angle - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(b.harmonic(b.k0_cos).unwrap(), 0.0);
        assert_eq!(b.q_poly, vec![0.0, 1.0]);
        let q = b.q_at(2.5);
        assert_eq!((q.re, q.im), (-1.0, 2.5));
    }

    #[test]
    fn bundle_n4_l2() {
        let b = build_bundle(4, 2).unwrap();
        assert_eq!(b.space.shifted_params().alpha(), 3.0);
        assert_eq!(b.space.rho(), 1.5);
        assert_eq!(b.space.rho_l(), 3.5);
        assert!(b.harmonic(b.k0_cos).unwrap().abs() < 1e-10);
        assert!(b.k0_angle > 0.0 && b.k0_angle < std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn q_coefficients_match_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, l) in [(3, 1), (3, 4), (5, 3), (2, 6)] {
            let b = build_bundle(n, l).unwrap();
            for _ in 0..10 {
                let lam = rng.gen_range(0.0..20.0);
                let (a, p) = (b.q_at(lam), b.q_product(lam));
                assert!((a - p).norm() <= 1e-12 * p.norm().max(1.0), "n={n} l={l} λ={lam}");
            }
            assert!(b.harmonic(b.k0_cos).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn amplitude_at_origin() {
        let b = build_bundle(3, 1).unwrap();
        assert_eq!(spectral_amplitude(&b, 0.0, 0), 0.0);
    }

    #[test]
    fn shift_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, l) in [(3, 1), (4, 2), (7, 3)] {
            let s = HyperbolicSpec::new(n, l).unwrap();
            let delta = s.rho_l().powi(2) - s.rho().powi(2);
            for _ in 0..10 {
                let lam: f64 = rng.gen_range(0.0..50.0);
                let lhs = -(lam * lam + s.rho_l().powi(2)) + delta;
                let rhs = -(lam * lam + s.rho().powi(2));
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
            }
        }
    }

    #[test]
    fn gamma_ratio_limits() {
        let ns = [2, 10, 100, 1000];
        let one = gamma_asymptotic_check(1.0, &ns).unwrap();
        assert!(one.deviations.iter().all(|d| *d < 1e-12));
        let zero = gamma_asymptotic_check(0.0, &ns).unwrap();
        assert!(zero.deviations.iter().all(|d| *d == 0.0));
        let half = gamma_asymptotic_check(0.5, &ns).unwrap();
        assert!(half.decreasing && half.deviations[3] < 1e-3);
        // Stirling: Γ(n+a)/(Γ(n)n^a) = 1 + a(a-1)/(2n) + O(n^{-2})
        assert!((half.deviations[3] - 0.125 / 1000.0).abs() < 1e-6);
    }

    #[test]
    fn density_exponent_h3() {
        let n0 = fit_density_exponent(JacobiParams::hyperbolic(3).unwrap()).unwrap();
        assert!((n0 - 2.0).abs() < 1e-9);
    }

    #[test]
    fn divergence_n3_l1() {
        let b = build_bundle(3, 1).unwrap();
        let r = divergence_report(&b, 100, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.carleman.verdict, crate::chernoff::Verdict::DivergentTrend);
        assert!(r.c_fit > 0.0);
        assert!(r.majorant.holds);
        assert!((r.majorant.p0 - 1.0).abs() == 0.0);
    }
}
