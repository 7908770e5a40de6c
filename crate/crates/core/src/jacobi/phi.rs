use super::{GeodesicRadius, SpectralPoint};
use crate::error::{Error, Result};
use crate::ode::Dop853;
use crate::specfun::JacobiParams;

const TAYLOR_TERMS: usize = 24;
const RESIDUAL_TOL: f64 = 1e-8;

/// `φ(t)` together with `φ'(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiSample {
    pub t: f64,
    pub value: f64,
    pub derivative: f64,
}

/// Power-series coefficients (in `u = t²`) of `t coth t` and `t tanh t`.
fn coth_tanh_series(n: usize) -> (Vec<f64>, Vec<f64>) {
    // cosh t = Σ u^k/(2k)!,  sinh t / t = Σ u^k/(2k+1)!
    let mut fact = vec![1.0f64; 2 * n + 2];
    for k in 1..fact.len() {
        fact[k] = fact[k - 1] * k as f64;
    }
    let p: Vec<f64> = (0..n).map(|k| 1.0 / fact[2 * k]).collect();
    let s: Vec<f64> = (0..n).map(|k| 1.0 / fact[2 * k + 1]).collect();
    let divide = |num: &[f64], den: &[f64]| {
        let mut q = vec![0.0; n];
        for k in 0..n {
            let mut acc = num[k];
            for j in 1..=k {
                acc -= den[j] * q[k - j];
            }
            q[k] = acc / den[0];
        }
        q
    };
    let coth = divide(&p, &s);
    let ratio = divide(&s, &p);
    let mut tanh = vec![0.0; n];
    tanh[1..n].copy_from_slice(&ratio[..(n - 1)]);
    (coth, tanh)
}

/// Evaluator for one `(params, λ)` pair: Taylor expansion near the origin,
/// DOP853 beyond the switch radius `t₀ = min(0.1, 0.5/|λ|)`.
#[derive(Debug, Clone)]
pub struct PhiEvaluator {
    params: JacobiParams,
    nu: f64,
    t0: f64,
    coeffs: Vec<f64>,
    solver: Dop853,
}

impl PhiEvaluator {
    pub fn new(params: JacobiParams, lam: SpectralPoint) -> Self {
        let rho = params.rho();
        let nu = lam.square() + rho * rho;
        let t0 = 0.1f64.min(0.5 / lam.scale().max(1e-300));
        let (coth, tanh) = coth_tanh_series(TAYLOR_TERMS);
        let (ka, kb) = (2.0 * params.alpha() + 1.0, 2.0 * params.beta() + 1.0);
        let a: Vec<f64> = coth.iter().zip(&tanh).map(|(c, t)| ka * c + kb * t).collect();
        let mut c = vec![0.0; TAYLOR_TERMS];
        c[0] = 1.0;
        for k in 1..TAYLOR_TERMS {
            let mut acc = nu * c[k - 1];
            for j in 1..k {
                acc += a[j] * 2.0 * (k - j) as f64 * c[k - j];
            }
            let kf = k as f64;
            c[k] = -acc / (4.0 * kf * (kf + params.alpha()));
        }
        Self { params, nu, t0, coeffs: c, solver: Dop853::default() }
    }

    pub fn switch_radius(&self) -> f64 {
        self.t0
    }

    fn taylor(&self, t: f64) -> (f64, f64) {
        let u = t * t;
        let (mut v, mut d) = (0.0, 0.0);
        for k in (0..TAYLOR_TERMS).rev() {
            v = v * u + self.coeffs[k];
            if k > 0 {
                d = d * u + 2.0 * k as f64 * self.coeffs[k];
            }
        }
        // d currently holds Σ 2k c_k u^{k-1}
        (v, d * t)
    }

    /// `(2α+1) coth t + (2β+1) tanh t`.
    pub fn drift(&self, t: f64) -> f64 {
        let e = (2.0 * t).exp_m1();
        let coth = 1.0 + 2.0 / e;
        let tanh = e / (e + 2.0);
        (2.0 * self.params.alpha() + 1.0) * coth + (2.0 * self.params.beta() + 1.0) * tanh
    }

    /// `φ` and `φ'` at each of `ts` (sorted ascending, nonnegative).
    pub fn table(&self, ts: &[f64]) -> Result<Vec<PhiSample>> {
        if ts.iter().any(|t| !t.is_finite() || *t < 0.0) || ts.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParams("φ table needs sorted t ≥ 0".into()));
        }
        let split = ts.partition_point(|&t| t < self.t0);
        let mut out: Vec<PhiSample> = ts[..split]
            .iter()
            .map(|&t| {
                let (value, derivative) = self.taylor(t);
                PhiSample { t, value, derivative }
            })
            .collect();
        if split < ts.len() {
            let y0 = {
                let (v, d) = self.taylor(self.t0);
                [v, d]
            };
            let nu = self.nu;
            let rhs = |t: f64, y: &[f64; 2]| [y[1], -self.drift(t) * y[1] - nu * y[0]];
            let (ys, _) = self.solver.solve(rhs, self.t0, y0, &ts[split..])?;
            out.extend(ts[split..].iter().zip(ys).map(|(&t, y)| PhiSample { t, value: y[0], derivative: y[1] }));
        }
        Ok(out)
    }

    pub fn at(&self, t: f64) -> Result<PhiSample> {
        Ok(self.table(&[t])?[0])
    }

    /// Scaled ODE residual `|φ'' + Aφ' + νφ| / max(|φ''|, |Aφ'|, |νφ|)` at each of `ts`,
    /// with `φ''` from a fourth-order difference of the integrated `φ'`.
    pub fn residuals(&self, ts: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(ts.len());
        for &t in ts {
            if t == 0.0 {
                out.push(0.0);
                continue;
            }
            let h = (0.01 / self.nu.sqrt().max(1.0)).min(t / 4.0);
            let stencil = [t - 2.0 * h, t - h, t, t + h, t + 2.0 * h];
            let s = self.table(&stencil)?;
            let d2 = (-s[4].derivative + 8.0 * s[3].derivative - 8.0 * s[1].derivative + s[0].derivative) / (12.0 * h);
            let drift = self.drift(t) * s[2].derivative;
            let zeroth = self.nu * s[2].value;
            let scale = d2.abs().max(drift.abs()).max(zeroth.abs()).max(f64::MIN_POSITIVE);
            out.push((d2 + drift + zeroth).abs() / scale);
        }
        Ok(out)
    }
}

fn checked(params: JacobiParams, lam: SpectralPoint, t: GeodesicRadius) -> Result<PhiSample> {
    let ev = PhiEvaluator::new(params, lam);
    let sample = ev.at(t.t())?;
    if t.t() >= ev.switch_radius() {
        let r = ev.residuals(&[t.t()])?[0];
        if !(r <= RESIDUAL_TOL) {
            return Err(Error::Integration(format!("ODE residual {r:e} at t = {} exceeds {RESIDUAL_TOL:e}", t.t())));
        }
    }
    Ok(sample)
}

/// `φ_λ^{(α,β)}(t)`, the even solution of
/// `φ'' + ((2α+1) coth t + (2β+1) tanh t) φ' + (λ² + ρ²) φ = 0` with `φ(0) = 1`.
pub fn phi(params: JacobiParams, lam: SpectralPoint, t: GeodesicRadius) -> Result<f64> {
    Ok(checked(params, lam, t)?.value)
}

pub fn phi_derivative(params: JacobiParams, lam: SpectralPoint, t: GeodesicRadius) -> Result<f64> {
    Ok(checked(params, lam, t)?.derivative)
}

/// Scaled ODE residuals of `φ_λ` at the checkpoints `ts`.
pub fn residuals(params: JacobiParams, lam: SpectralPoint, ts: &[f64]) -> Result<Vec<f64>> {
    PhiEvaluator::new(params, lam).residuals(ts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{hyp2f1, ComplexValue};

    fn p(a: f64, b: f64) -> JacobiParams {
        JacobiParams::new(a, b).unwrap()
    }

    fn r(t: f64) -> GeodesicRadius {
        GeodesicRadius::new(t).unwrap()
    }

    fn oracle(params: JacobiParams, lam: f64, t: f64) -> f64 {
        let rho = params.rho();
        let a = ComplexValue::new(rho / 2.0, lam / 2.0);
        let b = ComplexValue::new(rho / 2.0, -lam / 2.0);
        let c = ComplexValue::new(params.alpha() + 1.0, 0.0);
        hyp2f1(a, b, c, -t.sinh().powi(2)).unwrap().re
    }

    #[test]
    fn series_coefficients() {
        let (coth, tanh) = coth_tanh_series(5);
        let expect_coth = [1.0, 1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0, -1.0 / 4725.0];
        let expect_tanh = [0.0, 1.0, -1.0 / 3.0, 2.0 / 15.0, -17.0 / 315.0];
        for k in 0..5 {
            assert!((coth[k] - expect_coth[k]).abs() < 1e-15);
            assert!((tanh[k] - expect_tanh[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn origin_is_exactly_one() {
        for &(a, b) in &[(-0.5, -0.5), (0.5, -0.5), (3.0, 1.0)] {
            assert_eq!(phi(p(a, b), SpectralPoint::real(7.0), r(0.0)).unwrap(), 1.0);
            assert_eq!(phi_derivative(p(a, b), SpectralPoint::real(7.0), r(0.0)).unwrap(), 0.0);
        }
    }

    #[test]
    fn cosine_case() {
        let v = phi(p(-0.5, -0.5), SpectralPoint::real(3.0), r(0.7)).unwrap();
        assert!((v - 2.1f64.cos()).abs() < 1e-12);
        let d = phi_derivative(p(-0.5, -0.5), SpectralPoint::real(3.0), r(0.7)).unwrap();
        assert!((d + 3.0 * 2.1f64.sin()).abs() < 1e-11);
    }

    #[test]
    fn h3_closed_form() {
        let (lam, t) = (2.0f64, 1.0f64);
        let v = phi(p(0.5, -0.5), SpectralPoint::real(lam), r(t)).unwrap();
        assert!((v - (lam * t).sin() / (lam * t.sinh())).abs() < 1e-12);
        let d = phi_derivative(p(0.5, -0.5), SpectralPoint::real(lam), r(t)).unwrap();
        let exact = ((lam * t).cos() * lam * t.sinh() - (lam * t).sin() * t.cosh()) / (lam * t.sinh().powi(2));
        assert!((d - exact).abs() < 1e-12);
    }

    #[test]
    fn hypergeometric_cross_check() {
        for &(a, b) in &[(0.5, -0.5), (1.5, -0.5), (3.0, -0.5), (2.0, 0.5)] {
            for lam in [0.5, 2.0, 5.0, 10.0] {
                for t in [0.05, 0.3, 1.0, 3.0] {
                    let v = phi(p(a, b), SpectralPoint::real(lam), r(t)).unwrap();
                    let o = oracle(p(a, b), lam, t);
                    assert!((v - o).abs() < 1e-9, "({a},{b}) λ={lam} t={t}: {v} vs {o}");
                }
            }
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let ev = PhiEvaluator::new(p(1.5, -0.5), SpectralPoint::real(5.0));
        for t in [0.5, 1.7] {
            let s = ev.table(&[t - 1e-4, t, t + 1e-4]).unwrap();
            let fd = (s[2].value - s[0].value) / 2e-4;
            assert!((fd - s[1].derivative).abs() < 1e-6);
        }
    }

    #[test]
    fn residuals_are_small() {
        let ts = [0.1, 0.5, 1.0, 2.0, 5.0];
        for lam in [0.5, 10.0] {
            let res = residuals(p(3.0, -0.5), SpectralPoint::real(lam), &ts).unwrap();
            assert!(res.iter().all(|&x| x < 1e-8), "{res:?}");
        }
    }

    #[test]
    fn imaginary_parameter_bound() {
        let params = p(0.5, -0.5);
        let mu = 0.6;
        for t in [0.2, 1.0, 4.0] {
            let v = phi(params, SpectralPoint::imaginary(mu), r(t)).unwrap();
            let base = phi(params, SpectralPoint::real(0.0), r(t)).unwrap();
            assert!(v > 0.0 && v <= (mu * t).exp() * base * (1.0 + 1e-12));
            // φ_{iμ}(t) = sinh(μt)/(μ sinh t) on H³
            assert!((v - (mu * t).sinh() / (mu * t.sinh())).abs() < 1e-11);
        }
    }
}
