use super::{PhiEvaluator, SpectralPoint};
use crate::error::{Error, Result};
use crate::ode::Dop853;
use crate::specfun::{ComplexValue, JacobiParams};

/// Smallest `|λ|` accepted by `G_λ` and `g(λ)`.
pub const LAMBDA_MIN: f64 = 1e-3;

/// Reflection coefficient `c(t) = m₁/(1 - e^{-2t}) + 2m₂/(1 - e^{-4t})` of the
/// rank-one Cherednik operator in the geodesic coordinate.
fn reflection_coefficient(params: JacobiParams, t: f64) -> f64 {
    params.m1() / -(-2.0 * t).exp_m1() + 2.0 * params.m2() / -(-4.0 * t).exp_m1()
}

fn check_lambda(lam: SpectralPoint) -> Result<()> {
    if lam.imaginary_part != 0.0 {
        return Err(Error::InvalidParams("G_λ is implemented for real λ only".into()));
    }
    if lam.lambda.abs() < LAMBDA_MIN {
        return Err(Error::InvalidParams(format!("|λ| = {} is below {LAMBDA_MIN}", lam.lambda.abs())));
    }
    Ok(())
}

/// `G_λ` at each of `ts` (any signs, any order).
///
/// The pair `(u, v) = (G(t), G(-t))` obeys
/// `u' = (iλ+ρ) u - c(t)(u - v)`, `v' = -(iλ+ρ) v + c(-t)(v - u)`,
/// started at the Taylor radius from `G = φ ± φ'/(iλ-ρ)`.
pub fn opdam_g_table(params: JacobiParams, lam: SpectralPoint, ts: &[f64]) -> Result<Vec<ComplexValue>> {
    check_lambda(lam)?;
    let ev = PhiEvaluator::new(params, lam);
    let rho = params.rho();
    let shift = ComplexValue::new(-rho, lam.lambda);
    let eig = ComplexValue::new(rho, lam.lambda);
    let t0 = ev.switch_radius();

    let mut order: Vec<usize> = (0..ts.len()).collect();
    order.sort_by(|&i, &j| ts[i].abs().total_cmp(&ts[j].abs()));
    let mut out = vec![ComplexValue::new(0.0, 0.0); ts.len()];

    let mut ode_idx = Vec::new();
    for &i in &order {
        let t = ts[i];
        if !t.is_finite() {
            return Err(Error::InvalidParams(format!("non-finite t = {t}")));
        }
        if t.abs() < t0 {
            let s = ev.at(t.abs())?;
            let odd = ComplexValue::new(s.derivative, 0.0) / shift * t.signum();
            out[i] = s.value + odd;
        } else {
            ode_idx.push(i);
        }
    }
    if ode_idx.is_empty() {
        return Ok(out);
    }
    let s0 = ev.at(t0)?;
    let odd0 = ComplexValue::new(s0.derivative, 0.0) / shift;
    let (u0, v0) = (s0.value + odd0, s0.value - odd0);
    let rhs = |t: f64, y: &[f64; 4]| {
        let u = ComplexValue::new(y[0], y[1]);
        let v = ComplexValue::new(y[2], y[3]);
        let c = reflection_coefficient(params, t);
        let du = eig * u - c * (u - v);
        let dv = -eig * v + (2.0 * rho - c) * (v - u);
        [du.re, du.im, dv.re, dv.im]
    };
    let radii: Vec<f64> = ode_idx.iter().map(|&i| ts[i].abs()).collect();
    let (ys, _) = Dop853::default().solve(rhs, t0, [u0.re, u0.im, v0.re, v0.im], &radii)?;
    for (&i, y) in ode_idx.iter().zip(ys) {
        out[i] = if ts[i] >= 0.0 { ComplexValue::new(y[0], y[1]) } else { ComplexValue::new(y[2], y[3]) };
    }
    Ok(out)
}

/// The Opdam function `G_λ(t)`: the eigenfunction `T G_λ = iλ G_λ` with `G_λ(0) = 1`.
pub fn opdam_g(params: JacobiParams, lam: SpectralPoint, t: f64) -> Result<ComplexValue> {
    Ok(opdam_g_table(params, lam, &[t])?[0])
}

/// Samples `f(kh)` for `k = -K..=K` on a uniform grid symmetric about 0.
#[derive(Debug, Clone)]
pub struct SymmetricSamples {
    pub step: f64,
    pub values: Vec<ComplexValue>,
}

impl SymmetricSamples {
    pub fn from_fn(step: f64, half_count: usize, f: impl Fn(f64) -> ComplexValue) -> Self {
        let k = half_count as i64;
        let values = (-k..=k).map(|i| f(i as f64 * step)).collect();
        Self { step, values }
    }

    pub fn half_count(&self) -> usize {
        self.values.len() / 2
    }

    pub fn nodes(&self) -> Vec<f64> {
        let k = self.half_count() as i64;
        (-k..=k).map(|i| i as f64 * self.step).collect()
    }

    fn at(&self, k: i64) -> ComplexValue {
        self.values[(k + self.half_count() as i64) as usize]
    }
}

/// `T f(t) = f'(t) + c(t)(f(t) - f(-t)) - ρ f(t)` at the grid point `t`,
/// with `f'` from fourth-order central differences.
pub fn cherednik_apply(params: JacobiParams, f: &SymmetricSamples, t: f64) -> Result<ComplexValue> {
    if f.values.len() % 2 == 0 || !(f.step > 0.0) {
        return Err(Error::InvalidParams("samples must be an odd-length symmetric grid".into()));
    }
    if t == 0.0 {
        return Err(Error::SingularPoint(0.0));
    }
    let kf = t / f.step;
    let k = kf.round() as i64;
    if (kf - k as f64).abs() > 1e-9 * kf.abs().max(1.0) {
        return Err(Error::InvalidParams(format!("t = {t} is not a grid point")));
    }
    let kmax = f.half_count() as i64;
    if k.abs() + 2 > kmax {
        return Err(Error::InvalidParams(format!("t = {t} too close to the grid edge")));
    }
    let h = f.step;
    let deriv = (-f.at(k + 2) + 8.0 * f.at(k + 1) - 8.0 * f.at(k - 1) + f.at(k - 2)) / (12.0 * h);
    let tt = k as f64 * h;
    Ok(deriv + reflection_coefficient(params, tt) * (f.at(k) - f.at(-k)) - params.rho() * f.at(k))
}

/// `g(λ) = 1 - ρ/(iλ)`, the rank-one rational factor relating `G_λ` to `φ_λ`.
pub fn g_factor(params: JacobiParams, lam: SpectralPoint) -> Result<ComplexValue> {
    if lam.imaginary_part != 0.0 {
        return Err(Error::InvalidParams("g(λ) is implemented for real λ only".into()));
    }
    if lam.lambda == 0.0 {
        return Err(Error::Pole("g(λ) at λ = 0".into()));
    }
    Ok(1.0 - params.rho() / ComplexValue::new(0.0, lam.lambda))
}
