use super::{ln_gamma, ComplexValue};
use crate::error::{Error, Result};

const MAX_TERMS: usize = 2_000_000;
const SERIES_EPS: f64 = 1e-17;

/// Gauss hypergeometric function `₂F₁(a, b; c; x)` for real `x ≤ 0`.
///
/// * `-1/2 ≤ x ≤ 0`: the defining series.
/// * `-2 ≤ x < -1/2`: Pfaff, `(1-x)^{-a} ₂F₁(a, c-b; c; x/(x-1))`.
/// * `x < -2`: the `1/x` connection formula, which needs `a - b ∉ ℤ`;
///   otherwise falls back to Pfaff with a slowly converging series.
pub fn hyp2f1(a: ComplexValue, b: ComplexValue, c: ComplexValue, x: f64) -> Result<ComplexValue> {
    if c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round() {
        return Err(Error::Pole(format!("₂F₁ with c = {}", c.re)));
    }
    if !x.is_finite() || x > 0.0 {
        return Err(Error::InvalidParams(format!("hyp2f1 needs finite x ≤ 0, got {x}")));
    }
    if x >= -0.5 {
        return series(a, b, c, x);
    }
    let diff = a - b;
    let integer_gap = diff.im == 0.0 && diff.re == diff.re.round();
    if x >= -2.0 || integer_gap {
        return pfaff(a, b, c, x);
    }
    inverse_argument(a, b, c, x)
}

fn series(a: ComplexValue, b: ComplexValue, c: ComplexValue, x: f64) -> Result<ComplexValue> {
    let mut term = ComplexValue::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        if term.norm() <= SERIES_EPS * sum.norm() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!("₂F₁({a}, {b}; {c}; {x}) after {MAX_TERMS} terms")))
}

fn pfaff(a: ComplexValue, b: ComplexValue, c: ComplexValue, x: f64) -> Result<ComplexValue> {
    let w = x / (x - 1.0);
    let prefactor = (-a * (1.0 - x).ln()).exp();
    Ok(prefactor * series(a, c - b, c, w)?)
}

fn inverse_argument(a: ComplexValue, b: ComplexValue, c: ComplexValue, x: f64) -> Result<ComplexValue> {
    let w = 1.0 / x;
    let ln_mx = (-x).ln();
    let one = ComplexValue::new(1.0, 0.0);
    let lg_c = ln_gamma(c)?;
    let first =
        (lg_c + ln_gamma(b - a)? - ln_gamma(b)? - ln_gamma(c - a)? - a * ln_mx).exp() * series(a, a - c + one, a - b + one, w)?;
    let second =
        (lg_c + ln_gamma(a - b)? - ln_gamma(a)? - ln_gamma(c - b)? - b * ln_mx).exp() * series(b, b - c + one, b - a + one, w)?;
    Ok(first + second)
}
