use std::f64::consts::PI;

use super::ComplexValue;
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// ln √(2π)
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(z: ComplexValue) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of `ln Γ(z)`.
///
/// Lanczos approximation on `Re z ≥ 1/2`, reflection formula below. On the
/// right half-plane the imaginary part is the continuous continuation from the
/// positive real axis (not reduced modulo `2π`).
pub fn ln_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParams(format!("ln_gamma of non-finite {z}")));
    }
    if is_pole(z) {
        return Err(Error::Pole(format!("Γ({})", z.re)));
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let reflected = lanczos_ln_gamma(ComplexValue::new(1.0, 0.0) - z);
        return Ok(ComplexValue::new(PI.ln(), 0.0) - ln_sin_pi(z) - reflected);
    }
    Ok(lanczos_ln_gamma(z))
}

fn lanczos_ln_gamma(z: ComplexValue) -> ComplexValue {
    let z = z - 1.0;
    let mut series = ComplexValue::new(LANCZOS_COEFFS[0], 0.0);
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + series.ln() + LN_SQRT_2PI
}

/// `ln sin(πz)` without overflow for large `|Im z|`.
fn ln_sin_pi(z: ComplexValue) -> ComplexValue {
    let i = ComplexValue::i();
    if z.im > 20.0 {
        // sin(πz) = (i/2) e^{-iπz} (1 - e^{2iπz})
        -i * PI * z
            + ComplexValue::new(0.5, 0.0).ln()
            + i * (PI / 2.0)
            + (ComplexValue::new(1.0, 0.0) - (2.0 * i * PI * z).exp()).ln()
    } else if z.im < -20.0 {
        // sin(πz) = (-i/2) e^{iπz} (1 - e^{-2iπz})
        i * PI * z + ComplexValue::new(0.5, 0.0).ln() - i * (PI / 2.0)
            + (ComplexValue::new(1.0, 0.0) - (-2.0 * i * PI * z).exp()).ln()
    } else {
        (z * PI).sin().ln()
    }
}

/// `ln |Γ(x)|` for real `x`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    ln_gamma(ComplexValue::new(x, 0.0)).map(|v| v.re)
}

/// `ln Γ(a) - ln Γ(b)`.
pub fn gamma_ratio_ln(a: ComplexValue, b: ComplexValue) -> Result<ComplexValue> {
    Ok(ln_gamma(a)? - ln_gamma(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    /// Stirling series with upward recurrence; independent of the Lanczos path.
    fn stirling_ln_gamma(z: ComplexValue) -> ComplexValue {
        let mut shift = ComplexValue::new(0.0, 0.0);
        let mut w = z;
        while w.norm() < 40.0 {
            shift += w.ln();
            w += 1.0;
        }
        let b = [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0];
        let inv = 1.0 / w;
        let inv2 = inv * inv;
        let mut corr = ComplexValue::new(0.0, 0.0);
        let mut p = inv;
        for coeff in b {
            corr += coeff * p;
            p *= inv2;
        }
        (w - 0.5) * w.ln() - w + LN_SQRT_2PI + corr - shift
    }

    #[test]
    fn known_values() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(ln_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = ln_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.5 * PI.ln()).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
    }

    #[test]
    fn frozen_high_precision_value() {
        // mpmath.loggamma(10+10j) at 50 digits
        let v = ln_gamma(c(10.0, 10.0)).unwrap();
        let re = 8.236_131_750_448_717_8;
        let im = 23.948_703_413_782_037;
        assert!((v.re - re).abs() < 1e-12 * re.abs());
        assert!((v.im - im).abs() < 1e-12 * im.abs());
    }

    #[test]
    fn matches_stirling_oracle_on_strip() {
        for &re in &[0.5, 0.75, 1.3, 3.0, 7.5, 20.0, 55.0, 120.0, 200.0] {
            for &im in &[0.0, 0.3, -2.0, 10.0, 45.0, -150.0, 1000.0] {
                let z = c(re, im);
                let a = ln_gamma(z).unwrap();
                let b = stirling_ln_gamma(z);
                let scale = a.norm().max(1.0);
                assert!((a - b).norm() <= 1e-12 * scale, "z = {z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn recurrence_holds() {
        for &re in &[0.5, 1.7, 9.0, 60.0, 199.0] {
            for &im in &[0.0, 1.0, -13.0, 80.0] {
                let z = c(re, im);
                let lhs = ln_gamma(z + 1.0).unwrap();
                let rhs = ln_gamma(z).unwrap() + z.ln();
                assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0), "z = {z}");
            }
        }
    }

    #[test]
    fn reflection_region_modulus() {
        // |Γ(iy)|² = π / (y sinh(πy))
        for &y in &[0.01, 0.5, 3.0, 30.0, 400.0] {
            let v = ln_gamma(c(0.0, y)).unwrap();
            let expected = 0.5 * (PI.ln() - y.ln() - (PI * y + (-(-2.0 * PI * y).exp_m1()).ln() - 2f64.ln()));
            assert!((v.re - expected).abs() < 1e-11 * expected.abs().max(1.0), "y = {y}");
        }
        // Γ(-1/2) = -2√π
        let v = ln_gamma(c(-0.5, 0.0)).unwrap();
        assert!((v.re - (2.0 * PI.sqrt()).ln()).abs() < 1e-13);
    }

    #[test]
    fn poles_rejected() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(ln_gamma(c(x, 0.0)), Err(Error::Pole(_))));
        }
    }
}
