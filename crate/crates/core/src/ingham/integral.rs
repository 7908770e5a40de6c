use serde::Serialize;

use super::ThetaProfile;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Finite,
    Divergent,
}

/// One row of the partial-integral table: `∫₁^{2^k} θ(r)/r dr`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialIntegral {
    pub k: u32,
    pub upper: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InghamVerdict {
    pub dimension: u32,
    /// `∫₁^∞ θ(r)/r dr`, `+∞` when divergent.
    pub integral_estimate: f64,
    pub classification: Classification,
    pub evidence: Vec<PartialIntegral>,
}

pub const MAX_DYADIC: u32 = 40;

/// `∫_a^b θ(r)/r dr` for `1 ≤ a ≤ b ≤ R_max`, exact on the log-log interpolant.
fn table_integral(theta: &ThetaProfile, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..theta.r.len() - 1 {
        let (r0, r1) = (theta.r[i].max(a), theta.r[i + 1].min(b));
        if r1 <= r0 {
            continue;
        }
        let (t0, t1) = (theta.eval(r0), theta.eval(r1));
        let len = (r1 / r0).ln();
        total += if t0 > 0.0 && t1 > 0.0 && theta.r[i] > 0.0 {
            let s = (t1 / t0).ln() / len;
            if s.abs() < 1e-12 {
                t0 * len
            } else {
                (t1 - t0) / s
            }
        } else {
            let slope = (t1 - t0) / (r1 - r0);
            (t0 - slope * r0) * len + slope * (r1 - r0)
        };
    }
    total
}

/// `∫₁^X θ(r)/r dr`, using the closed-form tail beyond `R_max`.
pub fn partial_integral(theta: &ThetaProfile, x: f64) -> f64 {
    let r_max = theta.r_max();
    if x <= r_max {
        table_integral(theta, 1.0, x)
    } else {
        let lo = r_max.max(1.0);
        table_integral(theta, 1.0, lo) + theta.tail.integral(lo, x)
    }
}

/// Ingham integral `I`, reduced to the radial integral `∫₁^∞ θ(r)/r dr`.
///
/// The verdict is read off the tail law; the partial integrals over `[1, 2^k]`
/// are reported as evidence.
pub fn ingham_integral(theta: &ThetaProfile, d: u32) -> Result<InghamVerdict> {
    if d == 0 {
        return Err(Error::InvalidParams("dimension must be ≥ 1".into()));
    }
    if !theta.admissible {
        return Err(Error::Admissibility("θ must be nonnegative and decreasing".into()));
    }
    if theta.r_max() <= 1.0 && !matches!(theta.tail, super::TailLaw::Zero) {
        return Err(Error::UnsupportedTail("θ table must extend beyond r = 1".into()));
    }
    let evidence = (0..=MAX_DYADIC)
        .map(|k| {
            let upper = 2f64.powi(k as i32);
            PartialIntegral { k, upper, value: partial_integral(theta, upper) }
        })
        .collect();
    let (integral_estimate, classification) = if theta.tail.integrable() {
        (partial_integral(theta, f64::INFINITY), Classification::Finite)
    } else {
        (f64::INFINITY, Classification::Divergent)
    };
    Ok(InghamVerdict { dimension: d, integral_estimate, classification, evidence })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_sqrt_closed_form() {
        let p = ThetaProfile::inverse_sqrt(4.0, 0.0, 1e3).unwrap();
        let v = ingham_integral(&p, 1).unwrap();
        assert_eq!(v.classification, Classification::Finite);
        // ∫₁^∞ 4 r^{-3/2} dr = 8
        assert!((v.integral_estimate - 8.0).abs() < 1e-10);
        for row in &v.evidence {
            let exact = 8.0 * (1.0 - row.upper.powf(-0.5));
            assert!((row.value - exact).abs() < 1e-10, "k={}", row.k);
        }
    }

    #[test]
    fn inverse_log_diverges() {
        let p = ThetaProfile::inverse_log(1e3).unwrap();
        let v = ingham_integral(&p, 3).unwrap();
        assert_eq!(v.classification, Classification::Divergent);
        assert!(v.integral_estimate.is_infinite());
        let last = v.evidence.last().unwrap().value;
        let mid = v.evidence[20].value;
        assert!(last > mid && mid > 0.0);
    }

    #[test]
    fn theta_one_finite() {
        let p = ThetaProfile::theta_one(1e4).unwrap();
        let v = ingham_integral(&p, 1).unwrap();
        assert_eq!(v.classification, Classification::Finite);
        // ∫₁^∞ 8/(r√(r+1)) dr = 16·asinh(1)
        let exact = 16.0 * 1f64.asinh();
        assert!((v.integral_estimate - exact).abs() < 1e-3, "{}", v.integral_estimate);
    }

    #[test]
    fn loglog_diverges() {
        let p = ThetaProfile::loglog_over_log(1e4).unwrap();
        assert_eq!(ingham_integral(&p, 2).unwrap().classification, Classification::Divergent);
    }

    #[test]
    fn stable_under_doubling_table() {
        for r_max in [1e2, 1e3, 1e4] {
            for (a, b) in [
                (ThetaProfile::inverse_log(r_max).unwrap(), ThetaProfile::inverse_log(2.0 * r_max).unwrap()),
                (ThetaProfile::theta_one(r_max).unwrap(), ThetaProfile::theta_one(2.0 * r_max).unwrap()),
            ] {
                let (va, vb) = (ingham_integral(&a, 1).unwrap(), ingham_integral(&b, 1).unwrap());
                assert_eq!(va.classification, vb.classification);
            }
        }
    }
}
