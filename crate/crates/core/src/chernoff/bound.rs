use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingham::{theta_case_split, CaseSplit, ThetaProfile};
use crate::quadrature::log_sum_exp;
use crate::specfun::JacobiParams;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormBound {
    pub m: u32,
    /// `ln sup g_m` on `[0,1]`, `[1,m⁴]`, `(m⁴,∞)`, with `g_m(r) = (ρ²+r²)^m e^{-rθ(r)/2}`.
    pub ln_piece_sups: [f64; 3],
    pub ln_sup: f64,
    /// `ln[3(1+ρ²)^m (4m/θ(m⁴))^{2m}]`.
    pub ln_majorant: f64,
    /// `ln[(2m⁸e^{-2m})^m]`, the bound on the third piece.
    pub ln_piece3_bound: f64,
    /// `ln θ(m⁴) - ln m`, the Carleman comparison term.
    pub ln_theta_over_m: f64,
}

const SAMPLES_PER_DECADE: usize = 400;

fn ln_g(rho2: f64, m: f64, theta: &ThetaProfile, r: f64) -> f64 {
    m * (rho2 + r * r).ln() - 0.5 * r * theta.eval(r)
}

/// Grid maximum refined by golden-section search around the best sample.
fn sup_on(f: &dyn Fn(f64) -> f64, grid: &[f64]) -> f64 {
    let (i, best) =
        grid.iter().enumerate().map(|(i, &r)| (i, f(r))).fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let (mut a, mut b) = (grid[i.saturating_sub(1)], grid[(i + 1).min(grid.len() - 1)]);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut best = best;
    for _ in 0..100 {
        let (c, d) = (b - g * (b - a), a + g * (b - a));
        let (fc, fd) = (f(c), f(d));
        best = best.max(fc).max(fd);
        if fc > fd {
            b = d
        } else {
            a = c
        }
    }
    best
}

fn geometric(lo: f64, hi: f64) -> Vec<f64> {
    let n = ((hi / lo).log10() * SAMPLES_PER_DECADE as f64).ceil().max(2.0) as usize;
    (0..=n).map(|i| lo * (hi / lo).powf(i as f64 / n as f64)).collect()
}

/// Case I bound on `‖Δ^m f‖₂` through the three-piece supremum of `g_m`.
pub fn case1_norm_bound(theta: &ThetaProfile, params: JacobiParams, m: u32) -> Result<NormBound> {
    if !matches!(theta_case_split(theta)?, CaseSplit::Case1) {
        return Err(Error::CaseViolation("θ(r) < 4/√r somewhere on r ≥ 1".into()));
    }
    let rho = params.rho();
    if m < 2 || (m as f64) < rho {
        return Err(Error::InvalidParams(format!("need m ≥ max(2, ρ), got m = {m}, ρ = {rho}")));
    }
    let (rho2, mf) = (rho * rho, m as f64);
    let f = |r: f64| ln_g(rho2, mf, theta, r);
    let m4 = mf.powi(4);
    let piece1: Vec<f64> = (0..=2000).map(|i| i as f64 / 2000.0).collect();
    let piece2 = geometric(1.0, m4);
    let piece3 = geometric(m4, m4 * 1e8);
    let ln_piece_sups = [sup_on(&f, &piece1), sup_on(&f, &piece2), sup_on(&f, &piece3)];
    let th = theta.eval(m4);
    Ok(NormBound {
        m,
        ln_piece_sups,
        ln_sup: log_sum_exp(&ln_piece_sups),
        ln_majorant: 3f64.ln() + mf * (1.0 + rho2).ln() + 2.0 * mf * (4.0 * mf / th).ln(),
        ln_piece3_bound: mf * (2f64.ln() + 8.0 * mf.ln() - 2.0 * mf),
        ln_theta_over_m: th.ln() - mf.ln(),
    })
}

/// Partial sums of `θ(m⁴)/m`; divergence is read off the tail law, since
/// `Σ θ(m⁴)/m`, `∫θ(p⁴)/p dp` and `¼∫θ(r)/r dr` diverge together.
pub fn theta_series(theta: &ThetaProfile, m_max: u32) -> (Vec<f64>, bool) {
    let sums = (1..=m_max)
        .scan(0.0, |s, m| {
            *s += theta.eval((m as f64).powi(4)) / m as f64;
            Some(*s)
        })
        .collect();
    (sums, !theta.tail.integrable())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces_below_majorant() {
        let theta = ThetaProfile::inverse_sqrt(4.0, 0.0, 1e4).unwrap();
        let p = JacobiParams::hyperbolic(3).unwrap();
        for m in 2..=50 {
            let b = case1_norm_bound(&theta, p, m).unwrap();
            assert!(b.ln_sup <= b.ln_majorant, "m={m}: {b:?}");
            assert!(b.ln_piece_sups[2] <= b.ln_piece3_bound + 1e-9, "m={m}");
        }
    }

    #[test]
    fn carleman_terms_from_bound() {
        let theta = ThetaProfile::inverse_sqrt(4.0, 0.0, 1e4).unwrap();
        let p = JacobiParams::hyperbolic(3).unwrap();
        let c = 1.0 / (4.0 * (3.0 * 2.0f64).sqrt());
        for m in 2..=50 {
            let b = case1_norm_bound(&theta, p, m).unwrap();
            let term = (-b.ln_majorant / (2.0 * m as f64)).exp();
            assert!(term >= c * b.ln_theta_over_m.exp(), "m={m}");
        }
    }

    #[test]
    fn case2_profile_rejected() {
        let theta = ThetaProfile::inverse_log(1e4).unwrap();
        let err = case1_norm_bound(&theta, JacobiParams::hyperbolic(3).unwrap(), 5).unwrap_err();
        assert!(matches!(err, Error::CaseViolation(_)));
    }

    #[test]
    fn series_matches_ingham_classification() {
        use crate::ingham::{ingham_integral, Classification};
        for theta in [
            ThetaProfile::inverse_sqrt(4.0, 0.0, 1e4).unwrap(),
            ThetaProfile::theta_one(1e4).unwrap(),
            ThetaProfile::inverse_log(1e4).unwrap(),
            ThetaProfile::loglog_over_log(1e4).unwrap(),
        ] {
            let (sums, divergent) = theta_series(&theta, 1000);
            let finite = ingham_integral(&theta, 1).unwrap().classification == Classification::Finite;
            assert_eq!(divergent, !finite);
            // increments over the last decade: ~(1/4)·ln(10)·θ-scale for log laws, tiny for powers
            let inc = sums[999] - sums[99];
            if divergent {
                assert!(inc > 0.01)
            } else {
                assert!(inc < 1e-3)
            }
        }
    }
}
