use serde::Serialize;

use super::{TailLaw, ThetaProfile};
use crate::error::Result;

/// How the Case II function is assembled from the original one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvolutionRecipe {
    /// `θ₁(r) = coef/√(r + shift)`.
    pub theta_one_coef: f64,
    pub theta_one_shift: f64,
    /// `h = f * f₁`, so `ĥ = f̂·f̂₁`.
    pub rule: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum CaseSplit {
    Case1,
    Case2 { augmented: ThetaProfile, recipe: ConvolutionRecipe },
}

fn threshold(r: f64) -> f64 {
    4.0 / r.sqrt()
}

/// `Some(true)` if the tail eventually dominates `4/√r` on its own, `Some(false)` if it
/// eventually falls below, `None` if only the coefficient decides.
fn tail_dominates(law: &TailLaw) -> Option<bool> {
    match law {
        TailLaw::Log { coef } | TailLaw::LogLogOverLog { coef } => Some(*coef > 0.0),
        TailLaw::Power { coef, exponent } => {
            if *coef == 0.0 || *exponent > 0.5 {
                Some(false)
            } else if *exponent < 0.5 {
                Some(true)
            } else {
                None
            }
        }
        TailLaw::Zero => Some(false),
        TailLaw::Sum { terms } => {
            let parts: Vec<_> = terms.iter().map(tail_dominates).collect();
            if parts.contains(&Some(true)) {
                Some(true)
            } else if parts.iter().all(|p| *p == Some(false)) {
                Some(false)
            } else {
                None
            }
        }
    }
}

/// Case I when `θ(r) ≥ 4/√r` for every `r ≥ 1` on the table, a geometric
/// refinement of it and the tail; otherwise Case II with `θ + θ₁`.
pub fn theta_case_split(theta: &ThetaProfile) -> Result<CaseSplit> {
    let r_max = theta.r_max();
    let mut samples: Vec<f64> = theta.r.iter().copied().filter(|&r| r >= 1.0).collect();
    if r_max > 1.0 {
        let n = (r_max.log10() * 64.0).ceil() as usize;
        samples.extend((0..=n).map(|i| r_max.powf(i as f64 / n as f64)));
    }
    samples.extend((0..=60).map(|k| r_max.max(1.0) * 2f64.powi(k)));
    let on_grid = samples.iter().all(|&r| theta.eval(r) >= threshold(r) * (1.0 - 1e-12));
    let case1 = on_grid && tail_dominates(&theta.tail) != Some(false);
    if case1 {
        return Ok(CaseSplit::Case1);
    }
    let one = ThetaProfile::theta_one(r_max.max(1e4))?;
    Ok(CaseSplit::Case2 {
        augmented: theta.sum(&one)?,
        recipe: ConvolutionRecipe { theta_one_coef: 8.0, theta_one_shift: 1.0, rule: "multiply spectra: h_hat = f_hat * f1_hat" },
    })
}
