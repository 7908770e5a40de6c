//! Case I/II split of decay profiles and the Case I norm bound.

use jacobi_harmonic::chernoff::case1_norm_bound;
use jacobi_harmonic::ingham::{theta_case_split, CaseSplit, ThetaProfile};
use jacobi_harmonic::specfun::JacobiParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = JacobiParams::hyperbolic(3)?;
    let profiles = [
        ("8/√(r+1)", ThetaProfile::theta_one(1e6)?),
        ("5/√(r+1)", ThetaProfile::inverse_sqrt(5.0, 1.0, 1e6)?),
        ("1/log(e+r)", ThetaProfile::inverse_log(1e6)?),
    ];
    for (name, theta) in &profiles {
        let case1 = match theta_case_split(theta)? {
            CaseSplit::Case1 => theta.clone(),
            CaseSplit::Case2 { augmented, .. } => {
                println!("{name}: Case II, continuing with θ + θ₁");
                augmented
            }
        };
        for m in [2u32, 5, 10] {
            let b = case1_norm_bound(&case1, params, m)?;
            println!("{name}: m = {m}  {b:?}");
        }
    }
    Ok(())
}
