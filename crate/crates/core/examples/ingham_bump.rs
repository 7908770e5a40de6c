//! Dyadic boxcar bump for θ₁(r) = 8/√(r+1) and its decay constant as J grows.

use jacobi_harmonic::ingham::{bump_construct, decay_verify, ingham_integral, Spectrum, ThetaProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theta = ThetaProfile::theta_one(1e4)?;
    let verdict = ingham_integral(&theta, 1)?;
    println!("I = {:.6} ({:?})", verdict.integral_estimate, verdict.classification);

    println!("{:>4} {:>12} {:>14} {:>10}", "J", "support", "ln C", "argmax");
    for terms in [8, 12, 16, 20, 24, 28] {
        let bump = bump_construct(&theta, 1.0, terms)?;
        let report = decay_verify(&Spectrum::Product(&bump.spectrum), &theta, 1e3, None)?;
        println!("{terms:>4} {:>12.9} {:>14.6} {:>10.3}", bump.support(), report.ln_constant, report.argmax);
    }
    Ok(())
}
