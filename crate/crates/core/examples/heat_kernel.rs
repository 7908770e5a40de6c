//! Heat kernel h_τ on H³ by spectral synthesis, against the closed form.

use std::f64::consts::PI;

use jacobi_harmonic::quadrature::QuadratureSpec;
use jacobi_harmonic::specfun::JacobiParams;
use jacobi_harmonic::transforms::heat_profile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = JacobiParams::hyperbolic(3)?;
    let quad = QuadratureSpec::default();
    let tau = 1.0;
    let ts: Vec<f64> = (0..=8).map(|i| i as f64 * 0.5).collect();
    let h = heat_profile(params, tau, &ts, &quad)?;
    // 𝓕h = e^{-τλ²}, |c|^{-2} = λ², κ = 1/2π: h(t) = (t/sinh t)·e^{-t²/4τ} / (8√π τ^{3/2})
    for (t, v) in ts.iter().zip(&h.values) {
        let ratio = if *t == 0.0 { 1.0 } else { t / t.sinh() };
        let exact = ratio * (-t * t / (4.0 * tau)).exp() / (8.0 * PI.sqrt() * tau.powf(1.5));
        println!("t = {t:.1}  h = {v:>22.15e}  closed form = {exact:>22.15e}");
    }
    Ok(())
}
