//! Opdam's G_λ: eigenfunction of the Cherednik operator whose even part is φ_λ.

use jacobi_harmonic::jacobi::{cherednik_apply, opdam_g_table, phi, GeodesicRadius, SpectralPoint, SymmetricSamples};
use jacobi_harmonic::specfun::{ComplexValue, JacobiParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = JacobiParams::new(1.5, 0.0)?;
    let lam = SpectralPoint::real(3.0);
    let step = 1e-3;
    let half = 3000usize;
    let grid: Vec<f64> = (-(half as i64)..=half as i64).map(|i| i as f64 * step).collect();
    let g = opdam_g_table(params, lam, &grid)?;
    let samples = SymmetricSamples { step, values: g.clone() };

    for k in [250i64, 1000, 2500] {
        let t = k as f64 * step;
        let (gp, gm) = (g[(half as i64 + k) as usize], g[(half as i64 - k) as usize]);
        let even = (gp + gm) / 2.0;
        let ph = phi(params, lam, GeodesicRadius::new(t)?)?;
        let tg = cherednik_apply(params, &samples, t)?;
        let eig = (tg - ComplexValue::new(0.0, 3.0) * gp).norm();
        println!("t = {t:.3}  G(t) = {gp:.10}  (G(t)+G(-t))/2 - φ = {:.1e}  |TG - iλG| = {eig:.1e}", (even.re - ph).abs());
    }
    Ok(())
}
