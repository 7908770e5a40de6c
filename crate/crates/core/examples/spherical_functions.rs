//! φ_λ^{(α,β)} on H³ against sin(λt)/(λ sinh t), with ODE residuals.

use jacobi_harmonic::jacobi::{PhiEvaluator, SpectralPoint};
use jacobi_harmonic::specfun::JacobiParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = JacobiParams::hyperbolic(3)?;
    let ts = [0.1, 0.5, 1.0, 2.0, 5.0];
    for lam in [0.5, 2.0, 10.0] {
        let ev = PhiEvaluator::new(params, SpectralPoint::real(lam));
        let rows = ev.table(&ts)?;
        let res = ev.residuals(&ts)?;
        for (s, r) in rows.iter().zip(&res) {
            let exact = (lam * s.t).sin() / (lam * s.t.sinh());
            println!(
                "λ = {lam:>4}  t = {:>3}  φ = {:>22.15e}  error = {:.1e}  residual = {r:.1e}",
                s.t,
                s.value,
                (s.value - exact).abs()
            );
        }
    }
    Ok(())
}
