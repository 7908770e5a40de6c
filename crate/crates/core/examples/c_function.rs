//! Plancherel density |c(λ)|^{-2} on H^n and its growth exponent n - 1.

use jacobi_harmonic::specfun::{ln_plancherel_density, plancherel_density, JacobiParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [2u32, 3, 4, 6] {
        let params = JacobiParams::hyperbolic(n)?;
        let (a, b) = (1e2, 1e4);
        let slope = (ln_plancherel_density(params, b)? - ln_plancherel_density(params, a)?) / (b / a).ln();
        println!(
            "H^{n}: |c(1)|^-2 = {:.6}  |c(10)|^-2 = {:.6e}  exponent on [1e2, 1e4] = {slope:.6}",
            plancherel_density(params, 1.0)?,
            plancherel_density(params, 10.0)?
        );
    }
    Ok(())
}
