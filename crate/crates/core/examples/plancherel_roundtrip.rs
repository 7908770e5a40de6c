//! Seeded band-limited spectra on H³: inverse, forward again, and both Plancherel sides.

use jacobi_harmonic::quadrature::QuadratureSpec;
use jacobi_harmonic::specfun::JacobiParams;
use jacobi_harmonic::transforms::{band_limited_spectrum, jacobi_forward, jacobi_inverse, plancherel_sides, radial_nodes};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = JacobiParams::hyperbolic(3)?;
    let quad = QuadratureSpec::default();
    let check: Vec<f64> = (1..=16).map(|i| i as f64 * 2.0).collect();
    for index in 0..3 {
        let fhat = band_limited_spectrum(params, 7, index, &quad)?;
        let mut nodes = vec![0.0];
        nodes.extend(radial_nodes(quad.t_max, 32.0, &quad).0);
        nodes.push(quad.t_max);
        let f = jacobi_inverse(params, &fhat, &nodes, &quad)?;
        let back = jacobi_forward(params, &f, &check, &quad)?;
        let want = fhat.eval_many(&check)?;
        let err = back.values.iter().zip(&want).map(|(b, w)| (b - w).norm()).fold(0.0, f64::max);
        let sides = plancherel_sides(params, &f, &fhat, &quad)?;
        println!(
            "profile {index}: ‖f‖² = {:.12e}  κ‖𝓕f‖² = {:.12e}  gap = {:.1e}  round trip = {err:.1e}",
            sides.radial, sides.spectral, sides.relative_gap
        );
    }
    Ok(())
}
