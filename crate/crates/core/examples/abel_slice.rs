//! Abel transform of a Gaussian on H³ and the slice identity 𝓕_E(𝓐f)(λ/2π) = 𝓕f(λ).

use std::f64::consts::PI;

use jacobi_harmonic::quadrature::QuadratureSpec;
use jacobi_harmonic::specfun::JacobiParams;
use jacobi_harmonic::transforms::{abel_slice, euclid_cosine_ft, jacobi_forward, radial_nodes, RadialProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = JacobiParams::hyperbolic(3)?;
    let quad = QuadratureSpec::default();
    let mut nodes = vec![0.0];
    nodes.extend(radial_nodes(quad.t_max, quad.lambda_max, &quad).0);
    let f = RadialProfile::sample(|t| (-t * t).exp(), &nodes, None)?;

    let mut s = vec![0.0];
    s.extend(radial_nodes(quad.t_max, 32.0, &quad).0);
    let af = abel_slice(params, &f, &s, &quad)?;
    let lam = [0.0, 1.0, 4.0, 10.0];
    let xi: Vec<f64> = lam.iter().map(|l| l / (2.0 * PI)).collect();
    let lhs = euclid_cosine_ft(&af, &xi)?;
    let rhs = jacobi_forward(params, &f, &lam, &quad)?;
    for (i, l) in lam.iter().enumerate() {
        println!("λ = {l:>4}  𝓕_E(𝓐f) = {:>22.15e}  𝓕f = {:>22.15e}", lhs.values[i].re, rhs.values[i].re);
    }
    Ok(())
}
