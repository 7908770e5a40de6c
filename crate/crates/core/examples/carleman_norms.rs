//! Carleman sums Σ‖Δ^m f‖^{-1/2m} for Gaussian spectra, and the moment chain for r = 2.

use jacobi_harmonic::chernoff::{carleman_from_fn, log_chain_constant, log_laplacian_norms, log_moments, SpectralTail};
use jacobi_harmonic::specfun::{ln_plancherel_density, JacobiParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = JacobiParams::hyperbolic(3)?;
    let (m_max, r) = (100u32, 2u32);
    for s in [0.5, 1.0, 2.0] {
        let end = 2.0 * ((2.0 * (m_max + r) as f64 + 40.0) / s).sqrt();
        let ln_f = move |l: f64| -s * l * l;
        let rep = carleman_from_fn(params, ln_f, end, m_max, SpectralTail::Decaying, 32)?;
        let norms = log_laplacian_norms(params, ln_f, end, m_max + r, SpectralTail::Decaying, 32)?;
        let lm = log_moments(
            |l| ln_f(l) + ln_plancherel_density(params, l).unwrap_or(f64::NEG_INFINITY),
            end,
            m_max,
            SpectralTail::Decaying,
            32,
        )?;
        let ln_a = log_chain_constant(params, r, 32)?;
        let slack = (0..m_max as usize).map(|i| ln_a + norms[i + r as usize] - lm[i]).fold(f64::INFINITY, f64::min);
        println!(
            "s = {s}: S(100) = {:.4}  slope = {:.4}  verdict {:?}  min chain slack = {slack:.4}",
            rep.partial_sums.last().unwrap(),
            rep.trend_statistics.slope,
            rep.verdict
        );
    }
    Ok(())
}
