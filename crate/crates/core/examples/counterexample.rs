//! The H³ counterexample with l = 1: vanishing along the k₀-ray, divergent Chernoff sum.

use jacobi_harmonic::counterexample::{
    build_bundle, divergence_report, gamma_asymptotic_check, hecke_bochner_check, vanishing_check,
};
use jacobi_harmonic::quadrature::QuadratureSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadratureSpec::default();
    let bundle = build_bundle(3, 1)?;
    println!("k0 = {:.16e} (cos k0 = {:e})", bundle.k0_angle, bundle.k0_cos);

    let r: Vec<f64> = (0..=60).map(|i| i as f64 * 0.1).collect();
    let van = vanishing_check(&bundle, &r, &[0, 1, 2, 5, 10, 50, 100], &quad)?;
    println!("vanishing max |Δ^m f| on the ray: {:e}", van.max_abs);

    let hb = hecke_bochner_check(&bundle, 3.0, &quad)?;
    for (m, e) in &hb.relative_errors {
        println!("radial vs spectral, m = {m}: relative error {e:.3e}");
    }

    let div = divergence_report(&bundle, 200, &quad)?;
    println!("verdict {:?}, slope {:.4}", div.carleman.verdict, div.carleman.trend_statistics.slope);
    println!("c fit {:.6}", div.c_fit);
    for m in [1usize, 10, 25, 50, 100, 200] {
        let i = m - 1;
        println!(
            "m = {m:>3}  ln‖Δ^m f‖ = {:>14.6}  term = {:.6}  2m·term = {:.4}  S = {:.4}",
            div.carleman.log_norms[i],
            div.carleman.terms[i],
            2.0 * m as f64 * div.carleman.terms[i],
            div.carleman.partial_sums[i]
        );
    }
    for inc in &div.increments {
        println!("S_{} - S_{} = {:.6} (½ln2 = {:.6})", 2 * inc.m, inc.m, inc.increment, inc.target);
    }
    println!(
        "majorant: n0 = {:.6}, p0 = {}, ln C0 = {:.6}, holds = {}",
        div.majorant.n0, div.majorant.p0, div.majorant.ln_c0, div.majorant.holds
    );

    let g = gamma_asymptotic_check(0.5, &[10, 100, 1000])?;
    println!("Γ(n+½)/(Γ(n)√n) − 1: {:?}", g.deviations);
    Ok(())
}
