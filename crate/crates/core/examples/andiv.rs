//! Σ a_n^{1+m/n} for a_n = 1/n: decade increments approach ln 10.

use jacobi_harmonic::chernoff::andiv_diagnostic;

fn main() {
    for m in [0u32, 1, 3] {
        let rep = andiv_diagnostic(|n| 1.0 / n as f64, m, 1_000_000);
        let incs: Vec<String> = rep.decade_increments.iter().map(|d| format!("{:.4}", d.increment)).collect();
        println!(
            "m = {m}: S = {:.6}  decades [{}]  a_n^(m/n) on the last decade in [{:.6}, {:.6}]",
            rep.partial_sum,
            incs.join(", "),
            rep.ratio_min,
            rep.ratio_max
        );
    }
    println!("ln 10 = {:.4}", std::f64::consts::LN_10);
}
