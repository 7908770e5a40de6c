use serde::Serialize;

/// Sum of `a_n^{1+m/n}` over `n ∈ (10^k, 10^{k+1}]` (the first block starts at 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecadeIncrement {
    pub from: u64,
    pub to: u64,
    pub increment: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AndivReport {
    pub m: u32,
    pub terms: u64,
    pub partial_sum: f64,
    pub decade_increments: Vec<DecadeIncrement>,
    /// Size of `B = {n ≤ N : a_n > 1/n²}`.
    pub b_count: u64,
    /// `min` and `max` of `a_n^{m/n}` over `B ∩ [N/10, N]`.
    pub ratio_min: f64,
    pub ratio_max: f64,
}

/// Partial sums of `a_n^{1+m/n}` up to `N`, with the ratio statistics on `B`.
pub fn andiv_diagnostic(a: impl Fn(u64) -> f64, m: u32, n_max: u64) -> AndivReport {
    let mf = m as f64;
    let mut total = 0.0;
    let mut comp = 0.0;
    let mut decade_start_sum = 0.0;
    let mut decade_lo = 1u64;
    let mut mark = 10u64;
    let mut decade_increments = Vec::new();
    let mut b_count = 0;
    let (mut ratio_min, mut ratio_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let tail_from = (n_max / 10).max(1);
    for n in 1..=n_max {
        let an = a(n);
        let nf = n as f64;
        let ln_a = an.ln();
        let term = ((1.0 + mf / nf) * ln_a).exp();
        // Kahan summation
        let y = term - comp;
        let t = total + y;
        comp = (t - total) - y;
        total = t;
        if an > 1.0 / (nf * nf) {
            b_count += 1;
            if n >= tail_from {
                let ratio = (mf / nf * ln_a).exp();
                ratio_min = ratio_min.min(ratio);
                ratio_max = ratio_max.max(ratio);
            }
        }
        if n == mark || n == n_max {
            decade_increments.push(DecadeIncrement { from: decade_lo, to: n, increment: total - decade_start_sum });
            decade_start_sum = total;
            decade_lo = n + 1;
            mark = mark.saturating_mul(10);
        }
    }
    AndivReport { m, terms: n_max, partial_sum: total, decade_increments, b_count, ratio_min, ratio_max }
}
