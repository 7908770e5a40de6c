//! Gauss-Legendre rules, composite panels and order-fixed reductions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Newton iteration on `P_n` from the Tricomi initial guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        dp = if d != 0.0 { d } else { dp };
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite rule: `panels` equal panels on `[a, b]`, `points` nodes each.
pub fn composite_nodes(a: f64, b: f64, panels: usize, points: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(points);
    let width = (b - a) / panels as f64;
    let mut xs = Vec::with_capacity(panels * points);
    let mut ws = Vec::with_capacity(panels * points);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        for (x, w) in gx.iter().zip(&gw) {
            xs.push(mid + 0.5 * width * x);
            ws.push(0.5 * width * w);
        }
    }
    (xs, ws)
}

/// Pairwise (cascade) summation; the order depends only on the length.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// `ln Σ exp(v_i)`, with `-∞` for an empty or all-`-∞` input.
pub fn log_sum_exp(v: &[f64]) -> f64 {
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY || m.is_nan() {
        return m;
    }
    let scaled: Vec<f64> = v.iter().map(|x| (x - m).exp()).collect();
    m + pairwise_sum(&scaled).ln()
}

/// Quadrature settings shared by the transforms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub t_max: f64,
    pub lambda_max: f64,
    pub panels: usize,
    pub points_per_panel: usize,
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { t_max: 12.0, lambda_max: 64.0, panels: 48, points_per_panel: 32, tolerance: 1e-8 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > 0.0 && self.lambda_max > 0.0) || !self.t_max.is_finite() || !self.lambda_max.is_finite() {
            return Err(Error::InvalidParams(format!(
                "t_max and lambda_max must be positive, got {} and {}",
                self.t_max, self.lambda_max
            )));
        }
        if self.panels * self.points_per_panel < 64 || self.points_per_panel == 0 {
            return Err(Error::InvalidParams(format!("panels·points = {}·{} is below 64", self.panels, self.points_per_panel)));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParams(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        Ok(())
    }

    /// Panel count for `[0, length]` such that a phase of frequency `omega` turns by less than π per panel.
    pub fn panels_for(&self, length: f64, omega: f64) -> usize {
        let needed = (omega * length / PI).ceil() as usize;
        self.panels.max(needed).max(1)
    }

    /// Canonical node set on `[0, lambda_max]` (λ oscillates against `t ≤ t_max`).
    pub fn lambda_nodes(&self) -> (Vec<f64>, Vec<f64>) {
        let panels = self.panels_for(self.lambda_max, self.t_max);
        composite_nodes(0.0, self.lambda_max, panels, self.points_per_panel)
    }

    /// Canonical node set on `[0, t_max]` (t oscillates against `λ ≤ lambda_max`).
    pub fn t_nodes(&self) -> (Vec<f64>, Vec<f64>) {
        let panels = self.panels_for(self.t_max, self.lambda_max);
        composite_nodes(0.0, self.t_max, panels, self.points_per_panel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_point_rule() {
        let (x, w) = gauss_legendre(5);
        let x2 = (5.0 - 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
        assert!((x[3] - x2).abs() < 1e-15);
        assert!((w[2] - 128.0 / 225.0).abs() < 1e-15);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exact_for_polynomials() {
        let (x, w) = gauss_legendre(32);
        for k in 0..=63 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn composite_oscillatory_integral() {
        let (x, w) = composite_nodes(0.0, 10.0, 20, 32);
        let q: Vec<f64> = x.iter().zip(&w).map(|(x, w)| w * (50.0 * x).cos()).collect();
        assert!((pairwise_sum(&q) - (500.0f64).sin() / 50.0).abs() < 1e-13);
    }

    #[test]
    fn log_sum_exp_handles_huge_exponents() {
        let v = [1000.0, 1000.0];
        assert!((log_sum_exp(&v) - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn panel_rule_covers_oscillation() {
        let q = QuadratureSpec::default();
        assert!(q.panels_for(12.0, 64.0) as f64 * PI >= 12.0 * 64.0);
        assert!(q.validate().is_ok());
        assert!(QuadratureSpec { panels: 1, points_per_panel: 8, ..q }.validate().is_err());
    }
}
