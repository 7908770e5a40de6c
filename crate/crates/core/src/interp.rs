//! Local cubic interpolation on nonuniform grids.

use crate::error::{Error, Result};

/// Index `i` of the interval `[x_i, x_{i+1}]` containing `x`.
fn bracket(grid: &[f64], x: f64) -> usize {
    match grid.binary_search_by(|g| g.total_cmp(&x)) {
        Ok(i) => i.min(grid.len() - 2),
        Err(i) => i.saturating_sub(1).min(grid.len() - 2),
    }
}

fn lagrange4(xs: [f64; 4], ys: [f64; 4], x: f64) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        let mut l = 1.0;
        for j in 0..4 {
            if i != j {
                l *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        s += l * ys[i];
    }
    s
}

/// Four-point cubic Lagrange interpolation of `(grid, values)` at `x`.
///
/// With `even = true` the data are an even function sampled from `grid[0] = 0`,
/// and nodes left of the origin are supplied by reflection.
pub fn cubic(grid: &[f64], values: &[f64], x: f64, even: bool) -> Result<f64> {
    let n = grid.len();
    if n < 4 || values.len() != n {
        return Err(Error::Interpolation(format!("need ≥ 4 matching samples, got {n}")));
    }
    if x < grid[0] || x > grid[n - 1] {
        return Err(Error::Interpolation(format!("{x} outside [{}, {}]", grid[0], grid[n - 1])));
    }
    let i = bracket(grid, x);
    if grid[i] == x {
        return Ok(values[i]);
    }
    if i == 0 && even {
        return Ok(lagrange4([-grid[1], grid[0], grid[1], grid[2]], [values[1], values[0], values[1], values[2]], x));
    }
    let start = i.saturating_sub(1).min(n - 4);
    Ok(lagrange4(
        [grid[start], grid[start + 1], grid[start + 2], grid[start + 3]],
        [values[start], values[start + 1], values[start + 2], values[start + 3]],
        x,
    ))
}

/// Piecewise-linear interpolation with clamped ends.
pub fn linear(grid: &[f64], values: &[f64], x: f64) -> f64 {
    let n = grid.len();
    if x <= grid[0] {
        return values[0];
    }
    if x >= grid[n - 1] {
        return values[n - 1];
    }
    let i = bracket(grid, x);
    let s = (x - grid[i]) / (grid[i + 1] - grid[i]);
    values[i] + s * (values[i + 1] - values[i])
}

/// Error estimate for cubic interpolation: interpolate every other sample
/// from the half-resolution grid, divide by the `2⁴` refinement gain.
pub fn halving_error(grid: &[f64], values: &[f64], even: bool) -> Result<f64> {
    let coarse_x: Vec<f64> = grid.iter().step_by(2).copied().collect();
    let coarse_y: Vec<f64> = values.iter().step_by(2).copied().collect();
    if coarse_x.len() < 4 {
        return Err(Error::Interpolation("grid too coarse for an error estimate".into()));
    }
    let last = *coarse_x.last().unwrap();
    let mut worst: f64 = 0.0;
    for (k, (&x, &y)) in grid.iter().zip(values).enumerate() {
        if k % 2 == 1 && x <= last {
            worst = worst.max((cubic(&coarse_x, &coarse_y, x, even)? - y).abs());
        }
    }
    Ok(worst / 16.0)
}
