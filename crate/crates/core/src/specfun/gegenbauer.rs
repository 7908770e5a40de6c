use crate::error::{Error, Result};

/// Gegenbauer polynomial `C_l^ν(x)` by the three-term recurrence
/// `n C_n = 2x(n+ν-1) C_{n-1} - (n+2ν-2) C_{n-2}`.
pub fn gegenbauer(l: u32, nu: f64, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::InvalidParams(format!("gegenbauer needs |x| ≤ 1, got {x}")));
    }
    if !nu.is_finite() {
        return Err(Error::InvalidParams(format!("non-finite ν = {nu}")));
    }
    let mut prev = 1.0;
    if l == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * nu * x;
    for n in 2..=l {
        let nf = n as f64;
        let next = (2.0 * x * (nf + nu - 1.0) * cur - (nf + 2.0 * nu - 2.0) * prev) / nf;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Zonal spherical harmonic of degree `l` on `S^{n-1}` as a function of `x = cos θ`.
///
/// `C_l^{(n-2)/2}(x)` for `n ≥ 3`; on the circle (`n = 2`, where the
/// Gegenbauer family degenerates) the Chebyshev polynomial `T_l(x)`.
pub fn zonal_harmonic(n: u32, l: u32, x: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("sphere S^(n-1) needs n ≥ 2, got {n}")));
    }
    if n == 2 {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::InvalidParams(format!("zonal harmonic needs |x| ≤ 1, got {x}")));
        }
        return Ok((l as f64 * x.acos()).cos());
    }
    gegenbauer(l, (n as f64 - 2.0) / 2.0, x)
}
