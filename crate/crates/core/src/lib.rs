//! Jacobi analysis on rank-one Riemannian symmetric spaces of noncompact type.
//!
//! - [`specfun`]: log-gamma, `2F1`, Gegenbauer polynomials, the Harish-Chandra c-function.
//! - [`jacobi`]: spherical functions `φ_λ^{(α,β)}`, Opdam's `G_λ` and the Cherednik operator.
//! - [`transforms`]: Fourier-Jacobi transform and inverse, Plancherel sides, Abel slice, heat kernel.
//! - [`ingham`]: decay profiles `θ`, the Ingham integral, bump construction, case split.
//! - [`chernoff`]: Laplacian power norms, moments, Carleman sums and their verdicts.
//! - [`counterexample`]: the hyperbolic-space function that vanishes on a ray with all its Laplacian powers.
//! - [`cli`]: the `jacobi-harmonic` command-line front end.
//!
//! Parameters are `(α, β)` with `ρ = α + β + 1`; the real hyperbolic space `H^n` is
//! `α = (n-2)/2`, `β = -1/2`. Spectral integrals use the density `|c(λ)|^{-2}` on `λ ≥ 0`
//! with inversion constant `κ = 1/2π`.

pub mod chernoff;
pub mod cli;
pub mod counterexample;
pub mod error;
pub mod ingham;
pub mod interp;
pub mod io;
pub mod jacobi;
pub mod ode;
pub mod quadrature;
pub mod specfun;
pub mod transforms;
