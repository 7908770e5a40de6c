//! Fourier-Jacobi transform, its inverse, the Euclidean cosine transform and
//! the Abel transform realized through the slice projection.
//!
//! Conventions:
//!
//! * `𝓕f(λ) = ∫₀^∞ f(t) φ_λ(t) (2 sinh t)^{2α+1} (2 cosh t)^{2β+1} dt`
//! * `f(t) = κ ∫₀^∞ 𝓕f(λ) φ_λ(t) |c(λ)|^{-2} dλ` with `κ = 1/(2π)`
//! * `𝓕_E f(ξ) = 2 ∫₀^∞ f(t) cos(2πξt) dt` for even `f`
//! * `𝓐f(s) = (1/π) ∫₀^∞ 𝓕f(λ) cos(λs) dλ`, so that `𝓕_E(𝓐f)(λ/2π) = 𝓕f(λ)`
//!
//! The heat profile `h_τ` is defined by `𝓕h_τ(λ) = e^{-τλ²}`, without the
//! customary `e^{-τρ²}` factor.

mod euclid;
mod jacobi_tf;
mod profile;

pub use euclid::{abel_slice, euclid_cosine_ft, radial_nodes};
pub use jacobi_tf::{
    band_limited_spectrum, calibrate_kappa, heat_profile, jacobi_forward, jacobi_inverse, ln_weight, plancherel_sides,
    PlancherelSides, KAPPA,
};
pub use profile::{RadialProfile, SpectralProfile};
