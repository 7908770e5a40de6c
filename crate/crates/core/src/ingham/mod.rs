//! Decay profiles `θ`, the Ingham integral, dyadic boxcar bumps and the
//! Case I / Case II split.

mod bump;
mod integral;
mod split;
mod theta;

pub use bump::{
    bump_construct, decay_grid, decay_verify, dyadic_blocks, BoxcarBlock, Bump, BumpSpectrum, DecayReport, Spectrum,
    WeightedIntegral, DECAY_POINTS_PER_DECADE, PROFILE_XI_MAX,
};
pub use integral::{ingham_integral, partial_integral, Classification, InghamVerdict, PartialIntegral, MAX_DYADIC};
pub use split::{theta_case_split, CaseSplit, ConvolutionRecipe};
pub use theta::{TailDecl, TailLaw, ThetaProfile};
