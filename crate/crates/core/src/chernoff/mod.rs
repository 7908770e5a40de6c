//! Laplacian-power norms, moment sequences and Carleman-type divergence diagnostics.

mod andiv;
mod bound;
mod carleman;

pub use andiv::{andiv_diagnostic, AndivReport, DecadeIncrement};
pub use bound::{case1_norm_bound, theta_series, NormBound};
pub use carleman::{
    carleman_from_fn, classify, graded_rule, laplacian_power_norms, log_chain_constant, log_laplacian_norms, log_moments,
    moment_sequence, moments_from_fn, CarlemanReport, LogSpectrum, MomentReport, SpectralTail, TrendStatistics, Verdict,
    DIVERGENT_SLOPE, SHRINK_FACTOR, TAIL_DROP,
};
