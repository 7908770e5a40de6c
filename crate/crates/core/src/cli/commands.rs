use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use super::{to_value, Command, Outcome, RunConfig, Table};
use crate::chernoff::{
    andiv_diagnostic, carleman_from_fn, case1_norm_bound, classify, log_chain_constant, log_laplacian_norms, log_moments,
    LogSpectrum, SpectralTail,
};
use crate::counterexample::{build_bundle, divergence_report, gamma_asymptotic_check, hecke_bochner_check, vanishing_check};
use crate::error::{Error, Result};
use crate::ingham::{
    bump_construct, decay_verify, ingham_integral, theta_case_split, CaseSplit, Classification, Spectrum, TailDecl, ThetaProfile,
};
use crate::io;
use crate::jacobi::{PhiEvaluator, SpectralPoint};
use crate::quadrature::QuadratureSpec;
use crate::specfun::{ln_plancherel_density, JacobiParams};
use crate::transforms::{
    abel_slice, band_limited_spectrum, euclid_cosine_ft, heat_profile, jacobi_forward, jacobi_inverse, plancherel_sides,
    radial_nodes, RadialProfile, SpectralProfile,
};

pub(super) fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<(&'static str, Outcome)> {
    Ok(match cmd {
        Command::Phi(a) => ("phi", cmd_phi(a, cfg)?),
        Command::Transform(TransformCmd::Forward(a)) => ("transform forward", cmd_forward(a, cfg)?),
        Command::Transform(TransformCmd::Inverse(a)) => ("transform inverse", cmd_inverse(a, cfg)?),
        Command::Transform(TransformCmd::Roundtrip(a)) => ("transform roundtrip", cmd_roundtrip(a, cfg)?),
        Command::Abel(a) => ("abel", cmd_abel(a, cfg)?),
        Command::Heat(a) => ("heat", cmd_heat(a, cfg)?),
        Command::Ingham(InghamCmd::Catalog(a)) => ("ingham catalog", cmd_catalog(a)?),
        Command::Ingham(InghamCmd::Check(a)) => ("ingham check", cmd_check(a)?),
        Command::Ingham(InghamCmd::Bump(a)) => ("ingham bump", cmd_bump(a)?),
        Command::Ingham(InghamCmd::Split(a)) => ("ingham split", cmd_split(a)?),
        Command::Chernoff(ChernoffCmd::Norms(a)) => ("chernoff norms", cmd_norms(a, cfg)?),
        Command::Chernoff(ChernoffCmd::Moments(a)) => ("chernoff moments", cmd_moments(a, cfg)?),
        Command::Chernoff(ChernoffCmd::Andiv(a)) => ("chernoff andiv", cmd_andiv(a)?),
        Command::Chernoff(ChernoffCmd::Bound(a)) => ("chernoff bound", cmd_bound(a)?),
        Command::Counterexample(a) => ("counterexample", cmd_counterexample(a, cfg)?),
    })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<JacobiParams> {
        JacobiParams::new(self.alpha, self.beta)
    }
}

fn params_value(p: JacobiParams) -> serde_json::Value {
    json!({ "alpha": p.alpha(), "beta": p.beta(), "rho": p.rho() })
}

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn uniform(end: f64, points: usize) -> Vec<f64> {
    let n = points.max(2) - 1;
    (0..=n).map(|i| end * i as f64 / n as f64).collect()
}

fn with_origin(nodes: Vec<f64>) -> Vec<f64> {
    let mut g = vec![0.0];
    g.extend(nodes.into_iter().filter(|t| *t > 0.0));
    g
}

// ---------------------------------------------------------------- phi

#[derive(Debug, Args, Serialize)]
pub struct PhiArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Real part of the spectral parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Imaginary part (|μ| ≤ ρ).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    /// Evaluation radius; repeatable.
    #[arg(long = "t", required_unless_present = "grid")]
    pub t: Vec<f64>,
    /// CSV with a single `t` column.
    #[arg(long, conflicts_with = "t")]
    pub grid: Option<PathBuf>,
}

fn cmd_phi(a: &PhiArgs, cfg: &RunConfig) -> Result<Outcome> {
    let params = a.params.params()?;
    let lam = SpectralPoint::new(a.lambda, a.mu)?;
    let ts = match &a.grid {
        Some(p) => io::read_table(p, &["t"])?.into_iter().map(|r| r[0]).collect(),
        None => a.t.clone(),
    };
    if ts.is_empty() || ts.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(Error::InvalidParams("radii must be finite and non-negative".into()));
    }
    let ts = sorted_unique(ts);
    let ev = PhiEvaluator::new(params, lam);
    let table = ev.table(&ts)?;
    let res = ev.residuals(&ts)?;
    let max_residual = res.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    if max_residual > cfg.quadrature.tolerance {
        return Err(Error::Integration(format!("ODE residual {max_residual:e} exceeds {:e}", cfg.quadrature.tolerance)));
    }
    let rows: Vec<Vec<f64>> = table.iter().zip(&res).map(|(s, r)| vec![s.t, s.value, s.derivative, *r]).collect();
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({
            "params": params_value(params),
            "lambda": a.lambda,
            "mu": a.mu,
            "values": table.iter().map(|s| json!({ "t": s.t, "value": s.value, "derivative": s.derivative })).collect::<Vec<_>>(),
            "max_residual": max_residual,
        }),
        ..Outcome::default()
    };
    out.verdict("residual", "within-tolerance");
    out.precision.insert("max_residual".into(), max_residual);
    out.tables.push(Table { name: "phi", header: &["t", "value", "derivative", "residual"], rows });
    Ok(out)
}

// ---------------------------------------------------------------- transforms

/// Radial input: a `t,value` file or a synthetic profile.
#[derive(Debug, Args, Serialize)]
pub struct RadialSource {
    /// CSV with columns `t,value`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Declared support radius of the input file.
    #[arg(long, requires = "input")]
    pub support: Option<f64>,
    /// Synthetic `exp(-(t/w)²)` with width `w`.
    #[arg(long)]
    pub gaussian: Option<f64>,
    /// Synthetic `exp(1 - 1/(1-(t/R)²))` supported in `[0, R]`.
    #[arg(long)]
    pub bump: Option<f64>,
}

impl RadialSource {
    /// Loads or samples the profile; synthetic profiles land on the exact forward rule for `omega`.
    fn load(&self, omega: f64, quad: &QuadratureSpec) -> Result<RadialProfile> {
        let chosen = [self.input.is_some(), self.gaussian.is_some(), self.bump.is_some()];
        if chosen.iter().filter(|c| **c).count() != 1 {
            return Err(Error::InvalidParams("give exactly one of --input, --gaussian, --bump".into()));
        }
        if let Some(p) = &self.input {
            return io::read_radial_csv(p, self.support);
        }
        if let Some(w) = self.gaussian {
            if !(w > 0.0) {
                return Err(Error::InvalidParams(format!("gaussian width must be positive, got {w}")));
            }
            let nodes = with_origin(radial_nodes(quad.t_max, omega, quad).0);
            return RadialProfile::sample(|t| (-(t / w).powi(2)).exp(), &nodes, None);
        }
        let r = self.bump.unwrap_or(f64::NAN);
        if !(r > 0.0 && r <= quad.t_max) {
            return Err(Error::InvalidParams(format!("bump radius must lie in (0, t_max], got {r}")));
        }
        let mut nodes = with_origin(radial_nodes(r, omega, quad).0);
        nodes.push(r);
        RadialProfile::sample(
            |t| {
                let u = t / r;
                if u < 1.0 {
                    (1.0 - 1.0 / (1.0 - u * u)).exp()
                } else {
                    0.0
                }
            },
            &nodes,
            Some(r),
        )
    }
}

#[derive(Debug, Subcommand)]
pub enum TransformCmd {
    /// Radial profile to spectral profile.
    Forward(ForwardArgs),
    /// Spectral profile to radial profile.
    Inverse(InverseArgs),
    /// Seeded band-limited spectra: inverse, forward again, Plancherel.
    Roundtrip(RoundtripArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ForwardArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub source: RadialSource,
    /// Uniform λ-nodes on `[0, lambda_max]`.
    #[arg(long, default_value_t = 1025)]
    pub lambda_points: usize,
}

fn cmd_forward(a: &ForwardArgs, cfg: &RunConfig) -> Result<Outcome> {
    let quad = &cfg.quadrature;
    let params = a.params.params()?;
    let f = a.source.load(quad.lambda_max, quad)?;
    let lam = uniform(quad.lambda_max, a.lambda_points);
    let fhat = jacobi_forward(params, &f, &lam, quad)?;
    let sides = plancherel_sides(params, &f, &fhat, quad)?;
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({
            "params": params_value(params),
            "lambda_points": lam.len(),
            "spectral_sup": fhat.sup_norm(),
            "plancherel": to_value(&sides)?,
        }),
        ..Outcome::default()
    };
    out.precision.insert("plancherel_relative_gap".into(), sides.relative_gap);
    out.verdict("plancherel", tolerance_verdict(sides.relative_gap, 1e-6));
    out.tables.push(spectral_table(&fhat));
    Ok(out)
}

fn tolerance_verdict(err: f64, tol: f64) -> &'static str {
    if err <= tol {
        "within-tolerance"
    } else {
        "outside-tolerance"
    }
}

fn spectral_table(f: &SpectralProfile) -> Table {
    Table {
        name: "spectral",
        header: &["lambda", "re", "im"],
        rows: f.lambdas.iter().zip(&f.values).map(|(l, v)| vec![*l, v.re, v.im]).collect(),
    }
}

fn radial_table(name: &'static str, f: &RadialProfile) -> Table {
    Table { name, header: &["t", "value"], rows: f.grid.iter().zip(&f.values).map(|(t, v)| vec![*t, *v]).collect() }
}

#[derive(Debug, Args, Serialize)]
pub struct InverseArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// CSV with columns `lambda,re,im`.
    #[arg(long, required_unless_present = "random")]
    pub input: Option<PathBuf>,
    /// Index of a seeded band-limited spectrum.
    #[arg(long, conflicts_with = "input")]
    pub random: Option<u64>,
    /// Uniform output radii on `[0, t_max]`.
    #[arg(long, default_value_t = 121)]
    pub t_points: usize,
}

fn cmd_inverse(a: &InverseArgs, cfg: &RunConfig) -> Result<Outcome> {
    let quad = &cfg.quadrature;
    let params = a.params.params()?;
    let fhat = match (&a.input, a.random) {
        (Some(p), _) => io::read_spectral_csv(p, params)?,
        (None, Some(i)) => band_limited_spectrum(params, cfg.seed, i, quad)?,
        _ => return Err(Error::InvalidParams("give --input or --random".into())),
    };
    let t = uniform(quad.t_max, a.t_points);
    let f = jacobi_inverse(params, &fhat, &t, quad)?;
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({
            "params": params_value(params),
            "t_points": t.len(),
            "radial_sup": f.sup_norm(),
            "value_at_origin": f.values[0],
        }),
        ..Outcome::default()
    };
    out.tables.push(radial_table("radial", &f));
    Ok(out)
}

#[derive(Debug, Args, Serialize)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of seeded spectra.
    #[arg(long, default_value_t = 10)]
    pub count: u64,
    /// Comparison nodes, uniform on `(0, lambda_max/2]`.
    #[arg(long, default_value_t = 33)]
    pub check_points: usize,
}

/// Inverse then forward of one seeded spectrum: `(max relative error, Plancherel sides)`.
pub fn seeded_round_trip(
    params: JacobiParams,
    seed: u64,
    index: u64,
    check: &[f64],
    quad: &QuadratureSpec,
) -> Result<(f64, crate::transforms::PlancherelSides)> {
    let omega = check.iter().fold(0.0f64, |m, l| m.max(*l));
    let fhat = band_limited_spectrum(params, seed, index, quad)?;
    let mut nodes = with_origin(radial_nodes(quad.t_max, omega, quad).0);
    nodes.push(quad.t_max);
    let f = jacobi_inverse(params, &fhat, &nodes, quad)?;
    let back = jacobi_forward(params, &f, check, quad)?;
    let want = fhat.eval_many(check)?;
    let scale = want.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    let err = back.values.iter().zip(&want).fold(0.0f64, |m, (b, w)| m.max((b - w).norm())) / scale;
    Ok((err, plancherel_sides(params, &f, &fhat, quad)?))
}

fn cmd_roundtrip(a: &RoundtripArgs, cfg: &RunConfig) -> Result<Outcome> {
    let quad = &cfg.quadrature;
    let params = a.params.params()?;
    let step = 0.5 * quad.lambda_max / a.check_points.max(1) as f64;
    let check: Vec<f64> = (1..=a.check_points).map(|i| i as f64 * step).collect();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for i in 0..a.count {
        let (err, sides) = seeded_round_trip(params, cfg.seed, i, &check, quad)?;
        rows.push(vec![i as f64, err, sides.radial, sides.spectral, sides.relative_gap]);
        entries.push(json!({ "index": i, "round_trip_error": err, "plancherel": to_value(&sides)? }));
    }
    let worst_rt = rows.iter().fold(0.0f64, |m, r| m.max(r[1]));
    let worst_pl = rows.iter().fold(0.0f64, |m, r| m.max(r[4]));
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({
            "params": params_value(params),
            "seed": cfg.seed,
            "profiles": entries,
            "max_round_trip_error": worst_rt,
            "max_plancherel_gap": worst_pl,
        }),
        ..Outcome::default()
    };
    out.verdict("round_trip", tolerance_verdict(worst_rt, 1e-6));
    out.verdict("plancherel", tolerance_verdict(worst_pl, 1e-6));
    out.precision.insert("max_round_trip_error".into(), worst_rt);
    out.precision.insert("max_plancherel_gap".into(), worst_pl);
    out.tables.push(Table {
        name: "roundtrip",
        header: &["index", "round_trip_error", "radial_norm2", "spectral_norm2", "plancherel_gap"],
        rows,
    });
    Ok(out)
}

// ---------------------------------------------------------------- abel, heat

#[derive(Debug, Args, Serialize)]
pub struct AbelArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub source: RadialSource,
    /// Uniform output nodes on `[0, t_max]`.
    #[arg(long, default_value_t = 241)]
    pub s_points: usize,
}

/// Allowed share of the peak beyond the declared support.
const SUPPORT_LEAKAGE: f64 = 0.05;

fn cmd_abel(a: &AbelArgs, cfg: &RunConfig) -> Result<Outcome> {
    let quad = &cfg.quadrature;
    let params = a.params.params()?;
    let f = a.source.load(quad.lambda_max, quad)?;
    let s = uniform(quad.t_max, a.s_points);
    // slice projection: the cosine transform of 𝓐f against 𝓕f, with 𝓐f cut at the support of f
    let lam = uniform(0.5 * quad.lambda_max, 65);
    let extent = f.support_radius.unwrap_or(quad.t_max);
    let mut fine = with_origin(radial_nodes(extent, 0.5 * quad.lambda_max, quad).0);
    fine.push(extent);
    let all = sorted_unique(s.iter().chain(&fine).copied().collect());
    let af_all = abel_slice(params, &f, &all, quad)?;
    let pick = |nodes: &[f64]| -> Vec<f64> {
        nodes.iter().map(|x| af_all.values[all.binary_search_by(|g| g.total_cmp(x)).expect("node present")]).collect()
    };
    let af = RadialProfile::new(s.clone(), pick(&s), None)?;
    let af_fine = RadialProfile::new(fine.clone(), pick(&fine), f.support_radius)?;
    let xi: Vec<f64> = lam.iter().map(|l| l / (2.0 * std::f64::consts::PI)).collect();
    let lhs = euclid_cosine_ft(&af_fine, &xi)?;
    let rhs = jacobi_forward(params, &f, &lam, quad)?;
    let scale = rhs.sup_norm();
    let slice_err = lhs.values.iter().zip(&rhs.values).fold(0.0f64, |m, (x, y)| m.max((x - y).norm())) / scale;
    let leakage = f.support_radius.map(|l| {
        let peak = af.sup_norm();
        let outside = s.iter().zip(&af.values).filter(|(s, _)| **s > l).fold(0.0f64, |m, (_, v)| m.max(v.abs()));
        outside / peak
    });
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({
            "params": params_value(params),
            "slice_projection_error": slice_err,
            "support_leakage": leakage,
        }),
        ..Outcome::default()
    };
    out.verdict("slice_projection", tolerance_verdict(slice_err, 1e-6));
    if let Some(l) = leakage {
        out.verdict("support", if l <= SUPPORT_LEAKAGE { "contained" } else { "leaking" });
        out.precision.insert("support_leakage".into(), l);
    }
    out.precision.insert("slice_projection_error".into(), slice_err);
    out.tables.push(Table {
        name: "abel",
        header: &["s", "value"],
        rows: s.iter().zip(&af.values).map(|(s, v)| vec![*s, *v]).collect(),
    });
    Ok(out)
}

#[derive(Debug, Args, Serialize)]
pub struct HeatArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Time τ > 0.
    #[arg(long)]
    pub time: f64,
}

fn cmd_heat(a: &HeatArgs, cfg: &RunConfig) -> Result<Outcome> {
    let quad = &cfg.quadrature;
    let params = a.params.params()?;
    let check = [0.0, 0.5, 1.0, 2.0, 3.0];
    let nodes = with_origin(radial_nodes(quad.t_max, 3.0, quad).0);
    let h = heat_profile(params, a.time, &nodes, quad)?;
    let back = jacobi_forward(params, &h, &check, quad)?;
    let err = check.iter().zip(&back.values).fold(0.0f64, |m, (l, v)| m.max((v.re - (-a.time * l * l).exp()).abs()));
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({
            "params": params_value(params),
            "time": a.time,
            "value_at_origin": h.values[0],
            "spectral_check_error": err,
        }),
        ..Outcome::default()
    };
    out.verdict("spectral_check", tolerance_verdict(err, 1e-6));
    out.precision.insert("spectral_check_error".into(), err);
    out.tables.push(radial_table("heat", &h));
    Ok(out)
}

// ---------------------------------------------------------------- ingham

#[derive(Debug, Subcommand)]
pub enum InghamCmd {
    /// Write a catalog decay profile as `r,theta` CSV with its tail-law sidecar.
    Catalog(CatalogArgs),
    /// Classify the Ingham integral ∫θ(r)/r dr.
    Check(CheckArgs),
    /// Build a compactly supported bump whose spectrum decays like e^{-ξθ(ξ)}.
    Bump(BumpArgs),
    /// Decide Case I / Case II against 4/√r.
    Split(CheckArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogProfile {
    /// 4/√r on r ≥ 1 (c/√(r+s) in general).
    InverseSqrt,
    /// 8/√(r+1).
    ThetaOne,
    /// 1/log(e+r).
    InverseLog,
    /// log log r / log r.
    LoglogOverLog,
}

#[derive(Debug, Args, Serialize)]
pub struct CatalogArgs {
    #[arg(long, value_enum)]
    pub profile: CatalogProfile,
    #[arg(long, default_value_t = 4.0)]
    pub coef: f64,
    #[arg(long, default_value_t = 0.0)]
    pub shift: f64,
    /// End of the table; the tail law takes over beyond it.
    #[arg(long, default_value_t = 1e6)]
    pub r_max: f64,
    /// Destination CSV; the sidecar goes next to it with extension `.json`.
    #[arg(long)]
    pub out: PathBuf,
}

fn cmd_catalog(a: &CatalogArgs) -> Result<Outcome> {
    let power = |e: f64| TailDecl { kind: "power".into(), exponent: Some(e) };
    let (theta, decl) = match a.profile {
        CatalogProfile::InverseSqrt => (ThetaProfile::inverse_sqrt(a.coef, a.shift, a.r_max)?, power(0.5)),
        CatalogProfile::ThetaOne => (ThetaProfile::theta_one(a.r_max)?, power(0.5)),
        CatalogProfile::InverseLog => (ThetaProfile::inverse_log(a.r_max)?, TailDecl { kind: "log".into(), exponent: None }),
        CatalogProfile::LoglogOverLog => {
            (ThetaProfile::loglog_over_log(a.r_max)?, TailDecl { kind: "loglog_over_log".into(), exponent: None })
        }
    };
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    io::write_theta_csv(&a.out, &theta, &decl)?;
    Ok(Outcome {
        inputs: to_value(a)?,
        results: json!({ "nodes": theta.r.len(), "r_max": theta.r_max(), "tail": to_value(&theta.tail)? }),
        files: vec![a.out.clone(), io::sidecar_path(&a.out)],
        ..Outcome::default()
    })
}

#[derive(Debug, Args, Serialize)]
pub struct CheckArgs {
    /// `r,theta` CSV with a JSON tail-law sidecar.
    #[arg(long)]
    pub theta: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub dimension: u32,
}

fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::Finite => "finite",
        Classification::Divergent => "divergent",
    }
}

fn cmd_check(a: &CheckArgs) -> Result<Outcome> {
    let theta = io::read_theta_csv(&a.theta)?;
    let v = ingham_integral(&theta, a.dimension)?;
    let mut out = Outcome { inputs: to_value(a)?, results: to_value(&v)?, ..Outcome::default() };
    out.verdict("ingham", classification_name(v.classification));
    Ok(out)
}

#[derive(Debug, Args, Serialize)]
pub struct BumpArgs {
    #[arg(long)]
    pub theta: PathBuf,
    /// Support radius L.
    #[arg(long)]
    pub support: f64,
    /// Number of dyadic blocks J.
    #[arg(long)]
    pub terms: u32,
    /// Upper end of the decay check.
    #[arg(long, default_value_t = 1e3)]
    pub xi_max: f64,
    /// Jacobi parameters for the weighted spectral integral (optional).
    #[arg(long, requires = "beta", allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, requires = "alpha", allow_hyphen_values = true)]
    pub beta: Option<f64>,
}

fn cmd_bump(a: &BumpArgs) -> Result<Outcome> {
    let theta = io::read_theta_csv(&a.theta)?;
    let integral = ingham_integral(&theta, 1)?;
    let bump = bump_construct(&theta, a.support, a.terms)?;
    let params = match (a.alpha, a.beta) {
        (Some(al), Some(be)) => Some(JacobiParams::new(al, be)?),
        _ => None,
    };
    let decay = decay_verify(&Spectrum::Product(&bump.spectrum), &theta, a.xi_max, params)?;
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({
            "ingham": to_value(&integral)?,
            "support": bump.support(),
            "blocks": to_value(&bump.spectrum.blocks)?,
            "decay": to_value(&decay)?,
        }),
        ..Outcome::default()
    };
    out.verdict("ingham", classification_name(integral.classification));
    out.verdict("support", if bump.support() <= a.support { "within-budget" } else { "exceeds-budget" });
    out.verdict("decay", if decay.satisfied { "finite-constant" } else { "no-constant" });
    if let Some(w) = &decay.weighted {
        out.verdict("weighted_integral", if w.finite { "finite" } else { "divergent" });
    }
    out.tables.push(radial_table("bump", &bump.profile));
    out.tables.push(Table {
        name: "bump_spectrum",
        header: &["xi", "value"],
        rows: bump.sampled_spectrum.lambdas.iter().zip(&bump.sampled_spectrum.values).map(|(x, v)| vec![*x, v.re]).collect(),
    });
    Ok(out)
}

fn cmd_split(a: &CheckArgs) -> Result<Outcome> {
    let theta = io::read_theta_csv(&a.theta)?;
    let split = theta_case_split(&theta)?;
    let mut out = Outcome { inputs: to_value(a)?, results: to_value(&split)?, ..Outcome::default() };
    match &split {
        CaseSplit::Case1 => out.verdict("case", "case1"),
        CaseSplit::Case2 { augmented, .. } => {
            out.verdict("case", "case2");
            out.tables.push(Table {
                name: "augmented_theta",
                header: &["r", "theta"],
                rows: augmented.r.iter().zip(&augmented.theta).map(|(r, t)| vec![*r, *t]).collect(),
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- chernoff

#[derive(Debug, Subcommand)]
pub enum ChernoffCmd {
    /// ln‖Δ^m f‖₂, Carleman terms and partial sums.
    Norms(SpectralArgs),
    /// Moments M(2m) of |𝓕f| |c|^{-2} dλ, optionally against A_r‖Δ^{m+r} f‖₂.
    Moments(MomentArgs),
    /// Decade increments of Σ a_n^{1+m/n}.
    Andiv(AndivArgs),
    /// Case I bound on ‖Δ^m f‖₂ for a decay profile.
    Bound(BoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailArg {
    Decaying,
    Compact,
}

impl From<TailArg> for SpectralTail {
    fn from(t: TailArg) -> Self {
        match t {
            TailArg::Decaying => SpectralTail::Decaying,
            TailArg::Compact => SpectralTail::Compact,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// CSV with columns `lambda,re,im`.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    /// Closed-form `𝓕f(λ) = e^{-sλ²}` with this `s`.
    #[arg(long)]
    pub gaussian_spectrum: Option<f64>,
    /// Index of a seeded band-limited spectrum.
    #[arg(long)]
    pub random: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub m_max: u32,
    /// Whether the spectrum decays past its last node or stops there.
    #[arg(long, value_enum, default_value_t = TailArg::Decaying)]
    pub tail: TailArg,
}

/// `ln|𝓕f|` as a closure with its integration end.
struct LogSource {
    ln_abs: Box<dyn Fn(f64) -> f64 + Sync>,
    end: f64,
}

impl SpectralArgs {
    fn source(&self, params: JacobiParams, m_top: u32, cfg: &RunConfig) -> Result<LogSource> {
        let chosen = [self.spectrum.is_some(), self.gaussian_spectrum.is_some(), self.random.is_some()];
        if chosen.iter().filter(|c| **c).count() != 1 {
            return Err(Error::InvalidParams("give exactly one of --spectrum, --gaussian-spectrum, --random".into()));
        }
        if let Some(s) = self.gaussian_spectrum {
            if !(s > 0.0) {
                return Err(Error::InvalidParams(format!("gaussian scale must be positive, got {s}")));
            }
            // twice the peak location of λ^{4m} e^{-2sλ²}, well past where it has dropped by e^{-40}
            let end = 2.0 * ((2.0 * m_top as f64 + 40.0) / s).sqrt();
            return Ok(LogSource { ln_abs: Box::new(move |l| -s * l * l), end });
        }
        let profile = match (&self.spectrum, self.random) {
            (Some(p), _) => io::read_spectral_csv(p, params)?,
            (None, Some(i)) => band_limited_spectrum(params, cfg.seed, i, &cfg.quadrature)?,
            _ => unreachable!(),
        };
        let spec = LogSpectrum::from_profile(&profile)?;
        let end = spec.end();
        Ok(LogSource { ln_abs: Box::new(move |l| spec.ln_at(l)), end })
    }
}

fn verdict_name<T: Serialize>(v: &T) -> Result<String> {
    Ok(to_value(v)?.as_str().unwrap_or_default().to_string())
}

fn cmd_norms(a: &SpectralArgs, cfg: &RunConfig) -> Result<Outcome> {
    let params = a.params.params()?;
    let src = a.source(params, a.m_max, cfg)?;
    let ppp = cfg.quadrature.points_per_panel;
    let report = carleman_from_fn(params, &src.ln_abs, src.end, a.m_max, a.tail.into(), ppp)?;
    let rows = (0..report.m_values.len())
        .map(|i| vec![report.m_values[i] as f64, report.log_norms[i], report.terms[i], report.partial_sums[i]])
        .collect();
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({ "params": params_value(params), "end": src.end, "carleman": to_value(&report)? }),
        ..Outcome::default()
    };
    out.verdict("carleman", verdict_name(&report.verdict)?);
    out.tables.push(Table { name: "carleman", header: &["m", "log_norm", "term", "partial_sum"], rows });
    Ok(out)
}

#[derive(Debug, Args, Serialize)]
pub struct MomentArgs {
    #[command(flatten)]
    pub spectral: SpectralArgs,
    /// Compare M(2m) with A_r‖Δ^{m+r} f‖₂ for this r.
    #[arg(long)]
    pub chain: Option<u32>,
}

fn cmd_moments(a: &MomentArgs, cfg: &RunConfig) -> Result<Outcome> {
    let s = &a.spectral;
    let params = s.params.params()?;
    let r = a.chain.unwrap_or(0);
    let src = s.source(params, s.m_max + r, cfg)?;
    let ppp = cfg.quadrature.points_per_panel;
    if s.m_max < 4 {
        return Err(Error::InvalidParams(format!("m_max must be ≥ 4, got {}", s.m_max)));
    }
    let ln_mu = |l: f64| (src.ln_abs)(l) + ln_plancherel_density(params, l).unwrap_or(f64::NEG_INFINITY);
    let lm = log_moments(ln_mu, src.end, s.m_max, s.tail.into(), ppp)?;
    let orders: Vec<u32> = (1..=s.m_max).collect();
    let terms: Vec<f64> = orders.iter().zip(&lm).map(|(m, v)| (-v / (2.0 * *m as f64)).exp()).collect();
    let partial: Vec<f64> = terms
        .iter()
        .scan(0.0, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect();
    let (verdict, stats) = classify(&orders, &partial);
    let mut rows: Vec<Vec<f64>> = (0..orders.len()).map(|i| vec![orders[i] as f64, lm[i], terms[i], partial[i]]).collect();
    let mut results = json!({
        "params": params_value(params),
        "end": src.end,
        "log_moments": lm,
        "carleman_terms": terms,
        "partial_sums": partial,
        "verdict": to_value(&verdict)?,
        "trend_statistics": to_value(&stats)?,
    });
    let mut out = Outcome::default();
    out.verdict("moments", verdict_name(&verdict)?);
    if a.chain.is_some() {
        let ln_a = log_chain_constant(params, r, ppp)?;
        let norms = log_laplacian_norms(params, &src.ln_abs, src.end, s.m_max + r, s.tail.into(), ppp)?;
        // M(2m) ≤ A_r ‖Δ^{m+r} f‖₂, in logs; norms[k] is order k+1
        let slack: Vec<f64> = (0..s.m_max as usize).map(|i| ln_a + norms[i + r as usize] - lm[i]).collect();
        let holds = slack.iter().all(|v| *v >= 0.0);
        for (row, sl) in rows.iter_mut().zip(&slack) {
            row.push(*sl);
        }
        results["chain"] = json!({ "r": r, "ln_constant": ln_a, "slack": slack, "holds": holds });
        out.verdict("chain", if holds { "holds" } else { "violated" });
    }
    out.inputs = to_value(a)?;
    out.results = results;
    out.tables.push(Table {
        name: "moments",
        header: if a.chain.is_some() {
            &["m", "log_moment", "term", "partial_sum", "chain_slack"]
        } else {
            &["m", "log_moment", "term", "partial_sum"]
        },
        rows,
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceArg {
    /// a_n = 1/n.
    Harmonic,
    /// a_n = 1/(n log(n+1)).
    HarmonicLog,
    /// a_n = 1/n².
    InverseSquare,
}

#[derive(Debug, Args, Serialize)]
pub struct AndivArgs {
    #[arg(long, value_enum, default_value_t = SequenceArg::Harmonic)]
    pub sequence: SequenceArg,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, default_value_t = 1_000_000)]
    pub n_max: u64,
}

fn cmd_andiv(a: &AndivArgs) -> Result<Outcome> {
    if a.n_max < 10 {
        return Err(Error::InvalidParams(format!("n_max must be ≥ 10, got {}", a.n_max)));
    }
    let report = match a.sequence {
        SequenceArg::Harmonic => andiv_diagnostic(|n| 1.0 / n as f64, a.m, a.n_max),
        SequenceArg::HarmonicLog => andiv_diagnostic(|n| 1.0 / (n as f64 * ((n + 1) as f64).ln()), a.m, a.n_max),
        SequenceArg::InverseSquare => andiv_diagnostic(|n| 1.0 / (n as f64).powi(2), a.m, a.n_max),
    };
    let rows = report.decade_increments.iter().map(|d| vec![d.from as f64, d.to as f64, d.increment]).collect();
    Ok(Outcome {
        inputs: to_value(a)?,
        results: to_value(&report)?,
        tables: vec![Table { name: "andiv", header: &["from", "to", "increment"], rows }],
        ..Outcome::default()
    })
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub theta: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub m_max: u32,
}

fn cmd_bound(a: &BoundArgs) -> Result<Outcome> {
    let params = a.params.params()?;
    let theta = io::read_theta_csv(&a.theta)?;
    let m_min = 2u32.max(params.rho().ceil() as u32);
    if a.m_max < m_min {
        return Err(Error::InvalidParams(format!("m_max must be ≥ {m_min}, got {}", a.m_max)));
    }
    let bounds = (m_min..=a.m_max).map(|m| case1_norm_bound(&theta, params, m)).collect::<Result<Vec<_>>>()?;
    let rows = bounds.iter().map(|b| vec![b.m as f64, b.ln_sup, b.ln_majorant, b.ln_piece3_bound]).collect();
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({ "params": params_value(params), "bounds": to_value(&bounds)? }),
        ..Outcome::default()
    };
    out.verdict("case", "case1");
    out.tables.push(Table { name: "bound", header: &["m", "ln_sup", "ln_majorant", "ln_piece3_bound"], rows });
    Ok(out)
}

// ---------------------------------------------------------------- counterexample

#[derive(Debug, Args, Serialize)]
pub struct CounterexampleArgs {
    /// Dimension of H^n.
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Degree of the zonal harmonic.
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    #[arg(long, default_value_t = 100)]
    pub max_m: u32,
    /// Radial extent of the vanishing check.
    #[arg(long, default_value_t = 6.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 61)]
    pub r_points: usize,
}

/// Largest allowed `max |Δ^m f|` on the `k₀`-ray.
const VANISHING_TOL: f64 = 1e-12;
const HECKE_BOCHNER_TOL: f64 = 1e-5;
const INCREMENT_TOL: f64 = 0.15;

fn cmd_counterexample(a: &CounterexampleArgs, cfg: &RunConfig) -> Result<Outcome> {
    let quad = &cfg.quadrature;
    if !(4..=200).contains(&a.max_m) {
        return Err(Error::InvalidParams(format!("max-m must lie in [4, 200], got {}", a.max_m)));
    }
    let bundle = build_bundle(a.n, a.l)?;
    let r = uniform(a.r_max, a.r_points);
    let mut m_list: Vec<u32> = [0u32, 1, 2, 5, 10, 20, 50, 100, 200].into_iter().filter(|m| *m < a.max_m).collect();
    m_list.push(a.max_m);
    let van = vanishing_check(&bundle, &r, &m_list, quad)?;
    let hb = hecke_bochner_check(&bundle, 3.0, quad)?;
    let div = divergence_report(&bundle, a.max_m, quad)?;
    let gamma = gamma_asymptotic_check(0.5, &[10, 100, 1000])?;
    let hb_max = hb.relative_errors.iter().fold(0.0f64, |m, (_, e)| m.max(*e));

    let c = &div.carleman;
    let rows = (0..c.m_values.len()).map(|i| vec![c.m_values[i] as f64, c.terms[i], c.partial_sums[i], c.log_norms[i]]).collect();
    let mut out = Outcome {
        inputs: to_value(a)?,
        results: json!({
            "bundle": to_value(&bundle)?,
            "vanishing": to_value(&van)?,
            "hecke_bochner": to_value(&hb)?,
            "divergence": to_value(&div)?,
            "gamma_asymptotic": to_value(&gamma)?,
        }),
        ..Outcome::default()
    };
    out.verdict("vanishing", if van.max_abs <= VANISHING_TOL { "vanishes" } else { "nonzero" });
    out.verdict("carleman", verdict_name(&c.verdict)?);
    out.verdict("hecke_bochner", tolerance_verdict(hb_max, HECKE_BOCHNER_TOL));
    out.verdict("majorant", if div.majorant.holds { "holds" } else { "violated" });
    let inc_ok = div.increments.iter().all(|i| i.relative_error <= INCREMENT_TOL);
    out.verdict("increments", if inc_ok { "within-tolerance" } else { "outside-tolerance" });
    out.precision.insert("vanishing_max_abs".into(), van.max_abs);
    out.precision.insert("hecke_bochner_max_relative_error".into(), hb_max);
    out.tables.push(Table { name: "counterexample", header: &["m", "term", "partial_sum", "log_norm"], rows });
    Ok(out)
}
