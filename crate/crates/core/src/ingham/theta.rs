use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Asymptotic law of `θ` beyond the end of its table.
///
/// Coefficients are fitted so the law matches the table at `R_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailLaw {
    /// `c·r^{-a}`, `0 < a ≤ 1`.
    Power { coef: f64, exponent: f64 },
    /// `c / ln r`.
    Log { coef: f64 },
    /// `c · ln ln r / ln r`.
    LogLogOverLog { coef: f64 },
    /// `θ ≡ 0` beyond the table.
    Zero,
    /// Sum of several laws (used for `θ + θ₁`).
    Sum { terms: Vec<TailLaw> },
}

/// Tail law as declared in a JSON sidecar, before fitting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailDecl {
    pub kind: String,
    #[serde(default)]
    pub exponent: Option<f64>,
}

impl TailLaw {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            TailLaw::Power { coef, exponent } => coef * r.powf(-exponent),
            TailLaw::Log { coef } => coef / r.ln(),
            TailLaw::LogLogOverLog { coef } => coef * r.ln().ln() / r.ln(),
            TailLaw::Zero => 0.0,
            TailLaw::Sum { terms } => terms.iter().map(|t| t.eval(r)).sum(),
        }
    }

    /// Whether `∫^∞ θ(r)/r dr` converges under this law.
    pub fn integrable(&self) -> bool {
        match self {
            TailLaw::Power { .. } | TailLaw::Zero => true,
            TailLaw::Log { .. } | TailLaw::LogLogOverLog { .. } => false,
            TailLaw::Sum { terms } => terms.iter().all(TailLaw::integrable),
        }
    }

    /// `∫_R^X θ(r)/r dr` in closed form (`X = ∞` allowed).
    pub fn integral(&self, from: f64, to: f64) -> f64 {
        let (lr, lx) = (from.ln(), to.ln());
        match self {
            TailLaw::Power { coef, exponent } => {
                let upper = if to.is_infinite() { 0.0 } else { to.powf(-exponent) };
                coef / exponent * (from.powf(-exponent) - upper)
            }
            TailLaw::Log { coef } => coef * (lx.ln() - lr.ln()),
            TailLaw::LogLogOverLog { coef } => 0.5 * coef * (lx.ln().powi(2) - lr.ln().powi(2)),
            TailLaw::Zero => 0.0,
            TailLaw::Sum { terms } => terms.iter().map(|t| t.integral(from, to)).sum(),
        }
    }

    /// Law of the same shape whose value at `r` equals `value`.
    fn fitted(&self, r: f64, value: f64) -> Result<TailLaw> {
        Ok(match self {
            TailLaw::Power { exponent, .. } => TailLaw::Power { coef: value * r.powf(*exponent), exponent: *exponent },
            TailLaw::Log { .. } => TailLaw::Log { coef: value * r.ln() },
            TailLaw::LogLogOverLog { .. } => {
                if r.ln().ln() <= 1.0 {
                    return Err(Error::UnsupportedTail(format!(
                        "ln ln r / ln r is not decreasing at R_max = {r}; extend the table beyond e^e"
                    )));
                }
                TailLaw::LogLogOverLog { coef: value * r.ln() / r.ln().ln() }
            }
            TailLaw::Zero => {
                if value != 0.0 {
                    return Err(Error::UnsupportedTail(format!(
                        "a constant tail is only allowed for θ = 0, table ends at {value}"
                    )));
                }
                TailLaw::Zero
            }
            TailLaw::Sum { .. } => return Err(Error::UnsupportedTail("sum laws cannot be fitted from one value".into())),
        })
    }

    fn check(&self) -> Result<()> {
        match self {
            TailLaw::Power { exponent, coef } if !(*exponent > 0.0 && *exponent <= 1.0) || !(*coef >= 0.0) => {
                Err(Error::UnsupportedTail(format!("power tail needs 0 < a ≤ 1 and c ≥ 0, got a = {exponent}, c = {coef}")))
            }
            TailLaw::Log { coef } | TailLaw::LogLogOverLog { coef } if !(*coef >= 0.0) => {
                Err(Error::UnsupportedTail(format!("negative tail coefficient {coef}")))
            }
            TailLaw::Sum { terms } => terms.iter().try_for_each(TailLaw::check),
            _ => Ok(()),
        }
    }
}

impl TailDecl {
    /// Shape-only law (coefficient fitted later).
    pub fn to_law(&self) -> Result<TailLaw> {
        match self.kind.as_str() {
            "power" => Ok(TailLaw::Power { coef: 1.0, exponent: self.exponent.unwrap_or(f64::NAN) }),
            "log" => Ok(TailLaw::Log { coef: 1.0 }),
            "loglog_over_log" => Ok(TailLaw::LogLogOverLog { coef: 1.0 }),
            "zero" => Ok(TailLaw::Zero),
            other => Err(Error::UnsupportedTail(format!("unknown tail law '{other}'"))),
        }
    }
}

/// A decreasing decay profile `θ: [0, ∞) → [0, ∞)`: a table on `[0, R_max]`
/// interpolated log-log linearly, followed by a catalog tail law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaProfile {
    pub r: Vec<f64>,
    pub theta: Vec<f64>,
    pub tail: TailLaw,
    pub admissible: bool,
}

const GRID_PER_DECADE: usize = 64;

impl ThetaProfile {
    /// Builds a profile from a table and a tail shape, fitting the tail at the last node.
    pub fn from_table(r: Vec<f64>, theta: Vec<f64>, tail_shape: &TailLaw) -> Result<Self> {
        if r.len() != theta.len() || r.len() < 2 {
            return Err(Error::InvalidParams("θ table needs ≥ 2 rows of equal length".into()));
        }
        if r[0] != 0.0 || r.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParams("θ table must start at r = 0 and increase strictly".into()));
        }
        if theta.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("θ table has non-finite values".into()));
        }
        let r_max = *r.last().unwrap();
        let tail = tail_shape.fitted(r_max, *theta.last().unwrap())?;
        tail.check()?;
        Self::assemble(r, theta, tail)
    }

    fn assemble(r: Vec<f64>, theta: Vec<f64>, tail: TailLaw) -> Result<Self> {
        let nonneg = theta.iter().all(|&v| v >= 0.0);
        let decreasing = theta.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
        let r_max = *r.last().unwrap();
        let tail_ok = (0..40).all(|k| {
            let x = r_max * 2f64.powi(k);
            let y = r_max * 2f64.powi(k + 1);
            tail.eval(y) <= tail.eval(x) * (1.0 + 1e-12)
        });
        let admissible = nonneg && decreasing && tail_ok;
        Ok(Self { r, theta, tail, admissible })
    }

    /// Samples `f` on `{0} ∪` a geometric grid over `[10⁻³, r_max]`; an infinite `f(0)` is replaced by `f(10⁻³)`.
    pub fn from_fn(f: impl Fn(f64) -> f64, r_max: f64, tail_shape: &TailLaw) -> Result<Self> {
        let lo: f64 = 1e-3;
        let decades = (r_max / lo).log10();
        let n = (decades * GRID_PER_DECADE as f64).ceil() as usize;
        let mut r = vec![0.0];
        r.extend((0..=n).map(|i| lo * (r_max / lo).powf(i as f64 / n as f64)));
        *r.last_mut().unwrap() = r_max;
        let mut theta: Vec<f64> = r.iter().map(|&x| f(x)).collect();
        if !theta[0].is_finite() {
            theta[0] = theta[1];
        }
        Self::from_table(r, theta, tail_shape)
    }

    pub fn r_max(&self) -> f64 {
        *self.r.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.abs();
        let r_max = self.r_max();
        if x >= r_max {
            return if x == r_max { *self.theta.last().unwrap() } else { self.tail.eval(x) };
        }
        let i = self.r.partition_point(|&v| v <= x) - 1;
        let (r0, r1, t0, t1) = (self.r[i], self.r[i + 1], self.theta[i], self.theta[i + 1]);
        if r0 > 0.0 && t0 > 0.0 && t1 > 0.0 {
            let s = (x / r0).ln() / (r1 / r0).ln();
            (t0.ln() + s * (t1 / t0).ln()).exp()
        } else {
            t0 + (x - r0) / (r1 - r0) * (t1 - t0)
        }
    }

    /// Catalog profile `c/√(r + s)` with power-½ tail.
    pub fn inverse_sqrt(coef: f64, shift: f64, r_max: f64) -> Result<Self> {
        Self::from_fn(|r| coef / (r + shift).sqrt(), r_max, &TailLaw::Power { coef: 1.0, exponent: 0.5 })
    }

    /// `θ₁(r) = 8/√(r+1)`.
    pub fn theta_one(r_max: f64) -> Result<Self> {
        Self::inverse_sqrt(8.0, 1.0, r_max)
    }

    /// `1/ln(e + r)`.
    pub fn inverse_log(r_max: f64) -> Result<Self> {
        Self::from_fn(|r| 1.0 / (std::f64::consts::E + r).ln(), r_max, &TailLaw::Log { coef: 1.0 })
    }

    /// `ln ln r / ln r`, held at its maximum `1/e` for `r ≤ e^e`.
    pub fn loglog_over_log(r_max: f64) -> Result<Self> {
        let knee = std::f64::consts::E.exp();
        Self::from_fn(
            |r| {
                let x = r.max(knee);
                x.ln().ln() / x.ln()
            },
            r_max,
            &TailLaw::LogLogOverLog { coef: 1.0 },
        )
    }

    /// Constant profile (tail zero only when the constant is 0).
    pub fn constant(value: f64, r_max: f64) -> Result<Self> {
        if value == 0.0 {
            Self::from_table(vec![0.0, r_max], vec![0.0, 0.0], &TailLaw::Zero)
        } else {
            Err(Error::UnsupportedTail("a nonzero constant θ does not tend to 0".into()))
        }
    }

    /// Pointwise sum of two profiles on the union of their tables.
    pub fn sum(&self, other: &ThetaProfile) -> Result<Self> {
        let r_max = self.r_max().min(other.r_max());
        let mut r: Vec<f64> = self.r.iter().chain(&other.r).copied().filter(|&x| x <= r_max).collect();
        r.sort_by(f64::total_cmp);
        r.dedup();
        let theta = r.iter().map(|&x| self.eval(x) + other.eval(x)).collect();
        let tail = TailLaw::Sum { terms: vec![self.tail_from(r_max), other.tail_from(r_max)] };
        Self::assemble(r, theta, tail)
    }

    /// Tail law describing this profile beyond `r` (table region must end at or before `r`).
    fn tail_from(&self, r: f64) -> TailLaw {
        if r >= self.r_max() {
            self.tail.clone()
        } else {
            self.tail.fitted(r, self.eval(r)).unwrap_or_else(|_| self.tail.clone())
        }
    }
}
