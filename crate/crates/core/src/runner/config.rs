//! TOML run configuration.
//!
//! ```toml
//! [settings]            # optional; every key has a default
//! slack = 1e-9          # relative slack of each certified inequality
//! window = 201.06       # G search window in u = δt (default 64π)
//! gamma_tol = 1e-10     # absolute quadrature tolerance for Γ
//! out = "out"           # output directory, relative to the config file
//!
//! [[check]]
//! kind = "chernykh"     # see CheckPlan for kinds and their fields
//! name = "chernykh_m1"  # optional; defaults to the kind and order
//! m = 1
//! n = 4
//! trials = 500
//! seed = 1              # mandatory for randomized kinds
//! ```

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use toml::Spanned;

use super::specs::{parse_exponent, parse_symbol_spec, parse_weight_spec};
use crate::error::{Error, Result};
use crate::inequalities::DEFAULT_SLACK;
use crate::kernel::{GammaKernel, DEFAULT_WINDOW, GAMMA_TOL};
use crate::symbols::SymbolPair;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    settings: Option<RawSettings>,
    #[serde(default)]
    check: Vec<Spanned<RawCheck>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSettings {
    slack: Option<f64>,
    window: Option<f64>,
    gamma_tol: Option<f64>,
    out: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawExponent {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCheck {
    kind: Spanned<String>,
    name: Option<String>,
    m: Option<u32>,
    n: Option<u32>,
    m_list: Option<Vec<u32>>,
    weight: Option<Spanned<String>>,
    symbol: Option<Spanned<String>>,
    gamma: Option<f64>,
    sigma: Option<f64>,
    factor: Option<f64>,
    p: Option<Spanned<RawExponent>>,
    trials: Option<usize>,
    seed: Option<u64>,
    slack: Option<f64>,
    window: Option<f64>,
    dim: Option<usize>,
    delta_step: Option<f64>,
    delta_max: Option<f64>,
    grid: Option<usize>,
}

/// Resolved global settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub slack: f64,
    pub window: f64,
    pub gamma_tol: f64,
    pub out: PathBuf,
}

/// Command-line overrides applied on top of a config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    /// Replaces every seed.
    pub seed: Option<u64>,
    /// Replaces every slack.
    pub slack: Option<f64>,
    /// Replaces every `G` window.
    pub window: Option<f64>,
    pub out: Option<PathBuf>,
}

/// What a check does. Randomized kinds need `trials` and `seed`.
#[derive(Debug, Clone)]
pub enum CheckPlan {
    /// `kind = "operator"`: `trials`, `seed`, `dim` (default 8).
    Operator { trials: usize, seed: u64, dim: usize },
    /// `kind = "functional"`: `trials`, `seed`.
    Functional { trials: usize, seed: u64 },
    /// `kind = "chernykh"`: `m`, `n`, `trials`, `seed`.
    Chernykh { m: u32, n: u32, trials: usize, seed: u64 },
    /// `kind = "chi_bound"`: `m ≥ 2`, `n`, `trials`, `seed`.
    ChiBound { m: u32, n: u32, trials: usize, seed: u64 },
    /// `kind = "minimal_delta"`: `m`, `n`, `trials`, `seed`,
    /// `delta_step` (default π/100), `delta_max` (default 2π).
    MinimalDelta {
        m: u32,
        n: u32,
        trials: usize,
        seed: u64,
        step: f64,
        max: f64,
    },
    /// `kind = "v_star"`: `m_list`, `trials`, `seed`.
    VStar { m_list: Vec<u32>, trials: usize, seed: u64 },
    /// `kind = "v_hat"`: `m_list`, `trials`, `seed`.
    VHat { m_list: Vec<u32>, trials: usize, seed: u64 },
    /// `kind = "admissibility"`: `weight`, `symbol`, `gamma`, `factor` (default 1).
    Admissibility {
        kernel: GammaKernel,
        gamma: f64,
        factor: f64,
    },
    /// `kind = "sharpness"`: `weight`, `symbol`, `gamma`, `sigma` (default 1); `δ = γ/σ`.
    Sharpness {
        kernel: GammaKernel,
        gamma: f64,
        sigma: f64,
    },
    /// `kind = "jackson"`: `weight`, `symbol`, `gamma`, `p`, `trials`, `seed`; `δ = γ/σ`.
    Jackson {
        kernel: GammaKernel,
        gamma: f64,
        p: f64,
        trials: usize,
        seed: u64,
    },
    /// `kind = "psi_class"`: `symbol`, `grid` (default 1024).
    PsiClass { symbol: SymbolPair, grid: usize },
}

/// Valid values of `kind`.
pub const CHECK_KINDS: [&str; 11] = [
    "operator",
    "functional",
    "chernykh",
    "chi_bound",
    "minimal_delta",
    "v_star",
    "v_hat",
    "admissibility",
    "sharpness",
    "jackson",
    "psi_class",
];

#[derive(Debug, Clone)]
pub struct PlannedCheck {
    pub name: String,
    pub kind: String,
    pub line: usize,
    pub slack: f64,
    pub window: f64,
    pub plan: CheckPlan,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub settings: Settings,
    pub checks: Vec<PlannedCheck>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|b| *b == b'\n').count() + 1
}

fn config_error(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        line: Some(line),
        field: Some(field.to_string()),
        message: message.into(),
    }
}

/// Fields of one raw check, with the line used for error messages.
struct Fields<'a> {
    raw: &'a RawCheck,
    text: &'a str,
    line: usize,
    base: Option<&'a Path>,
    gamma_tol: f64,
    window: f64,
}

impl Fields<'_> {
    fn need<T: Copy>(&self, v: Option<T>, field: &str) -> Result<T> {
        v.ok_or_else(|| {
            config_error(
                self.line,
                field,
                format!("required for kind `{}`", self.raw.kind.get_ref()),
            )
        })
    }

    fn positive(&self, v: f64, field: &str) -> Result<f64> {
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(config_error(
                self.line,
                field,
                format!("must be positive and finite, got {v}"),
            ))
        }
    }

    fn order(&self, field: &str, min: u32) -> Result<u32> {
        let m = self.need(self.raw.m, field)?;
        if m < min || m > crate::symbols::MAX_BUILTIN_ORDER {
            return Err(config_error(
                self.line,
                field,
                format!("must lie in [{min}, {}], got {m}", crate::symbols::MAX_BUILTIN_ORDER),
            ));
        }
        Ok(m)
    }

    fn step(&self) -> Result<u32> {
        let n = self.need(self.raw.n, "n")?;
        if n == 0 {
            return Err(config_error(self.line, "n", "must be at least 1"));
        }
        Ok(n)
    }

    fn random(&self) -> Result<(usize, u64)> {
        let trials = self.need(self.raw.trials, "trials")?;
        let seed = self.raw.seed.ok_or_else(|| {
            config_error(
                self.line,
                "seed",
                format!("a seed is mandatory for randomized kind `{}`", self.raw.kind.get_ref()),
            )
        })?;
        Ok((trials, seed))
    }

    fn symbol(&self) -> Result<SymbolPair> {
        let s = self
            .raw
            .symbol
            .as_ref()
            .ok_or_else(|| config_error(self.line, "symbol", "required"))?;
        parse_symbol_spec(s.get_ref(), self.base)
            .map_err(|e| config_error(line_of(self.text, s.span().start), "symbol", e.to_string()))
    }

    fn kernel(&self) -> Result<GammaKernel> {
        let w = self
            .raw
            .weight
            .as_ref()
            .ok_or_else(|| config_error(self.line, "weight", "required"))?;
        let weight = parse_weight_spec(w.get_ref(), self.base)
            .map_err(|e| config_error(line_of(self.text, w.span().start), "weight", e.to_string()))?;
        Ok(GammaKernel::with_tolerance(weight, self.symbol()?, self.gamma_tol).with_window(self.window))
    }

    fn m_list(&self) -> Result<Vec<u32>> {
        let list = self
            .raw
            .m_list
            .clone()
            .ok_or_else(|| config_error(self.line, "m_list", "required"))?;
        if list.is_empty() || list.iter().any(|m| *m < 1 || *m > crate::symbols::MAX_BUILTIN_ORDER) {
            return Err(config_error(
                self.line,
                "m_list",
                "orders must be nonempty and lie in [1, 8]",
            ));
        }
        Ok(list)
    }

    fn exponent(&self) -> Result<f64> {
        let p = self
            .raw
            .p
            .as_ref()
            .ok_or_else(|| config_error(self.line, "p", "required"))?;
        let line = line_of(self.text, p.span().start);
        let value = match p.get_ref() {
            RawExponent::Number(v) => parse_exponent(&v.to_string()),
            RawExponent::Text(t) => parse_exponent(t),
        }
        .map_err(|e| config_error(line, "p", e.to_string()))?;
        if value < 2.0 {
            return Err(config_error(line, "p", "Jackson bounds need p >= 2"));
        }
        Ok(value)
    }

    fn plan(&self) -> Result<CheckPlan> {
        let raw = self.raw;
        Ok(match raw.kind.get_ref().as_str() {
            "operator" => {
                let (trials, seed) = self.random()?;
                let dim = raw.dim.unwrap_or(8);
                if dim == 0 {
                    return Err(config_error(self.line, "dim", "must be at least 1"));
                }
                CheckPlan::Operator { trials, seed, dim }
            }
            "functional" => {
                let (trials, seed) = self.random()?;
                CheckPlan::Functional { trials, seed }
            }
            "chernykh" => {
                let (m, n) = (self.order("m", 1)?, self.step()?);
                let (trials, seed) = self.random()?;
                CheckPlan::Chernykh { m, n, trials, seed }
            }
            "chi_bound" => {
                let (m, n) = (self.order("m", 2)?, self.step()?);
                let (trials, seed) = self.random()?;
                CheckPlan::ChiBound { m, n, trials, seed }
            }
            "minimal_delta" => {
                let (m, n) = (self.order("m", 2)?, self.step()?);
                let (trials, seed) = self.random()?;
                let step = self.positive(raw.delta_step.unwrap_or(PI / 100.0), "delta_step")?;
                let max = self.positive(raw.delta_max.unwrap_or(2.0 * PI), "delta_max")?;
                if max > 2.0 * PI + 1e-12 || step > max {
                    return Err(config_error(
                        self.line,
                        "delta_max",
                        "need delta_step <= delta_max <= 2pi",
                    ));
                }
                CheckPlan::MinimalDelta {
                    m,
                    n,
                    trials,
                    seed,
                    step,
                    max,
                }
            }
            "v_star" | "v_hat" => {
                let m_list = self.m_list()?;
                let (trials, seed) = self.random()?;
                if raw.kind.get_ref() == "v_star" {
                    CheckPlan::VStar { m_list, trials, seed }
                } else {
                    CheckPlan::VHat { m_list, trials, seed }
                }
            }
            "admissibility" => CheckPlan::Admissibility {
                kernel: self.kernel()?,
                gamma: self.positive(self.need(raw.gamma, "gamma")?, "gamma")?,
                factor: self.positive(raw.factor.unwrap_or(1.0), "factor")?,
            },
            "sharpness" => CheckPlan::Sharpness {
                kernel: self.kernel()?,
                gamma: self.positive(self.need(raw.gamma, "gamma")?, "gamma")?,
                sigma: self.positive(raw.sigma.unwrap_or(1.0), "sigma")?,
            },
            "jackson" => {
                let kernel = self.kernel()?;
                let gamma = self.positive(self.need(raw.gamma, "gamma")?, "gamma")?;
                let p = self.exponent()?;
                let (trials, seed) = self.random()?;
                CheckPlan::Jackson {
                    kernel,
                    gamma,
                    p,
                    trials,
                    seed,
                }
            }
            "psi_class" => {
                let grid = raw.grid.unwrap_or(1024);
                if grid < 64 {
                    return Err(config_error(self.line, "grid", "must be at least 64"));
                }
                CheckPlan::PsiClass {
                    symbol: self.symbol()?,
                    grid,
                }
            }
            other => {
                return Err(config_error(
                    line_of(self.text, raw.kind.span().start),
                    "kind",
                    format!("unknown kind `{other}`; valid kinds: {}", CHECK_KINDS.join(", ")),
                ))
            }
        })
    }

    fn default_name(&self) -> String {
        let kind = self.raw.kind.get_ref();
        match (self.raw.m, self.raw.n) {
            (Some(m), Some(n)) => format!("{kind}_m{m}_n{n}"),
            (Some(m), None) => format!("{kind}_m{m}"),
            _ => match (&self.raw.weight, &self.raw.symbol) {
                (Some(w), Some(s)) => format!("{kind}_{}_{}", w.get_ref(), s.get_ref()),
                (None, Some(s)) => format!("{kind}_{}", s.get_ref()),
                _ => kind.clone(),
            },
        }
    }
}

fn check_setting(line: usize, field: &str, v: f64) -> Result<f64> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(config_error(
            line,
            field,
            format!("must be nonnegative and finite, got {v}"),
        ))
    }
}

/// Parses and validates a configuration; `base` anchors relative paths.
pub fn parse_config(text: &str, base: Option<&Path>, overrides: &Overrides) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config {
        line: e.span().map(|s| line_of(text, s.start)),
        field: None,
        message: e.message().to_string(),
    })?;
    let rs = raw.settings.unwrap_or_default();
    let slack = check_setting(1, "slack", overrides.slack.or(rs.slack).unwrap_or(DEFAULT_SLACK))?;
    let window = overrides.window.or(rs.window).unwrap_or(DEFAULT_WINDOW);
    if !(window > 0.0 && window.is_finite()) {
        return Err(Error::config_field("window", format!("must be positive, got {window}")));
    }
    let gamma_tol = rs.gamma_tol.unwrap_or(GAMMA_TOL);
    if !(gamma_tol > 0.0) {
        return Err(Error::config_field(
            "gamma_tol",
            format!("must be positive, got {gamma_tol}"),
        ));
    }
    let out = match (&overrides.out, rs.out) {
        (Some(o), _) => o.clone(),
        (None, Some(o)) => base.map_or_else(|| PathBuf::from(&o), |b| b.join(&o)),
        (None, None) => base.map_or_else(|| PathBuf::from("out"), |b| b.join("out")),
    };

    let mut checks = Vec::new();
    for spanned in &raw.check {
        let line = line_of(text, spanned.span().start);
        let rc = spanned.get_ref();
        let check_slack = check_setting(line, "slack", overrides.slack.or(rc.slack).unwrap_or(slack))?;
        let check_window = overrides.window.or(rc.window).unwrap_or(window);
        if !(check_window > 0.0 && check_window.is_finite()) {
            return Err(config_error(line, "window", "must be positive"));
        }
        let seeded;
        let rc = if let (Some(seed), Some(_)) = (overrides.seed, rc.seed) {
            seeded = RawCheck {
                seed: Some(seed),
                ..rc.clone()
            };
            &seeded
        } else {
            rc
        };
        let fields = Fields {
            raw: rc,
            text,
            line,
            base,
            gamma_tol,
            window: check_window,
        };
        checks.push(PlannedCheck {
            name: rc.name.clone().unwrap_or_else(|| fields.default_name()),
            kind: rc.kind.get_ref().clone(),
            line,
            slack: check_slack,
            window: check_window,
            plan: fields.plan()?,
        });
    }
    Ok(RunConfig {
        settings: Settings {
            slack,
            window,
            gamma_tol,
            out,
        },
        checks,
    })
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path, overrides: &Overrides) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, path.parent(), overrides)
}
