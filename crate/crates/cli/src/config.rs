use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use mixcorr::dynamics::{default_t_max, uniform_grid, EvolutionMode, HamiltonianSpec, DEFAULT_SAMPLES};
use mixcorr::states::{Family, StateSpec};
use serde::Deserialize;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Physical,
    Paper,
}

impl From<Mode> for EvolutionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Physical => EvolutionMode::Physical,
            Mode::Paper => EvolutionMode::PaperPrinted,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every command. All optional so a config file can fill gaps.
#[derive(Args, Debug, Default, Clone)]
pub struct RunArgs {
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    /// Repeat for several values.
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Exchange coupling.
    #[arg(long = "J", allow_negative_numbers = true)]
    pub j: Option<f64>,
    /// Uniform field along z.
    #[arg(long = "B", allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Multiplies J.
    #[arg(long)]
    pub j_scale: Option<f64>,
    /// End of the time grid; defaults to Jt = 2π.
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Bisection resolution for window endpoints, at most 1e-3.
    #[arg(long)]
    pub resolution: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// JSON file with the same keys; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Use the printed (uncorrected) state matrices.
    #[arg(long)]
    pub as_printed: bool,
    /// Run the discord optimizer on non-physical printed matrices.
    #[arg(long)]
    pub force_discord: bool,
}

#[derive(Deserialize, Debug, Default)]
#[serde(untagged)]
enum PhiList {
    #[default]
    None,
    One(f64),
    Many(Vec<f64>),
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    family: Option<Family>,
    gamma: Option<f64>,
    c: Option<f64>,
    s: Option<f64>,
    #[serde(default)]
    phi: PhiList,
    theta: Option<f64>,
    #[serde(rename = "J", alias = "j")]
    j: Option<f64>,
    #[serde(rename = "B", alias = "b")]
    b: Option<f64>,
    j_scale: Option<f64>,
    t_max: Option<f64>,
    samples: Option<usize>,
    mode: Option<Mode>,
    resolution: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    as_printed: Option<bool>,
    force_discord: Option<bool>,
}

fn read_config(path: &Path) -> Result<ConfigFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::invalid(format!("bad config {}: {e}", path.display())))
}

pub const DEFAULT_RESOLUTION: f64 = 1e-6;

/// Flags merged over the config file, defaults applied.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub family: Option<Family>,
    pub gamma: Option<f64>,
    pub c: Option<f64>,
    pub s: Option<f64>,
    pub phi: Vec<f64>,
    pub theta: Option<f64>,
    pub ham: HamiltonianSpec,
    pub t_max: Option<f64>,
    pub samples: usize,
    pub mode: EvolutionMode,
    pub resolution: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub as_printed: bool,
    pub force_discord: bool,
}

impl RunConfig {
    pub fn resolve(args: RunArgs) -> Result<Self, Failure> {
        let file = match &args.config {
            Some(p) => read_config(p)?,
            None => ConfigFile::default(),
        };
        let phi = if !args.phi.is_empty() {
            args.phi
        } else {
            match file.phi {
                PhiList::None => Vec::new(),
                PhiList::One(p) => vec![p],
                PhiList::Many(v) => v,
            }
        };
        let j = args.j.or(file.j).unwrap_or(1.0);
        let b = args.b.or(file.b).unwrap_or(0.0);
        let scale = args.j_scale.or(file.j_scale).unwrap_or(1.0);
        let ham = HamiltonianSpec::new(j, b)?.with_coupling_scale(scale);
        if !ham.j.is_finite() {
            return Err(Failure::invalid("J × j_scale is not finite"));
        }
        Ok(Self {
            family: args.family.or(file.family),
            gamma: args.gamma.or(file.gamma),
            c: args.c.or(file.c),
            s: args.s.or(file.s),
            phi,
            theta: args.theta.or(file.theta),
            ham,
            t_max: args.t_max.or(file.t_max),
            samples: args.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES),
            mode: args.mode.or(file.mode).map(Into::into).unwrap_or_default(),
            resolution: args.resolution.or(file.resolution).unwrap_or(DEFAULT_RESOLUTION),
            out: args.out.or(file.out),
            format: args.format.or(file.format).unwrap_or_default(),
            as_printed: args.as_printed || file.as_printed.unwrap_or(false),
            force_discord: args.force_discord || file.force_discord.unwrap_or(false),
        })
    }

    pub fn time_grid(&self) -> Result<Vec<f64>, Failure> {
        let t_max = self.t_max.unwrap_or_else(|| default_t_max(&self.ham));
        Ok(uniform_grid(t_max, self.samples)?)
    }

    /// One spec per `--phi` for `rho-m`, otherwise exactly one.
    pub fn state_specs(&self) -> Result<Vec<StateSpec>, Failure> {
        let family = self.family.ok_or_else(|| Failure::invalid("--family is required"))?;
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| Failure::invalid(format!("family {family} needs --{flag}")))
        };
        let forbid = |present: bool, flag: &str| {
            if present {
                Err(Failure::invalid(format!("--{flag} does not apply to family {family}")))
            } else {
                Ok(())
            }
        };
        match family {
            Family::Mems | Family::Werner => {
                forbid(self.c.is_some(), "c")?;
                forbid(self.s.is_some(), "s")?;
                forbid(!self.phi.is_empty(), "phi")?;
                forbid(self.theta.is_some(), "theta")?;
                let gamma = need(self.gamma, "gamma")?;
                Ok(vec![if family == Family::Mems {
                    StateSpec::Mems { gamma }
                } else {
                    StateSpec::Werner { gamma }
                }])
            }
            Family::RhoN => {
                forbid(self.gamma.is_some(), "gamma")?;
                forbid(self.s.is_some(), "s")?;
                forbid(!self.phi.is_empty(), "phi")?;
                let c = need(self.c, "c")?;
                Ok(vec![StateSpec::RhoN { c, theta: self.theta.unwrap_or(0.0) }])
            }
            Family::RhoM => {
                forbid(self.gamma.is_some(), "gamma")?;
                let (c, s) = (need(self.c, "c")?, need(self.s, "s")?);
                if self.phi.is_empty() {
                    return Err(Failure::invalid("family rho-m needs --phi"));
                }
                let theta = self.theta.unwrap_or(0.0);
                Ok(self.phi.iter().map(|&phi| StateSpec::RhoM { c, s, phi, theta }).collect())
            }
        }
    }
}
