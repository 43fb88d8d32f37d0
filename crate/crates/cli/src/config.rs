//! Run configuration: a TOML file overlaid with `--set key=value` pairs.

use std::path::{Path, PathBuf};

use ac_spectra::sae::ExtendedReal;
use ac_spectra::{Channel, PhysicalParams, Spin};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

/// Which boundary condition at the origin selects the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Fixed by the shell coupling (or by `alpha` when given).
    SelfAdjoint,
    /// `alpha' = 0`: the regular solution only.
    Regular,
    /// `alpha' = inf`: the singular solution only.
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVar {
    Eta,
    R0,
    Alpha,
    Omega,
}

impl SweepVar {
    pub fn label(self) -> &'static str {
        match self {
            SweepVar::Eta => "eta",
            SweepVar::R0 => "r0",
            SweepVar::Alpha => "alpha",
            SweepVar::Omega => "omega",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum AlphaSetting {
    Value(f64),
    Word(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawConfig {
    mass: f64,
    eta: f64,
    r0: f64,
    omega: f64,
    channels: Vec<(i64, i64)>,
    n_roots: usize,
    mode: Mode,
    alpha: Option<AlphaSetting>,
    r_min: f64,
    r_max: f64,
    r_points: usize,
    normalize: bool,
    state: usize,
    sweep_var: Option<SweepVar>,
    sweep_from: Option<f64>,
    sweep_to: Option<f64>,
    sweep_steps: usize,
    sweep_scale: Scale,
    tol: Option<f64>,
    format: Format,
    out: Option<PathBuf>,
    inject_perturbation: f64,
}

impl Default for RawConfig {
    fn default() -> Self {
        Self {
            mass: 1.0,
            eta: -1.5,
            r0: 1.0,
            omega: 0.0,
            channels: vec![(1, 1)],
            n_roots: 3,
            mode: Mode::SelfAdjoint,
            alpha: None,
            r_min: 0.01,
            r_max: 10.0,
            r_points: 50,
            normalize: false,
            state: 0,
            sweep_var: None,
            sweep_from: None,
            sweep_to: None,
            sweep_steps: 11,
            sweep_scale: Scale::Linear,
            tol: None,
            format: Format::Csv,
            out: None,
            inject_perturbation: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub var: SweepVar,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub scale: Scale,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.from];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                let t = k as f64 / last;
                match self.scale {
                    Scale::Linear => self.from + (self.to - self.from) * t,
                    Scale::Log => self.from * (self.to / self.from).powf(t),
                }
            })
            .collect()
    }
}

/// Validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: PhysicalParams,
    /// `(m, s)` pairs in input order.
    pub channels: Vec<(i64, Spin)>,
    pub n_roots: usize,
    pub mode: Mode,
    pub alpha: Option<ExtendedReal>,
    pub r_min: f64,
    pub r_max: f64,
    pub r_points: usize,
    pub normalize: bool,
    pub state: usize,
    pub sweep: Option<Sweep>,
    pub tol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub inject_perturbation: f64,
}

impl RunConfig {
    pub fn channel_list(&self, params: &PhysicalParams) -> Vec<Channel> {
        self.channels.iter().map(|&(m, s)| Channel::new(params.eta(), m, s)).collect()
    }

    /// Log-spaced radial grid `r_min..=r_max`.
    pub fn r_grid(&self) -> Vec<f64> {
        let last = (self.r_points - 1) as f64;
        (0..self.r_points).map(|k| self.r_min * (self.r_max / self.r_min).powf(k as f64 / last)).collect()
    }
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parses the value of a `--set` pair as TOML, falling back to a bare string.
fn parse_override_value(key: &str, raw: &str) -> CliResult<toml::Value> {
    let doc = format!("v = {raw}");
    match doc.parse::<toml::Table>() {
        Ok(mut t) => Ok(t.remove("v").expect("key present")),
        Err(_) if !raw.is_empty() && raw.chars().all(|c| c.is_ascii_alphanumeric() || "_-./".contains(c)) => {
            Ok(toml::Value::String(raw.to_owned()))
        }
        Err(e) => Err(config_error(format!("--set {key}: cannot parse value {raw:?}: {}", e.message()))),
    }
}

pub fn load(path: Option<&Path>, overrides: &[String]) -> CliResult<RunConfig> {
    let mut table = toml::Table::new();
    if let Some(path) = path {
        let text =
            std::fs::read_to_string(path).map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
        // Deserializing the text directly keeps line and column context.
        toml::from_str::<RawConfig>(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        table = text.parse::<toml::Table>().map_err(|e| config_error(format!("{}: {e}", path.display())))?;
    }
    for pair in overrides {
        let (key, raw) =
            pair.split_once('=').ok_or_else(|| config_error(format!("--set expects key=value, got {pair:?}")))?;
        let key = key.trim();
        table.insert(key.to_owned(), parse_override_value(key, raw.trim())?);
    }
    let raw = RawConfig::deserialize(table).map_err(|e| config_error(e.to_string().trim_end().to_owned()))?;
    validate(raw)
}

fn validate(raw: RawConfig) -> CliResult<RunConfig> {
    let params = PhysicalParams::new(raw.mass, raw.eta, raw.r0, raw.omega).map_err(|e| config_error(e.to_string()))?;
    if raw.channels.is_empty() {
        return Err(config_error("channels: at least one [m, s] pair is required"));
    }
    let channels = raw
        .channels
        .iter()
        .map(|&(m, s)| Spin::try_from(s).map(|spin| (m, spin)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| config_error(format!("channels: {e}")))?;
    if raw.n_roots == 0 {
        return Err(config_error("n_roots must be >= 1"));
    }
    let alpha = match raw.alpha {
        None => None,
        Some(AlphaSetting::Value(a)) if a.is_finite() => Some(ExtendedReal::Finite(a)),
        Some(AlphaSetting::Value(a)) if a == f64::INFINITY => Some(ExtendedReal::Infinite),
        Some(AlphaSetting::Word(w)) if w == "inf" || w == "infinity" => Some(ExtendedReal::Infinite),
        Some(other) => return Err(config_error(format!("alpha: expected a finite number or \"inf\", got {other:?}"))),
    };
    if alpha.is_some() && raw.mode != Mode::SelfAdjoint {
        return Err(config_error("alpha can only be combined with mode = \"self_adjoint\""));
    }
    if !(raw.r_min > 0.0 && raw.r_max > raw.r_min && raw.r_max.is_finite()) {
        return Err(config_error(format!("radial grid needs 0 < r_min < r_max, got {} and {}", raw.r_min, raw.r_max)));
    }
    if raw.r_points < 2 {
        return Err(config_error("r_points must be >= 2"));
    }
    if let Some(tol) = raw.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(config_error(format!("tol must be finite and > 0, got {tol}")));
        }
    }
    if !raw.inject_perturbation.is_finite() {
        return Err(config_error("inject_perturbation must be finite"));
    }
    let sweep = match raw.sweep_var {
        None => None,
        Some(var) => {
            let from = raw.sweep_from.ok_or_else(|| config_error("sweep_from is required with sweep_var"))?;
            let to = raw.sweep_to.ok_or_else(|| config_error("sweep_to is required with sweep_var"))?;
            if !(from.is_finite() && to.is_finite()) {
                return Err(config_error("sweep range must be finite"));
            }
            if raw.sweep_steps == 0 {
                return Err(config_error("sweep_steps must be >= 1"));
            }
            if raw.sweep_scale == Scale::Log && !(from * to > 0.0) {
                return Err(config_error("log sweep needs nonzero endpoints of equal sign"));
            }
            if var == SweepVar::Alpha && raw.mode != Mode::SelfAdjoint {
                return Err(config_error("an alpha sweep needs mode = \"self_adjoint\""));
            }
            Some(Sweep { var, from, to, steps: raw.sweep_steps, scale: raw.sweep_scale })
        }
    };
    Ok(RunConfig {
        params,
        channels,
        n_roots: raw.n_roots,
        mode: raw.mode,
        alpha,
        r_min: raw.r_min,
        r_max: raw.r_max,
        r_points: raw.r_points,
        normalize: raw.normalize,
        state: raw.state,
        sweep,
        tol: raw.tol,
        format: raw.format,
        out: raw.out,
        inject_perturbation: raw.inject_perturbation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_sets(sets: &[&str]) -> CliResult<RunConfig> {
        load(None, &sets.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    }

    #[test]
    fn defaults() {
        let c = from_sets(&[]).unwrap();
        assert_eq!(c.params, PhysicalParams::new(1.0, -1.5, 1.0, 0.0).unwrap());
        assert_eq!(c.channels, vec![(1, Spin::Up)]);
        assert_eq!(c.mode, Mode::SelfAdjoint);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn overrides_are_toml_values() {
        let c = from_sets(&["omega=1", "channels=[[1, 1], [-2, -1]]", "mode=regular", "alpha_unused_check=1"]);
        assert!(matches!(c, Err(CliError::Config(msg)) if msg.contains("alpha_unused_check")));
        let c = from_sets(&["omega=1", "channels=[[1, 1], [-2, -1]]", "mode=regular"]).unwrap();
        assert_eq!(c.params.omega(), 1.0);
        assert_eq!(c.channels, vec![(1, Spin::Up), (-2, Spin::Down)]);
        assert_eq!(c.mode, Mode::Regular);
        let c = from_sets(&["alpha=\"inf\""]).unwrap();
        assert_eq!(c.alpha, Some(ExtendedReal::Infinite));
        let c = from_sets(&["alpha=inf"]).unwrap();
        assert_eq!(c.alpha, Some(ExtendedReal::Infinite));
        let c = from_sets(&["alpha=-2.5"]).unwrap();
        assert_eq!(c.alpha, Some(ExtendedReal::Finite(-2.5)));
    }

    #[test]
    fn rejections() {
        for bad in [
            &["mass=0"][..],
            &["channels=[[1, 0]]"],
            &["channels=[]"],
            &["n_roots=0"],
            &["r_min=2", "r_max=1"],
            &["sweep_var=eta"],
            &["sweep_var=r0", "sweep_from=0", "sweep_to=1", "sweep_scale=log"],
            &["alpha=\"big\""],
            &["mode=regular", "alpha=1"],
            &["nonsense"],
            &["mode=sideways"],
        ] {
            assert!(matches!(from_sets(bad), Err(CliError::Config(_))), "{bad:?}");
        }
    }

    #[test]
    fn file_errors_carry_line_context() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "mass = 1.0\n\nbogus = 3\n").unwrap();
        let err = load(Some(&path), &[]).unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("bogus"), "{err}");
    }

    #[test]
    fn sweep_values() {
        let s = Sweep { var: SweepVar::Eta, from: -5.0, to: -1.0, steps: 41, scale: Scale::Linear };
        let v = s.values();
        assert_eq!(v.len(), 41);
        assert_eq!((v[0], v[40]), (-5.0, -1.0));
        let s = Sweep { var: SweepVar::R0, from: 0.01, to: 1.0, steps: 3, scale: Scale::Log };
        let v = s.values();
        assert!((v[1] - 0.1).abs() < 1e-15);
    }
}
