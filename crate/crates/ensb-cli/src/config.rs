//! Configuration loading: TOML file, `--set` dotted-path overrides, defaults,
//! validation (every violated invariant is reported, with the offending
//! value), and resolution into ready-to-use core types.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use ensb_core::constants::tau_ev_inv_from_ps;
use ensb_core::kinematics::ElectronState;
use ensb_core::waves::{quasimono_margin, LaserWave, TwoWaveField, OMEGA_TAU_WARN};
use ensb_core::xsec::ResonantConfig;

const DEG: f64 = std::f64::consts::PI / 180.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Profile,
    Ratio,
    Sweep,
    Point,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Profile => "profile",
            Mode::Ratio => "ratio",
            Mode::Sweep => "sweep",
            Mode::Point => "point",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct ElectronBlock {
    /// Initial total energy in MeV (exactly one of `energy_mev`/`velocity`).
    pub energy_mev: Option<f64>,
    /// Initial velocity v/c in (0, 1).
    pub velocity: Option<f64>,
    pub theta_i_deg: f64,
    pub phi_i_deg: f64,
    pub theta_f_deg: f64,
}

impl Default for ElectronBlock {
    fn default() -> Self {
        Self {
            energy_mev: Some(1.02),
            velocity: None,
            theta_i_deg: 163.0,
            phi_i_deg: 0.0,
            theta_f_deg: 10.0,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct FieldBlock {
    pub omega1_ev: f64,
    pub omega2_ev: f64,
    pub eta01: f64,
    pub eta02: f64,
    pub tau_ps: f64,
    /// Angle between the polarization bases of the two waves, degrees.
    pub delta_deg: f64,
    /// Observation-window ratio rho = T/tau.
    pub rho: f64,
    /// Nuclear charge number.
    pub z: f64,
}

impl Default for FieldBlock {
    fn default() -> Self {
        Self {
            omega1_ev: 2.35,
            omega2_ev: 1.0,
            eta01: 0.1,
            eta02: 0.1,
            tau_ps: 0.1,
            delta_deg: 0.0,
            rho: 5.0,
            z: 1.0,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanBlock {
    /// Sweep variable (required for `sweep`; optional grid override for
    /// `profile` and `ratio`).
    pub variable: Option<String>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub points: Option<u32>,
    pub spacing: Option<Spacing>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputBlock {
    pub path: Option<String>,
    pub format: Format,
    /// Significant digits in CSV output.
    pub precision: u32,
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self {
            path: None,
            format: Format::Csv,
            precision: 12,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    /// Optional mode echo; must match the subcommand when present.
    pub mode: Option<Mode>,
    pub electron: ElectronBlock,
    pub field: FieldBlock,
    pub scan: ScanBlock,
    pub output: OutputBlock,
}

/// A configuration error: every violated invariant, one message per line.
#[derive(Debug)]
pub struct ConfigError(pub Vec<String>);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, msg) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "config error: {msg}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

fn one(msg: String) -> ConfigError {
    ConfigError(vec![msg])
}

/// Fully validated configuration with the derived core objects.
#[derive(Debug)]
pub struct Resolved {
    pub config: Config,
    pub mode: Mode,
    pub state_i: ElectronState,
    pub field: TwoWaveField,
    /// Pulse duration in eV^-1.
    pub tau: f64,
    pub warnings: Vec<String>,
}

impl Resolved {
    pub fn resonant_config(&self) -> ResonantConfig {
        ResonantConfig {
            state_i: self.state_i,
            theta_f: self.config.electron.theta_f_deg * DEG,
            field: self.field.clone(),
            z: self.config.field.z,
            rho: self.config.field.rho,
        }
    }

    /// Deterministic key/value echo of the resolved configuration, sufficient
    /// to re-run the scan exactly.
    pub fn echo(&self) -> Vec<(String, String)> {
        let c = &self.config;
        let mut kv: Vec<(String, String)> = Vec::new();
        let mut push = |k: &str, v: String| kv.push((k.to_string(), v));
        push("version", env!("CARGO_PKG_VERSION").to_string());
        push("mode", self.mode.to_string());
        match (c.electron.energy_mev, c.electron.velocity) {
            (Some(e), _) => push("electron.energy_mev", fmt_f64(e)),
            (None, Some(v)) => push("electron.velocity", fmt_f64(v)),
            (None, None) => {}
        }
        push("electron.theta_i_deg", fmt_f64(c.electron.theta_i_deg));
        push("electron.phi_i_deg", fmt_f64(c.electron.phi_i_deg));
        push("electron.theta_f_deg", fmt_f64(c.electron.theta_f_deg));
        push("field.omega1_ev", fmt_f64(c.field.omega1_ev));
        push("field.omega2_ev", fmt_f64(c.field.omega2_ev));
        push("field.eta01", fmt_f64(c.field.eta01));
        push("field.eta02", fmt_f64(c.field.eta02));
        push("field.tau_ps", fmt_f64(c.field.tau_ps));
        push("field.delta_deg", fmt_f64(c.field.delta_deg));
        push("field.rho", fmt_f64(c.field.rho));
        push("field.z", fmt_f64(c.field.z));
        push("field.omega1_tau", format!("{:.6}", self.field.wave1.omega * self.tau));
        push("field.omega2_tau", format!("{:.6}", self.field.wave2.omega * self.tau));
        if let Some(v) = &c.scan.variable {
            push("scan.variable", v.clone());
        }
        if let Some(v) = c.scan.min {
            push("scan.min", fmt_f64(v));
        }
        if let Some(v) = c.scan.max {
            push("scan.max", fmt_f64(v));
        }
        if let Some(v) = c.scan.points {
            push("scan.points", v.to_string());
        }
        if let Some(s) = c.scan.spacing {
            push(
                "scan.spacing",
                match s {
                    Spacing::Linear => "linear".to_string(),
                    Spacing::Log => "log".to_string(),
                },
            );
        }
        push(
            "output.format",
            match c.output.format {
                Format::Csv => "csv".to_string(),
                Format::Json => "json".to_string(),
            },
        );
        push("output.precision", c.output.precision.to_string());
        kv
    }
}

fn fmt_f64(v: f64) -> String {
    // Shortest round-trip representation: deterministic and re-parsable.
    let mut s = format!("{v}");
    if !s.contains(['.', 'e', 'E', 'n', 'i']) {
        s.push_str(".0");
    }
    s
}

/// Parse one `--set key=value` override into (dotted path, TOML value).
fn parse_set(spec: &str) -> Result<(Vec<String>, toml::Value), ConfigError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| one(format!("--set expects key=value, got '{spec}'")))?;
    let key = key.trim();
    if key.is_empty() {
        return Err(one(format!("--set has an empty key in '{spec}'")));
    }
    let raw = raw.trim();
    // Parse the value as TOML; fall back to a plain string.
    let value = toml::from_str::<toml::Value>(&format!("v = {raw}"))
        .ok()
        .and_then(|t| t.get("v").cloned())
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    Ok((key.split('.').map(str::to_string).collect(), value))
}

fn apply_set(root: &mut toml::Value, path: &[String], value: toml::Value) -> Result<(), ConfigError> {
    let mut node = root;
    for (i, part) in path.iter().enumerate() {
        let table = node.as_table_mut().ok_or_else(|| {
            one(format!(
                "--set path '{}' crosses the non-table key '{}'",
                path.join("."),
                path[..i].join(".")
            ))
        })?;
        if i + 1 == path.len() {
            table.insert(part.clone(), value);
            return Ok(());
        }
        node = table
            .entry(part.clone())
            .or_insert_with(|| toml::Value::Table(toml::map::Map::new()));
    }
    unreachable!("path is non-empty")
}

/// Load, override, deserialize and validate a configuration.
pub fn parse_config(
    path: Option<&Path>,
    sets: &[String],
    mode: Mode,
) -> Result<Resolved, ConfigError> {
    let mut root: toml::Value = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| one(format!("cannot read '{}': {e}", p.display())))?;
            toml::from_str(&text)
                .map_err(|e| one(format!("cannot parse '{}': {e}", p.display())))?
        }
        None => toml::Value::Table(toml::map::Map::new()),
    };
    for spec in sets {
        let (key, value) = parse_set(spec)?;
        apply_set(&mut root, &key, value)?;
    }
    let config: Config = root
        .try_into()
        .map_err(|e| one(format!("invalid configuration: {e}")))?;
    resolve(config, mode)
}

/// Validate a deserialized configuration against the given mode and build the
/// derived core objects. All violations are collected before failing.
pub fn resolve(config: Config, mode: Mode) -> Result<Resolved, ConfigError> {
    let mut errors: Vec<String> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();
    let c = &config;

    if let Some(m) = c.mode {
        if m != mode {
            errors.push(format!(
                "config mode '{m}' does not match the '{mode}' subcommand"
            ));
        }
    }

    let e = &c.electron;
    let state_i = match (e.energy_mev, e.velocity) {
        (Some(_), Some(_)) => {
            errors.push(
                "exactly one of electron.energy_mev and electron.velocity must be set (got both)"
                    .to_string(),
            );
            None
        }
        (None, None) => {
            errors.push(
                "exactly one of electron.energy_mev and electron.velocity must be set (got neither)"
                    .to_string(),
            );
            None
        }
        (Some(energy), None) => {
            ElectronState::from_energy(energy * 1e6, e.theta_i_deg * DEG, e.phi_i_deg * DEG)
                .map_err(|err| errors.push(format!("electron.energy_mev = {energy}: {err}")))
                .ok()
        }
        (None, Some(v)) => ElectronState::from_velocity(v, e.theta_i_deg * DEG, e.phi_i_deg * DEG)
            .map_err(|err| errors.push(format!("electron.velocity = {v}: {err}")))
            .ok(),
    };
    if !(0.0..=180.0).contains(&e.theta_i_deg) {
        errors.push(format!(
            "electron.theta_i_deg = {} must lie in [0, 180]",
            e.theta_i_deg
        ));
    }
    if !(0.0..=180.0).contains(&e.theta_f_deg) {
        errors.push(format!(
            "electron.theta_f_deg = {} must lie in [0, 180]",
            e.theta_f_deg
        ));
    }

    let f = &c.field;
    let tau = tau_ev_inv_from_ps(f.tau_ps);
    if !(f.tau_ps > 0.0) {
        errors.push(format!("field.tau_ps = {} must be positive", f.tau_ps));
    }
    if !(f.rho > 0.0) {
        errors.push(format!("field.rho = {} must be positive", f.rho));
    }
    if !(f.z > 0.0) {
        errors.push(format!("field.z = {} must be positive", f.z));
    }
    let field = (|| {
        let w1 = LaserWave::new(f.omega1_ev, f.eta01, 1, tau)
            .map_err(|err| format!("field wave 1 (omega1_ev = {}, eta01 = {}): {err}", f.omega1_ev, f.eta01))?;
        let w2 = LaserWave::new(f.omega2_ev, f.eta02, -1, tau)
            .map_err(|err| format!("field wave 2 (omega2_ev = {}, eta02 = {}): {err}", f.omega2_ev, f.eta02))?;
        TwoWaveField::new(w1, w2, f.delta_deg * DEG)
            .map_err(|err| format!("field (omega1_ev = {}, omega2_ev = {}): {err}", f.omega1_ev, f.omega2_ev))
    })()
    .map_err(|msg| errors.push(msg))
    .ok();
    if let Some(field) = &field {
        for (label, wave) in [("1", &field.wave1), ("2", &field.wave2)] {
            let margin = quasimono_margin(wave.omega, tau);
            if margin < OMEGA_TAU_WARN {
                warnings.push(format!(
                    "wave {label}: omega*tau = {margin:.3} is marginally quasimonochromatic (< {OMEGA_TAU_WARN})"
                ));
            }
            if wave.strong_field_warning() {
                warnings.push(format!(
                    "wave {label}: eta0 = {} is at the edge of the moderately-strong-field regime",
                    wave.eta0
                ));
            }
        }
    }

    let s = &c.scan;
    if let Some(points) = s.points {
        if points < 2 {
            errors.push(format!("scan.points = {points} must be at least 2"));
        }
    }
    if let (Some(min), Some(max)) = (s.min, s.max) {
        if !(min < max) {
            errors.push(format!("scan range [{min}, {max}] must satisfy min < max"));
        }
    }
    if s.spacing == Some(Spacing::Log) {
        if let Some(min) = s.min {
            if min <= 0.0 {
                errors.push(format!("scan.min = {min} must be positive for log spacing"));
            }
        }
    }
    if mode == Mode::Sweep {
        match &s.variable {
            None => errors.push("sweep requires scan.variable".to_string()),
            Some(v) if !crate::scans::SWEEP_VARIABLES.contains(&v.as_str()) => {
                errors.push(format!(
                    "scan.variable = '{v}' is not one of {:?}",
                    crate::scans::SWEEP_VARIABLES
                ));
            }
            _ => {}
        }
        if s.min.is_none() || s.max.is_none() {
            errors.push("sweep requires scan.min and scan.max".to_string());
        }
    }

    if !(1..=17).contains(&c.output.precision) {
        errors.push(format!(
            "output.precision = {} must lie in [1, 17]",
            c.output.precision
        ));
    }

    if !errors.is_empty() {
        return Err(ConfigError(errors));
    }
    Ok(Resolved {
        mode,
        state_i: state_i.expect("validated above"),
        field: field.expect("validated above"),
        tau,
        config,
        warnings,
    })
}
