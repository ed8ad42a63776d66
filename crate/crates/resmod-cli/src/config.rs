//! Flat key=value run configuration shared by every command: clap flags,
//! config files, and `--dump-config` snapshots all speak the same key set.

use std::path::{Path, PathBuf};

use clap::Args;

/// Canonical key order used by `dump`, so snapshots are byte-stable.
const KEY_ORDER: &[&str] = &[
    "model",
    "omega0",
    "omega1",
    "omega2",
    "omega_a",
    "omega_b",
    "omega_c",
    "nu",
    "nu_min",
    "nu_max",
    "nu_step",
    "g",
    "g0",
    "g1",
    "g2",
    "gamma",
    "epsilon",
    "epsilon_index",
    "spin",
    "fock_a",
    "fock_b",
    "fock_c",
    "t_final",
    "steps_per_period",
    "kmax",
    "initial",
    "final",
    "tol",
    "tol_kind",
    "output",
];

/// Every recognized key, all optional at parse time; each command checks its
/// own required subset before doing any work.
#[derive(Args, Debug, Clone, Default)]
pub struct RunConfig {
    /// Model label: rabi, parosc, nonlinear, amplifier, dicke, two_atom, single.
    #[arg(long = "model")]
    pub model: Option<String>,
    #[arg(long = "omega0")]
    pub omega0: Option<f64>,
    #[arg(long = "omega1")]
    pub omega1: Option<f64>,
    #[arg(long = "omega2")]
    pub omega2: Option<f64>,
    #[arg(long = "omega_a")]
    pub omega_a: Option<f64>,
    #[arg(long = "omega_b")]
    pub omega_b: Option<f64>,
    #[arg(long = "omega_c")]
    pub omega_c: Option<f64>,
    #[arg(long = "nu")]
    pub nu: Option<f64>,
    #[arg(long = "nu_min")]
    pub nu_min: Option<f64>,
    #[arg(long = "nu_max")]
    pub nu_max: Option<f64>,
    #[arg(long = "nu_step")]
    pub nu_step: Option<f64>,
    #[arg(long = "g")]
    pub g: Option<f64>,
    #[arg(long = "g0")]
    pub g0: Option<f64>,
    #[arg(long = "g1")]
    pub g1: Option<f64>,
    #[arg(long = "g2")]
    pub g2: Option<f64>,
    /// Modulation strength as a drive amplitude; exclusive with epsilon.
    #[arg(long = "gamma")]
    pub gamma: Option<f64>,
    /// Modulation strength as the dimensionless index; exclusive with gamma.
    #[arg(long = "epsilon")]
    pub epsilon: Option<f64>,
    #[arg(long = "epsilon_index")]
    pub epsilon_index: Option<usize>,
    #[arg(long = "spin")]
    pub spin: Option<f64>,
    #[arg(long = "fock_a")]
    pub fock_a: Option<usize>,
    #[arg(long = "fock_b")]
    pub fock_b: Option<usize>,
    #[arg(long = "fock_c")]
    pub fock_c: Option<usize>,
    #[arg(long = "t_final")]
    pub t_final: Option<f64>,
    #[arg(long = "steps_per_period")]
    pub steps_per_period: Option<usize>,
    #[arg(long = "kmax")]
    pub kmax: Option<usize>,
    /// Initial basis state, as a label or flat index.
    #[arg(long = "initial")]
    pub initial: Option<String>,
    /// Final basis state, as a label or flat index.
    #[arg(long = "final")]
    pub final_state: Option<String>,
    #[arg(long = "tol")]
    pub tol: Option<f64>,
    /// Tolerance kind for compare: absolute or relative.
    #[arg(long = "tol_kind")]
    pub tol_kind: Option<String>,
    /// Output CSV path; defaults to <command>_<model>.csv.
    #[arg(long = "output")]
    pub output: Option<String>,
    /// Config file of key=value lines; inline flags override it.
    #[arg(long = "config", value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write the merged configuration to this path and exit.
    #[arg(long = "dump-config", value_name = "PATH")]
    pub dump_config: Option<PathBuf>,
}

fn parse_f64(key: &str, raw: &str) -> Result<f64, String> {
    raw.parse()
        .map_err(|_| format!("invalid value for key {key}: {raw}"))
}

fn parse_usize(key: &str, raw: &str) -> Result<usize, String> {
    raw.parse()
        .map_err(|_| format!("invalid value for key {key}: {raw}"))
}

impl RunConfig {
    /// Assigns one key from its textual form; later assignments win.
    fn set(&mut self, key: &str, raw: &str) -> Result<(), String> {
        match key {
            "model" => self.model = Some(raw.to_string()),
            "omega0" => self.omega0 = Some(parse_f64(key, raw)?),
            "omega1" => self.omega1 = Some(parse_f64(key, raw)?),
            "omega2" => self.omega2 = Some(parse_f64(key, raw)?),
            "omega_a" => self.omega_a = Some(parse_f64(key, raw)?),
            "omega_b" => self.omega_b = Some(parse_f64(key, raw)?),
            "omega_c" => self.omega_c = Some(parse_f64(key, raw)?),
            "nu" => self.nu = Some(parse_f64(key, raw)?),
            "nu_min" => self.nu_min = Some(parse_f64(key, raw)?),
            "nu_max" => self.nu_max = Some(parse_f64(key, raw)?),
            "nu_step" => self.nu_step = Some(parse_f64(key, raw)?),
            "g" => self.g = Some(parse_f64(key, raw)?),
            "g0" => self.g0 = Some(parse_f64(key, raw)?),
            "g1" => self.g1 = Some(parse_f64(key, raw)?),
            "g2" => self.g2 = Some(parse_f64(key, raw)?),
            "gamma" => self.gamma = Some(parse_f64(key, raw)?),
            "epsilon" => self.epsilon = Some(parse_f64(key, raw)?),
            "epsilon_index" => self.epsilon_index = Some(parse_usize(key, raw)?),
            "spin" => self.spin = Some(parse_f64(key, raw)?),
            "fock_a" => self.fock_a = Some(parse_usize(key, raw)?),
            "fock_b" => self.fock_b = Some(parse_usize(key, raw)?),
            "fock_c" => self.fock_c = Some(parse_usize(key, raw)?),
            "t_final" => self.t_final = Some(parse_f64(key, raw)?),
            "steps_per_period" => self.steps_per_period = Some(parse_usize(key, raw)?),
            "kmax" => self.kmax = Some(parse_usize(key, raw)?),
            "initial" => self.initial = Some(raw.to_string()),
            "final" => self.final_state = Some(raw.to_string()),
            "tol" => self.tol = Some(parse_f64(key, raw)?),
            "tol_kind" => self.tol_kind = Some(raw.to_string()),
            "output" => self.output = Some(raw.to_string()),
            other => return Err(format!("unknown key: {other}")),
        }
        Ok(())
    }

    /// Textual form of one key, if set. Uses Display, which round-trips f64.
    fn repr(&self, key: &str) -> Option<String> {
        match key {
            "model" => self.model.clone(),
            "omega0" => self.omega0.map(|v| v.to_string()),
            "omega1" => self.omega1.map(|v| v.to_string()),
            "omega2" => self.omega2.map(|v| v.to_string()),
            "omega_a" => self.omega_a.map(|v| v.to_string()),
            "omega_b" => self.omega_b.map(|v| v.to_string()),
            "omega_c" => self.omega_c.map(|v| v.to_string()),
            "nu" => self.nu.map(|v| v.to_string()),
            "nu_min" => self.nu_min.map(|v| v.to_string()),
            "nu_max" => self.nu_max.map(|v| v.to_string()),
            "nu_step" => self.nu_step.map(|v| v.to_string()),
            "g" => self.g.map(|v| v.to_string()),
            "g0" => self.g0.map(|v| v.to_string()),
            "g1" => self.g1.map(|v| v.to_string()),
            "g2" => self.g2.map(|v| v.to_string()),
            "gamma" => self.gamma.map(|v| v.to_string()),
            "epsilon" => self.epsilon.map(|v| v.to_string()),
            "epsilon_index" => self.epsilon_index.map(|v| v.to_string()),
            "spin" => self.spin.map(|v| v.to_string()),
            "fock_a" => self.fock_a.map(|v| v.to_string()),
            "fock_b" => self.fock_b.map(|v| v.to_string()),
            "fock_c" => self.fock_c.map(|v| v.to_string()),
            "t_final" => self.t_final.map(|v| v.to_string()),
            "steps_per_period" => self.steps_per_period.map(|v| v.to_string()),
            "kmax" => self.kmax.map(|v| v.to_string()),
            "initial" => self.initial.clone(),
            "final" => self.final_state.clone(),
            "tol" => self.tol.map(|v| v.to_string()),
            "tol_kind" => self.tol_kind.clone(),
            "output" => self.output.clone(),
            _ => unreachable!("key list covers repr"),
        }
    }

    /// File values overlaid with inline flags; flags win per key.
    pub fn merge(file: RunConfig, flags: RunConfig) -> RunConfig {
        RunConfig {
            model: flags.model.or(file.model),
            omega0: flags.omega0.or(file.omega0),
            omega1: flags.omega1.or(file.omega1),
            omega2: flags.omega2.or(file.omega2),
            omega_a: flags.omega_a.or(file.omega_a),
            omega_b: flags.omega_b.or(file.omega_b),
            omega_c: flags.omega_c.or(file.omega_c),
            nu: flags.nu.or(file.nu),
            nu_min: flags.nu_min.or(file.nu_min),
            nu_max: flags.nu_max.or(file.nu_max),
            nu_step: flags.nu_step.or(file.nu_step),
            g: flags.g.or(file.g),
            g0: flags.g0.or(file.g0),
            g1: flags.g1.or(file.g1),
            g2: flags.g2.or(file.g2),
            gamma: flags.gamma.or(file.gamma),
            epsilon: flags.epsilon.or(file.epsilon),
            epsilon_index: flags.epsilon_index.or(file.epsilon_index),
            spin: flags.spin.or(file.spin),
            fock_a: flags.fock_a.or(file.fock_a),
            fock_b: flags.fock_b.or(file.fock_b),
            fock_c: flags.fock_c.or(file.fock_c),
            t_final: flags.t_final.or(file.t_final),
            steps_per_period: flags.steps_per_period.or(file.steps_per_period),
            kmax: flags.kmax.or(file.kmax),
            initial: flags.initial.or(file.initial),
            final_state: flags.final_state.or(file.final_state),
            tol: flags.tol.or(file.tol),
            tol_kind: flags.tol_kind.or(file.tol_kind),
            output: flags.output.or(file.output),
            config: flags.config,
            dump_config: flags.dump_config,
        }
    }

    /// Key=value snapshot that `parse_config_file` reads back identically.
    pub fn dump(&self) -> String {
        let mut text = String::new();
        for key in KEY_ORDER {
            if let Some(v) = self.repr(key) {
                text.push_str(key);
                text.push('=');
                text.push_str(&v);
                text.push('\n');
            }
        }
        text
    }
}

/// Reads a key=value file; blank lines and '#' comment lines are skipped.
pub fn parse_config_file(path: &Path) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("config file {}: {e}", path.display()))?;
    let mut cfg = RunConfig::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value, got {line}", i + 1))?;
        cfg.set(key.trim(), value.trim())
            .map_err(|e| format!("config line {}: {e}", i + 1))?;
    }
    Ok(cfg)
}
