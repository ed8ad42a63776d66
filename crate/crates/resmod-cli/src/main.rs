//! Command-line front end for the modulation toolkit: flat key=value
//! configurations dispatched to coefficient tables, frequency scans, and
//! trajectory integrations, with plot-ready CSV output and a one-line
//! summary per run on standard output.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric or I/O error,
//! 4 failed comparison.

mod config;
mod csvout;
mod labels;

use std::fmt::Display;
use std::path::Path;

use clap::{Parser, Subcommand};
use ndarray::Array1;

use resmod::coeffs::{self, Sign};
use resmod::dynamics::{evolve_state, expectation_trajectory, PropagatorConfig};
use resmod::liealg::AlgebraKind;
use resmod::models::{
    build_amplifier, build_dicke_modulated, build_nonlinear, build_single_modulated,
    build_two_atom, parosc_table, rabi_table, HarmonicRow, ModelError, ModelSpec,
};
use resmod::resonance::{compare, scan_nu, ResonanceError, ToleranceKind};
use resmod::C64;

use config::{parse_config_file, RunConfig};
use labels::Dims;

#[derive(Parser)]
#[command(
    name = "resmod",
    about = "Effective resonance constants of periodically modulated systems",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weak-modulation coefficient table of one model.
    Coeffs(RunConfig),
    /// Sweep the drive frequency and locate the response peak.
    Scan(RunConfig),
    /// Integrate a trajectory at a fixed drive frequency.
    Evolve(RunConfig),
    /// Scan, then check the peak against the predicted location.
    Compare(RunConfig),
    /// Closed-form harmonic constants next to their recursion values.
    Tables(RunConfig),
}

enum CliError {
    Config(String),
    Numeric(String),
    CompareFailed,
}

fn cfg_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Error display including the source chain, so integrator and model
/// failures keep their context.
fn chain(e: &(dyn std::error::Error + 'static)) -> String {
    let mut text = e.to_string();
    let mut src = e.source();
    while let Some(s) = src {
        text.push_str(": ");
        text.push_str(&s.to_string());
        src = s.source();
    }
    text
}

fn numeric<E: std::error::Error + 'static>(e: E) -> CliError {
    CliError::Numeric(chain(&e))
}

fn map_resonance(e: ResonanceError) -> CliError {
    match &e {
        ResonanceError::Config { .. } => CliError::Config(chain(&e)),
        _ => CliError::Numeric(chain(&e)),
    }
}

fn req<T>(value: Option<T>, key: &'static str) -> Result<T, CliError> {
    value.ok_or_else(|| cfg_err(format!("missing required key: {key}")))
}

fn req_label(value: &Option<String>, key: &'static str) -> Result<String, CliError> {
    value
        .clone()
        .ok_or_else(|| cfg_err(format!("missing required key: {key}")))
}

/// Modulation strength from exactly one of gamma and epsilon;
/// `gamma_per_epsilon` is the model's conversion ratio between the two.
fn strength(cfg: &RunConfig, gamma_per_epsilon: f64) -> Result<(f64, f64), CliError> {
    match (cfg.gamma, cfg.epsilon) {
        (Some(_), Some(_)) => Err(cfg_err("set exactly one of gamma and epsilon, not both")),
        (None, None) => Err(cfg_err(
            "missing modulation strength: set exactly one of gamma and epsilon",
        )),
        (Some(ga), None) => Ok((ga, ga / gamma_per_epsilon)),
        (None, Some(ep)) => Ok((ep * gamma_per_epsilon, ep)),
    }
}

/// One summary line: `<command> <model> key=value ... RESULT key=value ...`.
struct Summary {
    line: String,
}

impl Summary {
    fn new(command: &str, model: &str) -> Self {
        Summary {
            line: format!("{command} {model}"),
        }
    }

    fn key(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.line.push(' ');
        self.line.push_str(key);
        self.line.push('=');
        self.line.push_str(&value.to_string());
        self
    }

    fn result(&mut self) -> &mut Self {
        self.line.push_str(" RESULT");
        self
    }

    fn print(&self) {
        println!("{}", self.line);
    }
}

fn out_path(cfg: &RunConfig, command: &str, model: &str) -> String {
    cfg.output
        .clone()
        .unwrap_or_else(|| format!("{command}_{model}.csv"))
}

fn write_rows(path: &str, header: &str, rows: &[Vec<String>]) -> Result<(), CliError> {
    csvout::write_csv(Path::new(path), header, rows)
        .map_err(|e| CliError::Numeric(format!("writing {path}: {e}")))
}

fn unsupported(command: &str, model: &str, supported: &str) -> CliError {
    cfg_err(format!(
        "model {model} is not supported by {command}; supported models: {supported}"
    ))
}

fn main() {
    let code = run(std::env::args_os());
    std::process::exit(code);
}

fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (command, args) = match cli.command {
        Cmd::Coeffs(a) => ("coeffs", a),
        Cmd::Scan(a) => ("scan", a),
        Cmd::Evolve(a) => ("evolve", a),
        Cmd::Compare(a) => ("compare", a),
        Cmd::Tables(a) => ("tables", a),
    };
    match execute(command, args) {
        Ok(()) => 0,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            3
        }
        Err(CliError::CompareFailed) => {
            eprintln!("error: measured peak is outside the requested tolerance");
            4
        }
    }
}

fn execute(command: &'static str, args: RunConfig) -> Result<(), CliError> {
    let merged = match &args.config {
        Some(path) => {
            let file = parse_config_file(path).map_err(CliError::Config)?;
            RunConfig::merge(file, args)
        }
        None => args,
    };
    if let Some(path) = merged.dump_config.clone() {
        std::fs::write(&path, merged.dump())
            .map_err(|e| CliError::Numeric(format!("writing {}: {e}", path.display())))?;
        return Ok(());
    }
    let model = merged
        .model
        .clone()
        .ok_or_else(|| cfg_err("missing required key: model"))?;
    match command {
        "coeffs" => cmd_coeffs(&model, &merged),
        "tables" => cmd_tables(&model, &merged),
        "scan" => cmd_scan(command, &model, &merged, false),
        "compare" => cmd_scan(command, &model, &merged, true),
        "evolve" => cmd_evolve(&model, &merged),
        _ => unreachable!("command list is fixed"),
    }
}

fn cmd_coeffs(model: &str, cfg: &RunConfig) -> Result<(), CliError> {
    if !matches!(model, "rabi" | "single" | "parosc") {
        return Err(unsupported("coeffs", model, "rabi, parosc, single"));
    }
    let nu = req(cfg.nu, "nu")?;
    let kmax = req(cfg.kmax, "kmax")?;
    let mut summary = Summary::new("coeffs", model);
    let (table, coupling) = match model {
        "rabi" | "single" => {
            let omega0 = req(cfg.omega0, "omega0")?;
            let g = if model == "rabi" {
                req(cfg.g, "g")?
            } else {
                req(cfg.g1, "g1")?
            };
            let g0 = cfg.g0.unwrap_or(0.0);
            summary
                .key("omega0", omega0)
                .key("nu", nu)
                .key(if model == "rabi" { "g" } else { "g1" }, g)
                .key("g0", g0)
                .key("kmax", kmax)
                .key("epsilon", g / omega0);
            let table =
                coeffs::weak_recursion(Sign::Plus, omega0, nu, g0, g, kmax).map_err(numeric)?;
            (table, g)
        }
        "parosc" => {
            let omega0 = req(cfg.omega0, "omega0")?;
            let (gamma, epsilon) = strength(cfg, 2.0)?;
            summary
                .key("omega0", omega0)
                .key("nu", nu)
                .key("gamma", gamma)
                .key("epsilon", epsilon)
                .key("kmax", kmax);
            let table = coeffs::weak_recursion(
                Sign::Minus,
                2.0 * omega0,
                nu,
                omega0 * gamma,
                omega0 * gamma / 2.0,
                kmax,
            )
            .map_err(numeric)?;
            (table, omega0 * gamma / 4.0)
        }
        _ => return Err(unsupported("coeffs", model, "rabi, parosc, single")),
    };

    let mut rows = Vec::with_capacity(kmax + 1);
    rows.push(vec![
        "0".to_string(),
        csvout::num(0.0),
        csvout::num(table.eps(0)),
        csvout::num(coupling),
    ]);
    for k in 1..=kmax {
        rows.push(vec![
            k.to_string(),
            csvout::num(table.h(k)),
            csvout::num(table.eps(k)),
            csvout::num(coupling * table.eps(k)),
        ]);
    }
    let output = out_path(cfg, "coeffs", model);
    write_rows(&output, "k,h_k,eps_k,g_eff_k", &rows)?;
    summary
        .result()
        .key("rows", rows.len())
        .key("output", &output);
    summary.print();
    Ok(())
}

fn cmd_tables(model: &str, cfg: &RunConfig) -> Result<(), CliError> {
    if !matches!(model, "rabi" | "parosc") {
        return Err(unsupported("tables", model, "rabi, parosc"));
    }
    let omega0 = req(cfg.omega0, "omega0")?;
    let mut summary = Summary::new("tables", model);
    let harmonic_rows: Vec<HarmonicRow> = match model {
        "rabi" => {
            let g = req(cfg.g, "g")?;
            summary
                .key("omega0", omega0)
                .key("g", g)
                .key("epsilon", g / omega0);
            rabi_table(omega0, g).map_err(numeric)?
        }
        "parosc" => {
            let (gamma, epsilon) = strength(cfg, 2.0)?;
            summary
                .key("omega0", omega0)
                .key("gamma", gamma)
                .key("epsilon", epsilon);
            parosc_table(omega0, gamma).map_err(numeric)?
        }
        _ => return Err(unsupported("tables", model, "rabi, parosc")),
    };

    let rows: Vec<Vec<String>> = harmonic_rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.harmonic.to_string(),
                csvout::num(r.g_eff_table),
                csvout::num(r.g_eff_recursion),
                csvout::num(r.delta_omega),
                csvout::num(r.nu_star),
            ]
        })
        .collect();
    let output = out_path(cfg, "tables", model);
    write_rows(
        &output,
        "k,harmonic,g_eff_table,g_eff_recursion,delta_omega,nu_star",
        &rows,
    )?;
    summary
        .result()
        .key("rows", rows.len())
        .key("output", &output);
    summary.print();
    Ok(())
}

fn build_grid(cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    let lo = req(cfg.nu_min, "nu_min")?;
    let hi = req(cfg.nu_max, "nu_max")?;
    let step = req(cfg.nu_step, "nu_step")?;
    if !step.is_finite() || !(step > 0.0) {
        return Err(cfg_err(format!("nu_step must be positive, got {step}")));
    }
    if !(hi > lo) {
        return Err(cfg_err(format!("nu_min {lo} must lie below nu_max {hi}")));
    }
    let count = ((hi - lo) / step + 1.0 + 1e-9).floor() as usize;
    if count < 16 {
        return Err(cfg_err(format!(
            "nu grid has {count} points; need at least 16, refine nu_step"
        )));
    }
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

type Builder = Box<dyn Fn(f64) -> Result<ModelSpec, ModelError> + Sync>;

fn cmd_scan(
    command: &'static str,
    model: &str,
    cfg: &RunConfig,
    and_compare: bool,
) -> Result<(), CliError> {
    if !matches!(model, "single" | "two_atom" | "amplifier") {
        return Err(unsupported(command, model, "single, two_atom, amplifier"));
    }
    let t_final = req(cfg.t_final, "t_final")?;
    let steps = cfg.steps_per_period.unwrap_or(128);
    let grid = build_grid(cfg)?;
    let check = if and_compare {
        let tol = req(cfg.tol, "tol")?;
        let kind = match cfg.tol_kind.as_deref().unwrap_or("absolute") {
            "absolute" => ToleranceKind::Absolute,
            "relative" => ToleranceKind::Relative,
            other => {
                return Err(cfg_err(format!(
                    "invalid tol_kind {other}: expected absolute or relative"
                )))
            }
        };
        Some((tol, kind))
    } else {
        None
    };

    let mut summary = Summary::new(command, model);
    let (build, dims, predicted): (Builder, Dims, f64) = match model {
        "single" => {
            let omega0 = req(cfg.omega0, "omega0")?;
            let g1 = req(cfg.g1, "g1")?;
            let g0 = cfg.g0.unwrap_or(0.0);
            let spin = cfg.spin.unwrap_or(0.5);
            let eidx = cfg.epsilon_index.unwrap_or(0);
            summary
                .key("omega0", omega0)
                .key("g0", g0)
                .key("g1", g1)
                .key("spin", spin)
                .key("epsilon_index", eidx);
            let dims = Dims::Flat {
                dim: (2.0 * spin).round() as usize + 1,
            };
            let build: Builder = Box::new(move |nu| {
                build_single_modulated(AlgebraKind::Su2 { spin }, omega0, nu, g0, g1)
            });
            (build, dims, omega0 / (eidx as f64 + 1.0))
        }
        "two_atom" => {
            let omega1 = req(cfg.omega1, "omega1")?;
            let omega2 = req(cfg.omega2, "omega2")?;
            let omega_c = req(cfg.omega_c, "omega_c")?;
            let g0 = req(cfg.g0, "g0")?;
            let g1 = req(cfg.g1, "g1")?;
            let g2 = req(cfg.g2, "g2")?;
            let fock_c = req(cfg.fock_c, "fock_c")?;
            let constants =
                coeffs::two_atom_constants(omega1, omega2, omega_c, omega1 + omega2, g0, g1, g2)
                    .map_err(numeric)?;
            summary
                .key("omega1", omega1)
                .key("omega2", omega2)
                .key("omega_c", omega_c)
                .key("g0", g0)
                .key("g1", g1)
                .key("g2", g2)
                .key("fock_c", fock_c)
                .key("epsilon", g0 / constants.nu_star);
            let build: Builder = Box::new(move |nu| {
                build_two_atom(omega1, omega2, omega_c, nu, g0, g1, g2, fock_c)
            });
            (build, Dims::TwoAtom { fock_c }, constants.nu_star)
        }
        "amplifier" => {
            let omega_a = req(cfg.omega_a, "omega_a")?;
            let omega_b = req(cfg.omega_b, "omega_b")?;
            let g = req(cfg.g, "g")?;
            let fock_a = req(cfg.fock_a, "fock_a")?;
            let fock_b = req(cfg.fock_b, "fock_b")?;
            // The gamma/epsilon conversion is quoted at the nominal
            // two-photon frequency 2 omega_b.
            let nominal = 2.0 * omega_b;
            let (gamma, epsilon) = strength(cfg, nominal / omega_a)?;
            let constants = coeffs::amplifier_constants(omega_a, omega_b, nominal, g, epsilon)
                .map_err(numeric)?;
            summary
                .key("omega_a", omega_a)
                .key("omega_b", omega_b)
                .key("g", g)
                .key("gamma", gamma)
                .key("epsilon", epsilon)
                .key("fock_a", fock_a)
                .key("fock_b", fock_b);
            // The sweep holds the dimensionless index fixed, so the drive
            // amplitude tracks the grid frequency.
            let build: Builder = Box::new(move |nu| {
                build_amplifier(omega_a, omega_b, nu, epsilon * nu / omega_a, g, fock_a, fock_b)
            });
            (build, Dims::Amplifier { fock_a, fock_b }, constants.nu_star)
        }
        _ => {
            return Err(unsupported(
                command,
                model,
                "single, two_atom, amplifier",
            ))
        }
    };

    let initial_raw = req_label(&cfg.initial, "initial")?;
    let final_raw = req_label(&cfg.final_state, "final")?;
    let initial = labels::parse("initial", &initial_raw, &dims).map_err(CliError::Config)?;
    let final_idx = labels::parse("final", &final_raw, &dims).map_err(CliError::Config)?;

    let mut pcfg = PropagatorConfig::new(t_final);
    pcfg.steps_per_period = steps;
    let result = scan_nu(build, &grid, (initial, final_idx), &pcfg, predicted)
        .map_err(map_resonance)?;

    let rows: Vec<Vec<String>> = result
        .nu_grid
        .iter()
        .zip(&result.p_avg)
        .map(|(nu, p)| vec![csvout::num(*nu), csvout::num(*p)])
        .collect();
    let output = out_path(cfg, command, model);
    write_rows(&output, "nu,p_avg", &rows)?;

    summary
        .key("t_final", t_final)
        .key("steps_per_period", steps)
        .key("initial", &initial_raw)
        .key("final", &final_raw);
    summary
        .result()
        .key("peak_nu", result.peak_nu)
        .key("peak_value", result.peak_value)
        .key("predicted_nu", result.predicted_nu)
        .key("discrepancy", result.discrepancy);

    let verdict = match check {
        Some((tol, kind)) => {
            let cmp =
                compare(result.predicted_nu, result.peak_nu, tol, kind).map_err(map_resonance)?;
            summary
                .key("abs_error", cmp.abs_error)
                .key("rel_error", cmp.rel_error)
                .key("tol", tol)
                .key("pass", cmp.pass);
            cmp.pass
        }
        None => true,
    };
    summary.key("rows", rows.len()).key("output", &output);
    summary.print();
    if !verdict {
        return Err(CliError::CompareFailed);
    }
    Ok(())
}

fn cmd_evolve(model: &str, cfg: &RunConfig) -> Result<(), CliError> {
    if !matches!(
        model,
        "single" | "nonlinear" | "amplifier" | "two_atom" | "dicke"
    ) {
        return Err(unsupported(
            "evolve",
            model,
            "single, nonlinear, amplifier, two_atom, dicke",
        ));
    }
    let nu = req(cfg.nu, "nu")?;
    let t_final = req(cfg.t_final, "t_final")?;
    let steps = cfg.steps_per_period.unwrap_or(128);
    let mut summary = Summary::new("evolve", model);
    let (spec, dims): (ModelSpec, Dims) = match model {
        "single" => {
            let omega0 = req(cfg.omega0, "omega0")?;
            let g1 = req(cfg.g1, "g1")?;
            let g0 = cfg.g0.unwrap_or(0.0);
            let spin = cfg.spin.unwrap_or(0.5);
            summary
                .key("omega0", omega0)
                .key("g0", g0)
                .key("g1", g1)
                .key("spin", spin);
            let spec = build_single_modulated(AlgebraKind::Su2 { spin }, omega0, nu, g0, g1)
                .map_err(numeric)?;
            let dim = spec.dim();
            (spec, Dims::Flat { dim })
        }
        "nonlinear" => {
            let omega0 = req(cfg.omega0, "omega0")?;
            let g = req(cfg.g, "g")?;
            let fock_c = req(cfg.fock_c, "fock_c")?;
            let (gamma, epsilon) = strength(cfg, nu / omega0)?;
            summary
                .key("omega0", omega0)
                .key("g", g)
                .key("gamma", gamma)
                .key("epsilon", epsilon)
                .key("fock_c", fock_c);
            let spec = build_nonlinear(
                AlgebraKind::H1 { dim: fock_c },
                omega0,
                gamma,
                nu,
                g,
                |n| (n + 1.0).sqrt(),
            )
            .map_err(numeric)?;
            (spec, Dims::Flat { dim: fock_c })
        }
        "amplifier" => {
            let omega_a = req(cfg.omega_a, "omega_a")?;
            let omega_b = req(cfg.omega_b, "omega_b")?;
            let g = req(cfg.g, "g")?;
            let fock_a = req(cfg.fock_a, "fock_a")?;
            let fock_b = req(cfg.fock_b, "fock_b")?;
            let (gamma, epsilon) = strength(cfg, nu / omega_a)?;
            summary
                .key("omega_a", omega_a)
                .key("omega_b", omega_b)
                .key("g", g)
                .key("gamma", gamma)
                .key("epsilon", epsilon)
                .key("fock_a", fock_a)
                .key("fock_b", fock_b);
            let spec = build_amplifier(omega_a, omega_b, nu, gamma, g, fock_a, fock_b)
                .map_err(numeric)?;
            (spec, Dims::Amplifier { fock_a, fock_b })
        }
        "two_atom" => {
            let omega1 = req(cfg.omega1, "omega1")?;
            let omega2 = req(cfg.omega2, "omega2")?;
            let omega_c = req(cfg.omega_c, "omega_c")?;
            let g0 = req(cfg.g0, "g0")?;
            let g1 = req(cfg.g1, "g1")?;
            let g2 = req(cfg.g2, "g2")?;
            let fock_c = req(cfg.fock_c, "fock_c")?;
            summary
                .key("omega1", omega1)
                .key("omega2", omega2)
                .key("omega_c", omega_c)
                .key("g0", g0)
                .key("g1", g1)
                .key("g2", g2)
                .key("fock_c", fock_c);
            let spec = build_two_atom(omega1, omega2, omega_c, nu, g0, g1, g2, fock_c)
                .map_err(numeric)?;
            (spec, Dims::TwoAtom { fock_c })
        }
        "dicke" => {
            let spin = cfg.spin.unwrap_or(0.5);
            let omega0 = req(cfg.omega0, "omega0")?;
            let omega1 = req(cfg.omega1, "omega1")?;
            let g = req(cfg.g, "g")?;
            let fock_c = req(cfg.fock_c, "fock_c")?;
            let (gamma, epsilon) = strength(cfg, nu / omega0)?;
            summary
                .key("spin", spin)
                .key("omega0", omega0)
                .key("omega1", omega1)
                .key("g", g)
                .key("gamma", gamma)
                .key("epsilon", epsilon)
                .key("fock_c", fock_c);
            let spec = build_dicke_modulated(spin, omega0, omega1, nu, gamma, g, fock_c)
                .map_err(numeric)?;
            let atom_levels = (2.0 * spin).round() as usize + 1;
            (
                spec,
                Dims::Dicke {
                    atom_levels,
                    fock: fock_c,
                },
            )
        }
        _ => {
            return Err(unsupported(
                "evolve",
                model,
                "single, nonlinear, amplifier, two_atom, dicke",
            ))
        }
    };

    let initial_raw = req_label(&cfg.initial, "initial")?;
    let initial = labels::parse("initial", &initial_raw, &dims).map_err(CliError::Config)?;
    let mut psi0 = Array1::<C64>::zeros(spec.dim());
    psi0[initial] = C64::new(1.0, 0.0);
    let mut pcfg = PropagatorConfig::new(t_final);
    pcfg.steps_per_period = steps;
    summary
        .key("nu", nu)
        .key("t_final", t_final)
        .key("steps_per_period", steps)
        .key("initial", &initial_raw);

    let (times, values): (Vec<f64>, Vec<f64>) = match &cfg.final_state {
        Some(raw) => {
            let final_idx = labels::parse("final", raw, &dims).map_err(CliError::Config)?;
            summary.key("final", raw);
            let traj = evolve_state(&spec, &pcfg, &psi0).map_err(numeric)?;
            let probs = traj
                .values
                .iter()
                .map(|state| state[final_idx].norm_sqr())
                .collect();
            (traj.times, probs)
        }
        None if model == "amplifier" => {
            summary.key("observable", "n_b");
            let occupation = spec.space.lifted[1].x_zero.clone();
            let traj = expectation_trajectory(&spec, &pcfg, &psi0, &occupation).map_err(numeric)?;
            (traj.times, traj.values)
        }
        None => return Err(cfg_err("missing required key: final")),
    };

    let rows: Vec<Vec<String>> = times
        .iter()
        .zip(&values)
        .map(|(t, v)| vec![csvout::num(*t), csvout::num(*v)])
        .collect();
    let output = out_path(cfg, "evolve", model);
    write_rows(&output, "t,value", &rows)?;
    summary
        .result()
        .key("samples", rows.len())
        .key("last", values.last().copied().unwrap_or_default())
        .key("output", &output);
    summary.print();
    Ok(())
}
