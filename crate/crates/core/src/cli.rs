//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed validation check, 2 bad input (flags,
//! unreadable or invalid scenario), 3 singular Fisher information.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::crb::{crb_for_scenario, CrbOptions};
use crate::error::{CrbError, Error};
use crate::estimator::McConfig;
use crate::scenario::{load_scenario, ScenarioConfig};
use crate::signal_model::{effective_manifold, snr_of};
use crate::sweeps::{run_sweep, SweepKind, SweepRange, SweepResult, SweepSpec};
use crate::validate::run_checks;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "irs-crb", version, about = "Cramér-Rao bounds for IRS-assisted radar angle estimation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the bound for every target of a scenario.
    Crb {
        scenario: PathBuf,
        /// Use the projected (unknown-amplitude) bound.
        #[arg(long)]
        projected: bool,
    },
    /// Sweep one parameter and write a CSV table.
    Sweep {
        scenario: PathBuf,
        /// snr | snapshots | irs-elements | az-dev | el-dev
        kind: SweepKind,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        /// Step size, or points per decade with --log.
        #[arg(long)]
        step: Option<f64>,
        /// Logarithmic spacing.
        #[arg(long)]
        log: bool,
        /// Monte Carlo trials per point; 0 for bound-only output.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in consistency checks on a scenario.
    Validate { scenario: PathBuf },
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Crb(CrbError::SingularFim { .. }) => EXIT_SINGULAR,
        _ => EXIT_USAGE,
    }
}

fn csv_number(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        v.to_string()
    }
}

/// CSV table, angles in degrees, LF line endings.
pub fn sweep_csv(result: &SweepResult, with_monte_carlo: bool) -> String {
    let mut out = String::from("x,crlb_rmse_az_deg,crlb_rmse_el_deg");
    if with_monte_carlo {
        out.push_str(",emp_rmse_az_deg,emp_rmse_el_deg");
    }
    out.push('\n');
    for row in &result.rows {
        let mut cells = vec![
            csv_number(row.x),
            csv_number(row.crlb_rmse_az.to_degrees()),
            csv_number(row.crlb_rmse_el.to_degrees()),
        ];
        if with_monte_carlo {
            cells.push(csv_number(row.empirical_rmse_az.unwrap_or(f64::NAN).to_degrees()));
            cells.push(csv_number(row.empirical_rmse_el.unwrap_or(f64::NAN).to_degrees()));
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn cmd_crb(cfg: &ScenarioConfig, projected: bool, out: &mut dyn Write) -> Result<(), Error> {
    let s = &cfg.scenario;
    let angles = s.target_angles()?;
    let weights = s.design_weights(cfg.look)?;
    let manifold = effective_manifold(s, &weights, &angles)?;
    let result = crb_for_scenario(s, &weights, &angles, CrbOptions { projected })?;
    let (look_az, look_el) = cfg.look.to_degrees();
    let w = |out: &mut dyn Write, line: String| {
        writeln!(out, "{line}").map_err(|e| Error::Io { path: "<stdout>".into(), source: e })
    };
    w(out, format!("look direction (deg): az {look_az:.4}, el {look_el:.4}"))?;
    w(out, format!("bound: {}", if projected { "projected" } else { "known amplitude" }))?;
    w(out, format!("effective SNR: {:.4} dB", snr_of(s, &manifold)))?;
    w(out, format!("FIM condition number: {:.6e}", result.condition_number))?;
    for (i, (b, a)) in result.per_target.iter().zip(&angles).enumerate() {
        let (az, el) = a.to_degrees();
        w(out, format!("target {i}: az {az:.4} deg, el {el:.4} deg"))?;
        w(out, format!("  var az {:.6e} rad^2, var el {:.6e} rad^2", b.var_az, b.var_el))?;
        w(out, format!("  rmse az {:.6e} rad ({:.6e} deg)", b.rmse_az, b.rmse_az.to_degrees()))?;
        w(out, format!("  rmse el {:.6e} rad ({:.6e} deg)", b.rmse_el, b.rmse_el.to_degrees()))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    cfg: ScenarioConfig,
    kind: SweepKind,
    from: Option<f64>,
    to: Option<f64>,
    step: Option<f64>,
    log: bool,
    trials: Option<usize>,
    seed: Option<u64>,
) -> Result<(SweepResult, bool), Error> {
    let default = kind.default_range();
    let range = if from.is_none() && to.is_none() && step.is_none() && !log {
        default
    } else {
        SweepRange {
            from: from.unwrap_or(default.from),
            to: to.unwrap_or(default.to),
            step: step.unwrap_or(if log { 10.0 } else { default.step }),
            log,
        }
    };
    let trials = trials.unwrap_or(cfg.estimator.mc.trials);
    let monte_carlo = (trials > 0).then_some(McConfig {
        trials,
        master_seed: seed.unwrap_or(cfg.estimator.mc.master_seed),
        ..cfg.estimator.mc
    });
    let spec = SweepSpec {
        kind,
        range,
        base: cfg.scenario,
        look: cfg.look,
        monte_carlo,
        grid_half_width: cfg.estimator.grid_half_width,
        grid_step: cfg.estimator.grid_step,
    };
    Ok((run_sweep(&spec)?, monte_carlo.is_some()))
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match cli.command {
        Command::Crb { scenario, projected } => {
            let cfg = load_scenario(&scenario)?;
            cmd_crb(&cfg, projected, out)?;
            Ok(EXIT_OK)
        }
        Command::Sweep { scenario, kind, from, to, step, log, trials, seed, out: path } => {
            let cfg = load_scenario(&scenario)?;
            let (result, with_mc) = cmd_sweep(cfg, kind, from, to, step, log, trials, seed)?;
            let gaps = result.rows.iter().filter(|r| r.is_gap()).count();
            if gaps > 0 {
                let _ = writeln!(err, "warning: {gaps} point(s) with singular Fisher information written as nan");
            }
            let csv = sweep_csv(&result, with_mc);
            match path {
                Some(p) => {
                    std::fs::write(&p, csv).map_err(|source| Error::Io { path: p.display().to_string(), source })?
                }
                None => {
                    out.write_all(csv.as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source })?
                }
            }
            Ok(EXIT_OK)
        }
        Command::Validate { scenario } => {
            let cfg = load_scenario(&scenario)?;
            let checks = run_checks(&cfg)?;
            for c in &checks {
                let _ = writeln!(out, "{c}");
            }
            Ok(if checks.iter().any(|c| c.failed()) { EXIT_CHECK_FAILED } else { EXIT_OK })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
