//! Command-line front end.
//!
//! Exit codes: `0` success, `1` any tuning/simulation/file error (one-line
//! diagnostic on stderr), `2` argument errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::lti::{freq_response, static_gain, DeadTimePlant};
use crate::pipeline::{tune, GaSettings, Method, TuneOptions, TuneReport};
use crate::simulate::{sig9, step_closed_loop, to_csv, SimConfig, StepResult};
use crate::slopes::{slopes_bode, slopes_bode_delayed, slopes_exact, SlopeEstimate};
use crate::svg::step_chart;
use crate::synthesis::{DesignSpec, PidController};

#[derive(Debug, Parser)]
#[command(name = "bode-pid", version, about = "PID auto-tuning for dead-time plants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frequency response, static gain and slope estimates at one frequency.
    Analyze {
        #[arg(long)]
        plant: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        wc: f64,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tune a controller with one method, verify it, and simulate its step response.
    Tune {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        plant: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        tuning: TuningArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also write the bare controller JSON.
        #[arg(long)]
        controller_out: Option<PathBuf>,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Closed-loop step response of a given controller.
    Simulate {
        #[arg(long)]
        plant: PathBuf,
        /// Controller JSON, or a report written by `tune`.
        #[arg(long)]
        controller: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write an SVG chart next to the CSV.
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Run all three methods side by side.
    Compare {
        #[arg(long)]
        plant: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        tuning: TuningArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv_dir: Option<PathBuf>,
        /// Also write an SVG chart of all three responses.
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        sim: SimArgs,
    },
}

#[derive(Debug, Args)]
struct TuningArgs {
    #[arg(long, default_value_t = 1)]
    pade_order: usize,
    #[arg(long)]
    ga_config: Option<PathBuf>,
    /// Overrides the seed in the GA config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct SimArgs {
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    dt: f64,
    #[arg(long, default_value_t = 60.0, allow_negative_numbers = true)]
    horizon: f64,
    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    deriv_filter_n: f64,
}

impl SimArgs {
    fn config(&self) -> Result<SimConfig> {
        Ok(SimConfig::new(self.dt, self.horizon, self.deriv_filter_n)?)
    }
}

impl TuningArgs {
    fn options(&self, method: Method, sim: SimConfig) -> Result<TuneOptions> {
        let mut ga: GaSettings = match &self.ga_config {
            Some(p) => read_json(p)?,
            None => GaSettings::default(),
        };
        if self.seed.is_some() {
            ga.seed = self.seed;
        }
        Ok(TuneOptions { method, pade_order: self.pade_order, ga, sim })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            1
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(path, &text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Accepts either `{"kp", "ti", "td"}` or a tune report carrying one.
fn read_controller(path: &Path) -> Result<PidController> {
    let value: Value = read_json(path)?;
    let inner = value.get("controller").cloned().unwrap_or(value);
    serde_json::from_value(inner).with_context(|| format!("parsing controller in {}", path.display()))
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Analyze { plant, wc, out } => {
            let plant: DeadTimePlant = read_json(&plant)?;
            let report = analyze(&plant, wc)?;
            match out {
                Some(p) => write_json(&p, &report),
                None => {
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(())
                }
            }
        }
        Command::Tune { method, plant, spec, tuning, out, csv, controller_out, sim } => {
            let plant: DeadTimePlant = read_json(&plant)?;
            let spec: DesignSpec = read_json(&spec)?;
            let options = tuning.options(method, sim.config()?)?;
            let (report, step) = tune(&plant, &spec, &options)?;
            write_json(&out, &report)?;
            if let Some(p) = csv {
                write_file(&p, &to_csv(&step))?;
            }
            if let Some(p) = controller_out {
                write_json(&p, &report.controller)?;
            }
            Ok(())
        }
        Command::Simulate { plant, controller, out, svg, sim } => {
            let plant: DeadTimePlant = read_json(&plant)?;
            let controller = read_controller(&controller)?;
            let step = step_closed_loop(&plant, &controller, &sim.config()?)?;
            write_file(&out, &to_csv(&step))?;
            if svg {
                write_file(&out.with_extension("svg"), &step_chart(&[("y(t)", &step)]))?;
            }
            Ok(())
        }
        Command::Compare { plant, spec, tuning, out, csv_dir, svg, sim } => {
            let plant: DeadTimePlant = read_json(&plant)?;
            let spec: DesignSpec = read_json(&spec)?;
            let sim = sim.config()?;
            let runs = Method::ALL
                .iter()
                .map(|m| Ok(tune(&plant, &spec, &tuning.options(*m, sim)?)?))
                .collect::<Result<Vec<(TuneReport, StepResult)>>>()?;
            write_json(&out, &comparison(&plant, &spec, &sim, &runs))?;
            if let Some(dir) = &csv_dir {
                for (report, step) in &runs {
                    write_file(&dir.join(format!("{}.csv", report.method.name())), &to_csv(step))?;
                }
            }
            if svg {
                let series: Vec<(&str, &StepResult)> = runs.iter().map(|(r, s)| (r.method.name(), s)).collect();
                let path = match &csv_dir {
                    Some(dir) => dir.join("compare.svg"),
                    None => out.with_extension("svg"),
                };
                write_file(&path, &step_chart(&series))?;
            }
            for (report, _) in &runs {
                let c = &report.controller;
                println!(
                    "{:<10} kp={} ti={} td={} itae={} overshoot={} slope_error={}",
                    report.method.name(),
                    sig9(c.kp()),
                    sig9(c.ti()),
                    sig9(c.td()),
                    sig9(report.metrics.itae),
                    sig9(report.metrics.overshoot),
                    sig9(report.design.slope_error_fraction),
                );
            }
            Ok(())
        }
    }
}

fn slope_json(r: crate::Result<SlopeEstimate>, warnings: &mut Vec<String>) -> Value {
    match r {
        Ok(s) => serde_json::to_value(s).expect("plain struct"),
        Err(e) => {
            warnings.push(e.to_string());
            Value::Null
        }
    }
}

/// The `analyze` document.
pub fn analyze(plant: &DeadTimePlant, omega: f64) -> crate::Result<Value> {
    let fp = freq_response(plant, omega)?;
    let mut warnings = Vec::new();
    let gain = match static_gain(plant) {
        Ok(k) => json!(k),
        Err(e) => {
            warnings.push(e.to_string());
            Value::Null
        }
    };
    let exact = slope_json(slopes_exact(plant, omega), &mut warnings);
    let bode = slope_json(slopes_bode(plant.tf(), omega), &mut warnings);
    let bode_delayed = slope_json(slopes_bode_delayed(plant, omega), &mut warnings);
    warnings.dedup();
    Ok(json!({
        "plant": plant,
        "omega": omega,
        "frequency_point": {
            "omega": fp.omega,
            "magnitude": fp.magnitude,
            "phase_deg": fp.phase.to_degrees(),
        },
        "static_gain": gain,
        "slopes": { "exact": exact, "bode": bode, "bode_delayed": bode_delayed },
        "warnings": warnings,
    }))
}

fn comparison(plant: &DeadTimePlant, spec: &DesignSpec, sim: &SimConfig, runs: &[(TuneReport, StepResult)]) -> Value {
    let table: Vec<Value> = runs
        .iter()
        .map(|(r, _)| {
            json!({
                "method": r.method,
                "kp": r.controller.kp(),
                "ti": r.controller.ti(),
                "td": r.controller.td(),
                "itae": r.metrics.itae,
                "overshoot": r.metrics.overshoot,
                "settling_time_2pct": r.metrics.settling_time_2pct,
                "slope_error_fraction": r.design.slope_error_fraction,
                "achieved_pm_deg": r.design.achieved_pm.to_degrees(),
            })
        })
        .collect();
    let reports: Vec<&TuneReport> = runs.iter().map(|(r, _)| r).collect();
    json!({ "plant": plant, "spec": spec, "sim": sim, "table": table, "methods": reports })
}
