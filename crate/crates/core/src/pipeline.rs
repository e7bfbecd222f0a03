//! End-to-end tuning pipelines and the report they produce.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ga::{self, derive_bounds, evolve, Bounds, GaConfig, GaResult};
use crate::lti::{freq_response, DeadTimePlant};
use crate::pade::rationalize;
use crate::simulate::{step_closed_loop, Metrics, SimConfig, StepResult};
use crate::slopes::{slopes_bode, slopes_bode_delayed};
use crate::synthesis::{synthesize_pid, verify_design, DesignReport, DesignSpec, PidController};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BodeDelay,
    Pade,
    Ga,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::BodeDelay, Method::Pade, Method::Ga];

    pub fn name(&self) -> &'static str {
        match self {
            Method::BodeDelay => "bode-delay",
            Method::Pade => "pade",
            Method::Ga => "ga",
        }
    }
}

/// Direct method: delay-corrected Bode slopes measured on the delayed plant.
pub fn tune_bode_delay(plant: &DeadTimePlant, spec: &DesignSpec) -> Result<PidController> {
    let fp = freq_response(plant, spec.omega_c)?;
    let slopes = slopes_bode_delayed(plant, spec.omega_c)?;
    synthesize_pid(fp.phase, fp.magnitude, &slopes, spec)
}

/// Padé method: synthesize against the rationalized, delay-free plant.
pub fn tune_pade(plant: &DeadTimePlant, spec: &DesignSpec, order: usize) -> Result<PidController> {
    let approx = DeadTimePlant::rational(rationalize(plant, order)?);
    let fp = freq_response(&approx, spec.omega_c)?;
    let slopes = slopes_bode(approx.tf(), spec.omega_c)?;
    synthesize_pid(fp.phase, fp.magnitude, &slopes, spec)
}

/// GA settings as read from a config file. Anything left out takes the
/// library default; missing bounds are derived around the Padé controller.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaSettings {
    pub population: usize,
    pub crossover_fraction: f64,
    pub mutation_fraction: f64,
    pub generations: usize,
    pub seed: Option<u64>,
    pub bounds: Option<Bounds>,
    pub spread: f64,
    pub slope_error_cap: f64,
}

impl Default for GaSettings {
    fn default() -> Self {
        Self {
            population: ga::DEFAULT_POPULATION,
            crossover_fraction: ga::DEFAULT_CROSSOVER_FRACTION,
            mutation_fraction: ga::DEFAULT_MUTATION_FRACTION,
            generations: ga::DEFAULT_GENERATIONS,
            seed: None,
            bounds: None,
            spread: ga::DEFAULT_SPREAD,
            slope_error_cap: ga::DEFAULT_SLOPE_ERROR_CAP,
        }
    }
}

impl GaSettings {
    pub fn resolve(&self, reference: &PidController) -> GaConfig {
        GaConfig {
            population: self.population,
            crossover_fraction: self.crossover_fraction,
            mutation_fraction: self.mutation_fraction,
            generations: self.generations,
            seed: self.seed,
            bounds: self.bounds.unwrap_or_else(|| derive_bounds(reference, self.spread)),
            slope_error_cap: self.slope_error_cap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuneOptions {
    pub method: Method,
    pub pade_order: usize,
    pub ga: GaSettings,
    pub sim: SimConfig,
}

impl TuneOptions {
    pub fn new(method: Method) -> Self {
        Self { method, pade_order: 1, ga: GaSettings::default(), sim: SimConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaSection {
    pub config: GaConfig,
    pub reference: PidController,
    pub result: GaResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuneReport {
    pub method: Method,
    pub controller: PidController,
    pub design: DesignReport,
    pub metrics: Metrics,
    pub divergent: bool,
    pub plant: DeadTimePlant,
    pub spec: DesignSpec,
    pub sim: SimConfig,
    pub pade_order: Option<usize>,
    pub ga: Option<GaSection>,
    pub reproducible: bool,
    pub notes: Vec<String>,
}

/// Tunes with the chosen method, then verifies and simulates the resulting
/// controller on the true delayed plant.
pub fn tune(plant: &DeadTimePlant, spec: &DesignSpec, options: &TuneOptions) -> Result<(TuneReport, StepResult)> {
    let mut notes = Vec::new();
    let mut ga = None;
    let mut pade_order = None;
    let controller = match options.method {
        Method::BodeDelay => tune_bode_delay(plant, spec)?,
        Method::Pade => {
            pade_order = Some(options.pade_order);
            if options.pade_order == 0 && plant.delay() > 0.0 {
                notes.push("delay ignored (order 0)".to_string());
            }
            tune_pade(plant, spec, options.pade_order)?
        }
        Method::Ga => {
            pade_order = Some(options.pade_order);
            let reference = tune_pade(plant, spec, options.pade_order)?;
            let config = options.ga.resolve(&reference);
            let result = evolve(plant, spec, &options.sim, &config)?;
            let controller = result.best.to_controller()?;
            if !result.reproducible {
                notes.push("non-reproducible: GA seed drawn from entropy".to_string());
            }
            ga = Some(GaSection { config, reference, result });
            controller
        }
    };
    let design = verify_design(plant, &controller, spec)?;
    let step = step_closed_loop(plant, &controller, &options.sim)?;
    if step.divergent {
        notes.push("closed loop diverged in simulation".to_string());
    }
    let reproducible = ga.as_ref().is_none_or(|g| g.result.reproducible);
    let report = TuneReport {
        method: options.method,
        controller,
        design,
        metrics: step.metrics,
        divergent: step.divergent,
        plant: plant.clone(),
        spec: *spec,
        sim: options.sim,
        pade_order,
        ga,
        reproducible,
        notes,
    };
    Ok((report, step))
}
