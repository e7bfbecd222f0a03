//! Real-coded genetic algorithm over parallel PID gains `(Kp, Ki, Kd)`.
//!
//! Fitness is the ITAE of the closed-loop step on the true delayed plant.
//! Candidates whose Nyquist slope misses the target by more than the
//! configured fraction, or whose loop has no crossover or diverges, get
//! `+inf` fitness.
//!
//! Operators: binary tournament, BLX-0.5 blend crossover, per-gene Gaussian
//! mutation with sigma at 10 % of the gene's range, one elite. All random
//! draws happen serially from a seeded ChaCha stream; fitness evaluation
//! runs in parallel but results are consumed in candidate order, so a given
//! seed always produces the same run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lti::DeadTimePlant;
use crate::simulate::{step_closed_loop, SimConfig};
use crate::synthesis::{verify_design, DesignSpec, PidController};

const BLX_ALPHA: f64 = 0.5;
const MUTATION_SIGMA_FRACTION: f64 = 0.1;
const INIT_RESAMPLE_ATTEMPTS: usize = 10;

/// Closed interval `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub low: f64,
    pub high: f64,
}

impl Range {
    pub fn width(&self) -> f64 {
        self.high - self.low
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.low..=self.high).contains(&x)
    }

    fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.low, self.high)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub kp: Range,
    pub ki: Range,
    pub kd: Range,
}

impl Bounds {
    fn ranges(&self) -> [Range; 3] {
        [self.kp, self.ki, self.kd]
    }

    pub fn contains(&self, c: &Candidate) -> bool {
        self.kp.contains(c.kp) && self.ki.contains(c.ki) && self.kd.contains(c.kd)
    }
}

/// Box `g (1 -/+ spread)` around each parallel gain of `reference`.
pub fn derive_bounds(reference: &PidController, spread: f64) -> Bounds {
    let range = |g: f64| Range { low: g * (1.0 - spread), high: g * (1.0 + spread) };
    Bounds { kp: range(reference.kp()), ki: range(reference.ki()), kd: range(reference.kd()) }
}

pub const DEFAULT_SPREAD: f64 = 0.4;
pub const DEFAULT_POPULATION: usize = 50;
pub const DEFAULT_CROSSOVER_FRACTION: f64 = 0.9;
pub const DEFAULT_MUTATION_FRACTION: f64 = 0.3;
pub const DEFAULT_GENERATIONS: usize = 100;
pub const DEFAULT_SLOPE_ERROR_CAP: f64 = 0.20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population: usize,
    pub crossover_fraction: f64,
    pub mutation_fraction: f64,
    pub generations: usize,
    /// `None` draws a seed from OS entropy; the result is then marked
    /// non-reproducible.
    pub seed: Option<u64>,
    pub bounds: Bounds,
    pub slope_error_cap: f64,
}

impl GaConfig {
    /// Defaults: 50 members, crossover 0.9, mutation 0.3, 100 generations,
    /// 20 % slope-error cap.
    pub fn with_bounds(bounds: Bounds, seed: Option<u64>) -> Self {
        Self {
            population: DEFAULT_POPULATION,
            crossover_fraction: DEFAULT_CROSSOVER_FRACTION,
            mutation_fraction: DEFAULT_MUTATION_FRACTION,
            generations: DEFAULT_GENERATIONS,
            seed,
            bounds,
            slope_error_cap: DEFAULT_SLOPE_ERROR_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.population < 2 {
            return bad("population must be at least 2");
        }
        if !(0.0..=1.0).contains(&self.crossover_fraction) || !(0.0..=1.0).contains(&self.mutation_fraction) {
            return bad("crossover and mutation fractions must lie in [0, 1]");
        }
        if !(self.slope_error_cap > 0.0) {
            return bad("slope error cap must be positive");
        }
        for (name, r) in ["kp", "ki", "kd"].iter().zip(self.bounds.ranges()) {
            if !(r.low < r.high) || !r.high.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} bounds need low < high, got [{}, {}]", r.low, r.high)));
            }
            if !(r.low > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} lower bound must be positive")));
            }
        }
        Ok(())
    }
}

/// Parallel-form gains, the GA's decision vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub kp: f64,
    pub ki: f64,
    pub kd: f64,
}

impl Candidate {
    fn genes(&self) -> [f64; 3] {
        [self.kp, self.ki, self.kd]
    }

    fn from_genes(g: [f64; 3]) -> Self {
        Self { kp: g[0], ki: g[1], kd: g[2] }
    }

    pub fn to_controller(&self) -> Result<PidController> {
        PidController::from_parallel(self.kp, self.ki, self.kd)
    }
}

/// Fitness of one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    /// ITAE, or `+inf` when the candidate is rejected.
    pub fitness: f64,
    /// `NaN` when no crossover could be measured.
    pub slope_error: f64,
}

impl Evaluation {
    fn rejected(slope_error: f64) -> Self {
        Self { fitness: f64::INFINITY, slope_error }
    }

    pub fn feasible(&self) -> bool {
        self.fitness.is_finite()
    }
}

pub fn evaluate(plant: &DeadTimePlant, spec: &DesignSpec, sim: &SimConfig, cap: f64, c: &Candidate) -> Evaluation {
    let Ok(controller) = c.to_controller() else {
        return Evaluation::rejected(f64::NAN);
    };
    let Ok(report) = verify_design(plant, &controller, spec) else {
        return Evaluation::rejected(f64::NAN);
    };
    let slope_error = report.slope_error_fraction;
    if !(slope_error <= cap) {
        return Evaluation::rejected(slope_error);
    }
    match step_closed_loop(plant, &controller, sim) {
        Ok(r) if !r.divergent && r.metrics.itae.is_finite() => Evaluation { fitness: r.metrics.itae, slope_error },
        _ => Evaluation::rejected(slope_error),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaResult {
    pub best: Candidate,
    pub best_itae: f64,
    pub best_slope_error: f64,
    /// Best fitness after initialization and after each generation.
    pub history: Vec<f64>,
    pub evaluations: usize,
    pub reproducible: bool,
}

struct Member {
    candidate: Candidate,
    eval: Evaluation,
}

fn best_index(pop: &[Member]) -> usize {
    // first minimum wins ties
    let mut best = 0;
    for (i, m) in pop.iter().enumerate().skip(1) {
        if m.eval.fitness.total_cmp(&pop[best].eval.fitness).is_lt() {
            best = i;
        }
    }
    best
}

fn tournament<'a>(pop: &'a [Member], rng: &mut ChaCha8Rng) -> &'a Member {
    let a = &pop[rng.random_range(0..pop.len())];
    let b = &pop[rng.random_range(0..pop.len())];
    if b.eval.fitness.total_cmp(&a.eval.fitness).is_lt() { b } else { a }
}

fn sample_uniform(bounds: &Bounds, rng: &mut ChaCha8Rng) -> Candidate {
    let r = bounds.ranges();
    Candidate::from_genes(std::array::from_fn(|i| rng.random_range(r[i].low..=r[i].high)))
}

fn offspring(pop: &[Member], config: &GaConfig, rng: &mut ChaCha8Rng) -> Candidate {
    let ranges = config.bounds.ranges();
    let p1 = tournament(pop, rng).candidate.genes();
    let p2 = tournament(pop, rng).candidate.genes();
    let mut genes = if rng.random_bool(config.crossover_fraction) {
        std::array::from_fn(|i| {
            let (lo, hi) = (p1[i].min(p2[i]), p1[i].max(p2[i]));
            let d = hi - lo;
            let (a, b) = (lo - BLX_ALPHA * d, hi + BLX_ALPHA * d);
            if b > a { rng.random_range(a..=b) } else { a }
        })
    } else {
        p1
    };
    for (g, r) in genes.iter_mut().zip(ranges) {
        if rng.random_bool(config.mutation_fraction) {
            let normal = Normal::new(0.0, MUTATION_SIGMA_FRACTION * r.width()).expect("width is positive");
            *g += normal.sample(rng);
        }
        *g = r.clamp(*g);
    }
    Candidate::from_genes(genes)
}

/// Minimizes ITAE over the configured gain box under the slope-error cap.
pub fn evolve(plant: &DeadTimePlant, spec: &DesignSpec, sim: &SimConfig, config: &GaConfig) -> Result<GaResult> {
    config.validate()?;
    sim.validate()?;
    let reproducible = config.seed.is_some();
    let seed = config.seed.unwrap_or_else(|| rand::rng().random());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = config.slope_error_cap;
    let eval_all = |cands: &[Candidate]| -> Vec<Evaluation> {
        cands.par_iter().map(|c| evaluate(plant, spec, sim, cap, c)).collect()
    };

    let mut evaluations = 0;
    let mut pop: Vec<Member> = Vec::new();
    for _ in 0..=INIT_RESAMPLE_ATTEMPTS {
        let cands: Vec<Candidate> = (0..config.population).map(|_| sample_uniform(&config.bounds, &mut rng)).collect();
        let evals = eval_all(&cands);
        evaluations += cands.len();
        pop = cands.into_iter().zip(evals).map(|(candidate, eval)| Member { candidate, eval }).collect();
        if pop.iter().any(|m| m.eval.feasible()) {
            break;
        }
    }
    if !pop.iter().any(|m| m.eval.feasible()) {
        return Err(Error::BoundsInconsistent);
    }

    let mut history = vec![pop[best_index(&pop)].eval.fitness];
    for _ in 0..config.generations {
        let elite = best_index(&pop);
        let children: Vec<Candidate> = (1..config.population).map(|_| offspring(&pop, config, &mut rng)).collect();
        let evals = eval_all(&children);
        evaluations += children.len();
        let mut next = Vec::with_capacity(config.population);
        next.push(Member { candidate: pop[elite].candidate, eval: pop[elite].eval });
        next.extend(children.into_iter().zip(evals).map(|(candidate, eval)| Member { candidate, eval }));
        pop = next;
        history.push(pop[best_index(&pop)].eval.fitness);
    }

    let best = &pop[best_index(&pop)];
    Ok(GaResult {
        best: best.candidate,
        best_itae: best.eval.fitness,
        best_slope_error: best.eval.slope_error,
        history,
        evaluations,
        reproducible,
    })
}
