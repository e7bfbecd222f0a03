//! Fixed-step simulation of the unity-feedback step response with dead time.
//!
//! The rational plant is realized in controllable canonical form, the PID
//! as an integral state plus a first-order filtered derivative
//! `Td s / (1 + Td s / N)` acting on the error. Everything is stepped with
//! classical RK4.
//!
//! The delay is an integer-step ring buffer on the plant input. Each slot
//! holds the *mean* of the controller output over one step (integrated
//! alongside the other states), and the plant sees that value held over the
//! corresponding delayed step. Storing the mean rather than a point sample
//! keeps the area of the derivative kick, whose time constant `Td/N` is
//! comparable to practical step sizes.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lti::DeadTimePlant;
use crate::synthesis::PidController;

/// Output magnitude beyond which a run is flagged divergent.
pub const DIVERGENCE_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub horizon: f64,
    pub deriv_filter_n: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self { dt: 0.01, horizon: 60.0, deriv_filter_n: 100.0 }
    }
}

impl SimConfig {
    pub fn new(dt: f64, horizon: f64, deriv_filter_n: f64) -> Result<Self> {
        let c = Self { dt, horizon, deriv_filter_n };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.horizon >= 10.0 * self.dt && self.horizon.is_finite()) {
            return Err(Error::InvalidConfig("horizon must be at least 10 steps".into()));
        }
        if !(self.deriv_filter_n > 0.0 && self.deriv_filter_n.is_finite()) {
            return Err(Error::InvalidConfig("derivative filter N must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub itae: f64,
    pub overshoot: f64,
    pub settling_time_2pct: f64,
    pub steady_state_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    pub t: Vec<f64>,
    pub y: Vec<f64>,
    pub e: Vec<f64>,
    /// Integration step actually used (may be smaller than requested so
    /// the delay is a whole number of steps).
    pub dt: f64,
    pub divergent: bool,
    pub metrics: Metrics,
}

/// Plant state-space `x' = A x + B u`, `y = C x + D u` in controllable
/// canonical form, `x[0]` the lowest-order state.
struct Canonical {
    /// Denominator coefficients `a_0..a_{n-1}` of the monic denominator.
    a: Vec<f64>,
    c: Vec<f64>,
    d: f64,
}

impl Canonical {
    fn new(plant: &DeadTimePlant) -> Result<Self> {
        let tf = plant.tf();
        if !tf.is_proper() {
            return Err(Error::ImproperPlant { num: tf.num().degree(), den: tf.den().degree() });
        }
        let lead = tf.den().leading();
        let n = tf.den().degree();
        // ascending, monic
        let a: Vec<f64> = tf.den().coeffs().iter().rev().take(n).map(|x| x / lead).collect();
        let mut b = vec![0.0; n + 1];
        for (k, x) in tf.num().coeffs().iter().rev().enumerate() {
            b[k] = x / lead;
        }
        let d = b[n];
        let c = (0..n).map(|k| b[k] - d * a[k]).collect();
        Ok(Self { a, c, d })
    }

    fn order(&self) -> usize {
        self.a.len()
    }

    fn output(&self, x: &[f64], u: f64) -> f64 {
        self.c.iter().zip(x).map(|(c, x)| c * x).sum::<f64>() + self.d * u
    }

    fn derivative(&self, x: &[f64], u: f64, dx: &mut [f64]) {
        let n = self.order();
        if n == 0 {
            return;
        }
        dx[..n - 1].copy_from_slice(&x[1..n]);
        dx[n - 1] = u - self.a.iter().zip(x).map(|(a, x)| a * x).sum::<f64>();
    }
}

#[derive(Clone, Copy)]
enum Law {
    /// Open loop, unit step into the plant.
    OpenLoop,
    Pid { kp: f64, ki: f64, td: f64, n: f64 },
}

impl Law {
    /// `u = ke * e + bias(state)`.
    fn gains(&self) -> f64 {
        match *self {
            Law::OpenLoop => 0.0,
            Law::Pid { kp, td, n, .. } => kp * if td > 0.0 { 1.0 + n } else { 1.0 },
        }
    }

    fn bias(&self, integral: f64, filter: f64) -> f64 {
        match *self {
            Law::OpenLoop => 1.0,
            Law::Pid { kp, ki, td, n } => ki * integral - if td > 0.0 { kp * n * filter } else { 0.0 },
        }
    }

    fn filter_rate(&self, e: f64, filter: f64) -> f64 {
        match *self {
            Law::Pid { td, n, .. } if td > 0.0 => (e - filter) * n / td,
            _ => 0.0,
        }
    }
}

/// Closed-loop (or open-loop) signals at one instant.
struct Signals {
    y: f64,
    e: f64,
    u: f64,
}

struct Simulator {
    plant: Canonical,
    law: Law,
    ke: f64,
}

impl Simulator {
    // state layout: [x_0..x_{n-1}, integral, filter, u_accumulator].
    // `held` is the buffered plant input; `None` means no delay, so the
    // plant sees the instantaneous controller output.
    fn signals(&self, z: &[f64], held: Option<f64>) -> Result<Signals> {
        let n = self.plant.order();
        let (integral, filter) = (z[n], z[n + 1]);
        let bias = self.law.bias(integral, filter);
        let cx = self.plant.output(&z[..n], 0.0);
        match (held, self.law) {
            (Some(ud), Law::OpenLoop) => {
                let y = cx + self.plant.d * ud;
                Ok(Signals { y, e: 1.0 - y, u: 1.0 })
            }
            (Some(ud), _) => {
                let y = cx + self.plant.d * ud;
                let e = 1.0 - y;
                Ok(Signals { y, e, u: self.ke * e + bias })
            }
            (None, Law::OpenLoop) => {
                let y = cx + self.plant.d;
                Ok(Signals { y, e: 1.0 - y, u: 1.0 })
            }
            (None, _) => {
                // y = Cx + D u, u = ke (1 - y) + bias
                let denom = 1.0 + self.plant.d * self.ke;
                if denom == 0.0 {
                    return Err(Error::IllPosedLoop);
                }
                let e = (1.0 - cx - self.plant.d * bias) / denom;
                let u = self.ke * e + bias;
                Ok(Signals { y: 1.0 - e, e, u })
            }
        }
    }

    fn derivative(&self, z: &[f64], held: Option<f64>, dz: &mut [f64]) -> Result<()> {
        let n = self.plant.order();
        let s = self.signals(z, held)?;
        let plant_input = held.unwrap_or(s.u);
        self.plant.derivative(&z[..n], plant_input, &mut dz[..n]);
        dz[n] = if matches!(self.law, Law::OpenLoop) { 0.0 } else { s.e };
        dz[n + 1] = self.law.filter_rate(s.e, z[n + 1]);
        dz[n + 2] = s.u;
        Ok(())
    }
}

/// Step count for the delay and the step actually used.
fn delay_grid(delay: f64, dt: f64) -> (usize, f64) {
    if delay == 0.0 {
        return (0, dt);
    }
    let ratio = delay / dt;
    let steps = ratio.round();
    if (ratio - steps).abs() <= 1e-9 * ratio.max(1.0) && steps >= 1.0 {
        (steps as usize, dt)
    } else {
        let steps = ratio.ceil().max(1.0);
        (steps as usize, delay / steps)
    }
}

fn run(plant: &DeadTimePlant, law: Law, config: &SimConfig) -> Result<StepResult> {
    config.validate()?;
    let canonical = Canonical::new(plant)?;
    let n = canonical.order();
    let sim = Simulator { ke: law.gains(), plant: canonical, law };

    let (delay_steps, dt) = delay_grid(plant.delay(), config.dt);
    let steps = (config.horizon / dt).round() as usize;
    let mut buffer: VecDeque<f64> = std::iter::repeat_n(0.0, delay_steps).collect();

    let dim = n + 3;
    let mut z = vec![0.0; dim];
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    let mut t = Vec::with_capacity(steps + 1);
    let mut y = Vec::with_capacity(steps + 1);
    let mut e = Vec::with_capacity(steps + 1);
    let mut divergent = false;

    for k in 0..=steps {
        let held = if delay_steps > 0 { buffer.pop_front() } else { None };
        let s = sim.signals(&z, held)?;
        if !s.y.is_finite() || s.y.abs() > DIVERGENCE_LIMIT {
            divergent = true;
            break;
        }
        t.push(k as f64 * dt);
        y.push(s.y);
        e.push(s.e);
        if k == steps {
            break;
        }

        z[n + 2] = 0.0;
        sim.derivative(&z, held, &mut k1)?;
        for i in 0..dim {
            tmp[i] = z[i] + 0.5 * dt * k1[i];
        }
        sim.derivative(&tmp, held, &mut k2)?;
        for i in 0..dim {
            tmp[i] = z[i] + 0.5 * dt * k2[i];
        }
        sim.derivative(&tmp, held, &mut k3)?;
        for i in 0..dim {
            tmp[i] = z[i] + dt * k3[i];
        }
        sim.derivative(&tmp, held, &mut k4)?;
        for i in 0..dim {
            z[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if delay_steps > 0 {
            buffer.push_back(z[n + 2] / dt);
        }
    }

    let metrics = if divergent {
        Metrics {
            itae: f64::INFINITY,
            overshoot: f64::INFINITY,
            settling_time_2pct: config.horizon,
            steady_state_error: f64::INFINITY,
        }
    } else {
        metrics_of(&t, &y, &e)?
    };
    Ok(StepResult { t, y, e, dt, divergent, metrics })
}

/// Unit-step response of the closed loop `r -> PID -> plant -> y`, unity
/// feedback. Divergence is reported in the result, not as an error.
pub fn step_closed_loop(plant: &DeadTimePlant, controller: &PidController, config: &SimConfig) -> Result<StepResult> {
    let law = Law::Pid {
        kp: controller.kp(),
        ki: controller.ki(),
        td: controller.td(),
        n: config.deriv_filter_n,
    };
    run(plant, law, config)
}

/// Unit-step response of the plant alone.
pub fn step_open_loop(plant: &DeadTimePlant, config: &SimConfig) -> Result<StepResult> {
    run(plant, Law::OpenLoop, config)
}

pub fn compute_metrics(result: &StepResult) -> Result<Metrics> {
    metrics_of(&result.t, &result.y, &result.e)
}

/// ITAE by trapezoids, overshoot and 2 % settling time against the mean of
/// the last 5 % of samples.
pub fn metrics_of(t: &[f64], y: &[f64], e: &[f64]) -> Result<Metrics> {
    if t.is_empty() || t.len() != y.len() || t.len() != e.len() {
        return Err(Error::EmptyTrajectory);
    }
    let itae = t
        .windows(2)
        .zip(e.windows(2))
        .map(|(tw, ew)| 0.5 * (tw[1] - tw[0]) * (tw[0] * ew[0].abs() + tw[1] * ew[1].abs()))
        .sum();

    let tail = (y.len() / 20).max(1);
    let y_final = y[y.len() - tail..].iter().sum::<f64>() / tail as f64;
    if y_final.abs() < 1e-9 {
        return Err(Error::UndefinedOvershoot);
    }
    let y_max = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let overshoot = ((y_max - y_final) / y_final).max(0.0);

    let band = 0.02 * y_final.abs();
    let outside = |v: f64| (v - y_final).abs() > band;
    let settling_time_2pct = match y.iter().rposition(|v| outside(*v)) {
        None => 0.0,
        Some(k) if k + 1 == y.len() => t[k],
        Some(k) => {
            // interpolate the band edge between the last outside sample and the next
            let (d0, d1) = ((y[k] - y_final).abs() - band, (y[k + 1] - y_final).abs() - band);
            let frac = if d0 - d1 != 0.0 { d0 / (d0 - d1) } else { 1.0 };
            t[k] + frac.clamp(0.0, 1.0) * (t[k + 1] - t[k])
        }
    };

    Ok(Metrics { itae, overshoot, settling_time_2pct, steady_state_error: (1.0 - y_final).abs() })
}

/// `t,y,e` CSV with nine significant digits.
pub fn to_csv(result: &StepResult) -> String {
    let mut out = String::from("t,y,e\n");
    for ((t, y), e) in result.t.iter().zip(&result.y).zip(&result.e) {
        out.push_str(&format!("{},{},{}\n", sig9(*t), sig9(*y), sig9(*e)));
    }
    out
}

/// `%.9g`-style formatting.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" { "0".into() } else { s }
    } else {
        let s = format!("{x:.8e}");
        let (mant, ex) = s.split_once('e').unwrap();
        let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{mant}e{ex}")
    }
}
