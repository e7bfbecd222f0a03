//! Logarithmic amplitude and phase slopes of a plant at one frequency.
//!
//! `s_a = omega d ln|G| / d omega` and `s_p = omega d angle(G) / d omega`.
//! [`slopes_exact`] differentiates the response numerically and serves as
//! the reference for the two single-measurement Bode approximations.
//!
//! The Bode estimates assume a stable minimum-phase rational part. Nothing
//! here checks that; on other plants the numbers are still produced but
//! carry no accuracy guarantee.

use std::f64::consts::FRAC_2_PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lti::{freq_response, static_gain, DeadTimePlant, RationalTf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeMethod {
    Exact,
    Bode,
    BodeDelayed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeEstimate {
    pub omega0: f64,
    /// Log-amplitude slope, dimensionless.
    pub s_a: f64,
    /// Phase slope, radians.
    pub s_p: f64,
    pub method: SlopeMethod,
}

/// Relative step in `ln omega` used by [`slopes_exact`].
pub const EXACT_STEP: f64 = 1e-5;

/// Central differences in `ln omega` with step [`EXACT_STEP`].
pub fn slopes_exact(plant: &DeadTimePlant, omega0: f64) -> Result<SlopeEstimate> {
    slopes_exact_with_step(plant, omega0, EXACT_STEP)
}

pub fn slopes_exact_with_step(plant: &DeadTimePlant, omega0: f64, h: f64) -> Result<SlopeEstimate> {
    if !(omega0 > 0.0 && omega0.is_finite()) {
        return Err(Error::InvalidFrequency(omega0));
    }
    let hi = plant.response(omega0 * h.exp())?;
    let lo = plant.response(omega0 * (-h).exp())?;
    let ratio = hi / lo;
    // ln(hi/lo) = ln|hi/lo| + j * (phase difference), valid while the
    // difference stays inside (-pi, pi)
    let s_a = ratio.norm().ln() / (2.0 * h);
    let s_p = ratio.arg() / (2.0 * h);
    Ok(SlopeEstimate { omega0, s_a, s_p, method: SlopeMethod::Exact })
}

fn bode_gain(tf: &RationalTf) -> Result<f64> {
    let kg = static_gain(&DeadTimePlant::rational(tf.clone())).map_err(|_| Error::BodeStaticGain)?;
    if kg == 0.0 || !kg.is_finite() {
        return Err(Error::BodeStaticGain);
    }
    Ok(kg)
}

/// Bode-integral estimate for a delay-free rational plant:
/// `s_a ~ (2/pi) angle G`, `s_p ~ angle G + (2/pi)(ln|K_g| - ln|G|)`.
pub fn slopes_bode(plant: &RationalTf, omega0: f64) -> Result<SlopeEstimate> {
    let kg = bode_gain(plant)?;
    let fp = freq_response(&DeadTimePlant::rational(plant.clone()), omega0)?;
    let s_a = FRAC_2_PI * fp.phase;
    let s_p = fp.phase + FRAC_2_PI * (kg.abs().ln() - fp.magnitude.ln());
    Ok(SlopeEstimate { omega0, s_a, s_p, method: SlopeMethod::Bode })
}

/// Bode-integral estimate with the delay's phase removed before the
/// amplitude relation is applied. The phase-slope term uses the delayed
/// phase as is.
pub fn slopes_bode_delayed(plant: &DeadTimePlant, omega0: f64) -> Result<SlopeEstimate> {
    let kg = bode_gain(plant.tf())?;
    let fp = freq_response(plant, omega0)?;
    let tau_w = plant.delay() * omega0;
    let s_a = FRAC_2_PI * (fp.phase + tau_w);
    let s_p = fp.phase + FRAC_2_PI * (kg.abs().ln() - fp.magnitude.ln());
    Ok(SlopeEstimate { omega0, s_a, s_p, method: SlopeMethod::BodeDelayed })
}
