//! Diagonal Padé approximants of the pure delay `e^(-sL)`.
//!
//! `N_r(sL) = sum_k (2r-k)! / (k! (r-k)!) (-sL)^k`, and `D_r` is the same
//! sum with `+sL`. Coefficients are returned verbatim (not monic) so the
//! integer factorial structure survives into tests.

use crate::error::{Error, Result};
use crate::lti::{series_rational, DeadTimePlant, Polynomial, RationalTf};

pub const MAX_PADE_ORDER: usize = 10;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Integer weights `(2r-k)! / (k! (r-k)!)` for `k = 0..=r`.
pub fn pade_weights(order: usize) -> Result<Vec<u128>> {
    if order > MAX_PADE_ORDER {
        return Err(Error::PadeOrderTooLarge(order));
    }
    Ok((0..=order)
        .map(|k| factorial(2 * order - k) / (factorial(k) * factorial(order - k)))
        .collect())
}

/// Order-`r` Padé approximant of `e^(-sL)`.
pub fn pade_tf(delay: f64, order: usize) -> Result<RationalTf> {
    if !(delay >= 0.0) || !delay.is_finite() {
        return Err(Error::NegativeDelay(delay));
    }
    let weights = pade_weights(order)?;
    if delay == 0.0 {
        return Ok(RationalTf::unity());
    }
    // ascending powers first, then reverse into descending order
    let mut num = Vec::with_capacity(order + 1);
    let mut den = Vec::with_capacity(order + 1);
    let mut lk = 1.0;
    for (k, w) in weights.iter().enumerate() {
        let c = *w as f64 * lk;
        den.push(c);
        num.push(if k % 2 == 1 { -c } else { c });
        lk *= delay;
    }
    num.reverse();
    den.reverse();
    RationalTf::new(Polynomial::new(num), Polynomial::new(den))
}

/// Delay-free approximation `G(s) * N_r(sL)/D_r(sL)` of a dead-time plant.
pub fn rationalize(plant: &DeadTimePlant, order: usize) -> Result<RationalTf> {
    let pade = pade_tf(plant.delay(), order)?;
    Ok(series_rational(plant.tf(), &pade))
}
