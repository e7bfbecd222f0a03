//! Polynomial and rational transfer-function algebra for SISO plants with
//! pure dead time.
//!
//! Coefficients are stored in descending powers of `s`, the way transfer
//! functions are usually written down: `[1, 5, 10, 10, 5, 1]` is
//! `s^5 + 5s^4 + 10s^3 + 10s^2 + 5s + 1`.
//!
//! Phases are in radians and *unwrapped*: the phase of a rational part is
//! continuous in `omega` and anchored at its principal value as
//! `omega -> 0+`. This matters for high-order plants whose phase at the
//! design frequency lies well below `-pi`.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::synthesis::PidController;

/// Real polynomial in `s`, descending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial, dropping leading zeros. An empty or all-zero
    /// sequence yields the zero polynomial `[0]`.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Self {
        let coeffs: Vec<f64> = coeffs.into();
        let first = coeffs.iter().position(|c| *c != 0.0);
        match first {
            Some(i) => Self { coeffs: coeffs[i..].to_vec() },
            None => Self { coeffs: vec![0.0] },
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[0]
    }

    /// Value at `s = 0`.
    pub fn constant_term(&self) -> f64 {
        *self.coeffs.last().expect("polynomial is never empty")
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
    }

    pub fn eval_real(&self, s: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * s + c)
    }

    /// `sum |c_k| * omega^k`: the scale against which `|p(j omega)|` is
    /// judged to be zero.
    fn abs_scale(&self, omega: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * omega + c.abs())
    }

    /// Exact convolution of coefficient sequences.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, k: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect::<Vec<_>>())
    }

    /// Roots via eigenvalues of the companion matrix. Exact zeros at the
    /// origin are split off first so integrators stay exact. Returns `None`
    /// if the Schur iteration fails to converge.
    pub fn roots(&self) -> Option<Vec<Complex64>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        let trailing = self.coeffs.iter().rev().take_while(|c| **c == 0.0).count();
        let core = &self.coeffs[..self.coeffs.len() - trailing];
        let mut roots = vec![Complex64::new(0.0, 0.0); trailing];
        let n = core.len() - 1;
        if n == 0 {
            return Some(roots);
        }
        let lead = core[0];
        let mut companion = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            companion[(0, k)] = -core[k + 1] / lead;
        }
        for k in 1..n {
            companion[(k, k - 1)] = 1.0;
        }
        let schur = Schur::try_new(companion, f64::EPSILON, 10_000)?;
        roots.extend(schur.complex_eigenvalues().iter().copied());
        Some(roots)
    }
}

impl TryFrom<Vec<f64>> for Polynomial {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        if v.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient("polynomial"));
        }
        Ok(Polynomial::new(v))
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

/// `num(s) / den(s)` with coefficients kept exactly as given; no
/// common-factor cancellation is ever performed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalTf {
    num: Polynomial,
    den: Polynomial,
}

impl RationalTf {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_coeffs(num: &[f64], den: &[f64]) -> Result<Self> {
        let num = Polynomial::try_from(num.to_vec())?;
        let den = Polynomial::try_from(den.to_vec())?;
        Self::new(num, den)
    }

    pub fn unity() -> Self {
        Self { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_proper(&self) -> bool {
        self.num.degree() <= self.den.degree() || self.num.is_zero()
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.num.eval(s) / self.den.eval(s)
    }

    /// Divides numerator and denominator by the denominator's leading
    /// coefficient.
    pub fn monic(&self) -> RationalTf {
        let k = 1.0 / self.den.leading();
        RationalTf { num: self.num.scale(k), den: self.den.scale(k) }
    }
}

/// Rational transfer function in series with a pure delay `e^(-delay s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlantFile", into = "PlantFile")]
pub struct DeadTimePlant {
    tf: RationalTf,
    delay: f64,
}

/// On-disk form: `{"num": [...], "den": [...], "delay": 0.1}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PlantFile {
    num: Vec<f64>,
    den: Vec<f64>,
    #[serde(default)]
    delay: f64,
}

impl TryFrom<PlantFile> for DeadTimePlant {
    type Error = Error;
    fn try_from(f: PlantFile) -> Result<Self> {
        make_plant(&f.num, &f.den, f.delay)
    }
}

impl From<DeadTimePlant> for PlantFile {
    fn from(p: DeadTimePlant) -> Self {
        PlantFile { num: p.tf.num.coeffs, den: p.tf.den.coeffs, delay: p.delay }
    }
}

impl DeadTimePlant {
    pub fn new(tf: RationalTf, delay: f64) -> Result<Self> {
        if !delay.is_finite() {
            return Err(Error::InvalidConfig(format!("delay must be finite, got {delay}")));
        }
        if delay < 0.0 {
            return Err(Error::NegativeDelay(delay));
        }
        Ok(Self { tf, delay })
    }

    pub fn rational(tf: RationalTf) -> Self {
        Self { tf, delay: 0.0 }
    }

    pub fn tf(&self) -> &RationalTf {
        &self.tf
    }

    pub fn delay(&self) -> f64 {
        self.delay
    }

    /// Complex value `G(j omega) e^(-j tau omega)`.
    pub fn response(&self, omega: f64) -> Result<Complex64> {
        let g = rational_value(&self.tf, omega)?;
        Ok(g * Complex64::from_polar(1.0, -self.delay * omega))
    }

    pub fn magnitude(&self, omega: f64) -> Result<f64> {
        Ok(rational_value(&self.tf, omega)?.norm())
    }
}

/// Validated plant from raw coefficient lists.
pub fn make_plant(num: &[f64], den: &[f64], delay: f64) -> Result<DeadTimePlant> {
    DeadTimePlant::new(RationalTf::from_coeffs(num, den)?, delay)
}

/// One sample of a frequency response.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyPoint {
    pub omega: f64,
    pub magnitude: f64,
    /// Unwrapped phase, radians.
    pub phase: f64,
}

fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidFrequency(omega))
    }
}

fn rational_value(tf: &RationalTf, omega: f64) -> Result<Complex64> {
    check_omega(omega)?;
    let s = Complex64::new(0.0, omega);
    let d = tf.den.eval(s);
    if d.norm() <= 1e-14 * tf.den.abs_scale(omega) {
        return Err(Error::EvaluationAtPole(omega));
    }
    Ok(tf.num.eval(s) / d)
}

/// Frequency below which the rational phase is taken at its principal value.
const PHASE_ANCHOR: f64 = 1e-9;

fn anchor_for(omega: f64) -> f64 {
    PHASE_ANCHOR.min(omega)
}

/// Continuous phase contribution of one factor `(s - r)` at `s = j omega`.
fn factor_phase(r: Complex64, omega: f64) -> f64 {
    if r.re < 0.0 {
        (omega - r.im).atan2(-r.re)
    } else if r.re > 0.0 {
        PI + (r.im - omega).atan2(r.re)
    } else if omega >= r.im {
        PI / 2.0
    } else {
        -PI / 2.0
    }
}

fn lead_phase(c: f64) -> f64 {
    if c < 0.0 { PI } else { 0.0 }
}

fn principal_phase(tf: &RationalTf, omega: f64) -> f64 {
    let s = Complex64::new(0.0, omega);
    (tf.num.eval(s) * tf.den.eval(s).conj()).arg()
}

fn nearest_branch(estimate: f64, principal: f64) -> f64 {
    principal + TAU * ((estimate - principal) / TAU).round()
}

fn trailing_zeros(p: &Polynomial) -> i32 {
    p.coeffs().iter().rev().take_while(|c| **c == 0.0).count() as i32
}

/// Phase at the low anchor frequency on the branch `-k*pi/2` (type `k`),
/// shifted by `-pi` when the low-frequency gain is negative.
fn anchor_phase(tf: &RationalTf, anchor: f64) -> f64 {
    let k = trailing_zeros(&tf.den) - trailing_zeros(&tf.num);
    nearest_branch(-(k as f64) * PI / 2.0 - PI / 2.0, principal_phase(tf, anchor))
}

/// Unwrapped rational phase from root-factor summation. `None` if root
/// finding fails.
pub fn rational_phase_by_roots(tf: &RationalTf, omega: f64) -> Option<f64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return None;
    }
    let zeros = tf.num.roots()?;
    let poles = tf.den.roots()?;
    let raw = |w: f64| {
        let z: f64 = zeros.iter().map(|r| factor_phase(*r, w)).sum();
        let p: f64 = poles.iter().map(|r| factor_phase(*r, w)).sum();
        lead_phase(tf.num.leading()) - lead_phase(tf.den.leading()) + z - p
    };
    let anchor = anchor_for(omega);
    let offset = anchor_phase(tf, anchor) - raw(anchor);
    Some(nearest_branch(raw(omega) + offset, principal_phase(tf, omega)))
}

/// Unwrapped rational phase by marching a log grid up from the anchor
/// frequency and accumulating principal-value increments.
pub fn rational_phase_by_unwrapping(tf: &RationalTf, omega: f64) -> f64 {
    let anchor = anchor_for(omega);
    let mut phase = anchor_phase(tf, anchor);
    let decades = (omega / anchor).log10();
    let steps = ((decades * 200.0).ceil() as usize).max(1);
    let ratio = (omega / anchor).powf(1.0 / steps as f64);
    let s_at = |w: f64| Complex64::new(0.0, w);
    let value = |w: f64| tf.num.eval(s_at(w)) * tf.den.eval(s_at(w)).conj();

    fn increment(
        value: &dyn Fn(f64) -> Complex64,
        w0: f64,
        w1: f64,
        depth: u32,
    ) -> f64 {
        let d = (value(w1) * value(w0).conj()).arg();
        if d.abs() <= PI / 4.0 || depth == 0 {
            return d;
        }
        let mid = (w0 * w1).sqrt();
        increment(value, w0, mid, depth - 1) + increment(value, mid, w1, depth - 1)
    }

    let mut w = anchor;
    for k in 0..steps {
        let next = if k + 1 == steps { omega } else { w * ratio };
        phase += increment(&value, w, next, 30);
        w = next;
    }
    phase
}

/// Unwrapped phase of the rational part only.
pub fn rational_phase(tf: &RationalTf, omega: f64) -> Result<f64> {
    rational_value(tf, omega)?;
    Ok(rational_phase_by_roots(tf, omega).unwrap_or_else(|| rational_phase_by_unwrapping(tf, omega)))
}

/// `|G(j omega)|` and unwrapped `angle G(j omega) - tau omega`.
pub fn freq_response(plant: &DeadTimePlant, omega: f64) -> Result<FrequencyPoint> {
    let magnitude = rational_value(&plant.tf, omega)?.norm();
    let phase = rational_phase(&plant.tf, omega)? - plant.delay * omega;
    Ok(FrequencyPoint { omega, magnitude, phase })
}

/// `num(0) / den(0)`. Plants with a pole at the origin are rejected.
pub fn static_gain(plant: &DeadTimePlant) -> Result<f64> {
    let d = plant.tf.den.constant_term();
    if d == 0.0 {
        return Err(Error::StaticGainUndefined);
    }
    Ok(plant.tf.num.constant_term() / d)
}

pub fn series_rational(a: &RationalTf, b: &RationalTf) -> RationalTf {
    RationalTf { num: a.num.mul(&b.num), den: a.den.mul(&b.den) }
}

/// Complex loop value `G(j omega) K(j omega)`.
pub fn loop_response(plant: &DeadTimePlant, controller: &PidController, omega: f64) -> Result<Complex64> {
    Ok(plant.response(omega)? * controller.response(omega))
}

pub const CROSSOVER_SEARCH_LOW: f64 = 1e-4;
pub const CROSSOVER_SEARCH_HIGH: f64 = 1e4;
const CROSSOVER_GRID_PER_DECADE: usize = 50;
const CROSSOVER_REL_TOL: f64 = 1e-10;

/// Lowest `omega` in `[1e-4, 1e4]` where `|L(j omega)| = 1`.
pub fn crossover_frequency(plant: &DeadTimePlant, controller: &PidController) -> Result<f64> {
    lowest_unit_crossing(|w| {
        Ok(plant.magnitude(w)? * controller.response(w).norm())
    })
}

/// Lowest crossing of `magnitude(omega) = 1`: a coarse log grid locates the
/// first sign change of `ln|L|`, then bisection on `ln omega` refines it.
pub fn lowest_unit_crossing(magnitude: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let f = |lw: f64| -> Result<f64> {
        let m = magnitude(lw.exp())?;
        Ok(m.ln())
    };
    let lo = CROSSOVER_SEARCH_LOW.ln();
    let hi = CROSSOVER_SEARCH_HIGH.ln();
    let decades = (CROSSOVER_SEARCH_HIGH / CROSSOVER_SEARCH_LOW).log10();
    let n = (decades * CROSSOVER_GRID_PER_DECADE as f64).round() as usize;
    let step = (hi - lo) / n as f64;

    let mut a = lo;
    let mut fa = f(a)?;
    for k in 1..=n {
        let b = if k == n { hi } else { lo + step * k as f64 };
        let fb = f(b)?;
        if fa == 0.0 {
            return Ok(a.exp());
        }
        if fa.is_nan() || fb.is_nan() {
            a = b;
            fa = fb;
            continue;
        }
        if fa.signum() != fb.signum() {
            return bisect(&f, a, b, fa).map(f64::exp);
        }
        a = b;
        fa = fb;
    }
    if fa == 0.0 {
        return Ok(a.exp());
    }
    Err(Error::NoGainCrossover)
}

fn bisect(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64> {
    // relative tolerance on omega is an absolute tolerance on ln omega
    while b - a > CROSSOVER_REL_TOL {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lag5() -> DeadTimePlant {
        make_plant(&[1.0], &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0], 0.1).unwrap()
    }

    fn lag5_pade() -> DeadTimePlant {
        make_plant(&[-1.0, 20.0], &[1.0, 25.0, 110.0, 210.0, 205.0, 101.0, 20.0], 0.0).unwrap()
    }

    #[test]
    fn make_plant_validates() {
        let p = lag5();
        assert_eq!(p.tf().den().coeffs(), &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0]);
        assert_eq!(p.delay(), 0.1);
        let unity = make_plant(&[1.0], &[1.0], 0.0).unwrap();
        assert_eq!(static_gain(&unity).unwrap(), 1.0);
        assert_eq!(make_plant(&[1.0], &[0.0], 0.3), Err(Error::ZeroDenominator));
        assert_eq!(make_plant(&[1.0], &[1.0, 1.0], -0.1), Err(Error::NegativeDelay(-0.1)));
        assert!(make_plant(&[f64::NAN], &[1.0], 0.0).is_err());
    }

    #[test]
    fn lag5_response_matches_hand_formula() {
        let w: f64 = 0.4;
        let fp = freq_response(&lag5(), w).unwrap();
        let mag = (1.0 + w * w).powf(-2.5);
        let phase = -5.0 * w.atan() - 0.1 * w;
        assert_relative_eq!(fp.magnitude, mag, max_relative = 1e-12);
        assert_relative_eq!(fp.phase, phase, epsilon = 1e-12);
        assert!((fp.phase.to_degrees() + 111.30).abs() < 0.05);

        let low = freq_response(&lag5(), 1e-9).unwrap();
        assert_relative_eq!(low.magnitude, 1.0, epsilon = 1e-12);
        assert!(low.phase.abs() < 1e-8);
    }

    #[test]
    fn lag5_pade_response_close_to_delayed_plant() {
        let a = freq_response(&lag5(), 0.4).unwrap();
        let b = freq_response(&lag5_pade(), 0.4).unwrap();
        assert_relative_eq!(a.magnitude, b.magnitude, max_relative = 1e-12);
        assert!((a.phase - b.phase).abs() < 1e-4);
        // phase is above -pi here, so it matches the principal value
        let s = Complex64::new(0.0, 0.4);
        let direct = (Complex64::new(20.0, 0.0) - s)
            / lag5_pade().tf().den().eval(s);
        assert_relative_eq!(b.phase, direct.arg(), epsilon = 1e-12);
    }

    #[test]
    fn pole_on_axis_is_rejected() {
        let p = make_plant(&[1.0], &[1.0, 0.0, 1.0], 0.0).unwrap();
        assert_eq!(freq_response(&p, 1.0), Err(Error::EvaluationAtPole(1.0)));
        assert!(freq_response(&p, 0.0).is_err());
    }

    #[test]
    fn static_gain_cases() {
        assert_eq!(static_gain(&lag5()).unwrap(), 1.0);
        assert_eq!(static_gain(&lag5_pade()).unwrap(), 1.0);
        let p = make_plant(&[3.0], &[1.0, 2.0], 0.5).unwrap();
        assert_eq!(static_gain(&p).unwrap(), 1.5);
        let integ = make_plant(&[1.0], &[1.0, 0.0], 0.0).unwrap();
        assert_eq!(static_gain(&integ), Err(Error::StaticGainUndefined));
    }

    #[test]
    fn series_builds_lag5_pade() {
        let pade = RationalTf::from_coeffs(&[-1.0, 20.0], &[1.0, 20.0]).unwrap();
        let g = series_rational(&pade, lag5().tf());
        assert_eq!(g.num().coeffs(), &[-1.0, 20.0]);
        assert_eq!(g.den().coeffs(), &[1.0, 25.0, 110.0, 210.0, 205.0, 101.0, 20.0]);

        let one = RationalTf::unity();
        assert_eq!(&series_rational(&one, lag5().tf()), lag5().tf());

        let a = RationalTf::from_coeffs(&[1.0], &[1.0, 1.0]).unwrap();
        let b = RationalTf::from_coeffs(&[1.0], &[1.0, 2.0]).unwrap();
        assert_eq!(series_rational(&a, &b).den().coeffs(), &[1.0, 3.0, 2.0]);
    }

    #[test]
    fn crossover_simple_loops() {
        let p_only = PidController::proportional(1.0).unwrap();
        let integ = make_plant(&[1.0], &[1.0, 0.0], 0.0).unwrap();
        assert_relative_eq!(crossover_frequency(&integ, &p_only).unwrap(), 1.0, max_relative = 1e-9);
        let lag = make_plant(&[10.0], &[1.0, 1.0], 0.0).unwrap();
        assert_relative_eq!(crossover_frequency(&lag, &p_only).unwrap(), 99f64.sqrt(), max_relative = 1e-9);
        let small = make_plant(&[0.5], &[1.0, 1.0], 0.0).unwrap();
        assert_eq!(crossover_frequency(&small, &p_only), Err(Error::NoGainCrossover));
    }

    #[test]
    fn crossover_picks_lowest() {
        // magnitude crosses 1 at omega = 1 and again at omega = 100
        let lowest = lowest_unit_crossing(|w| Ok(if w < 1.0 { 2.0 } else if w < 100.0 { 0.5 } else { 2.0 }));
        assert_relative_eq!(lowest.unwrap(), 1.0, max_relative = 1e-8);
    }

    #[test]
    fn roots_of_lag5_pade_denominator() {
        let roots = lag5_pade().tf().den().roots().unwrap();
        assert_eq!(roots.len(), 6);
        assert!(roots.iter().any(|r| (r.re + 20.0).abs() < 1e-9 && r.im.abs() < 1e-9));
        let integ = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        let r = integ.roots().unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }

    #[test]
    fn phase_paths_agree() {
        let plants = [
            lag5_pade().tf().clone(),
            lag5().tf().clone(),
            RationalTf::from_coeffs(&[1.0, -2.0], &[1.0, 0.2, 4.0]).unwrap(),
            RationalTf::from_coeffs(&[-3.0], &[1.0, 3.0, 3.0, 1.0, 0.0]).unwrap(),
            RationalTf::from_coeffs(&[1.0, 1.0, 1.0], &[1.0, 0.05, 1.0, 0.1, 2.0, 1.0]).unwrap(),
        ];
        for tf in &plants {
            for &w in &[1e-3, 0.1, 0.4, 0.99, 1.7, 10.0, 300.0] {
                let a = rational_phase_by_roots(tf, w).unwrap();
                let b = rational_phase_by_unwrapping(tf, w);
                assert!((a - b).abs() < 1e-9, "{tf:?} at {w}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn phase_is_continuous_on_dense_grid() {
        let den = Polynomial::new(vec![1.0, 1.0])
            .mul(&Polynomial::new(vec![1.0, 0.4, 1.0]))
            .mul(&Polynomial::new(vec![1.0, 2.0, 8.0]));
        let tf = RationalTf::new(Polynomial::one(), den).unwrap();
        let mut prev = rational_phase(&tf, 1e-2).unwrap();
        for k in 1..=4000 {
            let w = 1e-2 * 10f64.powf(k as f64 / 1000.0);
            let ph = rational_phase(&tf, w).unwrap();
            assert!((ph - prev).abs() < PI / 2.0);
            prev = ph;
        }
        assert!((prev + 2.5 * PI).abs() < 0.05);
    }
}
