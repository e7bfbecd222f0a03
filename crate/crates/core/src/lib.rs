//! PID auto-tuning for rational plants with pure dead time.
//!
//! Three pipelines share one set of building blocks:
//!
//! - **bode-delay**: slopes of the delayed plant are estimated from a single
//!   frequency-response measurement with the Bode gain-phase relations
//!   (delay-corrected), then fed to the closed-form PID synthesis.
//! - **pade**: the delay is replaced by a Padé approximant, and the same
//!   synthesis runs on the delay-free rational plant.
//! - **ga**: a real-coded genetic algorithm minimizes ITAE around the
//!   Padé-based controller, rejecting candidates whose Nyquist slope misses
//!   the target by more than a cap.
//!
//! Whatever produced the controller, [`synthesis::verify_design`] and
//! [`simulate::step_closed_loop`] always run against the true delayed plant.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability, and [`cli`] for the command-line front end.

// NaN must fail every validity check, hence `!(x > 0.0)` style guards.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod ga;
pub mod lti;
pub mod pade;
pub mod pipeline;
pub mod simulate;
pub mod slopes;
pub mod svg;
pub mod synthesis;

pub use error::{Error, Result};
pub use lti::{DeadTimePlant, FrequencyPoint, Polynomial, RationalTf};
pub use simulate::{Metrics, SimConfig, StepResult};
pub use slopes::{SlopeEstimate, SlopeMethod};
pub use synthesis::{DesignReport, DesignSpec, PidController};
