use thiserror::Error;

/// Errors raised by the tuning library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative delay: {0}")]
    NegativeDelay(f64),
    #[error("non-finite coefficient in {0}")]
    NonFiniteCoefficient(&'static str),
    #[error("frequency must be positive and finite, got {0}")]
    InvalidFrequency(f64),
    #[error("evaluation at pole (omega = {0})")]
    EvaluationAtPole(f64),
    #[error("static gain undefined, Bode amplitude relation inapplicable")]
    StaticGainUndefined,
    #[error("Bode amplitude relation requires finite nonzero static gain")]
    BodeStaticGain,
    #[error("no gain crossover found")]
    NoGainCrossover,
    #[error("Padé order {0} too large for exact factorial path (max 10)")]
    PadeOrderTooLarge(usize),
    #[error("spec infeasible for PID structure at this frequency: {0}")]
    InfeasibleSpec(String),
    #[error("degenerate spec angle")]
    DegenerateSpecAngle,
    #[error("slope undefined")]
    SlopeUndefined,
    #[error("degenerate: Td relation denominator vanishes")]
    Degenerate,
    #[error("infeasible slope for PI(D) at this frequency (Td = {0})")]
    InfeasibleSlope(f64),
    #[error("stationary point: loop derivative vanishes")]
    StationaryPoint,
    #[error("improper rational part: numerator degree {num} exceeds denominator degree {den}")]
    ImproperPlant { num: usize, den: usize },
    #[error("algebraic loop is ill-posed (1 + D·Ke = 0)")]
    IllPosedLoop,
    #[error("overshoot undefined: final value is zero")]
    UndefinedOvershoot,
    #[error("empty trajectory")]
    EmptyTrajectory,
    #[error("bounds inconsistent with slope cap")]
    BoundsInconsistent,
    #[error("invalid controller: {0}")]
    InvalidController(String),
    #[error("invalid design spec: {0}")]
    InvalidSpec(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
