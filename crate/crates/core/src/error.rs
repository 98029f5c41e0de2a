use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("twice-spin {0} exceeds the supported maximum of {max}", max = crate::angular_momentum::MAX_TWICE_SPIN)]
    SpinTooLarge(u32),

    #[error("inconsistent parity: 2j={tj}, 2m={tm}")]
    Parity { tj: u32, tm: i32 },

    #[error("projection 2m={tm} out of range for 2j={tj}")]
    Projection { tj: u32, tm: i32 },

    #[error("2J={tj} violates the triangle rule for 2j1={tj1}, 2j2={tj2}")]
    Triangle { tj1: u32, tj2: u32, tj: u32 },

    #[error("expected {expected} multiplet weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("weight for 2J={tj} is negative ({value:e})")]
    NegativeWeight { tj: u32, value: f64 },

    #[error("weights sum to {sum}, not 1")]
    Normalization { sum: f64 },

    #[error("non-finite value in input")]
    NonFinite,

    #[error("operator dimension {got} does not match expected {expected}")]
    Dimension { expected: usize, got: usize },

    #[error("trace {trace} is not 1 within {tol:e}")]
    Trace { trace: f64, tol: f64 },

    #[error("input is not SU(2)-invariant: commutator residual {residual:e} > {tol:e}")]
    NotInvariant { residual: f64, tol: f64 },

    #[error("spin pair (2S1={ts1}, 2S2={ts2}) is not supported here: {reason}")]
    UnsupportedSpins { ts1: u32, ts2: u32, reason: &'static str },

    #[error("spectrum and state refer to different spin pairs")]
    SpinMismatch,

    #[error("2K={tk} is outside the witness range")]
    WitnessRange { tk: u32 },

    #[error("eigenvector with K^2 expectation {expectation} matches no multiplet within {tol:e}")]
    AmbiguousMultiplet { expectation: f64, tol: f64 },

    #[error("multiplet 2K={tk} collected {got} eigenvectors, expected {expected}")]
    Multiplicity { tk: u32, expected: usize, got: usize },

    #[error("moment system is singular")]
    Singular,

    #[error("closed-form sum rule n={n} gives {closed}, dense evaluation gives {dense}")]
    ClosedFormMismatch { n: usize, closed: f64, dense: f64 },

    #[error("spectrum methods disagree by {deviation:e}")]
    MethodDisagreement { deviation: f64 },

    #[error("ring size {0} outside 2..=10")]
    RingSize(usize),

    #[error("inverse temperature must be finite and non-negative, got {0}")]
    Beta(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
