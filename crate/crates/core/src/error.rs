//! Crate-wide error type.

use crate::exact::poly::Var;
use crate::exact::Rational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials use different variables: {0} vs {1}")]
    MixedVariables(Var, Var),

    #[error("wronskian of an empty list")]
    EmptyWronskian,

    #[error("division by a zero polynomial")]
    ZeroDenominator,

    #[error("steps must be strictly increasing positive integers, got {0:?}")]
    NonAscendingSteps(Vec<u32>),

    #[error("parity violation: step m_{index} = {value} must be {expected}")]
    ParityViolation {
        index: usize,
        value: u32,
        expected: &'static str,
    },

    #[error("alpha bound violation: alpha + k = {alpha_plus_k} must exceed m_k + 1 = {mk_plus_one}")]
    AlphaBoundViolation {
        alpha_plus_k: Rational,
        mk_plus_one: u32,
    },

    #[error("family {family} requires the parameter {name}")]
    MissingRadialParameter { family: char, name: &'static str },

    #[error("family {family} does not take the parameter {name}")]
    UnexpectedRadialParameter { family: char, name: &'static str },

    #[error("nodelessness violation on the {axis} axis: Wronskian denominator has {roots} real root(s) on the physical domain")]
    NodelessnessViolation { axis: char, roots: usize },

    #[error("level N = {n} lies below the minimal level N = {min}")]
    LevelOutOfRange { n: i64, min: i64 },

    #[error("component kind {kind} has no zero-mode ladder polynomial; use the printed form")]
    UnsupportedComponent { kind: &'static str },

    #[error("level N = {n} matches no classification row: {details}")]
    NoMatchingCase { n: i64, details: String },

    #[error("numerical verification failed on the {axis} axis: max error {max_error:.3e} exceeds tolerance {tolerance:.1e}")]
    ToleranceExceeded {
        axis: char,
        max_error: f64,
        tolerance: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
