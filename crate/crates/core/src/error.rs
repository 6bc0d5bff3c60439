//! Crate-wide error type.

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("rational function has a pole at m = {0}")]
    Pole(Rational),

    #[error("interval [{lo}, {hi}] does not bracket a sign change")]
    NoSignChange { lo: Rational, hi: Rational },

    #[error("invalid harmonic plan: {0}")]
    InvalidPlan(String),

    #[error("ideal is not zero-dimensional: no pure power of {var} among leading monomials")]
    NotZeroDimensional { var: String },

    #[error("system has no solutions (1 lies in the ideal)")]
    NoSolutions,

    #[error("separating-element search exhausted: {0}")]
    SeparatingExhausted(String),

    #[error("no rational function of total degree <= {max_degree} fits the samples; need more samples")]
    NeedMoreSamples { max_degree: usize },

    #[error("interpolation never stabilized within the degree budget ({0} sample points)")]
    DegreeBudget(usize),

    #[error("bad parameter value m = {m}: {reason}")]
    BadParameter { m: Rational, reason: String },

    #[error("coordinate denominator g(1, T) vanished at an isolated root; RUR contract violated")]
    DenominatorVanished,

    #[error("cache error: {0}")]
    Cache(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("usage error: {0}")]
    Usage(String),
}
