//! Nearly parametric solutions to selective harmonic elimination PWM.
//!
//! Selective harmonic elimination picks inverter switching angles so that
//! chosen output harmonics vanish while the fundamental tracks a modulation
//! index `m`. This crate solves those systems exactly: it rewrites the
//! trigonometric equations as polynomial systems in elementary symmetric
//! coordinates, computes a rational univariate representation whose
//! coefficients are rational functions of `m` (so a change of `m` costs only
//! univariate root finding, not a fresh elimination), and recovers every
//! valid switching-angle group with spectral verification.
//!
//! Module map:
//! - [`rational`], [`unipoly`], [`multipoly`], [`ratfunc`], [`roots`]:
//!   exact arithmetic foundation and certified real-root isolation.
//! - [`model`]: construction of the harmonic power-sum and elementary
//!   symmetric systems, plus the coefficient sign filter.
//! - [`rur`]: Groebner bases, quotient rings, and the rational univariate
//!   representation at a fixed modulation index.
//! - [`param`]: the nearly parametric representation - per-sample RURs glued
//!   by exact rational-function interpolation, with cache persistence.
//! - [`solve`]: recovery of switching-angle groups at a concrete `m`.
//! - [`harmonics`]: Fourier verification, waveform synthesis, and sweeps.

pub mod error;
pub mod harmonics;
pub mod matrix;
pub mod model;
pub mod multipoly;
pub mod param;
pub mod ratfunc;
pub mod rational;
pub mod roots;
pub mod rur;
pub mod solve;
pub mod unipoly;

pub use error::{Error, Result};
// STAGED pub use harmonics::{fourier_b, synthesize_waveform, sweep, verify, Spectrum, SweepRow};
pub use model::{
    build_elementary_system, build_power_sum_system, cos_multiple_angle, harmonic_orders,
    power_sum_in_elementary, sign_pattern_ok, ElementarySystem, HarmonicPlan, PowerSumSystem,
};
pub use multipoly::{Monomial, MultiPoly};
pub use param::{build_parametric_rur, load_cache, save_cache, ParametricRur};
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use roots::{isolate_real_roots, refine_root, Interval};
pub use rur::{groebner, mult_matrix, rur_fixed, QuotientRing, RurFixed, SeparatingElement};
// STAGED pub use solve::{solve, specialize, SolutionGroup, SolveReport};
pub use unipoly::{UniPoly, Var};
