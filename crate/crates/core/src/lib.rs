//! Angle-estimation bounds for an IRS-static radar.
//!
//! A mono-static phased-array radar illuminates a target; part of the
//! scattered energy reaches a passive IRS panel placed away from the radar
//! and is redirected back to the radar receiver. This crate models that
//! Radar → Target → IRS → Radar path in its per-bin (range-Doppler cell)
//! form, computes the Fisher information and Cramér–Rao bound for the
//! target azimuth/elevation as seen from the IRS, and validates the bound
//! against a grid maximum-likelihood estimator by Monte Carlo simulation.
//!
//! Module map:
//!
//! * [`geometry`]: positions, path delays, IRS frame and angle conversion.
//! * [`manifold`]: ULA/UPA steering vectors and their analytic derivatives.
//! * [`irs_weights`]: phase-only IRS reflection design.
//! * [`signal_model`]: beamspace, IRS→radar channel, effective manifold,
//!   snapshot synthesis.
//! * [`crb`]: FIM assembly and bound extraction.
//! * [`estimator`]: grid ML estimator and Monte Carlo harness.
//! * [`sweeps`]: the SNR / snapshot / IRS-size / mismatch experiments.
//! * [`scenario`] and [`cli`]: scenario files, CSV output and commands.

// `!(x > 0.0)` comparisons also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod crb;
pub mod error;
pub mod estimator;
pub mod geometry;
pub mod irs_weights;
pub mod manifold;
pub mod scenario;
pub mod signal_model;
pub mod sweeps;
pub mod validate;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub use error::{Error, Result};

/// Complex column vector.
pub type CVector = DVector<Complex64>;
/// Complex dense matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Free-space propagation speed used throughout, m/s.
pub const SPEED_OF_LIGHT: f64 = 3.0e8;
