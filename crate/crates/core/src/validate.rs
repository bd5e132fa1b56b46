//! Self-checks run by `irs-crb validate` on a loaded scenario.

use std::fmt;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::crb::{assemble_fim, crb_input, CrbOptions};
use crate::error::Result;
use crate::geometry::AnglePair;
use crate::irs_weights::mismatch_gain;
use crate::manifold::{upa_steering, upa_steering_derivatives};
use crate::scenario::ScenarioConfig;
use crate::signal_model::effective_manifold;
use crate::CVector;

/// Finite-difference step (radians).
pub const FD_STEP: f64 = 1e-5;
/// Relative tolerance of the derivative comparisons.
pub const FD_TOLERANCE: f64 = 1e-6;
/// Elevation above which the derivative oracle is skipped.
pub const FD_MAX_ELEVATION_DEG: f64 = 85.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl Check {
    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail(_))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, detail) = match &self.outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => ("FAIL", d),
            Outcome::Skip(d) => ("SKIP", d),
        };
        write!(f, "{tag:<4}  {:<22} {detail}", self.name)
    }
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn relative(a: &CVector, b: &CVector) -> f64 {
    let scale = b.norm();
    if scale == 0.0 {
        (a - b).norm()
    } else {
        (a - b).norm() / scale
    }
}

fn central_difference(f: impl Fn(f64, f64) -> CVector, psi: AnglePair, along_az: bool) -> CVector {
    let h = FD_STEP;
    let (p, m) = if along_az {
        (f(psi.az + h, psi.el), f(psi.az - h, psi.el))
    } else {
        (f(psi.az, psi.el + h), f(psi.az, psi.el - h))
    };
    (p - m) / Complex64::new(2.0 * h, 0.0)
}

fn derivative_checks(cfg: &ScenarioConfig, angles: &[AnglePair]) -> Result<(Outcome, Outcome)> {
    let s = &cfg.scenario;
    let too_steep = angles.iter().any(|a| a.el.to_degrees() >= FD_MAX_ELEVATION_DEG);
    let near_edge = angles.iter().any(|a| a.el < FD_STEP || a.az.abs() > std::f64::consts::FRAC_PI_2 - FD_STEP);
    if too_steep || near_edge {
        let why = format!("target elevation at or above {FD_MAX_ELEVATION_DEG}° or on the angle limits");
        return Ok((Outcome::Skip(why.clone()), Outcome::Skip(why)));
    }
    let lambda = s.wavelength;
    let mut worst_steering = 0.0f64;
    for psi in angles {
        let d = upa_steering_derivatives(&s.irs, *psi, lambda);
        let a = |az: f64, el: f64| upa_steering(&s.irs, AnglePair { az, el }, lambda);
        worst_steering = worst_steering.max(relative(&central_difference(a, *psi, true), &d.d_az));
        worst_steering = worst_steering.max(relative(&central_difference(a, *psi, false), &d.d_el));
    }
    let weights = s.design_weights(cfg.look)?;
    let fbar = s.fbar()?;
    let mut worst_zbar = 0.0f64;
    for psi in angles {
        let m = effective_manifold(s, &weights, &[*psi])?;
        let abar = |az: f64, el: f64| &fbar * weights.apply(&upa_steering(&s.irs, AnglePair { az, el }, lambda));
        let z_az: CVector = m.zbar.column(0).into_owned();
        let z_el: CVector = m.zbar.column(1).into_owned();
        worst_zbar = worst_zbar.max(relative(&central_difference(abar, *psi, true), &z_az));
        worst_zbar = worst_zbar.max(relative(&central_difference(abar, *psi, false), &z_el));
    }
    Ok((
        verdict(worst_steering < FD_TOLERANCE, format!("max relative error {worst_steering:.2e}")),
        verdict(worst_zbar < FD_TOLERANCE, format!("max relative error {worst_zbar:.2e}")),
    ))
}

fn weight_identity(cfg: &ScenarioConfig) -> Result<Outcome> {
    let s = &cfg.scenario;
    let radar = s.radar_angles_from_irs()?;
    let w = s.design_weights(cfg.look)?;
    let a0 = upa_steering(&s.irs, cfg.look, s.wavelength);
    let ar = upa_steering(&s.irs, radar, s.wavelength);
    let residual =
        (0..w.len()).map(|l| (a0[l] * w.diagonal[l] * ar[l] - Complex64::new(1.0, 0.0)).norm()).fold(0.0, f64::max);
    let n = s.irs.len() as f64;
    let gain = mismatch_gain(&w, &s.irs, cfg.look, s.wavelength);
    let ok = residual < 1e-12 && (gain - n).abs() <= 1e-9 * n;
    Ok(verdict(ok, format!("residual {residual:.2e}, gain {gain:.6} of {n}")))
}

fn fim_checks(cfg: &ScenarioConfig, angles: &[AnglePair]) -> Result<(Outcome, Outcome)> {
    let s = &cfg.scenario;
    let w = s.design_weights(cfg.look)?;
    let m = effective_manifold(s, &w, angles)?;
    let base = crb_input(s, &m, CrbOptions::default());
    let j = assemble_fim(&base)?;
    let norm = j.norm();
    let j2k = assemble_fim(&crate::crb::CrbInput { snapshots: 2 * base.snapshots, ..base.clone() })?;
    let j3s = assemble_fim(&crate::crb::CrbInput { noise_variance: 3.0 * base.noise_variance, ..base.clone() })?;
    let e_k = (&j2k - &j * 2.0).norm() / norm;
    let e_s = (&j3s - &j / 3.0).norm() / norm;
    let scaling = verdict(
        e_k <= 8.0 * f64::EPSILON && e_s <= 8.0 * f64::EPSILON,
        format!("J(2K) error {e_k:.1e}, J(3σ²) error {e_s:.1e}"),
    );
    let asym = (&j - j.transpose()).norm() / norm;
    let min_eig = SymmetricEigen::new(j.clone()).eigenvalues.min() / norm;
    let structure =
        verdict(asym < 1e-10 && min_eig >= -1e-9, format!("asymmetry {asym:.1e}, min eigenvalue {min_eig:.2e}·‖J‖"));
    Ok((scaling, structure))
}

pub fn run_checks(cfg: &ScenarioConfig) -> Result<Vec<Check>> {
    let angles = cfg.scenario.target_angles()?;
    let (steering, zbar) = derivative_checks(cfg, &angles)?;
    let (scaling, structure) = fim_checks(cfg, &angles)?;
    Ok(vec![
        Check { name: "steering-derivatives", outcome: steering },
        Check { name: "manifold-derivatives", outcome: zbar },
        Check { name: "irs-weight-identity", outcome: weight_identity(cfg)? },
        Check { name: "fim-scaling", outcome: scaling },
        Check { name: "fim-symmetric-psd", outcome: structure },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{default_scenario, parse_scenario, DEFAULT_SCENARIO};

    #[test]
    fn default_scenario_passes() {
        let checks = run_checks(&default_scenario()).unwrap();
        for c in &checks {
            assert!(matches!(c.outcome, Outcome::Pass(_)), "{c}");
        }
    }

    #[test]
    fn zenith_target_skips_derivative_oracle() {
        let text = DEFAULT_SCENARIO.replace(
            "[[targets]]\nposition = [5.0, 35.0, 18.0]",
            "[[targets]]\naz_deg = 0.0\nel_deg = 90.0\nrange_m = 40.0",
        );
        let checks = run_checks(&parse_scenario(&text).unwrap()).unwrap();
        assert!(matches!(checks[0].outcome, Outcome::Skip(_)));
        assert!(matches!(checks[1].outcome, Outcome::Skip(_)));
        assert!(checks.iter().all(|c| !c.failed()), "{checks:?}");
    }
}
