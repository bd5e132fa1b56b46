//! One-dimensional parameter sweeps over a base scenario.
//!
//! Each point changes exactly one quantity of the base scenario:
//!
//! | kind            | x unit | varied quantity                                    |
//! |-----------------|--------|----------------------------------------------------|
//! | `snr`           | dB     | noise variance, calibrated at the nominal geometry |
//! | `snapshots`     | count  | `K`                                                |
//! | `irs-elements`  | count  | panel size `L_h × L_v` (near-square factorization) |
//! | `az-dev`        | deg    | azimuth of the first target, weights kept at look  |
//! | `el-dev`        | deg    | elevation of the first target, weights kept at look|
//!
//! The absolute noise variance of the base scenario is kept for every kind
//! except `snr`. Points whose Fisher information is singular become rows of
//! `NaN`.

use std::str::FromStr;

use rayon::prelude::*;

use crate::crb::{crb_for_scenario, CrbOptions};
use crate::error::{CrbError, Error, Result};
use crate::estimator::{run_monte_carlo, AngleGrid, Dictionary, McConfig};
use crate::geometry::AnglePair;
use crate::irs_weights::IrsWeights;
use crate::manifold::UpaSpec;
use crate::signal_model::{effective_manifold, noise_variance_for_snr, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Snr,
    Snapshots,
    IrsElements,
    AzDeviation,
    ElDeviation,
}

impl SweepKind {
    pub const ALL: [SweepKind; 5] =
        [SweepKind::Snr, SweepKind::Snapshots, SweepKind::IrsElements, SweepKind::AzDeviation, SweepKind::ElDeviation];

    pub fn name(self) -> &'static str {
        match self {
            SweepKind::Snr => "snr",
            SweepKind::Snapshots => "snapshots",
            SweepKind::IrsElements => "irs-elements",
            SweepKind::AzDeviation => "az-dev",
            SweepKind::ElDeviation => "el-dev",
        }
    }

    pub fn default_range(self) -> SweepRange {
        match self {
            SweepKind::Snr => SweepRange::linear(-15.0, 15.0, 1.0),
            SweepKind::Snapshots => SweepRange { from: 100.0, to: 5000.0, step: 10.0, log: true },
            SweepKind::IrsElements => SweepRange::linear(4.0, 100.0, 4.0),
            SweepKind::AzDeviation | SweepKind::ElDeviation => SweepRange::linear(-10.0, 10.0, 0.5),
        }
    }

    fn is_count(self) -> bool {
        matches!(self, SweepKind::Snapshots | SweepKind::IrsElements)
    }
}

impl FromStr for SweepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Sweep(format!("unknown sweep kind `{s}`")))
    }
}

/// Inclusive range. With `log`, `step` is the number of points per decade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub log: bool,
}

impl SweepRange {
    pub fn linear(from: f64, to: f64, step: f64) -> Self {
        Self { from, to, step, log: false }
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        let SweepRange { from, to, step, log } = *self;
        if !(from.is_finite() && to.is_finite() && step.is_finite()) {
            return Err(Error::Sweep("range bounds must be finite".into()));
        }
        if !(step > 0.0) {
            return Err(Error::Sweep(format!("step must be positive, got {step}")));
        }
        if to < from {
            return Err(Error::Sweep(format!("empty range {from}..{to}")));
        }
        if log {
            if !(from > 0.0) {
                return Err(Error::Sweep("logarithmic range must start above zero".into()));
            }
            let n = (step * (to / from).log10() + 1e-9).floor() as usize;
            Ok((0..=n).map(|i| from * 10f64.powf(i as f64 / step)).collect())
        } else {
            let n = ((to - from) / step + 1e-9).floor() as usize;
            Ok((0..=n).map(|i| from + i as f64 * step).collect())
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub range: SweepRange,
    pub base: Scenario,
    /// Design look direction of the IRS weights.
    pub look: AnglePair,
    /// Monte Carlo settings; `None` for bound-only sweeps.
    pub monte_carlo: Option<McConfig>,
    pub grid_half_width: f64,
    pub grid_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub crlb_rmse_az: f64,
    pub crlb_rmse_el: f64,
    pub empirical_rmse_az: Option<f64>,
    pub empirical_rmse_el: Option<f64>,
}

impl SweepRow {
    pub fn is_gap(&self) -> bool {
        self.crlb_rmse_az.is_nan()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub kind: SweepKind,
    pub rows: Vec<SweepRow>,
}

/// `(L_h, L_v)` with `L_h · L_v = n`, `L_h ≥ L_v` and `L_h − L_v` minimal.
pub fn near_square(n: usize) -> (usize, usize) {
    assert!(n > 0, "element count must be positive");
    let mut lv = (n as f64).sqrt() as usize;
    while lv * lv > n {
        lv -= 1;
    }
    while !n.is_multiple_of(lv) {
        lv -= 1;
    }
    (n / lv, lv)
}

/// Everything needed to evaluate one sweep point.
#[derive(Debug, Clone)]
pub struct PointSetup {
    pub x: f64,
    pub scenario: Scenario,
    pub weights: IrsWeights,
    pub angles: Vec<AnglePair>,
}

/// Sweep values after rounding counts and dropping repeats.
pub fn sweep_values(kind: SweepKind, range: &SweepRange) -> Result<Vec<f64>> {
    let mut values = range.values()?;
    if kind.is_count() {
        values = values.into_iter().map(f64::round).collect();
        values.dedup();
        if values[0] < 1.0 {
            return Err(Error::Sweep(format!("{} must be at least 1", kind.name())));
        }
    }
    Ok(values)
}

pub fn point_setups(spec: &SweepSpec) -> Result<Vec<PointSetup>> {
    let base = &spec.base;
    base.validate()?;
    let base_angles = base.target_angles()?;
    let base_weights = base.design_weights(spec.look)?;
    let nominal = effective_manifold(base, &base_weights, &base_angles)?;
    sweep_values(spec.kind, &spec.range)?
        .into_iter()
        .map(|x| {
            let mut scenario = base.clone();
            let mut weights = base_weights.clone();
            let mut angles = base_angles.clone();
            match spec.kind {
                SweepKind::Snr => scenario.noise_variance = noise_variance_for_snr(base, &nominal, x),
                SweepKind::Snapshots => scenario.snapshots = x as usize,
                SweepKind::IrsElements => {
                    let (lh, lv) = near_square(x as usize);
                    scenario.irs = UpaSpec::new(lh, lv, base.irs.spacing_h, base.irs.spacing_v);
                    weights = scenario.design_weights(spec.look)?;
                }
                SweepKind::AzDeviation | SweepKind::ElDeviation => {
                    let (da, de) = if spec.kind == SweepKind::AzDeviation { (x, 0.0) } else { (0.0, x) };
                    angles[0] = angles[0]
                        .offset(da.to_radians(), de.to_radians())
                        .map_err(|e| Error::Sweep(format!("offset {x}° leaves the angle limits: {e}")))?;
                }
            }
            scenario.validate()?;
            Ok(PointSetup { x, scenario, weights, angles })
        })
        .collect()
}

fn gap(x: f64, with_mc: bool) -> SweepRow {
    let e = with_mc.then_some(f64::NAN);
    SweepRow { x, crlb_rmse_az: f64::NAN, crlb_rmse_el: f64::NAN, empirical_rmse_az: e, empirical_rmse_el: e }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    let setups = point_setups(spec)?;
    if let Some(mc) = &spec.monte_carlo {
        if spec.base.targets.len() != 1 {
            return Err(Error::Sweep("Monte Carlo sweeps need a single-target scenario".into()));
        }
        if mc.trials == 0 {
            return Err(Error::Sweep("trials must be at least 1".into()));
        }
    }
    let grid = AngleGrid::around(spec.look, spec.grid_half_width, spec.grid_step)?;
    let shared = match (&spec.monte_carlo, spec.kind) {
        (Some(_), kind) if kind != SweepKind::IrsElements => {
            Some(Dictionary::build(grid.clone(), &spec.base, &setups[0].weights)?)
        }
        _ => None,
    };
    let rows = setups
        .par_iter()
        .map(|p| -> Result<SweepRow> {
            let bound = match crb_for_scenario(&p.scenario, &p.weights, &p.angles, CrbOptions::default()) {
                Ok(b) => b.per_target[0],
                Err(Error::Crb(CrbError::SingularFim { .. })) => return Ok(gap(p.x, spec.monte_carlo.is_some())),
                Err(e) => return Err(e),
            };
            let mut row = SweepRow {
                x: p.x,
                crlb_rmse_az: bound.rmse_az,
                crlb_rmse_el: bound.rmse_el,
                empirical_rmse_az: None,
                empirical_rmse_el: None,
            };
            if let Some(mc) = &spec.monte_carlo {
                let own;
                let dict = match &shared {
                    Some(d) => d,
                    None => {
                        own = Dictionary::build(grid.clone(), &p.scenario, &p.weights)?;
                        &own
                    }
                };
                let r = run_monte_carlo(&p.scenario, &p.weights, p.angles[0], dict, mc)?;
                row.empirical_rmse_az = Some(r.empirical_rmse_az);
                row.empirical_rmse_el = Some(r.empirical_rmse_el);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { kind: spec.kind, rows })
}
