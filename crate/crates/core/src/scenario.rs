//! Scenario documents (TOML).
//!
//! Lengths are in meters, angles in degrees, frequencies in hertz. Angles
//! are converted to radians on load. A target (or the look direction) is
//! given either as a `position` in the radar frame or as IRS-frame
//! `az_deg`/`el_deg` plus `range_m` from the IRS. The noise level is given
//! either as an absolute `noise_variance` or as `snr_db`, which is
//! calibrated against the post-beamspace signal power of the nominal
//! geometry.
//!
//! See `scenarios/default.toml` for a complete example.

use std::path::Path;

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::estimator::{McConfig, MlStatistic, Refinement};
use crate::geometry::{angles_from_irs, position_from_irs_estimate, AnglePair, IrsFrame, Position3};
use crate::manifold::{UlaSpec, UpaSpec};
use crate::signal_model::{
    effective_manifold, noise_variance_for_snr, BeamLayout, ChannelModel, Scenario, Target, Waveform,
};
use crate::SPEED_OF_LIGHT;

pub const DEFAULT_SCENARIO: &str = include_str!("../scenarios/default.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    carrier_hz: f64,
    #[serde(default)]
    speed_of_light: Option<f64>,
    radar: RadarSection,
    irs: IrsSection,
    look: PointSection,
    targets: Vec<TargetSection>,
    signal: SignalSection,
    #[serde(default)]
    estimator: EstimatorSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RadarSection {
    #[serde(default)]
    position: Option<[f64; 3]>,
    elements: usize,
    #[serde(default = "half")]
    spacing_wavelengths: f64,
    #[serde(default = "x_axis")]
    axis: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IrsSection {
    position: [f64; 3],
    boresight: [f64; 3],
    elements_h: usize,
    elements_v: usize,
    #[serde(default)]
    spacing_wavelengths: Option<f64>,
    #[serde(default)]
    spacing_h_wavelengths: Option<f64>,
    #[serde(default)]
    spacing_v_wavelengths: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSection {
    #[serde(default)]
    position: Option<[f64; 3]>,
    #[serde(default)]
    az_deg: Option<f64>,
    #[serde(default)]
    el_deg: Option<f64>,
    #[serde(default)]
    range_m: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetSection {
    #[serde(flatten)]
    point: PointSection,
    #[serde(default = "unit_amplitude")]
    amplitude: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignalSection {
    snapshots: usize,
    #[serde(default)]
    snr_db: Option<f64>,
    #[serde(default)]
    noise_variance: Option<f64>,
    #[serde(default = "three")]
    beams_az: usize,
    #[serde(default = "three")]
    beams_el: usize,
    #[serde(default)]
    channel: ChannelName,
    #[serde(default)]
    waveform: WaveformName,
}

#[derive(Debug, Deserialize, Default, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum ChannelName {
    RankOne,
    #[default]
    BeamResolved,
}

#[derive(Debug, Deserialize, Default, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum WaveformName {
    #[default]
    Constant,
    Tones,
}

#[derive(Debug, Deserialize, Default, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum RefinementName {
    None,
    #[default]
    Parabolic,
}

#[derive(Debug, Deserialize, Default, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum StatisticName {
    #[default]
    MatchedSubspace,
    KnownWaveform,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EstimatorSection {
    #[serde(default)]
    trials: usize,
    #[serde(default = "default_seed")]
    seed: u64,
    #[serde(default = "default_half_width")]
    grid_half_width_deg: f64,
    #[serde(default = "default_grid_step")]
    grid_step_deg: f64,
    #[serde(default)]
    refinement: RefinementName,
    #[serde(default)]
    statistic: StatisticName,
}

impl Default for EstimatorSection {
    fn default() -> Self {
        Self {
            trials: 0,
            seed: default_seed(),
            grid_half_width_deg: default_half_width(),
            grid_step_deg: default_grid_step(),
            refinement: RefinementName::default(),
            statistic: StatisticName::default(),
        }
    }
}

fn half() -> f64 {
    0.5
}
fn three() -> usize {
    3
}
fn x_axis() -> [f64; 3] {
    [1.0, 0.0, 0.0]
}
fn unit_amplitude() -> [f64; 2] {
    [1.0, 0.0]
}
pub const DEFAULT_SEED: u64 = 20240601;
fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_half_width() -> f64 {
    15.0
}
fn default_grid_step() -> f64 {
    0.1
}

/// Estimator settings carried by a scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorDefaults {
    pub mc: McConfig,
    pub grid_half_width: f64,
    pub grid_step: f64,
}

/// A loaded scenario document.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    /// Design look direction `ψ_0` of the IRS weights.
    pub look: AnglePair,
    pub estimator: EstimatorDefaults,
}

fn vec3(v: [f64; 3]) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Scenario(format!("field `{field}`: {msg}"))
}

fn resolve_point(frame: &IrsFrame, p: &PointSection, field: &str) -> Result<Position3> {
    match (p.position, p.az_deg, p.el_deg, p.range_m) {
        (Some(pos), None, None, None) => {
            let pos = vec3(pos);
            if !pos.iter().all(|v| v.is_finite()) {
                return Err(invalid(field, "position must be finite"));
            }
            Ok(pos)
        }
        (None, Some(az), Some(el), Some(range)) => {
            let angles = AnglePair::from_degrees(az, el).map_err(|e| invalid(field, e))?;
            position_from_irs_estimate(frame, angles, range).map_err(|e| invalid(field, e))
        }
        _ => Err(invalid(field, "give either `position` or all of `az_deg`, `el_deg`, `range_m`")),
    }
}

pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::Scenario(e.to_string()))?;
    let c = file.speed_of_light.unwrap_or(SPEED_OF_LIGHT);
    if !(file.carrier_hz > 0.0 && c > 0.0) {
        return Err(invalid("carrier_hz", "carrier frequency and speed of light must be positive"));
    }
    let wavelength = c / file.carrier_hz;

    let r = &file.radar;
    if r.elements == 0 {
        return Err(invalid("radar.elements", "must be at least 1"));
    }
    if !(r.spacing_wavelengths > 0.0) {
        return Err(invalid("radar.spacing_wavelengths", "must be positive"));
    }
    let axis = vec3(r.axis);
    if !(axis.norm() > 0.0) {
        return Err(invalid("radar.axis", "must be a non-zero vector"));
    }
    let radar = UlaSpec::new(r.elements, r.spacing_wavelengths * wavelength, axis);
    let radar_position = vec3(r.position.unwrap_or([0.0; 3]));

    let i = &file.irs;
    if i.elements_h == 0 || i.elements_v == 0 {
        return Err(invalid("irs.elements_h/elements_v", "must be at least 1"));
    }
    let sh = i.spacing_h_wavelengths.or(i.spacing_wavelengths).unwrap_or(0.5);
    let sv = i.spacing_v_wavelengths.or(i.spacing_wavelengths).unwrap_or(0.5);
    if !(sh > 0.0 && sv > 0.0) {
        return Err(invalid("irs.spacing_wavelengths", "must be positive"));
    }
    let irs = UpaSpec::new(i.elements_h, i.elements_v, sh * wavelength, sv * wavelength);
    let irs_frame = IrsFrame::new(vec3(i.position), vec3(i.boresight)).map_err(|e| invalid("irs.boresight", e))?;

    let look_pos = resolve_point(&irs_frame, &file.look, "look")?;
    let look = angles_from_irs(&irs_frame, &look_pos).map_err(|e| invalid("look", e))?;

    if file.targets.is_empty() {
        return Err(invalid("targets", "at least one target is required"));
    }
    let mut targets = Vec::with_capacity(file.targets.len());
    for (n, t) in file.targets.iter().enumerate() {
        let field = format!("targets[{n}]");
        let position = resolve_point(&irs_frame, &t.point, &field)?;
        angles_from_irs(&irs_frame, &position).map_err(|e| invalid(&field, e))?;
        targets.push(Target { position, amplitude: Complex64::new(t.amplitude[0], t.amplitude[1]) });
    }

    let s = &file.signal;
    let channel = match s.channel {
        ChannelName::RankOne => ChannelModel::RankOne,
        ChannelName::BeamResolved => ChannelModel::BeamResolved,
    };
    let waveform = match s.waveform {
        WaveformName::Constant => Waveform::Constant,
        WaveformName::Tones => Waveform::Tones,
    };
    let mut scenario = Scenario {
        radar,
        radar_position,
        irs,
        irs_frame,
        wavelength,
        targets,
        noise_variance: 1.0,
        snapshots: s.snapshots,
        beams: BeamLayout { az: s.beams_az, el: s.beams_el },
        channel,
        waveform,
    };
    scenario.validate().map_err(|e| invalid("signal", e))?;

    scenario.noise_variance = match (s.noise_variance, s.snr_db) {
        (Some(v), None) => v,
        (None, Some(snr)) => {
            if !snr.is_finite() {
                return Err(invalid("signal.snr_db", "must be finite"));
            }
            let weights = scenario.design_weights(look)?;
            let manifold = effective_manifold(&scenario, &weights, &scenario.target_angles()?)?;
            noise_variance_for_snr(&scenario, &manifold, snr)
        }
        _ => return Err(invalid("signal", "give exactly one of `snr_db` or `noise_variance`")),
    };
    scenario.validate().map_err(|e| invalid("signal", e))?;

    let e = &file.estimator;
    if !(e.grid_step_deg > 0.0 && e.grid_half_width_deg >= 0.0) {
        return Err(invalid("estimator.grid_step_deg", "grid step must be positive and half-width non-negative"));
    }
    let estimator = EstimatorDefaults {
        mc: McConfig {
            trials: e.trials,
            master_seed: e.seed,
            refinement: match e.refinement {
                RefinementName::None => Refinement::None,
                RefinementName::Parabolic => Refinement::Parabolic,
            },
            statistic: match e.statistic {
                StatisticName::MatchedSubspace => MlStatistic::MatchedSubspace,
                StatisticName::KnownWaveform => MlStatistic::KnownWaveform,
            },
        },
        grid_half_width: e.grid_half_width_deg.to_radians(),
        grid_step: e.grid_step_deg.to_radians(),
    };
    Ok(ScenarioConfig { scenario, look, estimator })
}

pub fn load_scenario(path: &Path) -> Result<ScenarioConfig> {
    let text =
        std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    parse_scenario(&text)
}

/// The bundled 24 GHz reference scenario.
pub fn default_scenario() -> ScenarioConfig {
    parse_scenario(DEFAULT_SCENARIO).expect("bundled scenario is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal_model::snr_of;

    #[test]
    fn bundled_scenario_values() {
        let cfg = default_scenario();
        let s = &cfg.scenario;
        assert!((s.wavelength - 0.0125).abs() < 1e-15);
        assert_eq!(s.radar.element_count, 50);
        assert!((s.radar.spacing - 0.00625).abs() < 1e-15);
        assert_eq!((s.irs.count_h, s.irs.count_v), (20, 18));
        assert_eq!(s.irs_frame.origin, Position3::new(-50.0, 100.0, 0.0));
        assert_eq!(cfg.look, s.target_angles().unwrap()[0]);
        let w = s.design_weights(cfg.look).unwrap();
        let m = effective_manifold(s, &w, &s.target_angles().unwrap()).unwrap();
        assert!((snr_of(s, &m) - 10.0).abs() < 1e-9);
    }

    #[test]
    fn angle_specified_target() {
        let text = DEFAULT_SCENARIO.replace(
            "[[targets]]\nposition = [5.0, 35.0, 18.0]",
            "[[targets]]\naz_deg = -20.0\nel_deg = 30.0\nrange_m = 80.0",
        );
        let cfg = parse_scenario(&text).unwrap();
        let (az, el) = cfg.scenario.target_angles().unwrap()[0].to_degrees();
        assert!((az + 20.0).abs() < 1e-9 && (el - 30.0).abs() < 1e-9);
    }

    #[test]
    fn unknown_field_is_reported_with_location() {
        let text = DEFAULT_SCENARIO.replace("elements = 50", "elements = 50\nelemnts = 3");
        let err = parse_scenario(&text).unwrap_err().to_string();
        assert!(err.contains("elemnts"), "{err}");
        assert!(err.contains("line"), "{err}");
    }

    #[test]
    fn noise_spec_must_be_exclusive() {
        let text = DEFAULT_SCENARIO.replace("snr_db = 10.0", "snr_db = 10.0\nnoise_variance = 1.0");
        assert!(parse_scenario(&text).is_err());
        let text = DEFAULT_SCENARIO.replace("snr_db = 10.0", "");
        assert!(parse_scenario(&text).is_err());
    }

    #[test]
    fn target_behind_panel_rejected() {
        let text = DEFAULT_SCENARIO
            .replace("[[targets]]\nposition = [5.0, 35.0, 18.0]", "[[targets]]\nposition = [-80.0, 35.0, 18.0]");
        let err = parse_scenario(&text).unwrap_err().to_string();
        assert!(err.contains("targets[0]"), "{err}");
    }

    #[test]
    fn degree_radian_round_trip() {
        for d in [-90.0, -37.25, 0.0, 11.93654397, 90.0] {
            let r: f64 = f64::to_radians(d);
            assert!((r.to_degrees() - d).abs() < 1e-12);
        }
    }
}
