//! Per-bin observation model `y(k) = Ā x̄(k) + v̄` with `Ā = F̄ D A`.
//!
//! `F̄ = W F` is the IRS→radar channel seen through the radar beamspace.
//! Two channel models are provided:
//!
//! * [`ChannelModel::RankOne`]: a single far-field line-of-sight mode,
//!   `F = g · a_radar(u_I) a_irs(ψ_R)ᵀ`. Every beam then sees the same
//!   scalar IRS response, so the two angles cannot be separated at the
//!   design look direction (the FIM is singular there).
//! * [`ChannelModel::BeamResolved`] (default): `F = g · Σ_m a_radar(u_m) f_mᵀ`,
//!   one far-field mode per radar beam. Radar beam `m` is DFT-orthogonal to
//!   its neighbours and mode `m` leaves the IRS toward `ψ_R` offset by half
//!   an IRS 3-dB beamwidth per grid step, so the beams sample the panel
//!   response at overlapping directions around the look direction.
//!
//! `g = λ / (4π‖r_I − r_R‖)` is the free-space amplitude factor.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::{angles_from_irs, AnglePair, IrsFrame, Position3};
use crate::irs_weights::{design_weights, IrsWeights};
use crate::manifold::{
    ula_steering_cosine, upa_steering, upa_steering_cosines, upa_steering_derivatives, UlaSpec, UpaSpec,
};
use crate::{CMatrix, CVector};

/// Half of the 3-dB beamwidth of a uniform aperture, in units of λ/(N·d).
const HALF_BEAMWIDTH: f64 = 0.443;

/// Relative singular-value floor below which `Ā` counts as rank deficient.
const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChannelModel {
    RankOne,
    #[default]
    BeamResolved,
}

/// Beam grid; `az × el` beams in total, azimuth index fastest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeamLayout {
    pub az: usize,
    pub el: usize,
}

impl BeamLayout {
    pub fn count(&self) -> usize {
        self.az * self.el
    }
}

impl Default for BeamLayout {
    fn default() -> Self {
        Self { az: 3, el: 3 }
    }
}

/// Known per-target waveform `s_p(k)`, unit power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Waveform {
    #[default]
    Constant,
    /// `exp(j2π·p·k/P)` for target `p` of `P`.
    Tones,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub position: Position3,
    /// Combined path gain `α_p` of the target through the IRS path.
    pub amplitude: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub radar: UlaSpec,
    pub radar_position: Position3,
    pub irs: UpaSpec,
    pub irs_frame: IrsFrame,
    pub wavelength: f64,
    pub targets: Vec<Target>,
    pub noise_variance: f64,
    pub snapshots: usize,
    pub beams: BeamLayout,
    pub channel: ChannelModel,
    pub waveform: Waveform,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Scenario(msg));
        if self.targets.is_empty() {
            return fail("at least one target is required".into());
        }
        if !(self.noise_variance > 0.0 && self.noise_variance.is_finite()) {
            return fail(format!("noise variance must be positive, got {}", self.noise_variance));
        }
        if self.snapshots == 0 {
            return fail("snapshots must be at least 1".into());
        }
        if self.beams.count() == 0 || self.beams.count() > self.radar.element_count {
            return fail(format!(
                "beam count {} must be in 1..={} (radar elements)",
                self.beams.count(),
                self.radar.element_count
            ));
        }
        if !(self.wavelength > 0.0) {
            return fail("wavelength must be positive".into());
        }
        if (self.irs_frame.origin - self.radar_position).norm() == 0.0 {
            return fail("IRS and radar must not be co-located".into());
        }
        Ok(())
    }

    pub fn beam_count(&self) -> usize {
        self.beams.count()
    }

    pub fn irs_radar_distance(&self) -> f64 {
        (self.irs_frame.origin - self.radar_position).norm()
    }

    /// Direction of the radar as seen from the IRS (`ψ_R`).
    pub fn radar_angles_from_irs(&self) -> Result<AnglePair> {
        Ok(angles_from_irs(&self.irs_frame, &self.radar_position)?)
    }

    /// Cosine between the radar array axis and the radar→IRS direction.
    pub fn irs_cosine(&self) -> f64 {
        let dir: Vector3<f64> = (self.irs_frame.origin - self.radar_position).normalize();
        self.radar.axis.dot(&dir)
    }

    pub fn target_angles(&self) -> Result<Vec<AnglePair>> {
        self.targets.iter().map(|t| angles_from_irs(&self.irs_frame, &t.position).map_err(Error::from)).collect()
    }

    /// IRS weights that redirect `look` toward the radar.
    pub fn design_weights(&self, look: AnglePair) -> Result<IrsWeights> {
        Ok(design_weights(&self.irs, look, self.radar_angles_from_irs()?, self.wavelength))
    }

    /// Known source samples `x̄_p(k) = α_p s_p(k)`, `k × K`.
    pub fn source_samples(&self) -> CMatrix {
        let count = self.targets.len();
        CMatrix::from_fn(count, self.snapshots, |p, k| {
            let s = match self.waveform {
                Waveform::Constant => Complex64::new(1.0, 0.0),
                Waveform::Tones => Complex64::from_polar(1.0, 2.0 * PI * (p * k) as f64 / count as f64),
            };
            self.targets[p].amplitude * s
        })
    }

    /// `F̄ = W F`, `M × L`.
    pub fn fbar(&self) -> Result<CMatrix> {
        Ok(beamspace_matrix(&self.radar, self.irs_cosine(), self.beam_count(), self.wavelength)
            * irs_to_radar_channel(self)?)
    }
}

/// Radar-axis cosines of the beam centers: the IRS direction plus
/// DFT-orthogonal offsets of `λ/(M_R d)`, centered on the IRS.
pub fn beam_cosines(radar: &UlaSpec, irs_cosine: f64, beam_count: usize, wavelength: f64) -> Vec<f64> {
    let spacing = wavelength / (radar.element_count as f64 * radar.spacing);
    let center = (beam_count as f64 - 1.0) / 2.0;
    (0..beam_count).map(|m| irs_cosine + (m as f64 - center) * spacing).collect()
}

/// Beamspace matrix `W`, `M × M_R`, rows are unit-norm conjugate steering
/// vectors toward [`beam_cosines`].
pub fn beamspace_matrix(radar: &UlaSpec, irs_cosine: f64, beam_count: usize, wavelength: f64) -> CMatrix {
    assert!(beam_count >= 1 && beam_count <= radar.element_count, "beam count must be between 1 and the element count");
    let scale = 1.0 / (radar.element_count as f64).sqrt();
    let mut w = CMatrix::zeros(beam_count, radar.element_count);
    for (m, u) in beam_cosines(radar, irs_cosine, beam_count, wavelength).into_iter().enumerate() {
        let a = ula_steering_cosine(radar, u, wavelength);
        for (n, z) in a.iter().enumerate() {
            w[(m, n)] = z.conj() * scale;
        }
    }
    w
}

/// Free-space amplitude factor `λ / (4π d)`.
pub fn free_space_amplitude(wavelength: f64, distance: f64) -> f64 {
    wavelength / (4.0 * PI * distance)
}

/// IRS departure directions (cosines along the panel axes) of the
/// beam-resolved channel modes, in beam order.
pub fn mode_departure_cosines(
    irs: &UpaSpec,
    radar_dir: AnglePair,
    beams: BeamLayout,
    wavelength: f64,
) -> Vec<(f64, f64)> {
    let (uh, uv) = radar_dir.direction_cosines();
    let step_h = HALF_BEAMWIDTH * wavelength / (irs.count_h as f64 * irs.spacing_h);
    let step_v = HALF_BEAMWIDTH * wavelength / (irs.count_v as f64 * irs.spacing_v);
    let ch = (beams.az as f64 - 1.0) / 2.0;
    let cv = (beams.el as f64 - 1.0) / 2.0;
    let mut out = Vec::with_capacity(beams.count());
    for j in 0..beams.el {
        for i in 0..beams.az {
            out.push((uh + (i as f64 - ch) * step_h, uv + (j as f64 - cv) * step_v));
        }
    }
    out
}

/// IRS→radar channel `F`, `M_R × L`.
pub fn irs_to_radar_channel(scenario: &Scenario) -> Result<CMatrix> {
    let distance = scenario.irs_radar_distance();
    if distance == 0.0 {
        return Err(Error::Scenario("IRS and radar must not be co-located".into()));
    }
    let gain = Complex64::new(free_space_amplitude(scenario.wavelength, distance), 0.0);
    let radar_dir = scenario.radar_angles_from_irs()?;
    let lambda = scenario.wavelength;
    let f = match scenario.channel {
        ChannelModel::RankOne => {
            let ar = ula_steering_cosine(&scenario.radar, scenario.irs_cosine(), lambda);
            let ai = upa_steering(&scenario.irs, radar_dir, lambda);
            &ar * ai.transpose() * gain
        }
        ChannelModel::BeamResolved => {
            let radar_u = beam_cosines(&scenario.radar, scenario.irs_cosine(), scenario.beam_count(), lambda);
            let irs_u = mode_departure_cosines(&scenario.irs, radar_dir, scenario.beams, lambda);
            let mut f = CMatrix::zeros(scenario.radar.element_count, scenario.irs.len());
            for (u, (uh, uv)) in radar_u.into_iter().zip(irs_u) {
                let ar = ula_steering_cosine(&scenario.radar, u, lambda);
                let ai = upa_steering_cosines(&scenario.irs, uh, uv, lambda);
                f += &ar * ai.transpose();
            }
            f * gain
        }
    };
    Ok(f)
}

/// `Ā` and its projected angle derivatives for a set of target angles.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveManifold {
    /// `M × k`, column `i` is `F̄ (d ⊙ a(ψ_i))`.
    pub abar: CMatrix,
    /// `M × 2k`, columns `(2i, 2i+1)` are the az and el derivatives of column `i` of `abar`.
    pub zbar: CMatrix,
    pub angles: Vec<AnglePair>,
}

impl EffectiveManifold {
    pub fn target_count(&self) -> usize {
        self.abar.ncols()
    }

    /// True when the columns of `Ā` are linearly dependent (e.g. two
    /// targets at identical angles).
    pub fn rank_deficient(&self) -> bool {
        let sv = self.abar.clone().singular_values();
        let max = sv.max();
        max == 0.0 || sv.min() <= RANK_TOLERANCE * max
    }
}

/// `F̄ (d ⊙ v)`; shared by the manifold and the estimator dictionary.
pub fn effective_column(fbar: &CMatrix, weights: &IrsWeights, v: &CVector) -> CVector {
    fbar * weights.apply(v)
}

pub fn effective_manifold_with(
    fbar: &CMatrix,
    irs: &UpaSpec,
    wavelength: f64,
    weights: &IrsWeights,
    angles: &[AnglePair],
) -> EffectiveManifold {
    let rows = fbar.nrows();
    let mut abar = CMatrix::zeros(rows, angles.len());
    let mut zbar = CMatrix::zeros(rows, 2 * angles.len());
    for (i, psi) in angles.iter().enumerate() {
        let a = upa_steering(irs, *psi, wavelength);
        let d = upa_steering_derivatives(irs, *psi, wavelength);
        abar.set_column(i, &effective_column(fbar, weights, &a));
        zbar.set_column(2 * i, &effective_column(fbar, weights, &d.d_az));
        zbar.set_column(2 * i + 1, &effective_column(fbar, weights, &d.d_el));
    }
    EffectiveManifold { abar, zbar, angles: angles.to_vec() }
}

pub fn effective_manifold(
    scenario: &Scenario,
    weights: &IrsWeights,
    angles: &[AnglePair],
) -> Result<EffectiveManifold> {
    if weights.len() != scenario.irs.len() {
        return Err(Error::Scenario(format!(
            "IRS weights have {} entries, panel has {}",
            weights.len(),
            scenario.irs.len()
        )));
    }
    let fbar = scenario.fbar()?;
    Ok(effective_manifold_with(&fbar, &scenario.irs, scenario.wavelength, weights, angles))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotBatch {
    /// `M × K`.
    pub observations: CMatrix,
    /// `k × K`.
    pub source_samples: CMatrix,
    pub seed: u64,
}

/// Draws `K` snapshots with circular complex Gaussian noise of variance
/// `σ_w²` per entry. Deterministic for a given seed.
pub fn synthesize(scenario: &Scenario, manifold: &EffectiveManifold, seed: u64) -> SnapshotBatch {
    let sources = scenario.source_samples();
    let mut observations = &manifold.abar * &sources;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = (scenario.noise_variance / 2.0).sqrt();
    for z in observations.iter_mut() {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        *z += Complex64::new(re, im) * scale;
    }
    SnapshotBatch { observations, source_samples: sources, seed }
}

/// Mean per-beam signal power of `Ā x̄(k)` over all beams and snapshots.
pub fn signal_power(scenario: &Scenario, manifold: &EffectiveManifold) -> f64 {
    let signal = &manifold.abar * scenario.source_samples();
    signal.norm_squared() / (signal.nrows() * signal.ncols()) as f64
}

/// Post-beamspace SNR in dB; `-∞` when the signal is identically zero.
pub fn snr_of(scenario: &Scenario, manifold: &EffectiveManifold) -> f64 {
    let p = signal_power(scenario, manifold);
    if p == 0.0 {
        f64::NEG_INFINITY
    } else {
        10.0 * (p / scenario.noise_variance).log10()
    }
}

/// Noise variance that puts [`snr_of`] at `snr_db`.
pub fn noise_variance_for_snr(scenario: &Scenario, manifold: &EffectiveManifold, snr_db: f64) -> f64 {
    signal_power(scenario, manifold) / 10f64.powf(snr_db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irs_weights::mismatch_gain;

    const LAMBDA: f64 = 0.0125;

    fn reference_scenario(channel: ChannelModel, beams: BeamLayout) -> Scenario {
        Scenario {
            radar: UlaSpec::half_wavelength_x(50, LAMBDA),
            radar_position: Position3::zeros(),
            irs: UpaSpec::half_wavelength(20, 18, LAMBDA),
            irs_frame: IrsFrame::new(Position3::new(-50.0, 100.0, 0.0), Vector3::x()).unwrap(),
            wavelength: LAMBDA,
            targets: vec![Target { position: Position3::new(5.0, 35.0, 18.0), amplitude: Complex64::new(1.0, 0.0) }],
            noise_variance: 1e-6,
            snapshots: 16,
            beams,
            channel,
            waveform: Waveform::Constant,
        }
    }

    fn default_scenario() -> Scenario {
        reference_scenario(ChannelModel::BeamResolved, BeamLayout::default())
    }

    #[test]
    fn matched_beam_gain() {
        let radar = UlaSpec::half_wavelength_x(50, LAMBDA);
        let w = beamspace_matrix(&radar, -0.3, 1, LAMBDA);
        let a = ula_steering_cosine(&radar, -0.3, LAMBDA);
        let y = &w * &a;
        assert!((y[0].norm() - 50f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn full_beamspace_is_unitary() {
        let radar = UlaSpec::half_wavelength_x(16, LAMBDA);
        let w = beamspace_matrix(&radar, 0.1, 16, LAMBDA);
        let g = &w * w.adjoint();
        assert!((g - CMatrix::identity(16, 16)).norm() < 1e-12);
    }

    #[test]
    fn beamspace_rows_unit_norm() {
        for (n, m, u) in [(50, 9, -0.447), (8, 3, 0.9), (33, 33, 0.0), (5, 2, -1.0)] {
            let radar = UlaSpec::half_wavelength_x(n, LAMBDA);
            let w = beamspace_matrix(&radar, u, m, LAMBDA);
            for r in 0..m {
                assert!((w.row(r).norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rank_one_channel() {
        let s = reference_scenario(ChannelModel::RankOne, BeamLayout { az: 1, el: 1 });
        let f = irs_to_radar_channel(&s).unwrap();
        let sv = f.singular_values();
        assert!(sv[1] < 1e-12 * sv[0] || sv.iter().filter(|v| **v > 1e-12 * sv.max()).count() == 1);
        let g = free_space_amplitude(LAMBDA, s.irs_radar_distance());
        assert!((g - 8.897031792714714e-6).abs() < 1e-15);
        // |F| entries all equal the amplitude factor.
        assert!(f.iter().all(|z| (z.norm() - g).abs() < 1e-18));
    }

    #[test]
    fn rank_one_channel_reciprocity() {
        // Transposing F gives the radar→IRS channel a_irs(ψ_R) a_radar(u_I)ᵀ.
        let s = reference_scenario(ChannelModel::RankOne, BeamLayout { az: 1, el: 1 });
        let f = irs_to_radar_channel(&s).unwrap();
        let g = free_space_amplitude(LAMBDA, s.irs_radar_distance());
        let ai = upa_steering(&s.irs, s.radar_angles_from_irs().unwrap(), LAMBDA);
        let ar = ula_steering_cosine(&s.radar, s.irs_cosine(), LAMBDA);
        let reverse = &ai * ar.transpose() * Complex64::new(g, 0.0);
        assert!((f.transpose() - reverse).norm() < 1e-18);
    }

    #[test]
    fn beam_resolved_channel_separates_modes() {
        let s = default_scenario();
        let fbar = s.fbar().unwrap();
        let g = free_space_amplitude(LAMBDA, s.irs_radar_distance()) * 50f64.sqrt();
        let radar_dir = s.radar_angles_from_irs().unwrap();
        for (m, (uh, uv)) in mode_departure_cosines(&s.irs, radar_dir, s.beams, LAMBDA).into_iter().enumerate() {
            let want = upa_steering_cosines(&s.irs, uh, uv, LAMBDA).transpose() * Complex64::new(g, 0.0);
            assert!((fbar.row(m) - want).norm() < 1e-12 * g * 19.0);
        }
        assert_eq!(irs_to_radar_channel(&s).unwrap().rank(1e-9 * g), 9);
    }

    #[test]
    fn matched_single_beam_gain_at_look() {
        let s = reference_scenario(ChannelModel::RankOne, BeamLayout { az: 1, el: 1 });
        let look = s.target_angles().unwrap()[0];
        let w = s.design_weights(look).unwrap();
        let m = effective_manifold(&s, &w, &[look]).unwrap();
        let want = 50f64.sqrt() * 360.0 * free_space_amplitude(LAMBDA, s.irs_radar_distance());
        assert!((m.abar[(0, 0)].norm() - want).abs() < 1e-9 * want);
        assert!((mismatch_gain(&w, &s.irs, look, LAMBDA) - 360.0).abs() < 1e-9);
    }

    #[test]
    fn manifold_shapes() {
        let s = default_scenario();
        let look = s.target_angles().unwrap()[0];
        let w = s.design_weights(look).unwrap();
        let angles = [look, look.offset(0.01, 0.0).unwrap(), look.offset(0.0, 0.02).unwrap()];
        let m = effective_manifold(&s, &w, &angles).unwrap();
        assert_eq!(m.abar.shape(), (9, 3));
        assert_eq!(m.zbar.shape(), (9, 6));
        assert!(!m.rank_deficient());
        let dup = effective_manifold(&s, &w, &[look, look]).unwrap();
        assert!(dup.rank_deficient());
    }

    #[test]
    fn zbar_matches_finite_differences_of_abar() {
        let s = default_scenario();
        let look = s.target_angles().unwrap()[0];
        let w = s.design_weights(look).unwrap();
        let h = 1e-5;
        for psi in [look, look.offset(0.05, -0.03).unwrap(), AnglePair::new(0.2, 0.6).unwrap()] {
            let m = effective_manifold(&s, &w, &[psi]).unwrap();
            let at = |az: f64, el: f64| {
                effective_manifold(&s, &w, &[AnglePair { az, el }]).unwrap().abar.column(0).into_owned()
            };
            let fd_az = (at(psi.az + h, psi.el) - at(psi.az - h, psi.el)) / Complex64::new(2.0 * h, 0.0);
            let fd_el = (at(psi.az, psi.el + h) - at(psi.az, psi.el - h)) / Complex64::new(2.0 * h, 0.0);
            assert!((&fd_az - m.zbar.column(0)).norm() / m.zbar.column(0).norm() < 1e-6);
            assert!((&fd_el - m.zbar.column(1)).norm() / m.zbar.column(1).norm() < 1e-6);
        }
    }

    #[test]
    fn noiseless_limit_and_determinism() {
        let mut s = default_scenario();
        let look = s.target_angles().unwrap()[0];
        let w = s.design_weights(look).unwrap();
        let m = effective_manifold(&s, &w, &[look]).unwrap();
        s.noise_variance = 1e-300;
        let b = synthesize(&s, &m, 3);
        let clean = &m.abar * s.source_samples();
        assert!((&b.observations - &clean).norm() <= 1e-140);

        s.noise_variance = 1e-6;
        let b1 = synthesize(&s, &m, 42);
        let b2 = synthesize(&s, &m, 42);
        let b3 = synthesize(&s, &m, 43);
        assert_eq!(b1, b2);
        assert_ne!(b1.observations, b3.observations);
    }

    #[test]
    fn noise_variance_law_of_large_numbers() {
        let mut s = default_scenario();
        s.snapshots = 12_000;
        s.noise_variance = 2.5;
        s.targets[0].amplitude = Complex64::new(0.0, 0.0);
        let look = s.target_angles().unwrap()[0];
        let w = s.design_weights(look).unwrap();
        let m = effective_manifold(&s, &w, &[look]).unwrap();
        let b = synthesize(&s, &m, 11);
        let n = b.observations.len() as f64;
        assert!(n >= 1e5);
        let var = b.observations.norm_squared() / n;
        assert!((var / 2.5 - 1.0).abs() < 0.02, "sample variance {var}");
    }

    #[test]
    fn signal_scales_linearly_with_amplitude() {
        let mut s = default_scenario();
        s.noise_variance = 1e-300;
        let look = s.target_angles().unwrap()[0];
        let w = s.design_weights(look).unwrap();
        let m = effective_manifold(&s, &w, &[look]).unwrap();
        let base = synthesize(&s, &m, 1).observations;
        s.targets[0].amplitude *= Complex64::new(0.0, 3.0);
        let scaled = synthesize(&s, &m, 1).observations;
        assert!((scaled - base * Complex64::new(0.0, 3.0)).norm() < 1e-12 * m.abar.norm());
    }

    #[test]
    fn snr_scaling() {
        let mut s = default_scenario();
        let look = s.target_angles().unwrap()[0];
        let w = s.design_weights(look).unwrap();
        let m = effective_manifold(&s, &w, &[look]).unwrap();
        let base = snr_of(&s, &m);
        s.targets[0].amplitude *= 2.0;
        assert!((snr_of(&s, &m) - base - 20.0 * 2f64.log10()).abs() < 1e-9);
        s.targets[0].amplitude /= 2.0;
        s.noise_variance *= 10.0;
        assert!((snr_of(&s, &m) - base + 10.0).abs() < 1e-9);
        s.targets[0].amplitude = Complex64::new(0.0, 0.0);
        assert_eq!(snr_of(&s, &m), f64::NEG_INFINITY);
    }

    #[test]
    fn noise_for_snr_round_trips() {
        let mut s = default_scenario();
        let look = s.target_angles().unwrap()[0];
        let w = s.design_weights(look).unwrap();
        let m = effective_manifold(&s, &w, &[look]).unwrap();
        s.noise_variance = noise_variance_for_snr(&s, &m, 7.5);
        assert!((snr_of(&s, &m) - 7.5).abs() < 1e-9);
    }

    #[test]
    fn scenario_validation() {
        let mut s = default_scenario();
        assert!(s.validate().is_ok());
        s.beams = BeamLayout { az: 10, el: 6 };
        assert!(s.validate().is_err());
        let mut s = default_scenario();
        s.targets.clear();
        assert!(s.validate().is_err());
        let mut s = default_scenario();
        s.noise_variance = 0.0;
        assert!(s.validate().is_err());
    }
}
