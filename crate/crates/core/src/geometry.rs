//! Scene geometry: node positions, path delays and the IRS-local frame.
//!
//! All positions live in the radar (global) frame, in meters. The IRS frame
//! is spanned by `(boresight, horizontal, vertical)`; azimuth is measured in
//! the boresight–horizontal plane and elevation from that plane, so the
//! direction cosines along the panel axes are `sin(az)·cos(el)` and
//! `sin(el)`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;

use crate::error::GeometryError;

pub type Position3 = Vector3<f64>;

/// Slack allowed on angle limits before a value counts as out of range.
const ANGLE_SLACK: f64 = 1e-12;

/// Azimuth/elevation pair in radians, restricted to the grid region
/// `az ∈ [-π/2, π/2]`, `el ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair {
    pub az: f64,
    pub el: f64,
}

impl AnglePair {
    pub fn new(az: f64, el: f64) -> Result<Self, GeometryError> {
        let ok = az.is_finite()
            && el.is_finite()
            && az.abs() <= FRAC_PI_2 + ANGLE_SLACK
            && (-ANGLE_SLACK..=FRAC_PI_2 + ANGLE_SLACK).contains(&el);
        if !ok {
            return Err(GeometryError::OutOfRange { az, el });
        }
        Ok(Self { az: az.clamp(-FRAC_PI_2, FRAC_PI_2), el: el.clamp(0.0, FRAC_PI_2) })
    }

    pub fn from_degrees(az_deg: f64, el_deg: f64) -> Result<Self, GeometryError> {
        Self::new(az_deg.to_radians(), el_deg.to_radians())
    }

    pub fn to_degrees(self) -> (f64, f64) {
        (self.az.to_degrees(), self.el.to_degrees())
    }

    /// Direction cosines `(u_h, u_v)` along the horizontal and vertical axes.
    pub fn direction_cosines(self) -> (f64, f64) {
        (self.az.sin() * self.el.cos(), self.el.sin())
    }

    /// Shifted copy; fails if the result leaves the grid region.
    pub fn offset(self, d_az: f64, d_el: f64) -> Result<Self, GeometryError> {
        Self::new(self.az + d_az, self.el + d_el)
    }
}

/// Local orthonormal frame of the IRS panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsFrame {
    pub origin: Position3,
    pub boresight: Vector3<f64>,
    pub horizontal: Vector3<f64>,
    pub vertical: Vector3<f64>,
}

impl IrsFrame {
    /// Builds the frame from the panel position and its boresight.
    ///
    /// `horizontal = normalize(ẑ × boresight)` and
    /// `vertical = boresight × horizontal`, which keeps the vertical axis in
    /// the upper half-space. A boresight along ±ẑ has no horizontal
    /// reference and is rejected.
    pub fn new(origin: Position3, boresight: Vector3<f64>) -> Result<Self, GeometryError> {
        if !origin.iter().all(|v| v.is_finite()) {
            return Err(GeometryError::InvalidFrame("origin must be finite"));
        }
        let norm = boresight.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(GeometryError::InvalidFrame("boresight must be a non-zero vector"));
        }
        let boresight = boresight / norm;
        let h = Vector3::z().cross(&boresight);
        if h.norm() < 1e-9 {
            return Err(GeometryError::InvalidFrame("boresight must not be vertical"));
        }
        let horizontal = h.normalize();
        let vertical = boresight.cross(&horizontal);
        Ok(Self { origin, boresight, horizontal, vertical })
    }

    /// Components of a global vector along `(boresight, horizontal, vertical)`.
    pub fn resolve(&self, v: &Vector3<f64>) -> (f64, f64, f64) {
        (v.dot(&self.boresight), v.dot(&self.horizontal), v.dot(&self.vertical))
    }
}

/// Total Radar → Target → IRS → Radar delay in seconds.
pub fn path_delay(radar: &Position3, target: &Position3, irs: &Position3, c: f64) -> f64 {
    assert!(c > 0.0, "propagation speed must be positive");
    ((target - radar).norm() + (target - irs).norm() + (irs - radar).norm()) / c
}

/// Two-way mono-static delay `2‖r_k − r_R‖/c`.
pub fn monostatic_delay(radar: &Position3, target: &Position3, c: f64) -> f64 {
    assert!(c > 0.0, "propagation speed must be positive");
    2.0 * (target - radar).norm() / c
}

/// Azimuth and elevation of `target` as seen from the IRS.
pub fn angles_from_irs(frame: &IrsFrame, target: &Position3) -> Result<AnglePair, GeometryError> {
    let rel = target - frame.origin;
    let (ub, uh, uv) = frame.resolve(&rel);
    let range = rel.norm();
    if ub < 0.0 || range == 0.0 {
        return Err(GeometryError::TargetBehindPanel(ub));
    }
    let az = uh.atan2(ub);
    let el = (uv / range).clamp(-1.0, 1.0).asin();
    AnglePair::new(az, el)
}

/// Inverse of [`angles_from_irs`]: target position in the radar frame from
/// the IRS-frame angles and the IRS–target range (`r_k = r'_k + r_I`).
pub fn position_from_irs_estimate(
    frame: &IrsFrame,
    angles: AnglePair,
    range_from_irs: f64,
) -> Result<Position3, GeometryError> {
    if !(range_from_irs > 0.0) {
        return Err(GeometryError::NonPositiveRange(range_from_irs));
    }
    let (saz, caz) = angles.az.sin_cos();
    let (sel, cel) = angles.el.sin_cos();
    let local = frame.boresight * (cel * caz) + frame.horizontal * (cel * saz) + frame.vertical * sel;
    Ok(frame.origin + local * range_from_irs)
}

/// IRS–target leg from the bistatic total range and the two known legs.
pub fn split_range(total_range: f64, range_irs_radar: f64, target_radar_range: f64) -> Result<f64, GeometryError> {
    if !(range_irs_radar >= 0.0 && total_range > range_irs_radar) {
        return Err(GeometryError::NegativeLeg(total_range - range_irs_radar));
    }
    let leg = total_range - target_radar_range - range_irs_radar;
    if leg < -1e-9 * total_range {
        return Err(GeometryError::NegativeLeg(leg));
    }
    Ok(leg.max(0.0))
}
