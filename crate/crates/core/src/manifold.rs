//! Steering vectors for the radar ULA and the IRS UPA.
//!
//! Element 0 is the phase reference of every array. UPA entries are laid out
//! row-major with the horizontal index fastest: flat index `q·L_h + p`
//! holds `vertical[q] · horizontal[p]`, i.e. the vector is
//! `vertical ⊗ horizontal`.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::geometry::AnglePair;
use crate::CVector;

#[derive(Debug, Clone, PartialEq)]
pub struct UlaSpec {
    pub element_count: usize,
    /// Element spacing in meters.
    pub spacing: f64,
    /// Unit vector along the array axis, global frame.
    pub axis: Vector3<f64>,
}

impl UlaSpec {
    pub fn new(element_count: usize, spacing: f64, axis: Vector3<f64>) -> Self {
        assert!(element_count >= 1, "ULA needs at least one element");
        assert!(spacing > 0.0, "ULA spacing must be positive");
        Self { element_count, spacing, axis: axis.normalize() }
    }

    /// Half-wavelength ULA along the global x axis.
    pub fn half_wavelength_x(element_count: usize, wavelength: f64) -> Self {
        Self::new(element_count, wavelength / 2.0, Vector3::x())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpaSpec {
    pub count_h: usize,
    pub count_v: usize,
    pub spacing_h: f64,
    pub spacing_v: f64,
}

impl UpaSpec {
    pub fn new(count_h: usize, count_v: usize, spacing_h: f64, spacing_v: f64) -> Self {
        assert!(count_h >= 1 && count_v >= 1, "UPA needs at least one element per axis");
        assert!(spacing_h > 0.0 && spacing_v > 0.0, "UPA spacings must be positive");
        Self { count_h, count_v, spacing_h, spacing_v }
    }

    pub fn half_wavelength(count_h: usize, count_v: usize, wavelength: f64) -> Self {
        Self::new(count_h, count_v, wavelength / 2.0, wavelength / 2.0)
    }

    pub fn len(&self) -> usize {
        self.count_h * self.count_v
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Horizontal and vertical element indices of flat entry `l`.
    pub fn indices(&self, l: usize) -> (usize, usize) {
        (l % self.count_h, l / self.count_h)
    }
}

/// Per-radian rates of change of a UPA steering vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringDerivatives {
    pub d_az: CVector,
    pub d_el: CVector,
}

fn wavenumber(wavelength: f64) -> f64 {
    assert!(wavelength > 0.0, "wavelength must be positive");
    2.0 * PI / wavelength
}

fn linear_phase(count: usize, rate: f64) -> CVector {
    CVector::from_iterator(count, (0..count).map(|m| Complex64::from_polar(1.0, rate * m as f64)))
}

/// ULA response to a direction with cosine `cosine` with respect to the
/// array axis.
pub fn ula_steering_cosine(spec: &UlaSpec, cosine: f64, wavelength: f64) -> CVector {
    linear_phase(spec.element_count, wavenumber(wavelength) * spec.spacing * cosine)
}

/// ULA response for angles expressed in the array's own frame, where the
/// axis direction cosine is `sin(az)·cos(el)`.
pub fn ula_steering(spec: &UlaSpec, angles: AnglePair, wavelength: f64) -> CVector {
    ula_steering_cosine(spec, angles.az.sin() * angles.el.cos(), wavelength)
}

/// ULA response toward a global-frame direction.
pub fn ula_steering_toward(spec: &UlaSpec, direction: &Vector3<f64>, wavelength: f64) -> CVector {
    ula_steering_cosine(spec, spec.axis.dot(&direction.normalize()), wavelength)
}

pub fn upa_horizontal_factor(spec: &UpaSpec, angles: AnglePair, wavelength: f64) -> CVector {
    let (uh, _) = angles.direction_cosines();
    linear_phase(spec.count_h, wavenumber(wavelength) * spec.spacing_h * uh)
}

pub fn upa_vertical_factor(spec: &UpaSpec, angles: AnglePair, wavelength: f64) -> CVector {
    let (_, uv) = angles.direction_cosines();
    linear_phase(spec.count_v, wavenumber(wavelength) * spec.spacing_v * uv)
}

/// UPA response for direction cosines `(u_h, u_v)` along the panel axes.
///
/// Values outside the visible region are accepted; they arise when a beam is
/// offset from a direction near endfire.
pub fn upa_steering_cosines(spec: &UpaSpec, uh: f64, uv: f64, wavelength: f64) -> CVector {
    let k = wavenumber(wavelength);
    let h = linear_phase(spec.count_h, k * spec.spacing_h * uh);
    let v = linear_phase(spec.count_v, k * spec.spacing_v * uv);
    v.kronecker(&h)
}

pub fn upa_steering(spec: &UpaSpec, angles: AnglePair, wavelength: f64) -> CVector {
    let (uh, uv) = angles.direction_cosines();
    upa_steering_cosines(spec, uh, uv, wavelength)
}

/// Analytic `∂a/∂az` and `∂a/∂el`: each entry is `j·φ'·exp(jφ)`.
pub fn upa_steering_derivatives(spec: &UpaSpec, angles: AnglePair, wavelength: f64) -> SteeringDerivatives {
    let k = wavenumber(wavelength);
    let a = upa_steering(spec, angles, wavelength);
    let (saz, caz) = angles.az.sin_cos();
    let (sel, cel) = angles.el.sin_cos();
    let mut d_az = CVector::zeros(a.len());
    let mut d_el = CVector::zeros(a.len());
    for (l, entry) in a.iter().enumerate() {
        let (p, q) = spec.indices(l);
        let (pd, qd) = (p as f64 * spec.spacing_h, q as f64 * spec.spacing_v);
        let rate_az = k * pd * caz * cel;
        let rate_el = k * (qd * cel - pd * saz * sel);
        d_az[l] = Complex64::new(0.0, rate_az) * entry;
        d_el[l] = Complex64::new(0.0, rate_el) * entry;
    }
    SteeringDerivatives { d_az, d_el }
}
