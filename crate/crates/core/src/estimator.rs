//! Grid maximum-likelihood angle estimation and the Monte Carlo harness.
//!
//! The dictionary holds `F̄ (d ⊙ a(ψ_z))` for every grid point, azimuth
//! index fastest (`z = i_el · n_az + i_az`). Two single-target statistics
//! are available:
//!
//! * matched subspace (amplitude unknown): `âᴴ R â / ‖â‖²` with `R = Σ_k y(k) y(k)ᴴ`;
//! * known waveform (amplitude and waveform known): `Re(âᴴ r) − ½ Σ|x̄|² ‖â‖²`
//!   with `r = Σ_k y(k) x̄(k)*`.
//!
//! The grid maximum can be refined by a quadratic fit through the 3×3
//! neighbourhood of the peak.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::crb::{crb_for_manifold, CrbOptions};
use crate::error::{Error, Result};
use crate::geometry::AnglePair;
use crate::irs_weights::IrsWeights;
use crate::manifold::upa_steering;
use crate::signal_model::{effective_column, effective_manifold, synthesize, Scenario, SnapshotBatch};
use crate::CMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct AngleGrid {
    az: Vec<f64>,
    el: Vec<f64>,
}

fn check_axis(points: &[f64], lo: f64, hi: f64, name: &str) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Estimator(format!("{name} grid is empty")));
    }
    if !points.iter().all(|p| p.is_finite() && *p >= lo && *p <= hi) {
        return Err(Error::Estimator(format!("{name} grid leaves [{lo}, {hi}]")));
    }
    if points.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Estimator(format!("{name} grid must be strictly increasing")));
    }
    Ok(())
}

fn axis_around(center: f64, half_width: f64, step: f64, lo: f64, hi: f64) -> Vec<f64> {
    let n = (half_width / step + 1e-9).floor() as i64;
    (-n..=n)
        .map(|i| center + i as f64 * step)
        .filter(|p| *p >= lo - 1e-12 && *p <= hi + 1e-12)
        .map(|p| p.clamp(lo, hi))
        .collect()
}

impl AngleGrid {
    pub fn new(az: Vec<f64>, el: Vec<f64>) -> Result<Self> {
        check_axis(&az, -FRAC_PI_2, FRAC_PI_2, "azimuth")?;
        check_axis(&el, 0.0, FRAC_PI_2, "elevation")?;
        Ok(Self { az, el })
    }

    /// Uniform grid of spacing `step` within `±half_width` of `center` on
    /// both axes, clipped to the angle limits. `center` is a grid point.
    pub fn around(center: AnglePair, half_width: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && half_width >= 0.0 && half_width.is_finite()) {
            return Err(Error::Estimator(format!("invalid grid window ±{half_width} step {step}")));
        }
        Self::new(
            axis_around(center.az, half_width, step, -FRAC_PI_2, FRAC_PI_2),
            axis_around(center.el, half_width, step, 0.0, FRAC_PI_2),
        )
    }

    pub fn az_points(&self) -> &[f64] {
        &self.az
    }

    pub fn el_points(&self) -> &[f64] {
        &self.el
    }

    pub fn len(&self) -> usize {
        self.az.len() * self.el.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i_az: usize, i_el: usize) -> usize {
        i_el * self.az.len() + i_az
    }

    pub fn point(&self, z: usize) -> AnglePair {
        let n = self.az.len();
        AnglePair { az: self.az[z % n], el: self.el[z / n] }
    }
}

pub fn build_dictionary(grid: &AngleGrid, scenario: &Scenario, weights: &IrsWeights) -> Result<CMatrix> {
    if weights.len() != scenario.irs.len() {
        return Err(Error::Estimator("IRS weights do not match the panel".into()));
    }
    let fbar = scenario.fbar()?;
    let columns: Vec<_> = (0..grid.len())
        .into_par_iter()
        .map(|z| effective_column(&fbar, weights, &upa_steering(&scenario.irs, grid.point(z), scenario.wavelength)))
        .collect();
    let mut dict = CMatrix::zeros(fbar.nrows(), grid.len());
    for (z, c) in columns.iter().enumerate() {
        dict.set_column(z, c);
    }
    Ok(dict)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MlStatistic {
    #[default]
    MatchedSubspace,
    KnownWaveform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Refinement {
    None,
    #[default]
    Parabolic,
}

/// Dictionary with its grid and cached column energies.
#[derive(Debug, Clone)]
pub struct Dictionary {
    pub grid: AngleGrid,
    pub columns: CMatrix,
    energies: Vec<f64>,
}

impl Dictionary {
    pub fn new(grid: AngleGrid, columns: CMatrix) -> Result<Self> {
        if columns.ncols() != grid.len() {
            return Err(Error::Estimator(format!("{} columns for {} grid points", columns.ncols(), grid.len())));
        }
        let energies = columns.column_iter().map(|c| c.norm_squared()).collect();
        Ok(Self { grid, columns, energies })
    }

    pub fn build(grid: AngleGrid, scenario: &Scenario, weights: &IrsWeights) -> Result<Self> {
        let columns = build_dictionary(&grid, scenario, weights)?;
        Self::new(grid, columns)
    }

    /// The statistic at every grid point.
    pub fn statistic(&self, batch: &SnapshotBatch, statistic: MlStatistic) -> Vec<f64> {
        let y = &batch.observations;
        match statistic {
            MlStatistic::MatchedSubspace => {
                let r = y * y.adjoint();
                self.columns
                    .column_iter()
                    .zip(&self.energies)
                    .map(|(a, e)| if *e > 0.0 { (a.adjoint() * &r * a)[(0, 0)].re / e } else { 0.0 })
                    .collect()
            }
            MlStatistic::KnownWaveform => {
                let x = &batch.source_samples;
                if x.nrows() != 1 {
                    return vec![f64::NEG_INFINITY; self.energies.len()];
                }
                let r = y * x.row(0).adjoint();
                let energy = x.norm_squared() / 2.0;
                self.columns.column_iter().zip(&self.energies).map(|(a, e)| a.dotc(&r).re - energy * e).collect()
            }
        }
    }
}

/// Index of the largest value, lowest index on ties.
fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Vertex of the parabola through `(−1, m)`, `(0, c)`, `(1, p)`; zero when not concave.
fn parabola_vertex(m: f64, c: f64, p: f64) -> f64 {
    let curvature = m - 2.0 * c + p;
    if curvature < 0.0 {
        ((m - p) / (2.0 * curvature)).clamp(-1.0, 1.0)
    } else {
        0.0
    }
}

/// Peak of the least-squares quadratic through a 3×3 patch, `patch[j][i]`
/// at (az offset `i − 1`, el offset `j − 1`), in cell units. Falls back to
/// separate parabolas when the fitted surface is not concave.
pub fn quadratic_peak(patch: [[f64; 3]; 3]) -> (f64, f64) {
    let f = |i: i32, j: i32| patch[(j + 1) as usize][(i + 1) as usize];
    let mut bx = 0.0;
    let mut by = 0.0;
    let mut xx = 0.0;
    let mut yy = 0.0;
    let mut xy = 0.0;
    let mut total = 0.0;
    for j in -1..=1 {
        for i in -1..=1 {
            let v = f(i, j);
            total += v;
            bx += i as f64 * v;
            by += j as f64 * v;
            xx += (i * i) as f64 * v;
            yy += (j * j) as f64 * v;
            xy += (i * j) as f64 * v;
        }
    }
    let b = bx / 6.0;
    let c = by / 6.0;
    let d = (xx - 2.0 * total / 3.0) / 2.0;
    let e = (yy - 2.0 * total / 3.0) / 2.0;
    let g = xy / 4.0;
    // Stationary point of b x + c y + d x² + e y² + g x y.
    let det = 4.0 * d * e - g * g;
    if d < 0.0 && det > 0.0 {
        let x = (g * c - 2.0 * e * b) / det;
        let y = (g * b - 2.0 * d * c) / det;
        if x.abs() <= 1.0 && y.abs() <= 1.0 {
            return (x, y);
        }
    }
    (parabola_vertex(f(-1, 0), f(0, 0), f(1, 0)), parabola_vertex(f(0, -1), f(0, 0), f(0, 1)))
}

fn interpolate(points: &[f64], i: usize, offset: f64) -> f64 {
    if offset > 0.0 {
        points[i] + offset * (points[i + 1] - points[i])
    } else if offset < 0.0 {
        points[i] + offset * (points[i] - points[i - 1])
    } else {
        points[i]
    }
}

fn refine(grid: &AngleGrid, values: &[f64], z: usize) -> AnglePair {
    let (n_az, n_el) = (grid.az.len(), grid.el.len());
    let (i, j) = (z % n_az, z / n_az);
    let has_az = i > 0 && i + 1 < n_az;
    let has_el = j > 0 && j + 1 < n_el;
    let at = |di: i64, dj: i64| values[grid.index((i as i64 + di) as usize, (j as i64 + dj) as usize)];
    let (x, y) = if has_az && has_el {
        let mut patch = [[0.0; 3]; 3];
        for (dj, row) in patch.iter_mut().enumerate() {
            for (di, v) in row.iter_mut().enumerate() {
                *v = at(di as i64 - 1, dj as i64 - 1);
            }
        }
        quadratic_peak(patch)
    } else {
        let x = if has_az { parabola_vertex(at(-1, 0), at(0, 0), at(1, 0)) } else { 0.0 };
        let y = if has_el { parabola_vertex(at(0, -1), at(0, 0), at(0, 1)) } else { 0.0 };
        (x, y)
    };
    AnglePair { az: interpolate(&grid.az, i, x), el: interpolate(&grid.el, j, y) }
}

/// Single-target grid ML estimate.
pub fn ml_estimate(
    batch: &SnapshotBatch,
    dictionary: &Dictionary,
    statistic: MlStatistic,
    refinement: Refinement,
) -> AnglePair {
    let values = dictionary.statistic(batch, statistic);
    let z = argmax(&values);
    match refinement {
        Refinement::None => dictionary.grid.point(z),
        Refinement::Parabolic => refine(&dictionary.grid, &values, z),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub trials: usize,
    pub master_seed: u64,
    pub refinement: Refinement,
    pub statistic: MlStatistic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult {
    pub empirical_rmse_az: f64,
    pub empirical_rmse_el: f64,
    pub crlb_rmse_az: f64,
    pub crlb_rmse_el: f64,
    /// Delta-method standard errors of the empirical RMSE values.
    pub std_error_az: f64,
    pub std_error_el: f64,
    pub trials: usize,
}

fn rmse_and_std_error(squared: &[f64]) -> (f64, f64) {
    let n = squared.len() as f64;
    let mse = squared.iter().sum::<f64>() / n;
    let rmse = mse.sqrt();
    if n < 2.0 || rmse == 0.0 {
        return (rmse, 0.0);
    }
    let var = squared.iter().map(|s| (s - mse).powi(2)).sum::<f64>() / (n - 1.0);
    (rmse, var.sqrt() / n.sqrt() / (2.0 * rmse))
}

/// Monte Carlo RMSE of the grid ML estimator for the scenario's single
/// target at `true_angle`. Trial `i` draws its noise from seed
/// `master_seed ^ i`.
pub fn run_monte_carlo(
    scenario: &Scenario,
    weights: &IrsWeights,
    true_angle: AnglePair,
    dictionary: &Dictionary,
    cfg: &McConfig,
) -> Result<McResult> {
    if scenario.targets.len() != 1 {
        return Err(Error::Estimator(format!("Monte Carlo needs exactly one target, got {}", scenario.targets.len())));
    }
    if cfg.trials == 0 {
        return Err(Error::Estimator("trials must be at least 1".into()));
    }
    let manifold = effective_manifold(scenario, weights, &[true_angle])?;
    let bound = crb_for_manifold(scenario, &manifold, CrbOptions::default())?.per_target[0];
    let errors: Vec<(f64, f64)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let batch = synthesize(scenario, &manifold, cfg.master_seed ^ i as u64);
            let est = ml_estimate(&batch, dictionary, cfg.statistic, cfg.refinement);
            ((est.az - true_angle.az).powi(2), (est.el - true_angle.el).powi(2))
        })
        .collect();
    let (az_sq, el_sq): (Vec<f64>, Vec<f64>) = errors.into_iter().unzip();
    let (empirical_rmse_az, std_error_az) = rmse_and_std_error(&az_sq);
    let (empirical_rmse_el, std_error_el) = rmse_and_std_error(&el_sq);
    Ok(McResult {
        empirical_rmse_az,
        empirical_rmse_el,
        crlb_rmse_az: bound.rmse_az,
        crlb_rmse_el: bound.rmse_el,
        std_error_az,
        std_error_el,
        trials: cfg.trials,
    })
}
