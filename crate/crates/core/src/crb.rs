//! Fisher information and Cramér–Rao bound for the `2k` IRS-frame angles.
//!
//! Parameters are ordered interleaved per target, `(az_0, el_0, az_1, el_1, …)`,
//! which is the ordering the Kronecker expansion `S_fᵀ ⊗ 1₂ₓ₂` lines up
//! with. [`CrbResult::block_layout`] permutes to the az-block / el-block
//! presentation.
//!
//! ```text
//! H = Zᴴ Z
//! J = (2K / σ_w²) · Re[ H ⊙ (S_fᵀ ⊗ 1₂ₓ₂) ]
//! C = J⁻¹
//! ```

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{CrbError, Result};
use crate::geometry::AnglePair;
use crate::irs_weights::IrsWeights;
use crate::signal_model::{effective_manifold, EffectiveManifold, Scenario};
use crate::CMatrix;

/// Largest FIM condition number accepted before reporting [`CrbError::SingularFim`].
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct CrbInput {
    /// `M × 2k` projected derivative matrix.
    pub zbar: CMatrix,
    /// `k × k` source correlation `S_f`.
    pub source_power: CMatrix,
    pub noise_variance: f64,
    pub snapshots: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetBound {
    pub var_az: f64,
    pub var_el: f64,
    pub rmse_az: f64,
    pub rmse_el: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrbResult {
    /// Interleaved `2k × 2k` FIM.
    pub fim: DMatrix<f64>,
    /// Interleaved `2k × 2k` bound matrix.
    pub crb: DMatrix<f64>,
    pub per_target: Vec<TargetBound>,
    pub condition_number: f64,
}

impl CrbResult {
    /// Bound matrix in az-block / el-block order.
    pub fn block_layout(&self) -> DMatrix<f64> {
        to_block_layout(&self.crb)
    }

    pub fn fim_block_layout(&self) -> DMatrix<f64> {
        to_block_layout(&self.fim)
    }
}

/// Symmetric permutation from interleaved `(az_i, el_i)` order to
/// `[az_0..az_k, el_0..el_k]`.
pub fn to_block_layout(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let k = n / 2;
    let src = |i: usize| if i < k { 2 * i } else { 2 * (i - k) + 1 };
    DMatrix::from_fn(n, n, |r, c| m[(src(r), src(c))])
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CrbOptions {
    /// Replace `Z` by `P⊥_Ā Z` (unknown-amplitude variant).
    pub projected: bool,
}

pub fn build_h(zbar: &CMatrix) -> CMatrix {
    zbar.adjoint() * zbar
}

/// Sample correlation `(1/K) Σ_k x̄(k) x̄(k)ᴴ` of the known source samples.
pub fn source_power_matrix(samples: &CMatrix) -> CMatrix {
    let snapshots = samples.ncols() as f64;
    samples * samples.adjoint() / Complex64::new(snapshots, 0.0)
}

pub fn assemble_fim(input: &CrbInput) -> Result<DMatrix<f64>, CrbError> {
    let n = input.zbar.ncols();
    let k = input.source_power.nrows();
    if n != 2 * k || input.source_power.ncols() != k {
        return Err(CrbError::Dimension(format!("Z has {n} columns but S_f is {}×{}", k, input.source_power.ncols())));
    }
    let h = build_h(&input.zbar);
    let scale = 2.0 * input.snapshots as f64 / input.noise_variance;
    Ok(DMatrix::from_fn(n, n, |a, b| scale * (h[(a, b)] * input.source_power[(b / 2, a / 2)]).re))
}

pub fn crb_from_fim(fim: &DMatrix<f64>) -> Result<CrbResult, CrbError> {
    let n = fim.nrows();
    if n == 0 || n != fim.ncols() || !n.is_multiple_of(2) {
        return Err(CrbError::Dimension(format!("FIM must be square with even size, got {:?}", fim.shape())));
    }
    if !fim.iter().all(|v| v.is_finite()) {
        return Err(CrbError::SingularFim { condition: f64::INFINITY });
    }
    let eig = SymmetricEigen::new(fim.clone());
    let max = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let min = eig.eigenvalues.min();
    let condition = if min > 0.0 { max / min } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(CrbError::SingularFim { condition });
    }
    let inv_diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|v| 1.0 / v));
    let crb = &eig.eigenvectors * inv_diag * eig.eigenvectors.transpose();
    let per_target = (0..n / 2)
        .map(|i| {
            let var_az = crb[(2 * i, 2 * i)].max(0.0);
            let var_el = crb[(2 * i + 1, 2 * i + 1)].max(0.0);
            TargetBound { var_az, var_el, rmse_az: var_az.sqrt(), rmse_el: var_el.sqrt() }
        })
        .collect();
    Ok(CrbResult { fim: fim.clone(), crb, per_target, condition_number: condition })
}

/// `I − Ā Ā⁺`, the projector onto the orthogonal complement of `range(Ā)`.
pub fn orthogonal_projector(abar: &CMatrix) -> CMatrix {
    let rows = abar.nrows();
    let pinv = abar.clone().pseudo_inverse(1e-12 * abar.norm()).expect("pseudo-inverse tolerance is non-negative");
    CMatrix::identity(rows, rows) - abar * pinv
}

pub fn crb_input(scenario: &Scenario, manifold: &EffectiveManifold, opts: CrbOptions) -> CrbInput {
    let zbar =
        if opts.projected { orthogonal_projector(&manifold.abar) * &manifold.zbar } else { manifold.zbar.clone() };
    CrbInput {
        zbar,
        source_power: source_power_matrix(&scenario.source_samples()),
        noise_variance: scenario.noise_variance,
        snapshots: scenario.snapshots,
    }
}

pub fn crb_for_manifold(scenario: &Scenario, manifold: &EffectiveManifold, opts: CrbOptions) -> Result<CrbResult> {
    let fim = assemble_fim(&crb_input(scenario, manifold, opts))?;
    Ok(crb_from_fim(&fim)?)
}

pub fn crb_for_scenario(
    scenario: &Scenario,
    weights: &IrsWeights,
    target_angles: &[AnglePair],
    opts: CrbOptions,
) -> Result<CrbResult> {
    let manifold = effective_manifold(scenario, weights, target_angles)?;
    crb_for_manifold(scenario, &manifold, opts)
}
