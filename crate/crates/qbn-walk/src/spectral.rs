//! Spectral diagnostics: simultaneous toggle-eigenvectors, approximate
//! eigenvector residuals for the shifted operator, analytic finite-section
//! spectra and interval-filling reports.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::TruncatedOperator;
use crate::state::State;
use crate::vertex::{level_dim, level_mask, level_vertices, Vertex};
use crate::weight::{Weight, ENUM_LEVEL_LIMIT};

/// Residual tolerance for verified analytic eigenvalues.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-10;

/// Extra modes applied on top of the construction level when approximating
/// the untruncated shifted operator in [`weyl_residual`].
pub const RESIDUAL_LEVEL_MARGIN: usize = 6;

fn check_enum_level(level: usize) -> Result<()> {
    if level > ENUM_LEVEL_LIMIT {
        Err(Error::EnumerationLimit {
            level,
            max: ENUM_LEVEL_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Sign pattern selecting the toggle eigenvalue for mode `k`: +1 when
/// `k ∈ σ`, -1 otherwise.
pub fn eigen_sign(sigma: Vertex, k: usize) -> f64 {
    if sigma.contains(k) {
        1.0
    } else {
        -1.0
    }
}

/// The unit vector `2^{-(n+1)/2} Σ_{τ⊆{0..n}} (Π_{k∈τ} sign_σ(k)) Z_τ`:
/// a simultaneous eigenvector of every toggle operator at the construction
/// level, with eigenvalue `eigen_sign(σ, k)` for mode `k <= n`.
pub fn weyl_vector(sigma: Vertex, level: usize) -> Result<State> {
    check_enum_level(level)?;
    let scale = 1.0 / (level_dim(level) as f64).sqrt();
    let entries = level_vertices(level).map(|tau| {
        let mut sign = 1.0;
        for k in 0..=level {
            if tau.contains(k) {
                sign *= eigen_sign(sigma, k);
            }
        }
        (tau, Complex64::new(sign * scale, 0.0))
    });
    State::from_amplitudes(entries)
}

/// Applies the shifted operator at level `m >= n` to the level-`n` vector
/// for `σ` and measures how far it is from the exact eigen-relation at
/// `mu_w(σ ∩ {0..m})`. Returns `(residual, 2 * tail(n))`; the proof of the
/// spectrum estimate guarantees residual <= bound.
pub fn weyl_residual(
    weight: &Weight,
    sigma: Vertex,
    level: usize,
    apply_level: usize,
) -> Result<(f64, f64)> {
    check_enum_level(level)?;
    check_enum_level(apply_level)?;
    let apply_level = weight.clamp_level(apply_level.max(level));
    let u = weyl_vector(sigma, level)?;
    let op = TruncatedOperator::shifted(weight.clone(), apply_level);
    let mu = weight.mu(Vertex::from_bits(sigma.bits() & level_mask(apply_level)));
    let residual = op
        .apply(&u)?
        .sub(&u.scaled(Complex64::new(mu, 0.0)))
        .norm();
    Ok((residual, 2.0 * weight.tail(level)))
}

/// All `2^(n+1)` finite-section eigenvalues `Σ_{k<=n} (±1) w(k)`, sorted
/// ascending, each one verified against its eigenvector by residual norm.
/// For large sections the verification samples a deterministic subset.
pub fn analytic_spectrum(weight: &Weight, level: usize) -> Result<Vec<f64>> {
    check_enum_level(level)?;
    let level = weight.clamp_level(level);
    let op = TruncatedOperator::adjacency(weight.clone(), level);
    let dim = level_dim(level);
    let verify_stride = (dim / 256).max(1);
    let mut values = Vec::with_capacity(dim);
    for (idx, tau) in level_vertices(level).enumerate() {
        let lambda: f64 = (0..=level)
            .map(|k| eigen_sign(tau, k) * weight.value(k).unwrap())
            .sum();
        if idx % verify_stride == 0 {
            let e = weyl_vector(tau, level)?;
            let residual = op
                .apply(&e)?
                .sub(&e.scaled(Complex64::new(lambda, 0.0)))
                .norm();
            if residual > EIGEN_RESIDUAL_TOL {
                return Err(Error::InvalidWeight(format!(
                    "eigen residual {residual:.3e} at tau={tau} exceeds {EIGEN_RESIDUAL_TOL:.1e}"
                )));
            }
        }
        values.push(lambda);
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(values)
}

/// Per-σ entry of a [`SpectralReport`].
#[derive(Clone, Debug, Serialize)]
pub struct WeylEntry {
    pub sigma: String,
    pub mu: f64,
    pub residual: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Structured result of the spectrum-level checks at one truncation level.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub weight: String,
    pub level: usize,
    pub apply_level: usize,
    pub entries: Vec<WeylEntry>,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_max_interior_gap: f64,
    pub grid_symmetric: bool,
    pub shifted_grid_in_range: bool,
    pub pass: bool,
}

/// Assemble the full spectral report: Weyl residuals over a σ panel plus the
/// finite-section eigenvalue grid summary.
pub fn spectrum_fill_report(
    weight: &Weight,
    level: usize,
    extra_sigmas: &[Vertex],
) -> Result<SpectralReport> {
    check_enum_level(level)?;
    let level = weight.clamp_level(level);
    let apply_level = weight.clamp_level(
        (level + RESIDUAL_LEVEL_MARGIN).min(ENUM_LEVEL_LIMIT),
    );

    let mut panel: Vec<Vertex> = vec![
        Vertex::EMPTY,
        Vertex::singleton(0)?,
        Vertex::from_modes(&[1, 3])?,
        Vertex::from_bits(level_mask(level)),
    ];
    panel.extend_from_slice(extra_sigmas);
    panel.dedup();

    let mut entries = Vec::with_capacity(panel.len());
    let mut pass = true;
    for sigma in panel {
        let (residual, bound) = weyl_residual(weight, sigma, level, apply_level)?;
        let ok = residual <= bound + 1e-12;
        pass &= ok;
        entries.push(WeylEntry {
            sigma: sigma.to_string(),
            mu: weight.mu(sigma),
            residual,
            bound,
            pass: ok,
        });
    }

    let grid = analytic_spectrum(weight, level)?;
    let grid_min = grid[0];
    let grid_max = *grid.last().unwrap();
    let grid_max_interior_gap = grid
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0f64, f64::max);
    let grid_symmetric = grid
        .iter()
        .zip(grid.iter().rev())
        .all(|(a, b)| (a + b).abs() < 1e-12);
    let total = weight.total();
    let shifted_grid_in_range = grid
        .iter()
        .all(|lambda| (lambda + total) / 2.0 >= -1e-12 && (lambda + total) / 2.0 <= total + 1e-12);

    let level_sum = weight.level_sum(level);
    pass &= grid_symmetric && shifted_grid_in_range;
    pass &= (grid_min + level_sum).abs() < 1e-12 && (grid_max - level_sum).abs() < 1e-12;

    Ok(SpectralReport {
        weight: weight.label().to_string(),
        level,
        apply_level,
        entries,
        grid_min,
        grid_max,
        grid_max_interior_gap,
        grid_symmetric,
        shifted_grid_in_range,
        pass,
    })
}
