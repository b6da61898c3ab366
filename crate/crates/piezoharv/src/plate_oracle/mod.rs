//! Independent numerical oracles for the lumped-element closed forms.
//!
//! Everything here is derived by a route independent of the closed-form
//! model chain: Bessel-root eigenvalues from the clamped-plate
//! characteristic equation, a polynomial Rayleigh-Ritz modal solver, the
//! classical static bending solution, and adaptive Gauss-Kronrod
//! quadrature. The model formulas are validated against these oracles in
//! the test suites.

mod bending;
mod bessel;
mod quad;
mod ritz;

pub use bending::{
    deflection_at, static_bending, static_bending_sampled, StressField, DEFAULT_STRESS_POINTS,
};
pub use bessel::{bessel_i, bessel_j, clamped_plate_eigenvalue, mode_profile};
pub use quad::adaptive_quad;
pub use ritz::{assemble, basis_deriv, basis_eval, rayleigh_ritz_solve, RitzSolution};

use serde::Serialize;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::laminate::SectionProps;

/// Fundamental clamped-plate eigenvalue lambda_01^2, computed once from the
/// characteristic equation rather than hard-coded.
pub fn lambda01_sq() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        clamped_plate_eigenvalue(0, 1).expect("fundamental clamped-plate eigenvalue")
    })
}

/// Frequency of a mode with eigenvalue `lambda_sq` on a plate of radius r:
/// `f = (lambda^2 / 2 pi r^2) sqrt(D / mu)`.
pub fn frequency_from_lambda_sq(lambda_sq: f64, section: &SectionProps, plate_radius_m: f64) -> f64 {
    lambda_sq / (2.0 * PI * plate_radius_m * plate_radius_m)
        * (section.flexural_rigidity_nm / section.areal_mass_kg_m2).sqrt()
}

/// One natural mode of the clamped circular plate.
#[derive(Debug, Clone, Serialize)]
pub struct ModalResult {
    /// Nodal diameters.
    pub n: u32,
    /// Nodal circles (1 = fundamental of the family).
    pub m: u32,
    /// Dimensionless eigenvalue lambda^2.
    pub lambda_sq: f64,
    pub frequency_hz: f64,
    /// Radial profile sampled on a uniform grid over [0, 1], normalized to
    /// the center value when nonzero, otherwise to the profile maximum.
    pub mode_shape: Vec<f64>,
}

/// Number of samples in a stored mode-shape profile.
pub const MODE_SHAPE_POINTS: usize = 101;

fn normalize_shape(mut shape: Vec<f64>) -> Vec<f64> {
    let center = shape[0];
    let scale = if center.abs() > 1e-9 {
        center
    } else {
        shape
            .iter()
            .cloned()
            .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc })
    };
    if scale != 0.0 {
        for v in &mut shape {
            *v /= scale;
        }
    }
    shape
}

/// Axisymmetric modes by Rayleigh-Ritz with an internal basis of
/// `max(2 n_modes, 8)` trial functions.
pub fn rayleigh_ritz_modes(
    section: &SectionProps,
    plate_radius_m: f64,
    n_modes: usize,
) -> Result<Vec<ModalResult>> {
    if n_modes < 1 {
        return Err(Error::InvalidInput("n_modes must be >= 1".into()));
    }
    let basis = (2 * n_modes).max(8);
    let sol = rayleigh_ritz_solve(basis, section.effective_poisson)?;
    let mut out = Vec::with_capacity(n_modes);
    for j in 0..n_modes {
        let lambda_sq = sol.lambda4[j].sqrt();
        let shape: Vec<f64> = (0..MODE_SHAPE_POINTS)
            .map(|i| sol.eval(j, i as f64 / (MODE_SHAPE_POINTS - 1) as f64))
            .collect();
        out.push(ModalResult {
            n: 0,
            m: j as u32 + 1,
            lambda_sq,
            frequency_hz: frequency_from_lambda_sq(lambda_sq, section, plate_radius_m),
            mode_shape: normalize_shape(shape),
        });
    }
    Ok(out)
}

/// The lowest `n_modes` modes across nodal-diameter families 0..=`max_diameters`,
/// eigenvalues from the Bessel characteristic equation, sorted by frequency.
pub fn modal_ladder(
    section: &SectionProps,
    plate_radius_m: f64,
    n_modes: usize,
    max_diameters: u32,
) -> Result<Vec<ModalResult>> {
    if n_modes < 1 {
        return Err(Error::InvalidInput("n_modes must be >= 1".into()));
    }
    let mut modes: Vec<(u32, u32, f64)> = Vec::new();
    for n in 0..=max_diameters {
        for m in 1..=n_modes as u32 {
            match clamped_plate_eigenvalue(n, m) {
                Ok(l2) => modes.push((n, m, l2)),
                // Higher roots of high families fall outside the scan
                // window; they are far above the requested ladder anyway.
                Err(Error::Numeric(_)) => break,
                Err(e) => return Err(e),
            }
        }
    }
    modes.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());
    if modes.len() < n_modes {
        return Err(Error::Numeric(format!(
            "only {} modes available within the eigenvalue search window (requested {n_modes})",
            modes.len()
        )));
    }
    modes.truncate(n_modes);

    let out = modes
        .into_iter()
        .map(|(n, m, lambda_sq)| {
            let lambda = lambda_sq.sqrt();
            let shape: Vec<f64> = (0..MODE_SHAPE_POINTS)
                .map(|i| mode_profile(n, lambda, i as f64 / (MODE_SHAPE_POINTS - 1) as f64))
                .collect();
            ModalResult {
                n,
                m,
                lambda_sq,
                frequency_hz: frequency_from_lambda_sq(lambda_sq, section, plate_radius_m),
                mode_shape: normalize_shape(shape),
            }
        })
        .collect();
    Ok(out)
}
