//! Static bending of the uniformly loaded clamped circular plate.
//!
//! The classical Kirchhoff solution for uniform pressure p on a clamped
//! plate of radius r with flexural rigidity D:
//!
//! ```text
//! w(rho)  = p (r^2 - rho^2)^2 / (64 D)          deflection
//! w0      = p r^4 / (64 D)                      center deflection
//! M_r     = (p/16) [ r^2 (1+nu) - rho^2 (3+nu) ]
//! M_t     = (p/16) [ r^2 (1+nu) - rho^2 (1+3nu) ]
//! ```
//!
//! Top-surface stresses follow from sigma = 6 M / t^2 with the total stack
//! thickness, and the von Mises stress from the plane-stress pair
//! (sigma_r, sigma_t). For uniform pressure the von Mises maximum sits at
//! the clamped edge.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laminate::SectionProps;

/// Sampled bending-moment and stress profiles along the radius.
#[derive(Debug, Clone, Serialize)]
pub struct StressField {
    /// Sample radii (m), 0 .. r inclusive.
    pub radii_m: Vec<f64>,
    /// Radial bending moment per unit length (N).
    pub radial_moment_n: Vec<f64>,
    /// Tangential bending moment per unit length (N).
    pub tangential_moment_n: Vec<f64>,
    /// Top-surface von Mises stress (Pa).
    pub von_mises_top_pa: Vec<f64>,
}

/// Default number of radial samples.
pub const DEFAULT_STRESS_POINTS: usize = 101;

/// Uniform-load clamped-plate solution: center deflection and stress field
/// on `n_points` radial samples.
pub fn static_bending_sampled(
    section: &SectionProps,
    plate_radius_m: f64,
    pressure_pa: f64,
    n_points: usize,
) -> Result<(f64, StressField)> {
    if !(plate_radius_m > 0.0) {
        return Err(Error::InvalidInput(format!(
            "plate radius must be > 0 (got {plate_radius_m})"
        )));
    }
    if !(pressure_pa >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "pressure must be >= 0 (got {pressure_pa})"
        )));
    }
    if n_points < 2 {
        return Err(Error::InvalidInput("need at least 2 radial samples".into()));
    }
    let d = section.flexural_rigidity_nm;
    let nu = section.effective_poisson;
    let t = section.total_thickness_m;
    let r2 = plate_radius_m * plate_radius_m;

    let w0 = pressure_pa * r2 * r2 / (64.0 * d);

    let mut radii = Vec::with_capacity(n_points);
    let mut mr = Vec::with_capacity(n_points);
    let mut mt = Vec::with_capacity(n_points);
    let mut vm = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let rho = plate_radius_m * i as f64 / (n_points - 1) as f64;
        let rho2 = rho * rho;
        let m_r = pressure_pa / 16.0 * (r2 * (1.0 + nu) - rho2 * (3.0 + nu));
        let m_t = pressure_pa / 16.0 * (r2 * (1.0 + nu) - rho2 * (1.0 + 3.0 * nu));
        let s_r = 6.0 * m_r / (t * t);
        let s_t = 6.0 * m_t / (t * t);
        radii.push(rho);
        mr.push(m_r);
        mt.push(m_t);
        vm.push((s_r * s_r - s_r * s_t + s_t * s_t).sqrt());
    }

    Ok((
        w0,
        StressField {
            radii_m: radii,
            radial_moment_n: mr,
            tangential_moment_n: mt,
            von_mises_top_pa: vm,
        },
    ))
}

/// [`static_bending_sampled`] with the default sample count.
pub fn static_bending(
    section: &SectionProps,
    plate_radius_m: f64,
    pressure_pa: f64,
) -> Result<(f64, StressField)> {
    static_bending_sampled(section, plate_radius_m, pressure_pa, DEFAULT_STRESS_POINTS)
}

/// Deflection at radius rho: `w = w0 (1 - (rho/r)^2)^2`.
pub fn deflection_at(w0: f64, plate_radius_m: f64, rho_m: f64) -> Result<f64> {
    if !(0.0..=plate_radius_m).contains(&rho_m) {
        return Err(Error::Domain(format!(
            "sample radius {rho_m} outside [0, {plate_radius_m}]"
        )));
    }
    let x = rho_m / plate_radius_m;
    let u = 1.0 - x * x;
    Ok(w0 * u * u)
}
