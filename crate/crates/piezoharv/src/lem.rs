//! Lumped-element electromechanical model of the clamped circular harvester.
//!
//! The distributed plate is reduced to a single-mode oscillator through the
//! clamped deflection shape `phi(x) = (1 - x^2)^2` (x the normalized
//! radius). The derived elements are
//!
//! ```text
//! C     = eps0 epsr pi r_pm^2 / t_pvdf          plate capacitance
//! I_m   = gamma phi'(gamma) / (1 - nu)
//!       = -4 gamma^2 (1 - gamma^2) / (1 - nu)   coupling integral
//! I_e   = int_0^1 [x phi''^2 + 2 nu phi' phi'' + phi'^2/x] dx = 32/3
//! 1/k_m = r^2 / (2 pi D I_e)                    compliance
//! eta   = 2 pi I_m e31f z_p                     coupling ratio (C/m)
//! f_n   = (lambda01^2 / 2 pi r^2) sqrt(D / mu)  natural frequency
//! Q     = 1 / (2 zeta)                          quality factor
//! ```
//!
//! and the harmonic response is the standard second-order resonator
//!
//! ```text
//! H(f) = (F_eff / k_m) / (1 - u^2 + 2 j zeta u),  u = f / f_n
//! ```
//!
//! with modal force `F_eff = p pi r^2 / 3` for uniform pressure p (the
//! integral of phi over the plate), so the f -> 0 limit reproduces the
//! classical static deflection `p r^4 / 64 D` exactly. The open-circuit
//! voltage dumps the coupled charge on the plate capacitance,
//! `V_oc = eta w / C`.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::laminate::{modal_mass, ElectrodeDisk, LaminateStack, SectionProps};
use crate::materials::{MaterialProps, EPSILON_0};
use crate::plate_oracle;

/// Clamped-plate deflection shape `phi(x) = (1 - x^2)^2` on [0, 1].
pub fn shape_function(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "normalized radius {x} outside [0, 1]"
        )));
    }
    let u = 1.0 - x * x;
    Ok(u * u)
}

/// phi'(x) = -4 x (1 - x^2), used by the coupling integral and oracles.
pub fn shape_function_deriv(x: f64) -> f64 {
    -4.0 * x * (1.0 - x * x)
}

/// phi''(x) = -4 + 12 x^2.
pub fn shape_function_deriv2(x: f64) -> f64 {
    -4.0 + 12.0 * x * x
}

/// Integrand of the strain-energy integral for the model shape function,
/// with the removable 1/x singularity handled at x = 0.
pub fn strain_energy_integrand(x: f64, nu: f64) -> f64 {
    let d1 = shape_function_deriv(x);
    let d2 = shape_function_deriv2(x);
    let over_x = if x == 0.0 { 0.0 } else { d1 * d1 / x };
    x * d2 * d2 + 2.0 * nu * d1 * d2 + over_x
}

fn check_poisson(nu: f64) -> Result<()> {
    if !(nu > 0.0 && nu < 0.5) {
        return Err(Error::Domain(format!(
            "Poisson ratio {nu} outside (0, 0.5)"
        )));
    }
    Ok(())
}

/// Piezoelectric coupling integral over the electrode region [0, gamma]:
/// `I_m = gamma phi'(gamma) / (1 - nu) = -4 gamma^2 (1 - gamma^2) / (1 - nu)`.
///
/// Full coverage (gamma = 1) cancels exactly because phi'(1) = 0.
pub fn coupling_integral(gamma: f64, nu: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain(format!(
            "electrode coverage {gamma} outside (0, 1]"
        )));
    }
    check_poisson(nu)?;
    let g2 = gamma * gamma;
    Ok(-4.0 * g2 * (1.0 - g2) / (1.0 - nu))
}

/// Strain-energy integral of the model shape function. The Poisson
/// cross-term integrates to a vanishing boundary term, leaving 32/3.
pub fn strain_integral(nu: f64) -> Result<f64> {
    check_poisson(nu)?;
    Ok(32.0 / 3.0)
}

/// Plate capacitance `C = eps0 epsr pi r_pm^2 / t_pvdf` of the piezo layer
/// under an electrode of radius `r_pm`.
pub fn capacitance(mat: &MaterialProps, r_pm_m: f64, t_pvdf_m: f64) -> Result<f64> {
    if !(mat.rel_permittivity > 0.0) {
        return Err(Error::InvalidInput(format!(
            "material '{}' is not a dielectric (rel_permittivity = {})",
            mat.name, mat.rel_permittivity
        )));
    }
    if !(r_pm_m > 0.0) || !(t_pvdf_m > 0.0) {
        return Err(Error::InvalidInput(
            "electrode radius and piezo thickness must be > 0".into(),
        ));
    }
    Ok(EPSILON_0 * mat.rel_permittivity * PI * r_pm_m * r_pm_m / t_pvdf_m)
}

/// Mechanical compliance `1/k_m = r^2 / (2 pi D I_e)` (m/N).
pub fn compliance(section: &SectionProps, plate_radius_m: f64, strain_integral: f64) -> f64 {
    plate_radius_m * plate_radius_m
        / (2.0 * PI * section.flexural_rigidity_nm * strain_integral)
}

/// Electromechanical coupling ratio `eta = 2 pi I_m e31f z_p` (C/m),
/// charge per unit center deflection.
pub fn coupling_ratio(coupling_integral: f64, e31f: f64, z_p_m: f64) -> f64 {
    2.0 * PI * coupling_integral * e31f * z_p_m
}

/// Bending moment per unit length supplied by the piezo layer at drive
/// voltage `v_in`: `M = -e31f v_in z_p` (N).
pub fn piezo_moment(e31f: f64, v_in: f64, z_p_m: f64) -> f64 {
    -e31f * v_in * z_p_m
}

/// Fundamental natural frequency `f_n = (lambda01^2 / 2 pi r^2) sqrt(D/mu)`,
/// with lambda01^2 computed from the clamped-plate characteristic equation.
pub fn natural_frequency(section: &SectionProps, plate_radius_m: f64) -> f64 {
    plate_oracle::frequency_from_lambda_sq(plate_oracle::lambda01_sq(), section, plate_radius_m)
}

/// Quality factor `Q = 1 / (2 zeta)` of the underdamped resonator.
pub fn damping_q(zeta: f64) -> Result<f64> {
    if !(zeta > 0.0) {
        return Err(Error::Domain(format!("damping ratio {zeta} must be > 0")));
    }
    if zeta >= 1.0 {
        return Err(Error::Domain(format!(
            "damping ratio {zeta} >= 1: overdamped regime not modeled"
        )));
    }
    Ok(1.0 / (2.0 * zeta))
}

/// Optional top electrode disk resting on the stack (mass only). Its radius
/// is the electrode-coverage fraction of the plate radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopElectrode {
    pub material: MaterialProps,
    pub thickness_m: f64,
}

/// Geometry, stack, electrode coverage, and damping of one harvester.
#[derive(Debug, Clone, Serialize)]
pub struct HarvesterModel {
    pub stack: LaminateStack,
    pub plate_radius_m: f64,
    /// Normalized top-electrode radius gamma = r_pm / r in (0, 1].
    pub electrode_coverage: f64,
    /// Damping ratio zeta in (0, 1); a measured or assumed input.
    pub damping_ratio: f64,
    /// Mass-only electrode disk of radius `electrode_coverage * plate_radius`.
    pub top_electrode: Option<TopElectrode>,
}

impl HarvesterModel {
    pub fn new(
        stack: LaminateStack,
        plate_radius_m: f64,
        electrode_coverage: f64,
        damping_ratio: f64,
    ) -> Result<Self> {
        if !(plate_radius_m > 0.0) {
            return Err(Error::InvalidInput(format!(
                "plate radius must be > 0 (got {plate_radius_m})"
            )));
        }
        if !(electrode_coverage > 0.0 && electrode_coverage <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "electrode coverage must lie in (0, 1] (got {electrode_coverage})"
            )));
        }
        if !(damping_ratio > 0.0 && damping_ratio < 1.0) {
            return Err(Error::InvalidInput(format!(
                "damping ratio must lie in (0, 1) (got {damping_ratio})"
            )));
        }
        if stack.piezo_layer().is_none() {
            return Err(Error::InvalidInput(
                "harvester stack needs exactly one piezoelectric layer".into(),
            ));
        }
        Ok(HarvesterModel {
            stack,
            plate_radius_m,
            electrode_coverage,
            damping_ratio,
            top_electrode: None,
        })
    }

    pub fn with_top_electrode(mut self, material: MaterialProps, thickness_m: f64) -> Result<Self> {
        if !(thickness_m >= 0.0) {
            return Err(Error::InvalidInput(
                "top electrode thickness must be >= 0".into(),
            ));
        }
        material.validate()?;
        self.top_electrode = Some(TopElectrode {
            material,
            thickness_m,
        });
        Ok(self)
    }

    /// Top-electrode radius r_pm = gamma * r (m).
    pub fn top_electrode_radius_m(&self) -> f64 {
        self.electrode_coverage * self.plate_radius_m
    }

    pub fn section(&self) -> SectionProps {
        self.stack.section_props()
    }

    fn electrode_disk(&self) -> Option<ElectrodeDisk> {
        self.top_electrode.as_ref().map(|e| ElectrodeDisk {
            material: e.material.clone(),
            thickness_m: e.thickness_m,
            radius_m: self.top_electrode_radius_m(),
        })
    }

    /// Derive the full lumped-element parameter set.
    pub fn params(&self) -> Result<LemParams> {
        let section = self.section();
        let (_, piezo) = self
            .stack
            .piezo_layer()
            .ok_or_else(|| Error::InvalidInput("stack has no piezoelectric layer".into()))?;
        let z_p = section
            .piezo_offset_m
            .expect("piezo layer implies an offset");
        let nu = section.effective_poisson;

        let i_m = coupling_integral(self.electrode_coverage, nu)?;
        let i_e = strain_integral(nu)?;
        let c = capacitance(&piezo.material, self.top_electrode_radius_m(), piezo.thickness_m)?;
        let compliance_m_per_n = compliance(&section, self.plate_radius_m, i_e);
        let eta = coupling_ratio(i_m, piezo.material.e31f, z_p);
        let f_n = natural_frequency(&section, self.plate_radius_m);
        let m_d = self
            .stack
            .disk_mass(self.plate_radius_m, self.electrode_disk().as_ref())?;
        let m_m = modal_mass(m_d)?;
        let q = damping_q(self.damping_ratio)?;

        Ok(LemParams {
            capacitance_f: c,
            coupling_integral: i_m,
            strain_integral: i_e,
            compliance_m_per_n,
            stiffness_n_per_m: 1.0 / compliance_m_per_n,
            coupling_ratio_c_per_m: eta,
            piezo_moment_per_volt_n: piezo_moment(piezo.material.e31f, 1.0, z_p),
            natural_frequency_hz: f_n,
            disk_mass_kg: m_d,
            modal_mass_kg: m_m,
            damping_ratio: self.damping_ratio,
            quality_factor: q,
        })
    }

    /// Center-deflection frequency response per unit pressure, with the
    /// open-circuit voltage channel.
    pub fn frequency_response(&self, frequencies_hz: &[f64]) -> Result<FrequencyResponse> {
        if frequencies_hz.is_empty() {
            return Err(Error::InvalidInput("frequency grid must not be empty".into()));
        }
        if frequencies_hz[0] < 0.0 {
            return Err(Error::InvalidInput("frequencies must be >= 0".into()));
        }
        if frequencies_hz.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "frequency grid must be strictly increasing".into(),
            ));
        }
        let params = self.params()?;
        let static_gain = self.static_gain(&params);
        let zeta = self.damping_ratio;
        let f_n = params.natural_frequency_hz;

        let mut amplitude = Vec::with_capacity(frequencies_hz.len());
        let mut phase = Vec::with_capacity(frequencies_hz.len());
        let mut voltage = Vec::with_capacity(frequencies_hz.len());
        for &f in frequencies_hz {
            let u = f / f_n;
            let re = 1.0 - u * u;
            let im = 2.0 * zeta * u;
            let mag = static_gain / (re * re + im * im).sqrt();
            amplitude.push(mag);
            phase.push(-im.atan2(re));
            voltage.push(params.coupling_ratio_c_per_m * mag / params.capacitance_f);
        }
        Ok(FrequencyResponse {
            frequencies_hz: frequencies_hz.to_vec(),
            amplitude_m_per_pa: amplitude,
            phase_rad: phase,
            voltage_v_per_pa: voltage,
        })
    }

    /// Static center deflection per unit pressure (m/Pa): modal force
    /// `pi r^2 / 3` against the compliance, identical to `r^4 / 64 D`.
    fn static_gain(&self, params: &LemParams) -> f64 {
        PI * self.plate_radius_m * self.plate_radius_m / 3.0 * params.compliance_m_per_n
    }

    /// Open-circuit voltage at pressure `p`, statically or at a drive
    /// frequency. Linear in p.
    pub fn voltage_at_pressure(&self, pressure_pa: f64, excitation: Excitation) -> Result<f64> {
        if !(pressure_pa >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "pressure must be >= 0 (got {pressure_pa})"
            )));
        }
        let params = self.params()?;
        let gain = self.static_gain(&params);
        let w = match excitation {
            Excitation::Static => pressure_pa * gain,
            Excitation::Frequency(f) => {
                if !(f >= 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "drive frequency must be >= 0 (got {f})"
                    )));
                }
                let u = f / params.natural_frequency_hz;
                let re = 1.0 - u * u;
                let im = 2.0 * self.damping_ratio * u;
                pressure_pa * gain / (re * re + im * im).sqrt()
            }
        };
        Ok(params.coupling_ratio_c_per_m * w / params.capacitance_f)
    }
}

/// How the pressure load is applied in a voltage evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Excitation {
    Static,
    Frequency(f64),
}

/// Derived lumped elements of one harvester model.
#[derive(Debug, Clone, Serialize)]
pub struct LemParams {
    /// Plate capacitance C (F).
    pub capacitance_f: f64,
    /// Piezoelectric coupling integral I_m (dimensionless).
    pub coupling_integral: f64,
    /// Strain-energy integral I_e (dimensionless).
    pub strain_integral: f64,
    /// Mechanical compliance 1/k_m (m/N).
    pub compliance_m_per_n: f64,
    /// Modal stiffness k_m (N/m).
    pub stiffness_n_per_m: f64,
    /// Electromechanical coupling ratio eta (C/m).
    pub coupling_ratio_c_per_m: f64,
    /// Piezo bending moment per unit length at 1 V drive (N).
    pub piezo_moment_per_volt_n: f64,
    /// Fundamental natural frequency f_n (Hz).
    pub natural_frequency_hz: f64,
    /// Composite disk mass m_d (kg).
    pub disk_mass_kg: f64,
    /// Modal mass m_m = m_d / 5 (kg).
    pub modal_mass_kg: f64,
    /// Damping ratio zeta (input).
    pub damping_ratio: f64,
    /// Quality factor Q = 1 / (2 zeta).
    pub quality_factor: f64,
}

/// Harmonic response sampled on a frequency grid.
#[derive(Debug, Clone, Serialize)]
pub struct FrequencyResponse {
    pub frequencies_hz: Vec<f64>,
    /// Center deflection per unit pressure (m/Pa).
    pub amplitude_m_per_pa: Vec<f64>,
    /// Phase of the deflection relative to the drive (rad), 0 to -pi.
    pub phase_rad: Vec<f64>,
    /// Open-circuit voltage per unit pressure (V/Pa).
    pub voltage_v_per_pa: Vec<f64>,
}

impl FrequencyResponse {
    /// CSV rendering with the fixed header
    /// `f_hz,amp_m_per_pa,phase_rad,voc_v_per_pa`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("f_hz,amp_m_per_pa,phase_rad,voc_v_per_pa\n");
        for i in 0..self.frequencies_hz.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.frequencies_hz[i],
                self.amplitude_m_per_pa[i],
                self.phase_rad[i],
                self.voltage_v_per_pa[i]
            ));
        }
        out
    }

    /// Half-power (-3 dB) frequencies around the amplitude peak, linearly
    /// interpolated at the crossings. `None` when the grid does not bracket
    /// both crossings.
    pub fn half_power_band(&self) -> Option<(f64, f64)> {
        let n = self.frequencies_hz.len();
        if n < 3 {
            return None;
        }
        let (i_pk, &peak) = self
            .amplitude_m_per_pa
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))?;
        if i_pk == 0 || i_pk == n - 1 {
            return None;
        }
        let target = peak / std::f64::consts::SQRT_2;
        let cross = |i0: usize, i1: usize| -> f64 {
            let (f0, f1) = (self.frequencies_hz[i0], self.frequencies_hz[i1]);
            let (a0, a1) = (self.amplitude_m_per_pa[i0], self.amplitude_m_per_pa[i1]);
            f0 + (target - a0) * (f1 - f0) / (a1 - a0)
        };
        let mut f_lo = None;
        for i in (1..=i_pk).rev() {
            if self.amplitude_m_per_pa[i - 1] <= target {
                f_lo = Some(cross(i - 1, i));
                break;
            }
        }
        let mut f_hi = None;
        for i in i_pk..n - 1 {
            if self.amplitude_m_per_pa[i + 1] <= target {
                f_hi = Some(cross(i + 1, i));
                break;
            }
        }
        match (f_lo, f_hi) {
            (Some(lo), Some(hi)) if hi > lo => Some((lo, hi)),
            _ => None,
        }
    }

    /// Quality factor from the half-power bandwidth, `Q = f_n / (f_hi - f_lo)`.
    pub fn bandwidth_q(&self, natural_frequency_hz: f64) -> Option<f64> {
        self.half_power_band()
            .map(|(lo, hi)| natural_frequency_hz / (hi - lo))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laminate::{LaminateStack, LayerRole, LayerSpec};
    use crate::materials::MaterialDb;
    use crate::plate_oracle::adaptive_quad;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn mat(name: &str) -> MaterialProps {
        MaterialDb::builtin().lookup(name).unwrap().clone()
    }

    /// Fabricated-device model: tape 65 um + PVDF 18 um, r = 1.5 mm,
    /// coverage 0.5, zeta = 0.117.
    fn device_model() -> HarvesterModel {
        let stack = LaminateStack::new(vec![
            LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
            LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
        ])
        .unwrap();
        HarvesterModel::new(stack, 1.5e-3, 0.5, 0.117).unwrap()
    }

    #[test]
    fn shape_function_values() {
        assert_eq!(shape_function(0.0).unwrap(), 1.0);
        assert_eq!(shape_function(1.0).unwrap(), 0.0);
        assert_eq!(shape_function_deriv(1.0), 0.0);
        assert_relative_eq!(shape_function(0.5).unwrap(), 0.5625, epsilon = 1e-15);
        assert!(shape_function(-0.1).is_err());
        assert!(shape_function(1.1).is_err());
    }

    #[test]
    fn coupling_integral_full_coverage_cancels() {
        assert_relative_eq!(coupling_integral(1.0, 0.3).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn coupling_integral_against_quadrature() {
        // gamma = 1/sqrt(2), nu = 0.34: closed form -1/0.66.
        let gamma = std::f64::consts::FRAC_1_SQRT_2;
        let nu = 0.34;
        let closed = coupling_integral(gamma, nu).unwrap();
        assert_relative_eq!(closed, -1.0 / 0.66, max_relative = 1e-12);
        let quad = adaptive_quad(
            |x| x * shape_function_deriv2(x) + shape_function_deriv(x),
            0.0,
            gamma,
            1e-12,
        )
        .unwrap()
            / (1.0 - nu);
        assert_relative_eq!(closed, quad, epsilon = 1e-10);
    }

    #[test]
    fn coupling_integral_maximized_at_inv_sqrt2() {
        // Golden-section search over |I_m| as an independent check.
        let nu = 0.3;
        let f = |g: f64| coupling_integral(g, nu).unwrap().abs();
        let (mut a, mut b) = (1e-6, 1.0);
        let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
        while b - a > 1e-10 {
            let c = b - inv_phi * (b - a);
            let d = a + inv_phi * (b - a);
            if f(c) > f(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let g_star = 0.5 * (a + b);
        assert_relative_eq!(g_star, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-6);
    }

    #[test]
    fn strain_integral_value_and_nu_independence() {
        assert_relative_eq!(strain_integral(0.34).unwrap(), 32.0 / 3.0, epsilon = 1e-15);
        for nu in [0.1, 0.45] {
            let quad =
                adaptive_quad(|x| strain_energy_integrand(x, nu), 0.0, 1.0, 1e-12).unwrap();
            assert_relative_eq!(quad, 32.0 / 3.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn strain_integrand_finite_at_origin() {
        // (phi')^2 / x -> 16 x as x -> 0.
        assert_eq!(strain_energy_integrand(0.0, 0.3), 0.0);
        let near = strain_energy_integrand(1e-8, 0.3);
        assert!(near.abs() < 1e-6);
    }

    #[test]
    fn capacitance_hand_value_and_scaling() {
        let pvdf = mat("PVDF-TrFe");
        let c = capacitance(&pvdf, 1.5e-3, 18e-6).unwrap();
        assert_relative_eq!(c, 4.17e-11, max_relative = 2e-3);
        let c2r = capacitance(&pvdf, 3.0e-3, 18e-6).unwrap();
        assert_relative_eq!(c2r, 4.0 * c, max_relative = 1e-14);
        let c2t = capacitance(&pvdf, 1.5e-3, 36e-6).unwrap();
        assert_relative_eq!(c2t, 0.5 * c, max_relative = 1e-14);
    }

    #[test]
    fn capacitance_rejects_passive_material() {
        assert!(capacitance(&mat("Tape"), 1e-3, 1e-5).is_err());
    }

    #[test]
    fn compliance_scaling_and_static_chain() {
        let section = device_model().section();
        let i_e = 32.0 / 3.0;
        let c1 = compliance(&section, 1.5e-3, i_e);
        let c2 = compliance(&section, 3.0e-3, i_e);
        assert_relative_eq!(c2, 4.0 * c1, max_relative = 1e-14);

        // Static identity: (p pi r^2 / 3) / k_m = p r^4 / 64 D.
        let r = 1.5e-3f64;
        let p = 400.0;
        let w_chain = p * PI * r * r / 3.0 * c1;
        let w_classic = p * r.powi(4) / (64.0 * section.flexural_rigidity_nm);
        assert_relative_eq!(w_chain, w_classic, max_relative = 1e-12);
    }

    #[test]
    fn coupling_ratio_symmetries() {
        assert_eq!(coupling_ratio(0.0, -0.015, 1e-5), 0.0);
        let eta = coupling_ratio(-1.5, -0.015, 1e-5);
        assert_relative_eq!(coupling_ratio(-1.5, -0.015, -1e-5), -eta, max_relative = 1e-14);
        assert_relative_eq!(eta, 2.0 * PI * 1.5 * 0.015 * 1e-5, max_relative = 1e-14);
    }

    #[test]
    fn piezo_moment_values() {
        assert_eq!(piezo_moment(-0.015, 0.0, 4e-5), 0.0);
        assert_relative_eq!(piezo_moment(-0.015, 1.0, 4e-5), 6.0e-7, max_relative = 1e-12);
        assert_relative_eq!(
            piezo_moment(-0.015, 2.0, 4e-5),
            2.0 * piezo_moment(-0.015, 1.0, 4e-5),
            max_relative = 1e-14
        );
    }

    #[test]
    fn natural_frequency_scaling_laws() {
        let model = device_model();
        let section = model.section();
        let f1 = natural_frequency(&section, 1.5e-3);
        let f2 = natural_frequency(&section, 3.0e-3);
        assert_relative_eq!(f1, 4.0 * f2, max_relative = 1e-12);
    }

    #[test]
    fn natural_frequency_matches_ritz_oracle() {
        let model = device_model();
        let section = model.section();
        let f_model = natural_frequency(&section, 1.5e-3);
        let ritz = crate::plate_oracle::rayleigh_ritz_modes(&section, 1.5e-3, 1).unwrap();
        assert_relative_eq!(f_model, ritz[0].frequency_hz, max_relative = 5e-3);
    }

    #[test]
    fn natural_frequency_matches_ritz_on_random_plates() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..50 {
            let m = MaterialProps {
                name: "random".into(),
                youngs_modulus: rng.random_range(1e8..1e12),
                poisson_ratio: rng.random_range(0.05..0.49),
                density: rng.random_range(500.0..9000.0),
                rel_permittivity: 0.0,
                e31f: 0.0,
                g33: 0.0,
            };
            let t = rng.random_range(1e-5..1e-3);
            let r = rng.random_range(5e-4..1e-2);
            let section = LaminateStack::new(vec![
                LayerSpec::new(m, t, LayerRole::Structural).unwrap(),
            ])
            .unwrap()
            .section_props();
            let f_model = natural_frequency(&section, r);
            let ritz = crate::plate_oracle::rayleigh_ritz_modes(&section, r, 1).unwrap();
            assert_relative_eq!(f_model, ritz[0].frequency_hz, max_relative = 5e-3);
        }
    }

    #[test]
    fn damping_q_values() {
        assert_relative_eq!(damping_q(0.117).unwrap(), 4.2735, epsilon = 1e-3);
        assert_eq!(damping_q(0.5).unwrap(), 1.0);
        assert_eq!(damping_q(0.05).unwrap(), 10.0);
        assert!(damping_q(1.0).is_err());
        assert!(damping_q(0.0).is_err());
        assert!(damping_q(-0.1).is_err());
    }

    #[test]
    fn paper_quality_factor_within_one_percent() {
        let q = damping_q(0.117).unwrap();
        assert!((q - 4.284).abs() / 4.284 < 0.01, "Q = {q}");
    }

    #[test]
    fn response_static_limit_and_resonance() {
        let model = device_model();
        let params = model.params().unwrap();
        let f_n = params.natural_frequency_hz;
        let grid = vec![1e-3, f_n, 2.0 * f_n];
        let resp = model.frequency_response(&grid).unwrap();

        let r = model.plate_radius_m;
        let static_expect = r.powi(4) / (64.0 * model.section().flexural_rigidity_nm);
        assert_relative_eq!(resp.amplitude_m_per_pa[0], static_expect, max_relative = 1e-6);

        // At f_n: amplitude = static * Q, phase = -pi/2.
        assert_relative_eq!(
            resp.amplitude_m_per_pa[1],
            static_expect * params.quality_factor,
            max_relative = 1e-9
        );
        assert_relative_eq!(resp.phase_rad[1], -PI / 2.0, epsilon = 1e-9);
    }

    #[test]
    fn phase_decreases_monotonically() {
        let model = device_model();
        let f_n = model.params().unwrap().natural_frequency_hz;
        let grid: Vec<f64> = (1..=300).map(|i| f_n * 3.0 * i as f64 / 300.0).collect();
        let resp = model.frequency_response(&grid).unwrap();
        assert!(resp.phase_rad.windows(2).all(|w| w[1] <= w[0]));
        assert!(resp.amplitude_m_per_pa.iter().all(|&a| a > 0.0));
        assert!(*resp.phase_rad.last().unwrap() > -PI);
    }

    #[test]
    fn bandwidth_q_matches_damping_within_two_percent() {
        let model = device_model();
        let f_n = model.params().unwrap().natural_frequency_hz;
        let grid: Vec<f64> = (0..20000)
            .map(|i| f_n * (0.02 + 2.5 * i as f64 / 19999.0))
            .collect();
        let resp = model.frequency_response(&grid).unwrap();
        let q_bw = resp.bandwidth_q(f_n).unwrap();
        let q = 1.0 / (2.0 * 0.117);
        assert!((q_bw - q).abs() / q < 0.02, "bandwidth Q {q_bw} vs {q}");
    }

    #[test]
    fn grid_validation() {
        let model = device_model();
        assert!(model.frequency_response(&[]).is_err());
        assert!(model.frequency_response(&[-1.0, 1.0]).is_err());
        assert!(model.frequency_response(&[10.0, 10.0]).is_err());
        assert!(model.frequency_response(&[10.0, 5.0]).is_err());
    }

    #[test]
    fn voltage_linearity_and_zero() {
        let model = device_model();
        assert_eq!(
            model.voltage_at_pressure(0.0, Excitation::Static).unwrap(),
            0.0
        );
        let v1 = model.voltage_at_pressure(200.0, Excitation::Static).unwrap();
        let v2 = model.voltage_at_pressure(400.0, Excitation::Static).unwrap();
        assert_relative_eq!(v2, 2.0 * v1, max_relative = 1e-12);

        let f = 5000.0;
        let w1 = model
            .voltage_at_pressure(200.0, Excitation::Frequency(f))
            .unwrap();
        let w2 = model
            .voltage_at_pressure(400.0, Excitation::Frequency(f))
            .unwrap();
        assert_relative_eq!(w2, 2.0 * w1, max_relative = 1e-12);
    }

    #[test]
    fn device_static_voltage_in_sanity_band() {
        let v = device_model()
            .voltage_at_pressure(400.0, Excitation::Static)
            .unwrap();
        assert!((0.1..=2.0).contains(&v), "V_oc = {v}");
    }

    #[test]
    fn model_invariant_checks() {
        let stack = device_model().stack;
        assert!(HarvesterModel::new(stack.clone(), 0.0, 0.5, 0.1).is_err());
        assert!(HarvesterModel::new(stack.clone(), 1e-3, 0.0, 0.1).is_err());
        assert!(HarvesterModel::new(stack.clone(), 1e-3, 1.5, 0.1).is_err());
        assert!(HarvesterModel::new(stack.clone(), 1e-3, 0.5, 1.0).is_err());
        let passive = LaminateStack::new(vec![
            LayerSpec::new(mat("PET"), 1e-4, LayerRole::Structural).unwrap(),
        ])
        .unwrap();
        assert!(HarvesterModel::new(passive, 1e-3, 0.5, 0.1).is_err());
    }

    proptest! {
        /// Quadrature matches the closed-form coupling integral over random
        /// (gamma, nu).
        #[test]
        fn prop_coupling_integral_quadrature(
            gamma in 0.05f64..1.0,
            nu in 0.05f64..0.49,
        ) {
            let closed = coupling_integral(gamma, nu).unwrap();
            let quad = adaptive_quad(
                |x| x * shape_function_deriv2(x) + shape_function_deriv(x),
                0.0, gamma, 1e-12,
            ).unwrap() / (1.0 - nu);
            prop_assert!((closed - quad).abs() < 1e-10);
        }

        /// Q * 2 zeta = 1 by construction.
        #[test]
        fn prop_q_identity(zeta in 0.001f64..0.999) {
            let q = damping_q(zeta).unwrap();
            prop_assert!((q * 2.0 * zeta - 1.0).abs() < 1e-14);
        }
    }
}
