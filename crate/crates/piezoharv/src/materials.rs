//! Material property records and the g33-based voltage screening.
//!
//! Each material is a flat record of elastic, dielectric, and piezoelectric
//! constants in SI units. The builtin registry ships the five candidate
//! piezoelectric materials screened by their g33 voltage constant plus the
//! passive layers of the fabricated device (PET substrate, double-sided
//! tape, metal electrode). The elastic constants of the polymer layers are
//! literature-typical defaults and can be overridden, either from a user
//! database file or inline in a model config; every report echoes the
//! property set actually used.
//!
//! The screening relations are
//!
//! ```text
//! V = g33 * d * s           (thickness d, applied stress s)
//! V = g33 * d * E * eps     (Young's modulus E, strain eps)
//! ```
//!
//! so at fixed thickness and load the ranking of candidate materials equals
//! the ranking by g33.

use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Vacuum permittivity (F/m).
pub const EPSILON_0: f64 = 8.8541878128e-12;

/// Builtin material database, embedded at compile time.
pub const BUILTIN_MATERIALS_JSON: &str = include_str!("../data/materials.json");

/// Elastic/dielectric/piezoelectric constants of one material, SI units.
///
/// Passive layers carry `e31f = 0` and `g33 = 0`; non-dielectrics carry
/// `rel_permittivity = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialProps {
    pub name: String,
    /// Young's modulus (Pa).
    pub youngs_modulus: f64,
    /// Poisson's ratio (dimensionless, 0 < nu < 0.5).
    pub poisson_ratio: f64,
    /// Mass density (kg/m^3).
    pub density: f64,
    /// Relative permittivity (dimensionless, >= 0).
    pub rel_permittivity: f64,
    /// Effective transverse piezoelectric coefficient e31,f (C/m^2).
    pub e31f: f64,
    /// Piezoelectric voltage constant g33 (V*m/N).
    pub g33: f64,
}

impl MaterialProps {
    /// Check the record's invariants.
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::InvalidInput("material name must not be empty".into()));
        }
        if !(self.youngs_modulus > 0.0) {
            return Err(Error::InvalidInput(format!(
                "material '{}': youngs_modulus must be > 0 (got {})",
                self.name, self.youngs_modulus
            )));
        }
        if !(self.density > 0.0) {
            return Err(Error::InvalidInput(format!(
                "material '{}': density must be > 0 (got {})",
                self.name, self.density
            )));
        }
        if !(self.poisson_ratio > 0.0 && self.poisson_ratio < 0.5) {
            return Err(Error::InvalidInput(format!(
                "material '{}': poisson_ratio must lie in (0, 0.5) (got {})",
                self.name, self.poisson_ratio
            )));
        }
        if !(self.rel_permittivity >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "material '{}': rel_permittivity must be >= 0 (got {})",
                self.name, self.rel_permittivity
            )));
        }
        if self.is_piezoelectric() && !(self.rel_permittivity > 0.0) {
            return Err(Error::InvalidInput(format!(
                "material '{}': piezoelectric materials need rel_permittivity > 0",
                self.name
            )));
        }
        Ok(())
    }

    /// A material is piezoelectric here when either coupling constant is nonzero.
    pub fn is_piezoelectric(&self) -> bool {
        self.g33 != 0.0 || self.e31f != 0.0
    }

    /// Plane-stress modulus E / (1 - nu^2) (Pa), the layer weight used by the
    /// neutral-plane and rigidity sums.
    pub fn plane_stress_modulus(&self) -> f64 {
        self.youngs_modulus / (1.0 - self.poisson_ratio * self.poisson_ratio)
    }
}

/// Result of a g33 voltage screening estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoltageEstimate {
    /// Estimated open-circuit voltage (V).
    pub volts: f64,
    /// Set when the material has g33 = 0; the estimate is forced to zero.
    pub passive_material: bool,
}

/// Screening voltage for a stress load: `V = g33 * thickness * stress`.
///
/// A passive material (g33 = 0) yields zero volts with the warning flag set.
pub fn voltage_estimate_stress(
    mat: &MaterialProps,
    thickness_m: f64,
    stress_pa: f64,
) -> Result<VoltageEstimate> {
    if !(thickness_m > 0.0) {
        return Err(Error::InvalidInput(format!(
            "thickness must be > 0 (got {thickness_m})"
        )));
    }
    Ok(VoltageEstimate {
        volts: mat.g33 * thickness_m * stress_pa,
        passive_material: mat.g33 == 0.0,
    })
}

/// Screening voltage for a strain load: `V = g33 * thickness * E * strain`.
///
/// Equals [`voltage_estimate_stress`] with `stress = E * strain`.
pub fn voltage_estimate_strain(
    mat: &MaterialProps,
    thickness_m: f64,
    strain: f64,
) -> Result<VoltageEstimate> {
    if !(strain >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "strain must be >= 0 (got {strain})"
        )));
    }
    voltage_estimate_stress(mat, thickness_m, mat.youngs_modulus * strain)
}

/// A material registry resolved from a JSON database (builtin or user file).
#[derive(Debug, Clone)]
pub struct MaterialDb {
    materials: Vec<MaterialProps>,
    source_sha256: String,
}

impl MaterialDb {
    /// The builtin registry shipped with the crate.
    pub fn builtin() -> &'static MaterialDb {
        static DB: OnceLock<MaterialDb> = OnceLock::new();
        DB.get_or_init(|| {
            MaterialDb::from_json(BUILTIN_MATERIALS_JSON).expect("builtin material database")
        })
    }

    /// Parse a registry from a flat JSON array of material records.
    /// Unknown fields are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let materials: Vec<MaterialProps> = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("material database: {e}")))?;
        for m in &materials {
            m.validate()?;
        }
        let mut names: Vec<&str> = materials.iter().map(|m| m.name.as_str()).collect();
        names.sort_unstable();
        for pair in names.windows(2) {
            if pair[0].eq_ignore_ascii_case(pair[1]) {
                return Err(Error::Config(format!(
                    "material database: duplicate material name '{}'",
                    pair[0]
                )));
            }
        }
        Ok(MaterialDb {
            materials,
            source_sha256: crate::provenance::sha256_hex(text.as_bytes()),
        })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// All records, in database order.
    pub fn materials(&self) -> &[MaterialProps] {
        &self.materials
    }

    /// Case-insensitive lookup by name.
    pub fn lookup(&self, name: &str) -> Result<&MaterialProps> {
        self.materials
            .iter()
            .find(|m| m.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| {
                let known: Vec<&str> = self.materials.iter().map(|m| m.name.as_str()).collect();
                Error::Config(format!(
                    "unknown material '{}' (known: {})",
                    name,
                    known.join(", ")
                ))
            })
    }

    /// SHA-256 of the JSON source this registry was parsed from.
    pub fn source_sha256(&self) -> &str {
        &self.source_sha256
    }

    /// A copy of this registry with `extra` records added, replacing any
    /// same-named entry. Used for inline overrides from a model config.
    pub fn with_overrides(&self, extra: &[MaterialProps]) -> Result<MaterialDb> {
        let mut materials = self.materials.clone();
        for m in extra {
            m.validate()?;
            match materials
                .iter_mut()
                .find(|e| e.name.eq_ignore_ascii_case(&m.name))
            {
                Some(slot) => *slot = m.clone(),
                None => materials.push(m.clone()),
            }
        }
        Ok(MaterialDb {
            materials,
            source_sha256: self.source_sha256.clone(),
        })
    }
}

/// The builtin material records (convenience accessor).
pub fn builtin_materials() -> Vec<MaterialProps> {
    MaterialDb::builtin().materials().to_vec()
}
