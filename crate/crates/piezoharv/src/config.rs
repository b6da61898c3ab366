//! Model configuration: a single JSON document describing one harvester.
//!
//! All lengths are meters, pressures pascals; no unit inference. Unknown
//! keys are rejected with their location in the document. Example:
//!
//! ```json
//! {
//!   "stack": [
//!     { "material": "Tape", "thickness_m": 65e-6, "role": "adhesive" },
//!     { "material": "PVDF-TrFe", "thickness_m": 18e-6, "role": "piezoelectric" }
//!   ],
//!   "plate_radius_m": 1.5e-3,
//!   "electrode_coverage": 0.5,
//!   "damping_ratio": 0.117,
//!   "analysis": { "pressure_pa": 400.0 }
//! }
//! ```
//!
//! Stack materials are referenced by registry name or given inline as full
//! material objects; the optional top-level `materials` array overrides or
//! extends the registry for this config only.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::laminate::{LaminateStack, LayerRole, LayerSpec};
use crate::lem::HarvesterModel;
use crate::materials::{MaterialDb, MaterialProps};

/// A material reference: registry name or inline record.
#[derive(Debug, Clone)]
pub enum MaterialRef {
    Name(String),
    Inline(Box<MaterialProps>),
}

impl<'de> Deserialize<'de> for MaterialRef {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        use serde::de::Error as _;
        let value = serde_json::Value::deserialize(deserializer)?;
        match value {
            serde_json::Value::String(name) => Ok(MaterialRef::Name(name)),
            obj @ serde_json::Value::Object(_) => {
                let props: MaterialProps = serde_json::from_value(obj)
                    .map_err(|e| D::Error::custom(format!("inline material: {e}")))?;
                Ok(MaterialRef::Inline(Box::new(props)))
            }
            other => Err(D::Error::custom(format!(
                "material must be a name string or an inline object, got {other}"
            ))),
        }
    }
}

impl MaterialRef {
    pub fn resolve(&self, db: &MaterialDb) -> Result<MaterialProps> {
        match self {
            MaterialRef::Name(name) => db.lookup(name).cloned(),
            MaterialRef::Inline(props) => {
                props.validate()?;
                Ok((**props).clone())
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerConfig {
    pub material: MaterialRef,
    pub thickness_m: f64,
    pub role: LayerRole,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopElectrodeConfig {
    pub material: MaterialRef,
    pub thickness_m: f64,
}

/// Analysis defaults: frequency grid bounds and evaluation pressure.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub freq_min_hz: Option<f64>,
    pub freq_max_hz: Option<f64>,
    pub freq_points: Option<usize>,
    #[serde(default = "default_pressure")]
    pub pressure_pa: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            freq_min_hz: None,
            freq_max_hz: None,
            freq_points: None,
            pressure_pa: default_pressure(),
        }
    }
}

fn default_pressure() -> f64 {
    400.0
}

fn default_coverage() -> f64 {
    1.0
}

fn default_damping() -> f64 {
    0.117
}

/// Schema of the model config document.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    /// Inline registry overrides/additions for this config.
    #[serde(default)]
    pub materials: Vec<MaterialProps>,
    /// Layers bottom to top.
    pub stack: Vec<LayerConfig>,
    pub plate_radius_m: f64,
    #[serde(default = "default_coverage")]
    pub electrode_coverage: f64,
    #[serde(default = "default_damping")]
    pub damping_ratio: f64,
    /// Optional mass-only top electrode disk of radius
    /// `electrode_coverage * plate_radius_m`.
    #[serde(default)]
    pub top_electrode: Option<TopElectrodeConfig>,
    #[serde(default)]
    pub analysis: AnalysisConfig,
}

impl ModelConfig {
    /// Parse a config document; schema violations carry their location.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("model config: {e}")))
    }

    /// Load a config file, returning the parsed document together with the
    /// raw bytes (for provenance hashing).
    pub fn from_path(path: &std::path::Path) -> Result<(Self, Vec<u8>)> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))?;
        let text = std::str::from_utf8(&bytes)
            .map_err(|e| Error::Config(format!("{}: not UTF-8: {e}", path.display())))?;
        let cfg = Self::from_json(text)?;
        Ok((cfg, bytes))
    }

    /// Registry for this config: base registry plus inline overrides.
    pub fn registry(&self, base: &MaterialDb) -> Result<MaterialDb> {
        base.with_overrides(&self.materials)
    }

    /// Build the harvester model against a registry.
    pub fn build_model(&self, db: &MaterialDb) -> Result<HarvesterModel> {
        let registry = self.registry(db)?;
        let layers: Vec<LayerSpec> = self
            .stack
            .iter()
            .map(|layer| {
                LayerSpec::new(
                    layer.material.resolve(&registry)?,
                    layer.thickness_m,
                    layer.role,
                )
            })
            .collect::<Result<_>>()?;
        let stack = LaminateStack::new(layers)?;
        let mut model = HarvesterModel::new(
            stack,
            self.plate_radius_m,
            self.electrode_coverage,
            self.damping_ratio,
        )?;
        if let Some(te) = &self.top_electrode {
            model = model.with_top_electrode(te.material.resolve(&registry)?, te.thickness_m)?;
        }
        Ok(model)
    }

    /// Frequency grid for response commands: config bounds or
    /// [0.05 f_n, 3 f_n] with 501 points by default.
    pub fn frequency_grid(&self, f_n: f64) -> Result<Vec<f64>> {
        let min = self.analysis.freq_min_hz.unwrap_or(0.05 * f_n);
        let max = self.analysis.freq_max_hz.unwrap_or(3.0 * f_n);
        let points = self.analysis.freq_points.unwrap_or(501);
        if !(min >= 0.0 && max > min) {
            return Err(Error::Config(format!(
                "frequency grid bounds invalid: [{min}, {max}]"
            )));
        }
        if points < 2 {
            return Err(Error::Config("frequency grid needs at least 2 points".into()));
        }
        Ok((0..points)
            .map(|i| min + (max - min) * i as f64 / (points - 1) as f64)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEVICE: &str = r#"{
        "stack": [
            { "material": "Tape", "thickness_m": 65e-6, "role": "adhesive" },
            { "material": "PVDF-TrFe", "thickness_m": 18e-6, "role": "piezoelectric" }
        ],
        "plate_radius_m": 1.5e-3,
        "electrode_coverage": 0.5,
        "damping_ratio": 0.117,
        "analysis": { "pressure_pa": 400.0 }
    }"#;

    #[test]
    fn device_config_builds() {
        let cfg = ModelConfig::from_json(DEVICE).unwrap();
        let model = cfg.build_model(MaterialDb::builtin()).unwrap();
        assert_eq!(model.stack.layers().len(), 2);
        assert_eq!(model.plate_radius_m, 1.5e-3);
        assert_eq!(model.electrode_coverage, 0.5);
        assert_eq!(cfg.analysis.pressure_pa, 400.0);
    }

    #[test]
    fn unknown_key_rejected_with_location() {
        let bad = DEVICE.replace("\"plate_radius_m\"", "\"plate_radius_mm\"");
        let err = ModelConfig::from_json(&bad).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("plate_radius_mm"), "got: {msg}");
        assert!(msg.contains("line"), "location missing: {msg}");
    }

    #[test]
    fn defaults_applied() {
        let minimal = r#"{
            "stack": [
                { "material": "PVDF-TrFe", "thickness_m": 18e-6, "role": "piezoelectric" }
            ],
            "plate_radius_m": 1.5e-3
        }"#;
        let cfg = ModelConfig::from_json(minimal).unwrap();
        assert_eq!(cfg.electrode_coverage, 1.0);
        assert_eq!(cfg.damping_ratio, 0.117);
        assert_eq!(cfg.analysis.pressure_pa, 400.0);
    }

    #[test]
    fn inline_material_and_override() {
        let text = r#"{
            "materials": [
                { "name": "Tape", "youngs_modulus": 0.2e9, "poisson_ratio": 0.45,
                  "density": 1100.0, "rel_permittivity": 0.0, "e31f": 0.0, "g33": 0.0 }
            ],
            "stack": [
                { "material": "Tape", "thickness_m": 65e-6, "role": "adhesive" },
                { "material": { "name": "CustomPiezo", "youngs_modulus": 3e9,
                    "poisson_ratio": 0.3, "density": 1800.0, "rel_permittivity": 10.0,
                    "e31f": -0.02, "g33": 0.4 },
                  "thickness_m": 20e-6, "role": "piezoelectric" }
            ],
            "plate_radius_m": 1e-3
        }"#;
        let cfg = ModelConfig::from_json(text).unwrap();
        let model = cfg.build_model(MaterialDb::builtin()).unwrap();
        assert_eq!(model.stack.layers()[0].material.youngs_modulus, 0.2e9);
        assert_eq!(model.stack.layers()[1].material.name, "CustomPiezo");
    }

    #[test]
    fn unknown_material_name_rejected() {
        let text = DEVICE.replace("\"Tape\"", "\"Sellotape\"");
        let cfg = ModelConfig::from_json(&text).unwrap();
        let err = cfg.build_model(MaterialDb::builtin()).unwrap_err();
        assert!(err.to_string().contains("Sellotape"));
    }

    #[test]
    fn frequency_grid_defaults() {
        let cfg = ModelConfig::from_json(DEVICE).unwrap();
        let grid = cfg.frequency_grid(10_000.0).unwrap();
        assert_eq!(grid.len(), 501);
        assert_eq!(grid[0], 500.0);
        assert_eq!(*grid.last().unwrap(), 30_000.0);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn top_electrode_config() {
        let text = r#"{
            "stack": [
                { "material": "Tape", "thickness_m": 65e-6, "role": "adhesive" },
                { "material": "PVDF-TrFe", "thickness_m": 18e-6, "role": "piezoelectric" }
            ],
            "plate_radius_m": 1.5e-3,
            "electrode_coverage": 0.5,
            "top_electrode": { "material": "Electrode", "thickness_m": 0.1e-6 }
        }"#;
        let cfg = ModelConfig::from_json(text).unwrap();
        let model = cfg.build_model(MaterialDb::builtin()).unwrap();
        assert!(model.top_electrode.is_some());
        let bare = {
            let mut c2 = cfg.clone();
            c2.top_electrode = None;
            c2.build_model(MaterialDb::builtin()).unwrap()
        };
        let with = model.params().unwrap().disk_mass_kg;
        let without = bare.params().unwrap().disk_mass_kg;
        assert!(with > without);
    }
}
