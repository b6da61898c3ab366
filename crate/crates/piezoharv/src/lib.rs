//! Lumped-element electromechanical model of a clamped circular
//! piezoelectric energy-harvester plate.
//!
//! The device is a laminated diaphragm (adhesive tape + PVDF-TrFe film,
//! optionally more layers) clamped at the rim of a circular perforation and
//! driven by wind-pressure fluctuations. This crate derives the equivalent
//! circuit elements of that transducer, cross-validates every closed form
//! against independent numerical oracles, runs design parameter sweeps, and
//! compares the predictions against measured voltage traces.
//!
//! # Modules
//!
//! - [`materials`] — property registry and g33 voltage screening
//! - [`laminate`] — neutral plane, flexural rigidity, areal/disk/modal mass
//! - [`lem`] — capacitance, coupling and strain integrals, compliance,
//!   coupling ratio, natural frequency, damping/Q, frequency response,
//!   open-circuit voltage
//! - [`plate_oracle`] — Bessel-root eigenvalues, Rayleigh-Ritz modes, static
//!   bending fields, adaptive quadrature (the independent checks)
//! - [`sweep`] — deterministic parameter sweeps and electrode-coverage
//!   optimization
//! - [`config`], [`trace`], [`provenance`], [`cli`] — config ingestion,
//!   measurement traces, output hashing, and the command-line workbench
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example material_screening
//! cargo run --example section_properties
//! cargo run --example lem_report
//! cargo run --example modal_ladder
//! cargo run --example static_stress
//! cargo run --example frequency_response
//! cargo run --example parameter_sweeps
//! cargo run --example trace_analysis
//! ```
//!
//! # Quick start
//!
//! ```
//! use piezoharv::laminate::{LaminateStack, LayerRole, LayerSpec};
//! use piezoharv::lem::{Excitation, HarvesterModel};
//! use piezoharv::materials::MaterialDb;
//!
//! let mat = |name: &str| MaterialDb::builtin().lookup(name).unwrap().clone();
//! let stack = LaminateStack::new(vec![
//!     LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
//!     LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
//! ]).unwrap();
//! let model = HarvesterModel::new(stack, 1.5e-3, 0.5, 0.117).unwrap();
//!
//! let params = model.params().unwrap();
//! assert!(params.natural_frequency_hz > 1e3);
//! let v_oc = model.voltage_at_pressure(400.0, Excitation::Static).unwrap();
//! assert!(v_oc > 0.0);
//! ```

// Validation predicates are written `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod laminate;
pub mod lem;
pub mod materials;
pub mod plate_oracle;
pub mod provenance;
pub mod sweep;
pub mod trace;

pub use error::{Error, Result};
pub use laminate::{ElectrodeDisk, LaminateStack, LayerRole, LayerSpec, SectionProps};
pub use lem::{Excitation, FrequencyResponse, HarvesterModel, LemParams};
pub use materials::{MaterialDb, MaterialProps};
