//! Parameter-sweep and design-search engine.
//!
//! Grid points are independent pure evaluations of the lumped-element
//! pipeline; the engine evaluates them in parallel but the output is
//! byte-identical to sequential evaluation and ordered by the grid.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laminate::{LaminateStack, LayerRole, LayerSpec};
use crate::lem::{coupling_integral, coupling_ratio, Excitation, HarvesterModel};
use crate::plate_oracle::deflection_at;

/// The model quantity being swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    PlateRadius,
    PiezoThickness,
    Pressure,
    ElectrodeCoverage,
    PointRadius,
}

impl SweepParameter {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plate_radius" => Ok(Self::PlateRadius),
            "piezo_thickness" => Ok(Self::PiezoThickness),
            "pressure" => Ok(Self::Pressure),
            "electrode_coverage" => Ok(Self::ElectrodeCoverage),
            "point_radius" => Ok(Self::PointRadius),
            other => Err(Error::Config(format!(
                "unknown sweep parameter '{other}' (expected plate_radius, piezo_thickness, \
                 pressure, electrode_coverage, or point_radius)"
            ))),
        }
    }

    /// CSV column header of the swept value (SI units).
    pub fn column_name(&self) -> &'static str {
        match self {
            Self::PlateRadius => "plate_radius_m",
            Self::PiezoThickness => "piezo_thickness_m",
            Self::Pressure => "pressure_pa",
            Self::ElectrodeCoverage => "electrode_coverage",
            Self::PointRadius => "point_radius_m",
        }
    }
}

/// One requested output column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepOutput {
    NaturalFrequency,
    OpenCircuitVoltage,
    CenterDeflection,
    DampingRatio,
    QualityFactor,
    Displacement,
}

impl SweepOutput {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "f_n" => Ok(Self::NaturalFrequency),
            "v_oc" => Ok(Self::OpenCircuitVoltage),
            "w0" => Ok(Self::CenterDeflection),
            "zeta" => Ok(Self::DampingRatio),
            "q" => Ok(Self::QualityFactor),
            "displacement" => Ok(Self::Displacement),
            other => Err(Error::Config(format!(
                "unknown sweep output '{other}' (expected f_n, v_oc, w0, zeta, q, or displacement)"
            ))),
        }
    }

    pub fn column_name(&self) -> &'static str {
        match self {
            Self::NaturalFrequency => "f_n_hz",
            Self::OpenCircuitVoltage => "v_oc_v",
            Self::CenterDeflection => "w0_m",
            Self::DampingRatio => "zeta",
            Self::QualityFactor => "q",
            Self::Displacement => "displacement_m",
        }
    }

    /// Default column set for a parameter.
    pub fn defaults_for(param: SweepParameter) -> Vec<SweepOutput> {
        match param {
            SweepParameter::PointRadius => vec![Self::Displacement],
            SweepParameter::Pressure => vec![Self::OpenCircuitVoltage, Self::CenterDeflection],
            _ => vec![
                Self::NaturalFrequency,
                Self::OpenCircuitVoltage,
                Self::CenterDeflection,
                Self::DampingRatio,
                Self::QualityFactor,
            ],
        }
    }
}

/// A sweep request: base model, grid, and output columns.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: HarvesterModel,
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub outputs: Vec<SweepOutput>,
    /// Logarithmic grid spacing (linear by default).
    pub log_spacing: bool,
    /// Evaluation pressure for voltage/deflection columns (Pa). Ignored when
    /// the swept parameter is the pressure itself.
    pub pressure_pa: f64,
    /// Optional zeta(parameter) lookup table, linearly interpolated; the
    /// model damping is used when absent.
    pub zeta_table: Option<Vec<(f64, f64)>>,
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        if !(self.from < self.to) {
            return Err(Error::InvalidInput(format!(
                "sweep range: from {} must be < to {}",
                self.from, self.to
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidInput(format!(
                "sweep needs at least 2 steps (got {})",
                self.steps
            )));
        }
        if self.log_spacing && !(self.from > 0.0) {
            return Err(Error::InvalidInput(
                "log spacing needs a positive lower bound".into(),
            ));
        }
        if self.outputs.is_empty() {
            return Err(Error::InvalidInput("sweep needs at least one output".into()));
        }
        if self.outputs.contains(&SweepOutput::Displacement)
            && self.parameter != SweepParameter::PointRadius
        {
            return Err(Error::InvalidInput(
                "displacement output is only valid for point_radius sweeps".into(),
            ));
        }
        if let Some(table) = &self.zeta_table {
            if table.len() < 2 {
                return Err(Error::InvalidInput("zeta table needs at least 2 rows".into()));
            }
            if table.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::InvalidInput(
                    "zeta table values must be strictly increasing".into(),
                ));
            }
            if table.iter().any(|&(_, z)| !(z > 0.0 && z < 1.0)) {
                return Err(Error::InvalidInput(
                    "zeta table damping ratios must lie in (0, 1)".into(),
                ));
            }
        }
        Ok(())
    }

    fn grid(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                let s = i as f64 / (n - 1) as f64;
                if self.log_spacing {
                    (self.from.ln() + s * (self.to.ln() - self.from.ln())).exp()
                } else {
                    self.from + s * (self.to - self.from)
                }
            })
            .collect()
    }
}

/// Tabular sweep output: the grid plus one column per requested output.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub outputs: Vec<SweepOutput>,
    /// `columns[j][i]` is output j at grid point i.
    pub columns: Vec<Vec<f64>>,
}

impl SweepResult {
    /// CSV rendering: swept parameter first, then the output columns.
    pub fn to_csv(&self) -> String {
        let mut header = vec![self.parameter.column_name()];
        header.extend(self.outputs.iter().map(|o| o.column_name()));
        let mut out = header.join(",");
        out.push('\n');
        for i in 0..self.values.len() {
            out.push_str(&format!("{}", self.values[i]));
            for col in &self.columns {
                out.push_str(&format!(",{}", col[i]));
            }
            out.push('\n');
        }
        out
    }
}

fn interp_zeta(table: &[(f64, f64)], x: f64) -> f64 {
    if x <= table[0].0 {
        return table[0].1;
    }
    if x >= table[table.len() - 1].0 {
        return table[table.len() - 1].1;
    }
    let idx = table.partition_point(|&(v, _)| v < x);
    let (x0, z0) = table[idx - 1];
    let (x1, z1) = table[idx];
    z0 + (z1 - z0) * (x - x0) / (x1 - x0)
}

fn model_at(base: &HarvesterModel, parameter: SweepParameter, value: f64) -> Result<HarvesterModel> {
    match parameter {
        SweepParameter::PlateRadius => {
            let mut m = HarvesterModel::new(
                base.stack.clone(),
                value,
                base.electrode_coverage,
                base.damping_ratio,
            )?;
            m.top_electrode = base.top_electrode.clone();
            Ok(m)
        }
        SweepParameter::ElectrodeCoverage => {
            let mut m = HarvesterModel::new(
                base.stack.clone(),
                base.plate_radius_m,
                value,
                base.damping_ratio,
            )?;
            m.top_electrode = base.top_electrode.clone();
            Ok(m)
        }
        SweepParameter::PiezoThickness => {
            let layers: Vec<LayerSpec> = base
                .stack
                .layers()
                .iter()
                .map(|l| {
                    if l.role == LayerRole::Piezoelectric {
                        LayerSpec::new(l.material.clone(), value, l.role)
                    } else {
                        Ok(l.clone())
                    }
                })
                .collect::<Result<_>>()?;
            let mut m = HarvesterModel::new(
                LaminateStack::new(layers)?,
                base.plate_radius_m,
                base.electrode_coverage,
                base.damping_ratio,
            )?;
            m.top_electrode = base.top_electrode.clone();
            Ok(m)
        }
        SweepParameter::Pressure | SweepParameter::PointRadius => Ok(base.clone()),
    }
}

fn evaluate_point(spec: &SweepSpec, value: f64) -> Result<Vec<f64>> {
    let model = model_at(&spec.base, spec.parameter, value)?;
    let params = model.params()?;
    let pressure = if spec.parameter == SweepParameter::Pressure {
        value
    } else {
        spec.pressure_pa
    };
    let zeta = spec
        .zeta_table
        .as_ref()
        .map(|t| interp_zeta(t, value))
        .unwrap_or(model.damping_ratio);

    let w0 = pressure
        * std::f64::consts::PI
        * model.plate_radius_m
        * model.plate_radius_m
        / 3.0
        * params.compliance_m_per_n;

    spec.outputs
        .iter()
        .map(|out| match out {
            SweepOutput::NaturalFrequency => Ok(params.natural_frequency_hz),
            SweepOutput::OpenCircuitVoltage => {
                model.voltage_at_pressure(pressure, Excitation::Static)
            }
            SweepOutput::CenterDeflection => Ok(w0),
            SweepOutput::DampingRatio => Ok(zeta),
            SweepOutput::QualityFactor => crate::lem::damping_q(zeta),
            SweepOutput::Displacement => deflection_at(w0, model.plate_radius_m, value),
        })
        .collect()
}

fn annotate(e: Error, parameter: SweepParameter, index: usize, value: f64) -> Error {
    let msg = format!(
        "sweep point {index} ({}={value}): {e}",
        parameter.column_name()
    );
    match e {
        Error::InvalidInput(_) | Error::Config(_) => Error::InvalidInput(msg),
        _ => Error::Numeric(msg),
    }
}

/// Run a sweep over its grid. Evaluation is parallel per point; rows are in
/// grid order and byte-identical to sequential evaluation.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let values = spec.grid();
    let rows: Vec<Result<Vec<f64>>> = values
        .par_iter()
        .map(|&v| evaluate_point(spec, v))
        .collect();
    collect_rows(spec, values, rows)
}

/// Sequential reference evaluation of the same grid (the partitioning
/// contract: outputs must match [`run_sweep`] bit for bit).
pub fn run_sweep_sequential(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let values = spec.grid();
    let rows: Vec<Result<Vec<f64>>> =
        values.iter().map(|&v| evaluate_point(spec, v)).collect();
    collect_rows(spec, values, rows)
}

fn collect_rows(
    spec: &SweepSpec,
    values: Vec<f64>,
    rows: Vec<Result<Vec<f64>>>,
) -> Result<SweepResult> {
    let mut columns = vec![Vec::with_capacity(values.len()); spec.outputs.len()];
    for (i, row) in rows.into_iter().enumerate() {
        let row = row.map_err(|e| annotate(e, spec.parameter, i, values[i]))?;
        for (j, v) in row.into_iter().enumerate() {
            columns[j].push(v);
        }
    }
    Ok(SweepResult {
        parameter: spec.parameter,
        values,
        outputs: spec.outputs.clone(),
        columns,
    })
}

/// Result of the electrode-coverage search.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageOptimum {
    /// Optimal coverage gamma*.
    pub gamma: f64,
    /// |eta| achieved at gamma* (C/m).
    pub eta_abs: f64,
}

/// Golden-section search for the coverage maximizing |eta| on (0, 1].
/// The analytic optimum of gamma^2 (1 - gamma^2) is 1/sqrt(2).
pub fn optimize_coverage(model: &HarvesterModel) -> Result<CoverageOptimum> {
    let section = model.section();
    let nu = section.effective_poisson;
    let z_p = section
        .piezo_offset_m
        .ok_or_else(|| Error::InvalidInput("stack has no piezoelectric layer".into()))?;
    let e31f = model
        .stack
        .piezo_layer()
        .map(|(_, l)| l.material.e31f)
        .unwrap_or(0.0);

    let eta_abs = |g: f64| -> Result<f64> {
        Ok(coupling_ratio(coupling_integral(g, nu)?, e31f, z_p).abs())
    };

    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (1e-9, 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eta_abs(c)?;
    let mut fd = eta_abs(d)?;
    for _ in 0..90 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eta_abs(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eta_abs(d)?;
        }
        if b - a < 1e-12 {
            break;
        }
    }
    let gamma = 0.5 * (a + b);
    Ok(CoverageOptimum {
        gamma,
        eta_abs: eta_abs(gamma)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laminate::{LaminateStack, LayerRole, LayerSpec};
    use crate::materials::MaterialDb;
    use approx::assert_relative_eq;

    fn device_model() -> HarvesterModel {
        let mat = |n: &str| MaterialDb::builtin().lookup(n).unwrap().clone();
        let stack = LaminateStack::new(vec![
            LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
            LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
        ])
        .unwrap();
        HarvesterModel::new(stack, 1.5e-3, 0.5, 0.117).unwrap()
    }

    fn spec(param: SweepParameter, from: f64, to: f64, steps: usize) -> SweepSpec {
        SweepSpec {
            base: device_model(),
            parameter: param,
            from,
            to,
            steps,
            outputs: SweepOutput::defaults_for(param),
            log_spacing: false,
            pressure_pa: 400.0,
            zeta_table: None,
        }
    }

    #[test]
    fn radius_sweep_fn_r2_constant() {
        let mut s = spec(SweepParameter::PlateRadius, 0.5e-3, 3e-3, 11);
        s.outputs = vec![SweepOutput::NaturalFrequency];
        let res = run_sweep(&s).unwrap();
        assert_eq!(res.values.len(), 11);
        let products: Vec<f64> = res
            .values
            .iter()
            .zip(&res.columns[0])
            .map(|(r, f)| f * r * r)
            .collect();
        let first = products[0];
        for p in &products {
            assert_relative_eq!(*p, first, max_relative = 1e-9);
        }
    }

    #[test]
    fn pressure_sweep_voltage_linear() {
        let mut s = spec(SweepParameter::Pressure, 200.0, 500.0, 7);
        s.outputs = vec![SweepOutput::OpenCircuitVoltage];
        let res = run_sweep(&s).unwrap();
        // V/p is constant to machine precision.
        let ratios: Vec<f64> = res
            .values
            .iter()
            .zip(&res.columns[0])
            .map(|(p, v)| v / p)
            .collect();
        for r in &ratios {
            assert_relative_eq!(*r, ratios[0], max_relative = 1e-14);
        }
    }

    #[test]
    fn point_radius_sweep_matches_shape_function() {
        let r = 1.5e-3;
        let mut s = spec(SweepParameter::PointRadius, 0.0, r, 16);
        s.outputs = vec![SweepOutput::Displacement];
        let res = run_sweep(&s).unwrap();
        let w0 = res.columns[0][0];
        for (rho, w) in res.values.iter().zip(&res.columns[0]) {
            let x = rho / r;
            let expect = w0 * (1.0 - x * x).powi(2);
            assert_relative_eq!(*w, expect, epsilon = 1e-20, max_relative = 1e-12);
        }
        // Zero at the rim.
        assert_eq!(*res.columns[0].last().unwrap(), 0.0);
    }

    #[test]
    fn parallel_matches_sequential_bitwise() {
        let s = spec(SweepParameter::PlateRadius, 0.5e-3, 3e-3, 64);
        let par = run_sweep(&s).unwrap();
        let seq = run_sweep_sequential(&s).unwrap();
        assert_eq!(par.to_csv(), seq.to_csv());
    }

    #[test]
    fn monotonicity_spot_checks() {
        let mut s = spec(SweepParameter::PlateRadius, 0.5e-3, 3e-3, 9);
        s.outputs = vec![SweepOutput::NaturalFrequency];
        let res = run_sweep(&s).unwrap();
        assert!(res.columns[0].windows(2).all(|w| w[1] < w[0]), "f_n not decreasing in r");

        let mut s = spec(SweepParameter::PiezoThickness, 5e-6, 50e-6, 9);
        s.outputs = vec![SweepOutput::NaturalFrequency];
        let res = run_sweep(&s).unwrap();
        assert!(res.columns[0].windows(2).all(|w| w[1] > w[0]), "f_n not increasing in t");
    }

    #[test]
    fn single_layer_thickness_sweep_fn_over_t_constant() {
        let mat = MaterialDb::builtin().lookup("PVDF-TrFe").unwrap().clone();
        let stack = LaminateStack::new(vec![
            LayerSpec::new(mat, 18e-6, LayerRole::Piezoelectric).unwrap(),
        ])
        .unwrap();
        let base = HarvesterModel::new(stack, 1.5e-3, 0.5, 0.117).unwrap();
        let s = SweepSpec {
            base,
            parameter: SweepParameter::PiezoThickness,
            from: 5e-6,
            to: 50e-6,
            steps: 10,
            outputs: vec![SweepOutput::NaturalFrequency],
            log_spacing: false,
            pressure_pa: 400.0,
            zeta_table: None,
        };
        let res = run_sweep(&s).unwrap();
        let ratios: Vec<f64> = res
            .values
            .iter()
            .zip(&res.columns[0])
            .map(|(t, f)| f / t)
            .collect();
        for r in &ratios {
            assert_relative_eq!(*r, ratios[0], max_relative = 1e-9);
        }
    }

    #[test]
    fn zeta_table_interpolation() {
        let mut s = spec(SweepParameter::PlateRadius, 1e-3, 2e-3, 3);
        s.outputs = vec![SweepOutput::DampingRatio, SweepOutput::QualityFactor];
        s.zeta_table = Some(vec![(1e-3, 0.1), (2e-3, 0.2)]);
        let res = run_sweep(&s).unwrap();
        assert_relative_eq!(res.columns[0][0], 0.1, max_relative = 1e-12);
        assert_relative_eq!(res.columns[0][1], 0.15, max_relative = 1e-12);
        assert_relative_eq!(res.columns[0][2], 0.2, max_relative = 1e-12);
        assert_relative_eq!(res.columns[1][1], 1.0 / 0.3, max_relative = 1e-12);
    }

    #[test]
    fn coverage_optimum_at_inv_sqrt2() {
        let opt = optimize_coverage(&device_model()).unwrap();
        assert!((opt.gamma - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-4);
        assert!(opt.eta_abs > 0.0);
        // eta at full coverage vanishes, so the optimum beats it.
        let section = device_model().section();
        let eta_full = coupling_ratio(
            coupling_integral(1.0, section.effective_poisson).unwrap(),
            -0.015,
            section.piezo_offset_m.unwrap(),
        )
        .abs();
        assert!(opt.eta_abs >= eta_full);
    }

    #[test]
    fn coverage_optimum_scales_with_e31f() {
        let model = device_model();
        let opt1 = optimize_coverage(&model).unwrap();
        // Double e31f by swapping in a modified material.
        let mut mat = MaterialDb::builtin().lookup("PVDF-TrFe").unwrap().clone();
        mat.e31f *= 2.0;
        let stack = LaminateStack::new(vec![
            model.stack.layers()[0].clone(),
            LayerSpec::new(mat, 18e-6, LayerRole::Piezoelectric).unwrap(),
        ])
        .unwrap();
        let model2 = HarvesterModel::new(stack, 1.5e-3, 0.5, 0.117).unwrap();
        let opt2 = optimize_coverage(&model2).unwrap();
        assert_relative_eq!(opt2.eta_abs, 2.0 * opt1.eta_abs, max_relative = 1e-9);
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut s = spec(SweepParameter::PlateRadius, 2e-3, 1e-3, 5);
        assert!(run_sweep(&s).is_err());
        s = spec(SweepParameter::PlateRadius, 1e-3, 2e-3, 1);
        assert!(run_sweep(&s).is_err());
        s = spec(SweepParameter::Pressure, 100.0, 200.0, 5);
        s.outputs = vec![SweepOutput::Displacement];
        assert!(run_sweep(&s).is_err());
    }

    #[test]
    fn failing_grid_point_identified() {
        // Radii beyond the point_radius range produce a domain error naming
        // the offending point.
        let r = 1.5e-3;
        let mut s = spec(SweepParameter::PointRadius, 0.5 * r, 2.0 * r, 4);
        s.outputs = vec![SweepOutput::Displacement];
        let err = run_sweep(&s).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("sweep point"), "got: {msg}");
        assert!(msg.contains("point_radius_m"), "got: {msg}");
    }

    #[test]
    fn log_spacing_grid() {
        let mut s = spec(SweepParameter::PlateRadius, 1e-3, 4e-3, 3);
        s.log_spacing = true;
        s.outputs = vec![SweepOutput::NaturalFrequency];
        let res = run_sweep(&s).unwrap();
        assert_relative_eq!(res.values[1], 2e-3, max_relative = 1e-12);
    }
}
