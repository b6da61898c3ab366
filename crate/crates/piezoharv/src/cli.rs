//! Command-line workbench over the library.
//!
//! Subcommands: `materials`, `analyze`, `modal`, `freqresp`, `stress`,
//! `sweep`, `trace-stats`, `compare`. Tabular commands emit CSV by default
//! (`--format json` for structured output with the provenance embedded);
//! report commands are always JSON. With `--out DIR` outputs land in files,
//! otherwise on stdout; CSV invocations print their provenance block as one
//! JSON line on stderr so every output carries its hashes.
//!
//! Exit codes: 1 usage, 2 config/input, 3 numeric. Errors are mirrored as a
//! single machine-readable JSON line on stderr.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use crate::config::ModelConfig;
use crate::error::Error;
use crate::laminate::SectionProps;
use crate::lem::{Excitation, FrequencyResponse, HarvesterModel, LemParams};
use crate::materials::{voltage_estimate_stress, MaterialDb, MaterialProps};
use crate::plate_oracle::{self, ModalResult};
use crate::provenance::Provenance;
use crate::sweep::{run_sweep, optimize_coverage, SweepOutput, SweepParameter, SweepSpec};
use crate::trace::MeasurementTrace;

/// Environment variable naming an alternative material database file.
pub const MATERIALS_ENV: &str = "PIEZOHARV_MATERIALS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "piezoharv",
    version,
    about = "Lumped-element model workbench for clamped circular piezoelectric harvester plates"
)]
struct Cli {
    /// Model config file (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write outputs into this directory instead of stdout.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Output format for tabular commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Reserved for future stochastic features; all computation here is
    /// deterministic and the flag is ignored.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the material registry, optionally with the g33 voltage screening.
    Materials {
        /// Add a voltage-screening column (g33 * thickness * stress).
        #[arg(long)]
        screen: bool,
        /// Screening film thickness (m).
        #[arg(long, default_value_t = 18e-6)]
        thickness: f64,
        /// Screening stress (Pa).
        #[arg(long, default_value_t = 1e6)]
        stress: f64,
    },
    /// Derived lumped-element parameter report for the configured device.
    Analyze,
    /// Natural-mode ladder from the clamped-plate characteristic equation
    /// (axisymmetric Rayleigh-Ritz modes with --ritz).
    Modal {
        #[arg(long, default_value_t = 4)]
        nmodes: usize,
        /// Use the axisymmetric Rayleigh-Ritz solver instead of Bessel roots.
        #[arg(long)]
        ritz: bool,
        /// Highest nodal-diameter family included in the Bessel ladder.
        #[arg(long, default_value_t = 3)]
        max_diameters: u32,
    },
    /// Harmonic frequency response (center deflection and open-circuit
    /// voltage per unit pressure).
    Freqresp {
        /// Grid start (Hz); defaults to 0.05 f_n.
        #[arg(long)]
        fmin: Option<f64>,
        /// Grid end (Hz); defaults to 3 f_n.
        #[arg(long)]
        fmax: Option<f64>,
        /// Grid size; defaults to 501.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Static bending: moments and top-surface von Mises stress profile.
    Stress {
        /// Uniform pressure (Pa); defaults to the config analysis pressure.
        #[arg(long)]
        pressure: Option<f64>,
        /// Radial sample count.
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Sweep one model parameter over a grid.
    Sweep {
        /// One of plate_radius, piezo_thickness, pressure,
        /// electrode_coverage, point_radius.
        #[arg(long)]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Comma-separated subset of f_n,v_oc,w0,zeta,q,displacement.
        #[arg(long)]
        outputs: Option<String>,
        /// Logarithmic grid spacing.
        #[arg(long)]
        log: bool,
        /// Evaluation pressure (Pa); defaults to the config analysis pressure.
        #[arg(long)]
        pressure: Option<f64>,
        /// CSV file `value,zeta` giving a damping table over the swept
        /// parameter (linearly interpolated).
        #[arg(long, value_name = "PATH")]
        zeta_table: Option<PathBuf>,
        /// Also report the optimal electrode coverage gamma*.
        #[arg(long)]
        optimize_coverage: bool,
    },
    /// Summary statistics of a measured voltage trace.
    TraceStats {
        /// Trace CSV with header t_s,v_volts[,p_pa].
        #[arg(long, value_name = "PATH")]
        trace: PathBuf,
    },
    /// Compare the model prediction against a measured trace.
    Compare {
        #[arg(long, value_name = "PATH")]
        trace: PathBuf,
        /// Nominal pressure (Pa); falls back to the trace pressure channel mean.
        #[arg(long)]
        pressure: Option<f64>,
        /// Pressure tolerance (Pa) for the error-bar band.
        #[arg(long, default_value_t = 0.0)]
        pressure_tol: f64,
        /// Drive frequency (Hz); static evaluation when absent.
        #[arg(long)]
        freq: Option<f64>,
        /// Evaluate at the model's natural frequency.
        #[arg(long)]
        at_resonance: bool,
    },
}

enum CliError {
    Usage(String),
    Model(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

fn error_kind_and_code(e: &CliError) -> (&'static str, u8) {
    match e {
        CliError::Usage(_) => ("usage", 1),
        CliError::Model(m) => match m {
            Error::Domain(_) | Error::Numeric(_) | Error::QuadratureConvergence { .. } => {
                ("numeric", 3)
            }
            _ => ("config", 2),
        },
    }
}

fn emit_error(kind: &str, message: &str) {
    let line = serde_json::json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{line}");
}

/// Parse arguments and run; the binary's whole body.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            emit_error("usage", e.to_string().lines().next().unwrap_or("bad usage"));
            return ExitCode::from(1);
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (kind, code) = error_kind_and_code(&e);
            let message = match &e {
                CliError::Usage(m) => m.clone(),
                CliError::Model(m) => m.to_string(),
            };
            emit_error(kind, &message);
            ExitCode::from(code)
        }
    }
}

fn load_db() -> Result<MaterialDb, Error> {
    match std::env::var_os(MATERIALS_ENV) {
        Some(path) => MaterialDb::from_path(Path::new(&path)),
        None => Ok(MaterialDb::builtin().clone()),
    }
}

struct ConfiguredModel {
    config: ModelConfig,
    model: HarvesterModel,
    provenance: Provenance,
}

fn load_model(cli: &Cli) -> Result<ConfiguredModel, CliError> {
    let path = cli.config.as_ref().ok_or_else(|| {
        CliError::Usage("this command needs --config PATH (a model config JSON)".into())
    })?;
    let db = load_db()?;
    let (config, raw) = ModelConfig::from_path(path)?;
    let model = config.build_model(&db)?;
    let provenance = Provenance::new(db.source_sha256().to_string()).with_config(&raw);
    Ok(ConfiguredModel {
        config,
        model,
        provenance,
    })
}

/// Send a tabular result to stdout or files, honoring --format.
fn emit_table(
    cli: &Cli,
    basename: &str,
    csv_text: String,
    json_value: serde_json::Value,
    provenance: &Provenance,
) -> Result<(), Error> {
    match cli.format {
        Format::Json => {
            let pretty = serde_json::to_string_pretty(&json_value)? + "\n";
            write_or_print(cli, &format!("{basename}.json"), &pretty)
        }
        Format::Csv => {
            write_or_print(cli, &format!("{basename}.csv"), &csv_text)?;
            if let Some(dir) = &cli.out {
                let sidecar = serde_json::to_string_pretty(provenance)? + "\n";
                std::fs::write(dir.join(format!("{basename}.provenance.json")), sidecar)?;
            } else {
                eprintln!("{}", serde_json::to_string(provenance)?);
            }
            Ok(())
        }
    }
}

/// Send a JSON report to stdout or a file (report commands ignore --format).
fn emit_report(cli: &Cli, basename: &str, json_value: &impl Serialize) -> Result<(), Error> {
    let pretty = serde_json::to_string_pretty(json_value)? + "\n";
    write_or_print(cli, &format!("{basename}.json"), &pretty)
}

fn write_or_print(cli: &Cli, filename: &str, contents: &str) -> Result<(), Error> {
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(filename), contents)?;
            Ok(())
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Materials {
            screen,
            thickness,
            stress,
        } => cmd_materials(cli, *screen, *thickness, *stress),
        Command::Analyze => cmd_analyze(cli),
        Command::Modal {
            nmodes,
            ritz,
            max_diameters,
        } => cmd_modal(cli, *nmodes, *ritz, *max_diameters),
        Command::Freqresp { fmin, fmax, points } => cmd_freqresp(cli, *fmin, *fmax, *points),
        Command::Stress { pressure, points } => cmd_stress(cli, *pressure, *points),
        Command::Sweep {
            param,
            from,
            to,
            steps,
            outputs,
            log,
            pressure,
            zeta_table,
            optimize_coverage,
        } => cmd_sweep(
            cli,
            param,
            *from,
            *to,
            *steps,
            outputs.as_deref(),
            *log,
            *pressure,
            zeta_table.as_deref(),
            *optimize_coverage,
        ),
        Command::TraceStats { trace } => cmd_trace_stats(cli, trace),
        Command::Compare {
            trace,
            pressure,
            pressure_tol,
            freq,
            at_resonance,
        } => cmd_compare(cli, trace, *pressure, *pressure_tol, *freq, *at_resonance),
    }
}

// ---------- materials ----------

fn cmd_materials(cli: &Cli, screen: bool, thickness: f64, stress: f64) -> Result<(), CliError> {
    let db = load_db()?;
    let provenance = Provenance::new(db.source_sha256().to_string());

    let mut csv_text = String::from(
        "name,youngs_modulus,poisson_ratio,density,rel_permittivity,e31f,g33",
    );
    if screen {
        csv_text.push_str(",screen_voltage_v");
    }
    csv_text.push('\n');
    let mut screening = Vec::new();
    for m in db.materials() {
        csv_text.push_str(&format!(
            "{},{},{},{},{},{},{}",
            m.name,
            m.youngs_modulus,
            m.poisson_ratio,
            m.density,
            m.rel_permittivity,
            m.e31f,
            m.g33
        ));
        if screen {
            let v = voltage_estimate_stress(m, thickness, stress)?;
            csv_text.push_str(&format!(",{}", v.volts));
            screening.push(serde_json::json!({
                "name": m.name,
                "voltage_v": v.volts,
                "passive_material": v.passive_material,
            }));
        }
        csv_text.push('\n');
    }

    let mut json = serde_json::json!({
        "materials": db.materials(),
        "provenance": provenance,
    });
    if screen {
        json["screening"] = serde_json::json!({
            "thickness_m": thickness,
            "stress_pa": stress,
            "voltages": screening,
        });
    }
    emit_table(cli, "materials", csv_text, json, &provenance)?;
    Ok(())
}

// ---------- analyze ----------

#[derive(Serialize)]
struct AnalysisReport {
    #[serde(flatten)]
    params: LemParams,
    plate_radius_m: f64,
    electrode_coverage: f64,
    top_electrode_radius_m: f64,
    section: SectionProps,
    warnings: Vec<String>,
    /// The material property set actually used, echoed for auditability.
    materials: Vec<MaterialProps>,
    provenance: Provenance,
}

fn analysis_warnings(model: &HarvesterModel, params: &LemParams, section: &SectionProps) -> Vec<String> {
    let mut warnings = Vec::new();
    if let Some(z_p) = section.piezo_offset_m {
        if z_p == 0.0 {
            warnings.push(
                "piezoelectric layer lies exactly on the neutral plane (z_p = 0): zero coupling"
                    .into(),
            );
        }
    }
    if params.coupling_ratio_c_per_m == 0.0 {
        warnings.push(
            "electromechanical coupling ratio is zero (eta = 0): no voltage output".into(),
        );
    }
    if model.electrode_coverage == 1.0 {
        warnings.push(
            "full electrode coverage cancels the coupling integral (gamma = 1 gives I_m = 0)"
                .into(),
        );
    }
    warnings
}

fn echoed_materials(model: &HarvesterModel) -> Vec<MaterialProps> {
    let mut out: Vec<MaterialProps> = Vec::new();
    let mut push = |m: &MaterialProps| {
        if !out.iter().any(|e| e.name == m.name) {
            out.push(m.clone());
        }
    };
    for layer in model.stack.layers() {
        push(&layer.material);
    }
    if let Some(te) = &model.top_electrode {
        push(&te.material);
    }
    out
}

fn cmd_analyze(cli: &Cli) -> Result<(), CliError> {
    let cm = load_model(cli)?;
    let params = cm.model.params()?;
    let section = cm.model.section();
    let warnings = analysis_warnings(&cm.model, &params, &section);
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let report = AnalysisReport {
        plate_radius_m: cm.model.plate_radius_m,
        electrode_coverage: cm.model.electrode_coverage,
        top_electrode_radius_m: cm.model.top_electrode_radius_m(),
        materials: echoed_materials(&cm.model),
        section,
        warnings,
        params,
        provenance: cm.provenance,
    };
    emit_report(cli, "analysis", &report)?;
    Ok(())
}

// ---------- modal ----------

fn modal_csv(modes: &[ModalResult]) -> String {
    let mut out = String::from("n,m,lambda_sq,f_hz\n");
    for mode in modes {
        out.push_str(&format!(
            "{},{},{},{}\n",
            mode.n, mode.m, mode.lambda_sq, mode.frequency_hz
        ));
    }
    out
}

fn cmd_modal(cli: &Cli, nmodes: usize, ritz: bool, max_diameters: u32) -> Result<(), CliError> {
    let cm = load_model(cli)?;
    let section = cm.model.section();
    let modes = if ritz {
        plate_oracle::rayleigh_ritz_modes(&section, cm.model.plate_radius_m, nmodes)?
    } else {
        plate_oracle::modal_ladder(&section, cm.model.plate_radius_m, nmodes, max_diameters)?
    };
    let json = serde_json::json!({
        "method": if ritz { "rayleigh_ritz" } else { "bessel" },
        "modes": modes,
        "provenance": cm.provenance,
    });
    emit_table(cli, "modal", modal_csv(&modes), json, &cm.provenance)?;
    Ok(())
}

// ---------- freqresp ----------

fn cmd_freqresp(
    cli: &Cli,
    fmin: Option<f64>,
    fmax: Option<f64>,
    points: Option<usize>,
) -> Result<(), CliError> {
    let cm = load_model(cli)?;
    let f_n = cm.model.params()?.natural_frequency_hz;
    let mut analysis = cm.config.analysis.clone();
    if fmin.is_some() {
        analysis.freq_min_hz = fmin;
    }
    if fmax.is_some() {
        analysis.freq_max_hz = fmax;
    }
    if points.is_some() {
        analysis.freq_points = points;
    }
    let mut cfg = cm.config.clone();
    cfg.analysis = analysis;
    let grid = cfg.frequency_grid(f_n)?;
    let resp: FrequencyResponse = cm.model.frequency_response(&grid)?;
    let json = serde_json::json!({
        "response": resp,
        "natural_frequency_hz": f_n,
        "provenance": cm.provenance,
    });
    emit_table(cli, "freqresp", resp.to_csv(), json, &cm.provenance)?;
    Ok(())
}

// ---------- stress ----------

fn cmd_stress(cli: &Cli, pressure: Option<f64>, points: usize) -> Result<(), CliError> {
    let cm = load_model(cli)?;
    let p = pressure.unwrap_or(cm.config.analysis.pressure_pa);
    let section = cm.model.section();
    let (w0, field) =
        plate_oracle::static_bending_sampled(&section, cm.model.plate_radius_m, p, points)?;
    let mut csv_text = String::from("rho_m,mr,mt,von_mises_pa\n");
    for i in 0..field.radii_m.len() {
        csv_text.push_str(&format!(
            "{},{},{},{}\n",
            field.radii_m[i],
            field.radial_moment_n[i],
            field.tangential_moment_n[i],
            field.von_mises_top_pa[i]
        ));
    }
    let json = serde_json::json!({
        "pressure_pa": p,
        "center_deflection_m": w0,
        "field": field,
        "provenance": cm.provenance,
    });
    emit_table(cli, "stress", csv_text, json, &cm.provenance)?;
    Ok(())
}

// ---------- sweep ----------

fn load_zeta_table(path: &Path) -> Result<Vec<(f64, f64)>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| Error::Config(format!("zeta table header: {e}")))?
        .clone();
    let cols: Vec<&str> = headers.iter().collect();
    if cols != ["value", "zeta"] {
        return Err(Error::Config(format!(
            "zeta table header must be value,zeta (got {})",
            cols.join(",")
        )));
    }
    let mut table = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Config(format!("zeta table row {}: {e}", i + 2)))?;
        let v: f64 = record[0]
            .parse()
            .map_err(|e| Error::Config(format!("zeta table row {}: value: {e}", i + 2)))?;
        let z: f64 = record[1]
            .parse()
            .map_err(|e| Error::Config(format!("zeta table row {}: zeta: {e}", i + 2)))?;
        table.push((v, z));
    }
    Ok(table)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    cli: &Cli,
    param: &str,
    from: f64,
    to: f64,
    steps: usize,
    outputs: Option<&str>,
    log: bool,
    pressure: Option<f64>,
    zeta_table: Option<&Path>,
    with_coverage_opt: bool,
) -> Result<(), CliError> {
    let cm = load_model(cli)?;
    let parameter = SweepParameter::parse(param)?;
    let outputs = match outputs {
        Some(list) => list
            .split(',')
            .map(|s| SweepOutput::parse(s.trim()))
            .collect::<Result<Vec<_>, _>>()?,
        None => SweepOutput::defaults_for(parameter),
    };
    let spec = SweepSpec {
        base: cm.model.clone(),
        parameter,
        from,
        to,
        steps,
        outputs,
        log_spacing: log,
        pressure_pa: pressure.unwrap_or(cm.config.analysis.pressure_pa),
        zeta_table: match zeta_table {
            Some(p) => Some(load_zeta_table(p)?),
            None => None,
        },
    };
    let result = run_sweep(&spec)?;
    let mut json = serde_json::json!({
        "sweep": result,
        "provenance": cm.provenance,
    });
    if with_coverage_opt {
        json["coverage_optimum"] = serde_json::to_value(optimize_coverage(&cm.model)?)
            .map_err(Error::from)?;
    }
    emit_table(cli, "sweep", result.to_csv(), json, &cm.provenance)?;
    Ok(())
}

// ---------- trace-stats ----------

fn cmd_trace_stats(cli: &Cli, trace_path: &Path) -> Result<(), CliError> {
    let db = load_db()?;
    let (trace, raw) = MeasurementTrace::from_path(trace_path)?;
    let stats = trace.stats()?;
    let provenance = Provenance::new(db.source_sha256().to_string()).with_trace(&raw);
    let json = serde_json::json!({
        "stats": stats,
        "mean_pressure_pa": trace.mean_pressure_pa(),
        "provenance": provenance,
    });
    emit_report(cli, "trace_stats", &json)?;
    Ok(())
}

// ---------- compare ----------

fn cmd_compare(
    cli: &Cli,
    trace_path: &Path,
    pressure: Option<f64>,
    pressure_tol: f64,
    freq: Option<f64>,
    at_resonance: bool,
) -> Result<(), CliError> {
    let cm = load_model(cli)?;
    let (trace, raw) = MeasurementTrace::from_path(trace_path)?;
    let pressure = match pressure.or_else(|| trace.mean_pressure_pa()) {
        Some(p) => p,
        None => {
            return Err(CliError::Model(Error::Config(
                "no pressure given: pass --pressure or provide a p_pa trace column".into(),
            )))
        }
    };
    let excitation = if at_resonance {
        Excitation::Frequency(cm.model.params()?.natural_frequency_hz)
    } else {
        match freq {
            Some(f) => Excitation::Frequency(f),
            None => Excitation::Static,
        }
    };
    let report = crate::trace::compare(&cm.model, &trace, pressure, pressure_tol, excitation)?;
    let provenance = cm.provenance.with_trace(&raw);
    let json = serde_json::json!({
        "comparison": report,
        "provenance": provenance,
    });
    emit_report(cli, "compare", &json)?;
    Ok(())
}
