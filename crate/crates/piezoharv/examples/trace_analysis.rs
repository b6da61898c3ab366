//! Ingest a wind-test voltage trace, report its statistics, and compare the
//! model prediction at the measured pressure band.
//!
//! ```bash
//! cargo run --example trace_analysis
//! ```

use piezoharv::laminate::{LaminateStack, LayerRole, LayerSpec};
use piezoharv::lem::{Excitation, HarvesterModel};
use piezoharv::materials::MaterialDb;
use piezoharv::trace::{compare, MeasurementTrace};

fn main() {
    // Synthetic rig trace shaped like the wind-test record: an offset sine
    // with +0.984 V / -0.756 V extrema riding at the drive frequency.
    let fs = 20_000.0;
    let f_drive = 1000.0;
    let (offset, amp) = (0.114, 0.870);
    let time: Vec<f64> = (0..2000).map(|i| i as f64 / fs).collect();
    let volts: Vec<f64> = time
        .iter()
        .map(|&t| offset + amp * (2.0 * std::f64::consts::PI * f_drive * t).sin())
        .collect();
    let pressure = vec![400.0; time.len()];
    let trace = MeasurementTrace::new(time, volts, Some(pressure)).unwrap();

    let stats = trace.stats().unwrap();
    println!("trace statistics:");
    println!("  samples        {}", stats.n_samples);
    println!("  sample rate    {:.0} Hz", stats.sample_rate_hz);
    println!("  V_max          {:.3} V", stats.v_max);
    println!("  V_min          {:.3} V", stats.v_min);
    println!("  V_pp           {:.3} V", stats.v_pp);
    println!("  V_rms          {:.3} V", stats.v_rms);
    println!("  dominant freq  {:.1} Hz", stats.dominant_freq_hz.unwrap());

    let mat = |name: &str| MaterialDb::builtin().lookup(name).unwrap().clone();
    let stack = LaminateStack::new(vec![
        LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
        LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
    ])
    .unwrap();
    let model = HarvesterModel::new(stack, 1.5e-3, 0.5, 0.117).unwrap();

    // 400 +/- 30 Pa band, device driven at resonance.
    let f_n = model.params().unwrap().natural_frequency_hz;
    let report = compare(&model, &trace, 400.0, 30.0, Excitation::Frequency(f_n)).unwrap();
    println!("\nmodel vs measurement at 400 +/- 30 Pa (drive at f_n = {f_n:.0} Hz):");
    println!(
        "  model V_oc     {:.3} V  (band {:.3} .. {:.3} V)",
        report.model_voltage_v, report.model_voltage_lo_v, report.model_voltage_hi_v
    );
    println!("  measured V_max {:.3} V", report.measured_vmax_v);
    println!(
        "  relative error {:.1}%  ({})",
        100.0 * report.rel_error_vmax,
        report.convention
    );
}
