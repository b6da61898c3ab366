//! Design sweeps: resonance vs. geometry, voltage vs. pressure, and the
//! electrode-coverage optimum.
//!
//! ```bash
//! cargo run --example parameter_sweeps
//! ```

use piezoharv::laminate::{LaminateStack, LayerRole, LayerSpec};
use piezoharv::lem::HarvesterModel;
use piezoharv::materials::MaterialDb;
use piezoharv::sweep::{
    optimize_coverage, run_sweep, SweepOutput, SweepParameter, SweepSpec,
};

fn device() -> HarvesterModel {
    let mat = |name: &str| MaterialDb::builtin().lookup(name).unwrap().clone();
    let stack = LaminateStack::new(vec![
        LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
        LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
    ])
    .unwrap();
    HarvesterModel::new(stack, 1.5e-3, 0.5, 0.117).unwrap()
}

fn main() {
    let radius = SweepSpec {
        base: device(),
        parameter: SweepParameter::PlateRadius,
        from: 0.5e-3,
        to: 3e-3,
        steps: 6,
        outputs: vec![SweepOutput::NaturalFrequency, SweepOutput::OpenCircuitVoltage],
        log_spacing: false,
        pressure_pa: 400.0,
        zeta_table: None,
    };
    println!("radius sweep (f_n scales as 1/r^2):");
    print!("{}", run_sweep(&radius).unwrap().to_csv());

    let thickness = SweepSpec {
        parameter: SweepParameter::PiezoThickness,
        from: 9e-6,
        to: 36e-6,
        outputs: vec![SweepOutput::NaturalFrequency],
        ..radius.clone()
    };
    println!("\npiezo-thickness sweep:");
    print!("{}", run_sweep(&thickness).unwrap().to_csv());

    let pressure = SweepSpec {
        parameter: SweepParameter::Pressure,
        from: 200.0,
        to: 500.0,
        steps: 4,
        outputs: vec![SweepOutput::OpenCircuitVoltage, SweepOutput::CenterDeflection],
        ..radius.clone()
    };
    println!("\npressure sweep (V_oc is exactly linear):");
    print!("{}", run_sweep(&pressure).unwrap().to_csv());

    let opt = optimize_coverage(&device()).unwrap();
    println!(
        "\noptimal electrode coverage gamma* = {:.6} (1/sqrt(2) = {:.6}), |eta| = {:.4e} C/m",
        opt.gamma,
        std::f64::consts::FRAC_1_SQRT_2,
        opt.eta_abs
    );
}
