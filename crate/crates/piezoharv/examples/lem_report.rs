//! Full lumped-element parameter chain for the fabricated device.
//!
//! ```bash
//! cargo run --example lem_report
//! ```

use piezoharv::laminate::{LaminateStack, LayerRole, LayerSpec};
use piezoharv::lem::{Excitation, HarvesterModel};
use piezoharv::materials::MaterialDb;

fn main() {
    let mat = |name: &str| MaterialDb::builtin().lookup(name).unwrap().clone();
    let stack = LaminateStack::new(vec![
        LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
        LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
    ])
    .unwrap();

    // r = 1.5 mm, half-coverage electrode, damping ratio 0.117.
    let model = HarvesterModel::new(stack, 1.5e-3, 0.5, 0.117).unwrap();
    let p = model.params().unwrap();

    println!("derived lumped elements:");
    println!("  capacitance C        {:>12.4e} F", p.capacitance_f);
    println!("  coupling integral    {:>12.5}", p.coupling_integral);
    println!("  strain integral      {:>12.5}", p.strain_integral);
    println!("  compliance 1/k_m     {:>12.4e} m/N", p.compliance_m_per_n);
    println!("  stiffness k_m        {:>12.4e} N/m", p.stiffness_n_per_m);
    println!("  coupling ratio eta   {:>12.4e} C/m", p.coupling_ratio_c_per_m);
    println!("  moment per volt      {:>12.4e} N", p.piezo_moment_per_volt_n);
    println!("  natural frequency    {:>12.1} Hz", p.natural_frequency_hz);
    println!("  disk mass m_d        {:>12.4e} kg", p.disk_mass_kg);
    println!("  modal mass m_m       {:>12.4e} kg", p.modal_mass_kg);
    println!("  damping ratio zeta   {:>12.4}", p.damping_ratio);
    println!("  quality factor Q     {:>12.4}", p.quality_factor);

    for pressure in [200.0, 300.0, 400.0, 500.0] {
        let v_static = model
            .voltage_at_pressure(pressure, Excitation::Static)
            .unwrap();
        let v_res = model
            .voltage_at_pressure(pressure, Excitation::Frequency(p.natural_frequency_hz))
            .unwrap();
        println!(
            "  V_oc at {pressure:>5.0} Pa:   static {v_static:>8.4} V   at resonance {v_res:>8.4} V"
        );
    }
}
