//! Second-order harmonic response of the device and the bandwidth-extracted
//! quality factor.
//!
//! ```bash
//! cargo run --example frequency_response
//! ```

use piezoharv::laminate::{LaminateStack, LayerRole, LayerSpec};
use piezoharv::lem::HarvesterModel;
use piezoharv::materials::MaterialDb;

fn main() {
    let mat = |name: &str| MaterialDb::builtin().lookup(name).unwrap().clone();
    let stack = LaminateStack::new(vec![
        LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
        LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
    ])
    .unwrap();
    let model = HarvesterModel::new(stack, 1.5e-3, 0.5, 0.117).unwrap();
    let params = model.params().unwrap();
    let f_n = params.natural_frequency_hz;

    let grid: Vec<f64> = (0..2001)
        .map(|i| f_n * (0.05 + 2.95 * i as f64 / 2000.0))
        .collect();
    let resp = model.frequency_response(&grid).unwrap();

    println!("f_n = {f_n:.1} Hz, zeta = {}, Q = {:.4}", params.damping_ratio, params.quality_factor);
    println!("\n{:>10} {:>14} {:>10} {:>12}", "f (Hz)", "amp (m/Pa)", "phase", "V_oc (V/Pa)");
    for i in (0..grid.len()).step_by(250) {
        println!(
            "{:>10.0} {:>14.4e} {:>10.4} {:>12.4e}",
            resp.frequencies_hz[i],
            resp.amplitude_m_per_pa[i],
            resp.phase_rad[i],
            resp.voltage_v_per_pa[i]
        );
    }

    let q_bw = resp.bandwidth_q(f_n).unwrap();
    println!("\nhalf-power bandwidth Q = {q_bw:.4} vs 1/(2 zeta) = {:.4}", params.quality_factor);
}
