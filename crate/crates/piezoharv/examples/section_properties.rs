//! Cross-section mechanics of the fabricated tape + PVDF laminate.
//!
//! ```bash
//! cargo run --example section_properties
//! ```

use piezoharv::laminate::{modal_mass, LaminateStack, LayerRole, LayerSpec};
use piezoharv::materials::MaterialDb;

fn main() {
    let mat = |name: &str| MaterialDb::builtin().lookup(name).unwrap().clone();

    // 65 um double-sided tape under an 18 um PVDF-TrFe film. The tape is
    // what shifts the piezo layer off the neutral axis.
    let stack = LaminateStack::new(vec![
        LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
        LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
    ])
    .unwrap();

    let props = stack.section_props();
    println!("stack: tape 65 um + PVDF-TrFe 18 um");
    println!("  total thickness      {:>12.3e} m", props.total_thickness_m);
    println!("  neutral plane        {:>12.3e} m", props.neutral_plane_m);
    println!("  piezo offset z_p     {:>12.3e} m", props.piezo_offset_m.unwrap());
    println!("  flexural rigidity D  {:>12.4e} N*m", props.flexural_rigidity_nm);
    println!("  areal mass mu        {:>12.4e} kg/m^2", props.areal_mass_kg_m2);
    println!("  effective Poisson    {:>12.4}", props.effective_poisson);

    let r = 1.5e-3;
    let m_d = stack.disk_mass(r, None).unwrap();
    let m_m = modal_mass(m_d).unwrap();
    println!("\ndisk of radius {r} m:");
    println!("  disk mass m_d        {:>12.4e} kg", m_d);
    println!("  modal mass m_m       {:>12.4e} kg  (m_d / 5)", m_m);
}
