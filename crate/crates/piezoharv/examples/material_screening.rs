//! Screen candidate piezoelectric materials by their g33 voltage constant.
//!
//! ```bash
//! cargo run --example material_screening
//! ```

use piezoharv::materials::{voltage_estimate_stress, voltage_estimate_strain, MaterialDb};

fn main() {
    let db = MaterialDb::builtin();
    let thickness = 18e-6; // film thickness (m)
    let stress = 1e6; // applied stress (Pa)

    println!("g33 voltage screening at t = {thickness:.0e} m, s = {stress:.0e} Pa");
    println!("{:<12} {:>12} {:>14}", "material", "g33 (V*m/N)", "V = g33*t*s (V)");
    let mut rows: Vec<_> = db.materials().iter().collect();
    rows.sort_by(|a, b| b.g33.partial_cmp(&a.g33).unwrap());
    for m in rows {
        let v = voltage_estimate_stress(m, thickness, stress).unwrap();
        let note = if v.passive_material { "  (passive)" } else { "" };
        println!("{:<12} {:>12.5} {:>14.4}{note}", m.name, m.g33, v.volts);
    }

    // The strain route is the same estimate with s = E * eps.
    let pvdf = db.lookup("PVDF-TrFe").unwrap();
    let eps = 1e-3;
    let by_strain = voltage_estimate_strain(pvdf, thickness, eps).unwrap();
    println!(
        "\nPVDF-TrFe at strain {eps:.0e}: V = {:.4} V (E = {:.2e} Pa)",
        by_strain.volts, pvdf.youngs_modulus
    );
}
