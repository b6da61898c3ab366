//! Static bending under the wind-pressure ladder: deflection and von Mises
//! stress profiles.
//!
//! ```bash
//! cargo run --example static_stress
//! ```

use piezoharv::laminate::{LaminateStack, LayerRole, LayerSpec};
use piezoharv::materials::MaterialDb;
use piezoharv::plate_oracle::{deflection_at, static_bending};

fn main() {
    let mat = |name: &str| MaterialDb::builtin().lookup(name).unwrap().clone();
    let section = LaminateStack::new(vec![
        LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
        LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
    ])
    .unwrap()
    .section_props();
    let r = 1.5e-3;

    println!("pressure ladder (uniform load, clamped rim):");
    for p in [200.0, 300.0, 400.0, 500.0] {
        let (w0, field) = static_bending(&section, r, p).unwrap();
        let vm_edge = *field.von_mises_top_pa.last().unwrap();
        let vm_center = field.von_mises_top_pa[0];
        println!(
            "  {p:>5.0} Pa: w0 = {w0:.3e} m, von Mises center {:.3e} Pa, edge {:.3e} Pa",
            vm_center, vm_edge
        );
    }

    let (w0, _) = static_bending(&section, r, 400.0).unwrap();
    println!("\ndeflection profile at 400 Pa (w/w0 follows (1 - x^2)^2):");
    for i in 0..=10 {
        let rho = r * i as f64 / 10.0;
        let w = deflection_at(w0, r, rho).unwrap();
        println!("  rho = {:>9.3e} m: w = {:>10.3e} m", rho, w);
    }
}
