//! Natural modes of the clamped plate: Bessel-root ladder and Rayleigh-Ritz
//! convergence.
//!
//! ```bash
//! cargo run --example modal_ladder
//! ```

use piezoharv::laminate::{LaminateStack, LayerRole, LayerSpec};
use piezoharv::materials::MaterialDb;
use piezoharv::plate_oracle::{
    clamped_plate_eigenvalue, modal_ladder, rayleigh_ritz_solve,
};

fn main() {
    let mat = |name: &str| MaterialDb::builtin().lookup(name).unwrap().clone();
    let section = LaminateStack::new(vec![
        LayerSpec::new(mat("Tape"), 65e-6, LayerRole::Adhesive).unwrap(),
        LayerSpec::new(mat("PVDF-TrFe"), 18e-6, LayerRole::Piezoelectric).unwrap(),
    ])
    .unwrap()
    .section_props();
    let r = 1.5e-3;

    println!("lowest modes (n = nodal diameters, m = nodal circles):");
    println!("{:>3} {:>3} {:>12} {:>12}", "n", "m", "lambda^2", "f (kHz)");
    for mode in modal_ladder(&section, r, 6, 3).unwrap() {
        println!(
            "{:>3} {:>3} {:>12.4} {:>12.3}",
            mode.n,
            mode.m,
            mode.lambda_sq,
            mode.frequency_hz / 1e3
        );
    }

    // Ritz convergence of the fundamental toward the Bessel root.
    let reference = clamped_plate_eigenvalue(0, 1).unwrap();
    println!("\nRayleigh-Ritz convergence (fundamental lambda^2, reference {reference:.5}):");
    for basis in 1..=8 {
        let sol = rayleigh_ritz_solve(basis, section.effective_poisson).unwrap();
        let lam_sq = sol.lambda4[0].sqrt();
        println!(
            "  basis {basis}: {lam_sq:.6}  (excess {:+.3e})",
            lam_sq - reference
        );
    }
}
