//! Prints the modular data of D(S3): anyons, S, T and fusion rules.

use anyon_phases::group::FiniteGroup;
use anyon_phases::modular::build_double;
use anyon_phases::render;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = FiniteGroup::resolve("s3")?;
    let theory = build_double(&g)?;
    let names = theory.names();

    println!("{} anyons, D = {}", theory.len(), theory.total_dim);
    for (i, label) in theory.labels.iter().enumerate() {
        let d = label.double.as_ref().expect("double labels");
        println!("  {:<2} flux {:<3} charge {:<10} dim {} {}", names[i], d.class_name, d.irrep_name, theory.dims[i], d.kind);
    }
    println!("\nS =\n{}", render::matrix_markdown(&theory.s, &names));
    if let Some(t) = &theory.t {
        let spins: Vec<String> = t.iter().map(|&z| render::complex_number(z)).collect();
        println!("T = diag({})\n", spins.join(", "));
    }
    for a in 0..theory.len() {
        for b in a..theory.len() {
            println!("{} × {} = {}", names[a], names[b], theory.fusion.format_product(a, b, &names));
        }
    }
    Ok(())
}
