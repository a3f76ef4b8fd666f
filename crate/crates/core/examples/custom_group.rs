//! Builds the dihedral group of the square from permutations, then inspects
//! its double and forbids each nontrivial class in turn.

use anyon_phases::engine::Protocol;
use anyon_phases::group::FiniteGroup;
use anyon_phases::modular::{build_double, validate_theory};

type Perm = [usize; 4];

fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a·b)(i) = a(b(i))
    [a[b[0]], a[b[1]], a[b[2]], a[b[3]]]
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r: Perm = [1, 2, 3, 0];
    let s: Perm = [0, 3, 2, 1];
    let mut elements: Vec<Perm> = vec![[0, 1, 2, 3]];
    let mut names = vec!["e".to_string()];
    let mut k = 0;
    while k < elements.len() {
        for (g, tag) in [(r, "r"), (s, "s")] {
            let p = compose(&elements[k], &g);
            if !elements.contains(&p) {
                let base = if names[k] == "e" { String::new() } else { names[k].clone() };
                elements.push(p);
                names.push(format!("{base}{tag}"));
            }
        }
        k += 1;
    }
    let index = |p: &Perm| elements.iter().position(|q| q == p).expect("closed");
    let table: Vec<Vec<usize>> =
        elements.iter().map(|a| elements.iter().map(|b| index(&compose(a, b))).collect()).collect();
    let g = FiniteGroup::new("D4", table, names)?;

    let theory = build_double(&g)?;
    println!("D({}) has {} anyons, total dimension {}", g.name(), theory.len(), theory.total_dim);
    println!("valid: {}", validate_theory(&theory).passed());

    let p = Protocol::new(&g)?;
    println!("classes: {:?}", p.diagram.class_names);
    println!("irreps:  {:?}", p.diagram.irrep_names);
    for class in &p.diagram.class_names[1..] {
        let spec = p.spec_from_names(std::slice::from_ref(class), &[])?;
        match p.run_auto(&spec) {
            Ok(report) => println!("{{{class}}}: {} ({})", report.final_name().unwrap_or("unidentified"), report.kind_summary()),
            Err(e) => println!("{{{class}}}: {e}"),
        }
    }
    Ok(())
}
