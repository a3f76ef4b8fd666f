//! The flavor diagram of D(S3) and what survives each single forbidden label.

use anyon_phases::flavor::{build_diagram, ForbidSpec};
use anyon_phases::group::FiniteGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = FiniteGroup::resolve("s3")?;
    let d = build_diagram(&g)?;
    println!("{}", d.to_ascii());
    println!("squares per anyon: {:?} (total {})\n", d.square_counts(), d.total_squares());

    let single = (1..d.class_names.len())
        .map(|c| ForbidSpec::new([c], []))
        .chain((1..d.irrep_names.len()).map(|i| ForbidSpec::new([], [i])));
    for spec in single {
        let s = d.survivors(&spec)?;
        let names = |v: &[usize]| v.iter().map(|&a| d.anyon_names[a].clone()).collect::<Vec<_>>().join(" ");
        let partial: Vec<String> = s
            .partially_forbidden
            .iter()
            .map(|&(a, _)| format!("{} (dim {:.3})", d.anyon_names[a], s.predicted_dims[a]))
            .collect();
        println!("{:<10} survivors [{}], partial [{}]", spec.display(&d), names(&s.surviving), partial.join(", "));
    }
    Ok(())
}
