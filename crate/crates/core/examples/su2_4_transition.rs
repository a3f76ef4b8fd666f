//! Both routes to SU(2)_4: forbidding Cy and forbidding Gamma2 give the same
//! theory on different label sets.

use anyon_phases::engine::Protocol;
use anyon_phases::group::FiniteGroup;
use anyon_phases::render;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = FiniteGroup::resolve("s3")?;
    let p = Protocol::new(&g)?;
    for (classes, irreps) in [(vec!["Cy".to_string()], vec![]), (vec![], vec!["Gamma2".to_string()])] {
        let spec = p.spec_from_names(&classes, &irreps)?;
        let report = p.run_auto(&spec)?;
        println!("{} → {}", report.spec_display(), report.final_name().unwrap_or("-"));
        println!("  steps: {}", report.kind_summary());
        if let Some(last) = report.steps.last() {
            if let Some(s) = &last.s {
                println!("  S = {}", render::matrix_inline(&s.to_matrix()));
            }
        }
        if let Some(f) = &report.final_theory {
            let pairs: Vec<String> = f.correspondence.iter().map(|(a, b)| format!("{a}={b}")).collect();
            println!("  {}\n", pairs.join(", "));
        }
    }
    Ok(())
}
