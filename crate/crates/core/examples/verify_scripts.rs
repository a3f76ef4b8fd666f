//! Runs every bundled S3 script, then a copy of one with a wrong
//! condensation block to show the failure report.

use anyon_phases::engine::{bundled_scripts, Protocol, ScriptStep};
use anyon_phases::group::FiniteGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = FiniteGroup::resolve("s3")?;
    let p = Protocol::new(&g)?;
    let scripts = bundled_scripts("s3");
    for s in &scripts {
        let spec = p.spec_from_names(&s.spec.classes, &s.spec.irreps)?;
        match p.run_script(&spec, s) {
            Ok(r) => println!("PASS {:<24} {}", s.name, r.final_name().unwrap_or("-")),
            Err(e) => println!("FAIL {:<24} {e}", s.name),
        }
    }

    let mut bad = scripts.iter().find(|s| s.name == "cx").expect("cx script").clone();
    for step in &mut bad.steps {
        if let ScriptStep::Condense { blocks, .. } = step {
            *blocks = vec![vec!["A".into(), "C".into()]];
        }
    }
    let spec = p.spec_from_names(&bad.spec.classes, &bad.spec.irreps)?;
    println!("\ntampered: {}", p.run_script(&spec, &bad).expect_err("wrong block must fail"));
    Ok(())
}
