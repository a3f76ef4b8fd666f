//! Forbidding the class of x: B condenses, and the five remaining labels
//! are the symmetric block of D(Z3).

use anyon_phases::engine::{MatchVia, Protocol, StepPayload};
use anyon_phases::group::FiniteGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = FiniteGroup::resolve("s3")?;
    let p = Protocol::new(&g)?;
    let spec = p.spec_from_names(&["Cx".into()], &[])?;
    let report = p.run_auto(&spec)?;
    println!("{}", report.to_markdown());

    for step in &report.steps {
        if let StepPayload::CatalogMatch { via: MatchVia::Split { merge_map }, relabeling, .. } = &step.payload {
            println!("merge map: {merge_map}");
            for (from, to) in relabeling {
                println!("  {from:<4} = {to}");
            }
        }
    }
    Ok(())
}
