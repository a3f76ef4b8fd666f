//! Runs the automatic protocol on every cell of the S3 flavor diagram.
//!
//! `cargo run --example phase_diagram -- --verbose` also prints each report.

use anyon_phases::engine::Protocol;
use anyon_phases::group::FiniteGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let verbose = std::env::args().any(|a| a == "--verbose");
    let g = FiniteGroup::resolve("s3")?;
    let p = Protocol::new(&g)?;
    for cell in p.enumerate_diagram() {
        let spec = format!("{{{}}}", cell.names.join(", "));
        let script = match cell.script_agrees {
            Some(true) => "script agrees",
            Some(false) => "script DISAGREES",
            None => "no script",
        };
        match &cell.result {
            Ok(r) => {
                println!("{spec:<28} {:<10} {}  [{script}]", r.final_name().unwrap_or("-"), r.kind_summary());
                if verbose {
                    println!("{}", r.to_markdown());
                }
            }
            Err(e) => println!("{spec:<28} FAILED: {e}  [{script}]"),
        }
    }
    Ok(())
}
