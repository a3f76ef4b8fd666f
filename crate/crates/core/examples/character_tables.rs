//! Character tables of the preset groups, with their orthogonality defects.

use anyon_phases::group::{character_table, FiniteGroup, PRESET_NAMES};
use anyon_phases::render;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in PRESET_NAMES {
        let g = FiniteGroup::resolve(name)?;
        let table = character_table(&g)?;
        let reps: Vec<&str> = table.classes.iter().map(|c| g.element_name(c.representative)).collect();
        println!("{} (order {}), classes {:?}", g.name(), g.order(), reps);
        for irrep in &table.irreps {
            let row: Vec<String> = irrep.values.iter().map(|&z| render::complex_number(z)).collect();
            println!("  {:<12} {}", irrep.name, row.join("  "));
        }
        println!(
            "  row defect {:.1e}, column defect {:.1e}\n",
            table.row_orthogonality_defect(),
            table.column_orthogonality_defect()
        );
    }
    Ok(())
}
