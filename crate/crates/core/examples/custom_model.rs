//! Builds a model from JSON, runs the tables and writes it back out.

use lck_core::invariant::{HarmonicTable, InvariantComplex, LieModel};
use lck_core::report::render_table_text;

const HOPF_JSON: &str = r#"{
  "name": "hopf-copy",
  "dim": 4,
  "structure_constants": [[2, 3, 4, "1"], [3, 4, 2, "1"], [4, 2, 3, "1"]],
  "J": [["0","-1","0","0"],["1","0","0","0"],["0","0","0","-1"],["0","0","1","0"]],
  "theta": ["1", "0", "0", "0"]
}"#;

fn main() -> lck_core::Result<()> {
    let model = LieModel::from_json(HOPF_JSON)?;
    let cx = InvariantComplex::new(&model)?;
    let t = HarmonicTable::compute(&cx);
    print!("{}", render_table_text(&t, false));
    let path = std::env::temp_dir().join("hopf-copy.json");
    model.save(&path)?;
    println!("saved to {}", path.display());
    Ok(())
}
