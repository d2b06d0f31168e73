//! Betti, Hodge and box-harmonic numbers for every catalog model.

use lck_core::invariant::{catalog, HarmonicTable, InvariantComplex};

fn main() -> lck_core::Result<()> {
    for model in catalog() {
        let cx = InvariantComplex::new(&model)?;
        let t = HarmonicTable::compute(&cx);
        println!("{}", model.name());
        println!("  b     = {:?}", t.betti_numbers());
        println!("  h_box = {:?}", (0..=4).map(|k| t.h_box_degree(k)).collect::<Vec<_>>());
        for k in 0..=4 {
            let row: Vec<String> = t
                .bidegrees_of(k)
                .into_iter()
                .map(|bd| format!("h^{}{}={}", bd.p, bd.q, t.h(bd.p, bd.q)))
                .collect();
            println!("  {}", row.join(" "));
        }
        println!("  chi = {}", t.euler_characteristic());
    }
    Ok(())
}
