//! The canonical foliation of the Kodaira surface and its transversal spaces.

use lck_core::invariant::{catalog_model, FoliationData, InvariantComplex};

fn main() -> lck_core::Result<()> {
    let cx = InvariantComplex::new(&catalog_model("kodaira-surface")?)?;
    let f = FoliationData::new(&cx)?;
    println!("basic forms: {}", f.basic().dim());
    let s = f.transversal_spaces(&cx);
    for k in 0..cx.n() {
        println!("s{k} = {}", s.s(k));
    }
    for (p, q) in [(0, 0), (1, 0), (0, 1)] {
        println!("s^{p}{q} = {}", s.s_pq(p, q));
    }
    for c in f.structure_checks(&cx) {
        println!("[{}] {}", if c.holds { "ok" } else { "fails" }, c.name);
    }
    Ok(())
}
