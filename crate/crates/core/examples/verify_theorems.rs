//! Every theorem verdict on the Hopf surface, with compared quantities.

use lck_core::invariant::catalog_model;
use lck_core::report::render_verdict;
use lck_core::verify::verify_all;

fn main() -> lck_core::Result<()> {
    let model = catalog_model("hopf-surface")?;
    for v in verify_all(&model)? {
        print!("{}", render_verdict(&v, v.failures().next().is_some()));
    }
    Ok(())
}
