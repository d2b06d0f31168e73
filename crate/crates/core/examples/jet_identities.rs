//! Checks the commutator catalog on the built-in charts at the base point.

use lck_core::identities::CATALOG;
use lck_core::jet::{verify_identity, MetricChart, DEFAULT_SEED, DEFAULT_TRIALS};

fn main() -> lck_core::Result<()> {
    for name in MetricChart::BUILTIN {
        let chart = MetricChart::builtin(name)?;
        let ops = chart.operators()?;
        println!("{name}: Lee form {}", chart.lee_form()?.evaluate());
        for id in CATALOG.iter() {
            let r = verify_identity(&chart, &ops, id, DEFAULT_TRIALS, DEFAULT_SEED)?;
            println!(
                "  {:<6} {} over {} forms",
                id.id,
                if r.is_zero() { "ok" } else { "FAILED" },
                r.spanning_forms + r.trials
            );
        }
    }
    Ok(())
}
