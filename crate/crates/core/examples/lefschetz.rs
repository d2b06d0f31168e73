//! Lefschetz decomposition of a 2-form on C^2.

use lck_core::exterior::{primitive_decompose, primitive_test, HermitianFrame};
use lck_core::Gq;

fn main() -> lck_core::Result<()> {
    let frame = HermitianFrame::new(2)?;
    let omega = frame.omega();
    let alpha = &frame.e_wedge(&[1, 3]) + &omega.scale(&Gq::from_int(3));
    println!("omega      = {omega}");
    println!("alpha      = {alpha}");
    println!("primitive? {}", primitive_test(&alpha)?);
    for c in primitive_decompose(&alpha)? {
        println!("  L^{} ({})", c.power, c.primitive);
    }
    println!("Lambda alpha = {}", alpha.lefschetz_lambda());
    println!("* alpha      = {}", alpha.hodge_star()?);
    Ok(())
}
