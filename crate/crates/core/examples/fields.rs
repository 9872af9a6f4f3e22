//! Splitting fields, Brauer lifts and the 2-adic reduction map.

use char2::fld::{field_for_group, SplittingField};

fn main() -> char2::error::Result<()> {
    // A5 has odd element orders 1, 3, 5, so its odd exponent is 15.
    let f = field_for_group(15)?;
    println!("GF(2^{}) with u of order {}, ζ = ζ_{}", f.k(), f.m(), f.m());
    let u = f.u();
    let mut x = u;
    for e in 1..=4 {
        let lift = f.brauer_lift(x)?;
        println!("  u^{e} lifts to {lift}, reduces back: {}", f.reduce_mod2(&lift)? == x);
        x = f.gf().mul(x, u);
    }
    let small = SplittingField::with_degree(2, 3);
    println!("GF({}) contains cube roots of unity: m = {}", 1 << small.k(), small.m());
    Ok(())
}
