//! 2-blocks from the center of the group algebra, and which blocks of S4
//! cover the blocks of A4.

use std::sync::Arc;

use char2::blk::{covering, Blocks};
use char2::clf::{default_field, PairContext};
use char2::grp::named;
use char2::rep::IrrSet;

fn main() -> char2::error::Result<()> {
    let g = named::symmetric(5).named("S5").into_group();
    let irr = IrrSet::compute(&g, &default_field(&g)?)?;
    print!("{}", Blocks::compute(&irr)?.to_text());

    let g = named::symmetric(4).named("S4").into_group();
    let n = Arc::new(g.subgroup(named::alternating(4).gens().to_vec())?.named("A4"));
    let field = default_field(&g)?;
    let ctx = PairContext::from_sets(IrrSet::compute(&g, &field)?, IrrSet::compute(&n, &field)?)?;
    let gb = Blocks::compute(&ctx.irr_g)?;
    let nb = Blocks::compute(&ctx.irr_n)?;
    for r in covering(&ctx, &gb, &nb)?.records.iter().filter(|r| r.covers) {
        println!("{} covers {}, weakly regular: {}", r.block_of_g, r.block_of_n, r.weakly_regular);
    }
    Ok(())
}
