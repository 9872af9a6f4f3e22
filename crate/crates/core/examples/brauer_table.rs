//! Brauer characters lifted from a splitting field, and the table checks.

use char2::brc::{brauer_table, verify_radical, verify_table};
use char2::clf::default_field;
use char2::grp::named;
use char2::rep::IrrSet;

fn main() -> char2::error::Result<()> {
    let g = named::alternating(5).named("A5").into_group();
    let irr = IrrSet::compute(&g, &default_field(&g)?)?;
    print!("{}", brauer_table(&irr)?.to_text());
    print!("{}", verify_table(&irr)?.to_text());
    print!("{}", verify_radical(&irr).to_text());
    Ok(())
}
