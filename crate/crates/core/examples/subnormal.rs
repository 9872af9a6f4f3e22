//! The subnormal family: a self-dual simple of a subnormal subgroup whose
//! canonical module occurs with odd multiplicity greater than one.

use char2::clf::{muller_family, verify_muller};

fn main() -> char2::error::Result<()> {
    let fam = muller_family(3, 1_000_000)?;
    println!(
        "p = 3: |G| = {}, |H| = {}, expected multiplicity {}, trivial multiplicity {}",
        fam.g.order(),
        fam.h.order(),
        fam.expected_u,
        fam.expected_trivial
    );
    print!("{}", verify_muller(3, 1_000_000)?.to_text());
    Ok(())
}
